"""Low-level kernels on subsets of a cyclic group Z/nZ.

A subset is carried two ways at once: a Python int whose bit i marks
membership of i, and (on demand) the sorted residues. Sumsets are computed
by OR-ing cyclic rotations of one bitset when the other set is small, and by
an FFT convolution of indicator vectors otherwise. Both paths are exact; the
FFT path only thresholds values that are integers >= 1 or exactly 0.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache

import numpy as np
from scipy import fft as sfft

# above this many elements in the smaller operand, the FFT beats rotate-OR
ROTATE_LIMIT = 160
# below this modulus, bit extraction by int arithmetic beats numpy round-trips
SMALL_MODULUS = 2048
# above this many ordered pairs, count tables go through an FFT
PAIR_LIMIT = 1 << 22


def full_mask(n: int) -> int:
    return (1 << n) - 1


def bits_from_indices(idx, n: int) -> int:
    """Bitset from residues already reduced into [0, n)."""
    if isinstance(idx, np.ndarray) and (n > SMALL_MODULUS and idx.size > 64):
        ind = np.zeros(n, dtype=bool)
        ind[idx] = True
        return bits_from_indicator(ind)
    bits = 0
    for i in idx:
        bits |= 1 << int(i)
    return bits


def bits_from_indicator(ind: np.ndarray) -> int:
    packed = np.packbits(ind.astype(bool, copy=False), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


def indicator_from_bits(bits: int, n: int) -> np.ndarray:
    nbytes = (n + 7) // 8
    raw = np.frombuffer(bits.to_bytes(nbytes, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:n].astype(bool)


def indices_from_bits(bits: int, n: int) -> tuple[int, ...]:
    if bits == 0:
        return ()
    if n <= SMALL_MODULUS:
        out = []
        while bits:
            low = bits & -bits
            out.append(low.bit_length() - 1)
            bits ^= low
        return tuple(out)
    return tuple(np.flatnonzero(indicator_from_bits(bits, n)).tolist())


def rotate(bits: int, k: int, n: int, mask: int) -> int:
    """Cyclic shift by k: bit i moves to bit (i + k) mod n."""
    if k == 0:
        return bits
    return ((bits << k) & mask) | (bits >> (n - k))


def cyclic_sumset(xs, xbits: int, ys, ybits: int, n: int) -> int:
    """Bitset of {x + y mod n}; xs/ys are the sorted residues behind xbits/ybits."""
    kx, ky = len(xs), len(ys)
    if kx == 0 or ky == 0:
        return 0
    if kx + ky > n:
        # s - X and Y cannot be disjoint inside a set of n elements
        return full_mask(n)
    if kx > ky:
        xs, xbits, ys, ybits = ys, ybits, xs, xbits
        kx, ky = ky, kx
    if kx <= ROTATE_LIMIT:
        mask = full_mask(n)
        acc = 0
        for x in xs:
            acc |= rotate(ybits, int(x), n, mask)
            if acc == mask:
                break
        return acc
    counts = cyclic_convolution(
        indicator_from_bits(xbits, n), indicator_from_bits(ybits, n), n
    )
    return bits_from_indicator(counts > 0.5)


def cyclic_convolution(u: np.ndarray, v: np.ndarray, n: int) -> np.ndarray:
    """Float cyclic convolution of two length-n real vectors via a padded real FFT."""
    size = sfft.next_fast_len(2 * n - 1, real=True)
    fu = sfft.rfft(u.astype(np.float64), size)
    fv = sfft.rfft(v.astype(np.float64), size)
    full = sfft.irfft(fu * fv, size)[: 2 * n - 1]
    out = full[:n].copy()
    out[: n - 1] += full[n:]
    return out


def exact_cyclic_counts(xs: np.ndarray, ys: np.ndarray, n: int) -> np.ndarray:
    """Integer array c with c[s] = #{(x, y) : x + y = s mod n} (multiset inputs allowed)."""
    u = np.bincount(xs, minlength=n).astype(np.float64)
    v = np.bincount(ys, minlength=n).astype(np.float64)
    raw = cyclic_convolution(u, v, n)
    out = np.rint(raw)
    if np.max(np.abs(raw - out), initial=0.0) > 0.25:
        raise ArithmeticError("FFT convolution lost integer precision")
    return out.astype(np.int64)


def counts_of_values(values, n: int) -> dict[int, int]:
    """Sparse histogram {value: multiplicity} over residues in [0, n), sorted by value."""
    if isinstance(values, np.ndarray) and values.size > 256:
        c = np.bincount(values, minlength=n)
        nz = np.flatnonzero(c)
        return dict(zip(nz.tolist(), c[nz].tolist()))
    return dict(sorted(Counter(int(v) for v in values).items()))


def dense_to_sparse(c: np.ndarray) -> dict[int, int]:
    nz = np.flatnonzero(c)
    return dict(zip(nz.tolist(), c[nz].tolist()))


@lru_cache(maxsize=8)
def log_tables(q: int) -> tuple[np.ndarray, np.ndarray]:
    """(exp, log) for a primitive root g: exp[k] = g**k, log[exp[k]] = k, k < q - 1.

    log[0] is set to -1.
    """
    from .field import primitive_root

    g = primitive_root(q)
    n = q - 1
    block = max(1, int(n ** 0.5))
    small = np.empty(block, dtype=np.uint64)
    x = 1
    for j in range(block):
        small[j] = x
        x = x * g % q
    steps = -(-n // block)
    big = np.empty(steps, dtype=np.uint64)
    y = 1
    step = pow(g, block, q)
    for i in range(steps):
        big[i] = y
        y = y * step % q
    exp = (np.outer(big, small) % np.uint64(q)).ravel()[:n].astype(np.int64)
    log = np.full(q, -1, dtype=np.int64)
    log[exp] = np.arange(n, dtype=np.int64)
    return exp, log
