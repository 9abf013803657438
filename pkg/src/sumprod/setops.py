"""Subsets of a prime field and their sum, product, difference and ratio sets.

Also the two-variable images S_xi(A) = {a + b*xi}, the six-fold set
I(A) = {a1(a2 - a3) + a4(a5 - a6)}, and the pair-count tables behind the
averaging arguments (representation counts, ratio counts, product counts).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterable, Iterator

import numpy as np

from . import _kernels as K
from .errors import EmptySet, FieldMismatch, ZeroDenominator
from .field import PrimeField, residue


class FieldSet:
    """Immutable subset of Z/qZ backed by a q-bit integer.

    Bit ``i`` of :attr:`bits` is set iff residue ``i`` is a member. The
    operators ``| & - ^ <=`` behave as for ``frozenset``; the arithmetic set
    constructions live in module-level functions.
    """

    __slots__ = ("field", "bits", "_size", "_elems", "_arr")

    def __init__(self, field: PrimeField, bits: int = 0):
        if bits < 0 or bits >> field.q:
            raise ValueError(f"bitset has bits outside [0, {field.q})")
        self.field = field
        self.bits = bits
        self._size = None
        self._elems = None
        self._arr = None

    @classmethod
    def from_iterable(cls, field: PrimeField, values: Iterable) -> "FieldSet":
        """Set of the residues of ``values`` (ints or field elements) mod q."""
        q = field.q
        if isinstance(values, np.ndarray):
            return cls(field, K.bits_from_indices(np.mod(values, q).astype(np.int64), q))
        return cls(field, K.bits_from_indices((residue(v, q) for v in values), q))

    @classmethod
    def _from_residues(cls, field: PrimeField, idx: np.ndarray) -> "FieldSet":
        return cls(field, K.bits_from_indices(idx, field.q))

    @classmethod
    def empty(cls, field: PrimeField) -> "FieldSet":
        return cls(field, 0)

    @classmethod
    def full(cls, field: PrimeField) -> "FieldSet":
        return cls(field, K.full_mask(field.q))

    @classmethod
    def units(cls, field: PrimeField) -> "FieldSet":
        """F* = F minus zero."""
        return cls(field, K.full_mask(field.q) ^ 1)

    @property
    def q(self) -> int:
        return self.field.q

    def __len__(self):
        if self._size is None:
            self._size = self.bits.bit_count()
        return self._size

    def __bool__(self):
        return self.bits != 0

    def __contains__(self, x):
        return bool(self.bits >> residue(x, self.q) & 1)

    def elements(self) -> tuple[int, ...]:
        """Members as sorted plain ints."""
        if self._elems is None:
            self._elems = K.indices_from_bits(self.bits, self.q)
        return self._elems

    def array(self) -> np.ndarray:
        """Members as a sorted int64 array (cached; do not mutate)."""
        if self._arr is None:
            if self.q > K.SMALL_MODULUS and self._elems is None:
                arr = np.flatnonzero(K.indicator_from_bits(self.bits, self.q))
            else:
                arr = np.array(self.elements(), dtype=np.int64)
            arr.setflags(write=False)
            self._arr = arr.astype(np.int64, copy=False)
        return self._arr

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements())

    def min(self) -> int:
        if not self.bits:
            raise EmptySet("min of empty set")
        return (self.bits & -self.bits).bit_length() - 1

    def _check(self, other: "FieldSet"):
        if self.q != other.q:
            raise FieldMismatch(f"mod {self.q} vs mod {other.q}")

    def __eq__(self, other):
        if not isinstance(other, FieldSet):
            return NotImplemented
        return self.q == other.q and self.bits == other.bits

    def __hash__(self):
        return hash((self.q, self.bits))

    def __le__(self, other: "FieldSet"):
        self._check(other)
        return self.bits & ~other.bits == 0

    def issubset(self, other: "FieldSet") -> bool:
        return self <= other

    def __or__(self, other: "FieldSet"):
        self._check(other)
        return FieldSet(self.field, self.bits | other.bits)

    def __and__(self, other: "FieldSet"):
        self._check(other)
        return FieldSet(self.field, self.bits & other.bits)

    def __sub__(self, other: "FieldSet"):
        self._check(other)
        return FieldSet(self.field, self.bits & ~other.bits)

    def __xor__(self, other: "FieldSet"):
        self._check(other)
        return FieldSet(self.field, self.bits ^ other.bits)

    def without_zero(self) -> "FieldSet":
        return FieldSet(self.field, self.bits & ~1)

    def __repr__(self):
        elems = self.elements()
        if len(elems) > 12:
            body = ", ".join(map(str, elems[:10])) + f", ... ({len(elems)} elements)"
        else:
            body = ", ".join(map(str, elems))
        return f"FieldSet(q={self.q}, {{{body}}})"


def field_set(q_or_field, values: Iterable = ()) -> FieldSet:
    """Shorthand: ``field_set(7, [1, 2])``."""
    F = q_or_field if isinstance(q_or_field, PrimeField) else PrimeField(q_or_field)
    return FieldSet.from_iterable(F, values)


def _same_field(A: FieldSet, B: FieldSet):
    if A.q != B.q:
        raise FieldMismatch(f"mod {A.q} vs mod {B.q}")


# ---------------------------------------------------------------------------
# set constructions


def sum_set(A: FieldSet, B: FieldSet) -> FieldSet:
    _same_field(A, B)
    return FieldSet(A.field, K.cyclic_sumset(A.elements(), A.bits, B.elements(), B.bits, A.q))


def negate(A: FieldSet) -> FieldSet:
    q = A.q
    if len(A) <= 64 or q <= K.SMALL_MODULUS:
        return FieldSet(A.field, K.bits_from_indices(((-a) % q for a in A.elements()), q))
    return FieldSet._from_residues(A.field, (-A.array()) % q)


def difference_set(A: FieldSet, B: FieldSet) -> FieldSet:
    _same_field(A, B)
    return sum_set(A, negate(B))


def dilate(A: FieldSet, lam) -> FieldSet:
    """{lam * a : a in A}."""
    q = A.q
    lam = residue(lam, q)
    if lam == 1 or not A:
        return A
    if lam == 0:
        return FieldSet(A.field, 1)
    if len(A) <= 64 or q <= K.SMALL_MODULUS:
        return FieldSet(A.field, K.bits_from_indices((a * lam % q for a in A.elements()), q))
    prod = (A.array().astype(np.uint64) * np.uint64(lam)) % np.uint64(q)
    return FieldSet._from_residues(A.field, prod.astype(np.int64))


def _units_product(A: FieldSet, B: FieldSet) -> FieldSet:
    """Product set of two subsets of F*."""
    q = A.q
    ka, kb = len(A), len(B)
    if ka == 0 or kb == 0:
        return FieldSet.empty(A.field)
    if ka * kb <= 256:
        be = B.elements()
        return FieldSet(A.field, K.bits_from_indices({a * b % q for a in A.elements() for b in be}, q))
    if ka * kb <= K.PAIR_LIMIT:
        prod = np.multiply.outer(A.array().astype(np.uint64), B.array().astype(np.uint64))
        return FieldSet._from_residues(A.field, (prod % np.uint64(q)).astype(np.int64).ravel())
    # multiplication in F* is addition of discrete logs in Z/(q-1)
    exp, log = K.log_tables(q)
    n = q - 1
    la = np.sort(log[A.array()])
    lb = np.sort(log[B.array()])
    lbits = K.cyclic_sumset(la, K.bits_from_indices(la, n), lb, K.bits_from_indices(lb, n), n)
    logs = np.flatnonzero(K.indicator_from_bits(lbits, n))
    return FieldSet._from_residues(A.field, exp[logs])


def product_set(A: FieldSet, B: FieldSet) -> FieldSet:
    _same_field(A, B)
    out = _units_product(A.without_zero(), B.without_zero())
    if (0 in A and B) or (0 in B and A):
        out = FieldSet(A.field, out.bits | 1)
    return out


def inverses(A: FieldSet) -> FieldSet:
    """{1/a : a in A} for A inside F*."""
    if 0 in A:
        raise ZeroDenominator("0 has no inverse")
    q = A.q
    if len(A) <= 512:
        return FieldSet(A.field, K.bits_from_indices((pow(a, -1, q) for a in A.elements()), q))
    exp, log = K.log_tables(q)
    return FieldSet._from_residues(A.field, exp[(-log[A.array()]) % (q - 1)])


def ratio_set(A: FieldSet, B: FieldSet) -> FieldSet:
    """{a / b : a in A, b in B}; B must avoid zero."""
    _same_field(A, B)
    if 0 in B:
        raise ZeroDenominator("ratio set with 0 in the denominator set")
    return product_set(A, inverses(B))


def s_xi_set(A: FieldSet, xi) -> FieldSet:
    """S_xi(A) = {a + b*xi : a, b in A}."""
    return sum_set(A, dilate(A, xi))


def i_set(A: FieldSet) -> FieldSet:
    """I(A) = {a1(a2 - a3) + a4(a5 - a6) : ai in A}.

    Both summands range over the same set P = A * (A - A), so I(A) = P + P.
    """
    if not A:
        raise EmptySet("I(A) needs a nonempty A")
    P = product_set(A, difference_set(A, A))
    return sum_set(P, P)


# ---------------------------------------------------------------------------
# count tables


@dataclass(frozen=True)
class CountTable:
    """Sparse multiplicity table {s: number of contributing ordered pairs}.

    Only nonzero entries are stored; lookups of absent residues give 0.
    """

    field: PrimeField
    counts: dict = dc_field(default_factory=dict)

    def __getitem__(self, s) -> int:
        return self.counts.get(residue(s, self.field.q), 0)

    def __len__(self):
        return len(self.counts)

    def __iter__(self):
        return iter(self.counts)

    def items(self):
        return self.counts.items()

    def total(self) -> int:
        return sum(self.counts.values())

    def energy(self) -> int:
        """Sum of squared counts (number of colliding pairs of pairs)."""
        return sum(c * c for c in self.counts.values())

    def max(self) -> int:
        return max(self.counts.values(), default=0)

    def support(self) -> FieldSet:
        return FieldSet(self.field, K.bits_from_indices(self.counts.keys(), self.field.q))


def _linear_pair_counts(X: FieldSet, Y: FieldSet, lam: int) -> dict[int, int]:
    """Histogram of x + lam*y over X x Y."""
    q = X.q
    kx, ky = len(X), len(Y)
    if kx == 0 or ky == 0:
        return {}
    if kx * ky <= 256:
        ys = [lam * y % q for y in Y.elements()]
        return K.counts_of_values([(x + y) % q for x in X.elements() for y in ys], q)
    ly = (Y.array().astype(np.uint64) * np.uint64(lam)) % np.uint64(q)
    ly = ly.astype(np.int64)
    if kx * ky <= K.PAIR_LIMIT:
        vals = (X.array()[:, None] + ly[None, :]) % q
        return K.counts_of_values(vals.ravel(), q)
    return K.dense_to_sparse(K.exact_cyclic_counts(X.array(), ly, q))


def repr_counts(A: FieldSet, xi) -> CountTable:
    """Table of f_xi(s) = #{(a, b) in A^2 : a + b*xi = s}."""
    return CountTable(A.field, _linear_pair_counts(A, A, residue(xi, A.q)))


def additive_energy_of_map(A: FieldSet, xi) -> int:
    """Sum over s of f_xi(s)^2."""
    return repr_counts(A, xi).energy()


def product_counts(X: FieldSet, Y: FieldSet) -> CountTable:
    """Table of #{(x, y) in X x Y : x*y = s}."""
    _same_field(X, Y)
    q = X.q
    kx, ky = len(X), len(Y)
    if kx == 0 or ky == 0:
        return CountTable(X.field, {})
    if kx * ky <= 256:
        ye = Y.elements()
        return CountTable(X.field, K.counts_of_values([x * y % q for x in X.elements() for y in ye], q))
    if kx * ky <= K.PAIR_LIMIT:
        prod = np.multiply.outer(X.array().astype(np.uint64), Y.array().astype(np.uint64))
        return CountTable(X.field, K.counts_of_values((prod % np.uint64(q)).astype(np.int64).ravel(), q))
    exp, log = K.log_tables(q)
    Xu, Yu = X.without_zero(), Y.without_zero()
    out = {}
    zeros = (0 in X) * ky + (0 in Y) * kx - (0 in X) * (0 in Y)
    if zeros:
        out[0] = zeros
    if Xu and Yu:
        c = K.exact_cyclic_counts(log[Xu.array()], log[Yu.array()], q - 1)
        nz = np.flatnonzero(c)
        for s, v in sorted(zip(exp[nz].tolist(), c[nz].tolist())):
            out[s] = v
    return CountTable(X.field, dict(sorted(out.items())))


def ratio_counts(X: FieldSet, Y: FieldSet) -> CountTable:
    """Table of #{(x, y) in X x Y : x/y = s}; Y must avoid zero."""
    _same_field(X, Y)
    if 0 in Y:
        raise ZeroDenominator("ratio counts with 0 in the denominator set")
    return product_counts(X, inverses(Y))
