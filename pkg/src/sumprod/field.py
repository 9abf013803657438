"""Arithmetic in Z/qZ for prime q."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import CompositeModulus, FieldMismatch, SumProdError, ZeroInverse

# bitsets hold q bits per set; keep products of residues inside 64 bits
MAX_MODULUS = 1 << 32

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic primality test for every n < 3.3e24.

    Trial division below 2**16, otherwise a strong-pseudoprime test to the
    first twelve prime bases (no composite below 3.3e24 passes all of them).
    """
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    if n < 1 << 16:
        f = 41
        while f * f <= n:
            if n % f == 0:
                return False
            f += 2
        return True
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division (n < 2**64 in practice)."""
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass(frozen=True)
class PrimeField:
    """The field Z/qZ. Construction checks that q is prime."""

    q: int

    def __post_init__(self):
        q = self.q
        if not isinstance(q, int) or isinstance(q, bool):
            raise TypeError(f"modulus must be an int, got {type(q).__name__}")
        if q < 2 or not is_prime(q):
            raise CompositeModulus(f"{q} is not prime")
        if q >= MAX_MODULUS:
            raise SumProdError(f"{q} exceeds the supported modulus bound 2**32")

    def __call__(self, value: int) -> FieldElement:
        return FieldElement(int(value) % self.q, self)

    def __repr__(self):
        return f"PrimeField({self.q})"

    def __len__(self):
        return self.q

    @property
    def zero(self) -> FieldElement:
        return FieldElement(0, self)

    @property
    def one(self) -> FieldElement:
        return FieldElement(1 % self.q, self)

    def elements(self):
        return (FieldElement(v, self) for v in range(self.q))

    def primitive_root(self) -> int:
        return primitive_root(self.q)


def make_field(q: int) -> PrimeField:
    return PrimeField(q)


@dataclass(frozen=True)
class FieldElement:
    value: int
    field: PrimeField

    def __post_init__(self):
        if not 0 <= self.value < self.field.q:
            raise ValueError(f"{self.value} is not a residue mod {self.field.q}")

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field.q != self.field.q:
                raise FieldMismatch(f"mod {self.field.q} vs mod {other.field.q}")
            return other.value
        if isinstance(other, int):
            return other % self.field.q
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return FieldElement((self.value + v) % self.field.q, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return FieldElement((self.value - v) % self.field.q, self.field)

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return FieldElement((v - self.value) % self.field.q, self.field)

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return FieldElement(self.value * v % self.field.q, self.field)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(-self.value % self.field.q, self.field)

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return self * inverse(FieldElement(v, self.field))

    def __pow__(self, k: int):
        if k < 0:
            return inverse(self) ** (-k)
        return FieldElement(pow(self.value, k, self.field.q), self.field)

    def __int__(self):
        return self.value

    __index__ = __int__

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.value} (mod {self.field.q})"


def _check_same(x: FieldElement, y: FieldElement):
    if x.field.q != y.field.q:
        raise FieldMismatch(f"mod {x.field.q} vs mod {y.field.q}")


def add(x: FieldElement, y: FieldElement) -> FieldElement:
    _check_same(x, y)
    return x + y


def sub(x: FieldElement, y: FieldElement) -> FieldElement:
    _check_same(x, y)
    return x - y


def mul(x: FieldElement, y: FieldElement) -> FieldElement:
    _check_same(x, y)
    return x * y


def inverse(x: FieldElement) -> FieldElement:
    if x.value == 0:
        raise ZeroInverse(f"0 has no inverse mod {x.field.q}")
    # pow(., -1, q) runs the extended Euclidean algorithm
    return FieldElement(pow(x.value, -1, x.field.q), x.field)


def residue(x, q: int) -> int:
    """Plain residue of an int or FieldElement, checking the modulus of the latter."""
    if isinstance(x, FieldElement):
        if x.field.q != q:
            raise FieldMismatch(f"mod {x.field.q} vs mod {q}")
        return x.value
    return int(x) % q


@lru_cache(maxsize=None)
def primitive_root(q: int) -> int:
    """Least generator of the cyclic group (Z/qZ)*."""
    if q == 2:
        return 1
    cofactors = [(q - 1) // p for p in factorize(q - 1)]
    g = 2
    while any(pow(g, c, q) == 1 for c in cofactors):
        g += 1
    return g


def multiplicative_order(x: int, q: int) -> int:
    x %= q
    if x == 0:
        raise ZeroInverse("0 has no multiplicative order")
    order = q - 1
    for p, e in factorize(q - 1).items():
        for _ in range(e):
            if pow(x, order // p, q) == 1:
                order //= p
            else:
                break
    return order
