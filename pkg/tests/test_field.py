import random

import pytest
from hypothesis import given, strategies as st

from oracles import inv_scan, sieve
from sumprod import CompositeModulus, FieldMismatch, PrimeField, ZeroInverse, add, inverse, is_prime, make_field, mul, sub
from sumprod.field import factorize, multiplicative_order, primitive_root


@pytest.mark.parametrize("q", [2, 3, 7, 101, 65537, 4294967291])
def test_make_field_accepts_primes(q):
    assert make_field(q).q == q


@pytest.mark.parametrize("q", [9, 15, 561, 65536, 3215031751])
def test_make_field_rejects_composites(q):
    with pytest.raises(CompositeModulus):
        make_field(q)


@pytest.mark.parametrize("q", [-3, 0, 1])
def test_make_field_rejects_small(q):
    with pytest.raises(CompositeModulus):
        make_field(q)


def test_primality_matches_sieve():
    primes = sieve(200_000)
    assert {n for n in range(200_001) if is_prime(n)} == primes


def test_primality_strong_pseudoprimes():
    # strong pseudoprimes to several small bases
    for n in [2047, 1373653, 25326001, 3215031751, 2152302898747, 3474749660383, 341550071728321]:
        assert not is_prime(n)
    assert is_prime(2 ** 61 - 1)
    assert not is_prime((2 ** 31 - 1) * (2 ** 61 - 1))


def test_ring_operations(F7):
    assert add(F7(3), F7(5)).value == 1
    assert sub(F7(1), F7(2)).value == 6
    for x in range(7):
        assert mul(F7(0), F7(x)).value == 0


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        add(PrimeField(7)(1), PrimeField(11)(1))
    with pytest.raises(FieldMismatch):
        PrimeField(7)(1) * PrimeField(5)(1)


def test_inverse_examples(F7):
    assert inverse(F7(1)).value == 1
    assert inverse(F7(2)).value == inv_scan(2, 7) == 4
    with pytest.raises(ZeroInverse):
        inverse(F7(0))


@pytest.mark.parametrize("q", [2, 3, 5, 97, 10007])
def test_inverse_exhaustive(q):
    F = PrimeField(q)
    for x in range(1, q):
        assert (F(x) * inverse(F(x))).value == 1


def test_inverse_matches_scan():
    for x in range(1, 101):
        assert inverse(PrimeField(101)(x)).value == inv_scan(x, 101)


@given(st.integers(0, 10 ** 6), st.integers(0, 10 ** 6), st.integers(0, 10 ** 6))
def test_ring_laws(a, b, c):
    F = PrimeField(10007)
    x, y, z = F(a), F(b), F(c)
    assert x + y == y + x and x * y == y * x
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert sub(x, y) == add(x, F((F.q - y.value) % F.q))


def test_operator_sugar(F7):
    x = F7(3)
    assert x / F7(2) == F7(5)
    assert x ** -1 == inverse(x)
    assert -x == F7(4)
    assert 2 - x == F7(6)
    assert int(x) == 3


@pytest.mark.parametrize("q", [3, 5, 7, 11, 13, 101, 1009])
def test_primitive_root_generates(q):
    g = primitive_root(q)
    assert len({pow(g, k, q) for k in range(q - 1)}) == q - 1
    assert multiplicative_order(g, q) == q - 1


def test_factorize_and_order():
    rng = random.Random(3)
    for _ in range(50):
        n = rng.randrange(2, 10 ** 7)
        f = factorize(n)
        prod = 1
        for p, e in f.items():
            assert is_prime(p)
            prod *= p ** e
        assert prod == n
    assert multiplicative_order(2, 7) == 3
    assert multiplicative_order(3, 7) == 6
