"""Multiplicative structure of a set: popular ratios, the subgroup they
generate, coset decompositions, the heavy coset, and per-coset difference
statistics N_t, L_t, M_t.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import CertificateError, EmptySet, NotSubsetOfGroup, SumProdError, ZeroInSet
from .field import PrimeField, factorize, primitive_root
from .setops import FieldSet, dilate, product_set, ratio_counts


def _require_units(A: FieldSet, what="A"):
    if not A:
        raise EmptySet(f"{what} must be nonempty")
    if 0 in A:
        raise ZeroInSet(f"{what} must lie in F* (contains 0)")


@dataclass(frozen=True)
class SubgroupData:
    """A multiplicative subgroup of F*."""

    field: PrimeField
    elements: FieldSet

    def __post_init__(self):
        if 1 not in self.elements or 0 in self.elements:
            raise ValueError("a subgroup of F* contains 1 and not 0")
        if (self.field.q - 1) % len(self.elements):
            raise ValueError(f"order {len(self.elements)} does not divide q - 1")

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def index(self) -> int:
        return (self.field.q - 1) // self.order

    def __contains__(self, x):
        return x in self.elements

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return self.order

    def is_closed(self) -> bool:
        """Closure under multiplication (inverses follow in a finite group)."""
        return all(dilate(self.elements, g) == self.elements for g in self.elements)


def subgroup_of_order(field: PrimeField, d: int) -> SubgroupData:
    """The unique subgroup of F* of order d (d must divide q - 1)."""
    q = field.q
    if d <= 0 or (q - 1) % d:
        raise SumProdError(f"{d} does not divide {q - 1}")
    h = pow(primitive_root(q), (q - 1) // d, q)
    elems, x = [], 1
    for _ in range(d):
        elems.append(x)
        x = x * h % q
    return SubgroupData(field, FieldSet.from_iterable(field, elems))


def all_subgroups(field: PrimeField) -> list[SubgroupData]:
    """Every subgroup of F*, by increasing order."""
    n = field.q - 1
    divisors = [1]
    for p, e in factorize(n).items():
        divisors = [d * p ** k for d in divisors for k in range(e + 1)]
    return [subgroup_of_order(field, d) for d in sorted(divisors)]


def popular_ratios(A: FieldSet) -> FieldSet:
    """H = {s : #{(a, b) in A^2 : a/b = s} >= |A|^2 / (5|A.A|)}.

    The threshold is tested as 5 |A.A| r(s) >= |A|^2 in integers.
    """
    _require_units(A)
    k = len(A)
    pp = len(product_set(A, A))
    table = ratio_counts(A, A)
    keep = [s for s, r in table.items() if 5 * pp * r >= k * k]
    return FieldSet.from_iterable(A.field, keep)


def generated_subgroup(H: FieldSet) -> SubgroupData:
    """Smallest subgroup of F* containing H, by multiplying out to a fixpoint."""
    _require_units(H, "H")
    G = FieldSet(H.field, 0b10) | H
    gens = [h for h in H.elements() if h != 1]
    for _ in range(H.q - 1):
        grown = G
        for h in gens:
            grown = grown | dilate(G, h)
        if grown == G:
            break
        G = grown
    return SubgroupData(H.field, G)


def popular_subgroup(A: FieldSet) -> SubgroupData:
    """The subgroup generated by the popular ratios of A."""
    return generated_subgroup(popular_ratios(A))


class Coset(NamedTuple):
    representative: int
    members: FieldSet


@dataclass(frozen=True)
class CosetDecomposition:
    subgroup: SubgroupData
    cosets: tuple

    def __len__(self):
        return len(self.cosets)

    def __iter__(self):
        return iter(self.cosets)

    def coset_of(self, x: int) -> Coset:
        for c in self.cosets:
            if x in c.members:
                return c
        raise ValueError(f"{x} is not in F*")


def coset_decomposition(G: SubgroupData) -> CosetDecomposition:
    """Cosets xG of G in F*, each labelled by its least residue, in increasing order."""
    F = G.field
    remaining = FieldSet.units(F)
    cosets = []
    while remaining:
        r = remaining.min()
        members = dilate(G.elements, r)
        cosets.append(Coset(r, members))
        remaining = remaining - members
    return CosetDecomposition(G, tuple(cosets))


class HeavyCoset(NamedTuple):
    coset: FieldSet
    intersection: FieldSet
    representative: int
    subgroup: SubgroupData


def heavy_coset(A: FieldSet) -> HeavyCoset:
    """A coset G1 of G = <popular ratios of A> maximizing |A & G1|.

    A third of A always lands in one coset; the result is checked against
    that guarantee (3 |A & G1| >= |A|). Ties go to the smaller representative.
    """
    _require_units(A)
    G = popular_subgroup(A)
    best = None
    for rep, members in coset_decomposition(G):
        inter = A & members
        if best is None or len(inter) > len(best[1]):
            best = (members, inter, rep)
    members, inter, rep = best
    if 3 * len(inter) < len(A):
        raise CertificateError(
            f"no coset holds a third of A: best {len(inter)} of {len(A)}", A.elements()
        )
    return HeavyCoset(members, inter, rep, G)


@dataclass(frozen=True)
class CosetRecord:
    t: int
    representative: int
    size: int
    N: int
    L: int | None = None
    M: int | None = None


@dataclass(frozen=True)
class CosetStats:
    """Per-coset records ordered by decreasing N_t (ties: smaller representative)."""

    subgroup: SubgroupData
    records: tuple

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def __getitem__(self, i):
        return self.records[i]

    @property
    def N(self) -> list[int]:
        return [r.N for r in self.records]

    @property
    def L(self) -> list[int]:
        return [r.L for r in self.records]

    @property
    def M(self) -> list[int]:
        return [r.M for r in self.records]


def _difference_counts(X: FieldSet) -> np.ndarray:
    """Dense array c[s] = #{(x1, x2) in X^2 : x1 - x2 = s}."""
    q = X.q
    x = X.array()
    if len(x) * len(x) <= 1 << 22:
        return np.bincount(((x[:, None] - x[None, :]) % q).ravel(), minlength=q)
    from . import _kernels as K

    return K.exact_cyclic_counts(x, (-x) % q, q)


def coset_diff_counts(G: SubgroupData, check: bool = True) -> CosetStats:
    """N_t = #{(g1, g2) in G^2 : g1 - g2 = s} for s in the coset G_t.

    With ``check`` the count is recomputed at every member of every coset
    and must not depend on the choice of s.
    """
    c = _difference_counts(G.elements)
    rows = []
    for rep, members in coset_decomposition(G):
        n = int(c[rep])
        if check:
            vals = c[members.array()]
            if np.any(vals != n):
                raise CertificateError(
                    f"N_t not constant on coset {rep}G: {sorted(set(vals.tolist()))}", rep
                )
        rows.append((rep, len(members), n))
    rows.sort(key=lambda r: (-r[2], r[0]))
    recs = tuple(CosetRecord(t + 1, rep, size, n) for t, (rep, size, n) in enumerate(rows))
    return CosetStats(G, recs)


def lemma5_stats(B: FieldSet, G: SubgroupData, check: bool = True) -> CosetStats:
    """N_t, L_t and M_t for B inside G.

    L_t counts ordered pairs of B with difference in G_t, M_t counts
    quadruples with b1 - b2 = b3 - b4 in G_t. Checked relations:
    L_t <= N_t |B|, M_t <= N_t L_t <= N_t^2 |B|, and sum L_t = |B|(|B| - 1).
    """
    if not B <= G.elements:
        raise NotSubsetOfGroup("B is not contained in G")
    base = coset_diff_counts(G, check=check)
    f = _difference_counts(B)
    f[0] = 0
    k = len(B)
    recs = []
    total_L = 0
    for r in base:
        members = dilate(G.elements, r.representative).array()
        fv = f[members].astype(np.int64)
        L = int(fv.sum())
        M = int((fv * fv).sum())
        total_L += L
        if check and not (L <= r.N * k and M <= r.N * L <= r.N * r.N * k):
            raise CertificateError(
                f"coset {r.representative}G: N={r.N} L={L} M={M} |B|={k}", B.elements()
            )
        recs.append(CosetRecord(r.t, r.representative, r.size, r.N, L, M))
    if check and total_L != k * (k - 1):
        raise CertificateError(f"sum L_t = {total_L} != |B|(|B|-1) = {k * (k - 1)}", B.elements())
    return CosetStats(G, tuple(recs))
