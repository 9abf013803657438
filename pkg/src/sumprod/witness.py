"""Witness extraction: concrete objects certifying lower bounds on |I(A)|.

If the map (a, b) -> a + b*xi on A x A is not injective, a collision
(a1 - a2) + (b1 - b2) xi = 0 turns every a + b*xi, after scaling by
b1 - b2, into (b1 - b2) a + (a2 - a1) b, an element of I(A). So a scaled
copy of S_xi(A) sits inside I(A). The selectors below pick xi so that
S_xi(A) is provably large while still being non-injective.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .errors import CertificateError, EmptySet, NoCollision, SingletonSet, TooSmall, ZeroInSet
from .field import residue
from .multiplicative import SubgroupData, popular_subgroup
from .setops import (
    FieldSet,
    additive_energy_of_map,
    dilate,
    i_set,
    product_set,
    s_xi_set,
    sum_set,
)


@dataclass(frozen=True)
class Collision:
    """Two pairs (a1, b1) != (a2, b2) with a1 + b1*xi = a2 + b2*xi."""

    a1: int
    b1: int
    a2: int
    b2: int
    xi: int
    q: int

    def __post_init__(self):
        q = self.q
        if ((self.a1 - self.a2) + (self.b1 - self.b2) * self.xi) % q:
            raise ValueError("pairs do not collide")
        if self.b1 == self.b2:
            raise ValueError("colliding pairs must differ in b")

    @property
    def pair1(self):
        return (self.a1, self.b1)

    @property
    def pair2(self):
        return (self.a2, self.b2)

    @property
    def scale(self) -> int:
        """b1 - b2, the dilation factor carrying S_xi(A) into I(A)."""
        return (self.b1 - self.b2) % self.q


@dataclass(frozen=True)
class WitnessReport:
    xi: int
    s_xi_size: int
    collision: Collision | None
    embedded: FieldSet
    certified_lower_bound: int
    i_size: int | None = None

    def to_dict(self) -> dict:
        c = self.collision
        return {
            "xi": self.xi,
            "s_xi_size": self.s_xi_size,
            "collision": None
            if c is None
            else {"pair1": list(c.pair1), "pair2": list(c.pair2), "scale": c.scale},
            "embedded_size": len(self.embedded),
            "certified_lower_bound": self.certified_lower_bound,
            "i_size": self.i_size,
        }


def find_collision(A: FieldSet, xi) -> Collision:
    """Lexicographically least pair of pairs ((a1, b1), (a2, b2)) with equal image.

    Pairs are ordered lexicographically and (a1, b1) < (a2, b2).
    """
    q = A.q
    xi = residue(xi, q)
    elems = A.elements()
    k = len(elems)
    if k * k <= q and len(s_xi_set(A, xi)) == k * k:
        raise NoCollision(f"(a, b) -> a + {xi} b is injective on A x A")
    first = {}
    best = None
    for a in elems:
        for b in elems:
            s = (a + b * xi) % q
            p = first.get(s)
            if p is None:
                first[s] = (a, b)
            elif best is None or p < best[0]:
                # the first repeat seen for s is the least partner of p
                best = (p, (a, b))
    if best is None:
        raise NoCollision(f"(a, b) -> a + {xi} b is injective on A x A")
    (a1, b1), (a2, b2) = best
    return Collision(a1, b1, a2, b2, xi, q)


def embed_witness(A: FieldSet, xi, I: FieldSet | None = None) -> WitnessReport:
    """Embed a scaled copy of S_xi(A) into I(A) and check it lands there."""
    col = find_collision(A, xi)
    S_xi = s_xi_set(A, col.xi)
    embedded = dilate(S_xi, col.scale)
    # same set, built from the explicit form (b1 - b2) a + (a2 - a1) b
    explicit = sum_set(dilate(A, col.scale), dilate(A, col.a2 - col.a1))
    if explicit != embedded:
        raise CertificateError("scaled S_xi(A) differs from its explicit I(A) form", A.elements())
    if I is None:
        I = i_set(A)
    if not embedded <= I:
        raise CertificateError("embedded set escapes I(A)", A.elements())
    if len(embedded) != len(S_xi):
        raise CertificateError("dilation by a unit changed the size", A.elements())
    return WitnessReport(col.xi, len(S_xi), col, embedded, len(S_xi), len(I))


class XiChoice(NamedTuple):
    xi: int
    energy: int
    s_xi_size: int


def select_xi_lemma2(A: FieldSet, G: SubgroupData | FieldSet) -> XiChoice:
    """xi in G minimizing the collision energy sum_s f_xi(s)^2 (ties: least xi).

    Averaging over G forces energy <= |A|^2 + |A|^4/|G|, and then by
    Cauchy-Schwarz |S_xi(A)| >= |A|^2 |G| / (|A|^2 + |G|); both are checked.
    """
    elements = G.elements if isinstance(G, SubgroupData) else G
    if not A:
        raise EmptySet("A must be nonempty")
    if not elements:
        raise EmptySet("G must be nonempty")
    if 0 in elements:
        raise ZeroInSet("G must lie in F*")
    k2 = len(A) ** 2
    g = len(elements)
    best = None
    for xi in elements.elements():
        e = additive_energy_of_map(A, xi)
        if best is None or e < best[1]:
            best = (xi, e)
    xi, energy = best
    size = len(s_xi_set(A, xi))
    if energy * g > k2 * g + k2 * k2:
        raise CertificateError(f"energy {energy} above |A|^2 + |A|^4/|G| at xi={xi}", A.elements())
    if size * (k2 + g) < k2 * g:
        raise CertificateError(f"|S_xi(A)| = {size} below the averaging floor", A.elements())
    return XiChoice(xi, energy, size)


def lemma4_floor_met(size: int, k: int, pp: int, g: int) -> bool:
    """size >= min(k^3 / (5 pp), k^2 g / (k^2 + g)), in integers."""
    return 5 * pp * size >= k ** 3 or size * (k * k + g) >= k * k * g


def select_xi_lemma4(A: FieldSet, I: FieldSet | None = None) -> WitnessReport:
    """xi in G = <popular ratios of A> with min(|A|^3/(5|A.A|), |A|^2|G|/(|A|^2+|G|)) <= |S_xi(A)| < |A|^2.

    Scans G, keeps the non-injective xi, and takes the largest |S_xi(A)|
    (ties: least xi); the floor is then checked and a witness embedded.
    """
    if not A:
        raise EmptySet("A must be nonempty")
    if 0 in A:
        raise ZeroInSet("A must lie in F*")
    k = len(A)
    if k <= 1:
        raise SingletonSet("need |A| > 1")
    G = popular_subgroup(A)
    best = None
    for xi in G.elements.elements():
        size = len(s_xi_set(A, xi))
        if size < k * k and (best is None or size > best[1]):
            best = (xi, size)
    if best is None:
        raise CertificateError("every xi in G is injective on A x A", A.elements())
    xi, size = best
    pp = len(product_set(A, A))
    if not lemma4_floor_met(size, k, pp, G.order):
        raise CertificateError(f"|S_xi(A)| = {size} below the guaranteed floor at xi={xi}", A.elements())
    return embed_witness(A, xi, I)


def theorem3_witness(A: FieldSet, I: FieldSet | None = None) -> WitnessReport:
    """For |A|^2 > q: some xi in F* has q/2 <= |S_xi(A)| <= q < |A|^2, hence |I(A)| >= q/2."""
    q = A.q
    k = len(A)
    if k * k <= q:
        raise TooSmall(f"need |A|^2 > q, got {k * k} <= {q}")
    choice = select_xi_lemma2(A, FieldSet.units(A.field))
    if 2 * choice.s_xi_size < q:
        raise CertificateError(f"|S_xi(A)| = {choice.s_xi_size} < q/2", A.elements())
    rep = embed_witness(A, choice.xi, I)
    half = (q + 1) // 2
    if rep.i_size < half:
        raise CertificateError(f"|I(A)| = {rep.i_size} < q/2", A.elements())
    return WitnessReport(rep.xi, rep.s_xi_size, rep.collision, rep.embedded, half, rep.i_size)
