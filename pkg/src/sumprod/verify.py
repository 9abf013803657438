"""Per-set measurement of the sum-product inequalities.

Only inequalities with explicit constants are asserted: |I(A)| >= q/2 for
|A|^2 > q, plus everything the witness pipeline checks. The others, whose
constants are left implicit, are measured: the ratio
(|A-A| |I(A)|)^2 / |A|^5, the ratio |I(A)|^4 / |A|^5 (both exact
fractions; fractional powers are cleared by raising both sides), and the
exponent log max(|A+A|, |A.A|) / log |A| - 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .errors import CertificateError, EmptySet, HypothesisNotMet
from .multiplicative import heavy_coset
from .setops import FieldSet, difference_set, i_set, product_set, sum_set
from .witness import select_xi_lemma4, theorem3_witness

CSV_HEADER = (
    "q", "family", "size", "sumset", "prodset", "diffset", "iset",
    "t2_lhs_sq", "t2_rhs_int", "epsilon", "t3_pass",
)


@dataclass
class VerificationReport:
    q: int
    description: str
    size: int
    sumset: int
    prodset: int
    diffset: int
    iset: int
    zero_stripped: bool = False
    theorem3_pass: bool | None = None
    witness: dict | None = None
    notes: list = dc_field(default_factory=list)

    @property
    def small(self) -> bool:
        """|A| < sqrt(q)."""
        return self.size * self.size < self.q

    @property
    def large(self) -> bool:
        """|A| > sqrt(q)."""
        return self.size * self.size > self.q

    @property
    def t2_lhs_sq(self) -> int:
        return (self.diffset * self.iset) ** 2

    @property
    def t2_rhs_int(self) -> int:
        return self.size ** 5

    @property
    def theorem2_ratio(self) -> Fraction:
        """(|A-A| |I(A)|)^2 / |A|^5."""
        return Fraction(self.t2_lhs_sq, self.t2_rhs_int)

    @property
    def c2_lhs(self) -> int:
        return self.iset ** 4

    @property
    def corollary2_ratio(self) -> Fraction:
        """|I(A)|^4 / |A|^5."""
        return Fraction(self.c2_lhs, self.size ** 5)

    @property
    def epsilon(self) -> float | None:
        if self.size < 2:
            return None
        return math.log(max(self.sumset, self.prodset)) / math.log(self.size) - 1

    def csv_row(self) -> list[str]:
        eps = self.epsilon
        t3 = {True: "true", False: "false", None: "na"}[self.theorem3_pass]
        return [
            str(self.q), self.description, str(self.size), str(self.sumset),
            str(self.prodset), str(self.diffset), str(self.iset),
            str(self.t2_lhs_sq), str(self.t2_rhs_int),
            "" if eps is None else f"{eps:.12f}", t3,
        ]

    def to_dict(self) -> dict:
        eps = self.epsilon
        return {
            "q": self.q,
            "set": self.description,
            "size": self.size,
            "sumset": self.sumset,
            "prodset": self.prodset,
            "diffset": self.diffset,
            "iset": self.iset,
            "small": self.small,
            "large": self.large,
            "theorem2": {
                "lhs_sq": self.t2_lhs_sq,
                "rhs": self.t2_rhs_int,
                "ratio": str(self.theorem2_ratio),
                "ratio_approx": float(self.theorem2_ratio),
                "hypothesis": self.small,
            },
            "corollary2": {
                "lhs": self.c2_lhs,
                "rhs": self.size ** 5,
                "ratio": str(self.corollary2_ratio),
                "ratio_approx": float(self.corollary2_ratio),
                "hypothesis": self.small,
            },
            "theorem1": {
                "epsilon": None if eps is None else round(eps, 12),
                "hypothesis": self.small and self.size >= 2,
            },
            "theorem3_pass": self.theorem3_pass,
            "zero_stripped": self.zero_stripped,
            "witness": self.witness,
            "notes": list(self.notes),
        }


def describe(A: FieldSet) -> str:
    return "explicit:" + ",".join(map(str, A.elements()))


def measure(A: FieldSet, description: str | None = None) -> VerificationReport:
    """All cardinalities and derived ratios for A, no hypotheses checked."""
    if not A:
        raise EmptySet("cannot verify an empty set")
    return VerificationReport(
        q=A.q,
        description=description if description is not None else describe(A),
        size=len(A),
        sumset=len(sum_set(A, A)),
        prodset=len(product_set(A, A)),
        diffset=len(difference_set(A, A)),
        iset=len(i_set(A)),
    )


def _check_theorem3(rep: VerificationReport, A: FieldSet):
    rep.theorem3_pass = 2 * rep.iset >= rep.q
    if not rep.theorem3_pass:
        raise CertificateError(f"|I(A)| = {rep.iset} < q/2 with |A|^2 > q", A.elements())


def verify_theorem2(A: FieldSet, description: str | None = None) -> VerificationReport:
    """Report (|A-A| |I(A)|)^2 against |A|^5; a failed |A|^2 < q is flagged, not raised."""
    rep = measure(A, description)
    if not rep.small:
        rep.notes.append("theorem2: hypothesis |A|^2 < q fails")
    return rep


def verify_corollary2(A: FieldSet, description: str | None = None) -> VerificationReport:
    rep = measure(A, description)
    if not rep.small:
        rep.notes.append("corollary2: hypothesis |A|^2 < q fails")
    return rep


def verify_theorem1(A: FieldSet, description: str | None = None) -> VerificationReport:
    rep = measure(A, description)
    if rep.size < 2:
        rep.notes.append("theorem1: |A| < 2, exponent undefined")
    if not rep.small:
        rep.notes.append("theorem1: hypothesis |A|^2 < q fails")
    return rep


def verify_theorem3(A: FieldSet, description: str | None = None) -> VerificationReport:
    """Assert 2 |I(A)| >= q; requires |A|^2 > q."""
    if len(A) ** 2 <= A.q:
        raise HypothesisNotMet(f"need |A|^2 > q, got {len(A) ** 2} <= {A.q}")
    rep = measure(A, description)
    _check_theorem3(rep, A)
    return rep


def verify_all(A: FieldSet, description: str | None = None, witness: bool = True) -> VerificationReport:
    """Every applicable check, with witnesses when ``witness`` is set.

    Cardinalities use A as given. The multiplicative pipeline (heavy coset,
    xi selection) runs on A minus zero, and the report notes the stripping.
    """
    rep = measure(A, description)
    if rep.large:
        _check_theorem3(rep, A)
    if not witness:
        return rep
    I = i_set(A)
    w: dict = {}
    units = A.without_zero()
    if len(units) != len(A):
        rep.zero_stripped = True
        rep.notes.append("0 removed before the multiplicative pipeline")
    if units:
        hc = heavy_coset(units)
        w["heavy_coset"] = {
            "subgroup_order": hc.subgroup.order,
            "representative": hc.representative,
            "intersection_size": len(hc.intersection),
        }
    if len(units) > 1:
        lw = select_xi_lemma4(units, i_set(units))
        _check_bound(lw.certified_lower_bound, len(i_set(units)), units)
        # I(A minus 0) is inside I(A)
        _check_bound(lw.certified_lower_bound, rep.iset, A)
        w["lemma4"] = lw.to_dict()
    if rep.large:
        tw = theorem3_witness(A, I)
        _check_bound(tw.certified_lower_bound, rep.iset, A)
        w["theorem3"] = tw.to_dict()
    rep.witness = w
    return rep


def _check_bound(bound: int, actual: int, A: FieldSet):
    if bound > actual:
        raise CertificateError(f"certified bound {bound} exceeds |I| = {actual}", A.elements())
