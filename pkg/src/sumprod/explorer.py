"""Scans over many sets: exhaustive enumeration, structured families, and
empirical measurements of the per-coset difference statistics.

Exhaustive scans visit subsets in ascending bitmask order. Work is split
into contiguous chunks of that order, so the merged output is identical for
any number of worker processes.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
import os
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .errors import CertificateError, ScanTooLarge, SetSpecError
from .field import PrimeField
from .multiplicative import SubgroupData, coset_decomposition, coset_diff_counts, lemma5_stats, subgroup_of_order
from .setops import FieldSet, difference_set
from .verify import CSV_HEADER, VerificationReport, describe, verify_all

DEFAULT_SCAN_BUDGET = 10 ** 7
# exhaustive enumeration above q = 17 must be cut down to this many subsets
ENUMERATION_LIMIT = 10 ** 6
ENUMERATION_FREE_Q = 17


def scan_budget() -> int:
    """Visit cap per scan; the SUMPROD_SCAN_BUDGET environment variable overrides it."""
    raw = os.environ.get("SUMPROD_SCAN_BUDGET")
    return int(raw) if raw else DEFAULT_SCAN_BUDGET


# ---------------------------------------------------------------------------
# set families

_KINDS = {
    "explicit": "explicit",
    "interval": "interval",
    "geo": "geometric",
    "geometric": "geometric",
    "subgroup": "subgroup",
    "random": "random",
    "cosets": "coset-union",
    "coset-union": "coset-union",
}

_KEYS = {
    "interval": {"start", "len"},
    "geometric": {"start", "g", "len"},
    "subgroup": {"g", "order"},
    "random": {"size", "seed"},
    "coset-union": {"order", "cosets", "extra"},
}

_TEXT_KIND = {"geometric": "geo", "coset-union": "cosets"}


@dataclass(frozen=True)
class FamilySpec:
    """A recipe for a test set.

    Textual forms: ``explicit:1,2,4``, ``interval:start=1,len=10``,
    ``geo:g=3,len=10`` (optional ``start``), ``subgroup:g=3`` or
    ``subgroup:order=4``, ``random:size=10,seed=42`` (``size`` may be a
    range ``a..b`` drawn per trial), ``cosets:order=3,cosets=1,extra=1``
    (union of the first cosets of the order-``order`` subgroup plus
    ``extra`` stray residues).
    """

    kind: str
    params: tuple = ()
    values: tuple = ()

    def param(self, key, default=None):
        return dict(self.params).get(key, default)

    @property
    def is_random(self) -> bool:
        return self.kind == "random"

    @classmethod
    def parse(cls, text: str) -> "FamilySpec":
        kind_txt, sep, body = text.partition(":")
        if not sep:
            raise SetSpecError("expected '<kind>:<parameters>'", text, len(text))
        kind = _KINDS.get(kind_txt.strip())
        if kind is None:
            raise SetSpecError(f"unknown set kind {kind_txt!r}", text, 0)
        offset = len(kind_txt) + 1
        if kind == "explicit":
            values = []
            pos = offset
            for tok in body.split(","):
                if not re.fullmatch(r"\s*-?\d+\s*", tok):
                    raise SetSpecError(f"expected an integer, got {tok!r}", text, pos)
                values.append(int(tok))
                pos += len(tok) + 1
            return cls(kind, (), tuple(values))
        params = {}
        pos = offset
        for tok in body.split(","):
            m = re.fullmatch(r"\s*([a-z]+)\s*=\s*(-?\d+(?:\.\.-?\d+)?)\s*", tok)
            if not m:
                raise SetSpecError(f"expected key=integer, got {tok!r}", text, pos)
            key, val = m.groups()
            if key not in _KEYS[kind]:
                raise SetSpecError(f"{kind} takes {sorted(_KEYS[kind])}, not {key!r}", text, pos)
            if ".." in val:
                if (kind, key) != ("random", "size"):
                    raise SetSpecError("ranges are only allowed for random size", text, pos)
                lo, hi = (int(v) for v in val.split(".."))
                params[key] = (lo, hi)
            else:
                params[key] = int(val)
            pos += len(tok) + 1
        required = {
            "interval": {"len"},
            "geometric": {"g", "len"},
            "random": {"size"},
            "coset-union": {"order"},
        }.get(kind, set())
        if kind == "subgroup" and not params.keys() & {"g", "order"}:
            required = {"g"}
        missing = required - params.keys()
        if missing:
            raise SetSpecError(f"{kind} is missing {sorted(missing)}", text, len(text))
        return cls(kind, tuple(sorted(params.items())), ())

    def to_text(self) -> str:
        kind = _TEXT_KIND.get(self.kind, self.kind)
        if self.kind == "explicit":
            return "explicit:" + ",".join(map(str, self.values))

        def fmt(v):
            return f"{v[0]}..{v[1]}" if isinstance(v, tuple) else str(v)

        return kind + ":" + ",".join(f"{k}={fmt(v)}" for k, v in self.params)

    def generate(self, field: PrimeField, trial: int = 0, seed: int | None = None) -> FieldSet:
        """The set for one trial. Only the random family depends on ``trial``/``seed``."""
        q = field.q
        p = dict(self.params)
        if self.kind == "explicit":
            return FieldSet.from_iterable(field, self.values)
        if self.kind == "interval":
            start = p.get("start", 0)
            return FieldSet.from_iterable(field, range(start, start + p["len"]))
        if self.kind == "geometric":
            start, g = p.get("start", 1), p["g"]
            vals, x = [], start % q
            for _ in range(p["len"]):
                vals.append(x)
                x = x * g % q
            return FieldSet.from_iterable(field, vals)
        if self.kind == "subgroup":
            if "order" in p:
                return subgroup_of_order(field, p["order"]).elements
            g = p["g"] % q
            if g == 0:
                raise SetSpecError("subgroup generator must be nonzero")
            vals, x = [], 1
            while True:
                vals.append(x)
                x = x * g % q
                if x == 1:
                    break
            return FieldSet.from_iterable(field, vals)
        if self.kind == "coset-union":
            G = subgroup_of_order(field, p["order"])
            cosets = coset_decomposition(G).cosets[: p.get("cosets", 1)]
            out = FieldSet.empty(field)
            for c in cosets:
                out = out | c.members
            extra = p.get("extra", 0)
            for x in range(1, q):
                if extra == 0:
                    break
                if x not in out:
                    out = out | FieldSet.from_iterable(field, [x])
                    extra -= 1
            return out
        if self.kind == "random":
            s = p.get("seed", 0) if seed is None else seed
            rng = np.random.default_rng([s, trial])
            size = p["size"]
            if isinstance(size, tuple):
                size = int(rng.integers(size[0], size[1] + 1))
            size = max(0, min(size, q))
            return FieldSet.from_iterable(field, rng.choice(q, size, replace=False))
        raise SetSpecError(f"unknown kind {self.kind}")


def parse_set(text: str, field: PrimeField) -> FieldSet:
    return FamilySpec.parse(text).generate(field)


# ---------------------------------------------------------------------------
# scan records and summaries


@dataclass
class ScanRecord:
    index: int
    report: VerificationReport
    min_theorem2: Fraction | None
    min_corollary2: Fraction | None
    min_epsilon: float | None

    @property
    def q(self) -> int:
        return self.report.q


@dataclass
class _Minimum:
    value: object = None
    argmin: str | None = None

    def offer(self, value, label):
        if value is not None and (self.value is None or value < self.value):
            self.value, self.argmin = value, label

    def to_dict(self):
        v = self.value
        if v is None:
            return {"value": None, "approx": None, "argmin": None}
        exact = str(v) if isinstance(v, Fraction) else repr(v)
        return {"value": exact, "approx": round(float(v), 12), "argmin": self.argmin}


@dataclass
class ScanResult:
    q: int
    family: str
    records: list = dc_field(default_factory=list)
    theorem2: _Minimum = dc_field(default_factory=_Minimum)
    corollary2: _Minimum = dc_field(default_factory=_Minimum)
    epsilon: _Minimum = dc_field(default_factory=_Minimum)
    theorem3_checked: int = 0

    def __len__(self):
        return len(self.records)

    def add(self, rep: VerificationReport):
        if rep.small:
            self.theorem2.offer(rep.theorem2_ratio, rep.description)
            self.corollary2.offer(rep.corollary2_ratio, rep.description)
            if rep.size >= 2:
                self.epsilon.offer(rep.epsilon, rep.description)
        if rep.theorem3_pass is not None:
            self.theorem3_checked += 1
        self.records.append(
            ScanRecord(len(self.records), rep, self.theorem2.value, self.corollary2.value, self.epsilon.value)
        )

    def summary(self) -> dict:
        return {
            "q": self.q,
            "family": self.family,
            "visited": len(self.records),
            "minima": {
                "theorem2_ratio": self.theorem2.to_dict(),
                "corollary2_ratio": self.corollary2.to_dict(),
                "epsilon": self.epsilon.to_dict(),
            },
            "theorem3_checked": self.theorem3_checked,
        }

    def summary_json(self) -> str:
        return json.dumps(self.summary(), indent=2, sort_keys=True) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        write_csv(self.records, buf)
        return buf.getvalue()


def write_csv(records, fh):
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in records:
        rep = r.report if isinstance(r, ScanRecord) else r
        w.writerow(rep.csv_row())


# ---------------------------------------------------------------------------
# exhaustive scans


def subset_count(q: int, sizes: tuple[int, int]) -> int:
    lo, hi = sizes
    return sum(math.comb(q, k) for k in range(max(lo, 0), min(hi, q) + 1))


def _masks(q: int, sizes: tuple[int, int]) -> list[int]:
    lo, hi = sizes
    lo, hi = max(lo, 1), min(hi, q)
    total = subset_count(q, (lo, hi))
    if q <= 22 and (1 << q) <= 8 * total:
        return [m for m in range(1, 1 << q) if lo <= m.bit_count() <= hi]
    out = []
    for k in range(lo, hi + 1):
        for combo in itertools.combinations(range(q), k):
            out.append(sum(1 << i for i in combo))
    out.sort()
    return out


def _verify_masks(q: int, masks: list[int], deep: bool) -> list[VerificationReport]:
    F = PrimeField(q)
    out = []
    for m in masks:
        A = FieldSet(F, m)
        try:
            out.append(verify_all(A, witness=deep))
        except CertificateError as exc:
            raise CertificateError(f"{exc} on {describe(A)} (q={q})", describe(A)) from exc
    return out


def _chunks(seq, n):
    n = max(1, min(n, len(seq)))
    size = -(-len(seq) // n)
    return [seq[i : i + size] for i in range(0, len(seq), size)]


def _run_chunked(fn, q, items, deep, workers):
    if workers <= 1 or len(items) < 2:
        return fn(q, items, deep)
    parts = _chunks(items, workers)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(fn, [q] * len(parts), parts, [deep] * len(parts)))
    return [r for part in results for r in part]


def exhaustive_scan(
    q: int,
    sizes: tuple[int, int] | None = None,
    *,
    deep: bool = False,
    workers: int = 1,
    budget: int | None = None,
) -> ScanResult:
    """Verify every A in F_q with lo <= |A| <= hi.

    Allowed when q <= 17 or at most 10**6 subsets are in range, and never
    beyond the visit budget. ``deep`` also runs the witness pipeline on
    every set; any failed certificate aborts the scan naming the set.
    """
    PrimeField(q)
    sizes = sizes or (1, q)
    count = subset_count(q, (max(sizes[0], 1), sizes[1]))
    budget = scan_budget() if budget is None else budget
    if q > ENUMERATION_FREE_Q and count > ENUMERATION_LIMIT:
        raise ScanTooLarge(f"{count} subsets of F_{q}: limit is {ENUMERATION_LIMIT} for q > {ENUMERATION_FREE_Q}")
    if count > budget:
        raise ScanTooLarge(f"{count} subsets exceed the scan budget {budget}")
    masks = _masks(q, sizes)
    reports = _run_chunked(_verify_masks, q, masks, deep, workers)
    res = ScanResult(q, f"exhaustive:{sizes[0]}..{sizes[1]}")
    for rep in reports:
        res.add(rep)
    return res


# ---------------------------------------------------------------------------
# family scans


def _verify_trials(q, job, deep):
    text, trials, seed = job
    spec = FamilySpec.parse(text)
    F = PrimeField(q)
    out = []
    for t in trials:
        A = spec.generate(F, trial=t, seed=seed)
        label = f"{text}#{t}" if spec.is_random else text
        try:
            out.append(verify_all(A, label, witness=deep))
        except CertificateError as exc:
            raise CertificateError(f"{exc} on {describe(A)} (q={q})", describe(A)) from exc
    return out


def _verify_trial_chunk(q, chunk, deep):
    text, seed, trials = chunk
    return _verify_trials(q, (text, trials, seed), deep)


def family_scan(
    q: int,
    spec: FamilySpec | str,
    trials: int = 1,
    *,
    seed: int | None = None,
    deep: bool = False,
    workers: int = 1,
    budget: int | None = None,
) -> ScanResult:
    """Verify ``trials`` sets drawn from a family (one set for deterministic families).

    Trial t of a random family uses the generator seeded by (seed, t), so the
    output does not depend on how trials are split across workers.
    """
    if isinstance(spec, str):
        spec = FamilySpec.parse(spec)
    PrimeField(q)
    n = trials if spec.is_random else 1
    budget = scan_budget() if budget is None else budget
    if n > budget:
        raise ScanTooLarge(f"{n} trials exceed the scan budget {budget}")
    text = spec.to_text()
    if workers <= 1 or n < 2:
        reports = _verify_trials(q, (text, list(range(n)), seed), deep)
    else:
        parts = [(text, seed, part) for part in _chunks(list(range(n)), workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_verify_trial_chunk, [q] * len(parts), parts, [deep] * len(parts)))
        reports = [r for part in results for r in part]
    res = ScanResult(q, text)
    for rep in reports:
        res.add(rep)
    return res


# ---------------------------------------------------------------------------
# per-coset difference statistics


class PartialSums(NamedTuple):
    T: int
    partial_sum: int
    reference: float
    ratio: float
    hypothesis: bool


def hbk_partial_sums(G: SubgroupData, T: int) -> PartialSums:
    """Sum of the T largest N_t against (|G| T)^(2/3).

    Measured only. ``hypothesis`` reports whether |G|^4 T < q^3, the range
    where the sum is known to be O((|G| T)^(2/3)).
    """
    if T < 1:
        raise ValueError("T must be positive")
    stats = coset_diff_counts(G)
    s = sum(stats.N[:T])
    ref = (G.order * T) ** (2 / 3)
    return PartialSums(T, s, ref, s / ref, G.order ** 4 * T < G.field.q ** 3)


@dataclass(frozen=True)
class Lemma5Record:
    q: int
    b_size: int
    g_order: int
    diff_size: int
    hypothesis: bool
    ratio_sq: Fraction
    energy_sum: int
    energy_ratio_sq: Fraction
    stats: object = None

    @property
    def ratio(self) -> float:
        """|B - B| |G| / |B|^(5/2)."""
        return math.sqrt(self.ratio_sq)

    @property
    def energy_ratio(self) -> float:
        """sum_t M_t / (|B|^(3/2) |G|)."""
        return math.sqrt(self.energy_ratio_sq)

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "b_size": self.b_size,
            "g_order": self.g_order,
            "diff_size": self.diff_size,
            "hypothesis": self.hypothesis,
            "ratio_sq": str(self.ratio_sq),
            "ratio": round(self.ratio, 12),
            "energy_sum": self.energy_sum,
            "energy_ratio_sq": str(self.energy_ratio_sq),
            "energy_ratio": round(self.energy_ratio, 12),
        }


def lemma5_empirical(B: FieldSet, G: SubgroupData) -> Lemma5Record:
    """|B - B| |G| / |B|^(5/2) and sum_t M_t / (|B|^(3/2) |G|) for B inside G.

    Both ratios are kept exactly as squares. ``hypothesis`` is |B|^2 < q.
    """
    stats = lemma5_stats(B, G)
    k = len(B)
    d = len(difference_set(B, B))
    g = G.order
    m = sum(stats.M)
    return Lemma5Record(
        q=B.q,
        b_size=k,
        g_order=g,
        diff_size=d,
        hypothesis=k * k < B.q,
        ratio_sq=Fraction((d * g) ** 2, k ** 5),
        energy_sum=m,
        energy_ratio_sq=Fraction(m * m, k ** 3 * g * g),
        stats=stats,
    )
