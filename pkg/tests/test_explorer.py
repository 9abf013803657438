import math
import random
from fractions import Fraction

import pytest

import oracles as O
from sumprod import (
    CertificateError,
    FamilySpec,
    FieldSet,
    PrimeField,
    ScanTooLarge,
    SetSpecError,
    exhaustive_scan,
    family_scan,
    field_set,
    hbk_partial_sums,
    lemma5_empirical,
    parse_set,
    subgroup_of_order,
)
from sumprod import explorer
from sumprod.explorer import ScanResult
from sumprod.verify import measure


def test_exhaustive_counts():
    assert len(exhaustive_scan(5, (1, 4))) == 30
    res = exhaustive_scan(7, (2, 2))
    assert len(res) == 21
    eps = min(math.log(max(len(O.sumset(A, A, 7)), len(O.prodset(A, A, 7)))) / math.log(2) - 1
              for A in O.subsets(range(7), 2, 2))
    assert math.isclose(res.epsilon.value, eps)
    with pytest.raises(ScanTooLarge):
        exhaustive_scan(23)


@pytest.mark.parametrize("q", [5, 7, 11])
def test_exhaustive_full_range_visits_everything(q):
    res = exhaustive_scan(q)
    assert len(res) == 2 ** q - 1
    assert len({r.report.description for r in res.records}) == 2 ** q - 1


def test_exhaustive_order_is_ascending_mask():
    res = exhaustive_scan(5, (2, 3))
    masks = [sum(1 << int(x) for x in r.report.description.split(":")[1].split(",")) for r in res.records]
    assert masks == sorted(masks) and len(set(masks)) == len(masks)


def test_exhaustive_size_restricted_large_q():
    res = exhaustive_scan(101, (1, 2))
    assert len(res) == 101 + math.comb(101, 2)


def test_scan_budget(monkeypatch):
    with pytest.raises(ScanTooLarge):
        exhaustive_scan(11, budget=100)
    monkeypatch.setenv("SUMPROD_SCAN_BUDGET", "50")
    with pytest.raises(ScanTooLarge):
        exhaustive_scan(7, (1, 3))
    with pytest.raises(ScanTooLarge):
        family_scan(101, "random:size=5,seed=1", trials=51)
    assert len(exhaustive_scan(7, (1, 1))) == 7


def test_running_minima_monotone():
    res = exhaustive_scan(11, (1, 3))
    for key in ("min_theorem2", "min_corollary2", "min_epsilon"):
        vals = [getattr(r, key) for r in res.records if getattr(r, key) is not None]
        assert all(b <= a for a, b in zip(vals, vals[1:]))


def test_minima_invariant_under_visit_order():
    res = exhaustive_scan(11, (1, 3))
    reps = [r.report for r in res.records]
    shuffled = reps[:]
    random.Random(4).shuffle(shuffled)
    other = ScanResult(11, "shuffled")
    for rep in shuffled:
        other.add(rep)
    assert other.theorem2.value == res.theorem2.value
    assert other.corollary2.value == res.corollary2.value
    assert other.epsilon.value == res.epsilon.value


def test_deep_scan_aborts_with_offending_set(monkeypatch):
    calls = {"n": 0}
    real = explorer.verify_all

    def flaky(A, description=None, witness=True):
        calls["n"] += 1
        if A == field_set(7, [1, 3]):
            raise CertificateError("planted failure")
        return real(A, description, witness)

    monkeypatch.setattr(explorer, "verify_all", flaky)
    with pytest.raises(CertificateError) as info:
        exhaustive_scan(7, (2, 2), deep=True)
    assert info.value.witness == "explicit:1,3"


def test_deep_scan_small_q_passes():
    res = exhaustive_scan(7, deep=True)
    assert len(res) == 127 and res.theorem3_checked == sum(math.comb(7, k) for k in range(3, 8))


# --- families -------------------------------------------------------------


def test_family_examples():
    res = family_scan(101, "geo:g=3,len=10", trials=5)
    assert len(res) == 1
    assert res.records[0].report.size == len({pow(3, i, 101) for i in range(10)}) == 10
    a = family_scan(101, "random:size=6,seed=7", trials=100)
    b = family_scan(101, "random:size=6,seed=7", trials=100)
    assert len(a) == 100 and a.to_csv() == b.to_csv()
    full = family_scan(13, "interval:start=1,len=13")
    assert full.records[0].report.size == 13 and full.records[0].report.iset == 13


def test_family_generation():
    F = PrimeField(13)
    assert parse_set("explicit:1,2,15", F) == field_set(13, [1, 2])
    assert parse_set("interval:start=11,len=4", F) == field_set(13, [11, 12, 0, 1])
    assert parse_set("geo:g=2,len=3,start=3", F) == field_set(13, [3, 6, 12])
    assert parse_set("subgroup:g=3", F) == field_set(13, [1, 3, 9])
    assert parse_set("subgroup:order=4", F) == field_set(13, [1, 5, 8, 12])
    assert parse_set("cosets:order=3,cosets=1,extra=1", F) == field_set(13, [1, 3, 9, 2])
    assert len(parse_set("cosets:order=3,cosets=2", F)) == 6
    r = parse_set("random:size=5,seed=1", F)
    assert len(r) == 5 and r == parse_set("random:size=5,seed=1", F)
    sizes = {len(FamilySpec.parse("random:size=2..6,seed=3").generate(F, trial=t)) for t in range(40)}
    assert sizes <= set(range(2, 7)) and len(sizes) > 1
    # geometric progression through a small-order element collapses
    assert len(parse_set("geo:g=3,len=10", F)) == 3


@pytest.mark.parametrize(
    "text",
    ["explicit:1,2,4", "interval:len=10,start=1", "geo:g=3,len=10", "subgroup:g=3",
     "random:seed=42,size=10", "cosets:cosets=2,extra=1,order=3", "random:seed=1,size=2..5"],
)
def test_spec_roundtrip(text):
    spec = FamilySpec.parse(text)
    assert FamilySpec.parse(spec.to_text()) == spec
    F = PrimeField(61)
    assert spec.generate(F) == FamilySpec.parse(spec.to_text()).generate(F)


@pytest.mark.parametrize(
    "text,pos",
    [("explicit:1,x,3", 11), ("bogus:1", 0), ("interval:len=3,foo=2", 15), ("nocolon", 7), ("geo:g=3", 7)],
)
def test_spec_errors_carry_position(text, pos):
    with pytest.raises(SetSpecError) as info:
        FamilySpec.parse(text)
    assert info.value.position == pos
    assert "^" in str(info.value)


def test_explicit_roundtrip_of_emitted_sets():
    F = PrimeField(31)
    for A in O.subsets(range(31), 1, 2):
        S = field_set(31, A)
        assert parse_set(measure(S).description, F) == S


# --- difference statistics --------------------------------------------------


def test_hbk_partial_sums_examples():
    F = PrimeField(7)
    G = subgroup_of_order(F, 3)
    ps = hbk_partial_sums(G, 1)
    assert ps.partial_sum == 1 and math.isclose(ps.reference, 3 ** (2 / 3))
    assert abs(ps.reference - 2.08) < 0.01
    for q in (13, 31, 61):
        for d in (2, 3, 6):
            G = subgroup_of_order(PrimeField(q), d)
            ps = hbk_partial_sums(G, (q - 1) // d + 5)
            assert ps.partial_sum == d - 1
    assert all(hbk_partial_sums(subgroup_of_order(F, 1), T).partial_sum == 0 for T in (1, 3, 9))


def test_hbk_hypothesis_flag():
    G = subgroup_of_order(PrimeField(101), 5)
    assert hbk_partial_sums(G, 1).hypothesis  # 625 < 101^3
    G = subgroup_of_order(PrimeField(101), 100)
    assert not hbk_partial_sums(G, 2).hypothesis


def test_lemma5_empirical_examples():
    F = PrimeField(7)
    G = subgroup_of_order(F, 3)
    rec = lemma5_empirical(field_set(7, [1, 2]), G)
    assert rec.hypothesis and rec.diff_size == 3
    assert rec.ratio_sq == Fraction(81, 32) and abs(rec.ratio - 1.59) < 0.01
    one = lemma5_empirical(field_set(7, [2]), G)
    assert one.diff_size == 1 and one.ratio == 3
    G4 = subgroup_of_order(PrimeField(13), 4)
    assert set(G4.elements) == O.closure({5}, 13) == {1, 5, 8, 12}
    rec = lemma5_empirical(G4.elements, G4)
    assert not rec.hypothesis  # 16 > 13
    assert rec.diff_size == len(O.diffset([1, 5, 8, 12], [1, 5, 8, 12], 13))
    assert rec.energy_sum == sum(rec.stats.M)


def test_lemma5_ratio_positive():
    for q in (13, 17, 31):
        F = PrimeField(q)
        for d in (2, 3, 4, 5, 6):
            if (q - 1) % d:
                continue
            G = subgroup_of_order(F, d)
            for B in O.subsets(sorted(G.elements), 1, 3):
                assert lemma5_empirical(field_set(q, B), G).ratio_sq > 0
