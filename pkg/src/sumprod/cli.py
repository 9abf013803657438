"""Command-line front end.

    sumprod --q 7 --set explicit:1,2 iset
    sumprod --q 7 --set explicit:1,2 sxi --xi 1
    sumprod --q 7 --set explicit:1,2,3 theorem3
    sumprod --q 13 --exhaustive --sizes 1..3
    sumprod --q 101 scan --family random:size=8,seed=1 --trials 100 --out scan.csv

Exit status: 0 success, 2 bad arguments or set specification, 3 violated
precondition (hypothesis not met, scan too large, ...), 1 failed certificate.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from .errors import CertificateError, SetSpecError, SumProdError
from .explorer import FamilySpec, exhaustive_scan, family_scan, hbk_partial_sums, lemma5_empirical, write_csv
from .field import PrimeField
from .multiplicative import generated_subgroup
from .setops import (
    FieldSet,
    difference_set,
    i_set,
    product_set,
    ratio_set,
    repr_counts,
    s_xi_set,
    sum_set,
)
from .verify import describe, verify_all
from .witness import embed_witness, select_xi_lemma2, select_xi_lemma4, theorem3_witness

ELIDE_ABOVE = 10 ** 4


class UsageError(Exception):
    pass


def _dump(obj, out):
    out.write(json.dumps(obj, indent=2, sort_keys=True))
    out.write("\n")


def _sizes(text: str) -> tuple[int, int]:
    m = re.fullmatch(r"(\d+)\.\.(\d+)", text)
    if not m:
        raise argparse.ArgumentTypeError(f"expected a..b, got {text!r}")
    lo, hi = int(m.group(1)), int(m.group(2))
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty size range {text!r}")
    return lo, hi


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sumprod", description="Exact sum-product computations in Z/qZ.")
    p.add_argument("--q", type=int, required=True, help="prime modulus")
    p.add_argument("--set", dest="setspec", help="set specification, e.g. explicit:1,2,4")
    p.add_argument("--exhaustive", action="store_true", help="verify every subset (with --sizes)")
    p.add_argument("--sizes", type=_sizes, help="size range a..b for --exhaustive")
    p.add_argument("--full", action="store_true", help=f"never elide sets above {ELIDE_ABOVE} elements")
    p.add_argument("--deep", action="store_true", help="run the witness pipeline in scans")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--budget", type=int, help="scan visit cap (default: $SUMPROD_SCAN_BUDGET or 10^7)")
    p.add_argument("--out", help="CSV output path for scans")
    sub = p.add_subparsers(dest="op")

    for name in ("sumset", "prodset", "diffset", "iset", "ratios"):
        sub.add_parser(name)
    for name in ("sxi", "energy", "lemma1"):
        sub.add_parser(name).add_argument("--xi", type=int, required=True)
    sub.add_parser("lemma2").add_argument("--group", required=True, help="set spec; its generated subgroup is used")
    sub.add_parser("lemma4")
    sub.add_parser("theorem3")
    sub.add_parser("verify")
    sub.add_parser("lemma5").add_argument("--group", required=True)
    hbk = sub.add_parser("hbk")
    hbk.add_argument("--group", required=True)
    hbk.add_argument("--T", type=int, required=True)
    scan = sub.add_parser("scan")
    scan.add_argument("--family", help="family spec (defaults to --set)")
    scan.add_argument("--trials", type=int, default=1)
    scan.add_argument("--seed", type=int)
    scan.add_argument("--out", dest="scan_out")
    return p


def _set_payload(S: FieldSet, full: bool) -> dict:
    if len(S) > ELIDE_ABOVE and not full:
        return {"result_size": len(S), "result": None, "elided": True}
    return {"result_size": len(S), "result": list(S.elements())}


def _group(text, F):
    return generated_subgroup(FamilySpec.parse(text).generate(F).without_zero())


def _run(args, out) -> int:
    try:
        F = PrimeField(args.q)
    except SumProdError as exc:
        raise UsageError(str(exc))
    op = args.op

    if args.exhaustive:
        if op not in (None, "verify"):
            raise UsageError("--exhaustive only combines with verify")
        sizes = args.sizes or (1, args.q)
        res = exhaustive_scan(args.q, sizes, deep=args.deep, workers=args.workers, budget=args.budget)
        if args.out:
            with open(args.out, "w", newline="") as fh:
                write_csv(res.records, fh)
        _dump({"summary": res.summary(), "reports": [r.report.to_dict() for r in res.records]}, out)
        return 0

    if op == "scan":
        text = args.family or args.setspec
        if not text:
            raise UsageError("scan needs --family or --set")
        res = family_scan(
            args.q, FamilySpec.parse(text), args.trials, seed=args.seed,
            deep=args.deep, workers=args.workers, budget=args.budget,
        )
        path = args.scan_out or args.out
        if path:
            with open(path, "w", newline="") as fh:
                write_csv(res.records, fh)
            out.write(res.summary_json())
        else:
            write_csv(res.records, out)
        return 0

    if op is None:
        raise UsageError("no operation given")
    if op == "hbk":
        ps = hbk_partial_sums(_group(args.group, F), args.T)
        _dump({"q": args.q, "op": op, **ps._asdict()}, out)
        return 0
    if not args.setspec:
        raise UsageError(f"{op} needs --set")
    A = FamilySpec.parse(args.setspec).generate(F)
    head = {"q": args.q, "input": describe(A), "op": op}

    if op in ("sumset", "prodset", "diffset", "iset", "ratios", "sxi"):
        if op == "sumset":
            S = sum_set(A, A)
        elif op == "prodset":
            S = product_set(A, A)
        elif op == "diffset":
            S = difference_set(A, A)
        elif op == "iset":
            S = i_set(A)
        elif op == "ratios":
            S = ratio_set(A, A)
        else:
            head["xi"] = args.xi % args.q
            S = s_xi_set(A, args.xi)
        _dump({**head, **_set_payload(S, args.full)}, out)
    elif op == "energy":
        table = repr_counts(A, args.xi)
        _dump({**head, "xi": args.xi % args.q, "result": table.energy(), "result_size": len(table),
               "total_pairs": table.total()}, out)
    elif op == "lemma1":
        _dump({**head, **embed_witness(A, args.xi).to_dict()}, out)
    elif op == "lemma2":
        G = _group(args.group, F)
        c = select_xi_lemma2(A, G)
        k2 = len(A) ** 2
        _dump({**head, "xi": c.xi, "energy": c.energy, "s_xi_size": c.s_xi_size, "group_order": G.order,
               "floor": f"{k2 * G.order}/{k2 + G.order}"}, out)
    elif op == "lemma4":
        _dump({**head, **select_xi_lemma4(A).to_dict()}, out)
    elif op == "theorem3":
        _dump({**head, **theorem3_witness(A).to_dict()}, out)
    elif op == "verify":
        _dump(verify_all(A, args.setspec).to_dict(), out)
    elif op == "lemma5":
        rec = lemma5_empirical(A, _group(args.group, F))
        _dump({**head, **rec.to_dict(),
               "cosets": [{"t": r.t, "rep": r.representative, "N": r.N, "L": r.L, "M": r.M} for r in rec.stats]}, out)
    return 0


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _run(args, out)
    except (UsageError, SetSpecError) as exc:
        err.write(f"sumprod: error: {exc}\n")
        return 2
    except CertificateError as exc:
        err.write(f"sumprod: certificate failed: {exc}\n")
        return 1
    except SumProdError as exc:
        err.write(f"sumprod: {type(exc).__name__}: {exc}\n")
        return 3


if __name__ == "__main__":
    sys.exit(main())
