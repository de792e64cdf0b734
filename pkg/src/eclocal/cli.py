"""Command-line front end.

Curve files are flat key = value text: keys p, e, k, optional modulus, and
either a1..a6 or the short pair A, B.  Ring-element values are
comma-separated integers (each encodes one residue-field coefficient in
base p, lowest eps-degree first; short lists are zero padded).

Exit codes: 0 success, 2 input/validation failure, 3 unsupported
computational case (including "no solution" for dlp), 1 unexpected error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .curve import WeierstrassCurve, count_points_fq
from .errors import (
    EclocalError,
    NoSolution,
    TableTooLarge,
    TooLarge,
    UnsupportedExceptional,
    CurveFileError,
)
from .fields import field_make
from .infinity.dlp import dlp_solve
from .infinity.points import InfinityPoint
from .infinity.psi import psi_eval, psi_table
from .infinity.scan import scan_exceptional_rate
from .infinity.structure import (
    brute_force_structure,
    classify_case,
    full_group_report,
    group_structure,
)
from .localring import RkContext, RkElement

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_UNSUPPORTED = 3

CURVE_KEYS = ("a1", "a2", "a3", "a4", "a6")


def parse_element(ring: RkContext, text: str) -> RkElement:
    parts = [t.strip() for t in text.split(",")]
    try:
        encoding = [int(t) for t in parts if t != ""]
    except ValueError as exc:
        raise CurveFileError(f"bad ring element {text!r}: {exc}") from exc
    if len(encoding) > ring.k:
        raise CurveFileError(f"element has more than k={ring.k} coefficients")
    if any(not 0 <= m < ring.q for m in encoding):
        raise CurveFileError(f"element digit out of range [0, {ring.q})")
    return ring.from_int_list(encoding)


def element_text(r: RkElement) -> str:
    return ",".join(str(m) for m in r.encoding())


def parse_curve_text(text: str):
    """-> (ring, curve, fields dict).  Raises CurveFileError with line info."""
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise CurveFileError("expected key = value", line=lineno)
        key, _, val = line.partition("=")
        key = key.strip()
        if key in values:
            raise CurveFileError(f"duplicate key {key!r}", line=lineno)
        values[key] = val.strip()
    for required in ("p", "k"):
        if required not in values:
            raise CurveFileError(f"missing key {required!r}")
    try:
        p = int(values.pop("p"))
        e = int(values.pop("e", "1"))
        k = int(values.pop("k"))
    except ValueError as exc:
        raise CurveFileError(f"bad integer: {exc}") from exc
    modulus = None
    if "modulus" in values:
        modulus = [int(t) for t in values.pop("modulus").split(",")]
    field = field_make(p, e, modulus)
    ring = RkContext(field, k)
    short = "A" in values or "B" in values
    if short and any(key in values for key in CURVE_KEYS):
        raise CurveFileError("use either A,B or a1..a6, not both")
    coeffs = {}
    if short:
        coeffs["a4"] = parse_element(ring, values.pop("A", "0"))
        coeffs["a6"] = parse_element(ring, values.pop("B", "0"))
        coeffs["a1"] = coeffs["a2"] = coeffs["a3"] = ring.zero()
    else:
        for key in CURVE_KEYS:
            coeffs[key] = parse_element(ring, values.pop(key, "0"))
    if values:
        raise CurveFileError(f"unknown keys: {sorted(values)}")
    curve = WeierstrassCurve(
        ring, coeffs["a1"], coeffs["a2"], coeffs["a3"], coeffs["a4"], coeffs["a6"]
    )
    return ring, curve


def load_curve(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise CurveFileError(f"cannot read {path}: {exc}") from exc
    return parse_curve_text(text)


def curve_to_json(curve: WeierstrassCurve) -> dict:
    ring = curve.ring
    return {
        "p": ring.p,
        "e": ring.field.e,
        "modulus": list(ring.field.modulus),
        "k": ring.k,
        "a1": curve.a1.encoding(),
        "a2": curve.a2.encoding(),
        "a3": curve.a3.encoding(),
        "a4": curve.a4.encoding(),
        "a6": curve.a6.encoding(),
    }


def curve_from_json(doc: dict) -> WeierstrassCurve:
    field = field_make(doc["p"], doc["e"], doc["modulus"])
    ring = RkContext(field, doc["k"])
    return WeierstrassCurve(
        ring, *(ring.from_int_list(doc[key]) for key in CURVE_KEYS)
    )


def structure_to_json(gs) -> dict:
    return {
        "factors": [[order, mult] for order, mult in gs.factors],
        "provenance": gs.provenance,
        "residue_order": gs.residue_order,
        "split": gs.split,
    }


def structure_from_json(doc: dict):
    from .infinity.structure import GroupStructure

    return GroupStructure(
        tuple((order, mult) for order, mult in doc["factors"]),
        doc["provenance"],
        doc["residue_order"],
        doc["split"],
    )


# -- subcommands -------------------------------------------------------------


def cmd_validate(args) -> int:
    ring, curve = load_curve(args.curve)
    disc = curve.discriminant()
    elliptic = disc.is_unit()
    print(f"discriminant: {element_text(disc)}")
    print(f"elliptic: {'yes' if elliptic else 'no'}")
    if not elliptic:
        return EXIT_OK if args.allow_singular else EXIT_INVALID
    kind, d = classify_case(curve)
    if kind == "main":
        print("case: main")
    else:
        print(f"case: exceptional, d={d}")
    return EXIT_OK


def cmd_psi(args) -> int:
    form = args.form
    table = psi_table(args.imax, form)
    if args.eval is not None:
        if not args.curve:
            print("--eval requires --curve", file=sys.stderr)
            return EXIT_INVALID
        _, curve = load_curve(args.curve)
        for i in range(1, args.imax + 1):
            value = psi_eval(table, i, args.eval, curve)
            print(f"psi_{i}({args.eval}) = {element_text(value)}")
        return EXIT_OK
    text = table.to_text()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_structure(args) -> int:
    ring, curve = load_curve(args.curve)
    gs = full_group_report(curve) if ring.field.q <= 4096 else group_structure(curve)
    if args.json:
        print(json.dumps(structure_to_json(gs)))
    else:
        print(gs.text())
    if args.brute_force:
        oracle = brute_force_structure(curve)
        match = oracle.factors == gs.factors
        print(f"brute-force: {oracle.factors_text()} -> "
              f"{'MATCH' if match else 'MISMATCH'}")
        if not match:
            return 1
    return EXIT_OK


def cmd_dlp(args) -> int:
    ring, curve = load_curve(args.curve)
    P = InfinityPoint.from_x(curve, parse_element(ring, args.px))
    Q = InfinityPoint.from_x(curve, parse_element(ring, args.qx))
    try:
        res = dlp_solve(curve, P, Q)
    except NoSolution as exc:
        print(f"no solution (digit index {exc.digit_index})")
        return EXIT_UNSUPPORTED
    if args.json:
        print(json.dumps({
            "n": res.n,
            "digits": list(res.digits),
            "additions": res.additions,
            "transcript": [list(step) for step in res.transcript.steps],
        }))
    else:
        print(f"n = {res.n}")
        print(res.transcript.text())
        print(f"point additions: {res.additions}")
    return EXIT_OK


def cmd_scan(args) -> int:
    rate = scan_exceptional_rate(args.p)
    print(f"{rate.numerator}/{rate.denominator}")
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import run_verify

    results = run_verify(quick=args.quick)
    failed = 0
    for r in results:
        status = "PASS" if r.ok else "FAIL"
        detail = f"  {r.detail}" if r.detail else ""
        print(f"{status}  {r.name}{detail}")
        failed += 0 if r.ok else 1
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return EXIT_OK if failed == 0 else 1


def cmd_count(args) -> int:
    _, curve = load_curve(args.curve)
    print(count_points_fq(curve.residue_curve()))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eclocal",
        description="elliptic curves over F_q[eps]/(eps^k): structure and DLP",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    pv = sub.add_parser("validate", help="discriminant, ellipticity, case")
    pv.add_argument("curve")
    pv.add_argument("--allow-singular", action="store_true")
    pv.set_defaults(func=cmd_validate)

    pp = sub.add_parser("psi", help="multiplication-polynomial table")
    pp.add_argument("--imax", type=int, required=True)
    pp.add_argument("--form", choices=("extended", "short"), default="extended")
    pp.add_argument("--eval", type=int, default=None, metavar="N")
    pp.add_argument("--curve", default=None)
    pp.add_argument("--out", default=None)
    pp.set_defaults(func=cmd_psi)

    ps = sub.add_parser("structure", help="group structure report")
    ps.add_argument("curve")
    ps.add_argument("--brute-force", action="store_true")
    ps.add_argument("--json", action="store_true")
    ps.set_defaults(func=cmd_structure)

    pd = sub.add_parser("dlp", help="discrete log on the subgroup at infinity")
    pd.add_argument("curve")
    pd.add_argument("px", help="x coordinate of the base point (element encoding)")
    pd.add_argument("qx", help="x coordinate of the target point")
    pd.add_argument("--json", action="store_true")
    pd.set_defaults(func=cmd_dlp)

    pc = sub.add_parser("scan", help="exceptional-curve rate over F_p (short form)")
    pc.add_argument("--p", type=int, required=True)
    pc.set_defaults(func=cmd_scan)

    pw = sub.add_parser("verify", help="replay the symbolic verification suite")
    pw.add_argument("--quick", action="store_true",
                    help="skip the p >= 5 condition checks")
    pw.set_defaults(func=cmd_verify)

    pn = sub.add_parser("count", help="number of residue-curve points")
    pn.add_argument("curve")
    pn.set_defaults(func=cmd_count)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CurveFileError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (UnsupportedExceptional, TooLarge, TableTooLarge) as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except EclocalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
