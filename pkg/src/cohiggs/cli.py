"""Command-line driver: verification suites, determinants, canonical forms, metadata.

Exit codes: 0 pass, 1 verification failure or non-integrable field, 2 usage or
parse error.
"""
from __future__ import annotations

import argparse
import json
import sys

from .classification import (
    QSym2,
    RhoSym2,
    SymTangent,
    ZeroImage,
    canonicalize_pm,
    canonicalize_qc,
    image_point,
)
from .errors import CoHiggsError, ExcludedIndex, ParseError, Unclassifiable
from .fields import CoHiggsK0, CoHiggsK1, CoHiggsK2, CoHiggsKBig, determinant, integrable, schwarz_info
from .geometry import SectionOk, SectionT, SectionTm1
from .serialize import (
    det_to_wire,
    image_to_wire,
    parse_document,
    section_to_wire,
)
from .suites import THEOREMS, run_suite

FIELDS = (CoHiggsK0, CoHiggsK1, CoHiggsK2, CoHiggsKBig)
SEED_RANGE = (-(2**63), 2**64 - 1)


class UsageError(Exception):
    pass


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {n}")
    return n


def _seed(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer seed, got {text!r}") from None
    if not SEED_RANGE[0] <= n <= SEED_RANGE[1]:
        raise argparse.ArgumentTypeError("the seed must fit in 64 bits")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cohiggs",
        description="Exact determinant computations for co-Higgs fields on Schwarzenberger bundles.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a seeded property suite")
    v.add_argument("--theorem", required=True, choices=THEOREMS)
    v.add_argument("--trials", type=_positive, default=100)
    v.add_argument("--seed", type=_seed, default=0)
    v.add_argument("--json", action="store_true", help="emit one JSON object")
    v.add_argument("--jobs", type=_positive, default=1, help="worker processes")
    v.add_argument("--bound", type=_positive, default=9, help="coefficient bound for generators")

    d = sub.add_parser("det", help="determinant and image point of a field")
    d.add_argument("--input", required=True)
    d.add_argument("--json", action="store_true")

    c = sub.add_parser("canon", help="canonical form of a pair, section or field")
    c.add_argument("--input", required=True)
    c.add_argument("--json", action="store_true")

    i = sub.add_parser("integrable", help="integrability of a field on each chart")
    i.add_argument("--input", required=True)
    i.add_argument("--json", action="store_true")

    n = sub.add_parser("info", help="Schwarzenberger bundle metadata")
    n.add_argument("--k", type=int, required=True)
    n.add_argument("--json", action="store_true")
    return parser


# --- text formatting -------------------------------------------------------------------


def _vec(v) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"


def image_lines(p) -> list:
    if isinstance(p, ZeroImage):
        return ["image: Zero"]
    if isinstance(p, QSym2):
        return ["image: QSym2", f"  q: {p.q.form.poly}", f"  C: {_vec(p.C.v)}"]
    if isinstance(p, SymTangent):
        return ["image: SymTangent", f"  A: {p.A}"]
    if isinstance(p, RhoSym2):
        return ["image: RhoSym2", f"  C: {_vec(p.C.v)}", f"  rho: {p.rho.form.poly}"]
    raise TypeError(type(p).__name__)


def _structured_line(s) -> str:
    if s is None:
        return "structured: none"
    name = type(s).__name__
    if name == "QCForm":
        return f"structured: q (x) Sym2(C) with q = {s.q.form.poly}, C = {_vec(s.C.v)}"
    if name == "TangentForm":
        return f"structured: -Sym2(A) with A = {s.A}"
    return f"structured: lam*rho (x) Sym2(C) with lam = {s.lam}, rho = {s.rho.form.poly}, C = {_vec(s.C.v)}"


def _emit(obj, as_json: bool, lines: list):
    if as_json:
        print(json.dumps(obj, sort_keys=True))
    else:
        print("\n".join(lines))


# --- commands --------------------------------------------------------------------------


def _load(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return parse_document(text, path)


def _load_field(path: str):
    kind, obj = _load(path)
    if not isinstance(obj, FIELDS):
        raise UsageError(f"{path}: expected a field document (k0field, k1field, k2field, kbigfield), got {kind}")
    return kind, obj


def cmd_verify(args) -> int:
    report = run_suite(args.theorem, args.trials, args.seed, bound=args.bound, jobs=args.jobs)
    print(report.to_json() if args.json else report.to_text())
    return 0 if report.passed else 1


def cmd_det(args) -> int:
    kind, phi = _load_field(args.input)
    ok = integrable(phi)
    d = determinant(phi)
    try:
        p, reason = image_point(d), None
    except Unclassifiable as exc:
        p, reason = None, str(exc)
    obj = {
        "kind": kind,
        "integrable": ok,
        "determinant": det_to_wire(d),
        "image": None if p is None else image_to_wire(p),
    }
    if reason:
        obj["unclassifiable"] = reason
    t = d.triple
    lines = [
        f"kind: {kind}",
        f"integrable: {'yes' if ok else 'no'}",
        "determinant (chart 0, coefficients of e1^2, e1e2 (halved), e2^2):",
        f"  t11: {t.t11}",
        f"  t12: {t.t12}",
        f"  t22: {t.t22}",
        _structured_line(d.structured),
    ]
    lines += image_lines(p) if p is not None else [f"image: unclassifiable ({reason})"]
    if not ok:
        lines.append("flag: non-integrable field, determinant shown for reference")
    _emit(obj, args.json, lines)
    return 0 if ok else 1


def _canonical(obj):
    if isinstance(obj, tuple):
        q, c = obj
        return canonicalize_qc(q, c)
    if isinstance(obj, (SectionT, SectionTm1)):
        return canonicalize_pm(obj)
    if isinstance(obj, FIELDS):
        if not integrable(obj):
            raise UsageError("the field is not integrable; it has no image point")
        return image_point(determinant(obj))
    if isinstance(obj, SectionOk):
        raise UsageError("sections of O(k) have no canonical form here; use a pair document")
    raise UsageError(f"no canonical form for {type(obj).__name__}")


def cmd_canon(args) -> int:
    _, obj = _load(args.input)
    p = _canonical(obj)
    if isinstance(p, (SectionT, SectionTm1)):
        wire = section_to_wire(p)
        lines = [f"section: {wire['bundle']}", f"  {p}"]
    else:
        wire = image_to_wire(p)
        lines = image_lines(p)
    _emit(wire, args.json, lines)
    return 0


def cmd_integrable(args) -> int:
    kind, phi = _load_field(args.input)
    charts = [integrable(phi, c) for c in range(3)]
    lines = [f"kind: {kind}", f"integrable: {'yes' if charts[0] else 'no'}"]
    lines += [f"  chart {c}: {'yes' if v else 'no'}" for c, v in enumerate(charts)]
    _emit({"kind": kind, "integrable": charts[0], "charts": charts}, args.json, lines)
    return 0 if charts[0] else 1


def cmd_info(args) -> int:
    try:
        info = schwarz_info(args.k)
    except ExcludedIndex:
        raise UsageError("k = 3 is the excluded case: no classification is given for it") from None
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    obj = {"k": info.k, "c1": info.c1, "c2": info.c2, "splitting": info.splitting, "h1_end0": info.h1_end0}
    lines = [f"{key}: {obj[key]}" for key in ("k", "c1", "c2", "splitting", "h1_end0")]
    _emit(obj, args.json, lines)
    return 0


COMMANDS = {
    "verify": cmd_verify,
    "det": cmd_det,
    "canon": cmd_canon,
    "integrable": cmd_integrable,
    "info": cmd_info,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CoHiggsError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
