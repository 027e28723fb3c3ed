"""
Command line front end.

    qsjacobi check FILE
    qsjacobi bracket FILE --kind canonical|schouten|jacobi -f EXPR -g EXPR
    qsjacobi theorem1 FILE [--a A --b B] [-o OUT]
    qsjacobi schoutenise FILE [-o OUT]
    qsjacobi axioms FILE [--kind K] --samples N --max-degree D --seed S

Exit codes: 0 all checks pass, 1 a check or precondition failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .constructions import PencilParams, PreconditionError, pencil, schoutenise
from .cotangent import canonical_poisson
from .fileformat import (
    ParseError,
    StructureFile,
    dump_structure,
    load_structure,
    parse_expression,
    print_expression,
)
from .structures import (
    CheckReport,
    OddJacobiStructure,
    SamplingSpec,
    check_axioms,
    check_exact_qs,
    check_odd_jacobi,
    check_qs,
    check_schouten,
    odd_jacobi_bracket,
    schouten_bracket,
)


class UsageError(Exception):
    pass


def check_structure(sf: StructureFile) -> CheckReport:
    return {
        "schouten": check_schouten,
        "qs": check_qs,
        "odd-jacobi": check_odd_jacobi,
        "exact-qs": check_exact_qs,
    }[sf.kind](sf.structure)


def format_report(rep: CheckReport, title: str, fmt: str = "text", prefix: str = "") -> str:
    if fmt == "json":
        doc = {
            "report": title,
            "status": "PASS" if rep.passed else "FAIL",
            "entries": [
                {"name": e.name, "residual": print_expression(e.residual),
                 "passed": e.passed, **({"detail": e.detail} if e.detail else {})}
                for e in rep
            ],
        }
        text = json.dumps(doc, indent=2)
        return "\n".join(prefix + ln for ln in text.splitlines()) + "\n"
    lines = [f"report: {title}"]
    for e in rep:
        tag = "PASS" if e.passed else "FAIL"
        line = f"[{tag}] {e.name}: {print_expression(e.residual)}"
        if e.detail:
            line += f" ; {e.detail}"
        lines.append(line)
    lines.append(f"status: {'PASS' if rep.passed else 'FAIL'}")
    return "".join(prefix + ln + "\n" for ln in lines)


def _load(path: str) -> StructureFile:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    return load_structure(text)


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _emit(text: str, out: str | None, stdout):
    if out:
        Path(out).write_text(text)
    else:
        stdout.write(text)


def cmd_check(args, stdout) -> int:
    sf = _load(args.file)
    rep = check_structure(sf)
    stdout.write(format_report(rep, f"check {sf.kind}", args.format))
    return 0 if rep.passed else 1


def cmd_bracket(args, stdout) -> int:
    sf = _load(args.file)
    f = parse_expression(args.f, sf.space)
    g = parse_expression(args.g, sf.space)
    st = sf.structure
    if args.kind == "canonical":
        r = canonical_poisson(f, g)
    elif args.kind == "schouten":
        if sf.kind == "exact-qs":
            st = st.qs
        if sf.kind == "odd-jacobi":
            raise UsageError("an odd-jacobi file has no Schouten bracket; use --kind jacobi")
        r = schouten_bracket(st, f, g)
    else:
        if not isinstance(st, OddJacobiStructure):
            raise UsageError(f"--kind jacobi needs an odd-jacobi file, got {sf.kind}")
        r = odd_jacobi_bracket(st, f, g)
    stdout.write(print_expression(r) + "\n")
    return 0


def cmd_theorem1(args, stdout) -> int:
    sf = _load(args.file)
    if sf.kind != "exact-qs":
        raise UsageError(f"theorem1 needs an exact-qs file, got {sf.kind}")
    try:
        oj = pencil(sf.structure, PencilParams(args.a, args.b))
    except PreconditionError as exc:
        stdout.write(format_report(exc.report, "precondition exact-qs"))
        return 1
    out = StructureFile(oj.space, "odd-jacobi", oj)
    rep = check_odd_jacobi(oj)
    text = (f"# odd Jacobi structure from exact QS data, a={args.a}, b={args.b}\n"
            + dump_structure(out) + format_report(rep, "check odd-jacobi", prefix="# "))
    _emit(text, args.output, stdout)
    return 0 if rep.passed else 1


def cmd_schoutenise(args, stdout) -> int:
    sf = _load(args.file)
    if sf.kind != "odd-jacobi":
        raise UsageError(f"schoutenise needs an odd-jacobi file, got {sf.kind}")
    try:
        st = schoutenise(sf.structure)
    except PreconditionError as exc:
        stdout.write(format_report(exc.report, "precondition odd-jacobi"))
        return 1
    out = StructureFile(st.space, "schouten", st)
    rep = check_schouten(st)
    text = ("# Schouten structure on the line extension\n" + dump_structure(out)
            + format_report(rep, "check schouten", prefix="# "))
    _emit(text, args.output, stdout)
    return 0 if rep.passed else 1


def cmd_axioms(args, stdout) -> int:
    sf = _load(args.file)
    kind = args.kind or ("jacobi" if sf.kind == "odd-jacobi" else "schouten")
    if kind == "jacobi" and sf.kind != "odd-jacobi":
        raise UsageError(f"--kind jacobi needs an odd-jacobi file, got {sf.kind}")
    if kind == "schouten" and sf.kind == "odd-jacobi":
        raise UsageError("an odd-jacobi file has no Schouten bracket; use --kind jacobi")
    try:
        spec = SamplingSpec(count=args.samples, max_degree=args.max_degree, seed=args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rep = check_axioms(kind, sf.space, None if kind == "canonical" else sf.structure, spec)
    title = f"axioms {kind} samples={spec.count} max-degree={spec.max_degree} seed={spec.seed}"
    stdout.write(format_report(rep, title, args.format))
    return 0 if rep.passed else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qsjacobi", description=__doc__.split("\n\n")[0].strip())
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="check the defining conditions of a structure file")
    p.add_argument("file")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("bracket", help="evaluate a bracket of two expressions")
    p.add_argument("file")
    p.add_argument("--kind", choices=("canonical", "schouten", "jacobi"), default="canonical")
    p.add_argument("-f", required=True)
    p.add_argument("-g", required=True)
    p.set_defaults(func=cmd_bracket)

    p = sub.add_parser("theorem1", help="odd Jacobi structure (pencil member) of exact QS data")
    p.add_argument("file")
    p.add_argument("--a", type=_rational, default=Fraction(1))
    p.add_argument("--b", type=_rational, default=Fraction(1))
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_theorem1)

    p = sub.add_parser("schoutenise", help="Schouten structure on M x R from odd Jacobi data")
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_schoutenise)

    p = sub.add_parser("axioms", help="sampled check of bracket axioms")
    p.add_argument("file")
    p.add_argument("--kind", choices=("canonical", "schouten", "jacobi"))
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--max-degree", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_axioms)
    return ap


def run_command(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, stdout)
    except ParseError as exc:
        stderr.write(f"parse error: {exc}\n")
        return 2
    except UsageError as exc:
        stderr.write(f"error: {exc}\n")
        return 2
    except ValueError as exc:
        # ill-formed expressions for the requested bracket, e.g. momenta in a derived bracket
        stderr.write(f"error: {exc}\n")
        return 2


def main():
    sys.exit(run_command())


if __name__ == "__main__":
    main()
