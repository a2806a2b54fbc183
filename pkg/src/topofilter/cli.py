"""Command line interface.

Exit codes: 0 success, 1 verification failure or tolerance breach,
2 parse / input error, 3 shape or precondition error.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from . import engine, formats
from .errors import (
    DegenerateFilter,
    EmptyComplex,
    EmptyFilter,
    InvalidCoefficient,
    InvalidMetric,
    InvalidSignal,
    NoState,
    ShapeError,
    TopoFilterError,
)
from .filters import polezero_maps, state_space
from .sheaf import verify_section
from .simplicial import build_line_complex

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_PARSE = 2
EXIT_SHAPE = 3

_PARSE_ERRORS = (formats.ParseError, InvalidCoefficient, EmptyFilter, DegenerateFilter, InvalidSignal, OSError)
_SHAPE_ERRORS = (ShapeError, NoState, InvalidMetric, EmptyComplex)


def _load_filter(path):
    coeffs = formats.read_coefficients(path)
    return coeffs, polezero_maps(coeffs)


def _fmt_row(row) -> str:
    return "[" + ", ".join(formats.format_float(x) for x in row) + "]"


def cmd_run(args) -> int:
    _, diagram = _load_filter(args.filter)
    x = formats.read_signal(args.input)
    init = None
    if args.init is not None:
        init = formats.read_signal(args.init).tolist()
    result = engine.run_filter(diagram, x, init_state=init)
    formats.write_signal(args.output, result.output)
    if args.emit_section is not None:
        formats.write_section(args.emit_section, result.section)
    report = verify_section(result.complex, diagram, result.section, args.tol)
    if not report.consistent:
        print(f"run produced an inconsistent section on edges {report.edges()}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_impulse(args) -> int:
    _, diagram = _load_filter(args.filter)
    if args.length < 1:
        raise ShapeError(f"impulse length must be positive, got {args.length}")
    formats.write_signal(args.output, engine.impulse_response(diagram, args.length))
    return EXIT_OK


def cmd_verify(args) -> int:
    coeffs, diagram = _load_filter(args.filter)
    section = formats.read_section(args.section)
    if section.consistency_dim != coeffs.order:
        raise ShapeError(f"section has order {section.consistency_dim} but the filter has order {coeffs.order}")
    c = build_line_complex(section.vertex_count) if section.vertex_count else None
    report = verify_section(c, diagram, section, args.tol)
    if report.consistent:
        print("consistent")
        return EXIT_OK
    print(f"inconsistent: {len(report)} violation(s) at tol {args.tol:g}")
    for v in report.violations:
        print(f"  e{v.edge} {v.side}: max |residual| = {v.max_abs_residual:.3e} residual = {_fmt_row(v.residual)}")
    return EXIT_FAIL


def cmd_compare(args) -> int:
    coeffs, diagram = _load_filter(args.filter)
    x = formats.read_signal(args.input)
    targets = ["oracle", "statespace"] if args.against == "both" else [args.against]
    model = state_space(coeffs) if "statespace" in targets else None
    y = engine.run_filter(diagram, x).output
    ok = True
    for target in targets:
        ref = engine.direct_form_oracle(coeffs, x) if target == "oracle" else engine.run_state_space(model, x)
        cmp = engine.compare(y, ref, rel_tol=args.rel_tol, abs_tol=args.abs_tol)
        status = "pass" if cmp.passed else "FAIL"
        print(f"{target}: max_abs={cmp.max_abs:.3e} max_rel={cmp.max_rel:.3e} {status}")
        ok = ok and cmp.passed
    return EXIT_OK if ok else EXIT_FAIL


def cmd_info(args) -> int:
    coeffs, d = _load_filter(args.filter)
    print(f"kind: {coeffs.kind}")
    print(f"order: {coeffs.order}")
    print(f"b: {_fmt_row(coeffs.b)}")
    print(f"a: {_fmt_row(coeffs.a)}")
    print(f"state_dim: {d.state_dim}")
    print(f"consistency_dim: {d.consistency_dim}")
    print(f"input_dim: {d.input_dim}")
    print(f"output_dim: {d.output_dim}")
    for name, m in d.maps().items():
        print(f"map_{name}: {m.rows}x{m.cols}")
        for row in m.entries:
            print(f"  {_fmt_row(row)}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="topofilter",
        description="Run LTI filters as sheaves over line complexes and check them against classical oracles.",
        epilog="Feedback coefficients follow y[n] = sum b_i x[n-i] - sum a_j y[n-j].",
    )
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="filter a signal CSV")
    r.add_argument("filter")
    r.add_argument("input")
    r.add_argument("output")
    r.add_argument("--init", help="CSV with the N+1 initial state entries (last entry ignored)")
    r.add_argument("--emit-section", metavar="PATH", help="write the computed state section here")
    r.add_argument("--tol", type=float, default=0.0, help="gluing tolerance for the self-check (default 0)")
    r.set_defaults(func=cmd_run)

    i = sub.add_parser("impulse", help="write the impulse response")
    i.add_argument("filter")
    i.add_argument("length", type=int)
    i.add_argument("output")
    i.set_defaults(func=cmd_impulse)

    v = sub.add_parser("verify", help="check a section file against the gluing conditions")
    v.add_argument("filter")
    v.add_argument("section")
    v.add_argument("--tol", type=float, default=1e-9)
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("compare", help="compare the sheaf run with classical oracles")
    c.add_argument("filter")
    c.add_argument("input")
    c.add_argument("--against", choices=["oracle", "statespace", "both"], default="oracle")
    c.add_argument("--rel-tol", type=float, default=1e-9)
    c.add_argument("--abs-tol", type=float, default=0.0)
    c.set_defaults(func=cmd_compare)

    n = sub.add_parser("info", help="print stalk dimensions and sheaf maps")
    n.add_argument("filter")
    n.set_defaults(func=cmd_info)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _PARSE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except _SHAPE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SHAPE
    except TopoFilterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SHAPE


if __name__ == "__main__":
    sys.exit(main())
