"""Command-line front end: zeros, nodal lengths, scans, limit ladders, pictures.

Exit status is 0 on success, 2 for invalid arguments and 3 when a zero or a
Bessel value cannot be certified.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from .analysis import (LimitTable, ScanSummary, case1_sequence, case2_sequence, case3_diagonal,
                       estimate_limits, scan)
from .bessel import EvaluationError
from .nodal_disc import CSV_HEADER, dilate, portrait, ratio
from .rect_torus import CSV_HEADER as RECT_HEADER
from .rect_torus import enumerate_rect, simplicity_audit
from .render import RenderSpec, render_svg
from .zeros import BC, ZeroCache, ZeroSolverError, default_cache, set_default_cache, zero_table

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_SOLVER = 3

_BCS = [b.value for b in BC]


def _ladder(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad ladder {text!r}") from None


def _slope(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"bad slope {text!r}, expected p/q") from None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="nodal-lengths",
                                 description="Nodal lengths of disc and rectangle eigenfunctions.")
    ap.add_argument("--cache-dir", type=Path, default=None,
                    help="directory for the on-disk zero cache")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("zeros", help="zeros of J_k or J_k'")
    p.add_argument("--bc", choices=_BCS, default="dirichlet")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--s", type=int, default=1)
    p.add_argument("--table", type=int, metavar="SMAX", help="print s = 1..SMAX")

    p = sub.add_parser("length", help="nodal length record of one mode")
    p.add_argument("--bc", choices=_BCS, default="dirichlet")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--radius", type=float, default=1.0)

    p = sub.add_parser("scan", help="ratio extremes over an eigenvalue window")
    p.add_argument("--bc", choices=_BCS, default="dirichlet")
    p.add_argument("--lambda-min", type=float, required=True)
    p.add_argument("--lambda-max", type=float, required=True)
    p.add_argument("--radius", type=float, default=1.0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", type=Path, help="write every mode in the window as CSV")

    p = sub.add_parser("limits", help="window extremes over a ladder of eigenvalues")
    p.add_argument("--bc", choices=_BCS, default="dirichlet")
    p.add_argument("--ladder", type=_ladder, required=True)
    p.add_argument("--span", type=float, default=2.0)
    p.add_argument("--radius", type=float, default=1.0)
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("case", help="ratio along an extremal sequence of modes")
    p.add_argument("--which", type=int, choices=[1, 2, 3], required=True)
    p.add_argument("--bc", choices=_BCS, default="dirichlet")
    p.add_argument("--max", type=int, default=50)
    p.add_argument("--slope", type=_slope, default=Fraction(1))

    p = sub.add_parser("rect", help="Dirichlet modes of the rectangle [0,a] x [0,b]")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--lambda-max", type=float, required=True)
    p.add_argument("--audit", action="store_true", help="also list eigenvalue collisions")
    p.add_argument("--tol", type=float, default=None)

    p = sub.add_parser("render", help="SVG picture of a nodal portrait")
    p.add_argument("--bc", choices=_BCS, default="dirichlet")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--theta0", type=float, default=0.0)
    p.add_argument("--size", type=int, default=256)
    p.add_argument("--stroke", type=float, default=1.5)
    p.add_argument("--out", type=Path, required=True, help="output path, or - for stdout")
    return ap


def _cmd_zeros(a, out) -> None:
    if a.table is not None:
        for z in zero_table(a.bc, a.k, a.table).values:
            print(f"{z.index},{z.value:.15g}", file=out)
        return
    z = zero_table(a.bc, a.k, a.s).values[a.s - 1]
    print(f"{z.value:.15g}", file=out)


def _cmd_length(a, out) -> None:
    rec = ratio(a.k, a.s, a.bc)
    if a.radius != 1.0:
        rec = dilate(rec, a.radius)
    print(CSV_HEADER, file=out)
    print(rec.csv_row(), file=out)


def _cmd_scan(a, out) -> None:
    summ, recs = scan(a.bc, a.lambda_min, a.lambda_max, radius=a.radius,
                      workers=a.workers, with_records=True)
    print(ScanSummary.CSV_HEADER, file=out)
    print(summ.csv_row(), file=out)
    if a.out is not None:
        with open(a.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(CSV_HEADER + "\n")
            fh.writelines(r.csv_row() + "\n" for r in recs)


def _cmd_limits(a, out) -> None:
    table: LimitTable = estimate_limits(a.bc, a.ladder, span=a.span, radius=a.radius,
                                        workers=a.workers)
    out.write(table.to_csv())


def _cmd_case(a, out) -> None:
    if a.which == 1:
        print("k,ratio", file=out)
        for k, r in case1_sequence(a.max, a.bc):
            print(f"{k},{r:.15g}", file=out)
    elif a.which == 2:
        print("s,ratio", file=out)
        for s, r in case2_sequence(a.max, a.bc):
            print(f"{s},{r:.15g}", file=out)
    else:
        print("t,k,ratio", file=out)
        for t, k, r in case3_diagonal(a.max, a.slope, a.bc):
            print(f"{t},{k},{r:.15g}", file=out)


def _cmd_rect(a, out) -> None:
    print(RECT_HEADER, file=out)
    for m in enumerate_rect(a.a, a.b, a.lambda_max):
        print(m.csv_row(), file=out)
    if a.audit:
        rep = simplicity_audit(a.a, a.b, a.lambda_max, a.tol)
        print(f"# audit n_modes={rep.n_modes} tol={rep.tol:.6g} collisions={len(rep.collisions)}",
              file=out)
        for (k1, j1), (k2, j2), gap in rep.collisions:
            print(f"# {k1},{j1} ~ {k2},{j2} gap={gap:.6g}", file=out)


def _cmd_render(a, out) -> None:
    svg = render_svg(RenderSpec(portrait(a.k, a.s, a.bc), a.theta0, a.size, a.stroke))
    if str(a.out) == "-":
        out.write(svg)
    else:
        Path(a.out).write_text(svg, encoding="utf-8")


_COMMANDS = {
    "zeros": _cmd_zeros, "length": _cmd_length, "scan": _cmd_scan, "limits": _cmd_limits,
    "case": _cmd_case, "rect": _cmd_rect, "render": _cmd_render,
}


def main(argv: list[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    cache, previous = None, default_cache()
    if args.cache_dir is not None:
        cache = ZeroCache(args.cache_dir)
        set_default_cache(cache)
    try:
        _COMMANDS[args.command](args, out)
    except (ZeroSolverError, EvaluationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        if cache is not None:
            cache.save()
            set_default_cache(previous)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
