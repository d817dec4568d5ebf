"""Command-line front-end.

Exit codes: 0 success, 1 domain failure (invalid matrix, overflow, or a
``--strict`` verdict that fails), 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import contextlib
import sys
from typing import Sequence, TextIO

from . import __version__
from .consistency import GeneratorSet, complete_from_generators, reduce
from .errors import ParseError, PCError
from .experiments import constant_offset_table, monte_carlo_comparison, stick_example
from .indicators import TOLERANCE, kii_matrix, matrix_kii
from .io import FORMATS, analysis_document, document_header, dumps_document, parse_matrix

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2


def _generator_list(text: str) -> list[float]:
    try:
        return [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _g(v: float) -> str:
    return format(v, ".12g")


def _table(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    widths = [max(len(h), *(len(r[c]) for r in rows)) if rows else len(h) for c, h in enumerate(header)]
    lines = ["  ".join(h.rjust(w) for h, w in zip(header, widths))]
    lines += ["  ".join(cell.rjust(w) for cell, w in zip(row, widths)) for row in rows]
    return "\n".join(lines) + "\n"


def _grid(matrix) -> str:
    return _table([""] + [str(c) for c in range(len(matrix))],
                  [[str(r)] + [_g(v) for v in row] for r, row in enumerate(matrix)])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pcii",
        description="Inconsistency analysis of pairwise-comparison matrices.",
    )
    parser.add_argument("--version", action="version", version=f"pcii {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    out = argparse.ArgumentParser(add_help=False)
    out.add_argument("--output", choices=("text", "structured"), default="text")

    src = argparse.ArgumentParser(add_help=False)
    src.add_argument("--input", required=True, metavar="PATH")
    src.add_argument("--format", choices=FORMATS, default="csv-full")

    tol = argparse.ArgumentParser(add_help=False)
    tol.add_argument("--tolerance", type=float, default=TOLERANCE)
    tol.add_argument("--strict", action="store_true",
                     help="exit 1 when the verdict fails the tolerance")

    sub.add_parser("analyze", parents=[src, tol, out], help="matrix Kii, worst triad, CI and verdict")
    sub.add_parser("triads", parents=[src, out], help="per-triad indicator table")

    p = sub.add_parser("reconstruct", parents=[out], help="consistent matrix from n-1 generators")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--generators", type=_generator_list, required=True, metavar="LIST")

    p = sub.add_parser("reduce", parents=[src, tol, out], help="greedy inconsistency reduction")
    p.add_argument("--blend", type=float, default=1.0)
    p.add_argument("--max-iter", type=int, default=1000)

    p = sub.add_parser("counterexample", parents=[out], help="T_n sequence: constant distance, vanishing error")
    p.add_argument("--x", type=float, default=2.0)
    p.add_argument("--nmax", type=int, default=10)
    p.add_argument("--c", type=float, default=1.0)

    sub.add_parser("sticks", parents=[out], help="the (1,2,1) versus (10,101,10) comparison")

    p = sub.add_parser("montecarlo", parents=[out], help="indicator rank correlation on random matrices")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--perturbation", type=float, default=3.0)
    p.add_argument("--seed", type=int, default=0)
    return parser


def _analyze(args) -> tuple[dict, str, int]:
    m = parse_matrix(args.input, args.format)
    report = kii_matrix(m, tolerance=args.tolerance)
    params = {"input": args.input, "format": args.format, "tolerance": args.tolerance}
    doc = analysis_document(m, report, params)
    verdict = "consistent" if report.consistent else "inconsistent"
    text = (
        f"n = {m.n}\n"
        f"matrix Kii = {_g(report.matrix_kii)} (worst triad {report.worst_triad})\n"
        f"CI = {_g(report.ci)}\n"
        f"verdict: {verdict} at tolerance {_g(args.tolerance)}\n"
    )
    code = EXIT_DOMAIN if args.strict and not report.consistent else EXIT_OK
    return doc, text, code


def _triads(args) -> tuple[dict, str, int]:
    m = parse_matrix(args.input, args.format)
    report = kii_matrix(m)
    doc = analysis_document(m, report, {"input": args.input, "format": args.format})
    doc["command"] = "triads"
    rows = [[str(r.indices), _g(r.x), _g(r.y), _g(r.z), _g(r.kii), _g(r.distance), _g(r.relative_error)]
            for r in report.per_triad]
    text = _table(["triad", "x", "y", "z", "kii", "distance", "relative_error"], rows)
    return doc, text, EXIT_OK


def _reconstruct(args) -> tuple[dict, str, int]:
    m = complete_from_generators(GeneratorSet(args.n, tuple(args.generators)))
    doc = document_header("reconstruct", {"n": args.n, "generators": list(args.generators)})
    doc["matrix"] = m.tolist()
    text = _grid(m.tolist())
    if m.n >= 3:
        kii, _ = matrix_kii(m)
        doc["matrix_kii"] = kii
        text += f"matrix Kii = {_g(kii)}\n"
    return doc, text, EXIT_OK


def _reduce(args) -> tuple[dict, str, int]:
    m = parse_matrix(args.input, args.format)
    trace = reduce(m, tolerance=args.tolerance, max_iter=args.max_iter, blend=args.blend)
    params = {"input": args.input, "format": args.format, "tolerance": args.tolerance,
              "blend": args.blend, "max_iter": args.max_iter}
    doc = document_header("reduce", params)
    doc["initial_kii"] = trace.initial_kii
    doc["steps"] = [
        {"step": s.step, "worst_triad": list(s.worst_triad), "element": s.element,
         "old_value": s.old_value, "new_value": s.new_value, "matrix_kii": s.matrix_kii,
         "blend": s.blend}
        for s in trace.steps
    ]
    doc["converged"] = trace.converged
    doc["final_matrix"] = trace.final.tolist()
    rows = [[str(s.step), str(s.worst_triad), s.element, _g(s.old_value), _g(s.new_value), _g(s.matrix_kii),
             _g(s.blend)] for s in trace.steps]
    text = f"initial matrix Kii = {_g(trace.initial_kii)}\n"
    if rows:
        text += _table(["step", "worst", "elem", "old", "new", "matrix_kii", "blend"], rows)
    text += f"converged: {'yes' if trace.converged else 'no'} after {len(trace.steps)} step(s)\n"
    text += _grid(trace.final.tolist())
    code = EXIT_DOMAIN if args.strict and not trace.converged else EXIT_OK
    return doc, text, code


def _counterexample(args) -> tuple[dict, str, int]:
    rows = constant_offset_table(args.x, args.c, args.nmax)
    doc = document_header("counterexample", {"x": args.x, "nmax": args.nmax, "c": args.c})
    doc["rows"] = [
        {"n": r.n, "triad": list(r.triad.values), "distance": r.distance,
         "relative_error": r.relative_error, "kii": r.kii}
        for r in rows
    ]
    text = _table(
        ["n", "x^n", "x^2n+c", "distance", "relative_error", "kii"],
        [[str(r.n), _g(r.triad.x), _g(r.triad.y), _g(r.distance), _g(r.relative_error), _g(r.kii)]
         for r in rows],
    )
    return doc, text, EXIT_OK


def _sticks(args) -> tuple[dict, str, int]:
    cmp = stick_example()
    doc = document_header("sticks", {})
    rows = []
    for label, s in (("A", cmp.a), ("B", cmp.b)):
        doc[label] = {"triad": list(s.triad.values), "distance": s.distance,
                      "relative_error": s.relative_error, "relative_error_true": s.relative_error_true}
        rows.append([label, str(s.triad.values), _g(s.distance), _g(s.relative_error),
                     f"{s.relative_error_true:.0%}"])
    text = _table(["", "triad", "distance", "rel_err(/y)", "rel_err(/true)"], rows)
    return doc, text, EXIT_OK


def _montecarlo(args) -> tuple[dict, str, int]:
    s = monte_carlo_comparison(args.n, args.trials, args.perturbation, args.seed)
    doc = document_header("montecarlo", {"n": args.n, "trials": args.trials,
                                         "perturbation": args.perturbation, "seed": args.seed})
    doc["reference"] = {"name": "max_relative_error", "mean": s.reference_mean, "max": s.reference_max}
    doc["indicators"] = {
        name: {"mean": st.mean, "max": st.max, "rank_correlation": st.rank_correlation}
        for name, st in s.indicators.items()
    }
    rows = [[name, _g(st.mean), _g(st.max),
             "n/a" if st.rank_correlation is None else f"{st.rank_correlation:.4f}"]
            for name, st in s.indicators.items()]
    text = _table(["indicator", "mean", "max", "spearman_vs_max_rel_err"], rows)
    return doc, text, EXIT_OK


COMMANDS = {
    "analyze": _analyze,
    "triads": _triads,
    "reconstruct": _reconstruct,
    "reduce": _reduce,
    "counterexample": _counterexample,
    "sticks": _sticks,
    "montecarlo": _montecarlo,
}


def run_cli(argv: Sequence[str] | None = None, stdout: TextIO | None = None,
            stderr: TextIO | None = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    try:
        doc, text, code = COMMANDS[args.command](args)
    except ParseError as exc:
        print(f"pcii: parse error: {exc}", file=stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"pcii: {exc}", file=stderr)
        return EXIT_USAGE
    except (PCError, ValueError) as exc:
        print(f"pcii: {exc}", file=stderr)
        return EXIT_DOMAIN

    stdout.write(dumps_document(doc) if args.output == "structured" else text)
    return code


def main(argv: Sequence[str] | None = None) -> None:
    sys.exit(run_cli(argv))
