"""Command-line entry point: ``poptotal <command> ...``.

Exit codes: 0 success, 1 verification or coloring failure, 2 input is not
pseudo-outerplanar, 3 I/O or format error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from .corpus import MAX_ENUMERATION_N, GeneratorSpec, enumerate_pseudo_outerplanar, random_pseudo_outerplanar
from .dot import export_dot
from .embedding import CircularEmbedding, EmbeddingError, validate_embedding
from .engine import NotPseudoOuterplanar, total_color_with_trace
from .formats import (
    FormatError,
    coloring_to_dict,
    format_edge_list,
    read_coloring,
    read_edge_list,
    read_embedding,
    write_coloring,
    write_edge_list,
    write_embedding,
)
from .graph import Graph, iter_violations
from .oracle import DEFAULT_MAX_ELEMENTS, OracleCapError, total_chromatic_number_with_witness
from .structure import PreconditionError, find_configuration
from .suite import run_suite

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_NOT_POP = 2
EXIT_IO = 3


@dataclass
class RunReport:
    command: str
    argv: List[str]
    input_digest: Optional[str] = None
    outcome: str = "ok"
    exit_code: int = EXIT_OK
    seconds: float = 0.0
    details: Dict[str, Any] = field(default_factory=dict)
    criteria: List[Dict[str, Any]] = field(default_factory=list)

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True) + "\n"


class _Fail(Exception):
    def __init__(self, code: int, outcome: str, message: str) -> None:
        super().__init__(message)
        self.code = code
        self.outcome = outcome


def _digest(path: Optional[str]) -> Optional[str]:
    if path is None:
        return None
    try:
        return hashlib.sha256(Path(path).read_bytes()).hexdigest()
    except OSError:
        return None


def _load_graph(path: str) -> Graph:
    return read_edge_list(path)


def _load_embedding(path: Optional[str]) -> Optional[CircularEmbedding]:
    return read_embedding(path) if path else None


# ---------------------------------------------------------------------------
# commands


def cmd_color(args: argparse.Namespace, report: RunReport) -> int:
    g = _load_graph(args.input)
    emb = _load_embedding(args.embedding)
    try:
        c, trace = total_color_with_trace(g, m=args.M, embedding=emb, check=args.check)
    except EmbeddingError as exc:
        raise _Fail(EXIT_IO, "bad-embedding", str(exc))
    except ValueError as exc:
        if isinstance(exc, NotPseudoOuterplanar):
            raise
        raise _Fail(EXIT_FAILURE, "bad-parameter", str(exc))
    bad = next(iter_violations(g, c), None)
    if bad is not None or not c.is_complete(g):
        raise _Fail(EXIT_FAILURE, "invalid-coloring", str(bad or "incomplete coloring"))
    used = len(c.colors_used())
    report.details.update({"palette": c.k, "colors_used": used, "route": trace.route,
                           "m": trace.m, "divergences": len(trace.divergences)})
    if args.output:
        write_coloring(c, g.n, args.output)
    else:
        sys.stdout.write(json.dumps(coloring_to_dict(c, g.n)) + "\n")
    if args.dot:
        Path(args.dot).write_text(export_dot(g, c, emb))
    print(f"colored {g.n} vertices and {g.edge_count} edges with {used} of {c.k} colors", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, report: RunReport) -> int:
    g = _load_graph(args.input)
    c = read_coloring(args.coloring)
    problems = [str(v) for v in iter_violations(g, c)]
    if not problems and not c.is_complete(g):
        problems.append(f"incomplete: {len(c)} of {g.n + g.edge_count} elements colored")
    report.details["violations"] = problems
    if problems:
        for p in problems:
            print(p)
        raise _Fail(EXIT_FAILURE, "invalid-coloring", problems[0])
    print(f"valid {c.k}-total coloring")
    return EXIT_OK


def cmd_chi(args: argparse.Namespace, report: RunReport) -> int:
    g = _load_graph(args.input)
    try:
        k, witness = total_chromatic_number_with_witness(g, args.max_elements)
    except OracleCapError as exc:
        raise _Fail(EXIT_FAILURE, "over-cap", str(exc))
    report.details.update({"chi": k, "max_degree": g.max_degree()})
    print(k)
    if args.output:
        write_coloring(witness, g.n, args.output)
    return EXIT_OK


def cmd_find_config(args: argparse.Namespace, report: RunReport) -> int:
    g = _load_graph(args.input)
    try:
        cfg = find_configuration(g)
    except PreconditionError as exc:
        raise _Fail(EXIT_FAILURE, "precondition", str(exc))
    if cfg is None and g.n:
        raise NotPseudoOuterplanar("minimum degree >= 2 but no reducible configuration")
    out = cfg.to_dict() if cfg is not None else None
    report.details["configuration"] = out
    print(json.dumps(out))
    return EXIT_OK


def cmd_check_embedding(args: argparse.Namespace, report: RunReport) -> int:
    g = _load_graph(args.input)
    emb = read_embedding(args.embedding)
    try:
        bad = validate_embedding(g, emb)
    except EmbeddingError as exc:
        raise _Fail(EXIT_IO, "bad-embedding", str(exc))
    if bad is not None:
        print(bad)
        raise _Fail(EXIT_FAILURE, "crossing", str(bad))
    print("valid")
    return EXIT_OK


def cmd_gen(args: argparse.Namespace, report: RunReport) -> int:
    spec = GeneratorSpec(args.n, args.density, args.seed, not args.no_outer_cycle, args.maximal)
    try:
        g, emb = random_pseudo_outerplanar(spec)
    except ValueError as exc:
        raise _Fail(EXIT_FAILURE, "bad-parameter", str(exc))
    report.details.update({"n": g.n, "m": g.edge_count, "max_degree": g.max_degree()})
    if args.out:
        write_edge_list(g, f"{args.out}.txt")
        write_embedding(emb, f"{args.out}.json")
        print(f"wrote {args.out}.txt and {args.out}.json", file=sys.stderr)
    else:
        sys.stdout.write(format_edge_list(g))
    return EXIT_OK


def cmd_enum(args: argparse.Namespace, report: RunReport) -> int:
    if args.n > MAX_ENUMERATION_N or args.n < 1:
        raise _Fail(EXIT_FAILURE, "bad-parameter", f"n must be in 1..{MAX_ENUMERATION_N}")
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    count = 0
    for g, emb in enumerate_pseudo_outerplanar(args.n, args.min_degree, with_embedding=True):
        stem = out / f"g{count:05d}_n{g.n}_m{g.edge_count}"
        write_edge_list(g, f"{stem}.txt")
        write_embedding(emb, f"{stem}.json")
        count += 1
    report.details["graphs"] = count
    print(f"wrote {count} graphs to {out}", file=sys.stderr)
    return EXIT_OK


def cmd_paper_suite(args: argparse.Namespace, report: RunReport) -> int:
    results = run_suite(args.seed, args.quick, args.only)
    for res in results:
        print(res.line())
    report.criteria = [res.to_dict(timing=False) for res in results]
    report.details["criterion_seconds"] = {str(r.ident): round(r.seconds, 3) for r in results}
    if not all(res.passed for res in results):
        raise _Fail(EXIT_FAILURE, "criteria-failed", "some criteria failed")
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--report", help="write a JSON run report to this file")

    parser = argparse.ArgumentParser(prog="poptotal", description="Total coloring of pseudo-outerplanar graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("color", parents=[common], help="total-color a graph")
    p.add_argument("--input", required=True, help="edge-list file")
    p.add_argument("--embedding", help="embedding JSON to validate first")
    p.add_argument("-M", type=int, default=None, help="palette parameter; uses M+1 colors (default: Δ)")
    p.add_argument("--output", help="coloring JSON (default: stdout)")
    p.add_argument("--dot", help="also write a DOT drawing")
    p.add_argument("--check", action="store_true", help="verify after every replayed step")
    p.set_defaults(func=cmd_color)

    p = sub.add_parser("verify", parents=[common], help="check a total coloring")
    p.add_argument("--input", required=True)
    p.add_argument("--coloring", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("chi", parents=[common], help="exact total chromatic number")
    p.add_argument("--input", required=True)
    p.add_argument("--max-elements", type=int, default=DEFAULT_MAX_ELEMENTS)
    p.add_argument("--output", help="write the witness coloring JSON")
    p.set_defaults(func=cmd_chi)

    p = sub.add_parser("find-config", parents=[common], help="locate a reducible configuration")
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_find_config)

    p = sub.add_parser("check-embedding", parents=[common], help="validate a circular embedding")
    p.add_argument("--input", required=True)
    p.add_argument("--embedding", required=True)
    p.set_defaults(func=cmd_check_embedding)

    p = sub.add_parser("gen", parents=[common], help="random pseudo-outerplanar graph")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--density", type=float, default=1.0)
    p.add_argument("--maximal", action="store_true")
    p.add_argument("--no-outer-cycle", action="store_true")
    p.add_argument("--out", help="file prefix; writes PREFIX.txt and PREFIX.json")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("enum", parents=[common], help="all pseudo-outerplanar graphs up to n vertices")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--min-degree", type=int, default=0)
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_enum)

    p = sub.add_parser("paper-suite", parents=[common], help="run the acceptance battery")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--quick", action="store_true", help="smaller corpora")
    p.add_argument("--only", type=int, nargs="+", help="criterion numbers to run")
    p.set_defaults(func=cmd_paper_suite)
    return parser


def dispatch(argv: Sequence[str]) -> RunReport:
    """Run one command and return its report (never raises on bad input)."""
    argv = list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = EXIT_OK if exc.code == 0 else EXIT_IO
        return RunReport(argv[0] if argv else "", argv, outcome="usage", exit_code=code)
    report = RunReport(args.command, argv, _digest(getattr(args, "input", None)))
    start = time.perf_counter()
    try:
        report.exit_code = args.func(args, report)
    except _Fail as exc:
        report.outcome, report.exit_code = exc.outcome, exc.code
        report.details.setdefault("error", str(exc))
        print(f"error: {exc}", file=sys.stderr)
    except NotPseudoOuterplanar as exc:
        report.outcome, report.exit_code = "not-pseudo-outerplanar", EXIT_NOT_POP
        report.details["error"] = str(exc)
        print(f"error: {exc}", file=sys.stderr)
    except (OSError, FormatError) as exc:
        report.outcome, report.exit_code = "io-error", EXIT_IO
        report.details["error"] = str(exc)
        print(f"error: {exc}", file=sys.stderr)
    report.seconds = time.perf_counter() - start
    if getattr(args, "report", None):
        try:
            Path(args.report).write_text(report.to_json())
        except OSError as exc:
            print(f"error: cannot write report: {exc}", file=sys.stderr)
            report.exit_code = report.exit_code or EXIT_IO
    return report


def main(argv: Optional[Sequence[str]] = None) -> int:
    return dispatch(sys.argv[1:] if argv is None else argv).exit_code


if __name__ == "__main__":
    sys.exit(main())
