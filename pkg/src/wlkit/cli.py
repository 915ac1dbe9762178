"""Command-line entry point: ``wlkit {refine,compare,oracle,trace,corpus,bench}``.

Exit codes: 0 success / equivalent / isomorphic, 1 distinguished / not
isomorphic / property violated, 2 usage, I/O or validation error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import __version__
from .corpus import Corpus, enumerated_corpus, example_corpus, random_corpus, run_checks
from .engine import compare, run_refinement
from .formats import load_graph, write_comparison_report, write_trace
from .graph import GraphError, generate
from .oracle import is_isomorphic
from .variants import AlgorithmDescriptor, Variant

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


class CliError(Exception):
    pass


def _algorithm(args) -> AlgorithmDescriptor:
    variant = Variant(args.alg)
    if variant is not Variant.WL1 and args.k is None:
        raise CliError(f"--alg {args.alg} requires -k")
    try:
        alg = AlgorithmDescriptor(variant, None if variant is Variant.WL1 else args.k, args.equality_aware)
    except ValueError as e:
        raise CliError(str(e)) from None
    if alg.variant is Variant.KWL and alg.k == 1:
        print("warning: k-WL with k=1 ignores edges and stabilizes at initialization", file=sys.stderr)
    return alg


def _emit(text: str, out) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _print(args, payload: dict, human: str) -> None:
    if args.format == "json":
        print(json.dumps(payload))
    else:
        print(human)


def cmd_refine(args) -> int:
    alg = _algorithm(args)
    g = load_graph(args.graph, args.input_format)
    r = run_refinement(alg, g, args.max_rounds, args.threads)
    if args.output:
        Path(args.output).write_text(write_trace(r, g, args.trace_format), encoding="utf-8")
    payload = {
        "algorithm": alg.describe(),
        "rounds": r.rounds,
        "iterations": r.iterations,
        "classes": r.final.num_classes,
        "truncated": r.truncated,
        "certificate": {str(c): m for c, m in sorted(r.certificate.items())},
    }
    state = "truncated" if r.truncated else "stable"
    _print(args, payload, f"{alg}: rounds={r.rounds} classes={r.final.num_classes} ({state})")
    return EXIT_OK


def cmd_trace(args) -> int:
    alg = _algorithm(args)
    g = load_graph(args.graph, args.input_format)
    r = run_refinement(alg, g, args.max_rounds, args.threads)
    try:
        _emit(write_trace(r, g, args.format), args.output)
    except ValueError as e:
        raise CliError(str(e)) from None
    return EXIT_OK


def cmd_compare(args) -> int:
    alg = _algorithm(args)
    g1 = load_graph(args.graph1, args.input_format)
    g2 = load_graph(args.graph2, args.input_format)
    c = compare(alg, g1, g2, args.max_rounds, args.threads)
    report = write_comparison_report(c)
    if args.report:
        Path(args.report).write_text(report, encoding="utf-8")
    if args.format == "json":
        print(report)
    else:
        where = f" at round {c.first_distinguishing_round}" if c.distinguished else ""
        print(f"{alg}: {c.verdict.value}{where} (rounds run: {c.rounds_run})")
    return EXIT_FAIL if c.distinguished else EXIT_OK


def cmd_oracle(args) -> int:
    g1 = load_graph(args.graph1, args.input_format)
    g2 = load_graph(args.graph2, args.input_format)
    w = is_isomorphic(g1, g2)
    payload = {"isomorphic": w.isomorphic, "permutation": list(w.permutation) if w.permutation else None}
    human = "isomorphic, witness " + str(list(w.permutation)) if w.isomorphic else "not isomorphic"
    _print(args, payload, human)
    return EXIT_OK if w.isomorphic else EXIT_FAIL


def cmd_corpus(args) -> int:
    corpus = Corpus([], [])
    if args.enumerate:
        corpus = corpus + enumerated_corpus(args.enumerate)
    if args.random_pairs:
        if args.seed is None:
            raise CliError("--seed is required with --random-pairs")
        corpus = corpus + random_corpus(args.random_pairs, args.sizes, args.seed)
    if args.include_example:
        corpus = corpus + example_corpus()
    t0 = time.perf_counter()
    reports, repros = run_checks(corpus, args.checks.split(","), args.threads, args.equality_aware)
    elapsed = time.perf_counter() - t0
    ok = all(r.ok for r in reports)
    payload = {
        "graphs": len(corpus.graphs),
        "pairs": corpus.num_pairs,
        "seconds": round(elapsed, 3),
        "reports": [r.summary() for r in reports],
        "ok": ok,
    }
    if args.format == "json":
        print(json.dumps(payload))
    else:
        print(f"corpus: {len(corpus.graphs)} graphs, {corpus.num_pairs} pairs")
        for r in reports:
            status = "PASS" if r.ok else "FAIL"
            print(f"  [{status}] {r.name}: {r.pairs_checked} pairs, {len(r.violations)} violations")
    if repros:
        text = json.dumps(repros[: args.max_repros], indent=1)
        if args.repro:
            Path(args.repro).write_text(text, encoding="utf-8")
        print(text, file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_bench(args) -> int:
    alg = _algorithm(args)
    if args.family.startswith("random") and args.seed is None:
        raise CliError("--seed is required for random families")
    rows = []
    for n in args.sizes:
        params = {"n": n}
        if args.family == "random_regular":
            params.update(d=args.degree, seed=args.seed)
        elif args.family == "random_gnp":
            params.update(p=args.p, seed=args.seed)
        g = generate(args.family, **params)
        t0 = time.perf_counter()
        r = run_refinement(alg, g, args.max_rounds, args.threads)
        dt = time.perf_counter() - t0
        rows.append(
            {
                "alg": alg.name,
                "k": alg.k,
                "n": n,
                "domain_size": alg.domain_size(g),
                "seconds": round(dt, 6),
                "rounds": r.rounds,
                "iterations": r.iterations,
                "peak_colors": max(c.num_classes for c in r.history),
                "threads": args.threads,
            }
        )
    _emit(json.dumps({"family": args.family, "seed": args.seed, "rows": rows}, indent=1), args.output)
    return EXIT_OK


def _add_alg_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--alg", required=True, choices=[v.value for v in Variant])
    p.add_argument("-k", type=int, default=None, help="tuple dimension for kwl/kfwl")
    p.add_argument("--max-rounds", type=int, default=None, help="default: domain size")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--equality-aware", action="store_true", help="add the tuple equality pattern to atomic types")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wlkit", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"wlkit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    fmt = dict(choices=["text", "json"], default="text", help="stdout format")
    infmt = dict(choices=["json", "edgelist"], default=None, help="default: by file extension")

    p = sub.add_parser("refine", help="refine one graph and report rounds and classes")
    _add_alg_flags(p)
    p.add_argument("graph")
    p.add_argument("-o", "--output", help="write the trace here")
    p.add_argument("--trace-format", choices=["json", "dot"], default="json")
    p.add_argument("--format", **fmt)
    p.add_argument("--input-format", **infmt)
    p.set_defaults(func=cmd_refine)

    p = sub.add_parser("trace", help="emit the refinement trace (json or dot)")
    _add_alg_flags(p)
    p.add_argument("graph")
    p.add_argument("-o", "--output")
    p.add_argument("--format", choices=["json", "dot"], default="json")
    p.add_argument("--input-format", **infmt)
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("compare", help="run a test on two graphs; exit 1 if distinguished")
    _add_alg_flags(p)
    p.add_argument("graph1")
    p.add_argument("graph2")
    p.add_argument("--report", help="write the JSON comparison report here")
    p.add_argument("--format", **fmt)
    p.add_argument("--input-format", **infmt)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("oracle", help="exact isomorphism check (n <= 10); exit 1 if not isomorphic")
    p.add_argument("graph1")
    p.add_argument("graph2")
    p.add_argument("--format", **fmt)
    p.add_argument("--input-format", **infmt)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("corpus", help="check hierarchy equivalences and soundness over a corpus")
    p.add_argument("--enumerate", type=int, default=0, metavar="N", help="all labeled graphs on 1..N nodes")
    p.add_argument("--random-pairs", type=int, default=0)
    p.add_argument("--sizes", type=int, nargs="+", default=[6, 7])
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--include-example", action="store_true", help="add the two-triangles/hexagon pair")
    p.add_argument("--checks", default="remark1,remark2,soundness")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--equality-aware", action="store_true")
    p.add_argument("--repro", help="write violating pairs here")
    p.add_argument("--max-repros", type=int, default=20)
    p.add_argument("--format", **fmt)
    p.set_defaults(func=cmd_corpus)

    p = sub.add_parser("bench", help="time refinement on generated graphs")
    _add_alg_flags(p)
    p.add_argument("--family", default="random_regular", choices=["random_regular", "random_gnp", "cycle", "complete", "path"])
    p.add_argument("--sizes", type=int, nargs="+", required=True)
    p.add_argument("--degree", type=int, default=3)
    p.add_argument("--p", type=float, default=0.5)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_ERROR if e.code else EXIT_OK
    try:
        return args.func(args)
    except (CliError, GraphError, OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
