"""Command-line interface: ``cilattice <command> --oracle KIND --input FILE ...``.

Exit codes: 0 ok, 2 usage or parse error, 3 numeric error, 4 graphoid
inconsistency.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from typing import Optional, Sequence

import numpy as np

from . import __version__
from .ci import count_possible_ci, enumerate_ci, general_ci_query
from .core import GroundSet, IndependenceOracle
from .exceptions import (
    InsufficientSamplesError,
    InvalidArgumentError,
    NonGraphoidError,
    NumericDegeneracyError,
    TooLargeError,
    UnsupportedQueryError,
)
from .experiment import ExperimentConfig, run_recovery_experiment
from .graphtools import faithful_gaussian
from .io import decomposition_to_dict, read_graph, read_matrix, read_samples, read_table
from .lattice import compute_lattice, compute_mb, full_decomposition, sparse_decomposition
from .oracles import GaussianOracle, GraphSeparationOracle, SampleGaussianOracle, TableOracle, UndirectedGraph
from .stats import DEFAULT_TOL
from .verify import boundary_table, brute_decomposition, brute_lattice, check_axioms

ORACLE_KINDS = ("graph", "gaussian", "precision", "samples", "table")


class UsageError(Exception):
    pass


def default_tol() -> float:
    env = os.environ.get("CI_LATTICE_TOL")
    if env is None:
        return DEFAULT_TOL
    try:
        return float(env)
    except ValueError:
        raise UsageError(f"CI_LATTICE_TOL={env!r} is not a number") from None


def _labels(text: Optional[str]) -> list[str]:
    if text is None or not text.strip():
        return []
    return [x.strip() for x in text.split(",") if x.strip()]


def build_oracle(args) -> IndependenceOracle:
    if args.oracle is None or args.input is None:
        raise UsageError("--oracle and --input are required")
    kind = args.oracle
    tol = args.tol if args.tol is not None else default_tol()
    if kind == "graph":
        return GraphSeparationOracle(read_graph(args.input))
    if kind in ("gaussian", "precision"):
        return GaussianOracle(read_matrix(args.input, "covariance" if kind == "gaussian" else "precision"), tol)
    if kind == "samples":
        if args.tau is None:
            raise UsageError("--tau is required for the samples oracle")
        return SampleGaussianOracle(read_samples(args.input), args.tau)
    return TableOracle(read_table(args.input))


def _node(ground: GroundSet, label: Optional[str]) -> int:
    if label is None:
        raise UsageError("--j is required")
    return ground.index(label)


def _manifest(args, oracle: Optional[IndependenceOracle], started: float) -> dict:
    params = {k: getattr(args, k) for k in ("j", "s", "a", "b", "c", "t", "tau", "n", "trials", "seed", "tol", "max")
              if getattr(args, k, None) is not None}
    return {
        "command": args.command,
        "oracle": args.oracle,
        "input": args.input,
        "parameters": params,
        "version": __version__,
        "queries": oracle.query_count if oracle is not None else None,
        "wallTime": round(time.perf_counter() - started, 6),
    }


def _emit(obj: dict, out) -> None:
    out.write(json.dumps(obj, sort_keys=False) + "\n")


def cmd_mb(args, out):
    started = time.perf_counter()
    oracle = build_oracle(args)
    g = oracle.ground
    j = _node(g, args.j)
    S = g.varset(_labels(args.s)) if args.s is not None else g.without(j)
    m = compute_mb(oracle, j, S)
    _emit({"j": args.j, "S": g.label_list(S), "m": g.label_list(m), "manifest": _manifest(args, oracle, started)}, out)


def cmd_lattice(args, out):
    started = time.perf_counter()
    oracle = build_oracle(args)
    g = oracle.ground
    j = _node(g, args.j)
    S = g.varset(_labels(args.s)) if args.s is not None else g.without(j)
    lat = compute_lattice(oracle, j, S)
    _emit({"j": args.j, "S": g.label_list(S), "m": g.label_list(lat.lower), "M": g.label_list(lat.upper),
           "covered": lat.cardinality(), "manifest": _manifest(args, oracle, started)}, out)


def cmd_decompose(args, out):
    started = time.perf_counter()
    oracle = build_oracle(args)
    g = oracle.ground
    j = _node(g, args.j)
    if args.command == "sparse":
        if args.t is None:
            raise UsageError("--t is required")
        dec = sparse_decomposition(oracle, j, args.t)
    else:
        dec = full_decomposition(oracle, j)
    obj = decomposition_to_dict(dec, g)
    obj["manifest"] = _manifest(args, oracle, started)
    _emit(obj, out)


def cmd_ci(args, out):
    started = time.perf_counter()
    oracle = build_oracle(args)
    g = oracle.ground
    A, B, C = (g.varset(_labels(x)) for x in (args.a, args.b, args.c))
    verdict = general_ci_query(oracle, A, B, C)
    _emit({
        "independent": verdict.independent,
        "witnesses": [{"a": g.labels[w.a], "b": g.labels[w.b], "boundary": g.label_list(w.boundary)}
                      for w in verdict.witnesses],
        "queries": verdict.queries,
        "manifest": _manifest(args, oracle, started),
    }, out)


def cmd_enumerate(args, out):
    started = time.perf_counter()
    oracle = build_oracle(args)
    g = oracle.ground
    j = _node(g, args.j)
    dec = full_decomposition(oracle, j)
    stream = enumerate_ci(dec)
    for emitted, (i, C) in enumerate(stream):
        if args.max is not None and emitted >= args.max:
            break
        _emit({"i": g.labels[i], "C": g.label_list(C)}, out)
    _emit({"count": stream.count, "possible": count_possible_ci(g.size) if g.size >= 2 else 0,
           "complete": stream.complete, "manifest": _manifest(args, oracle, started)}, out)


def cmd_check_axioms(args, out):
    started = time.perf_counter()
    oracle = build_oracle(args)
    report = check_axioms(oracle, args.up_to, budget=args.budget, seed=args.seed or 0)
    obj = report.as_dict(oracle.ground)
    obj["manifest"] = _manifest(args, oracle, started)
    _emit(obj, out)


def cmd_verify_equivalence(args, out):
    started = time.perf_counter()
    if args.input is None:
        if args.random_graph is None:
            raise UsageError("give --oracle/--input or --random-graph D")
        rng = np.random.default_rng(args.seed or 0)
        oracle = GraphSeparationOracle(UndirectedGraph.random(args.random_graph, args.p, rng))
    else:
        oracle = build_oracle(args)
    g = oracle.ground
    if g.size > 10:
        raise UsageError("verify-equivalence is limited to d <= 10")
    nodes = [_node(g, args.j)] if args.j is not None else range(g.size)
    checks = []
    all_pass = True
    for j in nodes:
        table = boundary_table(oracle, j)
        for S, expected in table.items():
            lat = compute_lattice(oracle, j, S)
            brute, _ = brute_lattice(oracle, j, S, table)
            ok = lat.lower == expected and lat == brute
            all_pass &= ok
            checks.append({"j": g.labels[j], "S": g.label_list(S), "pass": ok})
        dec_ok = full_decomposition(oracle, j).lattice_set() == brute_decomposition(oracle, j, table).lattice_set()
        all_pass &= dec_ok
        checks.append({"j": g.labels[j], "decomposition": True, "pass": dec_ok})
    _emit({"allPass": all_pass, "checks": checks, "manifest": _manifest(args, oracle, started)}, out)


def cmd_experiment(args, out):
    started = time.perf_counter()
    if args.input is None:
        raise UsageError("--input is required")
    if args.oracle == "graph":
        graph = read_graph(args.input)
        spec = faithful_gaussian(graph, args.seed or 0, tuple(float(x) for x in args.weights.split(",")))
    elif args.oracle in ("gaussian", "precision"):
        spec = read_matrix(args.input, "covariance" if args.oracle == "gaussian" else "precision")
    else:
        raise UsageError("experiment needs --oracle graph, gaussian or precision")
    if args.n is None or args.t is None:
        raise UsageError("--n and --t are required")
    config = ExperimentConfig(spec, _node(spec.ground, args.j), args.t, args.n, args.tau,
                              args.trials, args.seed or 0,
                              args.tol if args.tol is not None else default_tol())
    report = run_recovery_experiment(config)
    obj = report.as_dict()
    obj["manifest"] = _manifest(args, None, started)
    _emit(obj, out)


COMMANDS = {
    "mb": cmd_mb,
    "lattice": cmd_lattice,
    "decompose": cmd_decompose,
    "sparse": cmd_decompose,
    "ci": cmd_ci,
    "enumerate": cmd_enumerate,
    "check-axioms": cmd_check_axioms,
    "verify-equivalence": cmd_verify_equivalence,
    "experiment": cmd_experiment,
}


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--oracle", choices=ORACLE_KINDS)
    common.add_argument("--input")
    common.add_argument("--tol", type=float)
    common.add_argument("--tau", type=float)
    common.add_argument("--seed", type=int)

    parser = argparse.ArgumentParser(prog="cilattice", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    for name in ("mb", "lattice"):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("--j")
        p.add_argument("--s")
    p = sub.add_parser("decompose", parents=[common])
    p.add_argument("--j")
    p = sub.add_parser("sparse", parents=[common])
    p.add_argument("--j")
    p.add_argument("--t", type=int)
    p = sub.add_parser("ci", parents=[common])
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--c", default="")
    p = sub.add_parser("enumerate", parents=[common])
    p.add_argument("--j")
    p.add_argument("--max", type=int)
    p = sub.add_parser("check-axioms", parents=[common])
    p.add_argument("--up-to", default="G7", choices=[f"G{k}" for k in range(1, 9)])
    p.add_argument("--budget", type=int, default=20000)
    p = sub.add_parser("verify-equivalence", parents=[common])
    p.add_argument("--j")
    p.add_argument("--random-graph", type=int, metavar="D")
    p.add_argument("--p", type=float, default=0.4)
    p = sub.add_parser("experiment", parents=[common])
    p.add_argument("--j")
    p.add_argument("--t", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--weights", default="0.1,0.3")
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    args = make_parser().parse_args(argv)
    try:
        COMMANDS[args.command](args, out)
    except (UsageError, InvalidArgumentError, UnsupportedQueryError, TooLargeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (NumericDegeneracyError, InsufficientSamplesError) as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return 3
    except NonGraphoidError as exc:
        print(f"graphoid inconsistency: {exc}", file=sys.stderr)
        pair = getattr(exc, "pair", None)
        if pair:
            print(f"offending intervals: {pair[0]!r} {pair[1]!r}", file=sys.stderr)
        return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())
