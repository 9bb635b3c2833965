"""Command-line front end: instance generation, solving, and benchmarking.

Three subcommands:

``ftc generate``  writes a versioned instance JSON file from a seeded config.
``ftc solve``     dispatches one problem/algorithm pair on an instance file
                  and prints a JSON report.
``ftc bench``     runs a suite of seeded instances through an algorithm and
                  its brute-force oracle, emits one CSV row per instance, and
                  exits nonzero when any approximation ratio breaks its proven
                  bound -- so a bench run is a self-checking acceptance sweep.

Instance schema (version 1)::

    {"version": 1, "dim": d, "voters": [[...], ...], "candidates": [[...], ...],
     "metric": "l2" | "l1" | "linf" | {"matrix": [[...], ...]},
     "k": int, "f": int}

Suite schema (version 1)::

    {"version": 1, "rows": [{"id": str, "problem": "orp"|"fts"|"oftc",
                             "algo": ..., "eps": float?, "gen": {... GeneratorConfig
                             fields ...}}, ...]}

Bench CSV columns: ``instance,problem,algo,score,oracle,ratio,millis``.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from typing import Optional

from . import eptas, generators, metric_approx, one_dim, oracle
from .model import (
    Election,
    EnumerationGuardError,
    INFEASIBLE,
    Score,
    SolveReport,
)

PROBLEMS = ("orp", "fts", "oftc")
ALGOS = ("exact", "greedy1d", "dp1d", "approx3", "approx5", "eptas")

_DISPATCH = {
    ("orp", "exact"),
    ("orp", "greedy1d"),
    ("orp", "approx3"),
    ("fts", "exact"),
    ("fts", "dp1d"),
    ("fts", "approx3"),
    ("oftc", "exact"),
    ("oftc", "dp1d"),
    ("oftc", "approx3"),
    ("oftc", "approx5"),
    ("oftc", "eptas"),
}

RATIO_BOUNDS = {
    "exact": 1.0,
    "greedy1d": 1.0,
    "dp1d": 1.0,
    "approx3": 3.0,
    "approx5": 5.0,
}

#: Headroom for float rounding when checking ratio bounds.
RATIO_SLACK = 1e-9


def save_instance(path: str, e: Election, k: int, f: int) -> None:
    data = {
        "version": 1,
        "dim": e.dim,
        "voters": [list(p) for p in e.voters],
        "candidates": [list(p) for p in e.candidates],
        "metric": e.metric if isinstance(e.metric, str) else {"matrix": [list(r) for r in e.metric]},
        "k": k,
        "f": f,
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(data, fh)
        fh.write("\n")


def load_instance(path: str) -> tuple[Election, int, int]:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if data.get("version") != 1:
        raise ValueError("unsupported instance schema version")
    metric = data.get("metric", "l2")
    if isinstance(metric, dict):
        metric = tuple(tuple(row) for row in metric["matrix"])
    e = Election(
        tuple(tuple(p) for p in data["voters"]),
        tuple(tuple(p) for p in data["candidates"]),
        data["dim"],
        metric,
    )
    return e, int(data.get("k", 1)), int(data.get("f", 0))


def _parse_indices(value: Optional[str]) -> Optional[tuple[int, ...]]:
    """Index list given inline as JSON or as a path to a JSON file."""
    if value is None:
        return None
    text = value.strip()
    if not text.startswith("["):
        with open(text, "r", encoding="utf-8") as fh:
            text = fh.read()
    return tuple(int(i) for i in json.loads(text))


def _score_json(score: Score):
    return None if score is INFEASIBLE else score


def _run_solve(problem, algo, e, k, f, eps, committee, failing) -> dict:
    t0 = time.perf_counter()
    if problem == "orp":
        if algo == "exact":
            report = oracle.orp_exact(e, committee, failing)
        elif algo == "greedy1d":
            report = one_dim.orp_1d(e, committee, failing)
        else:
            report = metric_approx.orp_approx3(e, committee, failing)
        body = report.to_dict()
    elif problem == "fts":
        if algo == "exact":
            report = oracle.fts_exact(e, committee, f)
            body = report.to_dict()
        elif algo == "dp1d":
            report = one_dim.fts_1d(e, committee, f)
            body = report.to_dict()
        else:
            value = metric_approx.fts_approx3(e, committee, f)
            body = {
                "committee": list(committee),
                "score": _score_json(value),
                "infeasible": value is INFEASIBLE,
                "replacement": None,
                "worst_failing_set": None,
                "restricted_voters": None,
                "millis": (time.perf_counter() - t0) * 1e3,
            }
    else:
        if algo == "exact":
            report = oracle.oftc_exact(e, k, f)
        elif algo == "dp1d":
            report = one_dim.oftc_1d(e, k, f)
        elif algo == "approx3":
            report = metric_approx.oftc_approx3_bounded_f(e, k, f)
        elif algo == "approx5":
            report = metric_approx.oftc_approx5(e, k, f)
        else:
            report = eptas.oftc_eptas(e, k, f, eps)
        body = report.to_dict()
    return {"version": 1, "problem": problem, "algo": algo, **body}


def _validate_combo(parser, problem, algo, e) -> None:
    if (problem, algo) not in _DISPATCH:
        parser.error(f"algo {algo!r} does not apply to problem {problem!r}")
    if algo in ("greedy1d", "dp1d") and e.dim != 1:
        parser.error(f"algo {algo!r} requires a 1-dimensional instance (got dim={e.dim})")
    if algo == "eptas" and e.dim != 2:
        parser.error(f"algo 'eptas' requires a 2-dimensional instance (got dim={e.dim})")


def _cmd_generate(args) -> int:
    config = generators.GeneratorConfig(
        seed=args.seed,
        n=args.n,
        m=args.m,
        dim=args.dim,
        distribution=args.dist,
        clusters=args.clusters,
        spread=args.spread,
        k=args.k,
        f=args.f,
    )
    e = generators.generate(config)
    save_instance(args.out, e, config.k, config.f)
    return 0


def _cmd_solve(parser, args) -> int:
    e, k_file, f_file = load_instance(args.instance)
    k = args.k if args.k is not None else k_file
    f = args.f if args.f is not None else f_file
    committee = _parse_indices(args.committee)
    failing = _parse_indices(args.failing)
    if args.problem == "orp" and (committee is None or failing is None):
        parser.error("orp needs --committee and --failing")
    if args.problem == "fts" and committee is None:
        parser.error("fts needs --committee")
    _validate_combo(parser, args.problem, args.algo, e)
    try:
        body = _run_solve(args.problem, args.algo, e, k, f, args.eps, committee, failing)
    except EnumerationGuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    text = json.dumps(body)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def _oracle_score(problem, e, k, f, committee, failing) -> Score:
    if problem == "orp":
        return oracle.orp_exact(e, committee, failing).score
    if problem == "fts":
        return oracle.fts_exact(e, committee, f).score
    return oracle.oftc_exact(e, k, f).score


def _bench_row(row: dict) -> tuple[dict, bool]:
    """One suite row -> (CSV record, bound violated?)."""
    gen_fields = dict(row.get("gen", {}))
    config = generators.GeneratorConfig(**gen_fields)
    e = generators.generate(config)
    problem = row["problem"]
    algo = row["algo"]
    eps = float(row.get("eps", 0.5))
    k, f = config.k, config.f
    committee = failing = None
    if problem in ("orp", "fts"):
        committee = generators.random_committee(e, k, config.seed + 7001)
    if problem == "orp":
        failing = generators.random_failing_set(e, f, config.seed + 9001)

    t0 = time.perf_counter()
    body = _run_solve(problem, algo, e, k, f, eps, committee, failing)
    millis = (time.perf_counter() - t0) * 1e3
    score = INFEASIBLE if body["infeasible"] else body["score"]

    record = {
        "instance": row["id"],
        "problem": problem,
        "algo": algo,
        "score": "" if score is INFEASIBLE else repr(score),
        "oracle": "",
        "ratio": "",
        "millis": f"{millis:.3f}",
    }
    try:
        ref = _oracle_score(problem, e, k, f, committee, failing)
    except EnumerationGuardError:
        record["oracle"] = "oracle-skipped"
        return record, False
    if algo == "eptas" and body["committee"] is not None:
        # bicriterion: score the returned committee on its covered voters
        sub = e.restrict_voters(body["restricted_voters"])
        achieved = oracle.fts_exact(sub, body["committee"], f).score
    else:
        achieved = score
    record["oracle"] = "" if ref is INFEASIBLE else repr(ref)
    violated = False
    if ref is INFEASIBLE or achieved is INFEASIBLE:
        violated = (ref is INFEASIBLE) != (achieved is INFEASIBLE)
    elif ref == 0.0:
        record["ratio"] = "1.0" if achieved == 0.0 else "inf"
        violated = achieved > RATIO_SLACK
    else:
        ratio = achieved / ref
        record["ratio"] = f"{ratio:.9f}"
        if algo == "eptas":
            # restricted-voter score may legitimately undercut the full optimum
            violated = ratio > 1.0 + eps + RATIO_SLACK
        else:
            bound = RATIO_BOUNDS[algo]
            violated = ratio > bound + RATIO_SLACK or ratio < 1.0 - RATIO_SLACK
    return record, violated


def _cmd_bench(args) -> int:
    with open(args.suite, "r", encoding="utf-8") as fh:
        suite = json.load(fh)
    if suite.get("version") != 1:
        raise ValueError("unsupported suite schema version")
    records = []
    any_violation = False
    for row in suite.get("rows", []):
        record, violated = _bench_row(row)
        any_violation = any_violation or violated
        records.append(record)
    records.sort(key=lambda r: r["instance"])
    out = open(args.out, "w", newline="", encoding="utf-8") if args.out else sys.stdout
    try:
        writer = csv.DictWriter(
            out, fieldnames=["instance", "problem", "algo", "score", "oracle", "ratio", "millis"]
        )
        writer.writeheader()
        writer.writerows(records)
    finally:
        if args.out:
            out.close()
    return 1 if any_violation else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ftc", description="fault-tolerant committee selection toolkit"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write a seeded instance JSON file")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--n", type=int, default=6)
    gen.add_argument("--m", type=int, default=6)
    gen.add_argument("--dim", type=int, default=2, choices=(1, 2))
    gen.add_argument("--dist", default="uniform", choices=generators.DISTRIBUTIONS)
    gen.add_argument("--clusters", type=int, default=2)
    gen.add_argument("--spread", type=float, default=0.08)
    gen.add_argument("--k", type=int, default=2)
    gen.add_argument("--f", type=int, default=1)
    gen.add_argument("--out", required=True)

    solve = sub.add_parser("solve", help="run one solver on an instance file")
    solve.add_argument("problem", choices=PROBLEMS)
    solve.add_argument("--algo", required=True, choices=ALGOS)
    solve.add_argument("--instance", required=True)
    solve.add_argument("--k", type=int, default=None)
    solve.add_argument("--f", type=int, default=None)
    solve.add_argument("--eps", type=float, default=0.5)
    solve.add_argument("--committee", default=None, help="JSON index array or path")
    solve.add_argument("--failing", default=None, help="JSON index array or path")
    solve.add_argument("--out", default=None)

    bench = sub.add_parser("bench", help="run a suite against the oracles, emit CSV")
    bench.add_argument("--suite", required=True)
    bench.add_argument("--out", default=None)
    return parser


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "generate":
        return _cmd_generate(args)
    if args.command == "solve":
        return _cmd_solve(parser, args)
    return _cmd_bench(args)


if __name__ == "__main__":
    sys.exit(main())
