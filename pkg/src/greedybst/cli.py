"""Command-line workbench.

Subcommands: gen (traces), run (algorithms over traces), verify (check
suites), oracle (exhaustive optimum comparisons), report (merge run CSVs),
bench (compiled vs pure kernels).  Exit codes: 0 success, 1 check failure,
2 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import itertools
import math
import sys
import time

from . import __version__, _kernels, analysis, arboral, greedyass, oracle, suites
from .model import AccessSequence, WeightAssignment
from .workbench import (
    RunReport,
    gen_bit_reversal,
    gen_random,
    gen_sequential,
    load_trace,
    load_weights,
    save_trace,
)


def _fail_usage(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 2


def _cmd_gen(args: argparse.Namespace) -> int:
    if args.pattern == "sequential":
        if args.n is None:
            return _fail_usage("gen sequential requires --n")
        trace = gen_sequential(args.n)
    elif args.pattern == "bitreversal":
        if args.k is None:
            return _fail_usage("gen bitreversal requires --k (tree height); --rounds defaults to 1")
        trace = gen_bit_reversal(args.k, args.rounds)
    else:
        if args.n is None or args.m is None:
            return _fail_usage(f"gen {args.pattern} requires --n and --m")
        trace = gen_random(
            args.n,
            args.m,
            args.pattern,
            args.seed,
            theta=args.theta,
            width=args.width,
        )
    save_trace(trace, args.output)
    print(f"wrote trace n={trace.n} m={trace.m} -> {args.output}")
    return 0


def _initial_tree(choice: str, sequence: AccessSequence) -> arboral.BSTree:
    if choice == "greedy":
        return arboral.greedy_initial_tree(sequence.n, sequence)
    if choice == "balanced":
        return arboral.BSTree.balanced(sequence.n)
    if choice == "chain":
        return arboral.BSTree.chain_left(sequence.n)
    if choice.startswith("random:"):
        return arboral.BSTree.random_shape(sequence.n, int(choice.split(":", 1)[1]))
    raise ValueError(f"unknown initial tree {choice!r}")


def _cmd_run(args: argparse.Namespace) -> int:
    trace = load_trace(args.trace)
    sequence = trace.sequence
    if args.weights == "uniform":
        weights = WeightAssignment.uniform(sequence.n)
    elif args.weights.startswith("file:"):
        weights = load_weights(args.weights[5:], n=sequence.n)
    else:
        return _fail_usage(f"unknown weights {args.weights!r}")

    if args.algo == "greedyass":
        _, ledger, rows = greedyass.run(sequence)
        costs = [row.cost for row in rows]
    else:
        t0 = _initial_tree(args.t0, sequence)
        if args.algo == "greedyfuture":
            fast = arboral.greedy_future_costs(t0, sequence)
            costs = list(fast.costs)
        else:
            _, ledger_splay = arboral.run_splay(t0, sequence)
            costs = [c for _, _, c in ledger_splay.per_search]

    report = RunReport.from_costs(args.algo, str(args.trace), sequence, costs)

    if args.audit:
        if args.algo != "greedyass":
            return _fail_usage("--audit applies to the greedyass algorithm only")
        run = analysis.audit_run(sequence, weights)
        bound_ok = True
        for row, audit in zip(report.rows, run.audits):
            row.update(
                phi_before=audit.potential_before,
                phi_after=audit.potential_after,
                amortized=audit.amortized,
                bound=audit.bound,
                stubborn_left=";".join(map(str, audit.stubborn_left)),
                stubborn_right=";".join(map(str, audit.stubborn_right)),
            )
            bound_ok &= audit.amortized <= audit.bound
        print(f"audit: amortized bound {'satisfied' if bound_ok else 'VIOLATED'} on all searches")
        if not bound_ok:
            report.save(args.output)
            return 1

    report.save(args.output)
    print(f"{args.algo}: total cost {report.total} over m={sequence.m} searches -> {args.output}")
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    names = list(suites.SUITES) if args.suite == "all" else [args.suite]
    overall = True
    for name in names:
        kwargs = {}
        if name == "sequential":
            if args.n:
                kwargs["n_max"] = args.n
            if args.seeds:
                kwargs["random_shapes"] = args.seeds
        elif name in ("access-lemma", "lemmas"):
            if args.traces:
                kwargs["traces"] = args.traces
            if args.n:
                kwargs["n_max"] = args.n
            if args.m:
                kwargs["m_max"] = args.m
        elif name == "row-minimality" and args.seeds:
            kwargs["seeds"] = args.seeds
        elif name == "satisfaction" and args.traces:
            kwargs["fuzz_sets"] = args.traces
        elif name == "equivalence":
            if args.traces:
                kwargs["seeded"] = args.traces
            if args.n:
                kwargs["n_max"] = args.n
            if args.m:
                kwargs["m_max"] = args.m
        started = time.time()
        result = suites.run_suite(name, **kwargs)
        for line in result.lines:
            print(line)
        print(
            f"{'PASS' if result.passed else 'FAIL'} {name} ({time.time() - started:.1f}s)"
        )
        overall &= result.passed
    return 0 if overall else 1


def _cmd_oracle(args: argparse.Namespace) -> int:
    rows = []
    if args.exhaustive_all:
        if args.n is None or args.m is None:
            return _fail_usage("--exhaustive-all requires --n and --m")
        for combo in itertools.product(range(1, args.n + 1), repeat=args.m):
            probe = oracle.conjecture_probe(AccessSequence(args.n, combo))
            rows.append(probe)
    elif args.trace:
        trace = load_trace(args.trace)
        rows.append(oracle.conjecture_probe(trace.sequence))
    else:
        return _fail_usage("oracle needs --trace or --exhaustive-all")

    writer = csv.writer(sys.stdout if args.output is None else open(args.output, "w", newline=""))
    writer.writerow(["n", "m", "sequence", "greedy", "opt", "slack", "holds"])
    max_slack = 0
    ok = True
    for probe in rows:
        seq = probe.sequence
        writer.writerow(
            [
                seq.n,
                seq.m,
                " ".join(map(str, seq.searches)),
                probe.greedy_total,
                probe.opt_total,
                probe.slack,
                probe.holds,
            ]
        )
        max_slack = max(max_slack, probe.slack)
        ok &= probe.holds
    print(f"oracle: {len(rows)} instances, max slack {max_slack}, within-additive-m: {ok}",
          file=sys.stderr)
    return 0 if ok else 1


def _cmd_report(args: argparse.Namespace) -> int:
    rows = []
    for path in args.inputs:
        report = RunReport.load(path)
        searches = AccessSequence(report.n, tuple(r["s_i"] for r in report.rows))
        corollaries = analysis.corollary_bounds(searches, _ledger_of(report, searches))
        row = {
            "input": str(path),
            "algo": report.algo,
            "n": report.n,
            "m": report.m,
            "total": report.total,
            "mean_cost": f"{report.total / max(report.m, 1):.4f}",
            "balance_bound": corollaries.balance_bound,
            "balance_ok": corollaries.balance_ok,
            "working_set_ratio": f"{corollaries.working_set_ratio:.4f}",
        }
        if all("amortized" in r for r in report.rows):
            slack = min(int(r["bound"]) - int(r["amortized"]) for r in report.rows)
            row["min_bound_slack"] = slack
        rows.append(row)
    fieldnames = sorted({k for r in rows for k in r}, key=lambda k: (k != "input", k))
    with open(args.output, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=fieldnames)
        writer.writeheader()
        writer.writerows(rows)
    print(f"wrote summary of {len(rows)} runs -> {args.output}")
    return 0


def _ledger_of(report: RunReport, sequence: AccessSequence):
    from .model import CostLedger

    return CostLedger.from_counts(sequence, (r["cost"] for r in report.rows))


def _cmd_bench(args: argparse.Namespace) -> int:
    engines = _kernels.available_engines()
    print(f"active engine: {_kernels.ENGINE}; available: {sorted(engines)}")
    trace = gen_random(args.n, args.m, "uniform", seed=7)
    sequential = tuple(range(1, args.n + 1))
    chain = arboral.BSTree.chain_left(args.n)

    def timed(fn) -> float:
        best = math.inf
        for _ in range(args.repeat):
            t0 = time.perf_counter()
            fn()
            best = min(best, time.perf_counter() - t0)
        return best

    results: dict[tuple[str, str], float] = {}
    for name in ("pure", "compiled"):
        if name not in engines:
            continue
        kernel = engines[name]
        results[("row-sweep", name)] = timed(
            lambda: kernel.greedyass_run(args.n, trace.sequence.searches)
        )
        results[("path-rebuild", name)] = timed(
            lambda: kernel.greedy_future_run(
                args.n, chain.left, chain.right, chain.root, sequential
            )
        )
    print(f"{'kernel':<14} {'engine':<9} {'size':<18} seconds")
    for (kernel_name, engine_name), secs in results.items():
        size = f"n={args.n} m={args.m if kernel_name == 'row-sweep' else args.n}"
        note = ""
        pure_secs = results.get((kernel_name, "pure"))
        if engine_name == "compiled" and pure_secs and secs:
            note = f"  ({pure_secs / secs:.1f}x vs pure)"
        print(f"{kernel_name:<14} {engine_name:<9} {size:<18} {secs:.4f}{note}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="greedybst",
        description="Greedy binary-search-tree laboratory: generators, runs, and verification suites.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a trace file")
    p.add_argument(
        "--pattern",
        required=True,
        choices=["sequential", "bitreversal", "uniform", "zipf", "wswindow"],
    )
    p.add_argument("--n", type=int, help="universe size")
    p.add_argument("--m", type=int, help="number of searches")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--theta", type=float, default=1.0, help="zipf exponent")
    p.add_argument("--width", type=int, default=8, help="working-set window width")
    p.add_argument("--k", type=int, help="bitreversal tree height")
    p.add_argument("--rounds", type=int, default=1, help="bitreversal rounds")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("run", help="run an algorithm over a trace")
    p.add_argument("--algo", required=True, choices=["greedyass", "greedyfuture", "splay"])
    p.add_argument("--trace", required=True)
    p.add_argument(
        "--t0",
        default="greedy",
        help="initial tree for tree algorithms: greedy | balanced | chain | random:SEED",
    )
    p.add_argument("--weights", default="uniform", help="uniform | file:PATH")
    p.add_argument("--audit", action="store_true", help="attach amortized-analysis columns")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", required=True, choices=sorted(suites.SUITES) + ["all"])
    p.add_argument("--n", type=int, help="size cap (suite-specific)")
    p.add_argument("--m", type=int, help="length cap (suite-specific)")
    p.add_argument("--seeds", type=int, help="seed count (suite-specific)")
    p.add_argument("--traces", type=int, help="trace/fuzz count (suite-specific)")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("oracle", help="compare greedy with the exhaustive optimum")
    p.add_argument("--trace")
    p.add_argument("--exhaustive-all", action="store_true")
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("report", help="merge run CSVs into a summary table")
    p.add_argument("--inputs", nargs="+", required=True)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_report)

    p = sub.add_parser("bench", help="compare compiled and pure kernels")
    p.add_argument("--n", type=int, default=1024)
    p.add_argument("--m", type=int, default=20000)
    p.add_argument("--repeat", type=int, default=3)
    p.set_defaults(func=_cmd_bench)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        return _fail_usage(str(exc))


if __name__ == "__main__":
    sys.exit(main())
