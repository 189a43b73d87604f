#!/usr/bin/env python3
"""Cost trajectories of quine graphs under the default token prices.

The self-reproducing graph of (S I I) (S I I) keeps its size, so its
accumulated rewrite cost keeps crossing zero.  The second preset grows
without bound while shedding inert waste pairs, and its accumulated cost
falls linearly: token material keeps flowing into the graph.
"""

import argparse
import statistics

from skimol.costs import account, default_costs
from skimol.engine import ReductionSession, StrategyConfig
from skimol.ski import parse_term, term_to_mol
from skimol.tokens import Ledger

PRESETS = {
    "quine": "(S I I) (S I I)",
    "dirty-quine": "(S I I) (S (K (S I I)) (S (K (S I)) (S (K K) I)))",
}


def run(term_text: str, seed: int, passes: int, weight: float):
    graph = term_to_mol(parse_term(term_text))
    ledger = Ledger("strict")
    ledger.fund(max(1000, passes * 20))
    cfg = StrategyConfig(seed=seed, weight=weight, token_mode="strict")
    session = ReductionSession(graph, ledger, cfg)
    nodes = []
    for _ in range(passes):
        info = session.step_pass()
        nodes.append(info.nodes_after)
        if info.applied == 0 and info.comb == 0 and not session.has_any_match():
            break
    report = account(session.trace, default_costs())
    return session, report, nodes


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--term", help="term to run instead of the presets")
    parser.add_argument("--passes", type=int, default=1000)
    parser.add_argument("--seeds", type=int, default=5)
    parser.add_argument("--weight", type=float, default=0.5)
    parser.add_argument("--csv", help="write per-step cumulative nets here")
    args = parser.parse_args()

    jobs = {"term": args.term} if args.term else PRESETS
    rows = []
    for name, term_text in jobs.items():
        print(f"== {name}: {term_text}")
        for seed in range(args.seeds):
            session, report, nodes = run(term_text, seed, args.passes, args.weight)
            series = report.net_series or [0]
            crossings = sum(1 for a, b in zip(series, series[1:]) if a * b < 0)
            print(
                f"  seed {seed}: passes={session.pass_index}"
                f" rewrites={len(session.trace.records)}"
                f" nodes(final)={session.graph.node_count}"
                f" nodes(mean)={statistics.fmean(nodes):.1f}"
                f" net={report.cumulative_net}"
                f" net-range=[{min(series)},{max(series)}]"
                f" zero-crossings={crossings}"
            )
            if args.csv:
                rows.extend(
                    (name, seed, i, v) for i, v in enumerate(report.net_series)
                )
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write("run,seed,step,cumulative_net\n")
            for row in rows:
                fh.write(",".join(map(str, row)) + "\n")
        print(f"wrote {len(rows)} rows to {args.csv}")


if __name__ == "__main__":
    main()
