#!/usr/bin/env python3
"""Sweep the grow/slim weight and watch what it does to a reduction.

For each weight the script reports how often growing (DIST) candidates
were accepted, the average graph size, and whether the run still reached
the same normal form.  Useful for eyeballing that the slider steers the
strategy without changing results on normalizing terms.
"""

import argparse
import statistics

from skimol.engine import NORMAL_FORM, ReductionSession, StrategyConfig
from skimol.ski import normal_form, parse_term, term_to_mol, term_to_string
from skimol.tokens import Ledger


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--term", default="((S K) K) I")
    parser.add_argument("--passes", type=int, default=400)
    parser.add_argument("--seeds", type=int, default=10)
    parser.add_argument(
        "--weights", default="0.1,0.3,0.5,0.7,0.9", help="comma-separated weights"
    )
    args = parser.parse_args()

    term = parse_term(args.term)
    try:
        oracle = term_to_string(normal_form(term))
    except RuntimeError:
        oracle = None
    print(f"term: {args.term}   normal form: {oracle or '(none found)'}")

    for weight in (float(w) for w in args.weights.split(",")):
        reached = 0
        agree = 0
        dist_rates = []
        sizes = []
        for seed in range(args.seeds):
            session = ReductionSession(
                term_to_mol(term),
                Ledger("open"),
                StrategyConfig(seed=seed, weight=weight),
            )
            outcome = session.run(args.passes)
            cand = sum(p.candidates.get("DIST", 0) for p in session.trace.passes)
            acc = sum(p.accepted.get("DIST", 0) for p in session.trace.passes)
            if cand:
                dist_rates.append(acc / cand)
            sizes.append(
                statistics.fmean(p.nodes_after for p in session.trace.passes)
            )
            if outcome == NORMAL_FORM:
                reached += 1
                decoded = session.decoded_term()
                if decoded is not None and term_to_string(decoded) == oracle:
                    agree += 1
        rate = statistics.fmean(dist_rates) if dist_rates else float("nan")
        print(
            f"  w={weight:.1f}: normal-form {reached}/{args.seeds},"
            f" oracle-agree {agree}/{args.seeds},"
            f" DIST acceptance {rate:.2f},"
            f" mean nodes {statistics.fmean(sizes):.1f}"
        )


if __name__ == "__main__":
    main()
