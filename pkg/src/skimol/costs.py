"""Per-token costs and run accounting.

A cost vector assigns an integer cost to each token type; the cost of a
token multiset is linear in the counts.  Every rewrite then has an in
cost (tokens consumed), an out cost (tokens produced) and their
difference as net.  The default vector prices a token by the number of
unique names it carries, except Arrow, which is free because Arrow nodes
only exist between a rewrite and the following cleanup.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .molgraph import MolGraph, parse_mol
from .tokens import TOKEN_TYPES

CostVector = dict

GraphCost = Callable[[MolGraph], int]


def default_costs() -> dict[str, int]:
    costs = {name: t.names_carried for name, t in TOKEN_TYPES.items()}
    costs["Arrow"] = 0
    return costs


def multiset_cost(tokens: dict[str, int], costs: dict[str, int]) -> int:
    return sum(costs[t] * n for t, n in tokens.items())


def rewrite_cost(schema, costs: dict[str, int]) -> tuple[int, int, int]:
    """(in cost, out cost, net) of one schema under a cost vector."""
    cin = sum(costs[t] for t in schema.tokens_in)
    cout = sum(costs[t] for t in schema.tokens_out)
    return cin, cout, cout - cin


@dataclass
class CostReport:
    per_step: list[tuple[int, int, int]]
    cumulative_in: int
    cumulative_out: int
    cumulative_net: int
    net_series: list[int]
    blocked_rewrites: int
    residual: int | None = None

    def to_json(self) -> dict:
        return {
            "perStep": [
                {"costIn": ci, "costOut": co, "net": n} for ci, co, n in self.per_step
            ],
            "cumulativeIn": self.cumulative_in,
            "cumulativeOut": self.cumulative_out,
            "cumulativeNet": self.cumulative_net,
            "netSeries": list(self.net_series),
            "blockedRewrites": self.blocked_rewrites,
            "residual": self.residual,
        }

    def table(self) -> str:
        lines = [
            f"{'steps':>12}  {len(self.per_step)}",
            f"{'in':>12}  {self.cumulative_in}",
            f"{'out':>12}  {self.cumulative_out}",
            f"{'net':>12}  {self.cumulative_net}",
            f"{'blocked':>12}  {self.blocked_rewrites}",
        ]
        if self.residual is not None:
            lines.append(f"{'residual':>12}  {self.residual}")
        return "\n".join(lines)


def account(trace, costs: dict[str, int], phi: GraphCost | None = None) -> CostReport:
    """Recompute a run's cost report from its trace.

    Costs are recomputed from each record's token multisets, so the report
    stays correct under a cost vector other than the one used when the
    trace was produced.  With a graph-cost functional `phi` the report also
    carries the balance residual
    phi(initial) + in - phi(final) - out.
    """
    per_step = []
    net_series = []
    total_in = total_out = running = 0
    for rec in trace.records:
        ci = multiset_cost(rec.tokens_in, costs)
        co = multiset_cost(rec.tokens_out, costs)
        per_step.append((ci, co, co - ci))
        total_in += ci
        total_out += co
        running += co - ci
        net_series.append(running)
    residual = None
    if phi is not None:
        residual = _residual(trace, total_in, total_out, phi)
    return CostReport(
        per_step, total_in, total_out, total_out - total_in, net_series,
        len(trace.blocked), residual,
    )


def _residual(trace, total_in: int, total_out: int, phi: GraphCost) -> int:
    initial = parse_mol(trace.initial_mol, allow_minted=True)
    final = parse_mol(trace.final_mol, allow_minted=True) if trace.final_mol else initial
    return phi(initial) + total_in - phi(final) - total_out


def balance_audit(trace, costs: dict[str, int], phi: GraphCost) -> int:
    """Residual of the balance identity for a run under `phi`.

    Zero certifies that `phi` prices graphs compatibly with the run's token
    accounting; a nonzero value is reported, not asserted.
    """
    report = account(trace, costs)
    return _residual(trace, report.cumulative_in, report.cumulative_out, phi)


def phi_zero(g: MolGraph) -> int:
    return 0


def make_phi_node_count(scale: int = 1) -> GraphCost:
    def phi(g: MolGraph) -> int:
        return scale * g.node_count

    return phi
