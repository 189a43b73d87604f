"""The stochastic reduction driver.

A pass shuffles the node visit order, collects node-disjoint matches,
accepts each with a probability set by the grow/slim weight (growing
kinds at w, shrinking kinds at 1 - w), applies the accepted batch, and
then sweeps Arrow nodes.  Everything is driven by a per-pass RNG derived
from (seed, pass index), so runs are reproducible bit for bit.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .costs import default_costs
from .molgraph import MolGraph, serialize_mol, validate
from .rewrites import (
    DIST,
    REDUCTION_SCHEMAS,
    SCHEMAS,
    Match,
    StepRecord,
    apply_rewrite,
    comb_pass,
    find_transform,
)
from .ski import NotATerm, decode, root_edge
from .tokens import InsufficientTokens, Ledger

NORMAL_FORM = "normal-form"
BUDGET_EXHAUSTED = "budget-exhausted"


class ConservationError(AssertionError):
    pass


@dataclass
class StrategyConfig:
    """Reduction strategy knobs.

    weight slides between slim (0: only node-decreasing rewrites) and grow
    (1: only node-preserving/increasing ones).  token_mode "strict" blocks
    rewrites whose input tokens are missing; "open" auto-mints them.
    """

    weight: float = 0.5
    seed: int = 0
    token_mode: str = "open"
    max_steps_per_pass: int | None = None
    snapshot_every: int = 0
    check_invariants: bool = False

    def __post_init__(self) -> None:
        if not 0.0 <= self.weight <= 1.0:
            raise ValueError(f"weight must be in [0, 1], got {self.weight}")
        if self.token_mode not in ("strict", "open"):
            raise ValueError(f"unknown token mode {self.token_mode!r}")


@dataclass
class PassInfo:
    index: int
    candidates: dict[str, int] = field(default_factory=dict)
    accepted: dict[str, int] = field(default_factory=dict)
    applied: int = 0
    rejected: int = 0
    blocked: int = 0
    comb: int = 0
    loop_arrows: int = 0  # closed-loop Arrows the sweep must leave in place
    nodes_after: int = 0

    def to_json(self) -> dict:
        return {
            "pass": self.index,
            "candidates": {k: self.candidates[k] for k in sorted(self.candidates)},
            "accepted": {k: self.accepted[k] for k in sorted(self.accepted)},
            "applied": self.applied,
            "rejected": self.rejected,
            "blocked": self.blocked,
            "comb": self.comb,
            "loopArrows": self.loop_arrows,
            "nodes": self.nodes_after,
        }


@dataclass
class Trace:
    initial_mol: str
    records: list[StepRecord] = field(default_factory=list)
    passes: list[PassInfo] = field(default_factory=list)
    blocked: list[dict] = field(default_factory=list)
    snapshots: list[tuple[int, str]] = field(default_factory=list)
    final_mol: str | None = None

    def to_json_records(self) -> list[dict]:
        return [rec.to_json() for rec in self.records]


class ReductionSession:
    """One reduction run: a graph, its ledger, a strategy, and the trace."""

    def __init__(
        self,
        graph: MolGraph,
        ledger: Ledger | None = None,
        cfg: StrategyConfig | None = None,
        costs: dict[str, int] | None = None,
    ):
        self.cfg = cfg if cfg is not None else StrategyConfig()
        self.graph = graph
        self.ledger = ledger if ledger is not None else Ledger(self.cfg.token_mode)
        self.costs = costs if costs is not None else default_costs()
        self.trace = Trace(initial_mol=serialize_mol(graph))
        self.pass_index = 0
        self.step_index = 0
        self.outcome: str | None = None
        self._baseline = self._balance()

    def _balance(self) -> int:
        return (
            self.graph.node_count
            + self.ledger.embodied_total()
            - self.ledger.minted_embodied()
        )

    def step_pass(self) -> PassInfo:
        """Run one shuffled, probabilistic pass plus the Arrow sweep."""
        cfg = self.cfg
        rng = random.Random(f"{cfg.seed}:{self.pass_index}")
        order = self.graph.node_ids()
        rng.shuffle(order)

        info = PassInfo(index=self.pass_index)
        claimed: set[int] = set()
        batch: list[Match] = []
        for nid in order:
            if nid in claimed:
                continue
            m = find_transform(self.graph, nid, REDUCTION_SCHEMAS)
            if m is None or claimed.intersection(m.nodes):
                continue
            info.candidates[m.schema.kind] = info.candidates.get(m.schema.kind, 0) + 1
            threshold = cfg.weight if m.schema.kind == DIST else 1.0 - cfg.weight
            if rng.random() < threshold:
                claimed.update(m.nodes)
                batch.append(m)
                info.accepted[m.schema.kind] = info.accepted.get(m.schema.kind, 0) + 1
                if cfg.max_steps_per_pass and len(batch) >= cfg.max_steps_per_pass:
                    break
            else:
                info.rejected += 1

        for m in batch:
            try:
                _, rec = apply_rewrite(
                    self.graph,
                    m,
                    self.ledger,
                    costs=self.costs,
                    step_index=self.step_index,
                    pass_index=self.pass_index,
                )
            except InsufficientTokens as exc:
                info.blocked += 1
                self.trace.blocked.append(
                    {"pass": self.pass_index, "rewrite": m.schema.name, "reason": str(exc)}
                )
                continue
            self.trace.records.append(rec)
            self.step_index += 1
            info.applied += 1

        _, comb_records = comb_pass(
            self.graph,
            self.ledger,
            self.costs,
            step_index=self.step_index,
            pass_index=self.pass_index,
        )
        self.trace.records.extend(comb_records)
        self.step_index += len(comb_records)
        info.comb = len(comb_records)
        info.loop_arrows = sum(
            1
            for node in self.graph.nodes()
            if node.type == "Arrow" and node.ports[0] == node.ports[1]
        )
        info.nodes_after = self.graph.node_count

        self.pass_index += 1
        if cfg.snapshot_every and self.pass_index % cfg.snapshot_every == 0:
            self.trace.snapshots.append((self.pass_index, serialize_mol(self.graph)))
        if cfg.check_invariants:
            self._check_invariants()
        self.trace.passes.append(info)
        return info

    def _check_invariants(self) -> None:
        report = validate(self.graph)
        if not report.ok:
            raise ConservationError(
                f"pass {self.pass_index}: graph invalid: {report.errors}"
            )
        balance = self._balance()
        if balance != self._baseline:
            raise ConservationError(
                f"pass {self.pass_index}: node balance {balance} != {self._baseline}"
            )

    def has_any_match(self) -> bool:
        """Deterministic exhaustive scan over the full schema table."""
        return any(
            find_transform(self.graph, nid, SCHEMAS) for nid in self.graph.node_ids()
        )

    def run(self, max_passes: int) -> str:
        """Step until normal form or the pass budget runs out.

        A pass that applies nothing triggers the exhaustive scan; random
        rejection alone can never certify a normal form.
        """
        for _ in range(max_passes):
            if self.outcome == NORMAL_FORM:
                break
            info = self.step_pass()
            if info.applied == 0 and info.comb == 0 and not self.has_any_match():
                self.outcome = NORMAL_FORM
                break
        self.trace.final_mol = serialize_mol(self.graph)
        return self.outcome if self.outcome is not None else BUDGET_EXHAUSTED

    def decoded_term(self):
        try:
            return decode(self.graph, root_edge(self.graph))
        except NotATerm:
            return None


def reduce(
    g: MolGraph,
    ledger: Ledger | None = None,
    cfg: StrategyConfig | None = None,
    max_passes: int = 1000,
    costs: dict[str, int] | None = None,
) -> tuple[MolGraph, Trace, str]:
    """Reduce a copy of `g`; returns (final graph, trace, outcome)."""
    session = ReductionSession(g.copy(), ledger, cfg, costs)
    outcome = session.run(max_passes)
    return session.graph, session.trace, outcome
