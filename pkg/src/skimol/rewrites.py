"""The rewrite schema table, pattern matching, and rewrite application.

Each schema carries its plain LHS/RHS mol patterns, the token multisets
that make it conservative, the with-token patterns used for static
verification, and (where one was given) a published symbol permutation.
Matching starts at an anchor node of the schema's "right" type and walks
edges outward, checking port positions, node types and the S-node side
conditions (ports 1 and 2 looped = combinator, unlooped = fan-out).
"""

from __future__ import annotations

from dataclasses import dataclass

from .molgraph import MolGraph, PortRef
from .tokens import TOKEN_TYPES, InsufficientTokens, Ledger

BETA = "BETA"
TERMINATION = "TERMINATION"
DIST = "DIST"
COMPOSE = "COMPOSE"


def _perm(text: str) -> tuple[int, ...]:
    return tuple(int(tok, 16) for tok in text.split())


@dataclass(frozen=True)
class RewriteSchema:
    name: str
    left: str
    right: str   # anchor node type
    action: str
    kind: str
    lhs: str
    rhs: str
    lhs_tokens: str
    rhs_tokens: str
    tokens_in: tuple[str, ...]
    tokens_out: tuple[str, ...]
    published: tuple[int, ...] | None = None

    def lhs_lines(self) -> list[tuple[str, tuple[str, ...]]]:
        return _lines(self.lhs)

    def rhs_lines(self) -> list[tuple[str, tuple[str, ...]]]:
        return _lines(self.rhs)


def _lines(pattern: str) -> list[tuple[str, tuple[str, ...]]]:
    out = []
    for chunk in pattern.split(","):
        fields = chunk.split()
        if fields:
            out.append((fields[0], tuple(fields[1:])))
    return out


REDUCTION_SCHEMAS: list[RewriteSchema] = [
    RewriteSchema(
        "K-A", "K", "A", "KA", BETA,
        lhs="K 1, A 1 a 2, A 2 b c",
        rhs="K e, Arrow a c, Arrow b e",
        lhs_tokens="K 1, A 1 a 2, A 2 b c, Arrow d d, Arrow e e",
        rhs_tokens="K e, A 1 d 1, A 2 d 2, Arrow a c, Arrow b e",
        tokens_in=("Arrow", "Arrow"), tokens_out=("A-A",),
        published=_perm("0 e 2 1 b 3 6 5 c 7 a 4 9 d 8 f"),
    ),
    RewriteSchema(
        "I-A", "I", "A", "termIA", TERMINATION,
        lhs="I 1, A 1 a b",
        rhs="Arrow a b",
        lhs_tokens="I 1, A 1 a b, Arrow c c",
        rhs_tokens="I 1, A c 1 c, Arrow a b",
        tokens_in=("Arrow",), tokens_out=("I-A",),
        published=_perm("0 1 2 7 3 8 6 4 5"),
    ),
    RewriteSchema(
        "I-S", "I", "S", "terminIS", TERMINATION,
        lhs="I a, S a b c",
        rhs="I b, I c",
        lhs_tokens="I a, S a b c, I d, A e d e",
        rhs_tokens="I b, S a d a, I c, A e d e",
        tokens_in=("I-A",), tokens_out=("S-A",),
        published=_perm("0 4 2 1 7 3 6 5 8 9 a b"),
    ),
    RewriteSchema(
        "K-S", "K", "S", "terminKS", TERMINATION,
        lhs="K a, S a b c",
        rhs="K b, K c",
        lhs_tokens="K a, S a b c, K d, S e d e",
        rhs_tokens="K b, S a d a, K c, S e d e",
        tokens_in=("S-K",), tokens_out=("S-S",),
        published=_perm("0 4 2 1 7 3 6 5 8 9 a b"),
    ),
    RewriteSchema(
        "S-K", "S", "K", "terminSK", TERMINATION,
        lhs="S a b c, K c",
        rhs="Arrow a b",
        lhs_tokens="S a b c, K c, Arrow d d",
        rhs_tokens="S d c d, K c, Arrow a b",
        tokens_in=("Arrow",), tokens_out=("S-K",),
        published=_perm("0 7 3 8 4 5 6 1 2"),
    ),
    RewriteSchema(
        "S-K2", "S", "K", "terminSK2", TERMINATION,
        lhs="S a c b, K c",
        rhs="Arrow a b",
        lhs_tokens="S a c b, K c, Arrow d d",
        rhs_tokens="S d c d, K c, Arrow a b",
        tokens_in=("Arrow",), tokens_out=("S-K",),
        published=_perm("0 7 2 8 4 5 6 1 3"),
    ),
    RewriteSchema(
        "A-K", "A", "K", "termAK", TERMINATION,
        lhs="A a b c, K c",
        rhs="K a, K b",
        lhs_tokens="A a b c, K c, S d e d, K e",
        rhs_tokens="A c e c, K a, S d e d, K b",
        tokens_in=("S-K",), tokens_out=("S-A",),
        published=_perm("0 3 8 5 4 1 6 7 8 9 a 2"),  # not a bijection; see verify
    ),
    RewriteSchema(
        "A-S", "A", "S", "DIST1", DIST,
        lhs="A a b e, S e c d",
        rhs="S a e f, S b g h, A e g c, A f h d",
        lhs_tokens="S e c d, S f h f, A a b e, A g h g",
        rhs_tokens="S a e f, S b g h, A e g c, A f h d",
        tokens_in=("S-A",), tokens_out=(),
        published=_perm("0 9 1 5 4 a d 6 8 b f 2 c 7 e 3"),
    ),
    RewriteSchema(
        "S-S", "S", "S", "SS", DIST,
        lhs="S a a b, S b c d",
        rhs="S a a c, S b b d",
        lhs_tokens="S a a b, S b c d",
        rhs_tokens="S a a c, S b b d",
        tokens_in=(), tokens_out=(),
        published=_perm("0 1 2 6 4 3 5 7"),
    ),
    RewriteSchema(
        "S-A", "S", "A", "SA", DIST,
        lhs="S 1 1 2, A 2 a 3, A 3 b 4, A 4 c d",
        rhs="S c 1 2, A a 1 3, A b 2 4, A 3 4 d",
        lhs_tokens="S 1 1 2, A 2 a 3, A 3 b 4, A 4 c d",
        rhs_tokens="S c 1 2, A a 1 3, A b 2 4, A 3 4 d",
        tokens_in=(), tokens_out=(),
        published=_perm("0 e 1 3 4 6 2 7 8 a 5 b c 9 d f"),
    ),
]

# Arrow elimination is a schema of rewrites: the neighbor node may be of
# any type, so the verification patterns below instantiate it with a
# representative I leaf.  The output Arrow token carries the dropped name.
COMB_SCHEMA = RewriteSchema(
    "COMB", "any", "Arrow", "arrow", COMPOSE,
    lhs="I a, Arrow a b",
    rhs="I b",
    lhs_tokens="I a, Arrow a b",
    rhs_tokens="I b, Arrow a a",
    tokens_in=(), tokens_out=("Arrow",),
)

SCHEMAS: list[RewriteSchema] = REDUCTION_SCHEMAS + [COMB_SCHEMA]

# Pure token-to-token conversion; verified with the rest of the table.
TOKEN_REWRITE_SS_AA = RewriteSchema(
    "S-S+A-A", "", "", "tokens", "TOKENS",
    lhs="",
    rhs="",
    lhs_tokens="S a b a, S c b c, A d e d, A f e f",
    rhs_tokens="S a b a, S c e c, A d b d, A f e f",
    tokens_in=("S-S", "A-A"), tokens_out=("S-A", "S-A"),
    published=_perm("0 1 2 3 4 5 a 7 8 9 6 b c d e f"),
)

SYNTH_SCHEMAS: list[RewriteSchema] = [
    RewriteSchema(
        "synth-S-K", "FROUT", "FROUT", "synthSK", "SYNTH",
        lhs="FROUT a, FROUT b",
        rhs="FROUT e, FROUT c, S a e c, K b",
        lhs_tokens="FROUT a, FROUT b, S c e c, K e",
        rhs_tokens="FROUT e, FROUT c, S a e c, K b",
        tokens_in=("S-K",), tokens_out=(),
        published=_perm("0 6 2 5 4 1 9 7 8 3"),
    ),
    RewriteSchema(
        "synth-S-A", "FROUT", "FROUT", "synthSA", "SYNTH",
        lhs="FROUT a, FROUT b",
        rhs="FROUT e, FROUT c, S a e d, A d b c",
        lhs_tokens="FROUT a, FROUT b, S c e c, A d e d",
        rhs_tokens="FROUT e, FROUT c, S a e d, A d b c",
        tokens_in=("S-A",), tokens_out=(),
        published=_perm("0 6 2 5 4 1 a 9 8 b 3 7"),
    ),
]

# The canonical conservation-check table: the ten reduction schemas, the
# Arrow-elimination schema, and the token rewrite.
VERIFY_TABLE: list[RewriteSchema] = SCHEMAS + [TOKEN_REWRITE_SS_AA]
EXTENDED_VERIFY_TABLE: list[RewriteSchema] = VERIFY_TABLE + SYNTH_SCHEMAS

SCHEMAS_BY_NAME: dict[str, RewriteSchema] = {
    s.name: s for s in EXTENDED_VERIFY_TABLE
}


@dataclass
class Match:
    schema: RewriteSchema
    nodes: tuple[int, ...]       # aligned with the schema's lhs lines
    edges: dict[str, str]        # pattern edge name -> graph edge name
    anchor: int


class StaleMatch(Exception):
    pass


# -- matchers -------------------------------------------------------------
#
# Every matcher receives the anchor node (already type-checked against the
# schema's "right" field) and walks the pattern from there.  Returning None
# means the LHS does not embed at this anchor.


def _far(g: MolGraph, node, port: int) -> PortRef | None:
    return g.other_endpoint(node.ports[port], PortRef(node.id, port))


def _match_ka(g: MolGraph, anchor):
    far = _far(g, anchor, 0)
    if far is None or g.node(far.node_id).type != "K":
        return None
    k = g.node(far.node_id)
    far2 = _far(g, anchor, 2)
    if far2 is None or far2.port != 0 or far2.node_id == anchor.id:
        return None
    a2 = g.node(far2.node_id)
    if a2.type != "A":
        return None
    return (
        (k.id, anchor.id, a2.id),
        {
            "1": anchor.ports[0],
            "a": anchor.ports[1],
            "2": anchor.ports[2],
            "b": a2.ports[1],
            "c": a2.ports[2],
        },
    )


def _match_ia(g: MolGraph, anchor):
    far = _far(g, anchor, 0)
    if far is None or g.node(far.node_id).type != "I":
        return None
    return (
        (far.node_id, anchor.id),
        {"1": anchor.ports[0], "a": anchor.ports[1], "b": anchor.ports[2]},
    )


def _match_leaf_fanout(g: MolGraph, anchor, leaf_type: str):
    # leaf at the fan-out input duplicates through it
    if anchor.ports[0] == anchor.ports[1]:
        return None  # combinator form, not a fan-out
    far = _far(g, anchor, 0)
    if far is None or g.node(far.node_id).type != leaf_type:
        return None
    return (
        (far.node_id, anchor.id),
        {"a": anchor.ports[0], "b": anchor.ports[1], "c": anchor.ports[2]},
    )


def _match_is(g: MolGraph, anchor):
    return _match_leaf_fanout(g, anchor, "I")


def _match_ks(g: MolGraph, anchor):
    return _match_leaf_fanout(g, anchor, "K")


def _match_sk(g: MolGraph, anchor, s_port: int):
    # K erases one fan-out output (port 3 for the first variant, 2 for the second)
    far = _far(g, anchor, 0)
    if far is None or far.port != s_port:
        return None
    s = g.node(far.node_id)
    if s.type != "S" or s.ports[0] == s.ports[1]:
        return None
    if s_port == 2:
        edges = {"a": s.ports[0], "b": s.ports[1], "c": s.ports[2]}
    else:
        edges = {"a": s.ports[0], "c": s.ports[1], "b": s.ports[2]}
    return ((s.id, anchor.id), edges)


def _match_sk1(g: MolGraph, anchor):
    return _match_sk(g, anchor, 2)


def _match_sk2(g: MolGraph, anchor):
    return _match_sk(g, anchor, 1)


def _match_ak(g: MolGraph, anchor):
    far = _far(g, anchor, 0)
    if far is None or far.port != 2:
        return None
    a = g.node(far.node_id)
    if a.type != "A":
        return None
    return (
        (a.id, anchor.id),
        {"a": a.ports[0], "b": a.ports[1], "c": a.ports[2]},
    )


def _match_as(g: MolGraph, anchor):
    if anchor.ports[0] == anchor.ports[1]:
        return None
    far = _far(g, anchor, 0)
    if far is None or far.port != 2:
        return None
    a = g.node(far.node_id)
    if a.type != "A":
        return None
    return (
        (a.id, anchor.id),
        {
            "a": a.ports[0],
            "b": a.ports[1],
            "e": anchor.ports[0],
            "c": anchor.ports[1],
            "d": anchor.ports[2],
        },
    )


def _match_ss(g: MolGraph, anchor):
    # anchor is the fan-out; its input must come from an S combinator's out port
    if anchor.ports[0] == anchor.ports[1]:
        return None
    far = _far(g, anchor, 0)
    if far is None or far.port != 2 or far.node_id == anchor.id:
        return None
    s1 = g.node(far.node_id)
    if s1.type != "S" or s1.ports[0] != s1.ports[1]:
        return None
    return (
        (s1.id, anchor.id),
        {
            "a": s1.ports[0],
            "b": anchor.ports[0],
            "c": anchor.ports[1],
            "d": anchor.ports[2],
        },
    )


def _match_sa(g: MolGraph, anchor):
    far = _far(g, anchor, 0)
    if far is None or far.port != 2:
        return None
    s = g.node(far.node_id)
    if s.type != "S" or s.ports[0] != s.ports[1]:
        return None
    far2 = _far(g, anchor, 2)
    if far2 is None or far2.port != 0 or far2.node_id == anchor.id:
        return None
    a2 = g.node(far2.node_id)
    if a2.type != "A":
        return None
    far3 = _far(g, a2, 2)
    if far3 is None or far3.port != 0 or far3.node_id in (anchor.id, a2.id):
        return None
    a3 = g.node(far3.node_id)
    if a3.type != "A":
        return None
    return (
        (s.id, anchor.id, a2.id, a3.id),
        {
            "1": s.ports[0],
            "2": anchor.ports[0],
            "a": anchor.ports[1],
            "3": anchor.ports[2],
            "b": a2.ports[1],
            "4": a2.ports[2],
            "c": a3.ports[1],
            "d": a3.ports[2],
        },
    )


def _match_comb(g: MolGraph, anchor):
    a, b = anchor.ports
    if a == b:
        return None  # closed loop, left in place
    far = _far(g, anchor, 0)
    if far is None:
        return None
    return ((anchor.id,), {"a": a, "b": b})


MATCHERS = {
    "KA": _match_ka,
    "termIA": _match_ia,
    "terminIS": _match_is,
    "terminKS": _match_ks,
    "terminSK": _match_sk1,
    "terminSK2": _match_sk2,
    "termAK": _match_ak,
    "DIST1": _match_as,
    "SS": _match_ss,
    "SA": _match_sa,
    "arrow": _match_comb,
}


def find_transform(g: MolGraph, anchor_id: int, table: list[RewriteSchema] = SCHEMAS) -> Match | None:
    """Find the rewrite whose LHS embeds at this anchor node, if any.

    The anchor must have the schema's "right" type; the walk enforces port
    positions, node distinctness and S side conditions.  At most one of the
    table's schemas can match a given anchor, so the first hit wins.
    """
    anchor = g.node(anchor_id)
    for schema in table:
        if schema.right != anchor.type:
            continue
        matcher = MATCHERS.get(schema.action)
        if matcher is None:
            continue
        found = matcher(g, anchor)
        if found is not None:
            nodes, edges = found
            return Match(schema, tuple(nodes), edges, anchor_id)
    return None


# -- application ----------------------------------------------------------


@dataclass
class StepRecord:
    step: int
    rewrite: str
    anchor: int
    tokens_in: dict[str, int]
    tokens_out: dict[str, int]
    minted: list[str]
    cost_in: int
    cost_out: int
    nodes: int
    pass_index: int = 0

    def to_json(self) -> dict:
        return {
            "step": self.step,
            "rewrite": self.rewrite,
            "anchor": self.anchor,
            "tokensIn": {t: self.tokens_in[t] for t in sorted(self.tokens_in)},
            "tokensOut": {t: self.tokens_out[t] for t in sorted(self.tokens_out)},
            "minted": list(self.minted),
            "costIn": self.cost_in,
            "costOut": self.cost_out,
            "nodes": self.nodes,
        }


def _token_multiset(tokens: tuple[str, ...]) -> dict[str, int]:
    out: dict[str, int] = {}
    for t in tokens:
        out[t] = out.get(t, 0) + 1
    return out


def _multiset_cost(tokens: dict[str, int], costs: dict[str, int]) -> int:
    return sum(costs[t] * n for t, n in tokens.items())


def apply_rewrite(
    g: MolGraph,
    m: Match,
    ledger: Ledger,
    mode: str | None = None,
    costs: dict[str, int] | None = None,
    step_index: int = 0,
    pass_index: int = 0,
) -> tuple[MolGraph, StepRecord]:
    """Replace the matched LHS nodes by the schema's RHS, moving tokens.

    The graph is modified in place and returned.  Pattern edges bound by
    the match keep their graph names; RHS-only edges get freshly minted
    names.  In strict mode a missing input token raises InsufficientTokens
    before anything is touched.
    """
    if mode is None:
        mode = ledger.mode
    schema = m.schema
    lhs_lines = schema.lhs_lines()
    for nid, (node_type, _) in zip(m.nodes, lhs_lines):
        if nid not in g or g.node(nid).type != node_type:
            raise StaleMatch(f"{schema.name} at node {nid}")

    tokens_in = _token_multiset(schema.tokens_in)
    tokens_out = _token_multiset(schema.tokens_out)
    if mode == "strict" and not ledger.can_pay(tokens_in):
        missing = {t: n for t, n in tokens_in.items() if ledger.counts[t] < n}
        raise InsufficientTokens(f"{schema.name} needs {missing}")
    for t, n in tokens_in.items():
        ledger.debit(t, n, allow_mint=(mode == "open"))

    for nid in m.nodes:
        g.remove_node(nid)

    edges = dict(m.edges)
    minted: list[str] = []
    for node_type, names in schema.rhs_lines():
        mapped = []
        for name in names:
            if name not in edges:
                fresh = ledger.names.fresh()
                edges[name] = fresh
                minted.append(fresh)
            mapped.append(edges[name])
        g.add_node(node_type, mapped)

    for t, n in tokens_out.items():
        ledger.credit(t, n)

    costs = costs if costs is not None else {t: 0 for t in TOKEN_TYPES}
    record = StepRecord(
        step=step_index,
        rewrite=schema.name,
        anchor=m.anchor,
        tokens_in=tokens_in,
        tokens_out=tokens_out,
        minted=minted,
        cost_in=_multiset_cost(tokens_in, costs),
        cost_out=_multiset_cost(tokens_out, costs),
        nodes=g.node_count,
        pass_index=pass_index,
    )
    return g, record


def comb_pass(
    g: MolGraph,
    ledger: Ledger,
    costs: dict[str, int] | None = None,
    step_index: int = 0,
    pass_index: int = 0,
) -> tuple[MolGraph, list[StepRecord]]:
    """Eliminate Arrow nodes to fixpoint, crediting one Arrow token each.

    An Arrow with ports a, b is deleted and the other occurrence of a is
    renamed to b.  Closed-loop Arrows (a == b) and Arrows whose in edge
    dangles are left in place.
    """
    costs = costs if costs is not None else {t: 0 for t in TOKEN_TYPES}
    records: list[StepRecord] = []
    changed = True
    while changed:
        changed = False
        for nid in g.node_ids():
            if nid not in g:
                continue
            node = g.node(nid)
            if node.type != "Arrow":
                continue
            a, b = node.ports
            if a == b:
                continue
            far = g.other_endpoint(a, PortRef(nid, 0))
            if far is None:
                continue
            g.remove_node(nid)
            g.set_port(far.node_id, far.port, b)
            ledger.credit("Arrow")
            records.append(
                StepRecord(
                    step=step_index + len(records),
                    rewrite="COMB",
                    anchor=nid,
                    tokens_in={},
                    tokens_out={"Arrow": 1},
                    minted=[],
                    cost_in=0,
                    cost_out=costs["Arrow"],
                    nodes=g.node_count,
                    pass_index=pass_index,
                )
            )
            changed = True
    return g, records
