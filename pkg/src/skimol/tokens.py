"""Tokens, the ledger, fresh-name minting, and schema conservation checks.

Tokens are small closed graphs (Arrow, I-A, S-K, S-A, A-A, S-S) that
rewrites consume and produce so that, written as flat symbol strings, the
right side with tokens is a permutation of the left side with tokens.  At
runtime the ledger tracks tokens as counters; the canonical graph forms are
used only for minting and for verifying the schema table.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .molgraph import MINT_PREFIX, MolGraph, isomorphic, parse_mol


@dataclass(frozen=True)
class TokenType:
    name: str
    canonical_form: str  # mol pattern, "," separated
    names_carried: int   # distinct edge names in the form
    nodes_embodied: int


TOKEN_TYPES: dict[str, TokenType] = {
    t.name: t
    for t in (
        TokenType("Arrow", "Arrow d d", 1, 1),
        TokenType("I-A", "I x, A y x y", 2, 2),
        TokenType("S-K", "S d c d, K c", 2, 2),
        TokenType("S-A", "S f h f, A g h g", 3, 2),
        TokenType("A-A", "A x d x, A y d y", 3, 2),
        TokenType("S-S", "S a b a, S c b c", 3, 2),
    )
}


class InsufficientTokens(Exception):
    pass


class InsufficientWaste(InsufficientTokens):
    pass


class FreshNameSource:
    """Monotone counter of reserved-prefix edge names, unique per session."""

    def __init__(self, prefix: str = MINT_PREFIX, counter: int = 0):
        self.prefix = prefix
        self.counter = counter

    def fresh(self) -> str:
        name = f"{self.prefix}{self.counter}"
        self.counter += 1
        return name

    def ensure_above(self, names) -> None:
        """Bump the counter past any already-used minted names."""
        pat = re.compile(re.escape(self.prefix) + r"(\d+)\Z")
        for name in names:
            m = pat.match(name)
            if m:
                self.counter = max(self.counter, int(m.group(1)) + 1)


@dataclass
class TokenInstance:
    type: str
    mol: str
    names: list[str]


def mint(token: str, src: FreshNameSource) -> TokenInstance:
    """Instantiate a token's canonical form with fresh edge names."""
    tt = TOKEN_TYPES[token]
    mapping: dict[str, str] = {}
    lines = []
    for line in tt.canonical_form.split(","):
        fields = line.split()
        out = [fields[0]]
        for name in fields[1:]:
            if name not in mapping:
                mapping[name] = src.fresh()
            out.append(mapping[name])
        lines.append(" ".join(out))
    assert len(mapping) == tt.names_carried
    return TokenInstance(token, ", ".join(lines), list(mapping.values()))


class Ledger:
    """Session token counts plus the fresh-name mint.

    In strict mode a debit below zero raises InsufficientTokens; in open
    mode the shortfall is auto-minted and logged, so plain reduction always
    proceeds.  Waste counters hold excised inert pairs.
    """

    def __init__(self, mode: str = "open", names: FreshNameSource | None = None):
        if mode not in ("strict", "open"):
            raise ValueError(f"unknown token mode {mode!r}")
        self.mode = mode
        self.names = names if names is not None else FreshNameSource()
        self.counts: dict[str, int] = {name: 0 for name in TOKEN_TYPES}
        self.waste: dict[str, int] = {}
        self.mint_log: list[dict] = []

    def credit(self, token: str, n: int = 1) -> None:
        self.counts[token] += n

    def debit(self, token: str, n: int = 1, allow_mint: bool | None = None) -> None:
        if allow_mint is None:
            allow_mint = self.mode == "open"
        have = self.counts[token]
        if have < n:
            if not allow_mint:
                raise InsufficientTokens(f"need {n} {token}, have {have}")
            short = n - have
            self.mint_log.append({"token": token, "count": short})
            self.counts[token] += short
        self.counts[token] -= n

    def can_pay(self, tokens: dict[str, int]) -> bool:
        return all(self.counts[t] >= n for t, n in tokens.items())

    def fund(self, per_type: int) -> None:
        for token in self.counts:
            self.counts[token] += per_type

    def embodied_total(self) -> int:
        nodes = sum(TOKEN_TYPES[t].nodes_embodied * n for t, n in self.counts.items())
        return nodes + 2 * sum(self.waste.values())

    def minted_embodied(self) -> int:
        return sum(TOKEN_TYPES[e["token"]].nodes_embodied * e["count"] for e in self.mint_log)

    def to_json(self) -> dict:
        out: dict = dict(self.counts)
        out["waste"] = dict(self.waste)
        out["mintCount"] = self.names.counter
        return out


# -- token and waste rewrites (pure ledger arithmetic) -------------------------


def token_rewrite_ss_aa(ledger: Ledger) -> Ledger:
    """S-S + A-A -> 2 S-A; the only rewrite between tokens alone."""
    ledger.debit("S-S", 1, allow_mint=False)
    ledger.debit("A-A", 1, allow_mint=False)
    ledger.credit("S-A", 2)
    return ledger


# waste kind -> (token consumed, tokens produced, waste produced)
WASTE_EQUATIONS: dict[str, tuple[str, tuple[str, ...], tuple[str, ...]]] = {
    "K-K": ("S-S", ("S-K", "S-K"), ()),
    "I-I": ("A-A", ("I-A", "I-A"), ()),
    "I-K": ("A-A", ("I-A",), ("A-K",)),
    "A-K": ("S-S", ("S-A", "S-K"), ()),
}


def waste_rewrite(kind: str, ledger: Ledger) -> Ledger:
    """Convert one excised waste pair plus a token into usable tokens."""
    if kind not in WASTE_EQUATIONS:
        raise ValueError(f"no waste rewrite for {kind!r}")
    token_in, tokens_out, waste_out = WASTE_EQUATIONS[kind]
    if ledger.waste.get(kind, 0) < 1:
        raise InsufficientWaste(f"no {kind} waste available")
    ledger.debit(token_in, 1, allow_mint=False)
    ledger.waste[kind] -= 1
    if not ledger.waste[kind]:
        del ledger.waste[kind]
    for t in tokens_out:
        ledger.credit(t)
    for w in waste_out:
        ledger.waste[w] = ledger.waste.get(w, 0) + 1
    return ledger


# -- waste detection ------------------------------------------------------------

_WASTE_TYPE_ORDER = {"A": 0, "I": 1, "S": 2, "K": 3}


@dataclass
class WasteComponent:
    kind: str
    node_ids: tuple[int, int]


def detect_waste(g: MolGraph) -> list[WasteComponent]:
    """Closed two-node combinator components with no applicable rewrite.

    The textbook kinds are K-K, I-K, I-I and A-K; anything else inert (for
    example an S combinator capped by K) is reported under its own pair
    name.  Components touching FRIN/FROUT/Arrow are interface wiring, not
    waste, and are skipped.
    """
    from .rewrites import REDUCTION_SCHEMAS, find_transform
    from .molgraph import connected_components

    out = []
    for comp in connected_components(g):
        if len(comp) != 2:
            continue
        types = [g.node(nid).type for nid in comp]
        if not all(t in "SKIA" for t in types):
            continue
        if any(len(g.edge_refs(e)) != 2 for nid in comp for e in g.node(nid).ports):
            continue
        if any(find_transform(g, nid, REDUCTION_SCHEMAS) for nid in comp):
            continue
        a, b = sorted(types, key=_WASTE_TYPE_ORDER.get)
        out.append(WasteComponent(f"{a}-{b}", (comp[0], comp[1])))
    return out


def excise_waste(g: MolGraph, comp: WasteComponent, ledger: Ledger) -> MolGraph:
    """Remove an inert pair from the graph into the ledger's waste counter."""
    for nid in comp.node_ids:
        g.remove_node(nid)
    ledger.waste[comp.kind] = ledger.waste.get(comp.kind, 0) + 1
    return g


# -- synthesis rewrites ---------------------------------------------------------


def _check_synth_roots(g: MolGraph, frout_a: int, frout_b: int) -> None:
    from .molgraph import connected_components

    if frout_a == frout_b:
        raise ValueError("synthesis needs two distinct FROUT roots")
    for nid in (frout_a, frout_b):
        if g.node(nid).type != "FROUT":
            raise ValueError(f"node {nid} is not a FROUT")
    for comp in connected_components(g):
        if frout_a in comp and frout_b in comp:
            raise ValueError("synthesis roots must cap disjoint subgraphs")


def synth_duplicate_erase(g: MolGraph, frout_a: int, frout_b: int, ledger: Ledger) -> MolGraph:
    """Rewire two roots so the first subgraph is duplicated, the second erased.

    Consumes one S-K token.  The first root's tree now feeds an S fan-out
    with both outputs FROUT-capped; the second root is capped by a K
    eraser, whose cleanup happens through ordinary reduction.
    """
    _check_synth_roots(g, frout_a, frout_b)
    ledger.debit("S-K", 1)
    a = g.node(frout_a).ports[0]
    b = g.node(frout_b).ports[0]
    e, c = ledger.names.fresh(), ledger.names.fresh()
    g.set_port(frout_a, 0, e)
    g.set_port(frout_b, 0, c)
    g.add_node("S", [a, e, c])
    g.add_node("K", [b])
    return g


def synth_apply(g: MolGraph, frout_a: int, frout_b: int, ledger: Ledger) -> MolGraph:
    """Rewire two roots so a copy of the first is applied to the second.

    Consumes one S-A token.  One fan-out output stays a root; the other
    becomes the function of a new application whose argument is the second
    subgraph.
    """
    _check_synth_roots(g, frout_a, frout_b)
    ledger.debit("S-A", 1)
    a = g.node(frout_a).ports[0]
    b = g.node(frout_b).ports[0]
    e, c, d = ledger.names.fresh(), ledger.names.fresh(), ledger.names.fresh()
    g.set_port(frout_a, 0, e)
    g.set_port(frout_b, 0, c)
    g.add_node("S", [a, e, d])
    g.add_node("A", [d, b, c])
    return g


# -- schema verification ---------------------------------------------------------


def _pattern_lines(pattern: str) -> list[tuple[str, tuple[str, ...]]]:
    lines = []
    for chunk in pattern.split(","):
        fields = chunk.split()
        if fields:
            lines.append((fields[0], tuple(fields[1:])))
    return lines


def flatten_symbols(pattern: str) -> list[str]:
    """Pattern as the flat list of node-type and edge-name symbols."""
    out: list[str] = []
    for node_type, names in _pattern_lines(pattern):
        out.append(node_type)
        out.extend(names)
    return out


def _multiset(items) -> dict:
    counts: dict = {}
    for item in items:
        counts[item] = counts.get(item, 0) + 1
    return counts


def witness_permutation(lhs: list[str], rhs: list[str]) -> list[int] | None:
    """A position map p with rhs[i] == lhs[p[i]], or None if impossible.

    Matches the i-th occurrence of each symbol on the right to its i-th
    occurrence on the left, which succeeds exactly when the two symbol
    multisets agree.
    """
    if _multiset(lhs) != _multiset(rhs):
        return None
    positions: dict[str, list[int]] = {}
    for i, sym in enumerate(lhs):
        positions.setdefault(sym, []).append(i)
    taken: dict[str, int] = {}
    perm = []
    for sym in rhs:
        k = taken.get(sym, 0)
        taken[sym] = k + 1
        perm.append(positions[sym][k])
    return perm


def _pattern_components(lines: list[tuple[str, tuple[str, ...]]]) -> list[MolGraph]:
    """Split pattern lines into connected components as little graphs."""
    parent = list(range(len(lines)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    by_name: dict[str, int] = {}
    for i, (_, names) in enumerate(lines):
        for name in names:
            if name in by_name:
                parent[find(i)] = find(by_name[name])
            else:
                by_name[name] = i
    groups: dict[int, list[int]] = {}
    for i in range(len(lines)):
        groups.setdefault(find(i), []).append(i)
    out = []
    for members in groups.values():
        g = MolGraph()
        for i in members:
            node_type, names = lines[i]
            g.add_node(node_type, list(names))
        out.append(g)
    return out


def _tokens_of_leftover(leftover: list[tuple[str, tuple[str, ...]]]) -> list[str] | None:
    """Classify leftover pattern lines as a multiset of token types."""
    found = []
    for comp in _pattern_components(leftover):
        for token in TOKEN_TYPES.values():
            if isomorphic(comp, parse_mol(token.canonical_form, line_sep=",")):
                found.append(token.name)
                break
        else:
            return None
    return sorted(found)


@dataclass
class VerificationReport:
    schema: str
    node_types_conserved: bool
    edge_symbols_conserved: bool
    node_count_conserved: bool
    token_forms_match: bool
    witness: list[int] | None
    published_valid: bool | None = None
    published_agrees: bool | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def conserved(self) -> bool:
        return (
            self.node_types_conserved
            and self.edge_symbols_conserved
            and self.node_count_conserved
            and self.token_forms_match
            and self.witness is not None
        )


def verify_schema(schema) -> VerificationReport:
    """Statically check one rewrite schema's conservation claims.

    Verifies that the with-token sides agree as node-type and edge-name
    multisets, that node counts balance against the declared token
    multisets, that the token portions of the with-token patterns really
    are the declared tokens, and that a witness permutation exists.  A
    published permutation, when present, is checked for being a bijection
    that maps left symbols onto right symbols; disagreement is reported,
    not fatal.
    """
    lhs_flat = flatten_symbols(schema.lhs_tokens)
    rhs_flat = flatten_symbols(schema.rhs_tokens)
    lhs_lines = _pattern_lines(schema.lhs_tokens)
    rhs_lines = _pattern_lines(schema.rhs_tokens)

    types_ok = _multiset([t for t, _ in lhs_lines]) == _multiset([t for t, _ in rhs_lines])
    names_ok = _multiset(
        [n for _, names in lhs_lines for n in names]
    ) == _multiset([n for _, names in rhs_lines for n in names])

    embodied_in = sum(TOKEN_TYPES[t].nodes_embodied for t in schema.tokens_in)
    embodied_out = sum(TOKEN_TYPES[t].nodes_embodied for t in schema.tokens_out)
    base_lhs = _pattern_lines(schema.lhs)
    base_rhs = _pattern_lines(schema.rhs)
    count_ok = (
        len(lhs_lines) == len(rhs_lines)
        and len(base_lhs) + embodied_in == len(base_rhs) + embodied_out
    )

    notes = []
    tokens_ok = True
    for base, full, declared, side in (
        (base_lhs, lhs_lines, schema.tokens_in, "in"),
        (base_rhs, rhs_lines, schema.tokens_out, "out"),
    ):
        leftover = list(full)
        for line in base:
            if line in leftover:
                leftover.remove(line)
        classified = _tokens_of_leftover(leftover)
        if classified != sorted(declared):
            tokens_ok = False
            notes.append(
                f"{side} tokens in pattern {classified} != declared {sorted(declared)}"
            )

    witness = witness_permutation(lhs_flat, rhs_flat)

    published_valid = published_agrees = None
    if schema.published is not None:
        perm = schema.published
        published_valid = sorted(perm) == list(range(len(perm)))
        if not published_valid:
            notes.append("published permutation is not a bijection")
        in_range = all(0 <= p < len(lhs_flat) for p in perm)
        published_agrees = (
            published_valid
            and len(perm) == len(rhs_flat)
            and in_range
            and all(rhs_flat[i] == lhs_flat[p] for i, p in enumerate(perm))
        )

    return VerificationReport(
        schema.name,
        types_ok,
        names_ok,
        count_ok,
        tokens_ok,
        witness,
        published_valid,
        published_agrees,
        notes,
    )
