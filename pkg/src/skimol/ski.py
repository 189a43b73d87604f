"""SKI combinator terms: parsing, translation to molecules, and decoding.

A term is translated to its syntax tree as a graph: one A node per
application, S/K/I leaves as combinator nodes, free variables as
FRIN-capped edges, and the root capped by FROUT.  Decoding walks the graph
back from a free out edge; it is partial and fails on graphs that are not
syntax trees (fan-outs, Arrow nodes, cycles, dangling edges).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .molgraph import MINT_PREFIX, MolGraph, PortRef, _NAME_RE


@dataclass(frozen=True)
class Atom:
    name: str  # "S", "K" or "I"


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class App:
    fn: "SkiTerm"
    arg: "SkiTerm"


SkiTerm = Union[Atom, Var, App]

S = Atom("S")
K = Atom("K")
I = Atom("I")

_ATOMS = {"S": S, "K": K, "I": I}


class TermParseError(Exception):
    pass


class NotATerm(Exception):
    """Raised when a graph region does not decode to a term.

    `reason` is one of "fanout-node", "arrow-node", "cycle", "dangling".
    """

    def __init__(self, reason: str, detail: str = ""):
        super().__init__(f"{reason}: {detail}" if detail else reason)
        self.reason = reason


# -- term text ----------------------------------------------------------------


def _tokenize(text: str) -> list[str]:
    tokens = []
    i = 0
    while i < len(text):
        c = text[i]
        if c.isspace():
            i += 1
        elif c in "()":
            tokens.append(c)
            i += 1
        elif c in "\\λ.":
            raise TermParseError(
                "lambda syntax is not supported here; use S/K/I combinators"
            )
        elif c.isalnum() or c == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(text[i:j])
            i = j
        else:
            raise TermParseError(f"unexpected character {c!r}")
    return tokens


def parse_term(text: str) -> SkiTerm:
    """Parse "S I I" style text; application is left-associative.

    The single letters S, K, I are combinators; any other identifier is a
    free variable (so an unspaced "SII" parses as the variable "SII").
    """
    tokens = _tokenize(text)
    if not tokens:
        raise TermParseError("empty term")
    pos = 0

    def parse_seq(depth: int) -> SkiTerm:
        nonlocal pos
        items: list[SkiTerm] = []
        while pos < len(tokens):
            tok = tokens[pos]
            if tok == "(":
                pos += 1
                items.append(parse_seq(depth + 1))
                if pos >= len(tokens) or tokens[pos] != ")":
                    raise TermParseError("unbalanced parenthesis: missing ')'")
                pos += 1
            elif tok == ")":
                if depth == 0:
                    raise TermParseError("unbalanced parenthesis: unexpected ')'")
                break
            else:
                items.append(_ATOMS.get(tok, Var(tok)))
                pos += 1
        if not items:
            raise TermParseError("empty group")
        term = items[0]
        for item in items[1:]:
            term = App(term, item)
        return term

    term = parse_seq(0)
    if pos != len(tokens):
        raise TermParseError("unbalanced parenthesis: unexpected ')'")
    return term


def term_to_string(t: SkiTerm) -> str:
    """Render with application chains flattened, parenthesizing arguments."""
    if isinstance(t, Atom) or isinstance(t, Var):
        return t.name
    arg = term_to_string(t.arg)
    if isinstance(t.arg, App):
        arg = f"({arg})"
    return f"{term_to_string(t.fn)} {arg}"


def term_size(t: SkiTerm) -> int:
    """Number of leaves (atoms and variable occurrences)."""
    if isinstance(t, App):
        return term_size(t.fn) + term_size(t.arg)
    return 1


def suspicious_vars(t: SkiTerm) -> list[str]:
    """Variables spelled only with S/K/I letters, e.g. a mistyped "SII"."""
    out: list[str] = []

    def walk(term: SkiTerm) -> None:
        if isinstance(term, App):
            walk(term.fn)
            walk(term.arg)
        elif isinstance(term, Var) and set(term.name) <= set("SKI"):
            out.append(term.name)

    walk(t)
    return out


# -- term -> molecule ---------------------------------------------------------


class _PlainNames:
    """Sequential numeric edge names, like the hand-written mol examples."""

    def __init__(self) -> None:
        self._n = 0

    def fresh(self) -> str:
        self._n += 1
        return str(self._n)


def term_to_mol(t: SkiTerm, names=None) -> MolGraph:
    """Build the syntax-tree molecule of a term.

    S leaves are emitted in combinator form (ports 1 and 2 self-looped),
    each variable occurrence becomes a FRIN-capped edge and the root is
    capped by FROUT.  Variable edges keep the variable's name where
    possible; repeated occurrences get a numeric suffix so edge names stay
    unique.  `names` may be any object with a fresh() method; by default
    plain sequential numbers are used.
    """
    g = MolGraph()
    source = names if names is not None else _PlainNames()
    used: set[str] = set()

    def fresh() -> str:
        while True:
            name = source.fresh()
            if name not in used:
                used.add(name)
                return name

    def var_edge(name: str) -> str:
        if _NAME_RE.match(name) and not name.startswith(MINT_PREFIX) and name not in used:
            used.add(name)
            return name
        n = 2
        while f"{name}{n}" in used or not _NAME_RE.match(f"{name}{n}"):
            n += 1
        used.add(f"{name}{n}")
        return f"{name}{n}"

    def emit(term: SkiTerm) -> str:
        if isinstance(term, App):
            fn_edge = emit(term.fn)
            arg_edge = emit(term.arg)
            root = fresh()
            g.add_node("A", [fn_edge, arg_edge, root])
            return root
        if isinstance(term, Var):
            edge = var_edge(term.name)
            g.add_node("FRIN", [edge])
            return edge
        root = fresh()
        if term.name == "S":
            loop = fresh()
            g.add_node("S", [loop, loop, root])
        else:
            g.add_node(term.name, [root])
        return root

    root = emit(t)
    g.add_node("FROUT", [root])
    return g


def root_edge(g: MolGraph) -> str:
    """The edge at the unique FROUT node."""
    frouts = [n for n in g.nodes() if n.type == "FROUT"]
    if len(frouts) != 1:
        raise NotATerm("dangling", f"expected one FROUT, found {len(frouts)}")
    return frouts[0].ports[0]


# -- molecule -> term ---------------------------------------------------------


def decode(g: MolGraph, edge: str) -> SkiTerm:
    """Read the term produced at `edge`, typically the edge of a FROUT.

    Walks producers: an A node's out port applies its two in ports, an S
    node in combinator form is the atom S, K/I leaves are atoms, FRIN is a
    free variable named by its edge.  Fan-out S nodes, Arrow nodes, cycles
    and dangling edges make the walk fail with NotATerm.
    """

    def producer(e: str, consumer: PortRef | None) -> PortRef:
        refs = g.edge_refs(e)
        candidates = [r for r in refs if r != consumer] if consumer else list(refs)
        if consumer is None:
            # entry point: prefer the side that is not a FROUT/in port
            candidates = [
                r
                for r in refs
                if g.node(r.node_id).sig.polarity[r.port] != "in"
            ] or candidates
        if len(candidates) != 1:
            raise NotATerm("dangling", f"edge {e!r}")
        return candidates[0]

    def walk(e: str, consumer: PortRef | None, path: frozenset[int]) -> SkiTerm:
        ref = producer(e, consumer)
        node = g.node(ref.node_id)
        if node.id in path:
            raise NotATerm("cycle", f"node {node.id}")
        if node.type == "A":
            if ref.port != 2:
                raise NotATerm("dangling", f"A node {node.id} entered at port {ref.port + 1}")
            sub = path | {node.id}
            fn = walk(node.ports[0], PortRef(node.id, 0), sub)
            arg = walk(node.ports[1], PortRef(node.id, 1), sub)
            return App(fn, arg)
        if node.type == "S":
            if ref.port == 2 and node.ports[0] == node.ports[1]:
                return S
            raise NotATerm("fanout-node", f"node {node.id}")
        if node.type == "K":
            return K
        if node.type == "I":
            return I
        if node.type == "FRIN":
            return Var(e)
        if node.type == "Arrow":
            raise NotATerm("arrow-node", f"node {node.id}")
        raise NotATerm("dangling", f"{node.type} node {node.id}")

    refs = g.edge_refs(edge)
    if not refs:
        raise NotATerm("dangling", f"unknown edge {edge!r}")
    consumer = next((r for r in refs if g.node(r.node_id).type == "FROUT"), None)
    return walk(edge, consumer, frozenset())


# -- direct term rewriting ------------------------------------------------


def reduce_once(t: SkiTerm) -> SkiTerm | None:
    """One leftmost-outermost rewrite step, or None at normal form."""
    if isinstance(t, App):
        if isinstance(t.fn, Atom) and t.fn.name == "I":
            return t.arg
        if (
            isinstance(t.fn, App)
            and isinstance(t.fn.fn, Atom)
            and t.fn.fn.name == "K"
        ):
            return t.fn.arg
        if (
            isinstance(t.fn, App)
            and isinstance(t.fn.fn, App)
            and isinstance(t.fn.fn.fn, Atom)
            and t.fn.fn.fn.name == "S"
        ):
            x, y, z = t.fn.fn.arg, t.fn.arg, t.arg
            return App(App(x, z), App(y, z))
        fn = reduce_once(t.fn)
        if fn is not None:
            return App(fn, t.arg)
        arg = reduce_once(t.arg)
        if arg is not None:
            return App(t.fn, arg)
    return None


def normal_form(t: SkiTerm, max_steps: int = 10000) -> SkiTerm:
    """Normal-order reduction to normal form by plain term rewriting."""
    for _ in range(max_steps):
        step = reduce_once(t)
        if step is None:
            return t
        t = step
    raise RuntimeError(f"no normal form within {max_steps} steps")
