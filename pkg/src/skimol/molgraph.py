"""Port-graph molecules in mol notation.

A molecule is a list of typed nodes.  Each node has a fixed number of
numbered ports and every port carries an edge name; an edge is realised by
the (at most two) ports that share a name.  The textual form is one node
per line: the node type followed by one edge name per port.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple

IN = "in"
OUT = "out"
FREE = "free"


@dataclass(frozen=True)
class NodeSig:
    """Shape of a node type: its port count and per-port polarity."""

    name: str
    polarity: tuple[str, ...]

    @property
    def arity(self) -> int:
        return len(self.polarity)


# The 1-valent combinator leaves K and I get polarity "free": they stand on
# either side of an edge (value producer or eraser cap) depending on context,
# so polarity checks treat them as wildcards.
NODE_TYPES: dict[str, NodeSig] = {
    "S": NodeSig("S", (IN, OUT, OUT)),
    "A": NodeSig("A", (IN, IN, OUT)),
    "K": NodeSig("K", (FREE,)),
    "I": NodeSig("I", (FREE,)),
    "Arrow": NodeSig("Arrow", (IN, OUT)),
    "FRIN": NodeSig("FRIN", (OUT,)),
    "FROUT": NodeSig("FROUT", (IN,)),
}

# First character reserved for engine-minted edge names.  Plain inputs may
# not use it, which keeps minted names globally fresh without bookkeeping.
MINT_PREFIX = "Z"

_NAME_RE = re.compile(r"[A-Za-z0-9]+\Z")

CARET_SEP = " ^ "


class MolError(Exception):
    """Base class for molecule errors."""


class MolParseError(MolError):
    def __init__(self, message: str, line: int = 0):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


class MolStructureError(MolError):
    pass


class PortRef(NamedTuple):
    node_id: int
    port: int


@dataclass
class Node:
    id: int
    type: str
    ports: list[str]

    @property
    def sig(self) -> NodeSig:
        return NODE_TYPES[self.type]


class MolGraph:
    """Mutable molecule with an incrementally maintained edge index.

    Node ids are engine-assigned integers and are never serialized; the mol
    text is the only wire format.  Iteration follows insertion order, which
    keeps everything downstream deterministic.
    """

    def __init__(self) -> None:
        self._nodes: dict[int, Node] = {}
        self._index: dict[str, list[PortRef]] = {}
        self._next_id = 0

    # -- construction ------------------------------------------------------

    def add_node(self, node_type: str, ports: Iterable[str]) -> int:
        sig = NODE_TYPES.get(node_type)
        if sig is None:
            raise MolStructureError(f"unknown node type {node_type!r}")
        ports = list(ports)
        if len(ports) != sig.arity:
            raise MolStructureError(
                f"{node_type} takes {sig.arity} edge names, got {len(ports)}"
            )
        nid = self._next_id
        self._next_id += 1
        self._nodes[nid] = Node(nid, node_type, ports)
        for i, edge in enumerate(ports):
            self._index.setdefault(edge, []).append(PortRef(nid, i))
        return nid

    def remove_node(self, nid: int) -> None:
        node = self._nodes.pop(nid)
        for i, edge in enumerate(node.ports):
            refs = self._index[edge]
            refs.remove(PortRef(nid, i))
            if not refs:
                del self._index[edge]

    def set_port(self, nid: int, port: int, edge: str) -> None:
        node = self._nodes[nid]
        old = node.ports[port]
        refs = self._index[old]
        refs.remove(PortRef(nid, port))
        if not refs:
            del self._index[old]
        node.ports[port] = edge
        self._index.setdefault(edge, []).append(PortRef(nid, port))

    def copy(self) -> "MolGraph":
        g = MolGraph()
        for node in self.nodes():
            g._nodes[node.id] = Node(node.id, node.type, list(node.ports))
            for i, edge in enumerate(node.ports):
                g._index.setdefault(edge, []).append(PortRef(node.id, i))
        g._next_id = self._next_id
        return g

    # -- access ------------------------------------------------------------

    def __contains__(self, nid: int) -> bool:
        return nid in self._nodes

    def node(self, nid: int) -> Node:
        return self._nodes[nid]

    def nodes(self) -> Iterator[Node]:
        return iter(self._nodes.values())

    def node_ids(self) -> list[int]:
        return list(self._nodes)

    @property
    def node_count(self) -> int:
        return len(self._nodes)

    def edge_names(self) -> list[str]:
        return list(self._index)

    def edge_refs(self, edge: str) -> list[PortRef]:
        return list(self._index.get(edge, ()))

    def other_endpoint(self, edge: str, here: PortRef) -> PortRef | None:
        """The port on the far side of `edge`, or None if the edge dangles."""
        refs = self._index.get(edge, ())
        others = [r for r in refs if r != here]
        if len(others) != 1:
            return None
        return others[0]

    def type_counts(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for node in self.nodes():
            counts[node.type] = counts.get(node.type, 0) + 1
        return counts


# -- text format -------------------------------------------------------------


def _check_name(name: str, line: int, allow_minted: bool) -> None:
    if not _NAME_RE.match(name):
        raise MolParseError(f"illegal edge name {name!r} (use [a-zA-Z0-9])", line)
    if not allow_minted and name.startswith(MINT_PREFIX):
        raise MolParseError(
            f"edge name {name!r} uses the reserved prefix {MINT_PREFIX!r}", line
        )


def parse_mol(text: str, line_sep: str | None = None, allow_minted: bool = False) -> MolGraph:
    """Parse mol text into a graph, preserving node order.

    Newline and " ^ " separators are both accepted when `line_sep` is None;
    pass an explicit separator (e.g. ",") to force one.  Edge occurrence
    counts are not enforced here; run validate() for that.
    """
    if line_sep is None:
        chunks = []
        for raw in text.splitlines():
            chunks.extend(raw.split(CARET_SEP))
    elif line_sep == "\n":
        chunks = text.splitlines()
    else:
        chunks = text.split(line_sep)

    g = MolGraph()
    for lineno, chunk in enumerate(chunks, start=1):
        fields = chunk.split()
        if not fields:
            continue
        node_type, names = fields[0], fields[1:]
        sig = NODE_TYPES.get(node_type)
        if sig is None:
            raise MolParseError(f"unknown node type {node_type!r}", lineno)
        if len(names) != sig.arity:
            raise MolParseError(
                f"{node_type} takes {sig.arity} edge names, got {len(names)}", lineno
            )
        for name in names:
            _check_name(name, lineno, allow_minted)
        g.add_node(node_type, names)
    if g.node_count == 0:
        raise MolParseError("empty mol input")
    return g


def serialize_mol(g: MolGraph, line_sep: str = "\n") -> str:
    lines = [" ".join([node.type, *node.ports]) for node in g.nodes()]
    return line_sep.join(lines)


# -- validation ---------------------------------------------------------------


@dataclass
class ValidationReport:
    ok: bool
    edge_counts: dict[str, int]
    errors: list[str]
    warnings: list[str]


def validate(g: MolGraph) -> ValidationReport:
    """Check that every edge joins exactly two ports.

    Polarity mismatches (in-in or out-out between ports of strict polarity)
    are advisory warnings only; K and I ports are polarity-free and exempt.
    """
    counts = {edge: len(g.edge_refs(edge)) for edge in g.edge_names()}
    errors = [
        f"edge {edge!r} occurs {n} time(s), expected 2"
        for edge, n in counts.items()
        if n != 2
    ]
    warnings = []
    for edge, n in counts.items():
        if n != 2:
            continue
        (n1, p1), (n2, p2) = g.edge_refs(edge)
        pol1 = g.node(n1).sig.polarity[p1]
        pol2 = g.node(n2).sig.polarity[p2]
        if FREE in (pol1, pol2):
            continue
        if pol1 == pol2:
            warnings.append(f"edge {edge!r} joins two {pol1} ports")
    return ValidationReport(not errors, counts, errors, warnings)


def cap_free_edges(g: MolGraph, notes: list[str] | None = None) -> MolGraph:
    """Return a copy with every dangling half-edge capped by FRIN or FROUT.

    A half-edge hanging off an in port gets a FRIN feeding it; one hanging
    off an out port gets a FROUT consuming it.  Dangling K/I ports have no
    inherent direction; they are treated as value producers and capped with
    FROUT, which is recorded in `notes` when given.
    """
    capped = g.copy()
    for edge in g.edge_names():
        refs = g.edge_refs(edge)
        if len(refs) == 2:
            continue
        if len(refs) > 2:
            raise MolStructureError(f"edge {edge!r} occurs {len(refs)} times")
        (nid, port) = refs[0]
        pol = g.node(nid).sig.polarity[port]
        if pol == IN:
            capped.add_node("FRIN", [edge])
        else:
            capped.add_node("FROUT", [edge])
            if pol == FREE and notes is not None:
                notes.append(
                    f"capped free {g.node(nid).type} port on edge {edge!r} with FROUT"
                )
    return capped


def s_is_combinator(g: MolGraph, nid: int) -> bool:
    """True when an S node has ports 1 and 2 on one edge (combinator form)."""
    node = g.node(nid)
    if node.type != "S":
        raise MolStructureError(f"node {nid} is {node.type}, not S")
    return node.ports[0] == node.ports[1]


# -- isomorphism --------------------------------------------------------------


def _loop_pattern(ports: list[str]) -> tuple[int, ...]:
    first: dict[str, int] = {}
    out = []
    for i, edge in enumerate(ports):
        out.append(first.setdefault(edge, i))
    return tuple(out)


def isomorphic(g1: MolGraph, g2: MolGraph) -> bool:
    """Whether the graphs match up to node order and edge renaming.

    Backtracking search over type- and self-loop-compatible node pairings,
    propagating the induced edge-name bijection.  Desk-scale graphs only.
    """
    if g1.node_count != g2.node_count:
        return False
    if sorted(n.type for n in g1.nodes()) != sorted(n.type for n in g2.nodes()):
        return False
    if len(g1.edge_names()) != len(g2.edge_names()):
        return False

    nodes1 = sorted(g1.nodes(), key=lambda n: (n.type, _loop_pattern(n.ports), n.id))
    by_sig: dict[tuple, list[Node]] = {}
    for node in g2.nodes():
        by_sig.setdefault((node.type, _loop_pattern(node.ports)), []).append(node)

    node_map: dict[int, int] = {}
    used2: set[int] = set()
    edge_map: dict[str, str] = {}
    edge_rev: dict[str, str] = {}

    def try_node(i: int) -> bool:
        if i == len(nodes1):
            return True
        n1 = nodes1[i]
        for n2 in by_sig.get((n1.type, _loop_pattern(n1.ports)), ()):
            if n2.id in used2:
                continue
            added = []
            ok = True
            for e1, e2 in zip(n1.ports, n2.ports):
                if edge_map.get(e1) == e2 and edge_rev.get(e2) == e1:
                    continue
                if e1 in edge_map or e2 in edge_rev:
                    ok = False
                    break
                edge_map[e1] = e2
                edge_rev[e2] = e1
                added.append((e1, e2))
            if ok:
                node_map[n1.id] = n2.id
                used2.add(n2.id)
                if try_node(i + 1):
                    return True
                del node_map[n1.id]
                used2.discard(n2.id)
            for e1, e2 in added:
                del edge_map[e1]
                del edge_rev[e2]
        return False

    return try_node(0)


def connected_components(g: MolGraph) -> list[list[int]]:
    """Node ids grouped by edge connectivity, in insertion order."""
    seen: set[int] = set()
    components = []
    for start in g.node_ids():
        if start in seen:
            continue
        comp = []
        stack = [start]
        seen.add(start)
        while stack:
            nid = stack.pop()
            comp.append(nid)
            for edge in g.node(nid).ports:
                for ref in g.edge_refs(edge):
                    if ref.node_id not in seen:
                        seen.add(ref.node_id)
                        stack.append(ref.node_id)
        components.append(sorted(comp))
    return components
