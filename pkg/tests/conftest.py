import itertools

import pytest
from hypothesis import strategies as st

from skimol import ski
from skimol.molgraph import MolGraph, NODE_TYPES

ATOMS = [ski.S, ski.K, ski.I]


def term_strategy(max_leaves: int = 15, with_vars: bool = False):
    leaves = st.sampled_from(ATOMS)
    if with_vars:
        leaves = st.one_of(leaves, st.just(ski.Var("v")))
    strat = st.recursive(
        leaves, lambda kids: st.builds(ski.App, kids, kids), max_leaves=max_leaves
    )
    if not with_vars:
        return strat
    return strat.map(_relabel_vars)


def _relabel_vars(term):
    """Give every variable occurrence its own name, so decode round-trips."""
    counter = itertools.count()

    def walk(t):
        if isinstance(t, ski.App):
            return ski.App(walk(t.fn), walk(t.arg))
        if isinstance(t, ski.Var):
            return ski.Var(f"v{next(counter)}")
        return t

    return walk(term)


@st.composite
def open_graph_strategy(draw):
    """Graphs whose edges occur once or twice, for capping tests."""
    n = draw(st.integers(min_value=1, max_value=8))
    types = draw(
        st.lists(st.sampled_from(sorted(NODE_TYPES)), min_size=n, max_size=n)
    )
    slots = sum(NODE_TYPES[t].arity for t in types)
    pool = [f"e{i}" for i in range(slots)]
    picks = draw(
        st.lists(st.sampled_from(pool), min_size=slots, max_size=slots)
    )
    used: dict[str, int] = {}
    g = MolGraph()
    fresh = itertools.count()
    k = 0
    for t in types:
        ports = []
        for _ in range(NODE_TYPES[t].arity):
            name = picks[k]
            k += 1
            if used.get(name, 0) >= 2:
                name = f"f{next(fresh)}"
            used[name] = used.get(name, 0) + 1
            ports.append(name)
        g.add_node(t, ports)
    return g


def enumerate_terms(size: int):
    """All application trees of `size` leaves over the S/K/I atoms."""
    if size == 1:
        yield from ATOMS
        return
    for left in range(1, size):
        for fn in enumerate_terms(left):
            for arg in enumerate_terms(size - left):
                yield ski.App(fn, arg)


def build_corpus(minimum: int = 50) -> list[ski.SkiTerm]:
    """Deterministic corpus of normalizing terms that have at least one redex.

    Includes the two worked examples ((S K) K) I and (K S) K, then fills up
    from the size-3..5 enumeration in a fixed order.
    """
    corpus = [ski.parse_term("((S K) K) I"), ski.parse_term("(K S) K")]
    seen = {ski.term_to_string(t) for t in corpus}
    for size in (3, 4, 5):
        for term in enumerate_terms(size):
            if len(corpus) >= minimum:
                return corpus
            key = ski.term_to_string(term)
            if key in seen:
                continue
            if ski.reduce_once(term) is None:
                continue
            try:
                nf = ski.normal_form(term, max_steps=200)
            except RuntimeError:
                continue
            if ski.term_size(nf) > 40:
                continue
            seen.add(key)
            corpus.append(term)
    return corpus


@pytest.fixture(scope="session")
def corpus():
    terms = build_corpus(50)
    assert len(terms) >= 50
    return terms
