import pytest
from hypothesis import given, settings

from skimol.molgraph import (
    MolGraph,
    MolParseError,
    MolStructureError,
    cap_free_edges,
    connected_components,
    isomorphic,
    parse_mol,
    s_is_combinator,
    serialize_mol,
    validate,
)

from conftest import open_graph_strategy, term_strategy

SKKI_MOL = "FROUT 1\nS 2 2 3\nA 3 4 5\nK 4\nA 5 6 7\nK 6\nA 7 8 1\nI 8"
SKKI_CARET = "FROUT 6 ^ S 10 10 1 ^ A 1 3 2 ^ K 3 ^ A 2 5 4 ^ K 5 ^ A 4 7 6 ^ I 7"


def test_parse_mol_newline():
    g = parse_mol(SKKI_MOL)
    assert g.node_count == 8
    assert [n.type for n in g.nodes()] == ["FROUT", "S", "A", "K", "A", "K", "A", "I"]
    assert g.node(1).ports == ["2", "2", "3"]


def test_parse_mol_caret_isomorphic():
    assert isomorphic(parse_mol(SKKI_MOL), parse_mol(SKKI_CARET))


def test_parse_mol_arity_error():
    with pytest.raises(MolParseError):
        parse_mol("S a b")


def test_parse_mol_unknown_type():
    with pytest.raises(MolParseError):
        parse_mol("Q a")


def test_parse_mol_empty():
    with pytest.raises(MolParseError):
        parse_mol("")


def test_parse_mol_rejects_reserved_prefix():
    with pytest.raises(MolParseError):
        parse_mol("I Za, FROUT Za", line_sep=",")
    g = parse_mol("I Za, FROUT Za", line_sep=",", allow_minted=True)
    assert g.node_count == 2


def test_parse_mol_illegal_name():
    with pytest.raises(MolParseError):
        parse_mol("I a-b\nFROUT a-b")


def test_serialize_empty():
    assert serialize_mol(MolGraph()) == ""


def test_serialize_single_node():
    g = MolGraph()
    g.add_node("I", ["x"])
    assert serialize_mol(g) == "I x"


def test_round_trip_identity():
    g = parse_mol(SKKI_MOL)
    again = parse_mol(serialize_mol(g))
    assert [(n.type, n.ports) for n in g.nodes()] == [
        (n.type, n.ports) for n in again.nodes()
    ]
    assert serialize_mol(again) == SKKI_MOL


def test_serialize_caret_round_trip():
    g = parse_mol(SKKI_MOL)
    text = serialize_mol(g, " ^ ")
    assert isomorphic(parse_mol(text), g)


@given(term_strategy(max_leaves=10))
@settings(max_examples=60)
def test_round_trip_property(term):
    from skimol.ski import term_to_mol

    g = term_to_mol(term)
    again = parse_mol(serialize_mol(g))
    assert serialize_mol(again) == serialize_mol(g)


def test_validate_closed():
    report = validate(parse_mol(SKKI_MOL))
    assert report.ok
    assert len(report.edge_counts) == 8
    assert all(n == 2 for n in report.edge_counts.values())


def test_validate_open():
    report = validate(parse_mol("A 1 2 3"))
    assert not report.ok
    assert len(report.errors) == 3


def test_validate_triple_edge():
    g = parse_mol("I a, A a b c, FRIN b, FROUT c, FRIN a", line_sep=",")
    report = validate(g)
    assert not report.ok
    assert any("'a'" in e and "3" in e for e in report.errors)


def test_validate_polarity_warning():
    # two FRIN out-ports joined: structurally fine, flagged as advisory
    report = validate(parse_mol("FRIN a, FRIN a", line_sep=","))
    assert report.ok
    assert report.warnings
    # K's free port is exempt
    assert not validate(parse_mol("K a, FROUT a", line_sep=",")).warnings


def test_cap_free_edges_a_node():
    capped = cap_free_edges(parse_mol("A 1 2 3"))
    assert validate(capped).ok
    types = capped.type_counts()
    assert types == {"A": 1, "FRIN": 2, "FROUT": 1}


def test_cap_free_edges_s_node():
    capped = cap_free_edges(parse_mol("S a b c"))
    assert capped.type_counts() == {"S": 1, "FRIN": 1, "FROUT": 2}


def test_cap_free_edges_closed_unchanged():
    g = parse_mol(SKKI_MOL)
    assert serialize_mol(cap_free_edges(g)) == serialize_mol(g)


def test_cap_free_edges_leaf_note():
    notes = []
    capped = cap_free_edges(parse_mol("K a"), notes)
    assert capped.type_counts() == {"K": 1, "FROUT": 1}
    assert notes and "K" in notes[0]


def test_cap_free_edges_triple_error():
    g = parse_mol("I a, A a b c, FRIN b, FROUT c, FRIN a", line_sep=",")
    with pytest.raises(MolStructureError):
        cap_free_edges(g)


@given(open_graph_strategy())
@settings(max_examples=80)
def test_cap_free_edges_property(g):
    capped = cap_free_edges(g)
    assert validate(capped).ok


def test_isomorphic_self():
    g = parse_mol(SKKI_MOL)
    assert isomorphic(g, g)


def test_isomorphic_type_mismatch():
    assert not isomorphic(
        parse_mol("I a, FROUT a", line_sep=","),
        parse_mol("K a, FROUT a", line_sep=","),
    )


def test_isomorphic_wiring_mismatch():
    # same type multiset, different wiring
    g1 = parse_mol("S a a b, FROUT b, FRIN c, FROUT c", line_sep=",")
    g2 = parse_mol("S a b c, FRIN a, FROUT b, FROUT c", line_sep=",")
    assert not isomorphic(g1, g2)


@given(term_strategy(max_leaves=8))
@settings(max_examples=40)
def test_isomorphic_equivalence_relation(term):
    import random

    from skimol.ski import term_to_mol

    g = term_to_mol(term)

    def scrambled(seed):
        rng = random.Random(seed)
        names = sorted({e for n in g.nodes() for e in n.ports})
        new = [f"r{i}" for i in range(len(names))]
        rng.shuffle(new)
        rename = dict(zip(names, new))
        h = MolGraph()
        order = list(g.nodes())
        rng.shuffle(order)
        for node in order:
            h.add_node(node.type, [rename[e] for e in node.ports])
        return h

    h, k = scrambled(1), scrambled(2)
    assert isomorphic(g, g)
    assert isomorphic(g, h) and isomorphic(h, g)
    assert isomorphic(h, k) and isomorphic(g, k)


def test_s_is_combinator():
    assert s_is_combinator(parse_mol("S 1 1 2"), 0)
    assert not s_is_combinator(parse_mol("S a b c"), 0)
    assert s_is_combinator(parse_mol("S b b a"), 0)
    with pytest.raises(MolStructureError):
        s_is_combinator(parse_mol("I a"), 0)


def test_connected_components():
    g = parse_mol("I a, FROUT a, K b, K b", line_sep=",")
    comps = connected_components(g)
    assert sorted(map(tuple, comps)) == [(0, 1), (2, 3)]
