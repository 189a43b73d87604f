import pytest

from skimol.molgraph import (
    cap_free_edges,
    isomorphic,
    parse_mol,
    serialize_mol,
    validate,
)
from skimol.rewrites import (
    EXTENDED_VERIFY_TABLE,
    REDUCTION_SCHEMAS,
    SCHEMAS,
    StaleMatch,
    apply_rewrite,
    comb_pass,
    find_transform,
)
from skimol.tokens import InsufficientTokens, Ledger

# closed instantiations of every LHS: pattern plus caps for the boundary edges
LHS_FIXTURES = {
    "K-A": "K 1, A 1 a 2, A 2 b c, FRIN a, FRIN b, FROUT c",
    "I-A": "I 1, A 1 a b, FRIN a, FROUT b",
    "I-S": "I a, S a b c, FROUT b, FROUT c",
    "K-S": "K a, S a b c, FROUT b, FROUT c",
    "S-K": "S a b c, K c, FRIN a, FROUT b",
    "S-K2": "S a c b, K c, FRIN a, FROUT b",
    "A-K": "A a b c, K c, FRIN a, FRIN b",
    "A-S": "A a b e, S e c d, FRIN a, FRIN b, FROUT c, FROUT d",
    "S-S": "S a a b, S b c d, FROUT c, FROUT d",
    "S-A": "S 1 1 2, A 2 a 3, A 3 b 4, A 4 c d, FRIN a, FRIN b, FRIN c, FROUT d",
}


def _find_by_name(g, name):
    for nid in g.node_ids():
        m = find_transform(g, nid, REDUCTION_SCHEMAS)
        if m and m.schema.name == name:
            return m
    return None


@pytest.mark.parametrize("name", sorted(LHS_FIXTURES))
def test_each_lhs_matches_its_schema(name):
    g = parse_mol(LHS_FIXTURES[name], line_sep=",")
    matches = set()
    for nid in g.node_ids():
        m = find_transform(g, nid, REDUCTION_SCHEMAS)
        if m:
            matches.add(m.schema.name)
            assert m.anchor == nid
            assert g.node(nid).type == m.schema.right
    assert name in matches
    # the two S-K variants are the only pair that can coexist on one anchor
    assert matches <= {name}


def test_anchor_type_respected():
    g = parse_mol(LHS_FIXTURES["K-A"], line_sep=",")
    anchored = {nid: find_transform(g, nid, REDUCTION_SCHEMAS) for nid in g.node_ids()}
    hits = [m for m in anchored.values() if m]
    assert len(hits) == 1
    (m,) = hits
    assert g.node(m.anchor).type == "A"
    assert g.node(m.anchor).ports[0] == "1"  # the A fed by the K


def test_node_binding_is_injective():
    g = parse_mol(LHS_FIXTURES["S-A"], line_sep=",")
    m = _find_by_name(g, "S-A")
    assert m is not None
    assert len(set(m.nodes)) == len(m.nodes) == 4


def test_is_requires_fanout():
    # S in combinator form cannot duplicate anything through its loop
    g = parse_mol("I a, S b b c, FROUT a, FRIN z, FROUT c, A z a w, FROUT w", line_sep=",")
    assert _find_by_name(g, "I-S") is None


def test_sk_requires_fanout():
    # K capping an S combinator's out edge is inert, not an S-K redex
    g = parse_mol("S a a c, K c", line_sep=",")
    for nid in g.node_ids():
        assert find_transform(g, nid, REDUCTION_SCHEMAS) is None


def test_ss_requires_combinator_then_fanout():
    g = parse_mol(LHS_FIXTURES["S-S"], line_sep=",")
    m = _find_by_name(g, "S-S")
    assert m is not None
    # fanout anchored, combinator found through port 1
    assert g.node(m.anchor).ports[0] == "b"
    # two fanouts chained do not match
    g2 = parse_mol("S x y b, S b c d, FRIN x, FROUT y, FROUT c, FROUT d", line_sep=",")
    assert _find_by_name(g2, "S-S") is None


def test_exhaustive_two_node_s_leaf_configurations():
    """Every closed I/S and K/S two-node graph, against the whole table.

    The only matches are the duplication configurations: leaf at port 1 of
    a fan-out.  Port positions that would need a third endpoint cannot be
    built at all; the rest are inert.
    """
    for leaf in ("I", "K"):
        seen = []
        # leaf edge at S port p, remaining two S ports self-looped
        for p in range(3):
            ports = ["x", "x", "x"]
            ports[p] = "y"
            loop = [i for i in range(3) if i != p]
            g = parse_mol(f"{leaf} y, S {' '.join(ports)}", line_sep=",")
            assert validate(g).ok
            hits = {
                find_transform(g, nid, SCHEMAS).schema.name
                for nid in g.node_ids()
                if find_transform(g, nid, SCHEMAS)
            }
            seen.append((p, tuple(loop), hits))
        # leaf at port 1: ports 2,3 looped -> fanout with looped outputs: matches
        assert seen[0][2] == {"I-S" if leaf == "I" else "K-S"}
        # leaf at port 2: ports 1,3 looped; ports 1 and 2 differ, so for K this
        # is formally a fanout output being pruned; for I nothing applies
        assert seen[1][2] == (set() if leaf == "I" else {"S-K2"})
        # leaf at port 3: ports 1,2 looped -> combinator capped by eraser, inert
        assert seen[2][2] == set()


def test_apply_ka_matches_published_rhs():
    g = parse_mol(LHS_FIXTURES["K-A"], line_sep=",")
    ledger = Ledger("strict")
    ledger.credit("Arrow", 2)
    m = _find_by_name(g, "K-A")
    _, rec = apply_rewrite(g, m, ledger)
    expected = parse_mol(
        "K e, Arrow a c, Arrow b e, FRIN a, FRIN b, FROUT c", line_sep=","
    )
    assert isomorphic(g, expected)
    assert ledger.counts["Arrow"] == 0
    assert ledger.counts["A-A"] == 1
    assert rec.tokens_in == {"Arrow": 2}
    assert rec.tokens_out == {"A-A": 1}
    assert len(rec.minted) == 1
    assert validate(g).ok


def test_apply_sa_neutral():
    g = parse_mol(LHS_FIXTURES["S-A"], line_sep=",")
    ledger = Ledger("strict")
    m = _find_by_name(g, "S-A")
    _, rec = apply_rewrite(g, m, ledger)
    assert validate(g).ok
    assert all(v == 0 for v in ledger.counts.values())
    assert rec.tokens_in == {} and rec.tokens_out == {}
    assert rec.minted == []
    expected = parse_mol(
        "S c 1 2, A a 1 3, A b 2 4, A 3 4 d, FRIN a, FRIN b, FRIN c, FROUT d",
        line_sep=",",
    )
    assert isomorphic(g, expected)


def test_apply_as_consumes_sa_token():
    g = parse_mol(LHS_FIXTURES["A-S"], line_sep=",")
    ledger = Ledger("strict")
    ledger.credit("S-A")
    m = _find_by_name(g, "A-S")
    _, rec = apply_rewrite(g, m, ledger)
    assert validate(g).ok
    assert ledger.counts["S-A"] == 0
    assert len(rec.minted) == 3
    expected = parse_mol(
        "S a e f, S b g h, A e g c, A f h d, FRIN a, FRIN b, FROUT c, FROUT d",
        line_sep=",",
    )
    assert isomorphic(g, expected)


def test_apply_strict_insufficient_tokens():
    g = parse_mol(LHS_FIXTURES["K-A"], line_sep=",")
    ledger = Ledger("strict")
    m = _find_by_name(g, "K-A")
    before = serialize_mol(g)
    with pytest.raises(InsufficientTokens):
        apply_rewrite(g, m, ledger)
    assert serialize_mol(g) == before  # untouched
    assert all(v == 0 for v in ledger.counts.values())


def test_apply_open_automints():
    g = parse_mol(LHS_FIXTURES["K-A"], line_sep=",")
    ledger = Ledger("open")
    m = _find_by_name(g, "K-A")
    apply_rewrite(g, m, ledger)
    assert ledger.mint_log == [{"token": "Arrow", "count": 2}]
    assert ledger.counts["A-A"] == 1


def test_apply_stale_match():
    g = parse_mol(LHS_FIXTURES["I-A"], line_sep=",")
    m = _find_by_name(g, "I-A")
    g.remove_node(m.nodes[0])
    with pytest.raises(StaleMatch):
        apply_rewrite(g, m, Ledger("open"))


def test_node_conservation_per_schema():
    """Nodes leaving the graph equal net token-embodied nodes, per schema."""
    for name, fixture in LHS_FIXTURES.items():
        g = parse_mol(fixture, line_sep=",")
        ledger = Ledger("strict")
        ledger.fund(10)
        baseline = g.node_count + ledger.embodied_total()
        m = _find_by_name(g, name)
        assert m is not None, name
        apply_rewrite(g, m, ledger)
        assert g.node_count + ledger.embodied_total() == baseline, name
        assert validate(g).ok, name


def test_comb_single_rename():
    g = parse_mol("I x, Arrow x y, FROUT y", line_sep=",")
    ledger = Ledger("open")
    _, records = comb_pass(g, ledger)
    assert len(records) == 1
    assert serialize_mol(g) == "I y\nFROUT y"
    assert ledger.counts["Arrow"] == 1


def test_comb_no_arrows():
    g = parse_mol("I a, FROUT a", line_sep=",")
    before = serialize_mol(g)
    _, records = comb_pass(g, Ledger("open"))
    assert records == []
    assert serialize_mol(g) == before


def test_comb_chain():
    g = parse_mol("Arrow a b, Arrow b c, FRIN a, FROUT c", line_sep=",")
    ledger = Ledger("open")
    _, records = comb_pass(g, ledger)
    assert len(records) == 2
    assert ledger.counts["Arrow"] == 2
    assert isomorphic(g, parse_mol("FRIN x, FROUT x", line_sep=","))


def test_comb_leaves_loops():
    g = parse_mol("Arrow a a, I b, FROUT b", line_sep=",")
    _, records = comb_pass(g, Ledger("open"))
    assert records == []
    assert g.type_counts()["Arrow"] == 1


def test_comb_two_cycle_becomes_loop():
    g = parse_mol("Arrow a b, Arrow b a", line_sep=",")
    ledger = Ledger("open")
    _, records = comb_pass(g, ledger)
    assert len(records) == 1
    (node,) = list(g.nodes())
    assert node.type == "Arrow" and node.ports[0] == node.ports[1]


def test_comb_terminates_by_arrow_count():
    g = parse_mol(
        "Arrow a b, Arrow b c, Arrow c d, Arrow d e, FRIN a, FROUT e", line_sep=","
    )
    _, records = comb_pass(g, Ledger("open"))
    assert len(records) == 4
    assert g.type_counts() == {"FRIN": 1, "FROUT": 1}


def test_find_transform_comb_anchor():
    g = parse_mol("I x, Arrow x y, FROUT y", line_sep=",")
    arrow = next(n.id for n in g.nodes() if n.type == "Arrow")
    m = find_transform(g, arrow, SCHEMAS)
    assert m is not None and m.schema.name == "COMB"
    loop = parse_mol("Arrow a a, I b, FROUT b", line_sep=",")
    arrow = next(n.id for n in loop.nodes() if n.type == "Arrow")
    assert find_transform(loop, arrow, SCHEMAS) is None


def test_all_pattern_strings_validate_after_capping():
    """Every with-token pattern is a well-formed open graph."""
    for schema in EXTENDED_VERIFY_TABLE:
        for pattern in (schema.lhs, schema.rhs, schema.lhs_tokens, schema.rhs_tokens):
            if not pattern:
                continue
            g = parse_mol(pattern, line_sep=",")
            assert validate(cap_free_edges(g)).ok, (schema.name, pattern)


def test_minted_names_use_reserved_prefix():
    g = parse_mol(LHS_FIXTURES["A-S"], line_sep=",")
    ledger = Ledger("open")
    m = _find_by_name(g, "A-S")
    _, rec = apply_rewrite(g, m, ledger)
    assert all(name.startswith("Z") for name in rec.minted)
