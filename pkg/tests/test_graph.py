from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from prymdice.graph import (
    CochainVector,
    GraphError,
    GraphFormatError,
    GraphInvolution,
    MultiGraph,
    apply_involution,
    components,
    format_graph_text,
    involution_quotient,
    parse_graph_text,
)
from prymdice.segre import build_cover, load_fixture_file


def test_single_loop_parse():
    g, iota = parse_graph_text("vertex w\nedge l w w\n")
    assert g.num_vertices == 1
    assert g.num_edges == 1
    assert g.is_loop("l")
    assert iota is None


def test_duplicate_edge_label_reports_line():
    text = "vertex a\nvertex b\nedge e a b\nedge e b a\n"
    with pytest.raises(GraphFormatError) as err:
        parse_graph_text(text)
    assert "line 4" in str(err.value)


def test_dangling_endpoint_reports_line():
    text = "vertex a\nedge e a missing\n"
    with pytest.raises(GraphFormatError) as err:
        parse_graph_text(text)
    assert "line 2" in str(err.value)
    assert "missing" in str(err.value)


def test_incidence_incompatible_involution_rejected():
    # e1 maps to e2 but the endpoints do not correspond under iota_v
    text = (
        "vertex a\nvertex b\nvertex c\nvertex d\n"
        "edge e1 a b\nedge e2 a c\n"
        "iota_v a a\niota_v b b\niota_v c c\niota_v d d\n"
        "iota_e e1 e2\n"
    )
    with pytest.raises(GraphFormatError) as err:
        parse_graph_text(text)
    assert "incidence" in str(err.value)


def test_non_involutive_edge_map_rejected():
    text = (
        "vertex a\nvertex b\n"
        "edge e1 a b\nedge e2 a b\nedge e3 a b\n"
        "iota_e e1 e2\niota_e e2 e3\n"
    )
    with pytest.raises(GraphFormatError):
        parse_graph_text(text)


def test_segre_file_parses_to_cover():
    g, iota = load_fixture_file()
    assert g.num_vertices == 10
    assert g.num_edges == 20
    assert iota is not None
    assert iota.is_fixed_point_free()
    built_g, built_i = build_cover()
    assert g == built_g
    assert iota.vertex_map == built_i.vertex_map
    assert iota.edge_map == built_i.edge_map
    assert iota.edge_sign == built_i.edge_sign


def test_round_trip_graph_with_involution():
    g, iota = build_cover()
    text = format_graph_text(g, iota)
    g2, iota2 = parse_graph_text(text)
    assert g2 == g
    assert iota2.vertex_map == iota.vertex_map
    assert iota2.edge_map == iota.edge_map


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 5), st.data())
def test_round_trip_random_graphs(nverts, data):
    verts = [f"v{i}" for i in range(nverts)]
    nedges = data.draw(st.integers(1, 6))
    edges = []
    for k in range(nedges):
        t = data.draw(st.sampled_from(verts))
        h = data.draw(st.sampled_from(verts))
        edges.append((f"e{k}", t, h))
    g = MultiGraph(verts, edges)
    g2, iota2 = parse_graph_text(format_graph_text(g))
    assert g2 == g
    assert iota2 is None


def test_components():
    g, iota = build_cover()
    assert len(components(g)) == 1
    two_loops = MultiGraph(["u", "v"], [("p", "u", "u"), ("q", "v", "v")])
    assert len(components(two_loops)) == 2
    bare = MultiGraph(["a", "b", "c"], [])
    assert len(components(bare)) == 3


def test_edge_sign_computation():
    # involution swaps the endpoints of a fixed edge: orientation reversed
    g = MultiGraph(["u", "v"], [("e", "u", "v"), ("f", "u", "v")])
    iota = GraphInvolution(g, {"u": "v", "v": "u"}, {"e": "e", "f": "f"})
    assert iota.edge_sign == {"e": -1, "f": -1}
    # parallel pair between swapped vertices, edges exchanged: sign is forced
    iota2 = GraphInvolution(g, {"u": "v", "v": "u"}, {"e": "f", "f": "e"})
    assert iota2.edge_sign == {"e": -1, "f": -1}


def test_loop_fixed_by_involution_gets_plus_sign():
    g = MultiGraph(["w"], [("l", "w", "w")])
    iota = GraphInvolution.identity(g)
    assert iota.edge_sign["l"] == 1


def test_apply_involution_is_linear_involution():
    g, iota = build_cover()
    zero = CochainVector.zero(g)
    assert apply_involution(iota, zero) == zero
    v = CochainVector.from_edge_dict(g, {"e1": 1, "e7'": Fraction(-1, 2), "e10": 3})
    w = CochainVector.from_edge_dict(g, {"e2": Fraction(1, 2), "e1": -2})
    assert apply_involution(iota, apply_involution(iota, v)) == v
    left = apply_involution(iota, v + w.scaled(3))
    right = apply_involution(iota, v) + apply_involution(iota, w).scaled(3)
    assert left == right


def test_apply_involution_respects_signs():
    g = MultiGraph(["u", "v"], [("e", "u", "v"), ("f", "u", "v")])
    iota = GraphInvolution(g, {"u": "v", "v": "u"}, {"e": "e", "f": "f"})
    v = CochainVector.from_edge_dict(g, {"e": 1})
    assert apply_involution(iota, v) == CochainVector.from_edge_dict(g, {"e": -1})


def test_cochain_denominator_restriction():
    g = MultiGraph(["u", "v"], [("e", "u", "v")])
    with pytest.raises(GraphError):
        CochainVector(g, [Fraction(1, 3)])


def test_involution_quotient_of_cover_is_k5():
    g, iota = build_cover()
    q = involution_quotient(g, iota)
    assert q.num_vertices == 5
    assert q.num_edges == 10
    pairs = {frozenset(q.endpoints(lab)) for lab in q.edge_labels}
    assert len(pairs) == 10
    assert all(len(p) == 2 for p in pairs)


def test_unknown_directive_and_conflicts():
    with pytest.raises(GraphFormatError):
        parse_graph_text("wat a b\n")
    with pytest.raises(GraphFormatError):
        parse_graph_text(
            "vertex a\nvertex b\nvertex c\n"
            "edge e a b\n"
            "iota_v a b\niota_v a c\n"
        )
