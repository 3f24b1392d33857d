
import pytest
from hypothesis import given, strategies as st

from cbn_control.errors import ConstantUpdateError, ParseError
from cbn_control.model import (
    CBCN,
    CBN,
    NodeClass,
    UndirectedGraph,
    build_dependency_graph,
    classify_node,
    complement_state,
    dbn_to_cbn,
    format_cbn,
    format_edge_list,
    int_to_state,
    parse_bits,
    parse_cbn,
    parse_edge_list,
    state_to_int,
    to_dot,
)
from cbn_control.synthesis import step

from conftest import all_cbns, all_states


def test_parse_example1():
    net = parse_cbn("X1 = X2\nX2 = X1 & X2")
    assert isinstance(net, CBN)
    assert net.n == 2
    assert net.inputs(1) == {2}
    assert net.inputs(2) == {1, 2}


def test_parse_controlled_marker():
    net = parse_cbn("X1 = X2\nX2 = ?")
    assert isinstance(net, CBCN)
    assert net.controlled == {2}


def test_parse_dedupes_and_ignores_comments_and_order():
    net = parse_cbn("# header\n\nX2 = X1 & X1   # twice\nX1 = X2\n")
    assert net.inputs(2) == {1}
    assert net.inputs(1) == {2}


@pytest.mark.parametrize("text", ["X1 = 1", "X1 = 0", "X1 =", "X1 = X1 & true", "X1 = X1\nX2 = X1 & 0"])
def test_constant_updates_rejected(text):
    with pytest.raises(ConstantUpdateError, match="constant"):
        parse_cbn(text)


@pytest.mark.parametrize(
    "text, message",
    [
        ("X1 = X3\nX2 = X1", "out of range"),
        ("X1 = X2\nX1 = X1\nX2 = X1", "duplicate"),
        ("X1 = X3\nX3 = X1", "X2 has no definition"),
        ("X1 X2", "expected"),
        ("X1 = X2 | X1\nX2 = X1", "mixed operators"),
        ("X1 = X2 &\nX2 = X1", "bad term"),
        ("A = B", "undefined variable"),
        ("", "no variables"),
    ],
)
def test_parse_errors(text, message):
    with pytest.raises(ParseError, match=message):
        parse_cbn(text)


def test_named_variables_indexed_by_definition_order():
    net = parse_cbn("E1_3 = E1_3\nV1 = E1_3\nV3 = E1_3")
    assert net.names == ("E1_3", "V1", "V3")
    assert net.inputs(3) == {1}


@st.composite
def networks(draw):
    n = draw(st.integers(1, 6))
    sets = [draw(st.frozensets(st.integers(1, n), min_size=1)) for _ in range(n)]
    controlled = draw(st.frozensets(st.integers(1, n)))
    sets = [frozenset() if i + 1 in controlled else s for i, s in enumerate(sets)]
    return CBCN(sets, controlled)


@given(networks())
def test_round_trip(net):
    parsed = parse_cbn(format_cbn(net))
    again = parse_cbn(format_cbn(parsed))
    assert again == parsed
    assert list(parsed.update_sets) == list(net.update_sets)
    assert getattr(parsed, "controlled", frozenset()) == net.controlled


@given(networks())
def test_in_degrees(net):
    g = build_dependency_graph(net)
    for i in g.simple_nodes:
        if i in net.controlled:
            assert g.in_nbrs[i] == (g.generator_of(i),)
        else:
            assert len(g.in_nbrs[i]) == len(net.inputs(i))
        assert len(g.in_nbrs[i]) >= 1
    for u in g.generators:
        assert g.in_nbrs[u] == ()
        assert len(g.out_nbrs[u]) == 1


def test_fully_controlled_graph():
    net = CBCN.from_cbn(CBN([{1, 2}, {1, 3}, {2}]), {1, 2, 3})
    g = build_dependency_graph(net)
    for i in g.simple_nodes:
        assert g.in_nbrs[i] == (3 + i,)


def test_dependency_graph_eq5(eq5):
    g = build_dependency_graph(eq5)
    assert set(g.arcs()) == {(4, 1), (5, 2), (1, 3), (2, 3)}
    assert g.label(4) == "U1"


def test_dependency_graph_example1(example1):
    g = build_dependency_graph(example1)
    assert set(g.arcs()) == {(2, 1), (1, 2), (2, 2)}


def test_control_removes_self_loop():
    g = build_dependency_graph(CBCN.from_cbn(CBN([{1}]), {1}))
    assert set(g.arcs()) == {(2, 1)}


def test_classify_nodes(eq5, example1):
    g = build_dependency_graph(eq5)
    assert NodeClass.CHANNEL in classify_node(g, 2)
    assert NodeClass.DIRECTLY_CONTROLLED in classify_node(g, 2)
    assert classify_node(g, 4) == NodeClass.GENERATOR
    assert classify_node(g, 3) == NodeClass.PLAIN_SIMPLE
    g1 = build_dependency_graph(example1)
    assert classify_node(g1, 2) == NodeClass.PLAIN_SIMPLE
    assert classify_node(g1, 1) == NodeClass.CHANNEL
    with pytest.raises(KeyError):
        classify_node(g1, 3)


def test_dot_export(eq5):
    dot = to_dot(build_dependency_graph(eq5))
    assert dot.startswith("digraph")
    assert '"U1" [shape=box];' in dot
    assert '"X1" -> "X3";' in dot


def test_dbn_to_cbn_same_wiring():
    assert dbn_to_cbn("X1 = X2 | X3\nX2 = X1\nX3 = X3").inputs(1) == {2, 3}
    assert dbn_to_cbn("X1 = X1").update_sets == (frozenset({1}),)
    with pytest.raises(ParseError, match="mixed"):
        dbn_to_cbn("X1 = X1 & X2\nX2 = X1")
    with pytest.raises(ParseError):
        dbn_to_cbn("X1 = ?")


def _or_step(sets, x):
    return tuple(1 if any(x[j - 1] for j in s) else 0 for s in sets)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_dbn_trajectories_are_complemented(n):
    for cbn in all_cbns(n):
        text = "\n".join(
            f"X{i} = " + " | ".join(f"X{j}" for j in sorted(s))
            for i, s in enumerate(cbn.update_sets, start=1)
        )
        converted = dbn_to_cbn(text)
        assert converted == cbn
        assert build_dependency_graph(converted).out_nbrs == build_dependency_graph(cbn).out_nbrs
        for s in all_states(n):
            x_or, x_and = s, complement_state(s)
            for _ in range(n + 1):
                x_or, x_and = _or_step(cbn.update_sets, x_or), step(converted, x_and)
                assert x_or == complement_state(x_and)


def test_state_encoding():
    assert state_to_int((1, 0, 1)) == 5
    assert int_to_state(5, 3) == (1, 0, 1)
    assert parse_bits("011") == (0, 1, 1)
    with pytest.raises(ValueError):
        parse_bits("012")
    with pytest.raises(ValueError):
        parse_bits("01", 3)
    for code in range(16):
        assert state_to_int(int_to_state(code, 4)) == code


def test_edge_list_round_trip(fig1_graph):
    assert fig1_graph.edges == ((1, 3), (2, 3), (3, 4))
    assert parse_edge_list(format_edge_list(fig1_graph)) == fig1_graph
    assert fig1_graph.neighbors(3) == {1, 2, 4}


@pytest.mark.parametrize(
    "text, message",
    [
        ("1 2", "first line"),
        ("p 3 1\n1 1", "self-edge"),
        ("p 3 2\n1 2\n2 1", "duplicate"),
        ("p 3 1\n1 4", "outside"),
        ("p 3 2\n1 2", "announces 2"),
    ],
)
def test_edge_list_errors(text, message):
    with pytest.raises(ParseError, match=message):
        parse_edge_list(text)


def test_undirected_graph_validation():
    with pytest.raises(ValueError):
        UndirectedGraph(2, ((1, 1),))
    assert UndirectedGraph(3, ((2, 1),)).isolated_vertices() == [3]
