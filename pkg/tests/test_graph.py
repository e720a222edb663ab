import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lowcond import (
    DomainError,
    ParseError,
    UndirectedGraph,
    UnknownVertexError,
    ValidationError,
    all_graphs,
    complete_graph,
    connected_components,
    covariance_separates,
    empty_graph,
    induced_subgraph,
    neighbors,
    parse_graph,
    path_graph,
    random_graph,
    separates,
    serialize_graph,
)

from brute import path_separates
from strategies import graphs


class TestParse:
    def test_figure1_fixture(self, fig1):
        assert len(fig1) == 5
        assert fig1.number_of_edges() == 6
        assert fig1.edges() == [("1", "2"), ("2", "3"), ("2", "4"), ("3", "4"), ("3", "5"), ("4", "5")]

    def test_single_vertex(self):
        g = parse_graph("vertices: a\n")
        assert g.vertices == ("a",)
        assert g.number_of_edges() == 0

    def test_duplicate_edges_collapse(self):
        g = parse_graph("vertices: 1 2\n1 2\n2 1")
        assert g.number_of_edges() == 1

    def test_isolated_declared_vertices_kept(self):
        g = parse_graph("vertices: x y z\nx y\n")
        assert g.vertices == ("x", "y", "z")
        assert g.degree("z") == 0

    def test_undeclared_labels_added(self):
        g = parse_graph("# comment\n\na b\nb c\n")
        assert g.vertices == ("a", "b", "c")

    def test_malformed_line_reports_line_number(self):
        with pytest.raises(ParseError) as info:
            parse_graph("vertices: 1 2\n1 2\n1 2 3\n")
        assert info.value.lineno == 3

    def test_loop_rejected(self):
        with pytest.raises(ValidationError, match="loop"):
            parse_graph("1 1\n")

    def test_header_after_edges_rejected(self):
        with pytest.raises(ParseError):
            parse_graph("1 2\nvertices: 1 2 3\n")

    @settings(max_examples=100, deadline=None)
    @given(graphs(max_vertices=8))
    def test_roundtrip(self, g):
        assert parse_graph(serialize_graph(g)) == g

    def test_serialize_rejects_whitespace_labels(self):
        with pytest.raises(DomainError):
            serialize_graph(UndirectedGraph(["a b"]))


class TestGraph:
    def test_constructor_rejects_loops(self):
        with pytest.raises(ValidationError):
            UndirectedGraph([1, 2], [(1, 1)])

    def test_from_masks_checks_symmetry(self):
        with pytest.raises(ValidationError, match="asymmetric"):
            UndirectedGraph.from_masks(["a", "b"], [0b10, 0])

    def test_symmetry_and_no_loops(self):
        for g in all_graphs(4):
            for u, v in itertools.product(g.vertices, repeat=2):
                assert g.has_edge(u, v) == g.has_edge(v, u)
                if u == v:
                    assert not g.has_edge(u, v)

    def test_value_semantics(self, fig1):
        same = UndirectedGraph(fig1.vertices, reversed(fig1.edges()))
        assert same == fig1 and hash(same) == hash(fig1)
        assert fig1 != fig1.with_edges([("1", "5")])

    def test_unknown_vertex(self, fig1):
        with pytest.raises(UnknownVertexError):
            neighbors(fig1, "9")


class TestNeighbors:
    def test_figure1_vertex2(self, fig1):
        assert neighbors(fig1, "2") == {"1", "3", "4"}

    def test_complete(self):
        g = complete_graph(4)
        for v in g.vertices:
            assert neighbors(g, v) == set(g.vertices) - {v}

    def test_empty(self):
        g = empty_graph(4)
        assert all(neighbors(g, v) == frozenset() for v in g.vertices)


class TestComponents:
    def test_figure1_connected(self, fig1):
        assert connected_components(fig1) == [frozenset("12345")]

    def test_edge_plus_isolated(self):
        g = UndirectedGraph([1, 2, 3], [(1, 2)])
        assert connected_components(g) == [{1, 2}, {3}]

    def test_empty_graph(self):
        assert len(connected_components(empty_graph(4))) == 4

    @settings(max_examples=100, deadline=None)
    @given(graphs())
    def test_partition_properties(self, g):
        blocks = connected_components(g)
        assert sorted(v for b in blocks for v in b) == sorted(g.vertices)
        for blk in blocks:
            assert induced_subgraph(g, blk).is_connected()
        for u, v in g.edges():
            assert any(u in b and v in b for b in blocks)


class TestInducedSubgraph:
    def test_triangle(self, fig1):
        h = induced_subgraph(fig1, ["3", "4", "5"])
        assert h == UndirectedGraph(["3", "4", "5"], [("3", "4"), ("3", "5"), ("4", "5")])

    def test_identity(self, fig1):
        assert induced_subgraph(fig1, fig1.vertices) == fig1

    def test_empty(self, fig1):
        assert len(induced_subgraph(fig1, [])) == 0

    def test_outside_vertices(self, fig1):
        with pytest.raises(UnknownVertexError):
            induced_subgraph(fig1, ["1", "7"])


class TestSeparates:
    def test_figure1(self, fig1, backend):
        assert separates(fig1, {"1"}, {"5"}, {"2"})
        assert not separates(fig1, {"1"}, {"5"}, {"3"})
        assert not path_separates(fig1, ["1"], ["5"], ["3"])

    def test_distinct_components(self):
        g = UndirectedGraph([1, 2, 3, 4], [(1, 2), (3, 4)])
        assert separates(g, [1], [3], [])

    def test_domain_errors(self, fig1):
        with pytest.raises(DomainError):
            separates(fig1, [], ["2"], [])
        with pytest.raises(DomainError):
            separates(fig1, ["1"], ["1", "2"], [])
        with pytest.raises(DomainError):
            separates(fig1, ["1"], ["5"], ["1"])

    def test_covariance_examples(self, fig1):
        p = path_graph(3)
        assert covariance_separates(p, ["1"], ["3"], [])
        assert not covariance_separates(p, ["1"], ["3"], ["2"])
        assert covariance_separates(fig1, ["1"], ["5"], ["3", "4"])

    @settings(max_examples=40, deadline=None)
    @given(graphs(min_vertices=2, max_vertices=7), st.data())
    def test_agrees_with_path_enumeration(self, g, data):
        n = len(g)
        role = data.draw(st.lists(st.integers(0, 2), min_size=n, max_size=n))
        # 0 -> A, 1 -> B, 2 -> S/other split further below
        A = [v for v, r in zip(g.vertices, role) if r == 0]
        B = [v for v, r in zip(g.vertices, role) if r == 1]
        rest = [v for v, r in zip(g.vertices, role) if r == 2]
        if not A or not B:
            return
        S = [v for v in rest if data.draw(st.booleans())]
        assert separates(g, A, B, S) == path_separates(g, A, B, S)
        others = set(g.vertices) - set(A) - set(B) - set(S)
        assert covariance_separates(g, A, B, S) == path_separates(g, A, B, others)
        assert separates(g, A, B, S) == separates(g, B, A, S)


@pytest.mark.parametrize("n", [4, 5, 6])
def test_separation_monotone_in_conditioning_set(n):
    rng = random.Random(n)
    for _ in range(25):
        g = random_graph(n, rng.uniform(0.2, 0.7), rng)
        for a, b in itertools.combinations(g.vertices, 2):
            rest = [v for v in g.vertices if v not in (a, b)]
            subsets = [set(c) for r in range(len(rest) + 1) for c in itertools.combinations(rest, r)]
            for S in subsets:
                if not separates(g, [a], [b], S):
                    continue
                for T in subsets:
                    if S <= T:
                        assert separates(g, [a], [b], T)
