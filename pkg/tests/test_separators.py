import itertools
import pickle

import pytest
from hypothesis import given, settings

from lowcond import (
    INFINITE,
    DomainError,
    UndirectedGraph,
    complete_graph,
    connected_components,
    degree,
    degree_of,
    degree_two,
    degree_two_of,
    empty_graph,
    induced_subgraph,
    is_minimal_separator,
    is_separator,
    min_separator_size,
    minimal_separator_near,
    minimal_separators,
    minimum_separator,
    path_graph,
    separability_order,
    separability_report,
    star_graph,
)

from brute import (
    bfs_component,
    brute_min_separator_size,
    brute_minimal_separators,
    definitional_minimal,
)
from strategies import graphs


def fs(*labels):
    return frozenset(labels)


class TestMinimalSeparators:
    @pytest.mark.parametrize(
        "pair, expected",
        [
            (("1", "3"), {fs("2")}),
            (("1", "4"), {fs("2")}),
            (("2", "5"), {fs("3", "4")}),
            (("1", "5"), {fs("2"), fs("3", "4")}),
        ],
    )
    def test_figure1(self, fig1, backend, pair, expected):
        assert minimal_separators(fig1, *pair) == expected

    def test_disconnected_pair_has_none(self):
        g = UndirectedGraph([1, 2, 3], [(1, 2)])
        assert minimal_separators(g, 1, 3) == set()
        assert is_minimal_separator(g, 1, 3, [])

    def test_adjacent_pair_rejected(self, fig1):
        with pytest.raises(DomainError, match="adjacent"):
            minimal_separators(fig1, "1", "2")
        with pytest.raises(DomainError):
            min_separator_size(fig1, "3", "4")

    def test_same_vertex_rejected(self, fig1):
        with pytest.raises(DomainError):
            is_separator(fig1, "1", "1", [])

    def test_pair_inside_s_rejected(self, fig1):
        with pytest.raises(DomainError):
            is_separator(fig1, "1", "5", ["1", "2"])

    def test_enumeration_cap(self):
        g = path_graph(20)
        with pytest.raises(DomainError, match="capped"):
            minimal_separators(g, "1", "20")

    def test_non_minimal_separator(self, fig1):
        assert is_separator(fig1, "1", "5", ["2", "3"])
        assert not is_minimal_separator(fig1, "1", "5", ["2", "3"])

    @settings(max_examples=60, deadline=None)
    @given(graphs(min_vertices=2, max_vertices=7))
    def test_matches_definitional_enumeration(self, g):
        for a, b in itertools.combinations(g.vertices, 2):
            if g.has_edge(a, b):
                continue
            assert minimal_separators(g, a, b) == (
                brute_minimal_separators(g, a, b) if b in bfs_component(g, a) else set()
            )

    @settings(max_examples=60, deadline=None)
    @given(graphs(min_vertices=3, max_vertices=7))
    def test_component_criterion_matches_definition(self, g):
        a, b = g.vertices[0], g.vertices[-1]
        if g.has_edge(a, b) or b not in bfs_component(g, a):
            return
        rest = g.vertices[1:-1]
        for r in range(len(rest) + 1):
            for S in itertools.combinations(rest, r):
                assert is_minimal_separator(g, a, b, S) == definitional_minimal(g, a, b, S)


class TestMinimumSeparator:
    def test_figure1(self, fig1):
        assert min_separator_size(fig1, "1", "5") == 1
        assert minimum_separator(fig1, "1", "5") == fs("2")
        assert min_separator_size(fig1, "2", "5") == 2

    def test_disconnected(self):
        g = empty_graph(3)
        assert min_separator_size(g, "1", "2") == 0
        assert minimum_separator(g, "1", "2") == frozenset()

    @settings(max_examples=100, deadline=None)
    @given(graphs(min_vertices=2, max_vertices=8))
    def test_size_matches_brute_force(self, g):
        for a, b in itertools.combinations(g.vertices, 2):
            if g.has_edge(a, b):
                continue
            size = min_separator_size(g, a, b)
            assert size == brute_min_separator_size(g, a, b)
            sep = minimum_separator(g, a, b)
            assert len(sep) == size
            if size:
                assert is_minimal_separator(g, a, b, sep)


class TestSeparatorNear:
    @pytest.mark.parametrize(
        "graph, pair, expected",
        [
            ("fig1", ("1", "5"), {"2"}),
            ("fig1", ("2", "5"), {"3", "4"}),
            ("path4", ("1", "4"), {"2"}),
        ],
    )
    def test_examples(self, fig1, graph, pair, expected):
        g = fig1 if graph == "fig1" else path_graph(4)
        sep = minimal_separator_near(g, *pair)
        assert sep == expected
        assert is_minimal_separator(g, *pair, sep)

    def test_different_components(self):
        with pytest.raises(DomainError, match="components"):
            minimal_separator_near(empty_graph(2), "1", "2")

    @settings(max_examples=100, deadline=None)
    @given(graphs(min_vertices=3, max_vertices=9))
    def test_properties(self, g):
        for a, b in itertools.permutations(g.vertices, 2):
            if g.has_edge(a, b) or b not in bfs_component(g, a):
                continue
            sep = minimal_separator_near(g, a, b)
            assert sep <= g.neighbors(a)
            assert is_minimal_separator(g, a, b, sep)
            assert all(g.degree(v) >= 2 for v in sep)


class TestParameters:
    def test_figure1(self, fig1):
        assert separability_order(fig1) == 2
        assert degree(fig1) == 3
        assert degree_two(fig1) == 3
        assert degree_of(fig1, "1") == 1
        assert degree_two_of(fig1, "1") == 1

    def test_star(self, star):
        assert (separability_order(star), degree(star), degree_two(star)) == (1, 3, 1)
        assert degree_two_of(star, "1") == 0

    def test_complete_is_infinite(self):
        assert separability_order(complete_graph(5)) is INFINITE
        assert separability_order(complete_graph(1)) is INFINITE
        assert separability_order(UndirectedGraph([])) is INFINITE

    def test_empty_graph(self):
        assert separability_order(empty_graph(4)) == 0
        assert degree(empty_graph(4)) == 0
        assert degree_two(empty_graph(4)) == 0

    def test_no_vertices(self):
        with pytest.raises(DomainError):
            degree(UndirectedGraph([]))
        with pytest.raises(DomainError):
            degree_two(UndirectedGraph([]))

    def test_infinite_ordering(self):
        assert INFINITE > 10**9
        assert not INFINITE < 3
        assert 3 < INFINITE
        assert max([2, INFINITE, 5]) is INFINITE
        assert INFINITE == INFINITE
        assert str(INFINITE) == "infinite"
        assert pickle.loads(pickle.dumps(INFINITE)) is INFINITE

    @settings(max_examples=150, deadline=None)
    @given(graphs(min_vertices=1, max_vertices=9))
    def test_bounds(self, g):
        so = separability_order(g)
        if g.is_complete():
            assert so is INFINITE
            return
        assert so <= degree(g)
        assert so <= degree_two(g)

    @settings(max_examples=100, deadline=None)
    @given(graphs(min_vertices=2, max_vertices=8))
    def test_degree_two_monotone_under_edge_addition(self, g):
        d2 = degree_two(g)
        for u, v in itertools.combinations(g.vertices, 2):
            if not g.has_edge(u, v):
                assert degree_two(g.with_edges([(u, v)])) >= d2

    @settings(max_examples=100, deadline=None)
    @given(graphs(min_vertices=2, max_vertices=8))
    def test_so_zero_iff_every_component_complete(self, g):
        so = separability_order(g)
        cliques = all(induced_subgraph(g, c).is_complete() for c in connected_components(g))
        assert (so == 0) == (cliques and not g.is_complete())


class TestReport:
    def test_figure1(self, fig1):
        rep = separability_report(fig1)
        assert (rep.so, rep.d, rep.d2) == (2, 3, 3)
        assert rep.witness == ("2", "5", fs("3", "4"))
        doc = rep.to_dict()
        assert doc["so"] == 2
        assert doc["witness"] == {"a": "2", "b": "5", "separator": ["3", "4"]}
        assert {"a": "1", "b": "5", "order": 1} in doc["pairs"]
        assert doc["components"] == [["1", "2", "3", "4", "5"]]

    def test_complete(self):
        doc = separability_report(complete_graph(5)).to_dict()
        assert doc["so"] == "infinite"
        assert doc["witness"] is None
        assert doc["pairs"] == []

    def test_star(self, star):
        rep = separability_report(star)
        assert (rep.so, rep.d, rep.d2) == (1, 3, 1)

    @settings(max_examples=60, deadline=None)
    @given(graphs(min_vertices=2, max_vertices=8))
    def test_witness_attains_so(self, g):
        rep = separability_report(g)
        if rep.witness is None:
            assert g.is_complete()
            return
        a, b, sep = rep.witness
        assert len(sep) == rep.so
        assert is_separator(g, a, b, sep)
        assert max(rep.pair_orders.values()) == rep.so


def test_star_fixture_shape():
    g = star_graph(3)
    assert g.degree("1") == 3
    assert all(g.degree(v) == 1 for v in ("2", "3", "4"))
