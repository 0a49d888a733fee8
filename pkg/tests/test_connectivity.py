import itertools

import networkx as nx
import pytest
from hypothesis import given

from strongsub.connectivity import (
    CutCertificate,
    has_path,
    is_minimally_strong,
    is_strong,
    local_vertex_connectivity,
    minimal_strong_spanning_subgraph,
    strong_components,
    vertex_connectivity,
)
from strongsub.digraph import biorientation, from_arc_list
from strongsub.errors import NotStrongError, VertexRangeError
from strongsub.generators import (
    complete_digraph,
    directed_cycle,
    symmetric_join,
    symmetric_tree,
)

from conftest import digraphs


def to_nx(d):
    g = nx.DiGraph()
    g.add_nodes_from(range(d.n))
    g.add_edges_from(d.arcs)
    return g


def brute_connectivity(d):
    """Smallest Q whose removal leaves a non-strong digraph or at most one vertex."""
    n = d.n
    for size in range(n):
        for Q in itertools.combinations(range(n), size):
            rest = [v for v in range(n) if v not in Q]
            if len(rest) <= 1:
                return size
            sub, _ = d.induced_subgraph(rest)
            if not is_strong(sub):
                return size
    return n - 1


class TestComponents:
    def test_cycle(self):
        assert strong_components(directed_cycle(5)) == [[0, 1, 2, 3, 4]]

    def test_two_cycle_and_isolated(self):
        d = from_arc_list(3, [(0, 1), (1, 0)])
        assert sorted(strong_components(d)) == [[0, 1], [2]]

    def test_arcless(self):
        assert len(strong_components(from_arc_list(3, []))) == 3

    def test_topological_order(self):
        # 0 <-> 1 feeds 2 <-> 3
        d = from_arc_list(4, [(2, 3), (3, 2), (0, 1), (1, 0), (1, 2)])
        assert strong_components(d) == [[0, 1], [2, 3]]

    def test_is_strong(self):
        assert is_strong(complete_digraph(2))
        assert not is_strong(from_arc_list(2, [(0, 1)]))
        assert is_strong(directed_cycle(7))


class TestLocalConnectivity:
    def test_cycle(self):
        assert local_vertex_connectivity(directed_cycle(5), 0, 2) == 1

    def test_k5_minus_arc(self):
        d = complete_digraph(5).delete_arcs([(0, 1)])
        assert local_vertex_connectivity(d, 0, 1) == 3

    def test_join_independent_pair(self):
        assert local_vertex_connectivity(symmetric_join(2, 6), 4, 5) == 2

    def test_same_vertex(self):
        with pytest.raises(VertexRangeError):
            local_vertex_connectivity(directed_cycle(3), 1, 1)


class TestVertexConnectivity:
    def test_complete(self):
        value, cert = vertex_connectivity(complete_digraph(4))
        assert value == 3 and cert.kind == "complete"

    def test_cycle(self):
        assert vertex_connectivity(directed_cycle(6))[0] == 1

    @pytest.mark.parametrize("k,n", [(2, 6), (2, 7), (3, 9)])
    def test_join(self, k, n):
        d = symmetric_join(k, n)
        value, cert = vertex_connectivity(d)
        assert value == k
        assert cert.verify(d) and len(cert.cut) == k

    def test_not_strong_is_zero(self):
        value, cert = vertex_connectivity(from_arc_list(3, [(0, 1), (1, 2)]))
        assert value == 0 and cert.cut == () and cert.verify(from_arc_list(3, [(0, 1), (1, 2)]))

    def test_certificate_json(self):
        _, cert = vertex_connectivity(directed_cycle(4))
        data = cert.to_json()
        assert data["kind"] == "vertex-cut" and len(data["separated_pair"]) == 2
        assert CutCertificate(**{**data, "cut": tuple(data["cut"]),
                                 "separated_pair": tuple(data["separated_pair"])}) == cert


class TestMinimalStrong:
    def test_cycle_is_fixed(self):
        assert minimal_strong_spanning_subgraph(directed_cycle(5)) == directed_cycle(5)

    def test_complete4(self):
        h = minimal_strong_spanning_subgraph(complete_digraph(4))
        assert 4 <= h.size <= 6 and is_minimally_strong(h)

    def test_star_is_fixed(self):
        star = symmetric_tree(4, "star")
        assert minimal_strong_spanning_subgraph(star) == star and star.size == 6

    def test_not_strong(self):
        with pytest.raises(NotStrongError):
            minimal_strong_spanning_subgraph(from_arc_list(3, [(0, 1)]))

    def test_is_minimally_strong(self):
        assert is_minimally_strong(directed_cycle(5))
        assert not is_minimally_strong(complete_digraph(3))
        assert is_minimally_strong(biorientation(5, [(0, 1), (1, 2), (1, 3), (3, 4)]))


@given(digraphs(max_n=6))
def test_components_match_networkx(d):
    ours = sorted(map(tuple, strong_components(d)))
    theirs = sorted(tuple(sorted(c)) for c in nx.strongly_connected_components(to_nx(d)))
    assert ours == theirs
    assert is_strong(d) == nx.is_strongly_connected(to_nx(d))


@given(digraphs(max_n=6))
def test_components_are_topologically_ordered(d):
    comps = strong_components(d)
    where = {v: i for i, c in enumerate(comps) for v in c}
    assert all(where[u] <= where[v] for u, v in d.arcs)


@given(digraphs(min_n=2, max_n=6))
def test_vertex_connectivity_matches_brute_force(d):
    value, cert = vertex_connectivity(d)
    assert value == brute_connectivity(d)
    assert cert.verify(d)
    if cert.kind == "vertex-cut" and value > 0:
        assert len(cert.cut) == value


@given(digraphs(min_n=2, max_n=6))
def test_vertex_connectivity_below_degrees(d):
    assert vertex_connectivity(d)[0] <= min(d.min_degrees())


@given(digraphs(min_n=3, max_n=6))
def test_local_connectivity_matches_networkx(d):
    g = to_nx(d)
    for x, y in itertools.permutations(range(d.n), 2):
        if not d.has_arc(x, y):
            expected = len(list(nx.node_disjoint_paths(g, x, y))) if nx.has_path(g, x, y) else 0
            assert local_vertex_connectivity(d, x, y) == expected


@given(digraphs(min_n=2, max_n=6))
def test_minimal_strong_spanning_properties(d):
    if not is_strong(d):
        return
    h = minimal_strong_spanning_subgraph(d)
    assert set(h.arcs) <= set(d.arcs)
    assert is_minimally_strong(h)
    assert d.n <= h.size <= 2 * d.n - 2 or d.n == 1
    assert minimal_strong_spanning_subgraph(d) == h


@given(digraphs(min_n=2, max_n=5))
def test_has_path_matches_networkx(d):
    g = to_nx(d)
    for x, y in itertools.permutations(range(d.n), 2):
        assert has_path(d, x, y) == nx.has_path(g, x, y)
