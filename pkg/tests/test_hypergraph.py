"""Structural primitives: neighbourhoods, link graphs, shared-neighbour
adjacency, 2-linked pieces, linearity, regularity, loose-cycle girth."""

import pytest
from hypothesis import given, settings

from hypercount import (Hypergraph, InputError, Vertex, find_loose_cycle,
                        gen_linear_regular, girth_at_most, is_loose_cycle,
                        loose_cycle_gadget)
from hypercount.errors import BudgetExceeded

from conftest import matching, partite_hypergraphs, two_shared


V = Vertex


class TestConstruction:
    def test_rejects_bad_uniformity(self):
        with pytest.raises(InputError):
            Hypergraph.build(1, [1], [[(0, 0)]])

    def test_rejects_duplicate_edges(self):
        with pytest.raises(InputError, match="duplicate"):
            Hypergraph.build(3, [1, 1, 1],
                             [[(0, 0), (1, 0), (2, 0)],
                              [(2, 0), (0, 0), (1, 0)]])

    def test_rejects_out_of_range(self):
        with pytest.raises(InputError):
            Hypergraph.build(3, [1, 1, 1], [[(0, 0), (1, 0), (2, 5)]])

    def test_rejects_class_violation(self):
        with pytest.raises(InputError):
            Hypergraph.build(3, [2, 2, 2], [[(0, 0), (0, 1), (1, 0)]])

    def test_edges_are_canonical(self):
        G = Hypergraph.build(3, [2, 2, 2],
                             [[(2, 1), (0, 1), (1, 0)],
                              [(1, 1), (2, 0), (0, 0)]])
        assert G.edges == ((V(0, 0), V(1, 1), V(2, 0)),
                           (V(0, 1), V(1, 0), V(2, 1)))

    def test_incidence_rebuild(self, edge3):
        rebuilt = {v: [] for v in edge3.vertices()}
        for i, e in enumerate(edge3.edges):
            for v in e:
                rebuilt[v].append(i)
        assert {v: tuple(ix) for v, ix in rebuilt.items()} == edge3.incidence


class TestNeighborhood:
    def test_single_edge(self, edge3):
        assert edge3.neighborhood([V(0, 0)]) == {V(1, 0), V(2, 0)}

    def test_whole_vertex_set(self, edge3):
        assert edge3.neighborhood(list(edge3.vertices())) == frozenset()

    def test_two_edges_through_vertex(self):
        G = two_shared(3)
        assert G.neighborhood([V(0, 0)]) == {V(1, 0), V(1, 1), V(2, 0), V(2, 1)}

    def test_bad_vertex(self, edge3):
        with pytest.raises(InputError):
            edge3.neighborhood([V(0, 7)])


class TestLinkGraph:
    def test_single_edge(self, edge3):
        L = edge3.link_graph([V(0, 0)])
        assert L.uniformity == 2
        assert L.edges == {frozenset({V(1, 0), V(2, 0)})}
        assert L.vertices == edge3.neighborhood([V(0, 0)])

    def test_linear_regular_singleton_is_matching(self):
        G = gen_linear_regular(3, 5, 2, seed=3)
        L = G.link_graph([V(0, 0)])
        assert len(L.edges) == 2
        e1, e2 = sorted(L.edges, key=sorted)
        assert not (e1 & e2)

    def test_pair_with_one_common_neighbor(self):
        # two vertices sharing exactly one neighbour: 2r-2 disjoint residues
        # plus two residues meeting in the shared vertex, 7 vertices for k=3
        G = gen_linear_regular(3, 6, 2, seed=0, min_girth=5)
        v = V(0, 0)
        u = sorted(G.distance_two_neighbors(v))[0]
        L = G.link_graph([v, u])
        assert len(L.vertices) == 7
        edges = sorted(L.edges, key=sorted)
        sharing = [(a, b) for i, a in enumerate(edges)
                   for b in edges[i + 1:] if a & b]
        assert len(sharing) == 1 and len(sharing[0][0] & sharing[0][1]) == 1

    def test_requires_single_class(self, edge3):
        with pytest.raises(InputError):
            edge3.link_graph([V(0, 0), V(1, 0)])
        with pytest.raises(InputError):
            edge3.link_graph([])


class TestDistanceTwo:
    def test_single_edge_has_none(self, edge3):
        assert edge3.distance_two_neighbors(V(0, 0)) == frozenset()

    def test_shared_neighbor_forces_adjacency(self):
        G = Hypergraph.build(3, [2, 1, 2],
                             [[(0, 0), (1, 0), (2, 0)],
                              [(0, 1), (1, 0), (2, 1)]])
        assert G.distance_two_neighbors(V(0, 0)) == {V(0, 1)}

    def test_girth5_degree(self):
        k, r = 3, 2
        G = gen_linear_regular(k, 6, r, seed=1, min_girth=5)
        for v in G.class_vertices(0):
            assert len(G.distance_two_neighbors(v)) == (k - 1) * r * (r - 1)


class TestTwoLinkedComponents:
    def test_singleton(self, edge3):
        assert edge3.two_linked_components([V(0, 0)]) == [{V(0, 0)}]

    def test_unrelated_vertices_split(self):
        G = matching(3, 2)
        comps = G.two_linked_components([V(0, 0), V(0, 1)])
        assert comps == [{V(0, 0)}, {V(0, 1)}]

    def test_shared_neighbor_joins(self):
        G = Hypergraph.build(3, [2, 1, 2],
                             [[(0, 0), (1, 0), (2, 0)],
                              [(0, 1), (1, 0), (2, 1)]])
        assert G.two_linked_components([V(0, 0), V(0, 1)]) == [{V(0, 0), V(0, 1)}]

    def test_empty(self, edge3):
        assert edge3.two_linked_components([]) == []


class TestGlobalChecks:
    def test_single_edge_linear(self, edge3):
        assert edge3.is_linear()

    def test_double_overlap_not_linear(self):
        G = Hypergraph.build(3, [1, 1, 2],
                             [[(0, 0), (1, 0), (2, 0)],
                              [(0, 0), (1, 0), (2, 1)]])
        assert not G.is_linear()
        w = G.linearity_witness()
        assert len(frozenset(w[0]) & frozenset(w[1])) >= 2

    def test_generated_is_linear_regular(self):
        G = gen_linear_regular(4, 5, 2, seed=9)
        assert G.is_linear()
        assert G.regular_degree() == 2

    def test_regular_degree_absent(self):
        G = two_shared(3)
        assert G.regular_degree() is None

    def test_single_edge_degree(self, edge3):
        assert edge3.regular_degree() == 1


class TestGirth:
    def test_loose_triangle(self):
        # three edges pairwise meeting in single vertices, all distinct
        G = Hypergraph.build(3, [2, 2, 2],
                             [[(0, 0), (1, 0), (2, 0)],
                              [(0, 1), (1, 0), (2, 1)],
                              [(0, 1), (1, 1), (2, 0)]])
        assert girth_at_most(G, 3)
        w = find_loose_cycle(G, 3)
        assert is_loose_cycle(G, w) and len(w) == 6

    def test_single_edge_acyclic(self, edge3):
        for limit in (3, 4, 5, 8):
            assert not girth_at_most(edge3, limit)

    def test_generated_girth5(self):
        G = gen_linear_regular(3, 6, 2, seed=5, min_girth=5)
        assert not girth_at_most(G, 4)

    def test_gadget_has_loose_four_cycle(self):
        G = loose_cycle_gadget(3)
        assert not girth_at_most(G, 3)
        assert girth_at_most(G, 4)
        assert is_loose_cycle(G, find_loose_cycle(G, 4))

    def test_gadget_other_uniformities(self):
        for k in (4, 5):
            G = loose_cycle_gadget(k, seed=k)
            assert girth_at_most(G, 4)
            w = find_loose_cycle(G, 4)
            assert is_loose_cycle(G, w) and len(w) == 4 * (k - 1)

    def test_budget_refusal(self):
        G = gen_linear_regular(3, 8, 2, seed=2)
        with pytest.raises(BudgetExceeded):
            find_loose_cycle(G, 8, node_cap=3)

    def test_bad_limit(self, edge3):
        with pytest.raises(InputError):
            girth_at_most(edge3, 2)


def _brute_has_loose_cycle(G, max_length):
    """Oracle: try every cyclic edge arrangement.  A loose cycle is exactly a
    cyclic sequence of distinct edges with consecutive intersections of size
    one, disjoint otherwise, and pairwise distinct joints."""
    import itertools
    edges = [frozenset(e) for e in G.edges]
    for length in range(3, max_length + 1):
        for combo in itertools.combinations(range(len(edges)), length):
            for perm in itertools.permutations(combo):
                if perm[0] != min(perm):
                    continue
                ok = True
                for i in range(length):
                    a, b = edges[perm[i]], edges[perm[(i + 1) % length]]
                    if len(a & b) != 1:
                        ok = False
                        break
                if not ok:
                    continue
                for i in range(length):
                    for j in range(i + 1, length):
                        if j - i in (1, length - 1):
                            continue
                        if edges[perm[i]] & edges[perm[j]]:
                            ok = False
                if not ok:
                    continue
                joints = {next(iter(edges[perm[i]] & edges[perm[(i + 1) % length]]))
                          for i in range(length)}
                if len(joints) == length:
                    return True
    return False


@given(partite_hypergraphs(max_k=3, max_size=3))
@settings(max_examples=120, deadline=None)
def test_loose_cycle_search_matches_oracle(G):
    for limit in (3, 4, 5):
        assert girth_at_most(G, limit) == _brute_has_loose_cycle(G, limit)


def test_loose_cycle_oracle_on_known_instances():
    gadget = loose_cycle_gadget(3)
    assert _brute_has_loose_cycle(gadget, 4) and not _brute_has_loose_cycle(gadget, 3)
    G = gen_linear_regular(3, 6, 2, seed=0, min_girth=5)
    assert not _brute_has_loose_cycle(G, 4)
    assert girth_at_most(G, 6) == _brute_has_loose_cycle(G, 6)


@given(partite_hypergraphs())
@settings(max_examples=120, deadline=None)
def test_neighborhood_invariants(G):
    import itertools
    for cls in range(G.k):
        verts = G.class_vertices(cls)
        for v in verts:
            N = G.neighborhood([v])
            assert v not in N
            assert all(u.cls != cls for u in N)
            assert len(N) <= (G.k - 1) * G.degree(v)
        for S in itertools.combinations(verts[:3], 2):
            bound = (G.k - 1) * sum(G.degree(v) for v in S)
            assert len(G.neighborhood(S)) <= bound


@given(partite_hypergraphs())
@settings(max_examples=80, deadline=None)
def test_link_graph_matches_neighborhood(G):
    for cls in range(G.k):
        verts = [v for v in G.class_vertices(cls) if G.degree(v)]
        if not verts:
            continue
        S = verts[: 2]
        L = G.link_graph(S)
        assert L.vertices == G.neighborhood(S)
        assert all(len(e) == G.k - 1 for e in L.edges)


@given(partite_hypergraphs())
@settings(max_examples=80, deadline=None)
def test_two_linked_partition(G):
    for cls in range(G.k):
        T = list(G.class_vertices(cls))
        comps = G.two_linked_components(T)
        assert sorted(v for c in comps for v in c) == sorted(T)
        for i, a in enumerate(comps):
            for b in comps[i + 1:]:
                assert all(u not in G.distance_two_neighbors(v)
                           for v in a for u in b)


@given(partite_hypergraphs(max_k=3, max_size=3))
@settings(max_examples=60, deadline=None)
def test_multiple_shared_neighbors_force_short_cycle(G):
    # contrapositive of the girth-5 local signature, on linear instances
    if G.k < 3 or not G.is_linear():
        return
    for cls in range(G.k):
        for v in G.class_vertices(cls):
            for u in G.distance_two_neighbors(v):
                common = G.neighborhood([v]) & G.neighborhood([u])
                if len(common) >= 2:
                    assert girth_at_most(G, 4)
                    return
