"""Exact counting oracles: backtracking counter vs the subset filter, the
completion formula, and defect-restricted counts."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypercount import (BudgetExceeded, Hypergraph, Vertex, count_by_filter,
                        count_completions, count_independent_sets,
                        count_subsets_avoiding, count_with_defect_class,
                        defect_profile)

from conftest import (matching, partite_hypergraphs, random_partite,
                      random_uniform_system, two_shared)

V = Vertex


class TestCountExamples:
    def test_edgeless(self):
        for m in range(6):
            assert count_subsets_avoiding(m, []) == 2 ** m

    def test_single_3_edge(self, edge3):
        assert count_independent_sets(edge3) == 7

    def test_perfect_matching(self):
        # r disjoint (k-1)-edges: independent sets multiply per edge
        for k in (3, 4):
            for r in (1, 2, 3):
                G = matching(k, r)
                L = G.link_graph([V(0, i) for i in range(r)])
                assert count_independent_sets(L) == (2 ** (k - 1) - 1) ** r

    def test_two_sharing_edges_k3(self):
        # two 2-edges meeting in one vertex: (2^1)^2 + (2^1 - 1)^2 = 5
        assert count_subsets_avoiding(3, [0b011, 0b110]) == 5

    def test_link_of_shared_vertex_is_disjoint_pair(self):
        # residues of edges through the shared vertex are disjoint: 3 * 3
        G = two_shared(3)
        L = G.link_graph([V(0, 0)])
        assert count_independent_sets(L) == 9

    def test_whole_two_shared(self):
        # by hand: 2^5 subsets, minus those containing either 3-edge
        G = two_shared(3)
        assert count_independent_sets(G) == 32 - 4 - 4 + 1


class TestFilterAgreement:
    def test_fixed_sweep(self):
        for seed in range(60):
            n = 4 + seed % 13
            uni = 2 + seed % 3
            n_edges = 1 + (seed * 7) % 12
            n, masks = random_uniform_system(n, uni, n_edges, seed)
            assert count_subsets_avoiding(n, masks) == count_by_filter(n, masks)

    @given(st.integers(0, 10_000))
    @settings(max_examples=60, deadline=None)
    def test_randomized(self, seed):
        n, masks = random_uniform_system(4 + seed % 10, 2 + seed % 3,
                                         1 + seed % 9, seed)
        assert count_subsets_avoiding(n, masks) == count_by_filter(n, masks)

    def test_filter_budget(self):
        with pytest.raises(BudgetExceeded):
            count_by_filter(30, [3])


@given(partite_hypergraphs())
@settings(max_examples=60, deadline=None)
def test_edge_deletion_monotone(G):
    if not G.edges:
        return
    count = count_independent_sets(G)
    smaller = Hypergraph(G.k, G.sizes, G.edges[1:])
    assert count_independent_sets(smaller) >= count


@given(partite_hypergraphs())
@settings(max_examples=60, deadline=None)
def test_count_at_least_class_free(G):
    # subsets avoiding one whole class are always independent
    count = count_independent_sets(G)
    assert count >= 2 ** (G.num_vertices - max(G.sizes))


class TestCompletions:
    def test_empty_defect_set(self, edge3):
        assert count_completions(edge3, 0, []) == 2 ** 2

    def test_single_edge_vertex(self, edge3):
        assert count_completions(edge3, 0, [V(0, 0)], verify=True) == 3

    def test_linear_regular_formula(self):
        from hypercount import gen_linear_regular
        k, n, r = 3, 4, 2
        G = gen_linear_regular(k, n, r, seed=7)
        expected = (2 ** (k - 1) - 1) ** r * 2 ** ((k - 1) * (n - r))
        assert count_completions(G, 0, [V(0, 0)], verify=True) == expected

    @given(partite_hypergraphs(max_k=3, max_size=3))
    @settings(max_examples=40, deadline=None)
    def test_formula_matches_enumeration(self, G):
        for cls in range(G.k):
            verts = G.class_vertices(cls)
            for size in range(min(2, len(verts)) + 1):
                for T in itertools.combinations(verts, size):
                    count_completions(G, cls, T, verify=True)

    def test_rejects_wrong_class(self, edge3):
        from hypercount import InputError
        with pytest.raises(InputError):
            count_completions(edge3, 0, [V(1, 0)])


class TestDefectCounts:
    def test_single_edge_all_small(self, edge3):
        assert count_with_defect_class(edge3, 0, 1).count == 7

    def test_large_bound_counts_everything(self):
        for seed in (0, 1, 2):
            G = random_partite(3, (2, 3, 2), 0.4, seed)
            total = count_independent_sets(G)
            for cls in range(3):
                b = G.sizes[cls]
                assert count_with_defect_class(G, cls, b).count == total

    def test_zero_bound_counts_empty_trace(self):
        for seed in (3, 4):
            G = random_partite(3, (3, 2, 2), 0.5, seed)
            for cls in range(3):
                expect = 2 ** (G.num_vertices - G.sizes[cls])
                assert count_with_defect_class(G, cls, 0).count == expect

    def test_profile_monotone_and_consistent(self):
        G = random_partite(3, (3, 3, 2), 0.3, 11)
        for cls in range(3):
            prof = defect_profile(G, cls)
            assert all(a <= b for a, b in zip(prof, prof[1:]))
            assert prof[-1] == count_independent_sets(G)
            for b in range(G.sizes[cls] + 1):
                assert count_with_defect_class(G, cls, b).count == prof[b]

    def test_summation_identity(self):
        # defect-restricted count equals the sum of completions over defect
        # sets whose 2-linked pieces are small enough
        for seed in (0, 5, 9):
            G = random_partite(3, (3, 2, 2), 0.45, seed)
            for cls in range(3):
                verts = G.class_vertices(cls)
                for b in range(G.sizes[cls] + 1):
                    total = 0
                    for size in range(len(verts) + 1):
                        for T in itertools.combinations(verts, size):
                            pieces = G.two_linked_components(T)
                            if all(len(p) <= b for p in pieces):
                                total += count_completions(G, cls, T)
                    assert total == count_with_defect_class(G, cls, b).count

    def test_budget_refusal(self):
        G = matching(3, 9)  # 27 vertices
        with pytest.raises(BudgetExceeded):
            count_with_defect_class(G, 0, 1)


@given(partite_hypergraphs(max_k=3, max_size=3))
@settings(max_examples=60, deadline=None)
def test_defect_count_equals_scaled_partition_function(G):
    # the central exact identity, hammered over arbitrary shapes including
    # uniformity 2 (the seeded acceptance sweep covers k=3 only)
    from hypercount import partition_function
    for cls in range(G.k):
        scale = 2 ** (G.num_vertices - G.sizes[cls])
        for b in range(G.sizes[cls] + 1):
            rhs = scale * partition_function(G, cls, b)
            assert rhs.denominator == 1
            assert count_with_defect_class(G, cls, b).count == rhs


def test_filter_at_cap_boundary():
    n, masks = random_uniform_system(24, 3, 10, 99)
    assert count_subsets_avoiding(n, masks) == count_by_filter(n, masks)
