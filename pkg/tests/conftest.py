"""Shared instance builders and hypothesis strategies."""

import itertools
import random

import pytest
from hypothesis import strategies as st

from hypercount import Hypergraph


def single_edge(k: int = 3) -> Hypergraph:
    return Hypergraph.build(k, [1] * k, [[(c, 0) for c in range(k)]])


def matching(k: int, r: int) -> Hypergraph:
    """r pairwise disjoint k-edges (1-regular, linear, girth infinity)."""
    return Hypergraph.build(k, [r] * k,
                            [[(c, i) for c in range(k)] for i in range(r)])


def two_shared(k: int = 3) -> Hypergraph:
    """Two edges sharing exactly their class-0 vertex."""
    sizes = [1] + [2] * (k - 1)
    e1 = [(0, 0)] + [(c, 0) for c in range(1, k)]
    e2 = [(0, 0)] + [(c, 1) for c in range(1, k)]
    return Hypergraph.build(k, sizes, [e1, e2])


def circulant(n: int, r: int) -> Hypergraph:
    """Deterministic linear r-regular 3-partite instance on classes of size
    n: edge (i, j) covers (0, i), (1, i+j mod n), (2, i+2j mod n).  Sharing
    two vertices forces equal (i, j), so the instance is linear for any
    r <= n."""
    edges = [[(0, i), (1, (i + j) % n), (2, (i + 2 * j) % n)]
             for i in range(n) for j in range(r)]
    return Hypergraph.build(3, [n] * 3, edges)


def random_partite(k, sizes, density, seed) -> Hypergraph:
    """Random k-partite instance: each possible edge kept with the given
    probability."""
    rng = random.Random(seed)
    space = list(itertools.product(*[range(s) for s in sizes]))
    edges = [[(c, i) for c, i in enumerate(combo)]
             for combo in space if rng.random() < density]
    return Hypergraph.build(k, sizes, edges)


def random_uniform_system(num_vertices, uniformity, num_edges, seed):
    """Random uniform set system as (vertex count, edge bitmasks)."""
    rng = random.Random(seed)
    masks = set()
    for _ in range(num_edges * 3):
        if len(masks) == num_edges:
            break
        verts = rng.sample(range(num_vertices), uniformity)
        masks.add(sum(1 << v for v in verts))
    return num_vertices, sorted(masks)


@st.composite
def partite_hypergraphs(draw, max_k=3, max_size=3):
    k = draw(st.integers(2, max_k))
    sizes = [draw(st.integers(1, max_size)) for _ in range(k)]
    space = list(itertools.product(*[range(s) for s in sizes]))
    picks = draw(st.integers(0, (1 << len(space)) - 1))
    edges = [[(c, i) for c, i in enumerate(combo)]
             for j, combo in enumerate(space) if picks >> j & 1]
    return Hypergraph.build(k, sizes, edges)


@pytest.fixture
def edge3():
    return single_edge(3)
