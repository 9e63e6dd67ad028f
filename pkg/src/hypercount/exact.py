"""Exact independent-set counting for uniform hypergraphs.

This module is the ground-truth oracle the rest of the package is judged
against, so everything here is exact integer arithmetic.  The main counter
is a backtracking search over bitmask set systems with connected-component
factorization; a vectorized 2^|V| filter is retained as an independent
cross-check for small vertex counts.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import BudgetExceeded, InputError
from .hypergraph import Hypergraph, LinkGraph, Vertex

_MEMO_LIMIT = 1 << 20  # entries per top-level call before the cache is dropped

FILTER_VERTEX_CAP = 24
DEFECT_VERTEX_CAP = 24


@dataclass(frozen=True)
class DefectClassCount:
    """Exact count of independent sets whose trace on one class splits into
    2-linked pieces of order at most `bound`."""

    cls: int
    bound: int
    count: int


# ----- bitmask core -----------------------------------------------------------


def _normalize(vmask: int, edges):
    """Drop satisfied constraints: empty edge means contradiction (returns
    None); singleton edges force their vertex out and discard every edge
    through it."""
    edge_set = set(edges)
    while True:
        if 0 in edge_set:
            return None
        forced = 0
        for e in edge_set:
            if e.bit_count() == 1:
                forced |= e
        if not forced:
            break
        vmask &= ~forced
        edge_set = {e for e in edge_set if not e & forced}
    return vmask, edge_set


def _split_components(edges):
    """Group edge masks into connected components (edges sharing vertices)."""
    comps = []
    rest = list(edges)
    while rest:
        mask = rest.pop()
        group = [mask]
        changed = True
        while changed:
            changed = False
            keep = []
            for e in rest:
                if e & mask:
                    group.append(e)
                    mask |= e
                    changed = True
                else:
                    keep.append(e)
            rest = keep
        comps.append((mask, tuple(sorted(group))))
    return comps


def _count(vmask: int, edges, memo) -> int:
    norm = _normalize(vmask, edges)
    if norm is None:
        return 0
    vmask, edge_set = norm
    covered = 0
    for e in edge_set:
        covered |= e
    free = (vmask & ~covered).bit_count()
    result = 1 << free
    for cmask, cedges in _split_components(edge_set):
        result *= _count_component(cmask, cedges, memo)
    return result


def _count_component(vmask: int, edges, memo) -> int:
    if len(edges) == 1:
        return (1 << edges[0].bit_count()) - 1
    key = (vmask, edges)
    hit = memo.get(key)
    if hit is not None:
        return hit
    # branch on the vertex covering the most edges
    counts = {}
    for e in edges:
        m = e
        while m:
            low = m & -m
            counts[low] = counts.get(low, 0) + 1
            m ^= low
    bit = max(counts, key=lambda b: (counts[b], -b))
    without = tuple(e for e in edges if not e & bit)
    excluded = _count(vmask & ~bit, without, memo)
    reduced = tuple((e & ~bit) if e & bit else e for e in edges)
    included = _count(vmask & ~bit, reduced, memo)
    val = excluded + included
    if len(memo) > _MEMO_LIMIT:
        memo.clear()
    memo[key] = val
    return val


def count_subsets_avoiding(num_vertices: int, edge_masks: Sequence[int]) -> int:
    """Number of subsets of {0..num_vertices-1} containing no edge mask."""
    if num_vertices < 0:
        raise InputError("negative vertex count")
    dedup = tuple(sorted(set(int(e) for e in edge_masks)))
    full = (1 << num_vertices) - 1
    for e in dedup:
        if e & ~full:
            raise InputError("edge mask uses vertices outside the ground set")
    return _count(full, dedup, {})


def _vertex_bits(vertices):
    order = sorted(set(vertices))
    return order, {v: i for i, v in enumerate(order)}


def _as_masks(vertices, edges):
    order, pos = _vertex_bits(vertices)
    masks = []
    for e in edges:
        m = 0
        for v in e:
            if v not in pos:
                raise InputError(f"edge vertex {v} outside vertex set")
            m |= 1 << pos[v]
        masks.append(m)
    return len(order), masks, pos


def count_independent_sets(H: Union[Hypergraph, LinkGraph]) -> int:
    """Exact number of vertex subsets of H containing no edge as a subset."""
    if isinstance(H, Hypergraph):
        n, masks, _ = _as_masks(H.vertices(), H.edges)
    elif isinstance(H, LinkGraph):
        n, masks, _ = _as_masks(H.vertices, H.edges)
    else:
        raise InputError(f"cannot count structures of type {type(H).__name__}")
    return count_subsets_avoiding(n, masks)


# ----- independent 2^V filter oracle ------------------------------------------


_HARD_MASK_CAP = 30  # uint64 mask arrays; beyond this the memory cost is silly


def count_by_filter(num_vertices: int, edge_masks: Sequence[int],
                    chunk: int = 1 << 20,
                    cap: int = FILTER_VERTEX_CAP) -> int:
    """Count by testing every subset mask; independent of the backtracking
    path, usable for cross-checks up to the cap."""
    cap = min(cap, _HARD_MASK_CAP)
    if num_vertices > cap:
        raise BudgetExceeded(
            f"filter oracle limited to {cap} vertices, got {num_vertices}")
    dedup = np.array(sorted(set(int(e) for e in edge_masks)), dtype=np.uint64)
    total = 0
    top = 1 << num_vertices
    for lo in range(0, top, chunk):
        arr = np.arange(lo, min(lo + chunk, top), dtype=np.uint64)
        keep = np.ones(arr.shape, dtype=bool)
        for e in dedup:
            keep &= (arr & e) != e
        total += int(keep.sum())
    return total


def _independent_masks(G: Hypergraph, cap: int = DEFECT_VERTEX_CAP):
    """All independent sets of G as bitmasks (class-major vertex order)."""
    n, masks, pos = _as_masks(G.vertices(), G.edges)
    if n > min(cap, _HARD_MASK_CAP):
        raise BudgetExceeded(
            f"exhaustive enumeration limited to {min(cap, _HARD_MASK_CAP)} "
            f"vertices, got {n}; refusing rather than estimating")
    edge_arr = np.array(sorted(set(masks)), dtype=np.uint64)
    out = []
    top = 1 << n
    chunk = 1 << 20
    for lo in range(0, top, chunk):
        arr = np.arange(lo, min(lo + chunk, top), dtype=np.uint64)
        keep = np.ones(arr.shape, dtype=bool)
        for e in edge_arr:
            keep &= (arr & e) != e
        out.append(arr[keep])
    return np.concatenate(out) if out else np.zeros(0, dtype=np.uint64), pos


def _class_mask(G: Hypergraph, cls: int, pos) -> int:
    m = 0
    for i in range(G.sizes[cls]):
        m |= 1 << pos[Vertex(cls, i)]
    return m


def _mask_vertices(mask: int, order):
    return [order[i] for i in range(len(order)) if mask >> i & 1]


def defect_profile(G: Hypergraph, cls: int,
                   budget: int = DEFECT_VERTEX_CAP) -> list:
    """profile[b] = number of independent sets I such that every 2-linked
    piece of I restricted to the class has order at most b, for b in
    0..|class|.  Computed by direct enumeration of independent sets."""
    G._check_class(cls)
    ind, pos = _independent_masks(G, budget)
    order = sorted(pos, key=pos.get)
    zmask = _class_mask(G, cls, pos)
    traces = np.bitwise_and(ind, np.uint64(zmask))
    values, counts = np.unique(traces, return_counts=True)
    size = G.sizes[cls]
    profile = [0] * (size + 1)
    for t, c in zip(values.tolist(), counts.tolist()):
        pieces = G.two_linked_components(_mask_vertices(t, order))
        worst = max((len(p) for p in pieces), default=0)
        profile[worst] += int(c)
    out = []
    acc = 0
    for b in range(size + 1):
        acc += profile[b]
        out.append(acc)
    return out


def count_with_defect_class(G: Hypergraph, cls: int, b: int,
                            budget: int = DEFECT_VERTEX_CAP) -> DefectClassCount:
    """Exact number of independent sets I for which every 2-linked piece of
    the trace of I on the given class has order at most b.

    Enumerates independent sets directly (budget-guarded); this keeps the
    count independent of the completion formula and the polymer machinery
    it is tested against.
    """
    if b < 0:
        raise InputError("defect bound b must be non-negative")
    profile = defect_profile(G, cls, budget)
    bound = min(b, G.sizes[cls])
    return DefectClassCount(cls=cls, bound=b, count=profile[bound])


def count_completions(G: Hypergraph, cls: int, T: Iterable,
                      verify: bool = False) -> int:
    """Number of independent sets I with trace exactly T on the given class.

    Uses the closed formula: completions of T are independent sets of the
    link graph of T on N(T), times free choices outside the class and N(T).
    With verify=True the value is cross-checked by direct enumeration.
    """
    G._check_class(cls)
    T = frozenset(G._check_vertex(v) for v in T)
    for v in T:
        if v.cls != cls:
            raise InputError(f"defect vertex {v} not in class {cls}")
    outside = G.num_vertices - G.sizes[cls]
    if not T:
        count = 1 << outside
    else:
        L = G.link_graph(T)
        count = count_independent_sets(L) << (outside - len(L.vertices))
    if verify:
        ind, pos = _independent_masks(G)
        zmask = _class_mask(G, cls, pos)
        tmask = 0
        for v in T:
            tmask |= 1 << pos[v]
        direct = int((np.bitwise_and(ind, np.uint64(zmask)) == tmask).sum())
        assert direct == count, (direct, count)
    return count
