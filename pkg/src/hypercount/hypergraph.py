"""k-partite k-uniform hypergraphs and the structural primitives built on them.

Vertices are addressed as (class, index) pairs.  Every edge meets every
partition class exactly once, so an edge is stored as a class-major sorted
tuple of vertices.  A Hypergraph is immutable after construction; all
operations are pure functions over it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple, Optional, Sequence

from .errors import BudgetExceeded, InputError


class Vertex(NamedTuple):
    """Vertex of a partite hypergraph: partition class and index within it."""

    cls: int
    idx: int

    def __str__(self) -> str:
        return f"{self.cls}:{self.idx}"


Edge = tuple  # sorted tuple of Vertex, one per class


@dataclass(frozen=True)
class LinkGraph:
    """(k-1)-uniform residue structure of a single-class vertex set S.

    Vertices are the neighbourhood of S; edges are the residues e minus S
    of edges e meeting S, with duplicate residues collapsed (independent-set
    counts are insensitive to edge multiplicity).
    """

    uniformity: int
    vertices: frozenset
    edges: frozenset

    def __post_init__(self):
        for e in self.edges:
            if len(e) != self.uniformity:
                raise InputError(
                    f"link edge {sorted(e)} has {len(e)} vertices, "
                    f"expected {self.uniformity}"
                )
        covered = frozenset().union(*self.edges) if self.edges else frozenset()
        if covered != self.vertices:
            raise InputError("link graph vertex set must equal the union of its edges")


@dataclass(frozen=True)
class Hypergraph:
    """k-partite k-uniform hypergraph with fixed class sizes.

    Invariants (checked at construction):
      * every edge has exactly one vertex in each of the k classes;
      * all vertex indices are within their class size;
      * edges are pairwise distinct.
    """

    k: int
    sizes: tuple
    edges: tuple

    def __post_init__(self):
        if self.k < 2:
            raise InputError(f"uniformity k={self.k} must be at least 2")
        if len(self.sizes) != self.k:
            raise InputError(f"expected {self.k} class sizes, got {len(self.sizes)}")
        if any(s < 1 for s in self.sizes):
            raise InputError("class sizes must be positive")
        canon = []
        for e in self.edges:
            ce = tuple(sorted(Vertex(*v) for v in e))
            classes = [v.cls for v in ce]
            if classes != list(range(self.k)):
                raise InputError(
                    f"edge {[str(v) for v in ce]} must contain exactly one "
                    f"vertex per class"
                )
            for v in ce:
                if not 0 <= v.idx < self.sizes[v.cls]:
                    raise InputError(f"vertex {v} out of range for class size "
                                     f"{self.sizes[v.cls]}")
            canon.append(ce)
        canon.sort()
        for a, b in zip(canon, canon[1:]):
            if a == b:
                raise InputError(f"duplicate edge {[str(v) for v in a]}")
        object.__setattr__(self, "sizes", tuple(self.sizes))
        object.__setattr__(self, "edges", tuple(canon))

    @classmethod
    def build(cls, k: int, sizes: Sequence[int], edges: Iterable[Iterable]) -> "Hypergraph":
        """Construct from any iterable of edges given as (class, index) pairs."""
        return cls(k, tuple(sizes), tuple(tuple(Vertex(*v) for v in e) for e in edges))

    # ----- basic accessors -------------------------------------------------

    @property
    def num_vertices(self) -> int:
        return sum(self.sizes)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def vertices(self) -> Iterator[Vertex]:
        for c, s in enumerate(self.sizes):
            for i in range(s):
                yield Vertex(c, i)

    def class_vertices(self, cls: int) -> tuple:
        self._check_class(cls)
        return tuple(Vertex(cls, i) for i in range(self.sizes[cls]))

    def _check_class(self, cls: int) -> None:
        if not 0 <= cls < self.k:
            raise InputError(f"class {cls} out of range [0, {self.k})")

    def _check_vertex(self, v: Vertex) -> Vertex:
        v = Vertex(*v)
        if not (0 <= v.cls < self.k and 0 <= v.idx < self.sizes[v.cls]):
            raise InputError(f"vertex {v} out of range")
        return v

    @cached_property
    def incidence(self) -> dict:
        """Vertex -> tuple of incident edge indices (empty for isolated vertices)."""
        inc = {v: [] for v in self.vertices()}
        for i, e in enumerate(self.edges):
            for v in e:
                inc[v].append(i)
        return {v: tuple(ix) for v, ix in inc.items()}

    def degree(self, v: Vertex) -> int:
        return len(self.incidence[self._check_vertex(v)])

    # ----- neighbourhoods and link graphs ----------------------------------

    def neighborhood(self, S: Iterable) -> frozenset:
        """All vertices covered by an edge meeting S, minus S itself."""
        S = frozenset(self._check_vertex(v) for v in S)
        out = set()
        for v in S:
            for i in self.incidence[v]:
                out.update(self.edges[i])
        return frozenset(out - S)

    def link_graph(self, S: Iterable) -> LinkGraph:
        """Residue (k-1)-graph of a non-empty subset S of a single class."""
        S = frozenset(self._check_vertex(v) for v in S)
        if not S:
            raise InputError("link graph requires a non-empty vertex set")
        if len({v.cls for v in S}) != 1:
            raise InputError("link graph requires S within a single class")
        edges = set()
        for v in S:
            for i in self.incidence[v]:
                edges.add(frozenset(self.edges[i]) - S)
        vertices = frozenset().union(*edges) if edges else frozenset()
        return LinkGraph(self.k - 1, vertices, frozenset(edges))

    # ----- the same-class shared-neighbour ("distance two") structure ------

    @cached_property
    def _distance_two(self) -> dict:
        adj = {v: set() for v in self.vertices()}
        for v in self.vertices():
            c = v.cls
            for i in self.incidence[v]:
                for x in self.edges[i]:
                    if x == v:
                        continue
                    for j in self.incidence[x]:
                        u = self.edges[j][c]
                        if u != v:
                            adj[v].add(u)
        return {v: frozenset(s) for v, s in adj.items()}

    def distance_two_neighbors(self, v: Vertex) -> frozenset:
        """Same-class vertices u != v whose neighbourhood meets that of v."""
        return self._distance_two[self._check_vertex(v)]

    def two_linked_components(self, T: Iterable) -> list:
        """Partition of a single-class set T into its 2-linked pieces.

        Two vertices land in the same piece iff they are connected within T
        through chains of shared neighbours.  Pieces are returned sorted by
        their minimum vertex; their neighbourhoods are pairwise disjoint.
        """
        T = sorted(frozenset(self._check_vertex(v) for v in T))
        if not T:
            return []
        if len({v.cls for v in T}) != 1:
            raise InputError("two_linked_components requires T within a single class")
        tset = set(T)
        seen = set()
        comps = []
        for start in T:
            if start in seen:
                continue
            comp = {start}
            stack = [start]
            while stack:
                v = stack.pop()
                for u in self._distance_two[v]:
                    if u in tset and u not in comp:
                        comp.add(u)
                        stack.append(u)
            seen |= comp
            comps.append(frozenset(comp))
        if __debug__:
            nbhds = [self.neighborhood(c) for c in comps]
            for a in range(len(nbhds)):
                for b in range(a + 1, len(nbhds)):
                    assert not (nbhds[a] & nbhds[b]), "component neighbourhoods overlap"
        return comps

    def is_two_linked(self, S: Iterable) -> bool:
        S = list(S)
        return len(S) > 0 and len(self.two_linked_components(S)) == 1

    # ----- global structure checks ------------------------------------------

    def is_linear(self) -> bool:
        """True iff every pair of distinct edges shares at most one vertex."""
        return self.linearity_witness() is None

    def linearity_witness(self) -> Optional[tuple]:
        """A pair of edges sharing >= 2 vertices, or None if the graph is linear."""
        sets = [frozenset(e) for e in self.edges]
        for i in range(len(sets)):
            for j in range(i + 1, len(sets)):
                if len(sets[i] & sets[j]) >= 2:
                    return (self.edges[i], self.edges[j])
        return None

    def regular_degree(self) -> Optional[int]:
        """The common vertex degree r, or None if degrees differ."""
        degs = {len(self.incidence[v]) for v in self.vertices()}
        if len(degs) == 1:
            return degs.pop()
        return None


# ----- loose cycles and girth -----------------------------------------------


def find_loose_cycle(G: Hypergraph, max_length: int,
                     node_cap: Optional[int] = 2_000_000) -> Optional[list]:
    """Search for a loose cycle of length between 3 and max_length.

    A loose l-cycle is a cyclic sequence of l distinct edges in which
    consecutive edges share exactly one vertex, and all (k-1)*l involved
    vertices are distinct.  Returns the witness vertex sequence (length
    (k-1)*l, consecutive k-blocks with one-vertex overlap are edges), or
    None if no such cycle of length <= max_length exists.

    The search is an exhaustive DFS over edge sequences, canonicalized by
    least edge index first and a fixed orientation.  Raises BudgetExceeded
    when node_cap DFS nodes are visited, so an indeterminate outcome is
    never reported as absence.
    """
    if max_length < 3:
        raise InputError("loose cycles have length at least 3")
    edge_sets = [frozenset(e) for e in G.edges]
    m = len(edge_sets)
    budget = [node_cap if node_cap is not None else -1]

    def tick():
        if budget[0] == 0:
            raise BudgetExceeded(
                f"loose-cycle search exceeded node cap {node_cap}")
        budget[0] -= 1

    def close(path, joints, used, first):
        # final edge must meet exactly the current tail joint and one fresh
        # vertex of the first edge
        tail = path[-1]
        tail_joint = joints[-1]
        for f in range(first + 1, m):
            if f in path:
                continue
            tick()
            inter = edge_sets[f] & used
            if len(inter) != 2:
                continue
            a = (inter & edge_sets[tail]) - {tail_joint, joints[0]}
            b = (inter & edge_sets[first]) - {joints[0], tail_joint}
            if len(a) == 1 and len(b) == 1 and a != b and path[1] < f:
                yield f, next(iter(a)), next(iter(b))

    def witness(path, joints, closing_joint):
        # sequence blocks: [joint into e_i] + interior(e_i); joint into the
        # first edge is the closing one
        seq = []
        cycle_joints = [closing_joint] + joints
        for pos, ei in enumerate(path):
            j_in = cycle_joints[pos]
            j_out = cycle_joints[(pos + 1) % len(path)]
            interior = sorted(edge_sets[ei] - {j_in, j_out})
            seq.extend([j_in] + interior)
        return seq

    def extend(path, joints, used, first):
        if len(path) >= 2:
            for f, x, y in close(path, joints, used, first):
                return path + [f], joints + [x], y
        if len(path) >= max_length - 1:
            return None
        tail = path[-1]
        last_joint = joints[-1] if joints else None
        for x in sorted(edge_sets[tail]):
            if x == last_joint:
                continue
            for f in G.incidence[x]:
                if f <= first or f in path:
                    continue
                tick()
                if edge_sets[f] & used != {x}:
                    continue
                res = extend(path + [f], joints + [x],
                             used | edge_sets[f], first)
                if res is not None:
                    return res
        return None

    for first in range(m):
        res = extend([first], [], frozenset(edge_sets[first]), first)
        if res is not None:
            path, joints, closing = res
            return witness(path, joints, closing)
    return None


def girth_at_most(G: Hypergraph, limit: int,
                  node_cap: Optional[int] = 2_000_000) -> bool:
    """True iff G contains a loose cycle of length between 3 and limit."""
    return find_loose_cycle(G, limit, node_cap) is not None


def is_loose_cycle(G: Hypergraph, seq: Sequence) -> bool:
    """Check a vertex sequence against the loose-cycle definition."""
    km1 = G.k - 1
    if len(seq) < 3 * km1 or len(seq) % km1 != 0:
        return False
    if len(set(seq)) != len(seq):
        return False
    length = len(seq) // km1
    edge_sets = {frozenset(e) for e in G.edges}
    blocks = set()
    for i in range(length):
        block = frozenset(seq[(km1 * i + j) % len(seq)] for j in range(km1 + 1))
        if block not in edge_sets:
            return False
        blocks.add(block)
    return len(blocks) == length
