"""Polymers: 2-linked single-class vertex sets, their exact weights, the
compatibility relation, exact partition functions, and the per-root
convergence-condition sums.

All weights are exact rationals |IS(link graph)| / 2^|N(S)|, so every
identity tested downstream holds bit-for-bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from mpmath import iv

from .errors import BudgetExceeded, InputError
from .exact import count_independent_sets
from .hypergraph import Hypergraph, LinkGraph, Vertex

DEFAULT_MAX_POLYMERS = 20_000

iv.prec = 160  # ample for the conservative interval comparisons below


@dataclass(frozen=True)
class Polymer:
    """A 2-linked subset of one partition class with its cached neighbourhood.

    Equality and ordering are by the sorted vertex tuple, so streams of
    polymers have a reproducible canonical order.
    """

    vertices: tuple
    neighborhood: frozenset = field(compare=False, hash=False, repr=False)

    @property
    def order(self) -> int:
        return len(self.vertices)

    @property
    def cls(self) -> int:
        return self.vertices[0].cls

    def __lt__(self, other: "Polymer"):
        return self.vertices < other.vertices

    def __str__(self) -> str:
        return "{" + ",".join(str(v) for v in self.vertices) + "}"


def make_polymer(G: Hypergraph, vertices: Iterable) -> Polymer:
    verts = tuple(sorted(G._check_vertex(v) for v in vertices))
    if not verts:
        raise InputError("polymers are non-empty")
    if not G.is_two_linked(verts):
        raise InputError(f"{[str(v) for v in verts]} is not 2-linked")
    return Polymer(verts, G.neighborhood(verts))


def compatible(S: Polymer, T: Polymer) -> bool:
    """Polymers are compatible iff their neighbourhoods are disjoint.

    In particular S is incompatible with itself whenever N(S) is non-empty.
    """
    return not (S.neighborhood & T.neighborhood)


# ----- enumeration of connected sets in the distance-two structure ------------


def _connected_sets(adj, start, max_size, smallest_start: bool):
    """Yield every connected set containing `start`, exactly once.

    With smallest_start=True only sets whose minimum is `start` are produced
    (used when sweeping all, so the union over starts is duplicate-free).
    Growth follows the exclusive-neighbourhood scheme: a vertex enters the
    extension pool the first time it becomes adjacent to the current set,
    and is permanently retired at the level where it was branched on.
    """

    def eligible(u):
        return u > start if smallest_start else u != start

    def grow(sub, ext, closed):
        yield frozenset(sub)
        if len(sub) == max_size:
            return
        pool = list(ext)
        while pool:
            w = pool.pop(0)
            fresh = sorted(u for u in adj[w] if eligible(u) and u not in closed)
            yield from grow(sub + [w], pool + fresh, closed | set(fresh) | {w})
        return

    first = sorted(u for u in adj[start] if eligible(u))
    yield from grow([start], first, set(first) | {start})


def enumerate_polymers(G: Hypergraph, cls: int, b: int,
                       root: Optional[Vertex] = None) -> list:
    """All 2-linked S within the class with 1 <= |S| <= b (and root in S when
    given), each exactly once, sorted lexicographically.  b = 0 denotes the
    empty model."""
    G._check_class(cls)
    if b < 0:
        raise InputError("polymer order bound b must be non-negative")
    if b == 0:
        return []
    adj = {v: G.distance_two_neighbors(v) for v in G.class_vertices(cls)}
    out = []
    if root is not None:
        root = G._check_vertex(root)
        if root.cls != cls:
            raise InputError(f"root {root} not in class {cls}")
        sets = _connected_sets(adj, root, b, smallest_start=False)
        out.extend(sets)
    else:
        for v in G.class_vertices(cls):
            out.extend(_connected_sets(adj, v, b, smallest_start=True))
    polymers = [Polymer(tuple(sorted(s)), G.neighborhood(s)) for s in out]
    polymers.sort()
    return polymers


def polymer_weight(G: Hypergraph, S: Polymer) -> Fraction:
    """Exact weight: independent sets of the link graph over 2^|N(S)|."""
    if not S.neighborhood:
        return Fraction(1)
    link = G.link_graph(S.vertices)
    return Fraction(count_independent_sets(link), 1 << len(S.neighborhood))


def weight_map(G: Hypergraph, polymers: Sequence[Polymer]) -> dict:
    return {p: polymer_weight(G, p) for p in polymers}


# ----- exact partition function ------------------------------------------------


def compatibility_sum(weights: Sequence[Fraction],
                      neighborhoods: Sequence[frozenset]) -> Fraction:
    """Sum over all families of pairwise-compatible indices of the product
    of their weights (empty family contributes 1)."""
    n = len(weights)
    incompat = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if neighborhoods[i] & neighborhoods[j]:
                incompat[i] |= 1 << j
                incompat[j] |= 1 << i
    memo = {}

    def components(mask):
        comps = []
        rest = mask
        while rest:
            seed = rest & -rest
            comp = seed
            frontier = seed
            while frontier:
                i = frontier.bit_length() - 1
                frontier &= ~(1 << i)
                grow = incompat[i] & rest & ~comp
                comp |= grow
                frontier |= grow
            comps.append(comp)
            rest &= ~comp
        return comps

    def total(mask):
        if mask == 0:
            return Fraction(1)
        hit = memo.get(mask)
        if hit is not None:
            return hit
        result = Fraction(1)
        for comp in components(mask):
            i = comp.bit_length() - 1  # branch on the highest index
            skip = total(comp & ~(1 << i))
            take = weights[i] * total(comp & ~(1 << i) & ~incompat[i])
            result *= skip + take
        memo[mask] = result
        return result

    return total((1 << n) - 1)


def partition_function(G: Hypergraph, cls: int, b: int,
                       max_polymers: int = DEFAULT_MAX_POLYMERS) -> Fraction:
    """Exact weighted sum over compatible polymer families of the class."""
    polymers = enumerate_polymers(G, cls, b)
    if len(polymers) > max_polymers:
        raise BudgetExceeded(
            f"{len(polymers)} polymers exceed the cap of {max_polymers}; "
            f"refusing rather than truncating")
    weights = [polymer_weight(G, p) for p in polymers]
    return compatibility_sum(weights, [p.neighborhood for p in polymers])


# ----- convergence-condition sums ----------------------------------------------


@dataclass(frozen=True)
class KpTerms:
    """Per-root summability data: the exact-weight, interval-evaluated sum
    of w(S) * exp(f(S) + g(S)) over polymers containing the root, against
    the 1/r^3 target.

    The `holds` flag is rigorous when True (the sum's upper bound is below
    a lower bound of the target); the condition is only guaranteed by the
    theory for large instances, so small instances legitimately fail.
    """

    root: Vertex
    b: int
    r: int
    lhs_lower: float
    lhs_upper: float
    rhs: Fraction
    holds: bool
    terms: tuple  # (polymer, weight, f, g) per contributing polymer


def _iv_fraction(q: Fraction):
    return iv.mpf(q.numerator) / iv.mpf(q.denominator)


def kp_terms(G: Hypergraph, cls: int, root: Vertex, b: int,
             max_polymers: int = DEFAULT_MAX_POLYMERS) -> KpTerms:
    """Evaluate the summability inequality at one root vertex.

    f(S) = (k-1)|S|/r and g(S) = log(gamma_k) * r * log(2|S|); weights are
    exact and the exponential is evaluated in interval arithmetic rounded
    outward, so `holds` is conservative.
    """
    r = G.regular_degree()
    if r is None:
        raise InputError("summability sums require a regular hypergraph")
    if r == 0:
        raise InputError("summability sums are undefined at degree 0")
    polymers = enumerate_polymers(G, cls, b, root=root)
    if len(polymers) > max_polymers:
        raise BudgetExceeded(
            f"{len(polymers)} polymers exceed the cap of {max_polymers}")
    k = G.k
    log_gamma = iv.log(iv.mpf(2) ** (k - 1)) - iv.log(iv.mpf(2) ** (k - 1) - 1)
    lhs = iv.mpf(0)
    terms = []
    for p in polymers:
        w = polymer_weight(G, p)
        s = p.order
        f = Fraction(k - 1, r) * s
        g = log_gamma * r * iv.log(iv.mpf(2 * s))
        term = _iv_fraction(w) * iv.exp(_iv_fraction(f) + g)
        lhs += term
        terms.append((p, w, float(f), float(g.mid)))
    rhs = Fraction(1, r ** 3)
    rhs_iv = _iv_fraction(rhs)
    holds = bool(lhs.b <= rhs_iv.a)
    # report float endpoints rounded outward so they stay true bounds
    return KpTerms(root=root, b=b, r=r,
                   lhs_lower=math.nextafter(float(lhs.a), -math.inf),
                   lhs_upper=math.nextafter(float(lhs.b), math.inf),
                   rhs=rhs, holds=holds, terms=tuple(terms))


# ----- matchings in link graphs -------------------------------------------------


def max_matching_size(L: LinkGraph) -> int:
    """Maximum number of pairwise-disjoint edges, by branch and bound."""
    order = sorted(L.vertices)
    pos = {v: i for i, v in enumerate(order)}
    masks = sorted({sum(1 << pos[v] for v in e) for e in L.edges})
    best = [0]

    def greedy(avail, edges):
        used = 0
        size = 0
        for e in edges:
            if not e & used and (e & avail) == e:
                used |= e
                size += 1
        return size

    def upper(avail, edges):
        live = sum(1 for e in edges if (e & avail) == e)
        if not live:
            return 0
        width = max(1, L.uniformity)
        return min(live, bin(avail).count("1") // width)

    def search(avail, edges, size):
        best[0] = max(best[0], size)
        live = [e for e in edges if (e & avail) == e]
        if not live:
            return
        if size + upper(avail, live) <= best[0]:
            return
        e = live[0]
        # take the first live edge, or discard it
        search(avail & ~e, live[1:], size + 1)
        search(avail, live[1:], size)

    avail = (1 << len(order)) - 1
    best[0] = greedy(avail, masks)
    search(avail, masks, 0)
    return best[0]


# ----- enumeration bounds --------------------------------------------------------


def polymer_count_bound(k: int, r: int, s: int):
    """Interval enclosure of e * ((k-1) e r^2)^(s-1), the exact upper bound
    on the number of 2-linked s-sets through a fixed vertex."""
    e = iv.exp(iv.mpf(1))
    return e * (iv.mpf((k - 1) * r * r) * e) ** (s - 1)


def polymer_count_bound_holds(count: int, k: int, r: int, s: int) -> bool:
    """Outward-rounded comparison: True only when the bound certainly holds."""
    return bool(iv.mpf(count) <= polymer_count_bound(k, r, s).a)
