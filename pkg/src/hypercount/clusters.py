"""Cluster expansion machinery: Ursell functions, cluster enumeration up to
a size budget, exact cluster weights, truncated log-partition sums, and the
log-domain count estimator.

Clusters are stored as canonical multisets of polymers together with the
number of orderings they represent, so sums over ordered polymer vectors
are computed without factorial blowup.  All sums are exact rationals; floats
appear only at the log-domain boundary of the estimator.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Callable, Iterable, Sequence

from .errors import BudgetExceeded, InputError
from .hypergraph import Hypergraph
from .logdomain import LogValue, log_sum_exp
from .polymers import Polymer, polymer_weight

URSELL_VERTEX_CAP = 9


# ----- Ursell function ---------------------------------------------------------


def _graph_components(n: int, edges) -> int:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    return len({find(i) for i in range(n)})


def _canonical_graph_key(n: int, edges):
    """Isomorphism-invariant key for small graphs: colour refinement, then
    the minimum edge list over label permutations consistent with the
    refined colours.  Falls back to a label-sensitive key (marked
    distinctly) when the consistent permutation count is too large."""
    adj = [set() for _ in range(n)]
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    colors = [len(adj[v]) for v in range(n)]
    for _ in range(n):
        sig = [(colors[v], tuple(sorted(colors[u] for u in adj[v])))
               for v in range(n)]
        ranks = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [ranks[s] for s in sig]
        if new == colors:
            break
        colors = new
    groups = {}
    for v in range(n):
        groups.setdefault(colors[v], []).append(v)
    cells = [groups[c] for c in sorted(groups)]
    total = 1
    for cell in cells:
        total *= math.factorial(len(cell))
        if total > 50_000:
            return ("labelled", n, tuple(sorted(map(tuple, map(sorted, edges)))))
    best = None
    for perms in _cell_permutations(cells):
        relabel = {}
        pos = 0
        for cell_perm in perms:
            for v in cell_perm:
                relabel[v] = pos
                pos += 1
        key = tuple(sorted(tuple(sorted((relabel[a], relabel[b])))
                           for a, b in edges))
        if best is None or key < best:
            best = key
    return ("canonical", n, best)


def _cell_permutations(cells):
    if not cells:
        yield []
        return
    for head in permutations(cells[0]):
        for tail in _cell_permutations(cells[1:]):
            yield [list(head)] + tail


_ursell_cache = {}
_ursell_lock = threading.Lock()


def ursell(n: int, edges: Iterable, cap: int = URSELL_VERTEX_CAP) -> Fraction:
    """Ursell function of a connected graph on vertices 0..n-1.

    Defined as 1/n! times the signed count, by parity of edge count, of
    spanning connected subgraphs.  Computed exactly by a subset convolution
    over vertex sets (the component of the lowest vertex splits off), and
    memoized by canonical graph form.
    """
    edges = sorted({tuple(sorted((int(a), int(b)))) for a, b in edges})
    if n < 1:
        raise InputError("Ursell function needs at least one vertex")
    for a, b in edges:
        if a == b or not (0 <= a < n and 0 <= b < n):
            raise InputError(f"bad edge ({a},{b}) for {n} vertices")
    if n > cap:
        raise BudgetExceeded(f"Ursell cap is {cap} vertices, got {n}")
    if _graph_components(n, edges) != 1:
        raise InputError("Ursell function is defined for connected graphs")
    key = _canonical_graph_key(n, edges)
    with _ursell_lock:
        hit = _ursell_cache.get(key)
    if hit is not None:
        return hit

    edge_bits = [(1 << a) | (1 << b) for a, b in edges]
    full = (1 << n) - 1

    def edgeless(mask: int) -> bool:
        return all(e & mask != e for e in edge_bits)

    # f[W] = signed spanning-connected count on W.  The alternating sum over
    # ALL edge subsets of W is 1 if W induces no edge and 0 otherwise, and it
    # also equals the sum of f[U] * [W-U edgeless] over the possible
    # components U of W's lowest vertex; solve for f[W].
    f = {}
    for mask in range(1, full + 1):
        low = mask & -mask
        val = 1 if edgeless(mask) else 0
        sub = (mask - 1) & mask
        while sub:
            if sub & low and edgeless(mask ^ sub):
                val -= f[sub]
            sub = (sub - 1) & mask
        f[mask] = val
    result = Fraction(f[full], math.factorial(n))
    with _ursell_lock:
        if len(_ursell_cache) > 100_000:
            _ursell_cache.clear()
        _ursell_cache[key] = result
    return result


def ursell_by_subgraphs(n: int, edges: Iterable) -> Fraction:
    """Literal spanning-connected-subgraph enumeration over all 2^|E| edge
    subsets.  Exponential in the edge count; kept as an independent oracle."""
    edges = sorted({tuple(sorted((int(a), int(b)))) for a, b in edges})
    if _graph_components(n, edges) != 1:
        raise InputError("Ursell function is defined for connected graphs")
    total = 0
    m = len(edges)
    for pick in range(1 << m):
        chosen = [edges[i] for i in range(m) if pick >> i & 1]
        if _graph_components(n, chosen) == 1:
            total += -1 if pick.bit_count() % 2 else 1
    return Fraction(total, math.factorial(n))


# ----- clusters -----------------------------------------------------------------


@dataclass(frozen=True)
class Cluster:
    """Canonical multiset of polymers whose incompatibility graph is
    connected.  `entries` pairs each distinct polymer with its multiplicity,
    sorted by polymer;  ordering_count is the number of ordered vectors the
    multiset represents."""

    entries: tuple  # ((polymer, multiplicity), ...)

    @property
    def length(self) -> int:
        return sum(m for _, m in self.entries)

    @property
    def size(self) -> int:
        return sum(p.order * m for p, m in self.entries)

    @property
    def support(self) -> frozenset:
        out = set()
        for p, _ in self.entries:
            out.update(p.vertices)
        return frozenset(out)

    @property
    def ordering_count(self) -> int:
        num = math.factorial(self.length)
        for _, m in self.entries:
            num //= math.factorial(m)
        return num

    def expanded(self) -> list:
        out = []
        for p, m in self.entries:
            out.extend([p] * m)
        return out

    def __str__(self) -> str:
        return "(" + ",".join(str(p) + (f"^{m}" if m > 1 else "")
                              for p, m in self.entries) + ")"


def incompatibility_graph(entries_expanded: Sequence[Polymer]):
    """Graph on the cluster's entries with edges between incompatible ones;
    copies of a polymer are incompatible whenever its neighbourhood is
    non-empty."""
    n = len(entries_expanded)
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if entries_expanded[i].neighborhood & entries_expanded[j].neighborhood:
                edges.append((i, j))
    return n, edges


def _connected_multiset(entries_expanded: Sequence[Polymer]) -> bool:
    n, edges = incompatibility_graph(entries_expanded)
    return _graph_components(n, edges) == 1


def cluster_weight(cluster: Cluster, weight_of: Callable) -> Fraction:
    """phi(incompatibility graph) times the product of entry weights, for
    one ordered representative of the multiset."""
    expanded = cluster.expanded()
    n, edges = incompatibility_graph(expanded)
    phi = ursell(n, edges)
    prod = Fraction(1)
    for p, m in cluster.entries:
        prod *= weight_of(p) ** m
    return phi * prod


def _connected_sets_in(adj, max_size):
    """All connected subsets (any size up to max_size) of the graph given by
    `adj`, each exactly once."""
    verts = sorted(adj)
    out = []
    for start in verts:

        def grow(sub, ext, closed):
            out.append(frozenset(sub))
            if len(sub) == max_size:
                return
            pool = list(ext)
            while pool:
                w = pool.pop(0)
                fresh = sorted(u for u in adj[w] if u > start and u not in closed)
                grow(sub + [w], pool + fresh, closed | set(fresh) | {w})

        first = sorted(u for u in adj[start] if u > start)
        grow([start], first, set(first) | {start})
    return out


def enumerate_clusters(G: Hypergraph, cls: int, t: int) -> list:
    """Every cluster of total size at most t over the class's polymer model
    with polymer orders capped at t, as canonical multisets, each once.

    The union of a cluster's polymers is 2-linked (connected entries over a
    connected incompatibility graph), so enumeration runs per candidate
    support: a 2-linked set of order <= t, covered exactly by the chosen
    polymers.
    """
    G._check_class(cls)
    if t < 1:
        raise InputError("cluster size budget t must be at least 1")
    adj_full = {v: G.distance_two_neighbors(v) for v in G.class_vertices(cls)}
    supports = sorted(_connected_sets_in(adj_full, t), key=lambda s: sorted(s))
    clusters = []
    for support in supports:
        sup = sorted(support)
        adj = {v: adj_full[v] & support for v in sup}
        parts = sorted(_connected_sets_in(adj, t), key=sorted)
        polymers = [Polymer(tuple(sorted(s)), G.neighborhood(s)) for s in parts]
        polymers.sort()
        suffix_cover = [frozenset()] * (len(polymers) + 1)
        for i in range(len(polymers) - 1, -1, -1):
            suffix_cover[i] = suffix_cover[i + 1] | frozenset(polymers[i].vertices)

        def assign(i, budget, covered, chosen):
            if i == len(polymers):
                if covered == support:
                    expanded = []
                    for p, m in chosen:
                        expanded.extend([p] * m)
                    if _connected_multiset(expanded):
                        clusters.append(Cluster(tuple(chosen)))
                return
            if not (support - covered) <= suffix_cover[i]:
                return
            p = polymers[i]
            max_mult = budget // p.order
            for m in range(max_mult + 1):
                assign(i + 1, budget - m * p.order,
                       covered | (frozenset(p.vertices) if m else frozenset()),
                       chosen + [(p, m)] if m else chosen)

        assign(0, t, frozenset(), [])
    clusters.sort(key=lambda c: ([p.vertices for p, _ in c.entries],
                                 [m for _, m in c.entries]))
    return clusters


def truncated_log_xi(G: Hypergraph, cls: int, t: int) -> Fraction:
    """Exact sum of ordered-cluster weights over all clusters of size <= t:
    the degree-t truncation of the log partition function of the class."""
    weights = {}

    def weight_of(p: Polymer) -> Fraction:
        if p not in weights:
            weights[p] = polymer_weight(G, p)
        return weights[p]

    total = Fraction(0)
    for cluster in enumerate_clusters(G, cls, t):
        total += cluster.ordering_count * cluster_weight(cluster, weight_of)
    return total


# ----- generic (model-level) enumeration, for synthetic models and oracles ------


def enumerate_clusters_generic(items: Sequence, order_of: Callable,
                               incompatible: Callable, t: int) -> list:
    """Cluster multisets over an abstract polymer model, given as a list of
    items, their orders, and an incompatibility predicate (which must also
    answer incompatible(x, x)).  Suitable for small models only."""
    if t < 1:
        raise InputError("cluster size budget t must be at least 1")
    items = list(items)
    clusters = []

    def connected(expanded):
        n = len(expanded)
        edges = [(i, j) for i in range(n) for j in range(i + 1, n)
                 if incompatible(expanded[i], expanded[j])]
        return _graph_components(n, edges) == 1

    def assign(i, budget, chosen):
        if i == len(items):
            if chosen:
                expanded = []
                for idx, m in chosen:
                    expanded.extend([items[idx]] * m)
                if connected(expanded):
                    clusters.append(tuple(chosen))
            return
        assign(i + 1, budget, chosen)
        o = order_of(items[i])
        for m in range(1, budget // o + 1):
            assign(i + 1, budget - m * o, chosen + [(i, m)])

    assign(0, t, [])
    return clusters


def truncated_log_generic(items: Sequence, order_of: Callable,
                          weight_of: Callable, incompatible: Callable,
                          t: int) -> Fraction:
    """Truncated log partition sum for an abstract polymer model."""
    total = Fraction(0)
    for chosen in enumerate_clusters_generic(items, order_of, incompatible, t):
        length = sum(m for _, m in chosen)
        orderings = math.factorial(length)
        prod = Fraction(1)
        expanded = []
        for idx, m in chosen:
            orderings //= math.factorial(m)
            prod *= Fraction(weight_of(items[idx])) ** m
            expanded.extend([items[idx]] * m)
        n = len(expanded)
        edges = [(i, j) for i in range(n) for j in range(i + 1, n)
                 if incompatible(expanded[i], expanded[j])]
        total += orderings * ursell(n, edges) * prod
    return total


# ----- the estimator -------------------------------------------------------------


@dataclass(frozen=True)
class CountEstimate:
    """Log-domain estimate of the number of independent sets, together with
    the exact per-class exponents."""

    t: int
    k: int
    n: int
    r: int
    class_exponents: tuple  # (cls, Fraction) pairs
    log_value: float

    @property
    def value(self) -> LogValue:
        return LogValue.from_log(self.log_value)


def estimate_count(G: Hypergraph, t: int) -> CountEstimate:
    """2^((k-1)n) times the sum over classes of exp(truncated class sum),
    assembled in the log domain.

    Requires uniformity at least 3, regularity, and equal class sizes;
    those are the hypotheses under which the truncation is meaningful.
    """
    if t < 1:
        raise InputError("truncation size t must be at least 1")
    if G.k < 3:
        raise InputError("the estimator requires uniformity k >= 3")
    r = G.regular_degree()
    if r is None:
        raise InputError("the estimator requires a regular hypergraph")
    if len(set(G.sizes)) != 1:
        raise InputError("the estimator requires equal class sizes")
    n = G.sizes[0]
    exponents = [(cls, truncated_log_xi(G, cls, t)) for cls in range(G.k)]
    log_value = (G.k - 1) * n * math.log(2) + log_sum_exp(
        [float(x) for _, x in exponents])
    return CountEstimate(t=t, k=G.k, n=n, r=r,
                         class_exponents=tuple(exponents),
                         log_value=log_value)
