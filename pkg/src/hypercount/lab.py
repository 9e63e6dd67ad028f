"""Random linear regular instances and concrete property checks.

The generator assembles edges one at a time from per-class degree budgets,
rejecting edges that break linearity or (when requested) create a short
loose cycle, with bounded restarts.  It either returns a conforming
instance or fails loudly; it never hands back a non-conforming graph.

Property checks measure, they never assume: a verdict is `holds` only when
the checked range was covered exhaustively (or sampling found no violation
and the range was complete), `violated` always carries a witness, and
partial coverage yields `unknown`.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from .errors import BudgetExceeded, GenerationError, InputError
from .exact import DEFECT_VERTEX_CAP, _as_masks, _class_mask, _independent_masks
from .formulas import gamma_k
from .hypergraph import Hypergraph, Vertex, find_loose_cycle, girth_at_most


@dataclass(frozen=True)
class PropertyReport:
    name: str
    verdict: str  # "holds" | "violated" | "unknown"
    params: dict = field(default_factory=dict)
    witness: Optional[object] = None
    worst_ratio: Optional[Fraction] = None

    @property
    def holds(self) -> bool:
        return self.verdict == "holds"


# ----- generation ---------------------------------------------------------------


def gen_linear_regular(k: int, n: int, r: int, seed: int,
                       min_girth: Optional[int] = None,
                       max_restarts: int = 400,
                       max_edge_tries: int = 80) -> Hypergraph:
    """Random linear r-regular k-partite k-graph with all class sizes n,
    deterministic per seed; optionally with no loose cycle shorter than
    min_girth.  Raises GenerationError with diagnostics when the retry
    budget runs out."""
    if k < 2 or n < 1 or r < 1:
        raise InputError("generation requires k >= 2, n >= 1, r >= 1")
    if r > n:
        raise InputError(
            f"r={r} > n={n} is infeasible: a vertex needs {r} distinct "
            f"partners per class to stay linear")
    rng = random.Random(seed)
    total_edges = n * r
    stuck_at = 0
    for restart in range(max_restarts):
        capacity = [[r] * n for _ in range(k)]
        edges = []
        edge_sets = []
        ok = True
        for j in range(total_edges):
            placed = False
            for _ in range(max_edge_tries):
                try:
                    pick = [rng.choice([i for i in range(n) if capacity[c][i] > 0])
                            for c in range(k)]
                except IndexError:
                    break
                cand = frozenset(Vertex(c, i) for c, i in enumerate(pick))
                if cand in edge_sets:
                    continue
                if any(len(cand & e) >= 2 for e in edge_sets):
                    continue
                if min_girth is not None and min_girth > 3:
                    trial = Hypergraph.build(
                        k, [n] * k, [sorted(e) for e in edge_sets + [cand]])
                    if girth_at_most(trial, min_girth - 1):
                        continue
                edges.append(tuple(sorted(cand)))
                edge_sets.append(cand)
                for c, i in enumerate(pick):
                    capacity[c][i] -= 1
                placed = True
                break
            if not placed:
                stuck_at = max(stuck_at, j)
                ok = False
                break
        if ok:
            G = Hypergraph(k, tuple([n] * k), tuple(edges))
            assert G.regular_degree() == r
            assert G.is_linear()
            if min_girth is not None and min_girth > 3:
                assert not girth_at_most(G, min_girth - 1)
            return G
    raise GenerationError(
        f"could not assemble a linear {r}-regular instance with k={k}, n={n}"
        + (f", girth >= {min_girth}" if min_girth else "")
        + f" after {max_restarts} restarts (best attempt stalled at edge "
        f"{stuck_at + 1}/{total_edges}); try another seed or larger n")


def loose_cycle_gadget(k: int, seed: int = 0, padding: int = 0) -> Hypergraph:
    """A four-edge configuration in which two same-class vertices share two
    neighbours, so the instance contains a loose 4-cycle by construction.

    Classes: class 0 holds the two sharing vertices, class 1 the two shared
    neighbours, remaining classes hold one private vertex per edge (plus
    `padding` isolated vertices per class, shuffled by seed).
    """
    if k < 3:
        raise InputError("the gadget needs k >= 3")
    sizes = [2, 2] + [4] * (k - 2)
    edges = []
    for j, (a, b) in enumerate([(0, 0), (0, 1), (1, 1), (1, 0)]):
        e = [(0, a), (1, b)] + [(c, j) for c in range(2, k)]
        edges.append(e)
    if padding:
        sizes = [s + padding for s in sizes]
    rng = random.Random(seed)
    perms = [list(rng.sample(range(s), s)) for s in sizes]
    shuffled = [[(c, perms[c][i]) for c, i in e] for e in edges]
    return Hypergraph.build(k, sizes, shuffled)


# ----- property checks ------------------------------------------------------------


def _regular_equal(G: Hypergraph):
    r = G.regular_degree()
    if r is None:
        raise InputError("this check requires a regular hypergraph")
    if len(set(G.sizes)) != 1:
        raise InputError("this check requires equal class sizes")
    return r, G.sizes[0]


def check_reg(G: Hypergraph, t: int) -> PropertyReport:
    """Degree-vs-order threshold: r >= (1/t) log_gamma(n), decided exactly
    through the equivalent integer comparison gamma^(r t) >= n."""
    if t < 1:
        raise InputError("t must be at least 1")
    r, n = _regular_equal(G)
    lhs = gamma_k(G.k) ** (r * t)
    verdict = "holds" if lhs >= n else "violated"
    return PropertyReport(
        name=f"Reg({t})", verdict=verdict,
        params={"t": t, "r": r, "n": n},
        witness=None if verdict == "holds" else {"gamma_pow_rt": lhs, "n": n},
        worst_ratio=Fraction(lhs) / n if n else None)


def _expansion_check(G, name, factor, max_size, size_cap, samples, seed):
    """Shared engine: |N(S)| >= factor * r * |S| over single-class sets up to
    max_size, exhaustively to size_cap and sampled beyond."""
    r, n = _regular_equal(G)
    factor = Fraction(factor)
    worst = None
    witness = None
    rng = random.Random(seed)
    exhaustive = min(max_size, n) <= size_cap  # sizes beyond n are vacuous
    for cls in range(G.k):
        verts = G.class_vertices(cls)
        for s in range(1, min(max_size, n) + 1):
            if s <= size_cap:
                pool = itertools.combinations(verts, s)
            else:
                pool = (tuple(rng.sample(verts, s)) for _ in range(samples))
            for S in pool:
                nb = len(G.neighborhood(S))
                ratio = Fraction(nb, r * len(S))
                if worst is None or ratio < worst:
                    worst = ratio
                if ratio < factor:
                    witness = {"S": [str(v) for v in sorted(S)],
                               "neighborhood_size": nb,
                               "required": factor * r * len(S)}
                    return PropertyReport(
                        name=name, verdict="violated",
                        params={"r": r, "n": n, "max_size": max_size},
                        witness=witness, worst_ratio=worst)
    verdict = "holds" if exhaustive else "unknown"
    return PropertyReport(name=name, verdict=verdict,
                          params={"r": r, "n": n, "max_size": max_size,
                                  "exhaustive": exhaustive},
                          worst_ratio=worst)


def check_exp1(G: Hypergraph, alpha, size_cap: int = 3,
               samples: int = 10_000, seed: int = 0) -> PropertyReport:
    """Expansion of small sets: |N(S)| >= (k-1-alpha) r |S| for |S| <= r."""
    r, _ = _regular_equal(G)
    alpha = Fraction(alpha)
    return _expansion_check(G, f"Exp1({float(alpha):g})",
                            G.k - 1 - alpha, r, size_cap, samples, seed)


def check_exp2(G: Hypergraph, beta, size_cap: int = 3,
               samples: int = 10_000, seed: int = 0) -> PropertyReport:
    """Expansion of mid-scale sets: |N(S)| >= (k-2+beta) r |S| for
    |S| <= beta n / r."""
    r, n = _regular_equal(G)
    beta = Fraction(beta)
    max_size = int(beta * n / r)
    if max_size < 1:
        return PropertyReport(name=f"Exp2({float(beta):g})", verdict="holds",
                              params={"r": r, "n": n, "max_size": 0,
                                      "exhaustive": True})
    return _expansion_check(G, f"Exp2({float(beta):g})",
                            G.k - 2 + beta, max_size, size_cap, samples, seed)


def _popcounts(arr, mask):
    return np.bitwise_count(np.bitwise_and(arr, np.uint64(mask)))


def check_def(G: Hypergraph, b: int, budget: int = DEFECT_VERTEX_CAP,
              search_rounds: int = 2_000, seed: int = 0) -> PropertyReport:
    """Every independent set must trace at most b vertices into some class.

    Exhaustive when the vertex count fits the budget; otherwise a randomized
    search looks for a violating independent set and the verdict degrades
    to `unknown` when none is found.
    """
    if b < 0:
        raise InputError("b must be non-negative")
    params = {"b": b, "budget": budget}
    if min(G.sizes) <= b:
        return PropertyReport(name=f"Def({b})", verdict="holds",
                              params=params | {"vacuous": True})
    if G.num_vertices <= budget:
        ind, pos = _independent_masks(G, budget)
        good = np.zeros(ind.shape, dtype=bool)
        for cls in range(G.k):
            good |= _popcounts(ind, _class_mask(G, cls, pos)) <= b
        if bool(good.all()):
            return PropertyReport(name=f"Def({b})", verdict="holds",
                                  params=params)
        bad = int(ind[~good][0])
        order = sorted(pos, key=pos.get)
        witness = [str(order[i]) for i in range(len(order)) if bad >> i & 1]
        return PropertyReport(name=f"Def({b})", verdict="violated",
                              params=params, witness=witness)
    # best-effort local search beyond the exhaustive budget
    rng = random.Random(seed)
    n_all, masks, pos = _as_masks(G.vertices(), G.edges)
    order = sorted(pos, key=pos.get)
    for _ in range(search_rounds):
        chosen = 0
        for v in rng.sample(order, len(order)):
            trial = chosen | (1 << pos[v])
            if all((trial & m) != m for m in masks):
                chosen = trial
        per_class = [sum(1 for i in range(n_all)
                         if chosen >> i & 1 and order[i].cls == cls)
                     for cls in range(G.k)]
        if min(per_class) > b:
            witness = [str(order[i]) for i in range(n_all) if chosen >> i & 1]
            return PropertyReport(name=f"Def({b})", verdict="violated",
                                  params=params, witness=witness)
    return PropertyReport(name=f"Def({b})", verdict="unknown", params=params)


def check_common_neighbor(G: Hypergraph) -> PropertyReport:
    """Every same-class pair with intersecting neighbourhoods must share
    exactly one neighbour (the local signature of linear girth >= 5)."""
    checked = 0
    for cls in range(G.k):
        for v in G.class_vertices(cls):
            for u in G.distance_two_neighbors(v):
                if u < v:
                    continue
                checked += 1
                common = G.neighborhood([v]) & G.neighborhood([u])
                if len(common) != 1:
                    return PropertyReport(
                        name="common-neighbor", verdict="violated",
                        params={"pairs_checked": checked},
                        witness={"pair": [str(v), str(u)],
                                 "common": sorted(str(x) for x in common)})
    return PropertyReport(name="common-neighbor", verdict="holds",
                          params={"pairs_checked": checked})


def check_linear(G: Hypergraph) -> PropertyReport:
    bad = G.linearity_witness()
    if bad is None:
        return PropertyReport(name="linear", verdict="holds")
    return PropertyReport(name="linear", verdict="violated",
                          witness=[[str(v) for v in e] for e in bad])


def check_girth(G: Hypergraph, min_girth: int,
                node_cap: Optional[int] = 2_000_000) -> PropertyReport:
    """Holds iff G has no loose cycle shorter than min_girth."""
    if min_girth < 4:
        raise InputError("min_girth below 4 is vacuous")
    try:
        cycle = find_loose_cycle(G, min_girth - 1, node_cap)
    except BudgetExceeded:
        return PropertyReport(name=f"girth>={min_girth}", verdict="unknown",
                              params={"node_cap": node_cap})
    if cycle is None:
        return PropertyReport(name=f"girth>={min_girth}", verdict="holds")
    return PropertyReport(name=f"girth>={min_girth}", verdict="violated",
                          witness=[str(v) for v in cycle])
