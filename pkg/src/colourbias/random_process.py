"""Random graphs, the random graph process, and adversarial residual subgraphs.

All randomness flows from ``numpy.random.Philox`` keyed by a 64-bit seed, so
the same seed yields the same graph on every platform.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import comb, log

import numpy as np

from .constructions import Construction, ConstructionSpec, as_fraction, boosted_alpha, build, extremal_spec
from .graph import Graph, GraphError, residual_ratio
from .posa import Decision, decide_hamiltonian

STRATEGIES = ("construction", "random_thinning", "greedy_min_degree")


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed & (2**64 - 1)))


def _pairs(n: int) -> tuple[np.ndarray, np.ndarray]:
    return np.triu_indices(n, k=1)


def sample_gnp(n: int, p: float, seed: int) -> Graph:
    """G(n, p): each pair present independently, pairs drawn in lexicographic order."""
    if not 0 <= p <= 1:
        raise GraphError(f"p = {p} outside [0, 1]")
    iu, ju = _pairs(n)
    keep = make_rng(seed).random(iu.size) < p
    return Graph.from_edges(n, zip(iu[keep].tolist(), ju[keep].tolist()))


@dataclass(frozen=True)
class HittingTimes:
    tau_mindeg2: int
    tau_ham: int
    tau_conn: int
    uncertain_probes: int = 0

    @property
    def equal(self) -> bool:
        return self.tau_ham == self.tau_mindeg2

    def as_record(self) -> dict:
        return {
            "tau_mindeg2": self.tau_mindeg2,
            "tau_ham": self.tau_ham,
            "tau_conn": self.tau_conn,
            "equal": self.equal,
            "uncertain_probes": self.uncertain_probes,
        }


@dataclass(frozen=True)
class GraphProcess:
    n: int
    edge_order: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if len(self.edge_order) != comb(self.n, 2) or len(set(self.edge_order)) != len(self.edge_order):
            raise GraphError("edge order is not a permutation of all pairs")

    def prefix(self, m: int) -> Graph:
        if not 0 <= m <= len(self.edge_order):
            raise GraphError(f"prefix length {m} outside 0..{len(self.edge_order)}")
        return Graph.from_edges(self.n, self.edge_order[:m])


def random_process(n: int, seed: int) -> GraphProcess:
    iu, ju = _pairs(n)
    order = make_rng(seed).permutation(iu.size)
    return GraphProcess(n, tuple(zip(iu[order].tolist(), ju[order].tolist())))


def _degree_and_connectivity_times(proc: GraphProcess) -> tuple[int, int]:
    n = proc.n
    deg = [0] * n
    below = n
    parent = list(range(n))
    comps = n

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    t2 = tc = -1
    for m, (u, v) in enumerate(proc.edge_order, start=1):
        for w in (u, v):
            deg[w] += 1
            if deg[w] == 2:
                below -= 1
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            comps -= 1
        if t2 < 0 and below == 0:
            t2 = m
        if tc < 0 and comps == 1:
            tc = m
        if t2 >= 0 and tc >= 0:
            break
    return t2, tc


def run_process(n: int, seed: int, budget: int = 100_000) -> tuple[GraphProcess, HittingTimes]:
    """Generate the process and locate the three hitting times.

    The Hamiltonicity time is found by probing prefixes with the rotation
    decider: first at the earliest possible point, then by doubling and
    binary search. Probes that stay undecided count as non-Hamiltonian and
    are tallied in ``uncertain_probes``.
    """
    if n < 3:
        raise GraphError("need n >= 3")
    proc = random_process(n, seed)
    t2, tc = _degree_and_connectivity_times(proc)
    uncertain = 0

    def ham(m: int) -> bool:
        nonlocal uncertain
        d: Decision = decide_hamiltonian(proc.prefix(m), budget=budget, seed=seed ^ m)
        if d.hamiltonian is None:
            uncertain += 1
        return bool(d.hamiltonian)

    total = len(proc.edge_order)
    lo = max(t2, tc)
    if ham(lo):
        return proc, HittingTimes(t2, lo, tc, uncertain)
    step, hi = max(1, n // 4), lo
    while True:
        hi = min(total, hi + step)
        if hi == total or ham(hi):
            break
        lo, step = hi, step * 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if ham(mid):
            hi = mid
        else:
            lo = mid
    return proc, HittingTimes(t2, hi, tc, uncertain)


def expected_mindeg2_time(n: int) -> float:
    return n * (log(n) + log(log(n))) / 2


# adversarial residual subgraphs


@dataclass(frozen=True)
class ResidualResult:
    graph: Graph
    ratio: Fraction
    alpha: Fraction
    strategy: str
    readded: int
    construction: Construction | None = None

    @property
    def reached(self) -> bool:
        return self.ratio >= self.alpha


def _repair(G: Graph, kept: list[set[int]], alpha: Fraction) -> int:
    """Re-add removed edges at the most deficient vertex until nothing is deficient."""
    n = G.n
    num, den = alpha.numerator, alpha.denominator
    deg = G.degrees()

    def deficit(v: int) -> int:
        # alpha * d_G(v) - d_H(v), scaled by the denominator to stay integral
        return num * deg[v] - den * len(kept[v])

    added = 0
    while True:
        worst, worst_def = -1, 0
        for v in range(n):
            d = deficit(v)
            if d > worst_def:
                worst, worst_def = v, d
        if worst < 0:
            return added
        options = [u for u in G.adj[worst] if u not in kept[worst]]
        if not options:
            return added
        u = max(options, key=lambda x: (deficit(x), -min(x, worst), -max(x, worst)))
        kept[worst].add(u)
        kept[u].add(worst)
        added += 1


def adversarial_residual(
    G: Graph,
    alpha: Fraction | str | float,
    strategy: str = "construction",
    seed: int = 0,
    spec: ConstructionSpec | None = None,
    r: int = 2,
    eps: Fraction | str = Fraction(1, 4),
    keep: float | None = None,
) -> ResidualResult:
    """Spanning subgraph H of G aimed at residual ratio alpha.

    ``construction`` intersects G with an extremal coloured graph (the
    given spec, or the one picked for a slightly larger alpha) and then
    repairs deficient vertices. ``random_thinning`` keeps each edge with
    probability ``keep`` (default alpha) before the same repair.
    ``greedy_min_degree`` deletes edges in random order while both ends
    keep ratio at least alpha.
    """
    a = as_fraction(alpha)
    if not 0 < a <= 1:
        raise GraphError(f"alpha {a} outside (0, 1]")
    if strategy not in STRATEGIES:
        raise GraphError(f"unknown strategy {strategy!r}")
    n = G.n
    rng = make_rng(seed)
    con = None
    if strategy == "construction":
        if spec is None:
            if a == 1:
                spec = ConstructionSpec(n, r, "large")
            else:
                spec = extremal_spec(n, r, boosted_alpha(n, a, eps))
        if spec.n != n:
            raise GraphError("construction size differs from host")
        con = build(spec)
        kept = [set(G.adj[v] & con.graph.adj[v]) for v in range(n)]
    elif strategy == "random_thinning":
        prob = float(a) if keep is None else keep
        kept = [set() for _ in range(n)]
        edges = G.edges()
        draws = rng.random(len(edges))
        for (u, v), x in zip(edges, draws):
            if x < prob:
                kept[u].add(v)
                kept[v].add(u)
    else:
        kept = [set(G.adj[v]) for v in range(n)]
        edges = G.edges()
        for idx in rng.permutation(len(edges)).tolist():
            u, v = edges[idx]
            if all(len(kept[x]) - 1 >= a * G.degree(x) for x in (u, v)):
                kept[u].discard(v)
                kept[v].discard(u)
    added = 0 if strategy == "greedy_min_degree" else _repair(G, kept, a)
    H = Graph(n, tuple(frozenset(k) for k in kept))
    return ResidualResult(H, residual_ratio(G, H), a, strategy, added, con)


# degree statistics


@dataclass(frozen=True)
class DegreeProfile:
    min_degree: int
    max_degree: int
    low_set: frozenset[int]
    low_threshold: float
    separated: bool
    close_pair: tuple[int, int] | None
    max_degree_bound: float

    @property
    def max_ok(self) -> bool:
        return self.max_degree <= self.max_degree_bound


def close_low_pair(G: Graph, K: set[int] | frozenset[int], radius: int = 5) -> tuple[int, int] | None:
    """Two members of K at distance at most ``radius``, by truncated BFS."""
    for s in sorted(K):
        dist = {s: 0}
        q = deque([s])
        while q:
            v = q.popleft()
            if dist[v] == radius:
                continue
            for w in G.adj[v]:
                if w not in dist:
                    dist[w] = dist[v] + 1
                    if w in K:
                        return (s, w)
                    q.append(w)
    return None


def degree_profile(
    G: Graph,
    p: float,
    low_factor: float | Fraction = Fraction(1, 2500),
    high_factor: float = 10,
    radius: int = 5,
) -> DegreeProfile:
    """Degree extremes, the low-degree set {d <= low_factor*np}, and its spacing."""
    n = G.n
    thr = float(low_factor) * n * p
    K = frozenset(v for v in range(n) if G.degree(v) <= thr)
    pair = close_low_pair(G, K, radius)
    return DegreeProfile(G.min_degree(), G.max_degree(), K, thr, pair is None, pair, high_factor * n * p)
