"""Rotation-extension for Hamilton cycles that must contain a prescribed matching.

A path respects a matching M when every M-edge is either an edge of the path
or disjoint from it. Rotations keep this property as long as the broken edge
is not an M-edge, so M-edges are never lost once placed.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .graph import Graph, GraphError, HamiltonCycle, LinearForest, Matching, iter_bits, norm

DEFAULT_BUDGET = 10**6
EXACT_LIMIT = 16


class BudgetExhausted(RuntimeError):
    """The search ran out of rotations; carries the longest path it saw."""

    def __init__(self, best_path: Sequence[int], stats: "SearchStats"):
        super().__init__(f"rotation budget exhausted; best path has {len(best_path)} vertices")
        self.best_path = tuple(best_path)
        self.stats = stats


class NoHamiltonCycle(RuntimeError):
    """Exact search proved that no suitable Hamilton cycle exists."""


def _mate_array(n: int, M: Matching) -> list[int]:
    for e in M.edges:
        if e[1] >= n:
            raise GraphError(f"matching edge {e} outside the vertex set")
    return M.mates(n)


def is_m_respecting(path: Sequence[int], mate: Sequence[int]) -> bool:
    pos = {v: i for i, v in enumerate(path)}
    if len(pos) != len(path):
        return False
    for v, i in pos.items():
        m = mate[v]
        if m != -1 and (m not in pos or abs(pos[m] - i) != 1):
            return False
    return True


@dataclass(frozen=True)
class PathState:
    """A path in H + M whose first vertex stays put under rotations."""

    graph: Graph
    matching: Matching
    path: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "path", tuple(self.path))
        problem = self.violation()
        if problem:
            raise GraphError(problem)

    @property
    def fixed_end(self) -> int:
        return self.path[0]

    @property
    def end(self) -> int:
        return self.path[-1]

    def violation(self) -> str | None:
        """Describe the first broken invariant, or None."""
        mate = _mate_array(self.graph.n, self.matching)
        p = self.path
        if not p:
            return "empty path"
        if len(set(p)) != len(p):
            return "path repeats a vertex"
        for a, b in zip(p, p[1:]):
            if not (self.graph.has_edge(a, b) or mate[a] == b):
                return f"step {a}-{b} is neither an H-edge nor an M-edge"
        if not is_m_respecting(p, mate):
            return "path splits a matching edge"
        return None


def rotate(state: PathState, i: int) -> PathState:
    """Break the edge after position i and close with the chord from position i to the end."""
    p = state.path
    last = len(p) - 1
    if not 0 <= i < last - 1:
        raise GraphError(f"break index {i} outside 0..{last - 2}")
    a, b = p[i], p[i + 1]
    if not state.graph.has_edge(a, p[last]):
        raise GraphError(f"chord {a}-{p[last]} is not an H-edge")
    if norm(a, b) in state.matching.edges:
        raise GraphError(f"edge {a}-{b} belongs to the matching")
    return PathState(state.graph, state.matching, p[: i + 1] + p[:i:-1])


def rotation_options(state: PathState) -> list[int]:
    p = state.path
    last = len(p) - 1
    M = state.matching.edges
    return [
        i
        for i in range(last - 1)
        if state.graph.has_edge(p[i], p[last]) and norm(p[i], p[i + 1]) not in M
    ]


@dataclass(frozen=True)
class EndpointSet:
    endpoints: frozenset[int]
    sequences: dict[int, tuple[int, ...]]
    exhaustive: bool
    states: int

    def __len__(self) -> int:
        return len(self.endpoints)

    def path_to(self, start: PathState, v: int) -> PathState:
        """Replay the recorded rotations that end the path at v."""
        state = start
        for i in self.sequences[v]:
            state = rotate(state, i)
        return state


def rotation_endpoint_set(H: Graph, M: Matching, state: PathState, max_states: int = 200_000) -> EndpointSet:
    """All ends reachable by repeated rotations with the first vertex fixed.

    Path states are deduplicated exactly. If ``max_states`` is hit the
    result is a subset and ``exhaustive`` is False.
    """
    if state.graph is not H and state.graph != H:
        state = PathState(H, M, state.path)
    Mset = M.edges
    start = state.path
    seen = {start}
    seq: dict[int, tuple[int, ...]] = {start[-1]: ()}
    queue = deque([(start, ())])
    exhaustive = True
    while queue:
        p, hist = queue.popleft()
        last = len(p) - 1
        x = p[last]
        for i in range(last - 1):
            if p[i] in H.adj[x] and norm(p[i], p[i + 1]) not in Mset:
                q = p[: i + 1] + p[:i:-1]
                if q in seen:
                    continue
                if len(seen) >= max_states:
                    exhaustive = False
                    queue.clear()
                    break
                seen.add(q)
                h = hist + (i,)
                seq.setdefault(q[-1], h)
                queue.append((q, h))
    return EndpointSet(frozenset(seq), seq, exhaustive, len(seen))


@dataclass(frozen=True)
class ExpanderReport:
    connected: bool
    verified: str
    violating_U: frozenset[int] | None
    checked: int

    @property
    def is_expander(self) -> bool:
        return self.connected and self.violating_U is None

    def __bool__(self) -> bool:
        return self.is_expander


def _expansion(H: Graph, U_mask: int, forbidden: int) -> int:
    nb = 0
    for v in iter_bits(U_mask):
        nb |= H.masks[v]
    return (nb & ~U_mask & ~forbidden).bit_count()


def is_m_respecting_expander(
    H: Graph,
    M: Matching,
    exhaustive_limit: int = 24,
    samples: int = 100_000,
    seed: int = 0,
) -> ExpanderReport:
    """Connectivity plus |N(U) minus V(M)| >= 2|U| for every |U| <= |V|/8."""
    n = H.n
    covered = 0
    for v in M.covered:
        covered |= 1 << v
    if not H.is_connected():
        return ExpanderReport(False, "exhaustive", None, 0)
    cap = n // 8
    if n <= exhaustive_limit:
        checked = 0
        for size in range(1, cap + 1):
            for U in combinations(range(n), size):
                mask = 0
                for v in U:
                    mask |= 1 << v
                checked += 1
                if _expansion(H, mask, covered) < 2 * size:
                    return ExpanderReport(True, "exhaustive", frozenset(U), checked)
        return ExpanderReport(True, "exhaustive", None, checked)
    rng = random.Random(seed)
    order = sorted(range(n), key=lambda v: (H.degree(v), v))
    checked = 0
    while checked < samples:
        # grow a set from a low-degree seed, adding the neighbour that keeps expansion smallest
        seed_v = order[checked % n] if checked < n else rng.randrange(n)
        U = 1 << seed_v
        size = 1
        while True:
            checked += 1
            if _expansion(H, U, covered) < 2 * size:
                return ExpanderReport(True, "sampled", frozenset(iter_bits(U)), checked)
            if size >= cap or checked >= samples:
                break
            nb = 0
            for v in iter_bits(U):
                nb |= H.masks[v]
            cand = list(iter_bits(nb & ~U)) or [v for v in range(n) if not U >> v & 1]
            if rng.random() < 0.7:
                nxt = min(cand, key=lambda w: (_expansion(H, U | 1 << w, covered), rng.random()))
            else:
                nxt = rng.choice(cand)
            U |= 1 << nxt
            size += 1
    return ExpanderReport(True, "sampled", None, checked)


# exact dynamic programmes over vertex subsets (small n only)


def _reach_table(H: Graph, mate: list[int], starts: Sequence[int] | None = None) -> list[int]:
    n = H.n
    reach = [0] * (1 << n)
    for v in range(n) if starts is None else starts:
        m = mate[v]
        if m == -1:
            reach[1 << v] |= 1 << v
        else:
            reach[(1 << v) | (1 << m)] |= 1 << m
            if starts is None:
                reach[(1 << v) | (1 << m)] |= 1 << v
    masks = H.masks
    # the step out of a subset only depends on the union of its ends' neighbourhoods
    union: dict[int, int] = {}
    for mask in range(1, 1 << n):
        ends = reach[mask]
        if not ends:
            continue
        nb = union.get(ends)
        if nb is None:
            nb = 0
            for e in iter_bits(ends):
                nb |= masks[e]
            union[ends] = nb
        nb &= ~mask
        while nb:
            low = nb & -nb
            nb ^= low
            m = mate[low.bit_length() - 1]
            if m == -1:
                reach[mask | low] |= low
            else:
                reach[mask | low | 1 << m] |= 1 << m
    return reach


def _trace_path(H: Graph, mate: list[int], reach: list[int], mask: int, end: int) -> list[int]:
    # A matched end is always preceded by its mate, so walk back in pairs.
    back: list[int] = []
    cur = end
    while True:
        back.append(cur)
        mask &= ~(1 << cur)
        hook = cur
        m = mate[cur]
        if m != -1:
            back.append(m)
            mask &= ~(1 << m)
            hook = m
        if mask == 0:
            break
        cur = next(iter_bits(reach[mask] & H.masks[hook]))
    return back[::-1]


def longest_m_respecting_path(H: Graph, M: Matching) -> list[int]:
    """A longest path of H + M respecting M, by subset dynamic programming."""
    if H.n > 22:
        raise GraphError("exact longest path is limited to n <= 22")
    if H.n == 0:
        return []
    mate = _mate_array(H.n, M)
    reach = _reach_table(H, mate)
    best = max((m for m in range(1, 1 << H.n) if reach[m]), key=lambda m: (m.bit_count(), -m))
    end = next(iter_bits(reach[best]))
    return _trace_path(H, mate, reach, best, end)


def longest_m_respecting_length(H: Graph, M: Matching) -> int:
    """Vertex count of a longest M-respecting path."""
    if H.n == 0:
        return 0
    mate = _mate_array(H.n, M)
    reach = _reach_table(H, mate)
    return max(m.bit_count() for m in range(1, 1 << H.n) if reach[m])


def longest_paths_by_end(H: Graph, M: Matching) -> dict[int, list[int]]:
    """For each vertex that ends some longest M-respecting path, one such path."""
    mate = _mate_array(H.n, M)
    reach = _reach_table(H, mate)
    top = max(m.bit_count() for m in range(1, 1 << H.n) if reach[m])
    out: dict[int, list[int]] = {}
    for mask in range(1, 1 << H.n):
        if reach[mask] and mask.bit_count() == top:
            for e in iter_bits(reach[mask]):
                if e not in out:
                    out[e] = _trace_path(H, mate, reach, mask, e)
    return out


def exact_hamilton_with_matching(H: Graph, M: Matching) -> HamiltonCycle | None:
    """Exact search for a Hamilton cycle of H + M through every M-edge."""
    n = H.n
    if n < 3:
        return None
    if n > 22:
        raise GraphError("exact search is limited to n <= 22")
    mate = _mate_array(n, M)
    reach = _reach_table(H, mate, starts=[0])
    full = (1 << n) - 1
    for e in iter_bits(reach[full] & H.masks[0]):
        if mate[0] != e:
            return HamiltonCycle(tuple(_trace_path(H, mate, reach, full, e)))
    return None


# the randomised search


@dataclass
class SearchStats:
    rotations: int = 0
    extensions: int = 0
    openings: int = 0
    closures_via_h: int = 0
    restarts: int = 0
    best_length: int = 0
    exact_fallback: bool = False


class _Search:
    def __init__(self, H: Graph, mate: list[int], rng: random.Random):
        self.H = H
        self.n = H.n
        self.mate = mate
        self.rng = rng
        self.adj = [list(a) for a in H.adj]
        self.masks = H.masks
        self.path: list[int] = []
        self.pos = [-1] * self.n
        self.off = 0

    def reset(self, start: int) -> None:
        self.path = [start]
        self.pos = [-1] * self.n
        self.pos[start] = 0
        self.off = ((1 << self.n) - 1) & ~(1 << start)
        m = self.mate[start]
        if m != -1:
            self._push(m)

    def _push(self, v: int) -> None:
        self.pos[v] = len(self.path)
        self.path.append(v)
        self.off &= ~(1 << v)

    def reverse(self) -> None:
        self.path.reverse()
        for i, v in enumerate(self.path):
            self.pos[v] = i

    def extend(self, stats: SearchStats) -> bool:
        """Greedy extension at the far end, preferring neighbours with few free options."""
        grew = False
        while True:
            x = self.path[-1]
            free = self.masks[x] & self.off
            if not free:
                return grew
            best, best_key = -1, None
            for w in iter_bits(free):
                m = self.mate[w]
                tail = m if m != -1 else w
                key = ((self.masks[tail] & self.off & ~(1 << w) & ~(1 << tail)).bit_count(), self.rng.random())
                if best_key is None or key < best_key:
                    best, best_key = w, key
            self._push(best)
            if self.mate[best] != -1:
                self._push(self.mate[best])
            stats.extensions += 1
            grew = True

    def closable(self) -> bool:
        p = self.path
        return len(p) >= 3 and p[-1] in self.H.adj[p[0]] and self.mate[p[0]] != p[-1]

    def open_cycle(self, stats: SearchStats) -> bool:
        """Turn the closed path into a longer path through an outside neighbour."""
        p = self.path
        k = len(p)
        cands = []
        for j, x in enumerate(p):
            if self.masks[x] & self.off:
                cands.append(j)
        if not cands:
            return False
        j = self.rng.choice(cands)
        x = p[j]
        prev_v, next_v = p[j - 1], p[(j + 1) % k]
        drop_prev_ok = self.mate[x] != prev_v
        drop_next_ok = self.mate[x] != next_v
        if drop_next_ok and (not drop_prev_ok or self.rng.random() < 0.5):
            new = p[j + 1 :] + p[: j + 1]
        else:
            new = (p[j:] + p[:j])[::-1]
        self.path = new
        for i, v in enumerate(new):
            self.pos[v] = i
        stats.openings += 1
        stats.closures_via_h += 1
        return True

    def rotate_once(self, spanning: bool) -> bool:
        p = self.path
        last = len(p) - 1
        x = p[last]
        opts = []
        good = []
        first_adj = self.masks[p[0]]
        for u in self.adj[x]:
            i = self.pos[u]
            if i < 0 or i >= last - 1:
                continue
            nxt = p[i + 1]
            if self.mate[u] == nxt:
                continue
            opts.append(i)
            if spanning:
                if first_adj >> nxt & 1:
                    good.append(i)
            elif self.masks[nxt] & self.off or first_adj >> nxt & 1:
                good.append(i)
        if not opts:
            return False
        i = self.rng.choice(good) if good else self.rng.choice(opts)
        seg = p[i + 1 :]
        seg.reverse()
        p[i + 1 :] = seg
        for j in range(i + 1, last + 1):
            self.pos[p[j]] = j
        return True


def hamilton_search(
    H: Graph,
    M: Matching,
    budget: int = DEFAULT_BUDGET,
    seed: int = 0,
    stall: int | None = None,
) -> tuple[HamiltonCycle | None, SearchStats, tuple[int, ...]]:
    """Randomised rotation-extension; returns (cycle or None, stats, best path)."""
    n = H.n
    mate = _mate_array(n, M)
    stats = SearchStats()
    if n < 3:
        return None, stats, tuple(range(n))
    rng = random.Random(seed)
    s = _Search(H, mate, rng)
    stall = stall if stall is not None else 40 * n + 2000
    best: tuple[int, ...] = ()
    starts = sorted(range(n), key=lambda v: (-H.degree(v), v))
    attempt = 0
    # restarts count against the budget too, so a stuck search always terminates
    while stats.rotations + stats.restarts < budget:
        start = starts[0] if attempt == 0 else rng.randrange(n)
        if attempt:
            stats.restarts += 1
        attempt += 1
        s.reset(start)
        since = 0
        while stats.rotations < budget and since < stall:
            s.extend(stats)
            s.reverse()
            s.extend(stats)
            if len(s.path) > len(best):
                best = tuple(s.path)
                stats.best_length = len(best)
                since = 0
            spanning = len(s.path) == n
            if s.closable():
                if spanning:
                    cyc = HamiltonCycle(tuple(s.path))
                    return cyc, stats, best
                if s.open_cycle(stats):
                    continue
            if rng.random() < 0.5:
                s.reverse()
            if not s.rotate_once(spanning):
                s.reverse()
                if not s.rotate_once(spanning):
                    break
            stats.rotations += 1
            since += 1
    return None, stats, best


def _check_cycle(H: Graph, M: Matching, cyc: HamiltonCycle) -> None:
    cyc.check_in(H, extra=M.edges)
    used = set(cyc.edges())
    missing = [e for e in M.edges if e not in used]
    if missing:
        raise RuntimeError(f"cycle skips matching edges {missing}")


def hamilton_with_matching(
    H: Graph,
    M: Matching,
    budget: int = DEFAULT_BUDGET,
    seed: int = 0,
    exact_limit: int = EXACT_LIMIT,
) -> HamiltonCycle:
    """Hamilton cycle of H + M containing every edge of M.

    Raises BudgetExhausted when the rotation budget runs out. On small
    instances an exact subset search settles the question instead, raising
    NoHamiltonCycle when no such cycle exists.
    """
    n = H.n
    mate = _mate_array(n, M)
    if n < 3:
        raise NoHamiltonCycle("a Hamilton cycle needs at least three vertices")
    for v in range(n):
        if H.degree(v) + (mate[v] >= 0 and not H.has_edge(v, mate[v])) < 2:
            raise NoHamiltonCycle(f"vertex {v} has fewer than two usable edges")
    if not H.with_edges(M.edges).is_connected():
        raise NoHamiltonCycle("H + M is disconnected")
    small = n <= exact_limit
    cyc, stats, best = hamilton_search(H, M, min(budget, 2000 * n) if small else budget, seed)
    if cyc is None and small:
        stats.exact_fallback = True
        cyc = exact_hamilton_with_matching(H, M)
        if cyc is None:
            raise NoHamiltonCycle("exact search found no Hamilton cycle through the matching")
    if cyc is None:
        raise BudgetExhausted(best, stats)
    _check_cycle(H, M, cyc)
    return cyc


# boosters


@dataclass(frozen=True)
class Booster:
    pairs: frozenset[tuple[int, int]]
    path: tuple[int, ...]


@dataclass(frozen=True)
class AlreadyHamiltonian:
    cycle: HamiltonCycle


def find_booster(
    H0: Graph,
    M: Matching,
    check_expander: bool = True,
    max_states: int = 20_000,
    seed: int = 0,
) -> Booster | AlreadyHamiltonian:
    """A set of at most two new pairs that lengthens the longest M-respecting path.

    The longest path comes from the exact subset search when the graph is
    small and from the randomised search otherwise. Endpoint sets are then
    explored from both ends; the first pair {a, b} of endpoints that is not
    yet an edge closes a rotated longest path into a cycle, which either is
    Hamiltonian or opens into a longer path because the graph is connected.
    """
    n = H0.n
    mate = _mate_array(n, M)
    if check_expander and not is_m_respecting_expander(H0, M).is_expander:
        expander = False
    else:
        expander = True
    if n <= EXACT_LIMIT:
        cyc = exact_hamilton_with_matching(H0, M)
        if cyc is not None:
            return AlreadyHamiltonian(cyc)
        path = longest_m_respecting_path(H0, M)
    else:
        cyc, _, path = hamilton_search(H0, M, budget=50 * n, seed=seed)
        if cyc is not None:
            return AlreadyHamiltonian(cyc)
    Mset = M.edges
    state = PathState(H0, M, tuple(path))
    first = rotation_endpoint_set(H0, M, state, max_states)
    for a in sorted(first.endpoints, key=lambda v: len(first.sequences[v])):
        pa = first.path_to(state, a)
        flipped = PathState(H0, M, pa.path[::-1])
        second = rotation_endpoint_set(H0, M, flipped, max_states)
        for b in sorted(second.endpoints, key=lambda v: len(second.sequences[v])):
            pair = norm(a, b)
            if a != b and not H0.has_edge(a, b) and pair not in Mset and mate[a] != b:
                full = second.path_to(flipped, b)
                return Booster(frozenset({pair}), full.path)
    if not expander:
        raise GraphError("graph is not an M-respecting 2-expander and no booster was found")
    raise RuntimeError("no booster found from the endpoint sets of a longest path")


# prescribed linear forests


@dataclass(frozen=True)
class _Contraction:
    graph: Graph
    matching: Matching
    keep: list[int]
    inner: dict[tuple[int, int], tuple[int, ...]]


def _contract(G: Graph, paths: Sequence[Sequence[int]]) -> _Contraction:
    interior = set()
    for p in paths:
        interior.update(p[1:-1])
    keep = [v for v in range(G.n) if v not in interior]
    new_of = {v: i for i, v in enumerate(keep)}
    sub, _ = G.induced(keep)
    pairs, inner = [], {}
    for p in paths:
        a, b = new_of[p[0]], new_of[p[-1]]
        pairs.append((a, b))
        inner[(a, b)] = tuple(p)
        inner[(b, a)] = tuple(p[::-1])
    sub = sub.without_edges(pairs)
    return _Contraction(sub, Matching.of(pairs), keep, inner)


def _expand(con: _Contraction, cyc: HamiltonCycle) -> HamiltonCycle:
    order = cyc.order
    k = len(order)
    out: list[int] = []
    for i in range(k):
        a, b = order[i], order[(i + 1) % k]
        seg = con.inner.get((a, b))
        if seg is not None:
            out.extend(seg[:-1])
        else:
            out.append(con.keep[a])
    return HamiltonCycle(tuple(out))


def cycle_through_forest(
    G: Graph,
    paths: Sequence[Sequence[int]],
    budget: int = DEFAULT_BUDGET,
    seed: int = 0,
) -> HamiltonCycle:
    """Hamilton cycle of G containing every path given, via contraction.

    Each path collapses to a matching edge between its ends; the contracted
    instance goes to hamilton_with_matching and the answer is expanded back.
    """
    paths = [tuple(p) for p in paths if len(p) >= 2]
    LinearForest.of(paths).check_in(G)
    con = _contract(G, paths)
    if con.graph.n == 2:
        (p,) = paths
        if G.n >= 3 and G.has_edge(p[0], p[-1]):
            return HamiltonCycle(tuple(p))
        raise NoHamiltonCycle("spanning path cannot be closed")
    cyc = hamilton_with_matching(con.graph, con.matching, budget=budget, seed=seed)
    out = _expand(con, cyc)
    out.check_in(G)
    return out


def posa_force(G: Graph, E: LinearForest | Sequence[tuple[int, int]], t: Fraction | int | float, seed: int = 0) -> HamiltonCycle:
    """Hamilton cycle through a prescribed linear forest in a dense graph.

    Requires minimum degree at least n/2 + t and at most 2t prescribed
    edges; under these conditions a cycle always exists.
    """
    forest = E if isinstance(E, LinearForest) else LinearForest.from_edges(E)
    n = G.n
    t = Fraction(t) if not isinstance(t, float) else Fraction(t).limit_denominator(10**6)
    if t < 0:
        raise GraphError("t must be non-negative")
    if n < 3:
        raise GraphError("need at least three vertices")
    if G.min_degree() < Fraction(n, 2) + t:
        raise GraphError(f"minimum degree {G.min_degree()} below n/2 + t = {Fraction(n, 2) + t}")
    if forest.size > 2 * t:
        raise GraphError(f"forest has {forest.size} edges, more than 2t = {2 * t}")
    forest.check_in(G)
    try:
        cyc = cycle_through_forest(G, forest.paths, seed=seed)
    except (BudgetExhausted, NoHamiltonCycle) as exc:
        raise RuntimeError(f"search failed although the degree condition holds: {exc}") from exc
    used = set(cyc.edges())
    if not set(forest.edges()) <= used:
        raise RuntimeError("expanded cycle lost a prescribed edge")
    return cyc


# Hamiltonicity decision for plain graphs


def articulation_points(G: Graph) -> set[int]:
    n = G.n
    disc = [-1] * n
    low = [0] * n
    out: set[int] = set()
    timer = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        children = 0
        stack = [(root, -1, iter(G.adj[root]))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] == -1:
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, v, iter(G.adj[w])))
                    advanced = True
                    break
                if w != parent:
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if parent != -1:
                low[parent] = min(low[parent], low[v])
                if parent == root:
                    children += 1
                elif low[v] >= disc[parent]:
                    out.add(parent)
        if children > 1:
            out.add(root)
    return out


@dataclass(frozen=True)
class Decision:
    hamiltonian: bool | None
    cycle: HamiltonCycle | None
    reason: str


def decide_hamiltonian(G: Graph, budget: int = 100_000, seed: int = 0, escalate: int = 10) -> Decision:
    """Decide Hamiltonicity: certain refusals from structure, otherwise search.

    Edges at degree-two vertices are forced; they form paths that are
    contracted into matching edges before the rotation search runs. An
    exhausted budget is raised by ``escalate`` once; if that also runs out
    the answer is None (unknown).
    """
    n = G.n
    if n < 3:
        return Decision(False, None, "fewer than three vertices")
    if G.min_degree() < 2:
        return Decision(False, None, "vertex of degree below two")
    if not G.is_connected():
        return Decision(False, None, "disconnected")
    if articulation_points(G):
        return Decision(False, None, "cut vertex")
    forced = {norm(v, u) for v in range(n) if G.degree(v) == 2 for u in G.adj[v]}
    load = [0] * n
    for u, v in forced:
        load[u] += 1
        load[v] += 1
    if max(load) > 2:
        return Decision(False, None, "three forced edges at one vertex")
    try:
        forest = LinearForest.from_edges(forced)
    except GraphError:
        if len(forced) == n:
            cyc = _forced_cycle(n, forced)
            if cyc is not None:
                return Decision(True, cyc, "forced edges form a Hamilton cycle")
        return Decision(False, None, "forced edges close a short cycle")
    for attempt, b in enumerate((budget, budget * escalate)):
        try:
            cyc = cycle_through_forest(G, forest.paths, budget=b, seed=seed + attempt)
            return Decision(True, cyc, "search")
        except NoHamiltonCycle:
            return Decision(False, None, "exact search")
        except BudgetExhausted:
            continue
    return Decision(None, None, "budget exhausted twice")


def _forced_cycle(n: int, edges: set[tuple[int, int]]) -> HamiltonCycle | None:
    adj: dict[int, list[int]] = {}
    for u, v in edges:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    order, prev, cur = [0], -1, 0
    while True:
        nxt = [w for w in adj.get(cur, []) if w != prev]
        if not nxt:
            return None
        prev, cur = cur, nxt[0]
        if cur == 0:
            break
        order.append(cur)
    return HamiltonCycle(tuple(order)) if len(order) == n else None
