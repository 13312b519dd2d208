"""Exact enumeration over Hamilton cycles and perfect matchings of small graphs.

These routines are exponential and meant for n up to about 12. They back the
tightness checks of the constructions and serve as test oracles.
"""

from __future__ import annotations

from typing import Callable, Iterator

from .graph import EdgeColouring, Graph, HamiltonCycle, Matching


def hamilton_cycles(G: Graph) -> Iterator[HamiltonCycle]:
    """Every Hamilton cycle once: start at 0, second vertex below the last."""
    n = G.n
    if n < 3:
        return
    adj = [sorted(a) for a in G.adj]
    path = [0]
    on = [False] * n
    on[0] = True

    def rec() -> Iterator[HamiltonCycle]:
        v = path[-1]
        if len(path) == n:
            if G.has_edge(v, 0) and path[1] < v:
                yield HamiltonCycle(tuple(path))
            return
        for w in adj[v]:
            if not on[w]:
                on[w] = True
                path.append(w)
                yield from rec()
                path.pop()
                on[w] = False

    yield from rec()


def _cycle_extreme(G: Graph, weight: Callable[[int, int], int], better: Callable[[int, int], int]) -> int | None:
    # Held-Karp over (visited mask, end vertex) from a fixed start 0.
    n = G.n
    if n < 3:
        return None
    full = (1 << n) - 1
    best: dict[tuple[int, int], int] = {(1, 0): 0}
    by_mask: list[list[int]] = [[] for _ in range(n + 1)]
    by_mask[1].append(1)
    seen_masks = {1}
    for size in range(1, n):
        for mask in by_mask[size]:
            for v in range(n):
                key = (mask, v)
                if key not in best:
                    continue
                cur = best[key]
                for w in G.adj[v]:
                    if mask >> w & 1:
                        continue
                    nm = mask | 1 << w
                    val = cur + weight(v, w)
                    old = best.get((nm, w))
                    best[(nm, w)] = val if old is None else better(old, val)
                    if nm not in seen_masks:
                        seen_masks.add(nm)
                        by_mask[size + 1].append(nm)
    out = None
    for v in G.adj[0]:
        key = (full, v)
        if key in best:
            val = best[key] + weight(v, 0)
            out = val if out is None else better(out, val)
    return out


def cycle_colour_extremes(G: Graph, c: EdgeColouring, colour: int) -> tuple[int, int] | None:
    """Exact (min, max) count of one colour over all Hamilton cycles, or None."""
    w = lambda u, v: int(c.colour(u, v) == colour)  # noqa: E731
    hi = _cycle_extreme(G, w, max)
    if hi is None:
        return None
    lo = _cycle_extreme(G, w, min)
    return lo, hi


def perfect_matchings(G: Graph) -> Iterator[Matching]:
    n = G.n
    if n % 2:
        return
    used = [False] * n
    chosen: list[tuple[int, int]] = []

    def rec() -> Iterator[Matching]:
        try:
            u = used.index(False)
        except ValueError:
            yield Matching(frozenset(chosen))
            return
        used[u] = True
        for v in sorted(G.adj[u]):
            if not used[v]:
                used[v] = True
                chosen.append((min(u, v), max(u, v)))
                yield from rec()
                chosen.pop()
                used[v] = False
        used[u] = False

    yield from rec()


def matching_colour_max(G: Graph, c: EdgeColouring, colour: int) -> int | None:
    """Largest count of one colour in a perfect matching, or None if none exists."""
    n = G.n
    if n % 2:
        return None
    memo: dict[int, int | None] = {}
    full = (1 << n) - 1

    def f(mask: int) -> int | None:
        if mask == full:
            return 0
        if mask in memo:
            return memo[mask]
        u = (~mask & -~mask).bit_length() - 1
        best = None
        for v in G.adj[u]:
            if mask >> v & 1:
                continue
            sub = f(mask | 1 << u | 1 << v)
            if sub is not None:
                val = sub + int(c.colour(u, v) == colour)
                best = val if best is None or val > best else best
        memo[mask] = best
        return best

    return f(0)


def brute_force_matching_number(G: Graph) -> int:
    """Largest matching by recursion on the lowest vertex (test oracle)."""
    memo: dict[int, int] = {}

    def f(avail: int) -> int:
        if avail in memo:
            return memo[avail]
        if avail == 0:
            return 0
        u = (avail & -avail).bit_length() - 1
        rest = avail & ~(1 << u)
        best = f(rest)
        m = G.masks[u] & rest
        while m:
            low = m & -m
            best = max(best, 1 + f(rest & ~low))
            m ^= low
        memo[avail] = best
        return best

    return f((1 << G.n) - 1)
