"""Maximum matchings, Tutte-Berge certificates and monochromatic matchings."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

from .graph import EdgeColouring, Graph, GraphError, Matching, colour_class, iter_bits

EXHAUSTIVE_WITNESS_LIMIT = 20


class BoundViolation(AssertionError):
    """A guaranteed combinatorial bound failed on a concrete input."""


def _mates(G: Graph) -> list[int]:
    n = G.n
    adj = [sorted(a) for a in G.adj]
    mate = [-1] * n
    for u in range(n):
        if mate[u] == -1:
            for v in adj[u]:
                if mate[v] == -1:
                    mate[u], mate[v] = v, u
                    break
    for root in range(n):
        if mate[root] != -1:
            continue
        end, parent, _ = _search(adj, mate, root)
        v = end
        while v != -1:
            pv = parent[v]
            nxt = mate[pv]
            mate[v], mate[pv] = pv, v
            v = nxt
    return mate


def _search(adj: list[list[int]], mate: list[int], root: int) -> tuple[int, list[int], list[bool]]:
    """One alternating-tree search with blossom shrinking.

    Returns (exposed endpoint or -1, parent array, outer-vertex flags).
    """
    n = len(adj)
    outer = [False] * n
    parent = [-1] * n
    base = list(range(n))
    outer[root] = True
    queue = deque([root])

    def lca(a: int, b: int) -> int:
        on_path = [False] * n
        while True:
            a = base[a]
            on_path[a] = True
            if mate[a] == -1:
                break
            a = parent[mate[a]]
        while True:
            b = base[b]
            if on_path[b]:
                return b
            b = parent[mate[b]]

    def mark(v: int, b: int, child: int, in_blossom: list[bool]) -> None:
        while base[v] != b:
            in_blossom[base[v]] = in_blossom[base[mate[v]]] = True
            parent[v] = child
            child = mate[v]
            v = parent[mate[v]]

    while queue:
        v = queue.popleft()
        for to in adj[v]:
            if base[v] == base[to] or mate[v] == to:
                continue
            if to == root or (mate[to] != -1 and parent[mate[to]] != -1):
                b = lca(v, to)
                in_blossom = [False] * n
                mark(v, b, to, in_blossom)
                mark(to, b, v, in_blossom)
                for i in range(n):
                    if in_blossom[base[i]]:
                        base[i] = b
                        if not outer[i]:
                            outer[i] = True
                            queue.append(i)
            elif parent[to] == -1:
                parent[to] = v
                if mate[to] == -1:
                    return to, parent, outer
                outer[mate[to]] = True
                queue.append(mate[to])
    return -1, parent, outer


def max_matching(G: Graph) -> Matching:
    """Maximum-cardinality matching by Edmonds' blossom algorithm."""
    mate = _mates(G)
    return Matching(frozenset((v, mate[v]) for v in range(G.n) if mate[v] > v))


def matching_number(G: Graph) -> int:
    return len(max_matching(G))


@dataclass(frozen=True)
class TutteBergeWitness:
    n: int
    U: frozenset[int]
    odd_components: int
    deficiency: int
    matching_size: int
    method: str

    @property
    def certifies(self) -> bool:
        return self.deficiency >= 0 and 2 * self.matching_size == self.n - self.deficiency


def _components_avoiding(G: Graph, removed: int) -> list[int]:
    masks = G.masks
    remaining = ((1 << G.n) - 1) & ~removed
    out = []
    while remaining:
        comp = frontier = remaining & -remaining
        while frontier:
            nb = 0
            for v in iter_bits(frontier):
                nb |= masks[v]
            frontier = nb & remaining & ~comp
            comp |= frontier
        remaining &= ~comp
        out.append(comp)
    return out


def odd_components(G: Graph, U: frozenset[int] | set[int]) -> int:
    removed = 0
    for u in U:
        removed |= 1 << u
    return sum(1 for c in _components_avoiding(G, removed) if c.bit_count() % 2)


def _gallai_edmonds_u(G: Graph, mate: list[int]) -> frozenset[int]:
    # D = vertices reachable from an exposed vertex by an even alternating path.
    adj = [sorted(a) for a in G.adj]
    in_d = [False] * G.n
    for root in range(G.n):
        if mate[root] == -1:
            end, _, outer = _search(adj, mate, root)
            if end != -1:
                raise RuntimeError("matching passed in is not maximum")
            for v in range(G.n):
                in_d[v] = in_d[v] or outer[v]
    d_set = {v for v in range(G.n) if in_d[v]}
    return frozenset(u for v in d_set for u in G.adj[v] if u not in d_set)


def _slow_d_u(G: Graph, mu: int) -> frozenset[int]:
    d_set = set()
    for v in range(G.n):
        keep = [u for u in range(G.n) if u != v]
        sub, _ = G.induced(keep)
        if matching_number(sub) == mu:
            d_set.add(v)
    return frozenset(u for v in d_set for u in G.adj[v] if u not in d_set)


def tutte_berge_witness(G: Graph, exhaustive_limit: int = EXHAUSTIVE_WITNESS_LIMIT) -> TutteBergeWitness:
    """Set U maximising odd(G - U) - |U|, certified against the matching number.

    Small graphs are searched exhaustively by increasing |U| (the search stops
    as soon as the deficiency reaches n - 2*mu, which weak duality makes
    optimal). Larger graphs use the Gallai-Edmonds set A = N(D) minus D.
    """
    n = G.n
    mate = _mates(G)
    mu = sum(1 for v in range(n) if mate[v] > v)
    target = n - 2 * mu
    if n <= exhaustive_limit:
        for size in range(n + 1):
            for U in combinations(range(n), size):
                odd = odd_components(G, set(U))
                if odd - size == target:
                    return TutteBergeWitness(n, frozenset(U), odd, target, mu, "exhaustive")
        raise RuntimeError("no subset attains the matching deficiency")
    for method, U in (("gallai-edmonds", lambda: _gallai_edmonds_u(G, mate)), ("vertex-deletion", lambda: _slow_d_u(G, mu))):
        U_set = U()
        odd = odd_components(G, U_set)
        if odd - len(U_set) == target:
            return TutteBergeWitness(n, U_set, odd, target, mu, method)
    raise RuntimeError("structural witness failed to certify the matching")


def mono_matching_bound(n: int, r: int, d: int) -> Fraction:
    """Guaranteed monochromatic matching size min{d/r, (n-1)/(r+1)}."""
    if r < 1:
        raise GraphError("r must be at least 1")
    if not 0 <= d <= max(n - 1, 0):
        raise GraphError(f"degree {d} outside 0..{n - 1}")
    if n == 0:
        return Fraction(0)
    return min(Fraction(d, r), Fraction(n - 1, r + 1))


def ceil_fraction(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def colour_matchings(G: Graph, c: EdgeColouring) -> dict[int, Matching]:
    c.check_total(G)
    return {i: max_matching(colour_class(G, c, i)) for i in range(1, c.r + 1)}


def max_mono_matching(G: Graph, c: EdgeColouring, check: bool = True) -> tuple[int, Matching]:
    """Largest matching inside a single colour class, lowest colour on ties.

    With ``check`` set, raises BoundViolation if the size falls below the
    guaranteed bound on a graph of minimum degree at least one.
    """
    per = colour_matchings(G, c)
    best = max(per, key=lambda i: (len(per[i]), -i))
    if check and G.n > 0 and G.min_degree() >= 1:
        need = ceil_fraction(mono_matching_bound(G.n, c.r, G.min_degree()))
        if len(per[best]) < need:
            raise BoundViolation(f"monochromatic matching {len(per[best])} below guaranteed {need}")
    return best, per[best]


@dataclass(frozen=True)
class ComponentReport:
    components: int
    harmonic_bound: Fraction
    edges: int
    edge_bound: int

    @property
    def harmonic_ok(self) -> bool:
        return self.components <= self.harmonic_bound

    @property
    def edge_ok(self) -> bool:
        return self.edges <= self.edge_bound


def component_bounds_check(G: Graph) -> ComponentReport:
    """Component count versus sum 1/(d+1), and edge count versus C(n-c+1, 2)."""
    c = len(G.components()) if G.n else 0
    rep = ComponentReport(
        components=c,
        harmonic_bound=sum((Fraction(1, d + 1) for d in G.degrees()), Fraction(0)),
        edges=G.num_edges,
        edge_bound=comb(G.n - c + 1, 2),
    )
    if not (rep.harmonic_ok and rep.edge_ok):
        raise BoundViolation(f"component bounds failed: {rep}")
    return rep


def is_matching_in(G: Graph, M: Matching) -> bool:
    try:
        M.check_in(G)
    except GraphError:
        return False
    return True


__all__ = [
    "BoundViolation",
    "TutteBergeWitness",
    "ComponentReport",
    "max_matching",
    "matching_number",
    "tutte_berge_witness",
    "odd_components",
    "mono_matching_bound",
    "ceil_fraction",
    "colour_matchings",
    "max_mono_matching",
    "component_bounds_check",
]
