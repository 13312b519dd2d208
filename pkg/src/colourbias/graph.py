"""Core graph, colouring, matching and path-system types.

Vertices are the integers ``0..n-1``. Edges are stored as ordered pairs
``(u, v)`` with ``u < v``. Every type here is immutable once built and
validates its invariants on construction.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Iterator, Mapping, Sequence

Edge = tuple[int, int]


class GraphError(ValueError):
    """Raised when an input violates a structural precondition."""


def norm(u: int, v: int) -> Edge:
    if u == v:
        raise GraphError(f"self-loop at {u}")
    return (u, v) if u < v else (v, u)


def bits(vertices: Iterable[int]) -> int:
    out = 0
    for v in vertices:
        out |= 1 << v
    return out


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph with adjacency sets and cached bitmasks."""

    n: int
    adj: tuple[frozenset[int], ...]
    _masks: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if len(self.adj) != self.n:
            raise GraphError("adjacency length differs from n")
        for v, nbrs in enumerate(self.adj):
            if v in nbrs:
                raise GraphError(f"self-loop at {v}")
            for u in nbrs:
                if not 0 <= u < self.n or v not in self.adj[u]:
                    raise GraphError(f"asymmetric adjacency at {v}-{u}")
        object.__setattr__(self, "_masks", tuple(bits(a) for a in self.adj))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        sets: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) outside 0..{n - 1}")
            if u == v:
                raise GraphError(f"self-loop at {u}")
            sets[u].add(v)
            sets[v].add(u)
        return cls(n, tuple(frozenset(s) for s in sets))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, tuple(frozenset() for _ in range(n)))

    @property
    def masks(self) -> tuple[int, ...]:
        return self._masks

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def neighbours(self, v: int) -> list[int]:
        return sorted(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def edges(self) -> list[Edge]:
        return [(u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v]

    @property
    def num_edges(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def min_degree(self) -> int:
        return min((len(a) for a in self.adj), default=0)

    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def degree_into(self, v: int, mask: int) -> int:
        return (self._masks[v] & mask).bit_count()

    def with_edges(self, extra: Iterable[Sequence[int]]) -> "Graph":
        return Graph.from_edges(self.n, list(self.edges()) + [tuple(e) for e in extra])

    def without_edges(self, drop: Iterable[Sequence[int]]) -> "Graph":
        gone = {norm(*e) for e in drop}
        return Graph.from_edges(self.n, [e for e in self.edges() if e not in gone])

    def induced(self, vertices: Sequence[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph relabelled to ``0..len(vertices)-1``.

        Returns the subgraph and the list mapping new ids to old ids.
        """
        old = list(vertices)
        new_of = {v: i for i, v in enumerate(old)}
        edges = [
            (new_of[u], new_of[v])
            for u in old
            for v in self.adj[u]
            if v in new_of and u < v
        ]
        return Graph.from_edges(len(old), edges), old

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        out = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp, stack = [], [s]
            while stack:
                v = stack.pop()
                comp.append(v)
                for u in self.adj[v]:
                    if not seen[u]:
                        seen[u] = True
                        stack.append(u)
            out.append(sorted(comp))
        return out

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def is_subgraph_of(self, other: "Graph") -> bool:
        return self.n == other.n and all(a <= b for a, b in zip(self.adj, other.adj))


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


@dataclass(frozen=True)
class EdgeColouring:
    r: int
    colour_of: Mapping[Edge, int]

    def __post_init__(self) -> None:
        if self.r < 1:
            raise GraphError("need at least one colour")
        for e, c in self.colour_of.items():
            if e[0] >= e[1]:
                raise GraphError(f"edge {e} is not normalised")
            if not 1 <= c <= self.r:
                raise GraphError(f"colour {c} on {e} outside 1..{self.r}")

    def colour(self, u: int, v: int) -> int:
        try:
            return self.colour_of[norm(u, v)]
        except KeyError:
            raise GraphError(f"edge ({u}, {v}) has no colour") from None

    def check_total(self, G: Graph) -> None:
        edges = set(G.edges())
        if edges != set(self.colour_of):
            missing = edges - set(self.colour_of)
            extra = set(self.colour_of) - edges
            raise GraphError(f"colouring not total: missing={sorted(missing)[:5]} extra={sorted(extra)[:5]}")

    def restrict(self, G: Graph) -> "EdgeColouring":
        return EdgeColouring(self.r, {e: self.colour(*e) for e in G.edges()})

    @classmethod
    def uniform(cls, G: Graph, colour: int = 1, r: int = 1) -> "EdgeColouring":
        return cls(r, {e: colour for e in G.edges()})


@dataclass(frozen=True)
class Matching:
    edges: frozenset[Edge]

    def __post_init__(self) -> None:
        seen: set[int] = set()
        for u, v in self.edges:
            if u >= v:
                raise GraphError(f"edge {(u, v)} is not normalised")
            if u in seen or v in seen:
                raise GraphError(f"edges share a vertex at {(u, v)}")
            seen.update((u, v))

    @classmethod
    def of(cls, edges: Iterable[Sequence[int]]) -> "Matching":
        return cls(frozenset(norm(*e) for e in edges))

    @property
    def covered(self) -> frozenset[int]:
        return frozenset(v for e in self.edges for v in e)

    def __len__(self) -> int:
        return len(self.edges)

    def mates(self, n: int) -> list[int]:
        """Partner array of length n, -1 for uncovered vertices."""
        mate = [-1] * n
        for u, v in self.edges:
            mate[u], mate[v] = v, u
        return mate

    def check_in(self, G: Graph) -> None:
        for u, v in self.edges:
            if v >= G.n or not G.has_edge(u, v):
                raise GraphError(f"matching edge {(u, v)} not in graph")


@dataclass(frozen=True)
class LinearForest:
    paths: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        seen: set[int] = set()
        for p in self.paths:
            if len(p) == 0:
                raise GraphError("empty path")
            for v in p:
                if v in seen:
                    raise GraphError(f"vertex {v} on two paths")
                seen.add(v)

    @classmethod
    def of(cls, paths: Iterable[Sequence[int]]) -> "LinearForest":
        return cls(tuple(tuple(p) for p in paths))

    @classmethod
    def from_edges(cls, edges: Iterable[Sequence[int]]) -> "LinearForest":
        """Assemble paths from an edge set, rejecting anything but a linear forest."""
        adj: dict[int, list[int]] = {}
        count = 0
        for u, v in edges:
            norm(u, v)
            adj.setdefault(u, []).append(v)
            adj.setdefault(v, []).append(u)
            count += 1
        if any(len(a) > 2 for a in adj.values()):
            raise GraphError("edge set has a vertex of degree > 2")
        paths, seen = [], set()
        for s in sorted(adj):
            if s in seen or len(adj[s]) != 1:
                continue
            path = [s]
            seen.add(s)
            prev, cur = None, s
            while True:
                nxt = [w for w in adj[cur] if w != prev]
                if not nxt:
                    break
                prev, cur = cur, nxt[0]
                path.append(cur)
                seen.add(cur)
            paths.append(tuple(path))
        if len(seen) != len(adj) or sum(len(p) - 1 for p in paths) != count:
            raise GraphError("edge set contains a cycle")
        return cls(tuple(paths))

    @property
    def size(self) -> int:
        return sum(len(p) - 1 for p in self.paths)

    @property
    def spanned(self) -> frozenset[int]:
        return frozenset(v for p in self.paths for v in p)

    def edges(self) -> list[Edge]:
        return [norm(p[i], p[i + 1]) for p in self.paths for i in range(len(p) - 1)]

    def endpoints(self) -> list[tuple[int, int]]:
        return [(p[0], p[-1]) for p in self.paths]

    def check_in(self, G: Graph) -> None:
        for u, v in self.edges():
            if v >= G.n or not G.has_edge(u, v):
                raise GraphError(f"path edge {(u, v)} not in graph")


@dataclass(frozen=True)
class HamiltonCycle:
    order: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(set(self.order)) != len(self.order):
            raise GraphError("cycle repeats a vertex")

    @property
    def n(self) -> int:
        return len(self.order)

    def edges(self) -> list[Edge]:
        k = len(self.order)
        return [norm(self.order[i], self.order[(i + 1) % k]) for i in range(k)]

    def check_in(self, G: Graph, extra: Iterable[Edge] = ()) -> None:
        """Raise unless this is a Hamilton cycle of G plus the extra edges."""
        if self.n != G.n or set(self.order) != set(range(G.n)) or G.n < 3:
            raise GraphError("cycle does not visit every vertex exactly once")
        allowed = set(extra)
        for u, v in self.edges():
            if not G.has_edge(u, v) and (u, v) not in allowed:
                raise GraphError(f"cycle edge {(u, v)} not available")


def colour_class(G: Graph, c: EdgeColouring, i: int) -> Graph:
    if not 1 <= i <= c.r:
        raise GraphError(f"colour {i} outside 1..{c.r}")
    return Graph.from_edges(G.n, [e for e in G.edges() if c.colour(*e) == i])


def residual_ratio(G: Graph, H: Graph) -> Fraction:
    """Smallest d_H(v)/d_G(v) over vertices of positive G-degree (1 if none)."""
    if not H.is_subgraph_of(G):
        raise GraphError("H is not a spanning subgraph of G")
    ratios = [Fraction(H.degree(v), G.degree(v)) for v in range(G.n) if G.degree(v) > 0]
    return min(ratios, default=Fraction(1))


def colour_count_in_cycle(cyc: HamiltonCycle, c: EdgeColouring) -> dict[int, int]:
    counts = Counter(c.colour(u, v) for u, v in cyc.edges())
    return dict(sorted(counts.items()))


def write_edgelist(path: str | Path, G: Graph, c: EdgeColouring | None = None) -> None:
    Path(path).write_text(format_edgelist(G, c))


def format_edgelist(G: Graph, c: EdgeColouring | None = None) -> str:
    lines = [f"# r={c.r}"] if c is not None else []
    lines.append(f"{G.n} {G.num_edges}")
    for u, v in G.edges():
        lines.append(f"{u} {v} {c.colour(u, v)}" if c is not None else f"{u} {v}")
    return "\n".join(lines) + "\n"


def parse_edgelist(text: str) -> tuple[Graph, EdgeColouring | None]:
    r_hint = None
    for ln in text.splitlines():
        if ln.startswith("# r="):
            r_hint = int(ln[4:])
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not rows or len(rows[0]) != 2:
        raise GraphError("missing 'n m' header")
    n, m = int(rows[0][0]), int(rows[0][1])
    body = rows[1:]
    if len(body) != m:
        raise GraphError(f"header says {m} edges, found {len(body)}")
    edges, colours = [], {}
    for row in body:
        u, v = int(row[0]), int(row[1])
        edges.append((u, v))
        if len(row) >= 3:
            colours[norm(u, v)] = int(row[2])
    G = Graph.from_edges(n, edges)
    if G.num_edges != m:
        raise GraphError("duplicate edges in edge list")
    if not colours:
        return G, (EdgeColouring(r_hint, {}) if r_hint and m == 0 else None)
    if len(colours) != m:
        raise GraphError("colour given for some edges but not all")
    return G, EdgeColouring(r_hint or max(colours.values()), colours)


def read_edgelist(path: str | Path) -> tuple[Graph, EdgeColouring | None]:
    return parse_edgelist(Path(path).read_text())
