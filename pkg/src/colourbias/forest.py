"""Monochromatic linear forests and the clean-up that hands them to the cycle search.

``grow_mono_forest`` seeds paths with a maximum matching of one colour class
and grows them with greedy extension, joining and in-colour rotations.

``cleanup`` moves poorly connected vertices into the covered set T, routes
paths through every vertex of T using two disjoint Hall matchings, and
finally pushes every path end out into the unused set U, so that each path
can later be replaced by a single matching edge between its ends.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .graph import EdgeColouring, Graph, GraphError, LinearForest, Matching, bits, colour_class, norm
from .matching import max_matching
from .random_process import close_low_pair, make_rng


@dataclass(frozen=True)
class ForestPlan:
    forest: LinearForest
    colour: int
    best_effort: bool
    seed_matching: int = 0

    @property
    def spanned(self) -> frozenset[int]:
        return self.forest.spanned

    @property
    def path_count(self) -> int:
        return len(self.forest.paths)

    @property
    def size(self) -> int:
        return self.forest.size


class _Grower:
    """Paths inside one colour class, grown by extension, joining and rotation."""

    def __init__(self, Gi: Graph, seed_edges: Iterable[tuple[int, int]], rng: random.Random):
        self.G = Gi
        self.rng = rng
        self.paths: list[list[int]] = []
        self.owner = [-1] * Gi.n
        for u, v in seed_edges:
            if rng.random() < 0.5:
                u, v = v, u
            self._add([u, v])

    def _add(self, p: list[int]) -> None:
        self.paths.append(p)
        for v in p:
            self.owner[v] = len(self.paths) - 1

    def _free(self, v: int) -> list[int]:
        return [w for w in self.G.adj[v] if self.owner[w] == -1]

    def _extend_end(self, idx: int) -> bool:
        p = self.paths[idx]
        grew = False
        while True:
            free = self._free(p[-1])
            if not free:
                return grew
            w = min(free, key=lambda x: (len(self._free(x)), self.rng.random()))
            p.append(w)
            self.owner[w] = idx
            grew = True

    def _join(self, idx: int) -> bool:
        p = self.paths[idx]
        x = p[-1]
        for w in self.G.adj[x]:
            j = self.owner[w]
            if j == -1 or j == idx:
                continue
            q = self.paths[j]
            if len(q) == 0:
                continue
            if q[0] == w:
                merged = p + q
            elif q[-1] == w:
                merged = p + q[::-1]
            else:
                continue
            self.paths[idx] = merged
            self.paths[j] = []
            for v in q:
                self.owner[v] = idx
            return True
        return False

    def _rotate(self, idx: int, tries: int) -> bool:
        """Rotate the far end until it sees a free vertex or another path end."""
        p = self.paths[idx]
        for _ in range(tries):
            last = len(p) - 1
            pos = {v: i for i, v in enumerate(p)}
            chords = [pos[u] for u in self.G.adj[p[-1]] if self.owner[u] == idx and pos[u] < last - 1]
            if not chords:
                return False
            i = self.rng.choice(chords)
            p[i + 1 :] = p[:i:-1]
            end = p[-1]
            if self._free(end):
                return True
            for w in self.G.adj[end]:
                j = self.owner[w]
                if j not in (-1, idx) and self.paths[j] and w in (self.paths[j][0], self.paths[j][-1]):
                    return True
        return False

    def grow(self, rotation_tries: int) -> None:
        changed = True
        while changed:
            changed = False
            order = [i for i, p in enumerate(self.paths) if p]
            self.rng.shuffle(order)
            for idx in order:
                if not self.paths[idx]:
                    continue
                for _ in range(2):
                    if self._join(idx) or self._extend_end(idx):
                        changed = True
                    elif self._rotate(idx, rotation_tries) and (self._join(idx) or self._extend_end(idx)):
                        changed = True
                    self.paths[idx].reverse()

    def result(self) -> list[list[int]]:
        return [p for p in self.paths if len(p) >= 2]


def _trim(paths: list[list[int]], target: int) -> list[list[int]]:
    paths = [list(p) for p in paths]
    size = sum(len(p) - 1 for p in paths)
    while size > target:
        paths.sort(key=len)
        p = paths[0]
        p.pop()
        size -= 1
        if len(p) < 2:
            paths.pop(0)
    return paths


def grow_mono_forest(
    H: Graph,
    c: EdgeColouring,
    target_size: int,
    max_paths: int | None = None,
    restarts: int = 32,
    seed: int = 0,
    colours: Sequence[int] | None = None,
    rotation_tries: int = 20,
) -> ForestPlan:
    """Large monochromatic linear forest with at most ``max_paths`` paths.

    Every colour class is tried; each restart reseeds from the class's
    maximum matching in a fresh random orientation. The best forest is the
    one of largest size after trimming to ``target_size`` and capping the
    number of paths, preferring fewer paths on ties.
    """
    if target_size < 0:
        raise GraphError("target size must be non-negative")
    c.check_total(H)
    rng = random.Random(seed)
    best: tuple | None = None
    for i in colours or range(1, c.r + 1):
        Gi = colour_class(H, c, i)
        if Gi.num_edges == 0:
            continue
        seed_edges = sorted(max_matching(Gi).edges)
        mu = len(seed_edges)
        for _ in range(max(1, restarts)):
            edges = list(seed_edges)
            rng.shuffle(edges)
            g = _Grower(Gi, edges, random.Random(rng.getrandbits(64)))
            g.grow(rotation_tries)
            paths = sorted(g.result(), key=len, reverse=True)
            capped = paths if max_paths is None else paths[:max_paths]
            trimmed = _trim(capped, target_size)
            size = sum(len(p) - 1 for p in trimmed)
            key = (size, -len(trimmed), -i)
            if best is None or key > best[0]:
                best = (key, trimmed, i, mu)
            if size >= target_size and (max_paths is None or len(trimmed) <= max_paths) and len(trimmed) == 1:
                break
    if best is None:
        return ForestPlan(LinearForest(()), 1, target_size > 0, 0)
    (size, _, _), paths, colour, mu = best
    forest = LinearForest.of(paths)
    return ForestPlan(forest, colour, size < target_size, mu)


# Hall matchings with two (or more) partners per vertex


@dataclass(frozen=True)
class HallMatchings:
    phi1: dict
    phi2: dict
    assigned: dict

    def matchings(self) -> tuple[set, set]:
        return set(self.phi1.items()), set(self.phi2.items())


@dataclass(frozen=True)
class HallViolation:
    Z: frozenset
    neighbours: frozenset
    demand: int


def bigamy_hall_matchings(
    B: Mapping[object, Iterable[object]],
    demands: Mapping[object, int] | None = None,
) -> HallMatchings | HallViolation:
    """Give each y in B several distinct partners, no partner shared.

    ``B`` maps each Y-vertex to its X-neighbours. By default every y needs
    two partners; the first two partners become phi1 and phi2. Failure
    returns a set Z of Y-vertices with fewer neighbours than its total demand.
    """
    ys = list(B)
    # keep the caller's preference order; earlier neighbours are tried first
    nbrs = {y: list(dict.fromkeys(B[y])) for y in ys}
    need = {y: (2 if demands is None else demands.get(y, 2)) for y in ys}
    copies = [(y, k) for y in ys for k in range(need[y])]
    owner: dict[object, int] = {}
    match = [None] * len(copies)

    def augment(ci: int) -> bool:
        for x in nbrs[copies[ci][0]]:
            if x not in owner:
                match[ci] = x
                owner[x] = ci
                return True
        # iterative DFS over alternating paths from copy ci
        stack = [(ci, iter(nbrs[copies[ci][0]]))]
        parent: dict[int, tuple[int, object]] = {}
        visited: set = set()
        while stack:
            cur, it = stack[-1]
            for x in it:
                if x in visited:
                    continue
                visited.add(x)
                other = owner.get(x)
                if other is None:
                    # flip the path back to the root
                    c, xx = cur, x
                    while True:
                        match[c] = xx
                        owner[xx] = c
                        if c == ci:
                            return True
                        c, xx = parent[c]
                else:
                    parent[other] = (cur, x)
                    stack.append((other, iter(nbrs[copies[other][0]])))
                break
            else:
                stack.pop()
        return False

    for ci in range(len(copies)):
        if not augment(ci):
            # alternating reachability from the stuck copy yields the violating set
            reach_y, reach_x = {copies[ci][0]}, set()
            frontier = [ci]
            seen_c = {ci}
            while frontier:
                c = frontier.pop()
                for x in nbrs[copies[c][0]]:
                    if x in reach_x:
                        continue
                    reach_x.add(x)
                    o = owner.get(x)
                    if o is not None and o not in seen_c:
                        seen_c.add(o)
                        reach_y.add(copies[o][0])
                        frontier.append(o)
            # copies of the same y share neighbours, so all copies are reachable
            Z = frozenset(reach_y)
            N = frozenset(x for y in Z for x in nbrs[y])
            return HallViolation(Z, N, sum(need[y] for y in Z))
    assigned: dict = {y: [] for y in ys}
    for (y, _), x in zip(copies, match):
        assigned[y].append(x)
    phi1 = {y: xs[0] for y, xs in assigned.items() if len(xs) >= 1}
    phi2 = {y: xs[1] for y, xs in assigned.items() if len(xs) >= 2}
    return HallMatchings(phi1, phi2, assigned)


# clean-up


@dataclass(frozen=True)
class CleanupParams:
    low_factor: float = 1 / 5000
    degree_factor: float = 1 / 5000
    q_exponent: float = -5 / 6
    b6_exponent: float = 1 / 5
    retries: int = 100
    separation: int = 5
    degree_floor: int = 2
    r: int = 2
    seed: int = 0


class CleanupFailure(RuntimeError):
    def __init__(self, stage: str, detail: str, witness: object = None):
        super().__init__(f"{stage}: {detail}")
        self.stage = stage
        self.detail = detail
        self.witness = witness


@dataclass(frozen=True)
class CleanupResult:
    T: frozenset[int]
    forest_star: LinearForest
    U: frozenset[int]
    W: frozenset[int]
    A: frozenset[int]
    K: frozenset[int]
    dropped_edges: int
    delta: float
    p: float
    attempts: int
    diagnostics: dict = field(default_factory=dict)


def _restrict(paths: Iterable[Sequence[int]], keep: set[int] | frozenset[int]) -> list[tuple[int, ...]]:
    """Split paths at vertices outside ``keep``; singletons survive."""
    out = []
    for p in paths:
        cur: list[int] = []
        for v in p:
            if v in keep:
                cur.append(v)
            else:
                if cur:
                    out.append(tuple(cur))
                cur = []
        if cur:
            out.append(tuple(cur))
    return out


def _needs_move(
    H: Graph, G: Graph, v: int, rest: int, rest_size: int, p: float, delta: float, factor: float, floor: int = 0
) -> bool:
    d = H.degree_into(v, rest)
    return d < floor or d < max(factor * p * rest_size, (0.5 + delta) * G.degree_into(v, rest))


def cleanup(
    G: Graph,
    H: Graph,
    plan: ForestPlan | LinearForest,
    p: float,
    delta: float,
    params: CleanupParams = CleanupParams(),
) -> CleanupResult:
    """Cover a set T containing the plan's vertices by paths whose ends lie outside T.

    Raises CleanupFailure for a violated spacing of low-degree vertices, a
    failed Hall condition, an empty remainder, or exhausted W' sampling.
    """
    forest = plan.forest if isinstance(plan, ForestPlan) else plan
    n = G.n
    if not H.is_subgraph_of(G):
        raise GraphError("H is not a spanning subgraph of G")
    forest.check_in(H)
    if H.min_degree() < 2:
        raise GraphError("every vertex of H needs degree at least two")
    full = (1 << n) - 1

    # low-degree vertices get a private three-vertex path
    K = frozenset(v for v in range(n) if H.degree(v) <= params.low_factor * n * p)
    pair = close_low_pair(H, K, params.separation)
    if pair is not None:
        raise CleanupFailure("spacing", f"low-degree vertices {pair} are within distance {params.separation}", pair)
    P_v = {v: (sorted(H.adj[v])[0], v, sorted(H.adj[v])[1]) for v in sorted(K)}
    Kp = frozenset(x for path in P_v.values() for x in (path[0], path[2]))
    S = forest.spanned
    S_prime = S | K | Kp
    P0 = _restrict(forest.paths, set(S - K - Kp)) + list(P_v.values())

    # grow T until every vertex outside it is well connected to the outside
    T_mask = bits(S_prime)
    while True:
        rest = full & ~T_mask
        size = rest.bit_count()
        mover = next(
            (v for v in range(n) if rest >> v & 1 and _needs_move(H, G, v, rest, size, p, delta, params.degree_factor, params.degree_floor)),
            None,
        )
        if mover is None:
            break
        T_mask |= 1 << mover
    T = frozenset(v for v in range(n) if T_mask >> v & 1)
    U = frozenset(range(n)) - T
    if not U:
        raise CleanupFailure("remainder", "no vertices left outside T")
    U_mask = bits(U)
    A = frozenset(
        v for v in S_prime if not _needs_move(H, G, v, U_mask, len(U), p, delta, params.degree_factor, params.degree_floor)
    )

    # order T \ A, then route paths through it with two disjoint Hall matchings
    rest_T = T - A
    T_plain = sorted(rest_T - K)
    placed_mask = bits(A - Kp)
    order: list[int] = []
    left = set(T_plain)
    while left:
        y = max(left, key=lambda v: (H.degree_into(v, placed_mask), -v))
        order.append(y)
        left.discard(y)
        if y not in Kp:
            placed_mask |= 1 << y
    order += sorted(rest_T & K)
    rank = {y: i for i, y in enumerate(order)}
    # prefer current path ends so that routing splits as few paths as possible
    ends0 = {v for path in P0 for v in (path[0], path[-1])}
    B = {
        y: sorted((x for x in H.adj[y] if x in A or (x in rank and rank[x] < rank[y])), key=lambda x: (x not in ends0, x))
        for y in order
    }
    hall = bigamy_hall_matchings(B)
    if isinstance(hall, HallViolation):
        raise CleanupFailure("hall", f"{len(hall.Z)} vertices of T\\A see only {len(hall.neighbours)} usable vertices", hall)
    phi1, phi2 = hall.phi1, hall.phi2
    remaining = set(order)
    P_phi: list[tuple[int, ...]] = []
    parent_of = {}
    for y in order:
        parent_of[phi1[y]] = y
        parent_of[phi2[y]] = y
    while remaining:
        x = min(v for v in remaining if parent_of.get(v) not in remaining)
        left_chain, right_chain = [], []
        for phi, chain in ((phi1, left_chain), (phi2, right_chain)):
            cur = x
            while cur not in A:
                cur = phi[cur]
                chain.append(cur)
        path = tuple(left_chain[::-1] + [x] + right_chain)
        P_phi.append(path)
        remaining -= set(path)
    A_used = frozenset(v for path in P_phi for v in (path[0], path[-1]))
    P1 = _restrict(P0, set(A))
    P2 = P_phi + _restrict(P1, set(A - A_used))
    LinearForest.of(P2).check_in(H)
    if LinearForest.of(P2).spanned != T:
        raise RuntimeError("internal: routed forest does not span T")

    # push every path end into a sampled subset of U
    ends = {}
    for path in P2:
        if len(path) == 1:
            ends[path[0]] = 2
        else:
            ends[path[0]] = ends.get(path[0], 0) + 1
            ends[path[-1]] = ends.get(path[-1], 0) + 1
    np_ = n * p
    q = min(1.0, np_ ** params.q_exponent) if np_ > 0 else 1.0
    b6 = np_ ** params.b6_exponent if np_ > 0 else 0.0
    rng = make_rng(params.seed)
    U_list = sorted(U)
    last_reason = "no attempt"
    for attempt in range(1, params.retries + 1):
        draw = rng.random(len(U_list))
        Wp = {u for u, x in zip(U_list, draw) if x < q}
        choice = bigamy_hall_matchings({z: sorted(w for w in H.adj[z] if w in Wp) for z in ends}, ends)
        if isinstance(choice, HallViolation):
            last_reason = f"Hall condition into W' failed for {len(choice.Z)} ends"
            # a larger sample is the only lever left; raise q gently
            q = min(1.0, q * 1.25)
            continue
        star = []
        for path in P2:
            got = choice.assigned
            if len(path) == 1:
                a, b = got[path[0]]
                star.append((a, path[0], b))
            else:
                star.append((got[path[0]][0],) + tuple(path) + (got[path[-1]][-1],))
        W = frozenset(v for s in star for v in (s[0], s[-1]))
        W_mask = bits(W)
        worst = max((H.degree_into(u, W_mask) for u in U), default=0)
        if worst > b6:
            last_reason = f"endpoint degree {worst} exceeds {b6:.3f}"
            continue
        forest_star = LinearForest.of(star)
        forest_star.check_in(H)
        result = _finish(G, H, forest, T, U, W, A, K, forest_star, p, delta, params, attempt)
        return result
    raise CleanupFailure("sampling", f"W' sampling failed {params.retries} times; last: {last_reason}")


def _finish(G, H, forest, T, U, W, A, K, forest_star, p, delta, params, attempts) -> CleanupResult:
    n = G.n
    U_mask = bits(U)
    W_mask = bits(W)
    b1 = all(not _needs_move(H, G, u, U_mask, len(U), p, delta, params.degree_factor, params.degree_floor) for u in U)
    b5 = all(len(s) >= 3 and s[0] in U and s[-1] in U and all(v in T for v in s[1:-1]) for s in forest_star.paths)
    b6_limit = (n * p) ** params.b6_exponent
    b6 = all(H.degree_into(u, W_mask) <= b6_limit for u in U)
    if not (b1 and b5 and b6):
        raise RuntimeError(f"clean-up postcondition failed: B1={b1} B5={b5} B6={b6}")
    kept = set(forest_star.edges())
    dropped = sum(1 for e in forest.edges() if e not in kept)
    scale = params.r / (delta**2 * p)
    diag = {
        "B2_U_size": len(U) >= n - len(forest.spanned) - 300 * scale,
        "B3_dropped": dropped <= 2000 * scale,
        "B4_paths": len(forest_star.paths) <= 2000 * scale,
        "T_minus_A": len(T - A),
        "low_degree": len(K),
    }
    return CleanupResult(T, forest_star, U, W, A, K, dropped, delta, p, attempts, diag)


def endpoints_matching(res: CleanupResult) -> Matching:
    """Pair up the two ends of every clean-up path."""
    pairs = []
    for s in res.forest_star.paths:
        if s[0] not in res.U or s[-1] not in res.U or len(s) < 3:
            raise GraphError(f"path {s[:3]}... does not have both ends in U")
        pairs.append(norm(s[0], s[-1]))
    return Matching.of(pairs)
