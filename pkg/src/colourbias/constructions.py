"""Extremal edge-colourings and checks of their colour-bias upper bounds.

Three families are built. Every family partitions the vertices into
consecutive blocks ``V_1, V_2, ...`` and colours an edge by the smallest
block index it touches, capped at ``r``:

* ``small``: r blocks, the last of size alpha*n; only edges meeting the last
  block are present.
* ``med``: r+1 blocks, the last of size (1-alpha)*n; only edges meeting the
  first r blocks are present.
* ``large``: r+1 blocks of near-equal size on the complete graph, the last
  block taking the ceiling.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .graph import EdgeColouring, Graph, GraphError, HamiltonCycle, Matching, colour_count_in_cycle, residual_ratio
from .matching import ceil_fraction

VARIANTS = ("small", "med", "large")


def as_fraction(x: Fraction | int | str | float) -> Fraction:
    if isinstance(x, float):
        return Fraction(x).limit_denominator(10**6)
    return Fraction(x)


@dataclass(frozen=True)
class ConstructionSpec:
    n: int
    r: int
    variant: str
    alpha: Fraction | None = None

    def __post_init__(self) -> None:
        if self.variant not in VARIANTS:
            raise GraphError(f"unknown variant {self.variant!r}; pick one of {VARIANTS}")
        if self.r < 2:
            raise GraphError("constructions need r >= 2")
        if self.n < self.r + 1:
            raise GraphError(f"need n >= r + 1 = {self.r + 1}")
        if self.alpha is not None:
            object.__setattr__(self, "alpha", as_fraction(self.alpha))
        if self.variant != "large":
            if self.alpha is None:
                raise GraphError(f"variant {self.variant} needs alpha")
            an = self.alpha * self.n
            if an.denominator != 1:
                raise GraphError(f"alpha*n = {an} is not an integer")
            if not 0 < an < self.n:
                raise GraphError(f"alpha*n = {an} must lie strictly between 0 and n")

    @property
    def alpha_n(self) -> int:
        assert self.alpha is not None
        return int(self.alpha * self.n)


def _split(total: int, parts: int) -> list[int]:
    q, rem = divmod(total, parts)
    return [q + 1 if i < rem else q for i in range(parts)]


def part_sizes(spec: ConstructionSpec) -> list[int]:
    n, r = spec.n, spec.r
    if spec.variant == "small":
        sizes = _split(n - spec.alpha_n, r - 1) + [spec.alpha_n]
    elif spec.variant == "med":
        sizes = _split(spec.alpha_n, r) + [n - spec.alpha_n]
    else:
        last = -(-n // (r + 1))
        sizes = _split(n - last, r) + [last]
    if min(sizes) < 1:
        raise GraphError(f"part sizes {sizes} include an empty part")
    return sizes


@dataclass(frozen=True)
class Construction:
    spec: ConstructionSpec
    graph: Graph
    colouring: EdgeColouring
    part_of: tuple[int, ...]

    def __iter__(self) -> Iterator:
        return iter((self.graph, self.colouring, self.part_of))

    def members(self, i: int) -> list[int]:
        return [v for v, p in enumerate(self.part_of) if p == i]

    def sizes(self) -> list[int]:
        top = max(self.part_of)
        return [self.part_of.count(i) for i in range(1, top + 1)]

    def colour_pair(self, u: int, v: int) -> int:
        """Colour rule extended to every vertex pair, including non-edges."""
        return min(self.part_of[u], self.part_of[v], self.spec.r)


def _has_edge(variant: str, pu: int, pv: int, r: int) -> bool:
    if variant == "small":
        return pu == r or pv == r
    if variant == "med":
        return not (pu == r + 1 and pv == r + 1)
    return True


def build(spec: ConstructionSpec) -> Construction:
    sizes = part_sizes(spec)
    part_of: list[int] = []
    for i, s in enumerate(sizes, start=1):
        part_of.extend([i] * s)
    r = spec.r
    edges, colours = [], {}
    for u in range(spec.n):
        for v in range(u + 1, spec.n):
            if _has_edge(spec.variant, part_of[u], part_of[v], r):
                edges.append((u, v))
                colours[(u, v)] = min(part_of[u], part_of[v], r)
    G = Graph.from_edges(spec.n, edges)
    return Construction(spec, G, EdgeColouring(r, colours), tuple(part_of))


@dataclass(frozen=True)
class ColourBiasTarget:
    k: Fraction
    terms: tuple[Fraction, Fraction, Fraction]

    @property
    def regime(self) -> str:
        """Which construction is extremal for this target."""
        return VARIANTS[self.terms.index(self.k)]


def colour_bias_target(n: int, r: int, alpha: Fraction | int | str) -> ColourBiasTarget:
    """k = min{(2a-1)n, 2an/r, 2n/(r+1)} as an exact rational."""
    a = as_fraction(alpha)
    if r < 2:
        raise GraphError("need r >= 2")
    low = Fraction(1, 2) + Fraction(1, 2 * r)
    if not low <= a <= 1:
        raise GraphError(f"alpha {a} outside [{low}, 1]")
    terms = ((2 * a - 1) * n, 2 * a * n / r, Fraction(2 * n, r + 1))
    return ColourBiasTarget(min(terms), terms)


def cycle_bound(k: Fraction) -> int:
    return 2 * ceil_fraction(Fraction(k) / 2)


def matching_bound(k: Fraction) -> int:
    return ceil_fraction(Fraction(k) / 2)


def verify_cycle_bias_upper(F: Graph, colouring: EdgeColouring, cyc: HamiltonCycle, k: Fraction) -> bool:
    if colouring.r < 2:
        raise GraphError("bias bound needs r >= 2")
    cyc.check_in(F)
    counts = colour_count_in_cycle(cyc, colouring)
    return max(counts.values()) <= cycle_bound(k)


def verify_matching_bias_upper(F: Graph, colouring: EdgeColouring, pm: Matching, k: Fraction) -> bool:
    if colouring.r < 2:
        raise GraphError("bias bound needs r >= 2")
    if F.n % 2:
        raise GraphError("odd vertex count has no perfect matching")
    pm.check_in(F)
    if len(pm.covered) != F.n:
        raise GraphError("matching is not perfect")
    counts: dict[int, int] = {}
    for u, v in pm.edges:
        c = colouring.colour(u, v)
        counts[c] = counts.get(c, 0) + 1
    return max(counts.values(), default=0) <= matching_bound(k)


def intersect_with_host(F: Graph, colouring: EdgeColouring, G: Graph) -> tuple[Graph, EdgeColouring, Fraction]:
    """Edges of both graphs, coloured as in F, plus the residual ratio against G."""
    if F.n != G.n:
        raise GraphError("F and G have different vertex counts")
    common = [e for e in G.edges() if F.has_edge(*e)]
    H = Graph.from_edges(G.n, common)
    return H, EdgeColouring(colouring.r, {e: colouring.colour(*e) for e in common}), residual_ratio(G, H)


def residual_margin(alpha: Fraction, eps: Fraction) -> Fraction:
    a, e = as_fraction(alpha), as_fraction(eps)
    return min((1 - a) / (4 * a), (2 * a - 1) * e / (8 * a))


def boosted_alpha(n: int, alpha: Fraction | str, eps: Fraction | str) -> Fraction:
    """Smallest alpha' with alpha'*n integral and (1+d)alpha <= alpha' <= (1+2d)alpha."""
    a = as_fraction(alpha)
    d = residual_margin(a, as_fraction(eps))
    lo, hi = (1 + d) * a, (1 + 2 * d) * a
    m = ceil_fraction(lo * n)
    if Fraction(m, n) > hi or m >= n:
        raise GraphError(f"no integral alpha'*n in [{lo * n}, {hi * n}] below n")
    return Fraction(m, n)


def extremal_spec(n: int, r: int, alpha: Fraction | str) -> ConstructionSpec:
    """The construction matching the smallest term of the bias target."""
    a = as_fraction(alpha)
    regime = colour_bias_target(n, r, a).regime
    return ConstructionSpec(n, r, regime, a)


def variant_target(spec: ConstructionSpec) -> Fraction:
    """The bias target term that a given construction is extremal for."""
    n, r = spec.n, spec.r
    if spec.variant == "small":
        return (2 * spec.alpha - 1) * n
    if spec.variant == "med":
        return 2 * spec.alpha * n / r
    return Fraction(2 * n, r + 1)
