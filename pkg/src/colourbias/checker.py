"""Stand-alone validation of Hamilton cycles.

Deliberately self-contained: it works on plain tuples and sets and imports
nothing from the search code, so a bug there cannot hide itself here.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence


@dataclass(frozen=True)
class CycleCertificate:
    ok: bool
    problems: tuple[str, ...]
    sources: tuple[tuple[int, int, str], ...] = ()
    colour_counts: dict = field(default_factory=dict)

    @property
    def majority(self) -> int:
        return max(self.colour_counts.values(), default=0)


def _key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


def check_cycle(
    n: int,
    order: Sequence[int],
    host_edges: Iterable[tuple[int, int]],
    matching_edges: Iterable[tuple[int, int]] = (),
    colours: Mapping[tuple[int, int], int] | None = None,
) -> CycleCertificate:
    """Check that ``order`` is a Hamilton cycle of host + matching using every matching edge.

    Every cycle edge is labelled with its source ("H" or "M"); colours are
    tallied when a colour map over sorted vertex pairs is given.
    """
    problems: list[str] = []
    host = {_key(u, v) for u, v in host_edges}
    extra = {_key(u, v) for u, v in matching_edges}
    order = list(order)
    if n < 3:
        problems.append("fewer than three vertices")
    if len(order) != n or sorted(order) != list(range(n)):
        problems.append("order is not a permutation of the vertices")
    sources = []
    used = set()
    for i in range(len(order)):
        e = _key(order[i], order[(i + 1) % len(order)]) if order else (0, 0)
        used.add(e)
        if e in extra:
            sources.append((e[0], e[1], "M"))
        elif e in host:
            sources.append((e[0], e[1], "H"))
        else:
            problems.append(f"edge {e} is in neither the host nor the matching")
    missing = sorted(extra - used)
    if missing:
        problems.append(f"matching edges not on the cycle: {missing}")
    counts: dict = {}
    if colours is not None:
        tally = Counter()
        for u, v, _ in sources:
            if (u, v) not in colours:
                problems.append(f"edge {(u, v)} has no colour")
            else:
                tally[colours[(u, v)]] += 1
        counts = dict(sorted(tally.items()))
    return CycleCertificate(not problems, tuple(problems), tuple(sources), counts)
