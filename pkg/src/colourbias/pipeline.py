"""End-to-end colour-bias experiments.

host -> residual subgraph -> colouring -> monochromatic forest -> Hamilton
cycle through the forest -> measured colour counts. Dense hosts go straight
to ``posa_force``; sparser ones go through ``cleanup`` and the matching
cycle search on the leftover vertices.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable

from . import checker
from .constructions import (
    ConstructionSpec,
    as_fraction,
    build,
    colour_bias_target,
    cycle_bound,
    extremal_spec,
    variant_target,
)
from .forest import CleanupFailure, CleanupParams, ForestPlan, cleanup, endpoints_matching, grow_mono_forest
from .graph import (
    EdgeColouring,
    Graph,
    GraphError,
    HamiltonCycle,
    Matching,
    colour_count_in_cycle,
    complete_graph,
    norm,
    read_edgelist,
)
from .matching import ceil_fraction
from .posa import BudgetExhausted, NoHamiltonCycle, hamilton_with_matching, posa_force
from .random_process import adversarial_residual, make_rng, random_process, sample_gnp

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

HOSTS = ("complete", "gnp", "process")
COLOURINGS = ("construction", "random", "single", "file")


@dataclass(frozen=True)
class ExperimentConfig:
    n: int
    r: int = 2
    eps: Fraction = Fraction(1, 4)
    seeds: tuple[int, ...] = (0,)
    host: str = "complete"
    p: float | None = None
    log_factor: float | None = None
    prefix: int | None = None
    alpha: Fraction = Fraction(1)
    strategy: str = "construction"
    colouring: str = "construction"
    variant: str | None = None
    colour_alpha: Fraction | None = None
    colour_file: str | None = None
    delta: float | None = None
    budget: int = 10**6
    max_paths: int | None = None
    restarts: int = 32
    cleanup: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "eps", as_fraction(self.eps))
        object.__setattr__(self, "alpha", as_fraction(self.alpha))
        if self.colour_alpha is not None:
            object.__setattr__(self, "colour_alpha", as_fraction(self.colour_alpha))
        object.__setattr__(self, "seeds", tuple(self.seeds))
        if self.host not in HOSTS:
            raise GraphError(f"host must be one of {HOSTS}")
        if self.colouring not in COLOURINGS:
            raise GraphError(f"colouring must be one of {COLOURINGS}")
        if not 0 < self.eps <= 1:
            raise GraphError("eps must lie in (0, 1]")
        low = Fraction(1, 2) + Fraction(1, 2 * self.r)
        if not low <= self.alpha <= 1:
            raise GraphError(f"alpha {self.alpha} outside [{low}, 1]")
        if self.host == "gnp" and self.density() is None:
            raise GraphError("gnp host needs p or log_factor")
        if self.host == "process" and self.prefix is None:
            raise GraphError("process host needs a prefix length")
        if self.colouring == "file" and not self.colour_file:
            raise GraphError("file colouring needs colour_file")

    def density(self) -> float | None:
        if self.host == "complete":
            return 1.0
        if self.host == "process":
            return self.prefix / math.comb(self.n, 2) if self.prefix is not None else None
        if self.p is not None:
            return float(self.p)
        if self.log_factor is not None:
            return min(1.0, self.log_factor * math.log(self.n) / self.n)
        return None

    @property
    def margin(self) -> float:
        return self.delta if self.delta is not None else float(self.eps) / (8 * self.r)


def _parse_seeds(raw) -> tuple[int, ...]:
    if isinstance(raw, str):
        a, _, b = raw.partition("..")
        return tuple(range(int(a), int(b) + 1)) if b else (int(a),)
    if isinstance(raw, int):
        return (raw,)
    return tuple(int(s) for s in raw)


def config_from_dict(d: dict) -> ExperimentConfig:
    """Flatten the TOML layout (top level plus [host], [adversary], [colouring], [forest], [cleanup])."""
    d = dict(d)
    flat: dict = {}
    host = d.pop("host", {})
    if isinstance(host, str):
        host = {"kind": host}
    flat["host"] = host.get("kind", "complete")
    for k in ("p", "log_factor", "prefix"):
        if k in host:
            flat[k] = host[k]
    adv = d.pop("adversary", {})
    if "alpha" in adv:
        flat["alpha"] = str(adv["alpha"])
    if "strategy" in adv:
        flat["strategy"] = adv["strategy"]
    col = d.pop("colouring", {})
    if isinstance(col, str):
        col = {"kind": col}
    flat["colouring"] = col.get("kind", "construction")
    if "variant" in col:
        flat["variant"] = col["variant"]
    if "alpha" in col:
        flat["colour_alpha"] = str(col["alpha"])
    if "path" in col:
        flat["colour_file"] = col["path"]
    fo = d.pop("forest", {})
    for k in ("max_paths", "restarts"):
        if k in fo:
            flat[k] = fo[k]
    if "cleanup" in d:
        flat["cleanup"] = dict(d.pop("cleanup"))
    if "seeds" in d:
        flat["seeds"] = _parse_seeds(d.pop("seeds"))
    if "eps" in d:
        flat["eps"] = str(d.pop("eps"))
    flat.update(d)
    return ExperimentConfig(**flat)


def load_config(path: str | Path) -> ExperimentConfig:
    with open(path, "rb") as fh:
        return config_from_dict(tomllib.load(fh))


@dataclass
class ExperimentRecord:
    seed: int
    found: bool
    route: str = ""
    colour_counts: dict = field(default_factory=dict)
    target_k: str = ""
    forest_target: int = 0
    forest_size: int = 0
    forest_colour: int = 0
    achieved_bias: int = 0
    upper_bound: int | None = None
    fatal: bool = False
    error: str = ""
    timings: dict = field(default_factory=dict)
    cycle: list[int] | None = None

    def as_json(self) -> str:
        d = asdict(self)
        d["colour_counts"] = {str(k): v for k, v in self.colour_counts.items()}
        return json.dumps(d, sort_keys=True)


def _host(cfg: ExperimentConfig, seed: int) -> Graph:
    if cfg.host == "complete":
        return complete_graph(cfg.n)
    if cfg.host == "gnp":
        return sample_gnp(cfg.n, cfg.density(), seed)
    return random_process(cfg.n, seed).prefix(cfg.prefix)


def _colour_spec(cfg: ExperimentConfig) -> ConstructionSpec:
    if cfg.variant is not None:
        return ConstructionSpec(cfg.n, cfg.r, cfg.variant, cfg.colour_alpha)
    if cfg.alpha == 1:
        return ConstructionSpec(cfg.n, cfg.r, "large")
    return extremal_spec(cfg.n, cfg.r, cfg.alpha)


def _colouring(cfg: ExperimentConfig, H: Graph, seed: int) -> tuple[EdgeColouring, int | None, Graph | None]:
    """Colouring of H, the cycle upper bound when one applies, and the extremal graph."""
    edges = H.edges()
    if cfg.colouring == "single":
        return EdgeColouring(cfg.r, {e: 1 for e in edges}), None, None
    if cfg.colouring == "random":
        draws = make_rng(seed ^ 0x5EED).integers(1, cfg.r + 1, len(edges)).tolist()
        return EdgeColouring(cfg.r, dict(zip(edges, draws))), None, None
    if cfg.colouring == "file":
        F, c = read_edgelist(cfg.colour_file)
        if c is None:
            raise GraphError("colour file carries no colours")
        return EdgeColouring(c.r, {e: c.colour(*e) for e in edges}), None, None
    con = build(_colour_spec(cfg))
    col = EdgeColouring(cfg.r, {e: con.colour_pair(*e) for e in edges})
    bound = cycle_bound(variant_target(con.spec)) if H.is_subgraph_of(con.graph) else None
    return col, bound, con.graph


def _residual(cfg: ExperimentConfig, G: Graph, seed: int) -> Graph:
    if cfg.alpha == 1:
        return G
    spec = _colour_spec(cfg) if cfg.strategy == "construction" and cfg.colouring == "construction" else None
    return adversarial_residual(G, cfg.alpha, cfg.strategy, seed, spec=spec, r=cfg.r, eps=cfg.eps).graph


def _expand(order_u: Iterable[int], U_ids: list[int], paths: dict[tuple[int, int], tuple[int, ...]]) -> list[int]:
    """Replace every virtual endpoint edge of a cycle on U by its path."""
    order = [U_ids[i] for i in order_u]
    out: list[int] = []
    k = len(order)
    for i in range(k):
        a, b = order[i], order[(i + 1) % k]
        out.append(a)
        key = norm(a, b)
        if key in paths:
            p = paths.pop(key)
            interior = p[1:-1] if p[0] == a else p[-2:0:-1]
            out.extend(interior)
    return out


def _sparse_route(
    cfg: ExperimentConfig, G: Graph, H: Graph, plan: ForestPlan, seed: int, timings: dict
) -> tuple[list[int], tuple[int, ...]]:
    t0 = time.perf_counter()
    params = CleanupParams(r=cfg.r, seed=seed, **cfg.cleanup)
    res = cleanup(G, H, plan, cfg.density(), cfg.margin, params)
    timings["cleanup"] = time.perf_counter() - t0
    M = endpoints_matching(res)
    U_ids = sorted(res.U)
    HU, _ = H.induced(U_ids)
    local = {v: i for i, v in enumerate(U_ids)}
    MU = Matching.of((local[u], local[v]) for u, v in M.edges)
    t0 = time.perf_counter()
    cyc = hamilton_with_matching(HU, MU, budget=cfg.budget, seed=seed)
    timings["search"] = time.perf_counter() - t0
    paths = {norm(s[0], s[-1]): s for s in res.forest_star.paths}
    order = _expand(cyc.order, U_ids, paths)
    return order, tuple(res.forest_star.edges())


def run_seed(cfg: ExperimentConfig, seed: int) -> ExperimentRecord:
    timings: dict = {}
    start = time.perf_counter()
    k = colour_bias_target(cfg.n, cfg.r, cfg.alpha).k
    want = ceil_fraction((1 - cfg.eps) * k)
    rec = ExperimentRecord(seed, False, target_k=str(k), forest_target=want)
    try:
        G = _host(cfg, seed)
        H = _residual(cfg, G, seed)
        col, bound, _ = _colouring(cfg, H, seed)
        rec.upper_bound = bound
        t0 = time.perf_counter()
        max_paths = cfg.max_paths if cfg.max_paths is not None else (None if cfg.host == "complete" else 1)
        plan = grow_mono_forest(H, col, want, max_paths, restarts=cfg.restarts, seed=seed)
        timings["forest"] = time.perf_counter() - t0
        rec.forest_size, rec.forest_colour = plan.size, plan.colour
        if 2 * H.min_degree() >= cfg.n + plan.size:
            rec.route = "dense"
            t0 = time.perf_counter()
            order = list(posa_force(H, plan.forest, Fraction(plan.size, 2), seed=seed).order)
            timings["search"] = time.perf_counter() - t0
            required = plan.forest.edges()
        else:
            rec.route = "sparse"
            order, required = _sparse_route(cfg, G, H, plan, seed, timings)
        cert = checker.check_cycle(cfg.n, order, H.edges(), (), dict(col.colour_of))
        missing = set(required) - {(u, v) for u, v, _ in cert.sources}
        if not cert.ok or missing:
            rec.fatal = True
            rec.error = "; ".join(cert.problems) or f"forest edges dropped: {sorted(missing)[:5]}"
            return rec
        rec.found = True
        rec.cycle = order
        rec.colour_counts = cert.colour_counts
        rec.achieved_bias = cert.majority
        if bound is not None and rec.achieved_bias > bound:
            rec.fatal = True
            rec.error = f"majority colour count {rec.achieved_bias} exceeds upper bound {bound}"
    except (CleanupFailure, BudgetExhausted, NoHamiltonCycle, GraphError) as exc:
        rec.error = f"{type(exc).__name__}: {exc}"
    except RuntimeError as exc:
        rec.fatal = True
        rec.error = f"{type(exc).__name__}: {exc}"
    finally:
        timings["total"] = time.perf_counter() - start
        rec.timings = {k2: round(v, 6) for k2, v in timings.items()}
    return rec


def run_discrepancy_experiment(cfg: ExperimentConfig, out: str | Path | None = None) -> list[ExperimentRecord]:
    """Run every seed; failures are recorded, never raised. Records append to ``out`` as they finish."""
    records = []
    for seed in cfg.seeds:
        rec = run_seed(cfg, seed)
        records.append(rec)
        if out is not None:
            with open(out, "a") as fh:
                fh.write(rec.as_json() + "\n")
                fh.flush()
    return records


def perfect_matching_bias(cyc: HamiltonCycle, c: EdgeColouring) -> tuple[Matching, int, int]:
    """Alternate-edge perfect matching holding the most edges of the cycle's majority colour."""
    if cyc.n % 2:
        raise GraphError("odd cycle has no perfect matching")
    counts = colour_count_in_cycle(cyc, c)
    colour = max(counts, key=lambda i: (counts[i], -i))
    edges = cyc.edges()
    halves = [edges[0::2], edges[1::2]]
    scores = [sum(1 for e in h if c.colour(*e) == colour) for h in halves]
    pick = 0 if scores[0] >= scores[1] else 1
    return Matching.of(halves[pick]), colour, scores[pick]
