"""Command-line entry point: ``colourbias <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .checker import check_cycle
from .constructions import ConstructionSpec, as_fraction, build
from .forest import grow_mono_forest
from .graph import Matching, format_edgelist, read_edgelist
from .matching import ceil_fraction, colour_matchings, max_mono_matching, mono_matching_bound, tutte_berge_witness
from .graph import colour_class
from .pipeline import load_config, run_discrepancy_experiment
from .posa import BudgetExhausted, NoHamiltonCycle, hamilton_with_matching
from .random_process import run_process


def _seed_range(text: str) -> list[int]:
    a, sep, b = text.partition("..")
    return list(range(int(a), int(b) + 1)) if sep else [int(a)]


def _read_coloured(path: str):
    G, c = read_edgelist(path)
    if c is None:
        raise SystemExit(f"{path}: edge list has no colours")
    return G, c


def cmd_construct(args: argparse.Namespace) -> int:
    spec = ConstructionSpec(args.n, args.r, args.variant, as_fraction(args.alpha) if args.alpha else None)
    con = build(spec)
    text = format_edgelist(con.graph, con.colouring)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_monomatch(args: argparse.Namespace) -> int:
    G, c = _read_coloured(args.inp)
    per = colour_matchings(G, c)
    best, M = max_mono_matching(G, c, check=False)
    d = G.min_degree() if G.n else 0
    bound = mono_matching_bound(G.n, c.r, d)
    wit = tutte_berge_witness(colour_class(G, c, best))
    report = {
        "per_colour": {str(i): len(m) for i, m in per.items()},
        "best_colour": best,
        "size": len(M),
        "matching": sorted(M.edges),
        "min_degree": d,
        "bound": str(bound),
        "bound_ceil": ceil_fraction(bound),
        "meets_bound": d == 0 or len(M) >= ceil_fraction(bound),
        "witness": {"U": sorted(wit.U), "odd_components": wit.odd_components, "deficiency": wit.deficiency},
    }
    if args.report == "json":
        print(json.dumps(report))
    else:
        for k, v in report.items():
            print(f"{k}: {v}")
    return 0


def cmd_forest(args: argparse.Namespace) -> int:
    G, c = _read_coloured(args.inp)
    plan = grow_mono_forest(G, c, args.target, args.max_paths, restarts=args.restarts, seed=args.seed)
    out = {
        "colour": plan.colour,
        "size": plan.size,
        "path_count": plan.path_count,
        "best_effort": plan.best_effort,
        "paths": [list(p) for p in plan.forest.paths],
    }
    if args.json:
        print(json.dumps(out))
    else:
        print(f"colour {plan.colour}: {plan.size} edges in {plan.path_count} paths" + (" (best effort)" if plan.best_effort else ""))
        for p in plan.forest.paths:
            print(" ".join(map(str, p)))
    return 0


def _read_matching(path: str) -> Matching:
    pairs = []
    for ln in Path(path).read_text().splitlines():
        ln = ln.strip()
        if ln and not ln.startswith("#"):
            u, v = ln.split()[:2]
            pairs.append((int(u), int(v)))
    return Matching.of(pairs)


def cmd_hamilton(args: argparse.Namespace) -> int:
    H, c = read_edgelist(args.inp)
    M = _read_matching(args.matching) if args.matching else Matching(frozenset())
    try:
        cyc = hamilton_with_matching(H, M, budget=args.budget, seed=args.seed)
    except BudgetExhausted as exc:
        print(f"failed: budget exhausted, best path has {len(exc.best_path)} vertices", file=sys.stderr)
        return 1
    except NoHamiltonCycle as exc:
        print(f"failed: {exc}", file=sys.stderr)
        return 1
    cert = check_cycle(H.n, cyc.order, H.edges(), M.edges)
    print("cycle " + " ".join(map(str, cyc.order)))
    for u, v, src in cert.sources:
        print(f"edge {u} {v} {src}")
    return 0 if cert.ok else 2


def cmd_process(args: argparse.Namespace) -> int:
    for seed in _seed_range(args.seeds):
        _, times = run_process(args.n, seed, budget=args.budget)
        rec = {"seed": seed, **times.as_record()}
        print(json.dumps(rec) if args.json else " ".join(f"{k}={v}" for k, v in rec.items()))
    return 0


def cmd_experiment(args: argparse.Namespace) -> int:
    cfg = load_config(args.config)
    records = run_discrepancy_experiment(cfg, out=args.out)
    for rec in records:
        status = "found" if rec.found else "failed"
        print(f"seed {rec.seed}: {status} route={rec.route} bias={rec.achieved_bias} counts={rec.colour_counts} {rec.error}".rstrip())
    return 1 if any(r.fatal for r in records) else 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="colourbias", description="Colour-biased Hamilton cycle experiments")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="write an extremal coloured graph")
    p.add_argument("--variant", choices=["small", "med", "large"], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--alpha", help="rational like 3/4")
    p.add_argument("--out")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("monomatch", help="largest monochromatic matching")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--report", choices=["json", "text"], default="text")
    p.set_defaults(func=cmd_monomatch)

    p = sub.add_parser("forest", help="grow a monochromatic linear forest")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--target", type=int, required=True)
    p.add_argument("--max-paths", type=int)
    p.add_argument("--restarts", type=int, default=32)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_forest)

    p = sub.add_parser("hamilton", help="Hamilton cycle through a matching")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--matching", help="file with one 'u v' pair per line")
    p.add_argument("--budget", type=int, default=10**6)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_hamilton)

    p = sub.add_parser("process", help="hitting times of the random graph process")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seeds", default="0", help="a or a..b")
    p.add_argument("--budget", type=int, default=100_000)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_process)

    p = sub.add_parser("experiment", help="run a discrepancy experiment from a TOML config")
    p.add_argument("--config", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_experiment)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
