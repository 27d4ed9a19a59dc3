"""Command-line frontend.

Subcommands map one-to-one onto the library: gen, analyze, anneal, lift,
suppress, simulate, pipeline.  Every command writes its outputs plus a
manifest.json into --out.  Exit codes: 0 ok, 2 usage, 3 parse, 4 budget,
5 contract violation, 1 anything else.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .alist import read_alist, write_alist
from .anneal import AnnealConfig, anneal
from .becsim import StopRule, mc_simulate
from .errors import (AlistParseError, ContractViolationError,
                     EnumerationBudgetError, InvalidParameterError,
                     LdpcForgeError, RealizationError)
from .graph import DegreeDistribution, sample_irregular, sample_regular
from .lift import LiftingSpec, lift, sample_lifting_spec
from .manifest import build_manifest, write_json
from .pipeline import PipelineConfig, run_pipeline
from .stopsets import error_floor_profile, induced_stats
from .suppress import brute_force_survivals, first_order_expectation, suppressing_weight

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_BUDGET = 4
EXIT_CONTRACT = 5


def _default_seed() -> int:
    env = os.environ.get("LDPC_FORGE_SEED")
    return int(env) if env else 0


def _parse_dist(text: str) -> dict[int, float]:
    """Parse "2:0.4187,3:0.1626,6:0.4187" into a degree->fraction map."""
    out: dict[int, float] = {}
    for part in text.split(","):
        deg, _, frac = part.partition(":")
        out[int(deg)] = float(frac)
    return out


def _outdir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _load_graph(path: str):
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise AlistParseError(f"cannot read {path}: {e}") from e
    return read_alist(text)


def cmd_gen(args) -> int:
    if args.regular:
        n, dv, dc = args.regular
        g = sample_regular(n, dv, dc, args.seed)
        config = {"kind": "regular", "n": n, "dv": dv, "dc": dc, "seed": args.seed}
    else:
        dist = DegreeDistribution(_parse_dist(args.lam), _parse_dist(args.rho))
        g = sample_irregular(args.n, dist, args.seed)
        config = {"kind": "irregular", "n": args.n, "lambda": _parse_dist(args.lam),
                  "rho": _parse_dist(args.rho), "seed": args.seed}
    out = _outdir(args)
    (out / "code.alist").write_text(write_alist(g))
    stages = {"graph": {"n_vars": g.n_vars, "n_checks": g.n_checks,
                        "n_edges": len(g.edges),
                        "parallel_edges": g.has_parallel_edges}}
    write_json(out / "manifest.json",
               build_manifest("gen", config, stages, {"code.alist": "code.alist"}))
    return EXIT_OK


def cmd_analyze(args) -> int:
    g = _load_graph(args.infile)
    profile = error_floor_profile(g, args.d_cap, budget=args.budget_enum)
    out = _outdir(args)
    write_json(out / "profile.json", profile.to_json_dict())
    config = {"in": args.infile, "d_cap": args.d_cap, "budget_enum": args.budget_enum}
    stages = {"profile": profile.to_json_dict()}
    write_json(out / "manifest.json",
               build_manifest("analyze", config, stages, {"profile.json": "profile.json"}))
    print(json.dumps({"d_stp": profile.d_stp, "m_s": profile.m_s}))
    return EXIT_OK


def cmd_anneal(args) -> int:
    g = _load_graph(args.infile)
    cfg = AnnealConfig(seed=args.seed, d_start=args.d_start, d_target=args.d_target,
                       max_trials=args.budget_trials, time_budget_s=args.budget_seconds,
                       per_d_attempt_cap=args.attempt_cap,
                       enumeration_budget=args.budget_enum)
    g2, report = anneal(g, cfg)
    out = _outdir(args)
    (out / "annealed.alist").write_text(write_alist(g2))
    write_json(out / "report.json", report.to_json_dict())
    config = {"in": args.infile, "seed": args.seed, "d_start": args.d_start,
              "d_target": args.d_target, "budget_trials": args.budget_trials,
              "budget_seconds": args.budget_seconds, "attempt_cap": args.attempt_cap,
              "budget_enum": args.budget_enum}
    write_json(out / "manifest.json",
               build_manifest("anneal", config, {"report": report.to_json_dict()},
                              {"annealed.alist": "annealed.alist",
                               "report.json": "report.json"}))
    print(json.dumps({"d_stp": report.final_profile.d_stp,
                      "m_s": report.final_profile.m_s,
                      "swaps_accepted": report.swaps_accepted}))
    return EXIT_OK


def cmd_lift(args) -> int:
    g = _load_graph(args.infile)
    if args.spec:
        spec = LiftingSpec.from_json_dict(json.loads(Path(args.spec).read_text()))
    else:
        spec = sample_lifting_spec(args.K, len(g.edges), args.seed)
    lifted = lift(g, spec)
    out = _outdir(args)
    (out / "lifted.alist").write_text(write_alist(lifted))
    write_json(out / "spec.json", spec.to_json_dict())
    config = {"in": args.infile, "K": args.K, "seed": args.seed,
              "spec": args.spec}
    stages = {"lift": {"K": spec.K, "n_vars": lifted.n_vars, "n_checks": lifted.n_checks}}
    write_json(out / "manifest.json",
               build_manifest("lift", config, stages,
                              {"lifted.alist": "lifted.alist", "spec.json": "spec.json"}))
    return EXIT_OK


def cmd_suppress(args) -> int:
    g = _load_graph(args.infile)
    if args.set:
        sets = [tuple(int(x) for x in args.set.split(","))]
    else:
        profile = error_floor_profile(g, args.d_cap, budget=args.budget_enum)
        if profile.d_stp is None:
            raise ContractViolationError(
                f"no stopping sets of size <= {args.d_cap}; give --set explicitly")
        sets = list(profile.min_sets)
    entries = []
    for s in sets:
        stats = induced_stats(g, s)
        entry = {
            "set": list(s),
            "w_sup": str(suppressing_weight(stats)),
            "first_order_expectation": str(first_order_expectation(g, s, args.K)),
        }
        if args.oracle:
            census = brute_force_survivals(g, s, args.K, first_order_only=args.first_order_only)
            entry["census"] = census.to_json_dict()
        entries.append(entry)
    out = _outdir(args)
    payload = {"K": args.K, "sets": entries}
    write_json(out / "census.json", payload)
    if args.k_grid:
        # (K, expectation) pairs per set, plot-ready for slope fits
        grid = [int(k) for k in args.k_grid.split(",")]
        lines = ["set,K,expectation"]
        for s in sets:
            label = "-".join(str(v) for v in s)
            for k in grid:
                lines.append(f"{label},{k},{float(first_order_expectation(g, s, k))!r}")
        (out / "fit.csv").write_text("\n".join(lines) + "\n")
    config = {"in": args.infile, "K": args.K, "set": args.set, "d_cap": args.d_cap,
              "oracle": args.oracle}
    write_json(out / "manifest.json",
               build_manifest("suppress", config, {"census": payload},
                              {"census.json": "census.json"}))
    print(json.dumps({"K": args.K,
                      "first_order_expectation": entries[0]["first_order_expectation"]}))
    return EXIT_OK


def cmd_simulate(args) -> int:
    g = _load_graph(args.infile)
    if not args.eps:
        raise InvalidParameterError("give at least one --eps")
    stop = StopRule(min_frame_errors=args.min_frame_errors, max_frames=args.max_frames)
    curve = mc_simulate(g, args.eps, stop=stop, seed=args.seed, workers=args.workers)
    out = _outdir(args)
    (out / "curves.csv").write_text(curve.to_csv())
    config = {"in": args.infile, "eps": args.eps, "seed": args.seed,
              "min_frame_errors": args.min_frame_errors, "max_frames": args.max_frames,
              "workers": args.workers}
    stages = {"points": [{"eps": p.eps, "frames": p.frames, "fer": p.fer}
                         for p in curve.points]}
    write_json(out / "manifest.json",
               build_manifest("simulate", config, stages, {"curves.csv": "curves.csv"}))
    return EXIT_OK


def cmd_pipeline(args) -> int:
    file_cfg: dict = {}
    if args.config:
        file_cfg = json.loads(Path(args.config).read_text())

    def pick(flag_val, key, default):
        if flag_val is not None:
            return flag_val
        return file_cfg.get(key, default)

    seed = pick(args.seed if args.seed_given else None, "seed", _default_seed())
    d_u = pick(args.d_u, "d_u", 1)
    K = pick(args.K, "K", 1)
    base_cfg = file_cfg.get("base", {"kind": "regular", "n": 32, "dv": 3, "dc": 6})
    if args.regular:
        base_cfg = {"kind": "regular", "n": args.regular[0], "dv": args.regular[1],
                    "dc": args.regular[2]}
    if base_cfg.get("kind") == "regular":
        base = ("regular", base_cfg["n"], base_cfg["dv"], base_cfg["dc"])
    else:
        dist = DegreeDistribution({int(k): v for k, v in base_cfg["lambda"].items()},
                                  {int(k): v for k, v in base_cfg["rho"].items()})
        base = ("irregular", base_cfg["n"], dist)

    def stage_cfg(key, d_target_default):
        raw = dict(file_cfg.get(key, {}))
        raw.setdefault("d_target", d_target_default)
        raw.setdefault("max_trials", args.budget_trials)
        raw.setdefault("per_d_attempt_cap", args.attempt_cap)
        raw.setdefault("enumeration_budget", args.budget_enum)
        return AnnealConfig(**raw)

    cfg = PipelineConfig(base=base, d_u=d_u, K=K, seed=seed,
                         da_anneal=stage_cfg("da_anneal", args.d_target),
                         seq_anneal=stage_cfg("seq_anneal", args.d_target),
                         eps_list=tuple(args.eps or ()),
                         stop=StopRule(min_frame_errors=args.min_frame_errors,
                                       max_frames=args.max_frames),
                         workers=args.workers)
    result = run_pipeline(cfg, out_dir=args.out)
    print(json.dumps({
        "base_d_stp": result.manifest["stages"]["base"]["profile"]["d_stp"],
        "min_w_sup": result.manifest["stages"]["base"]["w_sup_census"]["min_w_sup"],
        "lifted_d_stp": result.manifest["stages"]["lifted"]["profile_after"]["d_stp"],
    }))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ldpc-forge",
                                description="finite-length LDPC design toolkit")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, needs_in=True):
        sp.add_argument("--seed", type=int, default=_default_seed())
        sp.add_argument("--workers", type=int, default=1)
        sp.add_argument("--out", default="ldpc-run")
        if needs_in:
            sp.add_argument("--in", dest="infile", required=True)

    sp = sub.add_parser("gen", help="sample a code and write code.alist")
    common(sp, needs_in=False)
    sp.add_argument("--regular", nargs=3, type=int, metavar=("N", "DV", "DC"))
    sp.add_argument("--n", type=int)
    sp.add_argument("--lambda", dest="lam", help="e.g. 2:0.4187,3:0.1626,6:0.4187")
    sp.add_argument("--rho", help="e.g. 6:1.0")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("analyze", help="stopping distance and multiplicity")
    common(sp)
    sp.add_argument("--d-cap", type=int, default=8)
    sp.add_argument("--budget-enum", type=int, default=200_000_000)
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("anneal", help="code annealing on an alist code")
    common(sp)
    sp.add_argument("--d-start", type=int, default=1)
    sp.add_argument("--d-target", type=int, default=None)
    sp.add_argument("--budget-trials", type=int, default=None)
    sp.add_argument("--budget-seconds", type=float, default=None)
    sp.add_argument("--attempt-cap", type=int, default=5000)
    sp.add_argument("--budget-enum", type=int, default=50_000_000)
    sp.set_defaults(func=cmd_anneal)

    sp = sub.add_parser("lift", help="cyclic lifting by K")
    common(sp)
    sp.add_argument("--K", type=int, default=2)
    sp.add_argument("--spec", help="lifting spec JSON (default: sample uniformly)")
    sp.set_defaults(func=cmd_lift)

    sp = sub.add_parser("suppress", help="suppressing-weight analysis")
    common(sp)
    sp.add_argument("--K", type=int, default=2)
    sp.add_argument("--set", help="explicit stopping set, e.g. 1,2")
    sp.add_argument("--d-cap", type=int, default=8)
    sp.add_argument("--budget-enum", type=int, default=200_000_000)
    sp.add_argument("--oracle", action="store_true",
                    help="also run the brute-force survival census")
    sp.add_argument("--first-order-only", action="store_true")
    sp.add_argument("--k-grid", help="emit fit.csv of (K, expectation) pairs, e.g. 4,8,16")
    sp.set_defaults(func=cmd_suppress)

    sp = sub.add_parser("simulate", help="Monte Carlo FER/BER on the BEC")
    common(sp)
    sp.add_argument("--eps", type=float, action="append")
    sp.add_argument("--min-frame-errors", type=int, default=100)
    sp.add_argument("--max-frames", type=int, default=10**8)
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("pipeline", help="DA+CA, lift, lifting-sequence CA")
    common(sp, needs_in=False)
    sp.add_argument("--config", help="pipeline config JSON")
    sp.add_argument("--regular", nargs=3, type=int, metavar=("N", "DV", "DC"))
    sp.add_argument("--d-u", type=int, default=None)
    sp.add_argument("--K", type=int, default=None)
    sp.add_argument("--d-target", type=int, default=4)
    sp.add_argument("--budget-trials", type=int, default=20000)
    sp.add_argument("--attempt-cap", type=int, default=2000)
    sp.add_argument("--budget-enum", type=int, default=50_000_000)
    sp.add_argument("--eps", type=float, action="append")
    sp.add_argument("--min-frame-errors", type=int, default=100)
    sp.add_argument("--max-frames", type=int, default=10**6)
    sp.set_defaults(func=cmd_pipeline)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code else 0
    args.seed_given = any(a == "--seed" or a.startswith("--seed=") for a in argv)
    try:
        return args.func(args)
    except (AlistParseError, json.JSONDecodeError) as e:
        print(f"ldpc-forge: parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except EnumerationBudgetError as e:
        print(f"ldpc-forge: budget exhausted: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except ContractViolationError as e:
        print(f"ldpc-forge: contract violation: {e}", file=sys.stderr)
        return EXIT_CONTRACT
    except (InvalidParameterError, RealizationError) as e:
        print(f"ldpc-forge: invalid parameters: {e}", file=sys.stderr)
        return EXIT_USAGE
    except LdpcForgeError as e:
        print(f"ldpc-forge: error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
