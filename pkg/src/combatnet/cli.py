"""Command-line interface.

Subcommands: generate, evaluate, optimize, baseline, experiment <family>.
Exit codes: 0 success, 2 parameter error, 3 infeasibility, 4 degenerate
network / generation failure. ``experiment`` accepts a JSON config file
mirroring ExperimentSpec; explicit flags override config values.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from .capability import AttackEvaluator, DamageConfig, DamageReport
from .centrality import CENTRALITY_FUNCS, centrality_to_csv
from .costs import CostModel
from .errors import (
    CombatNetError,
    DegenerateNetworkError,
    GenerationError,
    InfeasibleError,
    ParameterError,
)
from .experiments import (
    EXPERIMENT_FAMILIES,
    derived_seed,
    experiment_spec_from_dict,
    run_experiment,
    write_experiment,
)
from .ipga import GAConfig, baseline_select, encode, run_ipga, run_ipga_budget_mode
from .network import (
    GeneratorConfig,
    assemble_combat_network,
    load_network,
    save_network,
)


def _int_tuple(text: str) -> tuple[int, ...]:
    return tuple(int(v) for v in text.split(","))


def _float_tuple(text: str) -> tuple[float, ...]:
    return tuple(float(v) for v in text.split(","))


def _add_network_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", choices=["ER", "BA", "GOH", "er", "ba", "goh"])
    p.add_argument("--sizes", type=_int_tuple, metavar="NO,NP,ND,NA")
    p.add_argument("--er-probs", type=_float_tuple, metavar="FOO,FPP,FDD,FAA")
    p.add_argument("--ba-params", type=_int_tuple, metavar="M0,M")
    p.add_argument("--goh-params", type=_float_tuple, metavar="BETA,KMEAN")
    p.add_argument("--inter-prob", type=float)


def _add_cost_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--gamma", type=float, default=1.0)
    p.add_argument("--rho", type=float, default=0.3)
    p.add_argument("--alpha", type=float, default=0.5)


def _add_ga_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n-pop", type=int)
    p.add_argument("--gen", type=int)
    p.add_argument("--p-c", type=float)
    p.add_argument("--p-m", type=float)
    p.add_argument("--n-seeded", type=int)
    p.add_argument("--penalty", type=float)
    p.add_argument("--mode", choices=["fixed-L", "budget-only"])


def _network_config(args, seed=None) -> GeneratorConfig:
    cfg = GeneratorConfig(seed=seed)
    if args.family:
        cfg.family = args.family.upper()
    for name in ("sizes", "er_probs", "ba_params", "goh_params", "inter_prob"):
        v = getattr(args, name)
        if v is not None:
            setattr(cfg, name, v)
    return cfg


def _ga_config(args, seed=None) -> GAConfig:
    ga = GAConfig(seed=seed)
    for flag, attr in (
        ("n_pop", "n_pop"),
        ("gen", "gen"),
        ("p_c", "p_c"),
        ("p_m", "p_m"),
        ("n_seeded", "n_seeded"),
        ("penalty", "penalty"),
        ("mode", "mode"),
    ):
        v = getattr(args, flag)
        if v is not None:
            setattr(ga, attr, v)
    return ga


def _load_or_build_network(args):
    if getattr(args, "network", None):
        return load_network(args.network)
    cfg = _network_config(args, seed=args.seed)
    return assemble_combat_network(cfg)


def _cmd_generate(args) -> int:
    out = Path(args.out)
    net_dir = out / "networks"
    net_dir.mkdir(parents=True, exist_ok=True)
    for i in range(args.replicates):
        seed = derived_seed(args.seed, i) if args.seed is not None else None
        net = assemble_combat_network(_network_config(args, seed=seed))
        path = net_dir / f"net_{i:03d}.txt"
        save_network(net, path)
        print(f"{path} n={net.n} m={net.m}")
    return 0


def _parse_attack(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    return [int(v) for v in text.replace(",", " ").split()]


def _cmd_evaluate(args) -> int:
    net = load_network(args.network)
    costs = CostModel.from_network(net, args.gamma, args.rho)
    evaluator = AttackEvaluator(net, costs, DamageConfig(alpha=args.alpha))
    report = evaluator.report(encode(net, _parse_attack(args.attack)))
    print(DamageReport.CSV_HEADER)
    print(report.to_csv_row())
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "report.csv").write_text(
            DamageReport.CSV_HEADER + "\n" + report.to_csv_row() + "\n"
        )
        (out / "costs.csv").write_text(costs.to_csv(net))
    return 0


def _run_record(chosen, report, costs, generations, wall) -> str:
    lines = [
        "attacked: " + " ".join(str(i) for i in chosen),
        f"l: {len(chosen)}",
        f"total_cost: {report.total_cost:.10g}",
        f"c_max: {costs.c_max:.10g}",
        f"r: {report.r:.10g}",
        f"generations: {generations}",
        f"wall_time_s: {wall:.3f}",
    ]
    return "\n".join(lines) + "\n"


def _cmd_optimize(args) -> int:
    net = _load_or_build_network(args)
    costs = CostModel.from_network(net, args.gamma, args.rho)
    damage = DamageConfig(alpha=args.alpha)
    ga = _ga_config(args, seed=args.seed)
    t0 = time.perf_counter()
    if ga.mode == "budget-only":
        chosen, report, _ = run_ipga_budget_mode(net, costs, damage, ga)
        history = None
    else:
        chosen, report, history = run_ipga(net, costs, damage, args.l, ga)
    wall = time.perf_counter() - t0
    record = _run_record(chosen, report, costs, ga.gen, wall)
    print(record, end="")
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "result.txt").write_text(record)
        if history is not None:
            lines = ["generation,best_fitness"]
            lines.extend(
                f"{g},{format(v, '.10g')}" for g, v in enumerate(history)
            )
            (out / "history.csv").write_text("\n".join(lines) + "\n")
    return 0


def _cmd_baseline(args) -> int:
    net = load_network(args.network)
    costs = CostModel.from_network(net, args.gamma, args.rho)
    evaluator = AttackEvaluator(net, costs, DamageConfig(alpha=args.alpha))
    values = CENTRALITY_FUNCS[args.indicator](net)
    chosen = baseline_select(values, costs, args.l)
    report = evaluator.report(encode(net, chosen))
    print("attacked: " + " ".join(str(i) for i in chosen))
    print(DamageReport.CSV_HEADER)
    print(report.to_csv_row())
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "centrality.csv").write_text(centrality_to_csv(args.indicator, values))
        (out / "report.csv").write_text(
            DamageReport.CSV_HEADER + "\n" + report.to_csv_row() + "\n"
        )
    return 0


def _cmd_experiment(args) -> int:
    config: dict = {}
    if args.config:
        config = json.loads(Path(args.config).read_text())
    config["family"] = args.family
    net_cfg = config.get("network", {})
    if isinstance(net_cfg, GeneratorConfig):  # pragma: no cover - config reuse
        net_cfg = net_cfg.__dict__
    for flag, key in (
        ("net_family", "family"),
        ("sizes", "sizes"),
        ("er_probs", "er_probs"),
        ("ba_params", "ba_params"),
        ("goh_params", "goh_params"),
        ("inter_prob", "inter_prob"),
    ):
        v = getattr(args, flag, None)
        if v is not None:
            net_cfg[key] = v.upper() if key == "family" else v
    if net_cfg:
        config["network"] = net_cfg
    ga_cfg = config.get("ga", {})
    for flag in ("n_pop", "gen", "p_c", "p_m", "n_seeded", "penalty", "mode"):
        v = getattr(args, flag, None)
        if v is not None:
            ga_cfg[flag] = v
    if ga_cfg:
        config["ga"] = ga_cfg
    if args.alpha is not None:
        config["damage"] = {"alpha": args.alpha}
    if args.gamma is not None or args.rho is not None:
        base = tuple(config.get("cost", (1.0, 0.3)))
        config["cost"] = (
            args.gamma if args.gamma is not None else base[0],
            args.rho if args.rho is not None else base[1],
        )
    for flag in ("l_range", "betas", "gammas", "rhos", "gens_grid",
                 "replicates", "seed", "max_regen"):
        v = getattr(args, flag, None)
        if v is not None:
            config[flag] = v
    spec = experiment_spec_from_dict(config)
    result = run_experiment(spec, workers=args.workers)
    write_experiment(result, args.out, plots=args.plots)
    print(f"wrote {', '.join(sorted(result.tables))} to {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="combatnet",
        description="Combat-network damage modeling and cost-constrained "
        "attack optimization",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("generate", help="generate synthetic networks")
    _add_network_flags(p_gen)
    p_gen.add_argument("--seed", type=int)
    p_gen.add_argument("--replicates", type=int, default=1)
    p_gen.add_argument("--out", default="out")
    p_gen.set_defaults(func=_cmd_generate)

    p_eval = sub.add_parser("evaluate", help="evaluate one attack set")
    p_eval.add_argument("--network", required=True)
    p_eval.add_argument("--attack", required=True,
                        help="comma- or space-separated node indices")
    _add_cost_flags(p_eval)
    p_eval.add_argument("--out")
    p_eval.set_defaults(func=_cmd_evaluate)

    p_opt = sub.add_parser("optimize", help="run the genetic optimizer")
    p_opt.add_argument("--network", help="network file; omit to generate one")
    _add_network_flags(p_opt)
    p_opt.add_argument("--l", type=int, default=10, help="damage intensity")
    _add_cost_flags(p_opt)
    _add_ga_flags(p_opt)
    p_opt.add_argument("--seed", type=int)
    p_opt.add_argument("--out")
    p_opt.set_defaults(func=_cmd_optimize)

    p_base = sub.add_parser("baseline", help="centrality-first attack baseline")
    p_base.add_argument("--network", required=True)
    p_base.add_argument(
        "--indicator", required=True, choices=sorted(CENTRALITY_FUNCS)
    )
    p_base.add_argument("--l", type=int, required=True)
    _add_cost_flags(p_base)
    p_base.add_argument("--out")
    p_base.set_defaults(func=_cmd_baseline)

    p_exp = sub.add_parser("experiment", help="run a replicated experiment family")
    p_exp.add_argument("family", choices=EXPERIMENT_FAMILIES)
    p_exp.add_argument("--config", help="JSON file mirroring ExperimentSpec")
    p_exp.add_argument("--net-family", dest="net_family",
                       choices=["ER", "BA", "GOH", "er", "ba", "goh"],
                       help="generator family override")
    p_exp.add_argument("--sizes", type=_int_tuple)
    p_exp.add_argument("--er-probs", type=_float_tuple)
    p_exp.add_argument("--ba-params", type=_int_tuple)
    p_exp.add_argument("--goh-params", type=_float_tuple)
    p_exp.add_argument("--inter-prob", type=float)
    p_exp.add_argument("--gamma", type=float)
    p_exp.add_argument("--rho", type=float)
    p_exp.add_argument("--alpha", type=float)
    p_exp.add_argument("--n-pop", type=int)
    p_exp.add_argument("--gen", type=int)
    p_exp.add_argument("--p-c", type=float)
    p_exp.add_argument("--p-m", type=float)
    p_exp.add_argument("--n-seeded", type=int)
    p_exp.add_argument("--penalty", type=float)
    p_exp.add_argument("--mode", choices=["fixed-L", "budget-only"])
    p_exp.add_argument("--l-range", type=_int_tuple)
    p_exp.add_argument("--betas", type=_float_tuple)
    p_exp.add_argument("--gammas", type=_float_tuple)
    p_exp.add_argument("--rhos", type=_float_tuple)
    p_exp.add_argument("--gens-grid", type=_int_tuple)
    p_exp.add_argument("--replicates", type=int)
    p_exp.add_argument("--seed", type=int)
    p_exp.add_argument("--max-regen", type=int)
    p_exp.add_argument("--workers", type=int, default=1)
    p_exp.add_argument("--plots", action="store_true")
    p_exp.add_argument("--out", default="out")
    p_exp.set_defaults(func=_cmd_experiment)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParameterError as exc:
        print(f"parameter error: {exc}", file=sys.stderr)
        return 2
    except InfeasibleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return 3
    except (DegenerateNetworkError, GenerationError) as exc:
        print(f"generation failure: {exc}", file=sys.stderr)
        return 4
    except CombatNetError as exc:  # any remaining package error
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
