"""Seeded, replicated experiment families with CSV outputs.

Six families mirror the paper-style studies: algorithm comparison across
damage intensities, a scale-free exponent sweep, a network-size sweep, the
attack-law grid over cost parameters, a convergence study, and a runtime
study. Every family is a deterministic function of (spec, master seed):
replicate RNG streams are derived via SeedSequence from integer key tuples
(master seed, replicate, counter), so reruns produce byte-identical result
CSVs regardless of worker count. Measured wall times are the one exception
and live in separate timing tables.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .capability import AttackEvaluator, DamageConfig, baseline_metrics
from .centrality import CENTRALITY_FUNCS
from .costs import CostModel
from .errors import DegenerateNetworkError, ParameterError
from .ipga import GAConfig, baseline_select, encode, run_ipga, run_ipga_budget_mode
from .network import (
    CombatNetwork,
    GeneratorConfig,
    assemble_combat_network,
    network_from_text,
    network_to_text,
)

__all__ = [
    "EXPERIMENT_FAMILIES",
    "ALGORITHMS",
    "ExperimentSpec",
    "ResultTable",
    "ExperimentResult",
    "derived_seed",
    "run_compare",
    "run_beta_sweep",
    "run_size_sweep",
    "run_attack_law",
    "run_convergence",
    "run_runtime",
    "run_experiment",
    "write_experiment",
    "experiment_spec_from_dict",
]

EXPERIMENT_FAMILIES = (
    "compare-algorithms",
    "beta-sweep",
    "size-sweep",
    "attack-law",
    "convergence",
    "runtime",
)

# The optimizer plus the five indicator-first baselines, in reporting order.
ALGORITHMS = (
    "ipga",
    "degree",
    "betweenness",
    "eigenvector",
    "closeness",
    "topological_potential",
)

Z90 = 1.645  # normal-approximation 90% confidence half-width multiplier


def derived_seed(*keys: int) -> int:
    """Deterministic child seed from an integer key tuple."""
    return int(np.random.SeedSequence([int(k) for k in keys]).generate_state(1)[0])


@dataclass
class ExperimentSpec:
    """Everything one experiment family needs, including its grids."""

    family: str = "compare-algorithms"
    network: GeneratorConfig = field(default_factory=GeneratorConfig)
    damage: DamageConfig = field(default_factory=DamageConfig)
    cost: tuple[float, float] = (1.0, 0.3)  # (gamma, rho)
    ga: GAConfig = field(default_factory=GAConfig)
    l_range: tuple[int, ...] = tuple(range(1, 21))
    replicates: int = 20
    seed: int = 0
    max_regen: int = 20  # regeneration attempts before giving up on a replicate
    betas: tuple[float, ...] = (2.5, 3.0, 3.5, 4.0, 4.5, 5.0)
    sizes_grid: tuple[tuple[int, int, int, int], ...] = (
        (50, 40, 30, 30),
        (23, 19, 14, 14),
        (17, 13, 10, 10),
    )
    gammas: tuple[float, ...] = (0.0, 0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0)
    rhos: tuple[float, ...] = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9)
    gens_grid: tuple[int, ...] = (100, 300, 500)

    def validate(self) -> None:
        if self.family not in EXPERIMENT_FAMILIES:
            raise ParameterError(f"unknown experiment family {self.family!r}")
        if self.replicates < 1:
            raise ParameterError("replicates must be >= 1")
        if not self.l_range and self.family not in ("attack-law",):
            raise ParameterError("l_range must be nonempty")
        self.network.validate()
        self.ga.validate()
        gamma, rho = self.cost
        if gamma < 0 or not 0.0 <= rho <= 1.0:
            raise ParameterError("cost requires gamma >= 0 and rho in [0, 1]")


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, float):
        return format(v, ".10g")
    return str(v)


@dataclass
class ResultTable:
    columns: tuple[str, ...]
    rows: list[tuple] = field(default_factory=list)

    def append(self, *values) -> None:
        if len(values) != len(self.columns):
            raise ParameterError("row width does not match columns")
        self.rows.append(tuple(values))

    def column(self, name: str) -> list:
        i = self.columns.index(name)
        return [row[i] for row in self.rows]

    def select(self, **conditions) -> "ResultTable":
        idx = {c: self.columns.index(c) for c in conditions}
        kept = [
            row
            for row in self.rows
            if all(row[idx[c]] == v for c, v in conditions.items())
        ]
        return ResultTable(self.columns, kept)

    def to_csv(self) -> str:
        lines = [",".join(self.columns)]
        lines.extend(",".join(_fmt(v) for v in row) for row in self.rows)
        return "\n".join(lines) + "\n"

    def write(self, path) -> None:
        Path(path).write_text(self.to_csv())


def aggregate(
    table: ResultTable, group_cols: tuple[str, ...], value_col: str
) -> ResultTable:
    """Mean and 90% CI half-width of value_col per group, groups sorted."""
    gidx = [table.columns.index(c) for c in group_cols]
    vidx = table.columns.index(value_col)
    groups: dict[tuple, list[float]] = {}
    for row in table.rows:
        if row[vidx] is None:
            continue
        groups.setdefault(tuple(row[i] for i in gidx), []).append(float(row[vidx]))
    out = ResultTable(tuple(group_cols) + (f"mean_{value_col}", "ci90", "k"))
    for key in sorted(groups):
        vals = np.array(groups[key])
        k = len(vals)
        ci = float(Z90 * vals.std(ddof=1) / np.sqrt(k)) if k > 1 else 0.0
        out.append(*key, float(vals.mean()), ci, k)
    return out


@dataclass
class ExperimentResult:
    family: str
    tables: dict[str, ResultTable]
    networks: dict[str, CombatNetwork] = field(default_factory=dict)


def generate_nondegenerate(
    cfg: GeneratorConfig, *seed_keys: int, max_regen: int = 20
) -> CombatNetwork:
    """Assemble a network whose baseline link count is positive, retrying
    with fresh derived seeds up to max_regen times."""
    for attempt in range(max_regen):
        net = assemble_combat_network(
            replace(cfg, seed=derived_seed(*seed_keys, attempt))
        )
        if baseline_metrics(net)[1] > 0:
            return net
    raise DegenerateNetworkError(
        f"no network with positive baseline links after {max_regen} attempts"
    )


# ---------------------------------------------------------------------------
# replicate workers (module-level so they pickle for process pools)


def _compare_replicate(args) -> tuple[int, list[dict], str]:
    spec, rep, salt = args
    gamma, rho = spec.cost
    net = generate_nondegenerate(
        spec.network, spec.seed, *salt, rep, max_regen=spec.max_regen
    )
    costs = CostModel.from_network(net, gamma, rho)
    evaluator = AttackEvaluator(net, costs, spec.damage)
    indicators = {name: CENTRALITY_FUNCS[name](net) for name in ALGORITHMS[1:]}
    records = []
    for l in spec.l_range:
        for algo in ALGORITHMS:
            t0 = time.perf_counter()
            if algo == "ipga":
                ga = replace(
                    spec.ga,
                    mode="fixed-L",
                    seed=derived_seed(spec.seed, *salt, rep, 100 + l),
                )
                _, report, _ = run_ipga(net, costs, spec.damage, l, ga)
            else:
                chosen = baseline_select(indicators[algo], costs, l)
                report = evaluator.report(encode(net, chosen))
            records.append(
                {
                    "algorithm": algo,
                    "l": l,
                    "r": report.r,
                    "s_huge": report.s_huge,
                    "s_links": report.s_links,
                    "total_cost": report.total_cost,
                    "feasible": report.feasible,
                    "seconds": time.perf_counter() - t0,
                }
            )
    return rep, records, network_to_text(net)


def _convergence_replicate(args) -> tuple[int, list[float], dict]:
    spec, rep = args
    gamma, rho = spec.cost
    net = generate_nondegenerate(spec.network, spec.seed, rep, max_regen=spec.max_regen)
    costs = CostModel.from_network(net, gamma, rho)
    l = spec.l_range[0]
    ga = replace(spec.ga, mode="fixed-L", seed=derived_seed(spec.seed, rep, 100 + l))
    chosen, report, history = run_ipga(net, costs, spec.damage, l, ga)
    final = {
        "l": l,
        "r": report.r,
        "total_cost": report.total_cost,
        "attacked": " ".join(str(i) for i in chosen),
    }
    return rep, [float(h) for h in history], final


def _attack_law_replicate(args) -> tuple[int, list[dict], str]:
    spec, rep = args
    net = generate_nondegenerate(spec.network, spec.seed, rep, max_regen=spec.max_regen)
    degrees = net.degrees
    records = []
    for gi, gamma in enumerate(spec.gammas):
        for ri, rho in enumerate(spec.rhos):
            costs = CostModel.from_network(net, gamma, rho)
            ga = replace(
                spec.ga,
                mode="budget-only",
                seed=derived_seed(spec.seed, rep, 200 + gi * 100 + ri),
            )
            chosen, report, realized_l = run_ipga_budget_mode(
                net, costs, spec.damage, ga
            )
            dhat = float(degrees[chosen].mean()) if realized_l > 0 else None
            records.append(
                {
                    "gamma": gamma,
                    "rho": rho,
                    "realized_l": realized_l,
                    "mean_degree": dhat,
                    "r": report.r,
                    "total_cost": report.total_cost,
                }
            )
    return rep, records, network_to_text(net)


def _map_replicates(worker, tasks, workers: int | None):
    """Run replicate tasks, optionally across processes; order-stable."""
    if workers is not None and workers <= 1:
        return [worker(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(worker, tasks))


# ---------------------------------------------------------------------------
# experiment families


def _compare_tables(
    spec: ExperimentSpec,
    tag_cols: tuple[str, ...],
    tag_vals: tuple,
    salt: tuple[int, ...],
    workers: int | None,
    networks: dict[str, CombatNetwork],
    net_prefix: str,
) -> tuple[ResultTable, ResultTable]:
    """Run the compare pipeline once (optionally tagged by a sweep value)."""
    results = ResultTable(
        ("experiment", "replicate")
        + tag_cols
        + ("algorithm", "l", "r", "s_huge", "s_links", "total_cost", "feasible")
    )
    timings = ResultTable(
        ("experiment", "replicate") + tag_cols + ("algorithm", "l", "seconds")
    )
    tasks = [(spec, rep, salt) for rep in range(spec.replicates)]
    for rep, records, net_text in sorted(_map_replicates(_compare_replicate, tasks, workers)):
        networks[f"{net_prefix}rep{rep:03d}"] = network_from_text(net_text)
        for rec in records:
            results.append(
                spec.family,
                rep,
                *tag_vals,
                rec["algorithm"],
                rec["l"],
                rec["r"],
                rec["s_huge"],
                rec["s_links"],
                rec["total_cost"],
                rec["feasible"],
            )
            timings.append(
                spec.family, rep, *tag_vals, rec["algorithm"], rec["l"], rec["seconds"]
            )
    return results, timings


def run_compare(spec: ExperimentSpec, workers: int | None = 1) -> ExperimentResult:
    """IPGA versus the five indicator baselines over the damage intensities."""
    spec.validate()
    if spec.family != "compare-algorithms":
        raise ParameterError("spec.family must be compare-algorithms")
    networks: dict[str, CombatNetwork] = {}
    # Salt (0,) matches the first grid point of the sweep families, so a
    # single-value sweep reduces exactly to this pipeline.
    results, timings = _compare_tables(spec, (), (), (0,), workers, networks, "")
    agg = aggregate(results, ("algorithm", "l"), "r")
    return ExperimentResult(
        spec.family,
        {"results": results, "aggregate": agg, "timings": timings},
        networks,
    )


def run_beta_sweep(spec: ExperimentSpec, workers: int | None = 1) -> ExperimentResult:
    """Compare pipeline per Goh exponent beta, plus the IPGA-only cross table."""
    spec.validate()
    if spec.family != "beta-sweep":
        raise ParameterError("spec.family must be beta-sweep")
    if spec.network.family != "GOH":
        raise ParameterError("beta-sweep requires the GOH generator family")
    networks: dict[str, CombatNetwork] = {}
    all_results = None
    all_timings = None
    for bi, beta in enumerate(spec.betas):
        sub = replace(
            spec,
            network=replace(spec.network, goh_params=(beta, spec.network.goh_params[1])),
        )
        results, timings = _compare_tables(
            sub, ("beta",), (beta,), (bi,), workers, networks, f"beta{beta:g}_"
        )
        if all_results is None:
            all_results, all_timings = results, timings
        else:
            all_results.rows.extend(results.rows)
            all_timings.rows.extend(timings.rows)
    agg = aggregate(all_results, ("beta", "algorithm", "l"), "r")
    ipga_by_beta = aggregate(
        all_results.select(algorithm="ipga"), ("beta", "l"), "r"
    )
    return ExperimentResult(
        spec.family,
        {
            "results": all_results,
            "aggregate": agg,
            "ipga_by_beta": ipga_by_beta,
            "timings": all_timings,
        },
        networks,
    )


def run_size_sweep(spec: ExperimentSpec, workers: int | None = 1) -> ExperimentResult:
    """Compare pipeline at shrinking network sizes, plus the best-baseline gap."""
    spec.validate()
    if spec.family != "size-sweep":
        raise ParameterError("spec.family must be size-sweep")
    networks: dict[str, CombatNetwork] = {}
    all_results = None
    all_timings = None
    for si, sizes in enumerate(spec.sizes_grid):
        total = sum(sizes)
        sub = replace(spec, network=replace(spec.network, sizes=tuple(sizes)))
        results, timings = _compare_tables(
            sub, ("size",), (total,), (si,), workers, networks, f"n{total}_"
        )
        if all_results is None:
            all_results, all_timings = results, timings
        else:
            all_results.rows.extend(results.rows)
            all_timings.rows.extend(timings.rows)
    agg = aggregate(all_results, ("size", "algorithm", "l"), "r")
    gaps = ResultTable(("size", "l", "ipga_mean_r", "best_baseline_mean_r", "gap"))
    sizes_seen = sorted({row[agg.columns.index("size")] for row in agg.rows})
    for total in sizes_seen:
        for l in spec.l_range:
            sub_rows = agg.select(size=total, l=l)
            by_algo = {
                row[sub_rows.columns.index("algorithm")]: row[
                    sub_rows.columns.index("mean_r")
                ]
                for row in sub_rows.rows
            }
            if "ipga" not in by_algo:
                continue
            best_base = max(v for k, v in by_algo.items() if k != "ipga")
            gaps.append(
                total, l, by_algo["ipga"], best_base, by_algo["ipga"] - best_base
            )
    return ExperimentResult(
        spec.family,
        {
            "results": all_results,
            "aggregate": agg,
            "gaps": gaps,
            "timings": all_timings,
        },
        networks,
    )


def run_attack_law(spec: ExperimentSpec, workers: int | None = 1) -> ExperimentResult:
    """Budget-only attacks over the (gamma, rho) grid: mean attacked degree,
    realized intensity, and its variance."""
    spec.validate()
    if spec.family != "attack-law":
        raise ParameterError("spec.family must be attack-law")
    networks: dict[str, CombatNetwork] = {}
    results = ResultTable(
        (
            "experiment",
            "replicate",
            "gamma",
            "rho",
            "realized_l",
            "mean_degree",
            "r",
            "total_cost",
        )
    )
    tasks = [(spec, rep) for rep in range(spec.replicates)]
    for rep, records, net_text in sorted(
        _map_replicates(_attack_law_replicate, tasks, workers)
    ):
        networks[f"rep{rep:03d}"] = network_from_text(net_text)
        for rec in records:
            results.append(
                spec.family,
                rep,
                rec["gamma"],
                rec["rho"],
                rec["realized_l"],
                rec["mean_degree"],
                rec["r"],
                rec["total_cost"],
            )
    dhat = aggregate(results, ("gamma", "rho"), "mean_degree")
    mean_l = aggregate(results, ("gamma", "rho"), "realized_l")
    # Table-4-style row: how much the realized intensity still depends on the
    # cost exponent at each budget level. Computed over the gamma grid from
    # the per-cell mean L; the relative column is dimensionless so budgets of
    # very different L scales compare directly.
    var_l = ResultTable(("rho", "var_l_gamma", "cv_l_gamma", "k_gamma"))
    l_means = {
        (row[0], row[1]): row[2]
        for row in mean_l.rows  # (gamma, rho, mean_realized_l, ci, k)
    }
    for rho in spec.rhos:
        vals = np.array(
            [l_means[(g, rho)] for g in spec.gammas if (g, rho) in l_means]
        )
        if len(vals) == 0:
            continue
        var = float(vals.var(ddof=1)) if len(vals) > 1 else None
        cv = (
            float(vals.std(ddof=1) / vals.mean())
            if len(vals) > 1 and vals.mean() > 0
            else None
        )
        var_l.append(rho, var, cv, len(vals))
    return ExperimentResult(
        spec.family,
        {
            "results": results,
            "dhat_by_gamma_rho": dhat,
            "mean_l_by_gamma_rho": mean_l,
            "var_l_by_rho": var_l,
        },
        networks,
    )


def run_convergence(spec: ExperimentSpec, workers: int | None = 1) -> ExperimentResult:
    """Per-generation best fitness per replicate, plus the mean curve."""
    spec.validate()
    if spec.family != "convergence":
        raise ParameterError("spec.family must be convergence")
    history = ResultTable(("replicate", "generation", "best_fitness"))
    results = ResultTable(
        ("experiment", "replicate", "l", "r", "total_cost", "attacked_nodes")
    )
    tasks = [(spec, rep) for rep in range(spec.replicates)]
    curves = []
    for rep, curve, final in sorted(
        _map_replicates(_convergence_replicate, tasks, workers)
    ):
        curves.append(curve)
        for g, v in enumerate(curve):
            history.append(str(rep), g, v)
        results.append(
            spec.family, rep, final["l"], final["r"], final["total_cost"],
            final["attacked"],
        )
    mean_curve = np.mean(np.array(curves), axis=0)
    for g, v in enumerate(mean_curve):
        history.append("mean", g, float(v))
    return ExperimentResult(
        spec.family, {"results": results, "history": history}, {}
    )


def run_runtime(spec: ExperimentSpec, workers: int | None = 1) -> ExperimentResult:
    """Wall time of full IPGA runs across damage intensities and generation
    caps. Always sequential; times are inherently nondeterministic."""
    spec.validate()
    if spec.family != "runtime":
        raise ParameterError("spec.family must be runtime")
    gamma, rho = spec.cost
    results = ResultTable(("experiment", "replicate", "l", "gen", "seconds"))
    for rep in range(spec.replicates):
        net = generate_nondegenerate(
            spec.network, spec.seed, rep, max_regen=spec.max_regen
        )
        costs = CostModel.from_network(net, gamma, rho)
        for l in spec.l_range:
            for gen in spec.gens_grid:
                ga = replace(
                    spec.ga,
                    mode="fixed-L",
                    gen=gen,
                    seed=derived_seed(spec.seed, rep, 100 + l, gen),
                )
                t0 = time.perf_counter()
                run_ipga(net, costs, spec.damage, l, ga)
                results.append(
                    spec.family, rep, l, gen, time.perf_counter() - t0
                )
    return ExperimentResult(spec.family, {"results": results}, {})


_RUNNERS = {
    "compare-algorithms": run_compare,
    "beta-sweep": run_beta_sweep,
    "size-sweep": run_size_sweep,
    "attack-law": run_attack_law,
    "convergence": run_convergence,
    "runtime": run_runtime,
}


def run_experiment(spec: ExperimentSpec, workers: int | None = 1) -> ExperimentResult:
    spec.validate()
    return _RUNNERS[spec.family](spec, workers=workers)


def write_experiment(
    result: ExperimentResult, out_dir, plots: bool = False
) -> None:
    """Write every table as <name>.csv, saved networks, and optional SVGs."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for name, table in result.tables.items():
        table.write(out / f"{name}.csv")
    if result.networks:
        net_dir = out / "networks"
        net_dir.mkdir(exist_ok=True)
        for name, net in sorted(result.networks.items()):
            (net_dir / f"{name}.txt").write_text(network_to_text(net))
    if plots:
        from .plots import render_plots

        render_plots(result, out / "plots")


def experiment_spec_from_dict(data: dict) -> ExperimentSpec:
    """Build an ExperimentSpec from a plain config mapping (JSON-friendly)."""
    known = {f.name for f in ExperimentSpec.__dataclass_fields__.values()}
    unknown = set(data) - known
    if unknown:
        raise ParameterError(f"unknown experiment config keys: {sorted(unknown)}")
    kwargs = dict(data)
    if "network" in kwargs and isinstance(kwargs["network"], dict):
        kwargs["network"] = GeneratorConfig(**kwargs["network"])
    if "damage" in kwargs and isinstance(kwargs["damage"], dict):
        kwargs["damage"] = DamageConfig(**kwargs["damage"])
    if "ga" in kwargs and isinstance(kwargs["ga"], dict):
        kwargs["ga"] = GAConfig(**kwargs["ga"])
    for key in ("cost", "l_range", "betas", "gammas", "rhos", "gens_grid"):
        if key in kwargs and kwargs[key] is not None:
            kwargs[key] = tuple(kwargs[key])
    if "sizes_grid" in kwargs and kwargs["sizes_grid"] is not None:
        kwargs["sizes_grid"] = tuple(tuple(s) for s in kwargs["sizes_grid"])
    return ExperimentSpec(**kwargs)
