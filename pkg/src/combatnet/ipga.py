"""Improved genetic algorithm for cost-constrained damage maximization.

Attack vectors are plain 0/1 uint8 arrays of length n (bit i set means node
i is attacked); their weight L is the damage intensity. The solver keeps L
exact throughout: initialization draws weight-L chromosomes (three blocks
seeded proportionally to degree, betweenness, and topological potential,
the rest uniform), and crossover/mutation are symmetric, always pairing a
0->1 flip with a 1->0 flip. Budget violations are handled by a penalty
fitness instead of repair.

A weight-free budget-only variant serves attack-law studies where L is an
outcome rather than an input, and a greedy-plus-swaps selector solves the
centrality-baseline program (maximize H^T X under the same constraints).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .capability import AttackEvaluator, DamageConfig, DamageReport
from .centrality import (
    betweenness_centrality,
    degree_centrality,
    topological_potential,
)
from .costs import CostModel
from .errors import InfeasibleError, ParameterError
from .network import CombatNetwork

__all__ = [
    "GAConfig",
    "Population",
    "encode",
    "decode",
    "fitness",
    "init_population",
    "roulette_select",
    "symmetric_crossover",
    "symmetric_mutation",
    "run_ipga",
    "run_ipga_budget_mode",
    "baseline_select",
]

# Shift applied to fitnesses before roulette sampling so weights stay positive.
ROULETTE_EPS = 1e-6


@dataclass
class GAConfig:
    """Genetic-algorithm parameters.

    n_seeded counts chromosomes per prior indicator (three indicators in
    total); None means n_pop // 10. The point-count caps for crossover and
    mutation default to ceil(n/4) and L-1 respectively.
    """

    n_pop: int = 100
    gen: int = 500
    p_c: float = 0.8
    p_m: float = 0.1
    n_seeded: int | None = None
    penalty: float = -2.0
    mode: str = "fixed-L"
    seed: int | None = None
    crossover_points_max: int | None = None
    mutation_points_max: int | None = None

    @property
    def seeded_per_indicator(self) -> int:
        return self.n_pop // 10 if self.n_seeded is None else self.n_seeded

    def validate(self) -> None:
        if self.n_pop < 2 or self.n_pop % 2:
            raise ParameterError("n_pop must be even and >= 2")
        if self.gen < 1:
            raise ParameterError("gen must be >= 1")
        if not (0.0 <= self.p_c <= 1.0 and 0.0 <= self.p_m <= 1.0):
            raise ParameterError("operator probabilities must be in [0, 1]")
        if self.penalty >= 0:
            raise ParameterError("penalty must be negative")
        if self.mode not in ("fixed-L", "budget-only"):
            raise ParameterError(f"unknown GA mode {self.mode!r}")
        if self.seeded_per_indicator < 0 or 3 * self.seeded_per_indicator > self.n_pop:
            raise ParameterError("3 * n_seeded must not exceed n_pop")


@dataclass
class Population:
    """GA population state; best_* track the best chromosome ever seen."""

    members: np.ndarray  # (n_pop, n) uint8
    fitnesses: np.ndarray  # (n_pop,) float, NaN until evaluated
    generation: int = 0
    best_member: np.ndarray | None = None
    best_fitness: float = -math.inf


def encode(net: CombatNetwork, q) -> np.ndarray:
    """0/1 vector with bit i set iff node i is in the attacked set q."""
    bits = np.zeros(net.n, dtype=np.uint8)
    for v in q:
        i = int(v)
        if not 0 <= i < net.n:
            raise ParameterError(f"node index {i} out of range")
        bits[i] = 1
    return bits


def decode(net: CombatNetwork, bits) -> np.ndarray:
    """Attacked node indices, ascending; inverse of encode."""
    x = np.asarray(bits)
    if x.shape != (net.n,):
        raise ParameterError(f"attack vector must have length {net.n}")
    return np.flatnonzero(x)


def fitness(
    net: CombatNetwork,
    bits,
    costs: CostModel,
    cfg: DamageConfig,
    ga: GAConfig,
    evaluator: AttackEvaluator | None = None,
) -> float:
    """Damage measure of the attack, or the penalty when it busts the budget."""
    if evaluator is None:
        evaluator = AttackEvaluator(net, costs, cfg)
    return evaluator.fitness(np.asarray(bits, dtype=np.uint8), ga.penalty)


def _weighted_sample(rng: np.random.Generator, weights: np.ndarray, k: int) -> np.ndarray:
    """k draws without replacement, probability proportional to weight.

    Degenerate weight vectors are handled by falling back to uniform draws:
    entirely, when no weight is positive, or for the remainder, when fewer
    than k weights are positive.
    """
    n = len(weights)
    w = np.clip(np.asarray(weights, dtype=float), 0.0, None)
    positive = np.flatnonzero(w > 0)
    if len(positive) == 0:
        return rng.choice(n, size=k, replace=False)
    if len(positive) >= k:
        return rng.choice(n, size=k, replace=False, p=w / w.sum())
    rest = rng.choice(
        np.flatnonzero(w <= 0), size=k - len(positive), replace=False
    )
    return np.concatenate((positive, rest))


def init_population(
    net: CombatNetwork,
    h_degree: np.ndarray,
    h_betweenness: np.ndarray,
    h_potential: np.ndarray,
    l: int,
    ga: GAConfig,
    rng: np.random.Generator,
) -> Population:
    """Weight-L initial population: seeded blocks per indicator, rest uniform."""
    ga.validate()
    n = net.n
    if not 0 <= l <= n:
        raise ParameterError("damage intensity L must be in [0, n]")
    members = np.zeros((ga.n_pop, n), dtype=np.uint8)
    row = 0
    if l > 0:
        for h in (h_degree, h_betweenness, h_potential):
            for _ in range(ga.seeded_per_indicator):
                members[row, _weighted_sample(rng, h, l)] = 1
                row += 1
        for _ in range(row, ga.n_pop):
            members[row, rng.choice(n, size=l, replace=False)] = 1
            row += 1
    return Population(
        members=members, fitnesses=np.full(ga.n_pop, np.nan), generation=0
    )


def roulette_select(pop: Population, rng: np.random.Generator) -> Population:
    """Fitness-proportional selection on min-shifted weights, with the best
    chromosome ever seen re-injected over the worst drawn member."""
    fits = pop.fitnesses
    if np.any(np.isnan(fits)):
        raise ParameterError("population must be evaluated before selection")
    weights = fits - fits.min() + ROULETTE_EPS
    idx = rng.choice(len(fits), size=len(fits), replace=True, p=weights / weights.sum())
    members = pop.members[idx].copy()
    fitnesses = fits[idx].copy()
    if pop.best_member is not None:
        worst = int(np.argmin(fitnesses))
        members[worst] = pop.best_member
        fitnesses[worst] = pop.best_fitness
    return Population(
        members=members,
        fitnesses=fitnesses,
        generation=pop.generation,
        best_member=pop.best_member,
        best_fitness=pop.best_fitness,
    )


def _crossover_pair(
    a: np.ndarray, b: np.ndarray, loc: np.ndarray, rng: np.random.Generator
) -> None:
    """Symmetric exchange at positions loc: k = min(#(0,1), #(1,0)) swaps of
    each discordant type, so both weights are preserved."""
    av, bv = a[loc], b[loc]
    t01 = loc[(av == 0) & (bv == 1)]
    t10 = loc[(av == 1) & (bv == 0)]
    k = min(len(t01), len(t10))
    if k == 0:
        return
    c01 = rng.choice(t01, size=k, replace=False)
    c10 = rng.choice(t10, size=k, replace=False)
    a[c01] = 1
    b[c01] = 0
    a[c10] = 0
    b[c10] = 1


def symmetric_crossover(
    pop: Population,
    p_c: float,
    rng: np.random.Generator,
    points_max: int | None = None,
) -> Population:
    """Pair members (0,1), (2,3), ... and cross each pair with probability p_c."""
    members = pop.members
    n = members.shape[1]
    if n == 0:
        return pop
    cap = points_max if points_max is not None else math.ceil(n / 4)
    cap = max(1, min(cap, n))
    for i in range(0, len(members) - 1, 2):
        if rng.random() < p_c:
            size = int(rng.integers(1, cap + 1))
            loc = rng.choice(n, size=size, replace=False)
            _crossover_pair(members[i], members[i + 1], loc, rng)
    pop.fitnesses[:] = np.nan
    return pop


def _mutate_member(x: np.ndarray, loc: np.ndarray, rng: np.random.Generator) -> None:
    """For each 1-bit in loc, jointly flip it with a randomly chosen 0-bit."""
    for pos in loc:
        if x[pos] != 1:
            continue
        zeros = np.flatnonzero(x == 0)
        if len(zeros) == 0:
            return  # fully saturated vector: nothing to exchange with
        x[pos] = 0
        x[zeros[int(rng.integers(0, len(zeros)))]] = 1


def symmetric_mutation(
    pop: Population,
    p_m: float,
    l: int,
    rng: np.random.Generator,
    points_max: int | None = None,
) -> Population:
    """Weight-preserving mutation; the point count stays below L."""
    members = pop.members
    n = members.shape[1]
    cap = l - 1 if points_max is None else min(points_max, l - 1)
    cap = min(cap, n)
    for i in range(len(members)):
        if rng.random() < p_m:
            if cap < 1:
                continue  # L <= 1 leaves no room for a paired flip
            size = int(rng.integers(1, cap + 1))
            loc = rng.choice(n, size=size, replace=False)
            _mutate_member(members[i], loc, rng)
    pop.fitnesses[:] = np.nan
    return pop


def _evaluate(pop: Population, evaluator: AttackEvaluator, penalty: float) -> None:
    for i in range(len(pop.members)):
        pop.fitnesses[i] = evaluator.fitness(pop.members[i], penalty)
    best = int(np.argmax(pop.fitnesses))
    if pop.fitnesses[best] > pop.best_fitness:
        pop.best_fitness = float(pop.fitnesses[best])
        pop.best_member = pop.members[best].copy()


def run_ipga(
    net: CombatNetwork,
    costs: CostModel,
    cfg: DamageConfig,
    l: int,
    ga: GAConfig,
) -> tuple[np.ndarray, DamageReport, np.ndarray]:
    """Full fixed-L optimization loop.

    Returns (attacked node indices, damage report of the best attack,
    per-generation best fitness). The history is non-decreasing because the
    best chromosome is retained across generations.
    """
    ga.validate()
    if ga.mode != "fixed-L":
        raise ParameterError("run_ipga requires fixed-L mode")
    evaluator = AttackEvaluator(net, costs, cfg)
    rng = np.random.default_rng(ga.seed)
    pop = init_population(
        net,
        degree_centrality(net),
        betweenness_centrality(net),
        topological_potential(net),
        l,
        ga,
        rng,
    )
    _evaluate(pop, evaluator, ga.penalty)
    history = np.empty(ga.gen)
    for g in range(ga.gen):
        pop = roulette_select(pop, rng)
        pop = symmetric_crossover(pop, ga.p_c, rng, ga.crossover_points_max)
        pop = symmetric_mutation(pop, ga.p_m, l, rng, ga.mutation_points_max)
        _evaluate(pop, evaluator, ga.penalty)
        pop.generation = g + 1
        history[g] = pop.best_fitness
    best = pop.best_member
    return decode(net, best), evaluator.report(best), history


def _saturate_budget(bits: np.ndarray, costs: CostModel, order: np.ndarray) -> None:
    """Add affordable nodes in the given order until none fit (no-op when
    already over budget).

    The damage measure never decreases when a node is added, so optima of
    the budget-only program are budget-maximal sets. Filling slack cheapest
    first is the optimal completion (every filler node shrinks the largest
    component by about one, so count is what matters) and keeps the
    realized attack size pinned by the budget instead of by search noise.
    """
    slack = costs.c_max - float(costs.costs @ bits)
    if slack < 0:
        return
    for i in order:
        if bits[i]:
            continue
        c = costs.costs[i]
        if c <= slack:
            bits[i] = 1
            slack -= c


def _greedy_budget_fill(
    costs: CostModel, rng: np.random.Generator, n: int
) -> np.ndarray:
    """Random-order saturating fill; seeds budget mode with diverse cores."""
    bits = np.zeros(n, dtype=np.uint8)
    _saturate_budget(bits, costs, rng.permutation(n))
    return bits


def run_ipga_budget_mode(
    net: CombatNetwork,
    costs: CostModel,
    cfg: DamageConfig,
    ga: GAConfig,
) -> tuple[np.ndarray, DamageReport, int]:
    """Weight-free variant: only the budget constrains the attack.

    Uses uniform crossover and independent per-bit mutation at rate p_m / n,
    with feasible members re-saturated to the budget each generation;
    returns the best feasible set and its realized intensity L = |Q|.
    """
    ga.validate()
    if ga.mode != "budget-only":
        raise ParameterError("run_ipga_budget_mode requires budget-only mode")
    evaluator = AttackEvaluator(net, costs, cfg)
    rng = np.random.default_rng(ga.seed)
    n = net.n
    members = np.stack([_greedy_budget_fill(costs, rng, n) for _ in range(ga.n_pop)])
    pop = Population(members=members, fitnesses=np.full(ga.n_pop, np.nan))
    _evaluate(pop, evaluator, ga.penalty)
    bit_rate = ga.p_m / n if n else 0.0
    cheapest_first = np.argsort(costs.costs, kind="stable")
    for g in range(ga.gen):
        pop = roulette_select(pop, rng)
        members = pop.members
        for i in range(0, len(members) - 1, 2):
            if rng.random() < ga.p_c:
                mask = rng.random(n) < 0.5
                tmp = members[i, mask].copy()
                members[i, mask] = members[i + 1, mask]
                members[i + 1, mask] = tmp
        flips = rng.random(members.shape) < bit_rate
        members ^= flips.astype(np.uint8)
        for i in range(len(members)):
            _saturate_budget(members[i], costs, cheapest_first)
        pop.fitnesses[:] = np.nan
        _evaluate(pop, evaluator, ga.penalty)
        pop.generation = g + 1
    best = pop.best_member
    return decode(net, best), evaluator.report(best), int(best.sum())


def baseline_select(h: np.ndarray, costs: CostModel, l: int) -> np.ndarray:
    """Pick L nodes approximately maximizing total indicator value under the
    budget: greedy descent with feasibility skips, cheapest-fill fallback,
    then exhaustive improving 1-for-1 swaps to a local optimum."""
    h = np.asarray(h, dtype=float)
    n = len(h)
    if not 0 <= l <= n:
        raise ParameterError("selection size L must be in [0, n]")
    if l == 0:
        return np.zeros(0, dtype=np.int64)
    c = costs.costs
    selected: list[int] = []
    total = 0.0
    for i in np.argsort(-h, kind="stable"):
        if len(selected) == l:
            break
        if total + c[i] <= costs.c_max:
            selected.append(int(i))
            total += c[i]
    if len(selected) < l:
        cheapest = np.lexsort((np.arange(n), -h, c))[:l]
        total = float(c[cheapest].sum())
        if total > costs.c_max:
            raise InfeasibleError(
                f"even the {l} cheapest nodes cost {total:.4g} > budget {costs.c_max:.4g}"
            )
        selected = [int(i) for i in cheapest]
    chosen = set(selected)
    while True:
        best_gain = 0.0
        best_swap = None
        for s in sorted(chosen):
            for u in range(n):
                if u in chosen:
                    continue
                if h[u] - h[s] > best_gain and total - c[s] + c[u] <= costs.c_max:
                    best_gain = h[u] - h[s]
                    best_swap = (s, u)
        if best_swap is None:
            break
        s, u = best_swap
        chosen.remove(s)
        chosen.add(u)
        total += c[u] - c[s]
    return np.array(sorted(chosen), dtype=np.int64)
