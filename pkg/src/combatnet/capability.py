"""Operational-capability metrics and the combined damage measure.

Capability is quantified by counting intelligence-effectiveness links:
typed O->...->A paths matching one of seven admissible patterns (OPDA,
OOPDA, OPPDA, OPDDA, OOPPDA, OOPDDA, OOPPDDA). Counts come from traces of
chained adjacency blocks closed by an A->O reachability block; a typed
depth-first enumeration provides an independent oracle. Damage of an
attack combines the relative loss of link count and of largest-component
size.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .costs import CostModel
from .errors import DegenerateNetworkError, ParameterError
from .network import (
    CombatNetwork,
    Kind,
    _alive_from_removed,
    _component_sizes_and_labels,
)

__all__ = [
    "LINK_PATTERNS",
    "DamageConfig",
    "DamageReport",
    "BlockMatrices",
    "accessibility_matrix",
    "build_blocks",
    "count_ielk",
    "count_ielk_bruteforce",
    "baseline_metrics",
    "damage_effect",
    "evaluate_attack",
    "AttackEvaluator",
]

O, P, D, A = Kind.O, Kind.P, Kind.D, Kind.A

# The seven admissible link patterns, in canonical order.
LINK_PATTERNS: tuple[tuple[Kind, ...], ...] = (
    (O, P, D, A),
    (O, O, P, D, A),
    (O, P, P, D, A),
    (O, P, D, D, A),
    (O, O, P, P, D, A),
    (O, O, P, D, D, A),
    (O, O, P, P, D, D, A),
)


def pattern_name(pattern: tuple[Kind, ...]) -> str:
    return "".join(k.name for k in pattern)


@dataclass(frozen=True)
class DamageConfig:
    """Preference weight between link loss and component loss."""

    alpha: float = 0.5

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise ParameterError("alpha must be in [0, 1]")


@dataclass(frozen=True)
class DamageReport:
    """Outcome of one attack evaluation."""

    s_huge: int
    s_links: int
    r: float
    total_cost: float
    feasible: bool

    CSV_HEADER = "s_huge,s_links,r,total_cost,feasible"

    def to_csv_row(self) -> str:
        return (
            f"{self.s_huge},{self.s_links},{format(self.r, '.10g')},"
            f"{format(self.total_cost, '.10g')},{str(self.feasible).lower()}"
        )


@dataclass(frozen=True)
class BlockMatrices:
    """Typed adjacency blocks of a residual network.

    The first six blocks are slices of the residual adjacency; s_ao is the
    reachability closure: s_ao[j, i] = 1 iff surviving O_i and A_j lie in
    the same connected component of the residual network.
    """

    s_oo: np.ndarray
    s_op: np.ndarray
    s_pp: np.ndarray
    s_pd: np.ndarray
    s_dd: np.ndarray
    s_da: np.ndarray
    s_ao: np.ndarray

    def check_dimensions(self) -> None:
        no, npp = self.s_op.shape
        nd, na = self.s_da.shape
        expected = {
            "s_oo": (no, no),
            "s_pp": (npp, npp),
            "s_pd": (npp, nd),
            "s_dd": (nd, nd),
            "s_ao": (na, no),
        }
        for name, shape in expected.items():
            if getattr(self, name).shape != shape:
                raise ParameterError(f"block {name} has shape "
                                     f"{getattr(self, name).shape}, expected {shape}")

    def step_block(self, ka: Kind, kb: Kind) -> np.ndarray:
        return getattr(self, f"s_{ka.name.lower()}{kb.name.lower()}")


def accessibility_matrix(adjacency: np.ndarray) -> np.ndarray:
    """Boolean fixpoint of powers of (S + I).

    Entry (i, j) is 1 iff i and j share a connected component; the diagonal
    is all ones. Computed by component labeling, which yields the identical
    fixpoint without repeated boolean matrix powers.
    """
    a = np.asarray(adjacency)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ParameterError("adjacency must be square")
    if not np.array_equal(a, a.T):
        raise ParameterError("adjacency must be symmetric")
    if a.size and not np.all((a == 0) | (a == 1)):
        raise ParameterError("adjacency entries must be 0/1")
    n = a.shape[0]
    nbrs = [np.flatnonzero(a[i]).tolist() for i in range(n)]
    labels, _ = _component_sizes_and_labels(nbrs, [True] * n)
    lab = np.array(labels)
    return (lab[:, None] == lab[None, :]).astype(np.int64)


def build_blocks(net: CombatNetwork, removed) -> BlockMatrices:
    """Slice the residual adjacency into typed blocks plus the A->O closure."""
    alive = _alive_from_removed(net, removed)
    labels, _ = _component_sizes_and_labels(net.neighbor_lists, alive)
    return _blocks_from_labels(net, np.array(alive), np.array(labels))


def _blocks_from_labels(
    net: CombatNetwork, alive: np.ndarray, labels: np.ndarray
) -> BlockMatrices:
    adj = net.adjacency
    idx = net.layer_indices
    o_s, p_s, d_s, a_s = (
        layer[alive[layer]] for layer in (idx[O], idx[P], idx[D], idx[A])
    )
    o_c, p_c, d_c = o_s[:, None], p_s[:, None], d_s[:, None]
    s_ao = (labels[a_s][:, None] == labels[o_s][None, :]).astype(float)
    return BlockMatrices(
        s_oo=adj[o_c, o_s],
        s_op=adj[o_c, p_s],
        s_pp=adj[p_c, p_s],
        s_pd=adj[p_c, d_s],
        s_dd=adj[d_c, d_s],
        s_da=adj[d_c, a_s],
        s_ao=s_ao,
    )


def count_ielk(blocks: BlockMatrices) -> int:
    """Total link count over the seven patterns.

    Each pattern contributes the trace of its block chain closed by s_ao,
    e.g. OPDA -> tr(S_OP S_PD S_DA S_AO). Every chain ends in S_DA S_AO, so
    tr(M S_DA S_AO) is evaluated as sum(M * (S_DA S_AO)^T) with the O->D
    prefixes M built from shared partial products. Products run in float,
    which is exact for these path-count magnitudes.
    """
    blocks.check_dimensions()
    oo, op, pp, pd, dd = blocks.s_oo, blocks.s_op, blocks.s_pp, blocks.s_pd, blocks.s_dd
    closing_t = (blocks.s_da @ blocks.s_ao).T  # O x D
    od = op @ pd  # O..P D chains, single and double P
    odd = od @ dd
    opd = (op @ pp) @ pd
    opdd = opd @ dd
    total = (
        (od * closing_t).sum()  # OPDA
        + ((oo @ od) * closing_t).sum()  # OOPDA
        + (opd * closing_t).sum()  # OPPDA
        + (odd * closing_t).sum()  # OPDDA
        + ((oo @ opd) * closing_t).sum()  # OOPPDA
        + ((oo @ odd) * closing_t).sum()  # OOPDDA
        + ((oo @ opdd) * closing_t).sum()  # OOPPDDA
    )
    return int(round(total))


def count_ielk_bruteforce(net: CombatNetwork, removed) -> int:
    """Independent oracle: depth-first enumeration of typed path instances.

    Counts every node sequence matching a pattern with consecutive residual
    edges. Same-kind steps cannot revisit a node (no self-loops), so each
    counted sequence is a simple path; intended for small residual networks.
    """
    alive = _alive_from_removed(net, removed)
    nbrs = net.neighbor_lists
    kinds = net.kinds
    total = 0
    for pattern in LINK_PATTERNS:
        kseq = [int(k) for k in pattern]
        last = len(kseq) - 1

        def extend(v: int, depth: int) -> int:
            if depth == last:
                return 1
            want = kseq[depth + 1]
            c = 0
            for w in nbrs[v]:
                if alive[w] and kinds[w] == want:
                    c += extend(w, depth + 1)
            return c

        for s in range(net.n):
            if alive[s] and kinds[s] == kseq[0]:
                total += extend(s, 0)
    return total


def baseline_metrics(net: CombatNetwork) -> tuple[int, int]:
    """(s_huge, s_links) of the unattacked network."""
    labels, sizes = _component_sizes_and_labels(net.neighbor_lists, [True] * net.n)
    blocks = _blocks_from_labels(net, np.ones(net.n, dtype=bool), np.array(labels))
    return max(sizes, default=0), count_ielk(blocks)


def damage_effect(
    baseline: tuple[int, int], attacked: tuple[int, int], cfg: DamageConfig
) -> float:
    """Combined damage measure r = 1 - [alpha * links ratio + (1-alpha) * huge ratio]."""
    s_huge0, s_links0 = baseline
    s_huge1, s_links1 = attacked
    if s_links0 <= 0 or s_huge0 <= 0:
        raise DegenerateNetworkError(
            "baseline network has no capability to damage; regenerate it"
        )
    return 1.0 - (
        cfg.alpha * s_links1 / s_links0 + (1.0 - cfg.alpha) * s_huge1 / s_huge0
    )


class AttackEvaluator:
    """Evaluates attack vectors against one network with cached baseline.

    Construction raises DegenerateNetworkError when the unattacked network
    has no links (the relative measure would divide by zero). All methods
    are pure with respect to the evaluator state, so one instance may serve
    many evaluations.
    """

    def __init__(
        self, net: CombatNetwork, costs: CostModel, cfg: DamageConfig | None = None
    ):
        self.net = net
        self.costs = costs
        self.cfg = cfg if cfg is not None else DamageConfig()
        self._nbrs = net.neighbor_lists
        self._layer_idx = net.layer_indices
        self.baseline = baseline_metrics(net)
        if self.baseline[1] <= 0:
            raise DegenerateNetworkError(
                "generated network has zero baseline links; regenerate it"
            )

    def residual_metrics(self, bits) -> tuple[int, int]:
        alive = [not b for b in np.asarray(bits).tolist()]
        if len(alive) != self.net.n:
            raise ParameterError(f"attack vector must have length {self.net.n}")
        labels, sizes = _component_sizes_and_labels(self._nbrs, alive)
        blocks = _blocks_from_labels(
            self.net, np.fromiter(alive, dtype=bool, count=len(alive)), np.array(labels)
        )
        return max(sizes, default=0), count_ielk(blocks)

    def report(self, bits) -> DamageReport:
        s_huge, s_links = self.residual_metrics(bits)
        r = damage_effect(self.baseline, (s_huge, s_links), self.cfg)
        total = self.costs.attack_cost(bits)
        return DamageReport(
            s_huge=s_huge,
            s_links=s_links,
            r=r,
            total_cost=total,
            feasible=total <= self.costs.c_max,
        )

    def fitness(self, bits, penalty: float) -> float:
        rep = self.report(bits)
        return rep.r if rep.feasible else penalty


def evaluate_attack(
    net: CombatNetwork,
    attack,
    costs: CostModel,
    cfg: DamageConfig | None = None,
    evaluator: AttackEvaluator | None = None,
) -> DamageReport:
    """One-shot attack evaluation; pass an AttackEvaluator to reuse baselines."""
    if evaluator is None:
        evaluator = AttackEvaluator(net, costs, cfg)
    return evaluator.report(np.asarray(attack, dtype=np.uint8))
