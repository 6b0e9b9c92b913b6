"""Typed four-layer combat network: data model, random generators, components.

Nodes carry one of four functional kinds (O = intelligence obtaining,
P = intelligence processing, D = commanding/decision, A = attack/damage).
Edges are undirected and restricted to the admissible kind pairs
O-O, O-P, P-P, P-D, D-D, D-A.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import IntEnum
from functools import cached_property
from pathlib import Path

import numpy as np

from .errors import GenerationError, ParameterError

__all__ = [
    "Kind",
    "LAMBDA",
    "ADMISSIBLE_KIND_PAIRS",
    "CombatNetwork",
    "GeneratorConfig",
    "gen_er_subnet",
    "gen_ba_subnet",
    "gen_goh_subnet",
    "assemble_combat_network",
    "largest_component_size",
    "save_network",
    "load_network",
]


class Kind(IntEnum):
    """Functional node kind; integer order fixes the layer order O, P, D, A."""

    O = 0
    P = 1
    D = 2
    A = 3


# Damage-cost correction coefficient per kind (O is the reference unit).
LAMBDA = {Kind.O: 1.0, Kind.P: 1.4, Kind.D: 1.6, Kind.A: 1.1}

# Unordered kind pairs that may be joined by an edge. A-A pairs occur only
# inside the attack layer's own subnet; no link pattern traverses them.
ADMISSIBLE_KIND_PAIRS = frozenset(
    {
        (Kind.O, Kind.O),
        (Kind.O, Kind.P),
        (Kind.P, Kind.P),
        (Kind.P, Kind.D),
        (Kind.D, Kind.D),
        (Kind.D, Kind.A),
        (Kind.A, Kind.A),
    }
)

# Cross-layer pairs wired by the assembler (same set minus the intra pairs).
CROSS_LAYER_PAIRS = ((Kind.O, Kind.P), (Kind.P, Kind.D), (Kind.D, Kind.A))


def _canonical_edges(edges) -> np.ndarray:
    """Sort each pair ascending, then sort pairs lexicographically."""
    arr = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges, dtype=np.int64)
    if arr.size == 0:
        return arr.reshape(0, 2)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ParameterError("edges must be pairs of node indices")
    arr = np.sort(arr, axis=1)
    order = np.lexsort((arr[:, 1], arr[:, 0]))
    return arr[order]


@dataclass(frozen=True, eq=False)
class CombatNetwork:
    """Immutable undirected typed graph.

    kinds: per-node Kind values, length n.
    edges: (m, 2) int array, each row an unordered pair stored canonically
    (i < j, rows lexicographically sorted).
    """

    kinds: np.ndarray
    edges: np.ndarray

    def __post_init__(self):
        kinds = np.asarray(self.kinds, dtype=np.int8)
        object.__setattr__(self, "kinds", kinds)
        object.__setattr__(self, "edges", _canonical_edges(self.edges))
        if kinds.ndim != 1:
            raise ParameterError("kinds must be a flat vector")
        if not np.all((kinds >= 0) & (kinds <= 3)):
            raise ParameterError("kinds must be O/P/D/A values")
        n = len(kinds)
        e = self.edges
        if e.size:
            if e.min() < 0 or e.max() >= n:
                raise ParameterError("edge endpoint out of range")
            if np.any(e[:, 0] == e[:, 1]):
                raise ParameterError("self-loops are not allowed")
            if len(np.unique(e, axis=0)) != len(e):
                raise ParameterError("duplicate edges are not allowed")
            pair_kinds = np.sort(kinds[e], axis=1)
            for ka, kb in np.unique(pair_kinds, axis=0):
                if (Kind(int(ka)), Kind(int(kb))) not in ADMISSIBLE_KIND_PAIRS:
                    raise ParameterError(
                        f"edge type {Kind(int(ka)).name}-{Kind(int(kb)).name} is not admissible"
                    )

    @property
    def n(self) -> int:
        return len(self.kinds)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> np.ndarray:
        """Dense symmetric 0/1 adjacency matrix (float for fast products)."""
        a = np.zeros((self.n, self.n))
        if self.m:
            a[self.edges[:, 0], self.edges[:, 1]] = 1.0
            a[self.edges[:, 1], self.edges[:, 0]] = 1.0
        return a

    @cached_property
    def degrees(self) -> np.ndarray:
        d = np.zeros(self.n, dtype=np.int64)
        if self.m:
            np.add.at(d, self.edges[:, 0], 1)
            np.add.at(d, self.edges[:, 1], 1)
        return d

    @cached_property
    def neighbor_lists(self) -> list[list[int]]:
        """Adjacency lists as plain ints; the traversal hot path."""
        nbrs: list[list[int]] = [[] for _ in range(self.n)]
        for i, j in self.edges.tolist():
            nbrs[i].append(j)
            nbrs[j].append(i)
        return nbrs

    @cached_property
    def layer_indices(self) -> dict[Kind, np.ndarray]:
        """Node indices of each kind, ascending."""
        return {k: np.flatnonzero(self.kinds == k) for k in Kind}

    def layer_sizes(self) -> tuple[int, int, int, int]:
        return tuple(len(self.layer_indices[k]) for k in Kind)  # type: ignore[return-value]


@dataclass
class GeneratorConfig:
    """Parameters for synthetic combat-network construction.

    One intra-layer subnet per kind is drawn from the chosen family
    (ER / BA / GOH), then admissible cross-layer pairs are wired
    independently with probability ``inter_prob``.
    """

    family: str = "ER"
    sizes: tuple[int, int, int, int] = (50, 40, 30, 30)
    er_probs: tuple[float, float, float, float] = (0.02, 0.05, 0.05, 0.03)
    ba_params: tuple[int, int] = (5, 3)
    goh_params: tuple[float, float] = (2.3, 6.0)
    inter_prob: float = 0.03
    seed: int | None = None

    def __post_init__(self):
        self.family = str(self.family).upper()
        self.sizes = tuple(int(s) for s in self.sizes)

    def validate(self) -> None:
        if self.family not in ("ER", "BA", "GOH"):
            raise ParameterError(f"unknown generator family {self.family!r}")
        if len(self.sizes) != 4 or any(s < 1 for s in self.sizes):
            raise ParameterError("sizes must be four counts >= 1")
        if len(self.er_probs) != 4 or any(not 0.0 <= f <= 1.0 for f in self.er_probs):
            raise ParameterError("er_probs must be four probabilities in [0, 1]")
        m0, m = self.ba_params
        if not m0 >= m >= 1:
            raise ParameterError("ba_params require m0 >= m >= 1")
        beta, k_mean = self.goh_params
        if not beta > 2:
            raise ParameterError("goh beta must exceed 2")
        if not k_mean > 0:
            raise ParameterError("goh mean degree must be positive")
        if not 0.0 <= self.inter_prob <= 1.0:
            raise ParameterError("inter_prob must be in [0, 1]")


def gen_er_subnet(n: int, f: float, rng: np.random.Generator) -> np.ndarray:
    """Erdos-Renyi G(n, f): each unordered pair kept independently with prob f."""
    if n < 1:
        raise ParameterError("ER subnet needs n >= 1")
    if not 0.0 <= f <= 1.0:
        raise ParameterError("connection probability must be in [0, 1]")
    rows, cols = np.triu_indices(n, k=1)
    mask = rng.random(len(rows)) < f
    return _canonical_edges(np.column_stack((rows[mask], cols[mask])))


def gen_ba_subnet(n: int, m0: int, m: int, rng: np.random.Generator) -> np.ndarray:
    """Barabasi-Albert growth from an m0-node seed ring.

    Each arriving node attaches m edges to distinct existing nodes chosen
    proportionally to current degree, so the final edge count is
    seed-ring edges + (n - m0) * m.
    """
    if not (n >= m0 >= m >= 1):
        raise ParameterError("BA subnet requires n >= m0 >= m >= 1")
    if m0 >= 3:
        edges = [(i, (i + 1) % m0) for i in range(m0)]
    elif m0 == 2:
        edges = [(0, 1)]
    else:
        edges = []
    # One entry per edge endpoint; sampling an entry is degree-proportional.
    repeated: list[int] = [v for e in edges for v in e]
    for new in range(m0, n):
        targets: set[int] = set()
        while len(targets) < m:
            if repeated:
                targets.add(repeated[int(rng.integers(0, len(repeated)))])
            else:
                # Degenerate edgeless seed (m0 == 1): fall back to uniform.
                targets.add(int(rng.integers(0, new)))
        for t in sorted(targets):
            edges.append((t, new))
            repeated.extend((t, new))
    return _canonical_edges(edges)


def gen_goh_subnet(
    n: int, beta: float, k_mean: float, rng: np.random.Generator
) -> np.ndarray:
    """Static-model scale-free subnet with target tail exponent beta.

    Node i in {1..n} carries weight i**(-mu), mu = 1/(beta - 1); distinct
    endpoint pairs are drawn weight-proportionally and inserted if new,
    until floor(n * k_mean / 2) edges exist.
    """
    if n < 2:
        raise ParameterError("Goh subnet needs n >= 2")
    if not beta > 2:
        raise ParameterError("Goh beta must exceed 2")
    if not 0 < k_mean <= n - 1:
        raise ParameterError("Goh mean degree must lie in (0, n - 1]")
    target = int(n * k_mean // 2)
    if target > n * (n - 1) // 2:
        raise ParameterError("target edge count exceeds the complete graph")
    mu = 1.0 / (beta - 1.0)
    weights = np.arange(1, n + 1, dtype=float) ** (-mu)
    cum = np.cumsum(weights)
    cum /= cum[-1]
    edges: set[tuple[int, int]] = set()
    rejects = 0
    cap = 200 * max(target, 1)
    while len(edges) < target:
        u = int(np.searchsorted(cum, rng.random(), side="right"))
        v = int(np.searchsorted(cum, rng.random(), side="right"))
        pair = (u, v) if u < v else (v, u)
        if u == v or pair in edges:
            rejects += 1
            if rejects > cap:
                raise GenerationError(
                    f"Goh generator exceeded {cap} rejected draws "
                    f"({len(edges)}/{target} edges placed)"
                )
            continue
        edges.add(pair)
    return _canonical_edges(edges)


def assemble_combat_network(cfg: GeneratorConfig) -> CombatNetwork:
    """Build a full four-layer network from one generator configuration.

    Layers are indexed contiguously in kind order (all O first, then P, D, A)
    so adjacency blocks slice contiguously. Cross-layer wiring touches only
    the admissible kind pairs O-P, P-D, D-A.
    """
    cfg.validate()
    rng = np.random.default_rng(cfg.seed)
    offsets = np.concatenate(([0], np.cumsum(cfg.sizes)))
    all_edges: list[np.ndarray] = []
    for k in Kind:
        n_l = cfg.sizes[k]
        if n_l == 1:
            continue  # single-node layer: no intra pairs exist
        if cfg.family == "ER":
            sub = gen_er_subnet(n_l, cfg.er_probs[k], rng)
        elif cfg.family == "BA":
            sub = gen_ba_subnet(n_l, cfg.ba_params[0], cfg.ba_params[1], rng)
        else:
            sub = gen_goh_subnet(n_l, cfg.goh_params[0], cfg.goh_params[1], rng)
        if sub.size:
            all_edges.append(sub + offsets[k])
    for ka, kb in CROSS_LAYER_PAIRS:
        na, nb = cfg.sizes[ka], cfg.sizes[kb]
        mask = rng.random((na, nb)) < cfg.inter_prob
        rows, cols = np.nonzero(mask)
        if len(rows):
            all_edges.append(
                np.column_stack((rows + offsets[ka], cols + offsets[kb]))
            )
    kinds = np.repeat([int(k) for k in Kind], cfg.sizes)
    edges = np.concatenate(all_edges) if all_edges else np.empty((0, 2), dtype=np.int64)
    return CombatNetwork(kinds=kinds, edges=edges)


def _component_sizes_and_labels(
    neighbor_lists: list[list[int]], alive: list[bool]
) -> tuple[list[int], list[int]]:
    """Label connected components of the surviving subgraph by BFS.

    Returns (labels, sizes); labels[v] is -1 for removed nodes.
    """
    n = len(alive)
    labels = [-1] * n
    sizes: list[int] = []
    for start in range(n):
        if not alive[start] or labels[start] >= 0:
            continue
        comp = len(sizes)
        labels[start] = comp
        count = 1
        queue = deque((start,))
        while queue:
            v = queue.popleft()
            for w in neighbor_lists[v]:
                if alive[w] and labels[w] < 0:
                    labels[w] = comp
                    count += 1
                    queue.append(w)
        sizes.append(count)
    return labels, sizes


def _alive_from_removed(net: CombatNetwork, removed) -> list[bool]:
    rem = np.asarray(removed)
    if rem.shape != (net.n,):
        raise ParameterError(f"removal vector must have length {net.n}")
    return [not bool(r) for r in rem]


def largest_component_size(net: CombatNetwork, removed) -> int:
    """Node count of the largest connected component after removing the
    flagged nodes; 0 when every node is removed."""
    alive = _alive_from_removed(net, removed)
    _, sizes = _component_sizes_and_labels(net.neighbor_lists, alive)
    return max(sizes, default=0)


_KIND_NAMES = {k.name: k for k in Kind}


def network_to_text(net: CombatNetwork) -> str:
    lines = [f"n {net.n}"]
    lines.extend(f"node {i} {Kind(int(k)).name}" for i, k in enumerate(net.kinds))
    lines.extend(f"edge {i} {j}" for i, j in net.edges.tolist())
    return "\n".join(lines) + "\n"


def network_from_text(text: str) -> CombatNetwork:
    kinds: list[int] = []
    edges: list[tuple[int, int]] = []
    n = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "n" and len(parts) == 2:
                n = int(parts[1])
                kinds = [-1] * n
            elif parts[0] == "node" and len(parts) == 3:
                kinds[int(parts[1])] = int(_KIND_NAMES[parts[2]])
            elif parts[0] == "edge" and len(parts) == 3:
                edges.append((int(parts[1]), int(parts[2])))
            else:
                raise KeyError(parts[0])
        except (KeyError, IndexError, ValueError) as exc:
            raise ParameterError(f"malformed network line {lineno}: {raw!r}") from exc
    if n is None:
        raise ParameterError("missing 'n <count>' header")
    if any(k < 0 for k in kinds):
        raise ParameterError("node lines do not cover every index")
    return CombatNetwork(kinds=np.array(kinds, dtype=np.int8), edges=edges)


def save_network(net: CombatNetwork, path) -> None:
    Path(path).write_text(network_to_text(net))


def load_network(path) -> CombatNetwork:
    return network_from_text(Path(path).read_text())
