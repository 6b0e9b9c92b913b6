"""Node-importance indicators used by attack baselines and GA seeding.

Five indicators: degree, betweenness (Brandes accumulation, exact),
eigenvector (power iteration on the largest component), closeness
(component-scaled so disconnected graphs compare meaningfully), and
topological potential (Gaussian kernel over hop distances).
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, ParameterError
from .network import CombatNetwork, _component_sizes_and_labels

__all__ = [
    "PotentialConfig",
    "degree_centrality",
    "betweenness_centrality",
    "eigenvector_centrality",
    "closeness_centrality",
    "topological_potential",
    "CENTRALITY_FUNCS",
    "centrality_to_csv",
]


@dataclass(frozen=True)
class PotentialConfig:
    """Gaussian influence range for the topological potential."""

    sigma: float = 1.5
    cutoff: int | None = None  # max hop distance; defaults to ceil(3 * sigma)

    def __post_init__(self):
        if self.sigma <= 0:
            raise ParameterError("sigma must be positive")
        if self.cutoff is not None and self.cutoff < 1:
            raise ParameterError("cutoff must be >= 1")

    @property
    def effective_cutoff(self) -> int:
        return self.cutoff if self.cutoff is not None else math.ceil(3 * self.sigma)


def _bfs_distances(nbrs: list[list[int]], source: int, n: int, cutoff=None) -> list[int]:
    dist = [-1] * n
    dist[source] = 0
    queue = deque((source,))
    while queue:
        v = queue.popleft()
        if cutoff is not None and dist[v] >= cutoff:
            continue
        for w in nbrs[v]:
            if dist[w] < 0:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def degree_centrality(net: CombatNetwork) -> np.ndarray:
    return net.degrees.astype(float)


def betweenness_centrality(net: CombatNetwork) -> np.ndarray:
    """Exact shortest-path betweenness, summed over unordered pairs."""
    n = net.n
    nbrs = net.neighbor_lists
    cb = np.zeros(n)
    for s in range(n):
        order: list[int] = []
        preds: list[list[int]] = [[] for _ in range(n)]
        sigma = np.zeros(n)
        sigma[s] = 1.0
        dist = [-1] * n
        dist[s] = 0
        queue = deque((s,))
        while queue:
            v = queue.popleft()
            order.append(v)
            for w in nbrs[v]:
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    queue.append(w)
                if dist[w] == dist[v] + 1:
                    sigma[w] += sigma[v]
                    preds[w].append(v)
        delta = np.zeros(n)
        for w in reversed(order):
            for v in preds[w]:
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w])
            if w != s:
                cb[w] += delta[w]
    return cb / 2.0  # each unordered pair was accumulated from both endpoints


def eigenvector_centrality(
    net: CombatNetwork, tol: float = 1e-10, max_iter: int = 1000
) -> np.ndarray:
    """Principal eigenvector of the adjacency restricted to the largest
    component, max-norm normalized, zeros elsewhere.

    Iterates on (A + I), which shares A's principal eigenvector but cannot
    oscillate on bipartite components.
    """
    n = net.n
    if n == 0:
        return np.zeros(0)
    labels, sizes = _component_sizes_and_labels(net.neighbor_lists, [True] * n)
    comp = int(np.argmax(sizes))  # ties: first-discovered component
    idx = np.flatnonzero(np.array(labels) == comp)
    sub = net.adjacency[np.ix_(idx, idx)] + np.eye(len(idx))
    v = np.ones(len(idx))
    for _ in range(max_iter):
        nxt = sub @ v
        nxt /= nxt.max()
        if np.max(np.abs(nxt - v)) < tol:
            out = np.zeros(n)
            out[idx] = nxt
            return out
        v = nxt
    raise ConvergenceError("eigenvector power iteration hit the iteration cap")


def closeness_centrality(net: CombatNetwork) -> np.ndarray:
    """Component-scaled closeness: ((r-1)/(n-1)) * ((r-1)/sum of distances),
    where r counts the nodes reachable from i. Isolated nodes score 0."""
    n = net.n
    values = np.zeros(n)
    if n <= 1:
        return values
    nbrs = net.neighbor_lists
    for i in range(n):
        dist = _bfs_distances(nbrs, i, n)
        reachable = [d for d in dist if d > 0]
        if not reachable:
            continue
        r = len(reachable)
        values[i] = (r / (n - 1)) * (r / sum(reachable))
    return values


def topological_potential(
    net: CombatNetwork, cfg: PotentialConfig | None = None
) -> np.ndarray:
    """Gaussian-kernel field: sum of exp(-(d/sigma)^2) over nodes within
    the hop cutoff."""
    cfg = cfg if cfg is not None else PotentialConfig()
    cutoff = cfg.effective_cutoff
    kernel = [0.0] + [
        math.exp(-((d / cfg.sigma) ** 2)) for d in range(1, cutoff + 1)
    ]
    n = net.n
    nbrs = net.neighbor_lists
    values = np.zeros(n)
    for i in range(n):
        dist = _bfs_distances(nbrs, i, n, cutoff=cutoff)
        values[i] = sum(kernel[d] for d in dist if d > 0)
    return values


CENTRALITY_FUNCS = {
    "degree": degree_centrality,
    "betweenness": betweenness_centrality,
    "eigenvector": eigenvector_centrality,
    "closeness": closeness_centrality,
    "topological_potential": topological_potential,
}


def centrality_to_csv(kind: str, values: np.ndarray) -> str:
    lines = ["node_index,kind,value"]
    lines.extend(
        f"{i},{kind},{format(v, '.10g')}" for i, v in enumerate(values)
    )
    return "\n".join(lines) + "\n"
