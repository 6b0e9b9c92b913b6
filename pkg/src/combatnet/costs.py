"""Heterogeneous node damage costs and the global attack budget.

Each node costs lambda(kind) * degree**gamma; the budget is a fixed
fraction rho of the summed costs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .network import LAMBDA, CombatNetwork, Kind

__all__ = ["node_costs", "budget", "CostModel"]


def node_costs(
    net: CombatNetwork,
    gamma: float,
    lambda_table: dict[Kind, float] | None = None,
) -> np.ndarray:
    """Per-node damage cost vector c_i = lambda(kind_i) * d_i**gamma.

    Uses the convention 0**0 = 1, so gamma = 0 prices every node at its
    kind coefficient alone (degree-independent). ``lambda_table`` overrides
    the default coefficients, e.g. to make costs fully homogeneous.
    """
    if gamma < 0:
        raise ParameterError("gamma must be >= 0")
    table = LAMBDA if lambda_table is None else lambda_table
    lam = np.array([table[Kind(int(k))] for k in net.kinds], dtype=float)
    d = net.degrees.astype(float)
    if gamma == 0:
        return lam.copy()
    return lam * d**gamma


def budget(costs: np.ndarray, rho: float) -> float:
    """Total-cost budget C_max = rho * sum(costs)."""
    if not 0.0 <= rho <= 1.0:
        raise ParameterError("rho must be in [0, 1]")
    return float(rho * np.sum(costs))


@dataclass(frozen=True)
class CostModel:
    """Frozen cost vector plus its budget for one network."""

    gamma: float
    rho: float
    costs: np.ndarray
    c_max: float

    @classmethod
    def from_network(
        cls,
        net: CombatNetwork,
        gamma: float = 1.0,
        rho: float = 0.3,
        lambda_table: dict[Kind, float] | None = None,
    ) -> "CostModel":
        c = node_costs(net, gamma, lambda_table)
        return cls(gamma=gamma, rho=rho, costs=c, c_max=budget(c, rho))

    def attack_cost(self, bits) -> float:
        """Total cost C^T X of an attack vector."""
        return float(np.dot(self.costs, np.asarray(bits, dtype=float)))

    def to_csv(self, net: CombatNetwork) -> str:
        lines = ["node_index,kind,degree,cost"]
        for i in range(net.n):
            lines.append(
                f"{i},{Kind(int(net.kinds[i])).name},{net.degrees[i]},"
                f"{format(self.costs[i], '.10g')}"
            )
        return "\n".join(lines) + "\n"
