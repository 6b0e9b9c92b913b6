"""How operational capability is counted and how attacks are scored.

Capability = number of typed O->...->A paths over seven admissible
patterns. The damage measure of an attack blends the relative loss of
that count with the relative loss of the largest component.
"""

import numpy as np

from combatnet import (
    AttackEvaluator,
    CombatNetwork,
    CostModel,
    DamageConfig,
    Kind,
    build_blocks,
    count_ielk,
    count_ielk_bruteforce,
    encode,
)
from combatnet.capability import LINK_PATTERNS, pattern_name

O, P, D, A = Kind.O, Kind.P, Kind.D, Kind.A

# a small hand-built network: two sensors feeding one processing chain,
# plus a second command node and attack node
net = CombatNetwork(
    kinds=[O, O, P, D, D, A, A],
    edges=[(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (3, 5), (4, 6)],
)
print("patterns:", ", ".join(pattern_name(p) for p in LINK_PATTERNS))

none = np.zeros(net.n, dtype=np.uint8)
print("links via block traces :", count_ielk(build_blocks(net, none)))
print("links via enumeration  :", count_ielk_bruteforce(net, none))

costs = CostModel.from_network(net, gamma=1.0, rho=0.6)
print(f"\nnode costs: {np.round(costs.costs, 2)}  budget: {costs.c_max:.2f}")

evaluator = AttackEvaluator(net, costs, DamageConfig(alpha=0.5))
for target in ([], [2], [3], [2, 3]):
    report = evaluator.report(encode(net, target))
    print(f"attack {str(target):8s} -> links {report.s_links:2d} "
          f"huge {report.s_huge} r={report.r:.3f} "
          f"cost {report.total_cost:.1f} feasible={report.feasible}")
