"""Combat-network damage modeling and cost-constrained attack optimization.

The package models a typed four-layer operational network (intelligence
obtaining / processing / command / attack nodes), quantifies capability by
counting typed O-to-A link patterns, prices node attacks by kind and
degree, and searches for budget-constrained attack sets with a
weight-preserving genetic algorithm plus centrality baselines.
"""

from .capability import (
    LINK_PATTERNS,
    AttackEvaluator,
    BlockMatrices,
    DamageConfig,
    DamageReport,
    accessibility_matrix,
    baseline_metrics,
    build_blocks,
    count_ielk,
    count_ielk_bruteforce,
    damage_effect,
    evaluate_attack,
)
from .centrality import (
    CENTRALITY_FUNCS,
    PotentialConfig,
    betweenness_centrality,
    closeness_centrality,
    degree_centrality,
    eigenvector_centrality,
    topological_potential,
)
from .costs import CostModel, budget, node_costs
from .errors import (
    CombatNetError,
    ConvergenceError,
    DegenerateNetworkError,
    GenerationError,
    InfeasibleError,
    ParameterError,
)
from .experiments import (
    ALGORITHMS,
    EXPERIMENT_FAMILIES,
    ExperimentResult,
    ExperimentSpec,
    ResultTable,
    run_experiment,
    write_experiment,
)
from .ipga import (
    GAConfig,
    Population,
    baseline_select,
    decode,
    encode,
    fitness,
    init_population,
    roulette_select,
    run_ipga,
    run_ipga_budget_mode,
    symmetric_crossover,
    symmetric_mutation,
)
from .network import (
    LAMBDA,
    CombatNetwork,
    GeneratorConfig,
    Kind,
    assemble_combat_network,
    gen_ba_subnet,
    gen_er_subnet,
    gen_goh_subnet,
    largest_component_size,
    load_network,
    save_network,
)

__version__ = "0.1.0"
