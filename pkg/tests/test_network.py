"""Network model, generators, components, and serialization."""

import numpy as np
import pytest

from combatnet.errors import GenerationError, ParameterError
from combatnet.network import (
    ADMISSIBLE_KIND_PAIRS,
    CombatNetwork,
    GeneratorConfig,
    Kind,
    assemble_combat_network,
    gen_ba_subnet,
    gen_er_subnet,
    gen_goh_subnet,
    largest_component_size,
    network_from_text,
    network_to_text,
)

O, P, D, A = Kind.O, Kind.P, Kind.D, Kind.A


def chain_opda():
    return CombatNetwork(kinds=[O, P, D, A], edges=[(0, 1), (1, 2), (2, 3)])


def degrees_from_edges(n, edges):
    d = np.zeros(n, dtype=int)
    for i, j in edges:
        d[i] += 1
        d[j] += 1
    return d


class UnionFind:
    """Independent component oracle."""

    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


def union_find_largest(net, removed):
    alive = [not r for r in removed]
    uf = UnionFind(net.n)
    for i, j in net.edges:
        if alive[i] and alive[j]:
            uf.union(int(i), int(j))
    counts = {}
    for v in range(net.n):
        if alive[v]:
            root = uf.find(v)
            counts[root] = counts.get(root, 0) + 1
    return max(counts.values(), default=0)


def random_config(rng):
    fam = ("ER", "BA", "GOH")[int(rng.integers(3))]
    sizes = tuple(int(rng.integers(3, 9)) for _ in range(4))
    return GeneratorConfig(
        family=fam,
        sizes=sizes,
        er_probs=tuple(rng.uniform(0.05, 0.4, size=4)),
        ba_params=(3, 2),
        # k_mean must not exceed min layer size - 1 (layers can be 3 nodes)
        goh_params=(float(rng.uniform(2.2, 4.0)), float(rng.uniform(1.0, 2.0))),
        inter_prob=float(rng.uniform(0.05, 0.3)),
        seed=int(rng.integers(2**31)),
    )


# --- CombatNetwork invariants ------------------------------------------------

def test_rejects_self_loop():
    with pytest.raises(ParameterError):
        CombatNetwork(kinds=[O, O], edges=[(0, 0)])


def test_rejects_duplicate_edges():
    with pytest.raises(ParameterError):
        CombatNetwork(kinds=[O, O], edges=[(0, 1), (1, 0)])


def test_rejects_inadmissible_edge_type():
    for kinds, edge in ([(O, D), (0, 1)], [(O, A), (0, 1)], [(P, A), (0, 1)]):
        with pytest.raises(ParameterError):
            CombatNetwork(kinds=list(kinds), edges=[edge])


def test_rejects_out_of_range_edge():
    with pytest.raises(ParameterError):
        CombatNetwork(kinds=[O, P], edges=[(0, 2)])


def test_layer_indices_partition():
    net = chain_opda()
    all_indices = sorted(
        int(i) for k in Kind for i in net.layer_indices[k]
    )
    assert all_indices == list(range(net.n))
    assert net.layer_sizes() == (1, 1, 1, 1)


def test_degrees_match_incidence():
    rng = np.random.default_rng(0)
    for _ in range(20):
        net = assemble_combat_network(random_config(rng))
        assert np.array_equal(net.degrees, degrees_from_edges(net.n, net.edges))


# --- ER generator -------------------------------------------------------------

def test_er_zero_probability_empty():
    edges = gen_er_subnet(3, 0.0, np.random.default_rng(1))
    assert len(edges) == 0


def test_er_certain_connection_complete():
    edges = gen_er_subnet(3, 1.0, np.random.default_rng(1))
    assert sorted(map(tuple, edges)) == [(0, 1), (0, 2), (1, 2)]


def test_er_edge_count_matches_binomial_expectation():
    # n=50 -> 1225 pairs at f=0.02: mean edge count ~ 24.5 within 5%
    counts = [
        len(gen_er_subnet(50, 0.02, np.random.default_rng(seed)))
        for seed in range(1000)
    ]
    assert abs(np.mean(counts) - 24.5) < 0.05 * 24.5


def test_er_invalid_probability():
    with pytest.raises(ParameterError):
        gen_er_subnet(5, 1.5, np.random.default_rng(0))
    with pytest.raises(ParameterError):
        gen_er_subnet(0, 0.5, np.random.default_rng(0))


# --- BA generator -------------------------------------------------------------

def test_ba_no_arrivals_is_seed_ring():
    edges = gen_ba_subnet(5, 5, 3, np.random.default_rng(2))
    assert sorted(map(tuple, edges)) == [(0, 1), (0, 4), (1, 2), (2, 3), (3, 4)]


def test_ba_edge_count_identity():
    edges = gen_ba_subnet(30, 5, 3, np.random.default_rng(3))
    assert len(edges) == 5 + 25 * 3


def test_ba_arrivals_attach_distinct_targets():
    edges = gen_ba_subnet(40, 5, 3, np.random.default_rng(4))
    assert len(set(map(tuple, edges))) == len(edges)


def test_ba_tail_exponent_near_three():
    # MLE tail fit (continuous approximation, x_min=8) over 20 seeds
    estimates = []
    for seed in range(20):
        edges = gen_ba_subnet(1000, 5, 3, np.random.default_rng(seed))
        d = degrees_from_edges(1000, edges).astype(float)
        tail = d[d >= 8]
        estimates.append(1.0 + len(tail) / np.log(tail / 7.5).sum())
    assert 2.5 <= np.mean(estimates) <= 3.5


def test_ba_parameter_errors():
    with pytest.raises(ParameterError):
        gen_ba_subnet(4, 5, 3, np.random.default_rng(0))  # n < m0
    with pytest.raises(ParameterError):
        gen_ba_subnet(10, 2, 3, np.random.default_rng(0))  # m0 < m


# --- Goh generator ------------------------------------------------------------

def test_goh_forced_single_edge():
    edges = gen_goh_subnet(2, 3.0, 1.0, np.random.default_rng(5))
    assert sorted(map(tuple, edges)) == [(0, 1)]


def test_goh_exact_edge_count():
    edges = gen_goh_subnet(30, 2.3, 6.0, np.random.default_rng(6))
    assert len(edges) == 90


def test_goh_tail_exponent_near_beta():
    estimates = []
    for seed in range(20):
        edges = gen_goh_subnet(1000, 2.3, 6.0, np.random.default_rng(seed))
        d = degrees_from_edges(1000, edges).astype(float)
        tail = d[d >= 6]
        estimates.append(1.0 + len(tail) / np.log(tail / 5.5).sum())
    assert 1.9 <= np.mean(estimates) <= 2.9


def test_goh_parameter_errors():
    rng = np.random.default_rng(0)
    with pytest.raises(ParameterError):
        gen_goh_subnet(1, 2.3, 0.5, rng)
    with pytest.raises(ParameterError):
        gen_goh_subnet(10, 1.5, 3.0, rng)
    with pytest.raises(ParameterError):
        gen_goh_subnet(10, 2.3, 9.5, rng)  # k_mean >= n - 1


class _StuckStream:
    """Random stream whose draws always collide (u == v)."""

    def random(self):
        return 0.0


def test_goh_draw_cap_raises_generation_error():
    with pytest.raises(GenerationError):
        gen_goh_subnet(5, 2.5, 2.0, _StuckStream())


# --- assembly -----------------------------------------------------------------

def test_assemble_minimal_forced_cross_edges():
    for fam in ("ER", "BA", "GOH"):
        cfg = GeneratorConfig(family=fam, sizes=(1, 1, 1, 1), inter_prob=1.0, seed=0)
        net = assemble_combat_network(cfg)
        assert sorted(map(tuple, net.edges)) == [(0, 1), (1, 2), (2, 3)]


def test_assemble_paper_defaults():
    net = assemble_combat_network(GeneratorConfig(family="ER", seed=11))
    assert net.n == 150
    assert net.layer_sizes() == (50, 40, 30, 30)
    for i, j in net.edges:
        pair = tuple(sorted((Kind(int(net.kinds[i])), Kind(int(net.kinds[j])))))
        assert pair in ADMISSIBLE_KIND_PAIRS


def test_assemble_no_cross_wiring():
    cfg = GeneratorConfig(family="ER", sizes=(2, 1, 1, 1),
                          er_probs=(1.0, 1.0, 1.0, 1.0), inter_prob=0.0, seed=0)
    net = assemble_combat_network(cfg)
    assert sorted(map(tuple, net.edges)) == [(0, 1)]  # only the intra-O pair


def test_assemble_invariants_random_sweep():
    # constructor revalidates invariants; 1000 random configs must all pass
    rng = np.random.default_rng(42)
    for _ in range(1000):
        net = assemble_combat_network(random_config(rng))
        assert net.n == sum(net.layer_sizes())


def test_generators_deterministic_per_seed():
    rng = np.random.default_rng(7)
    for _ in range(20):
        cfg = random_config(rng)
        a = assemble_combat_network(cfg)
        b = assemble_combat_network(cfg)
        assert np.array_equal(a.edges, b.edges)
        assert np.array_equal(a.kinds, b.kinds)


def test_assemble_config_validation():
    with pytest.raises(ParameterError):
        assemble_combat_network(GeneratorConfig(family="XX"))
    with pytest.raises(ParameterError):
        assemble_combat_network(GeneratorConfig(sizes=(0, 1, 1, 1)))
    with pytest.raises(ParameterError):
        assemble_combat_network(GeneratorConfig(inter_prob=1.5))
    with pytest.raises(ParameterError):
        assemble_combat_network(GeneratorConfig(ba_params=(2, 3)))
    with pytest.raises(ParameterError):
        assemble_combat_network(GeneratorConfig(goh_params=(1.9, 6.0)))


# --- largest component --------------------------------------------------------

def test_largest_component_all_removed():
    net = chain_opda()
    assert largest_component_size(net, [1, 1, 1, 1]) == 0


def test_largest_component_whole_chain():
    assert largest_component_size(chain_opda(), [0, 0, 0, 0]) == 4


def test_largest_component_after_split():
    assert largest_component_size(chain_opda(), [0, 1, 0, 0]) == 2


def test_largest_component_length_mismatch():
    with pytest.raises(ParameterError):
        largest_component_size(chain_opda(), [0, 0])


def test_largest_component_union_find_oracle():
    rng = np.random.default_rng(8)
    for _ in range(200):
        net = assemble_combat_network(random_config(rng))
        removed = (rng.random(net.n) < rng.uniform(0, 0.6)).astype(int)
        assert largest_component_size(net, removed) == union_find_largest(net, removed)


def test_removal_monotonicity():
    rng = np.random.default_rng(9)
    for _ in range(50):
        net = assemble_combat_network(random_config(rng))
        removed = (rng.random(net.n) < 0.2).astype(int)
        before = largest_component_size(net, removed)
        extra = removed.copy()
        candidates = np.flatnonzero(extra == 0)
        if len(candidates) == 0:
            continue
        extra[rng.choice(candidates)] = 1
        assert largest_component_size(net, extra) <= before


# --- serialization ------------------------------------------------------------

def test_text_round_trip_bit_exact():
    rng = np.random.default_rng(10)
    for _ in range(20):
        net = assemble_combat_network(random_config(rng))
        text = network_to_text(net)
        back = network_from_text(text)
        assert np.array_equal(back.kinds, net.kinds)
        assert np.array_equal(back.edges, net.edges)
        assert network_to_text(back) == text


def test_text_format_shape():
    text = network_to_text(chain_opda())
    lines = text.splitlines()
    assert lines[0] == "n 4"
    assert lines[1] == "node 0 O"
    assert lines[-1] == "edge 2 3"


@pytest.mark.parametrize(
    "bad",
    [
        "node 0 O\n",  # missing header
        "n 2\nnode 0 O\n",  # missing node line
        "n 2\nnode 0 O\nnode 1 Q\n",  # unknown kind
        "n 2\nnode 0 O\nnode 1 P\nedge 0 5\n",  # bad index
        "n 2\nnode 0 O\nnode 1 P\nfrob 1 2\n",  # unknown record
    ],
)
def test_text_malformed_inputs(bad):
    with pytest.raises(ParameterError):
        network_from_text(bad)
