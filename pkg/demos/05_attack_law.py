"""Attack patterns when only the budget limits the attack.

With the budget-only optimizer the attack-set size L is an outcome.
Sweeping the cost exponent gamma and budget fraction rho shows the law:
expensive hubs stop being attacked as gamma grows, and both the mean
attacked degree and L stabilize as rho loosens. Desk-scale settings here;
the experiment CLI runs the full grids.
"""

from combatnet import ExperimentSpec, GAConfig, GeneratorConfig, run_experiment

spec = ExperimentSpec(
    family="attack-law",
    network=GeneratorConfig(family="GOH", sizes=(20, 16, 12, 12)),
    ga=GAConfig(n_pop=30, gen=60, n_seeded=3),
    replicates=5,
    seed=42,
    gammas=(0.0, 0.5, 1.0, 1.5, 2.0),
    rhos=(0.2, 0.5, 0.8),
)
result = run_experiment(spec, workers=2)

dhat = result.tables["dhat_by_gamma_rho"]
mean_l = result.tables["mean_l_by_gamma_rho"]
print("mean attacked-set degree (rows gamma, cols rho):")
print("gamma " + "".join(f"  rho={r:<5g}" for r in spec.rhos))
for gamma in spec.gammas:
    cells = []
    for rho in spec.rhos:
        (row,) = dhat.select(gamma=gamma, rho=rho).rows
        cells.append(f"  {row[2]:8.3f}")
    print(f"{gamma:5.2f}" + "".join(cells))

print("\nrealized attack size L (rows gamma, cols rho):")
for gamma in spec.gammas:
    cells = []
    for rho in spec.rhos:
        (row,) = mean_l.select(gamma=gamma, rho=rho).rows
        cells.append(f"  {row[2]:8.1f}")
    print(f"{gamma:5.2f}" + "".join(cells))

print("\nL's dependence on gamma fades as the budget loosens:")
for rho, var_g, cv_g, k in result.tables["var_l_by_rho"].rows:
    print(f"  rho={rho:<4g} relative spread of L across gamma = {cv_g:.3f}")
