"""
Recovering a sparse decomposition from samples
==============================================

Thresholded sample partial correlations stand in for the exact oracle. With
enough samples the sparse decomposition matches the population one exactly.
"""

# %%
from cilattice.experiment import ExperimentConfig, run_recovery_experiment
from cilattice.graphtools import markov_chain_gaussian

spec = markov_chain_gaussian(8, 0.8)

# %%
for n in (50, 200, 1000, 5000):
    rep = run_recovery_experiment(ExperimentConfig(spec, node=3, t=2, n=n, trials=20, seed=0))
    print(f"n={n:5d}  n*alpha^2={rep.n_alpha2:7.1f}  log n + t log d={rep.log_term:5.1f}  recovery={rep.recovery_rate:.2f}")

# %%
print("alpha =", round(rep.alpha, 4), " zeta =", rep.zeta, " tau =", round(rep.tau, 4),
      " population lattices =", rep.population_lattices)
