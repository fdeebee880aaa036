"""
A seven-variable Gaussian with a hidden collider
================================================

Variables 5 and 6 are marginally independent but become dependent once 7 is
observed. The neighbourhood lattices of node 5 show this directly.
"""

# %%
import numpy as np

from cilattice import GaussianOracle, compute_lattice, compute_mb, example11_gaussian, full_decomposition
from cilattice.ci import elementary_ci_check
from cilattice.core import EMPTY, VarSet
from cilattice.stats import partial_correlation

spec = example11_gaussian()
oracle = GaussianOracle(spec)
labels = spec.ground.labels
print(np.round(spec.precision, 2))

# %%
# marginal vs conditional partial correlation of (5, 6); nodes are 0-indexed
print("rho(5,6)   =", round(partial_correlation(spec, 4, 5).value, 12))
print("rho(5,6|7) =", round(partial_correlation(spec, 4, 5, VarSet([6])).value, 4))

# %%
m = compute_mb(oracle, 4, VarSet([5]))
print("m(5;{6}) =", spec.ground.label_list(m))
print("5 _||_ 6 | {} :", elementary_ci_check(oracle, 4, 5, EMPTY).independent)
print("5 _||_ 6 | {7}:", elementary_ci_check(oracle, 4, 5, VarSet([6])).independent)

# %%
lat = compute_lattice(oracle, 4, VarSet([5]))
print("lattice of {6}:", spec.ground.label_list(lat.lower), spec.ground.label_list(lat.upper))

# %%
dec = full_decomposition(oracle, 4)
for l in dec.lattices:
    print(f"[{spec.ground.label_list(l.lower)}, {spec.ground.label_list(l.upper)}]  covers {l.cardinality()}")
print("k =", dec.k, "covered =", dec.covered_total(), "of", 2 ** 6)
