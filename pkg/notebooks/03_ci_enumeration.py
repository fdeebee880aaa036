"""
Reading conditional independences off a decomposition
=====================================================
"""

# %%
import numpy as np

from cilattice import GraphSeparationOracle, UndirectedGraph, full_decomposition
from cilattice.ci import count_possible_ci, enumerate_ci, general_ci_query
from cilattice.lattice import query_complexity_report

g = UndirectedGraph.random(10, 0.3, np.random.default_rng(7))
print("edges:", sorted((u + 1, v + 1) for u, v in g.edges))
oracle = GraphSeparationOracle(g)

# %%
dec = full_decomposition(oracle, 0)
stream = enumerate_ci(dec)
print(f"node 1: {dec.k} lattices, {stream.count} of {count_possible_ci(g.d)} elementary statements hold")
for n, (i, C) in enumerate(stream):
    if n == 5:
        break
    print(f"  1 _||_ {i + 1} | {g.ground.label_list(C)}")

# %%
rep = query_complexity_report(dec)
print(f"{rep.queries} queries; largest per-lattice bound {max(rep.lattice_bounds)}; d^3 k^2 = {rep.overall_bound}")

# %%
verdict = general_ci_query(oracle, [0, 1], [8, 9], [4, 5])
print("{1,2} _||_ {9,10} | {5,6}:", verdict.independent, "after", verdict.queries, "queries")
