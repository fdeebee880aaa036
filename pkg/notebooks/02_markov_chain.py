"""
Lattices on a Markov chain
==========================

On a path graph the boundary of ``j`` in ``S`` is the nearest member of ``S``
on each side, and the lattice top adds everything beyond those members.
"""

# %%
from cilattice import GraphSeparationOracle, UndirectedGraph, compute_lattice, full_decomposition
from cilattice.graphtools import path_graph_boundary, path_graph_maximum

d, j = 7, 3
g = UndirectedGraph.path(d)
oracle = GraphSeparationOracle(g)
show = g.ground.label_list

# %%
for S in [[0, 1], [0, 6], [5], [1, 2, 4, 5], []]:
    lat = compute_lattice(oracle, j, S)
    print(f"S={show(S)!s:24} m={show(lat.lower)!s:12} M={show(lat.upper)}")

# %%
# closed forms agree with the oracle-driven algorithm on every S
rest = g.ground.without(j)
mismatch = sum(compute_lattice(oracle, j, S).lower != path_graph_boundary(d, j, S)
               or compute_lattice(oracle, j, S).upper != path_graph_maximum(d, j, S)
               for S in rest.subsets())
print("mismatches:", mismatch, "over", 2 ** (d - 1), "sets")

# %%
dec = full_decomposition(oracle, j)
print("lattices:", dec.k, " histogram of covered sizes:", dict(sorted(dec.covered_histogram().items())))
