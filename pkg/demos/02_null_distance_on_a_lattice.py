# %% [markdown]
# Null distance on a causal lattice
#
# In a Lorentzian product the null distance of the time coordinate is
# max(|dt|, |dx|).  A lattice estimate searches zigzags of causal edges.

# %%
import numpy as np

from conecalc import flat
from conecalc.lattice import GridSpec, build_graph
from conecalc.nulldist import canonical_T, estimate, euclidean_dist, product_oracle

s = flat(2, 1)
grid = GridSpec([(-2, 2), (-2, 2)], 0.05, r=2)
graph = build_graph(s, grid)
tau = canonical_T(1)
print(graph.n_nodes, "nodes", graph.n_edges, "edges")

# %%
for p, q in [((0, 0), (1, 0)), ((0, 0), (0, 1)), ((0, 0), (0.3, 1.35)), ((0, 0), (0.0, 0.05))]:
    res = estimate(s, tau, grid, p, q, graph=graph)
    print(p, q, "estimate", round(res.value, 6), "formula", product_oracle(euclidean_dist, p, q),
          "legs", len(res.witness.directions))

# %%
# Null steps keep the parity of (dt + dx) / h, so a spacelike pair an odd
# number of steps apart costs one extra step h.
p, q = (0.0, 0.0), (0.0, 0.05)
print("one-step spacelike pair:", estimate(s, tau, grid, p, q, graph=graph).value, "vs", 0.05)

# %%
# refinement on a pair off the lattice directions
for h in (0.2, 0.1, 0.05, 0.025):
    g = GridSpec([(-1, 1), (-1, 1)], h, r=2)
    print(h, estimate(s, tau, g, (0, 0), (0.2, 0.6)).value)
