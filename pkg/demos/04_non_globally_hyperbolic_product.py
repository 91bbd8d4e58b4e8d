# %% [markdown]
# Adding a negative direction can break global hyperbolicity
#
# M is 2d Minkowski space with the causal future of the origin removed.
# In R x M the diamond of p = (-2,-1,1), q = (2,1,-2) contains
# x_j = (0,-1/j,-1/j), whose limit is the removed origin.

# %%
import numpy as np

from conecalc import extend_negative
from conecalc.lattice import GridSpec, build_graph, diamond
from conecalc.spacetime import minkowski_minus_future_cone
from conecalc.verify import notgh_products

for j in (2, 3, 10, 100):
    print(j, {k: str(v) for k, v in notgh_products(j).items()})

# %%
s = extend_negative(minkowski_minus_future_cone(), 0.0)
p, q = np.array([-2.0, -1, 1]), np.array([2.0, 1, -2])
for j in (2, 4, 8):
    g = build_graph(s, GridSpec([(-2, 2), (-1, 1), (-2, 1)], 1 / j, r=2))
    d = diamond(g, p, q)
    x = np.array([0, -1 / j, -1 / j])
    print(j, len(d), "nodes;", "x_j inside:", g.node_at(x) in set(d.tolist()))
print("origin in domain:", s.contains(np.zeros(3)))
