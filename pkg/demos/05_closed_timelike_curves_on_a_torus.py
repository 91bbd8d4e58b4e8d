# %% [markdown]
# Compact spacetimes have closed timelike curves
#
# Identify every axis of flat space: the time direction wraps around.

# %%
from conecalc import flat
from conecalc.lattice import GridSpec, build_graph, find_closed_timelike

for n, nu in [(2, 1), (2, 2), (3, 2)]:
    torus = build_graph(flat(n, nu), GridSpec([(0, 4)] * n, 1.0, periodic=(True,) * n, r=1))
    box = build_graph(flat(n, nu), GridSpec([(0, 4)] * n, 1.0, r=1))
    cyc = find_closed_timelike(torus)
    print((n, nu), torus.coords[cyc].tolist(), find_closed_timelike(box))
