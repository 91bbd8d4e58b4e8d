# %% [markdown]
# A time function whose null distance collapses
#
# T^3 is a time function on flat R^(1,2), but zigzags of null legs between
# two points on a spacelike line have null length 1/(4 j^2).

# %%
import numpy as np

from conecalc import flat
from conecalc.lattice import GridSpec
from conecalc.nulldist import null_length, odd_power, estimate
from conecalc.verify import beta_zigzag

tau = odd_power(1, 2)
for j in (1, 2, 5, 10, 50):
    print(j, null_length(tau, beta_zigzag(j)), 1 / (4 * j * j))

# %%
s = flat(3, 2)
for h in (0.25, 0.125, 0.0625):
    grid = GridSpec([(-0.25, 0.25), (-0.25, 0.25), (0, 1)], h, r=2)
    print(h, estimate(s, tau, grid, (0, 0, 0), (0, 0, 1)).value)
