# %% [markdown]
# Cones of flat R^(n-nu, nu)
#
# With more than one time direction some vectors satisfy g(v, v) <= 0 yet are
# neither future nor past directed.  The frame picks out the future half.

# %%
import numpy as np

from conecalc import flat
from conecalc.cone import classify, interior_vector, strict_witness
from conecalc.flatspace import leq, leq_closure

s = flat(3, 2)
o = np.zeros(3)
for v in [(1, 0, 0), (1, 1, 0), (1, -1, 0), (1, 1, 1.5), (0, 0, 1)]:
    print(v, classify(s, o, v).value)

# %%
# E_1 is only on the boundary; the witness index says which frame product is strict
print("witness for E_1:", strict_witness(s, o, (1, 0, 0)))
print("witness for E_2:", strict_witness(s, o, (0, 1, 0)))
print("interior vector:", interior_vector(s, o))

# %%
# chords compose into non-chords: the cone is not convex when nu = 2
a, b = np.array([1.0, 0, 1]), np.array([0.0, 1, 1])
print(classify(s, o, a).value, classify(s, o, b).value, classify(s, o, a + b).value)
print("single chord:", leq(o, a + b, 2), " chain of chords:", leq_closure(o, a + b, 2))
