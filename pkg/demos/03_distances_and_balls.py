# %% [markdown]
# Distances between rankings. Kendall tau counts adjacent swaps; the
# inversion distance is Kendall tau between the inverses, i.e. between the
# cell orderings. Manhattan distance sandwiches it: dM/2 <= dI <= dM.

# %%
import math

import numpy as np

from rankmod import kendall_tau, inversion_distance, manhattan, check_sandwich, ball_size_inversion
from rankmod.metrics import ball_members_manhattan, fitted_ball_constant, mahonian, manhattan_ball_extremes

s, p = (4, 7, 5, 3, 1, 2, 6), (7, 6, 5, 4, 3, 2, 1)
print("d_K =", kendall_tau(s, p), " d_I =", inversion_distance(s, p), " d_M =", manhattan(s, p))

rng = np.random.default_rng(0)
ratios = []
for _ in range(2000):
    a, b = rng.permutation(20) + 1, rng.permutation(20) + 1
    dm, di, ok = check_sandwich(a.tolist(), b.tolist())
    assert ok
    ratios.append(di / dm)
print(f"n=20: dI/dM ranges over [{min(ratios):.3f}, {max(ratios):.3f}] on 2000 random pairs")

# %% [markdown]
# Inversion balls have the same size around every centre. Their sizes are
# partial sums of the inversion-count distribution.

# %%
print("inversion counts of S_5:", mahonian(5))
for n in (10, 20, 40):
    r = n
    print(f"b_I({n},{r}) = {ball_size_inversion(n, r)}  (log2 {math.log2(ball_size_inversion(n, r)):.1f})")
print("fitted c with b_I(n, n) <= e^(c n), n=2..30:", round(fitted_ball_constant(range(2, 31), 1.0), 3))

# %% [markdown]
# Manhattan balls in the vector space [n]^n do depend on the centre, so the
# bounds use the smallest or largest one over the constrained vectors.

# %%
print("ball of radius 1 around (1,1):", ball_members_manhattan((1, 1), 1))
ext = manhattan_ball_extremes(5, 2, k=1)
print(f"n=5, k=1, r=2: smallest ball {ext['min']} at {ext['argmin']}, largest {ext['max']} at {ext['argmax']}")
