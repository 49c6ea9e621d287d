# %% [markdown]
# Neighbour constraints on permutations and how many permutations survive them.
# A permutation sigma stores sigma(i) = rank of cell i. The two-neighbor
# k-constraint asks that every interior cell has a neighbour within k ranks.

# %%
import math

from rankmod import ConstraintKind, count_constrained, satisfies_two_neighbor, satisfies_asym_two_neighbor
from rankmod.constructions import cardinality_Csym, lower_bound_Casym
from rankmod.enumeration import capacity_ratio, log2_factorial, upper_bound_A_log

sigma = [4, 7, 5, 3, 1, 2, 6]
print(sigma, "two-neighbor k=2:", satisfies_two_neighbor(sigma, 2), " k=1:", satisfies_two_neighbor(sigma, 1))

tau = [5, 3, 1, 6, 4, 2]
print(tau, "asymmetric k=2:", satisfies_asym_two_neighbor(tau, 2), " k=1:", satisfies_asym_two_neighbor(tau, 1))

# %% [markdown]
# Exact counts. The DP over (used set, last value, pending flag) handles n=13
# in a couple of seconds; filtering all of S_n is the independent cross-check.

# %%
for kind in ("two_neighbor", "asym_two_neighbor"):
    c = ConstraintKind(kind, 1)
    print(kind, [count_constrained(n, c) for n in range(1, 11)])

assert count_constrained(8, ConstraintKind("two_neighbor", 2), method="filter") == count_constrained(
    8, ConstraintKind("two_neighbor", 2)
)

# %% [markdown]
# Finite-n capacity ratios log|A| / log n!. The limit is not reachable here;
# what we can show is the bracket: code construction below, counting bound above.

# %%
print(f"{'n':>3} {'k':>2} {'Csym':>8} {'A':>8} {'bound':>8}")
for n in (4, 6, 8, 10):
    k = 1
    a = count_constrained(n, ConstraintKind("two_neighbor", k))
    lo = capacity_ratio(cardinality_Csym(n, k), n)
    hi = upper_bound_A_log(n, k) / log2_factorial(n)  # exceeds 1 until n is large
    print(f"{n:>3} {k:>2} {lo:8.3f} {capacity_ratio(a, n):8.3f} {hi:8.3f}")

for n in (6, 8, 10):
    b = count_constrained(n, ConstraintKind("asym_two_neighbor", 1))
    print(f"n={n}: asym construction bound {math.log2(lower_bound_Casym(n)) / log2_factorial(n):.3f}"
          f"  <=  |B_n,1| ratio {capacity_ratio(b, n):.3f}")
