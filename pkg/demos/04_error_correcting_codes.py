# %% [markdown]
# Constrained codes that also correct rank errors: every pair of codewords at
# inversion distance >= d.

# %%
from rankmod import ConstraintKind, greedy_code, gv_lower_bound, max_code_size, sphere_packing_bound, verify_min_distance
from rankmod.constructions import Code
from rankmod.ecc import capacity_surface_asym, capacity_surface_sym, gv_manhattan_lower_bound
from rankmod.enumeration import enumerate_constrained

n, k = 6, 2
c = ConstraintKind("two_neighbor", k)
universe = Code.from_members(n, enumerate_constrained(n, c), c)
print(f"|A_{n},{k}| = {len(universe)}")
for d in range(1, 7):
    g = greedy_code(universe, d)
    assert verify_min_distance(g)[0]
    print(f"d={d}: greedy {len(g):4d}  >=  |A|/b_I = {float(gv_lower_bound(n, k, d)):8.2f}")

# %% [markdown]
# For n <= 5 the largest code can be found exactly (maximum clique in the
# "far enough apart" graph), and it must fall between the two bounds.

# %%
n, k = 5, 2
for d in range(2, 7):
    e, _ = max_code_size(n, k, d)
    lo, hi = gv_manhattan_lower_bound(n, k, d).value, sphere_packing_bound(n, k, d).value
    print(f"d={d}: {float(lo):7.3f} <= E = {e:3d} <= {float(hi):8.2f}")

# %% [markdown]
# As n grows with k = n^eps1 and d = n^eps2 the achievable rate follows these
# closed-form surfaces.

# %%
print("eps2   sym(eps1=0.5)  asym")
for e2 in (0.0, 0.5, 1.0, 1.25, 1.5, 1.75, 2.0):
    print(f"{e2:4.2f}   {capacity_surface_sym(0.5, e2).value:12.3f}  {capacity_surface_asym(0.5, e2).value:5.3f}")
