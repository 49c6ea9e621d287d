# %% [markdown]
# The two explicit code families.
#
# Symmetric family: take a multi-permutation whose entries come in equal
# consecutive pairs, then fill each value block of width k+1 with any
# arrangement. Adjacent pairs then differ by at most k.

# %%
from rankmod import build_Csym, cardinality_Csym, build_Casym, lower_bound_Casym, valleys
from rankmod.constructions import build_Cr, cr_word
from rankmod.perm import MultiPermutation, BlockPermutation, compose, decompose

rho = MultiPermutation(3, 2, (1, 2, 1, 3, 2, 3))
gammas = [BlockPermutation(1, (2, 1)), BlockPermutation(2, (3, 4)), BlockPermutation(3, (6, 5))]
alpha = compose(rho, gammas)
print("compose:", alpha, " decompose back:", decompose(alpha, 3, 2)[0].values)

for n, k in [(4, 1), (6, 1), (8, 3), (10, 9)]:
    code = build_Csym(n, k)
    print(f"Csym(n={n}, k={k}): {len(code)} words, formula {cardinality_Csym(n, k)},",
          "all constrained" if code.check_constraint().all() else "VIOLATION")

# %% [markdown]
# Asymmetric family: alternate ascending and descending runs of an ordered
# set partition, and slot a pair from a small symmetric code after each
# descending run. Each such word has a fixed number of valleys.

# %%
word = cr_word([{5, 8, 10}, {6, 12}, {7, 15}, {9, 13}, {11, 14}], [4, 3, 1, 2])
print("worked word:", word, "valleys at", valleys(word))

for n in range(4, 10):
    union = build_Casym(n)
    sizes = [len(build_Cr(n, r)) for r in range(1, n // 2 + 1)]
    print(f"n={n}: |Casym|={len(union)} (per r: {sizes}), lower bound {float(lower_bound_Casym(n))}")
