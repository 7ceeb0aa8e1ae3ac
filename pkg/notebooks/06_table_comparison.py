# %% [markdown]
# # Comparing the B-algebra with equivariant cohomology
#
# For type A the cohomology side has two parameters t1, t2 and the
# B-algebra has z and hbar.  The map t1 -> -z hbar/(n+1),
# t2 -> (z+n+1) hbar/(n+1), e_k -> h_k carries one table onto the other.
# For D and E both sides have one parameter and hbar -> 2t.

# %%
from adehikita.hikita import substitution_map, verify_isomorphism

for name in ["A1", "A2", "A3", "A4", "A5", "D4", "D5", "D6", "E6", "E7", "E8"]:
    print(verify_isomorphism(name, allow_heavy=True).summary())

# %% [markdown]
# With the opposite sign of z in t1 the type-A comparison fails, even
# though it matches the closed-form reference relations exactly.

# %%
print(verify_isomorphism("A3", convention="reference").summary())
print(verify_isomorphism("A3", balgebra_source="paper", convention="reference").summary())
smap = substitution_map("A3")
print({k: v.to_text() for k, v in smap.images.items()})
