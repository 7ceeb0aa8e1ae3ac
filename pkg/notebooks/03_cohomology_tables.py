# %% [markdown]
# # Equivariant cohomology of the resolution
#
# For type A the torus is two-dimensional and the cup product is found by
# localization.  The ring is free over Q[t1, t2] with basis 1, e_1..e_n, and
# each product is the unique combination with the right restriction to
# every fixed point.

# %%
from adehikita.cohomology import (RingElement, T1T2, an_cup_table, an_fixed_point_data,
                                  an_pairing, bg_cup_table, specialize_equal_parameters,
                                  table_differences)
from adehikita.rootsystem import build_root_system

table = an_cup_table(3)
for (i, j), el in sorted(table.entries.items()):
    print(f"e{i}*e{j} = {el.to_text('e')}")

# %% [markdown]
# The pairing is the sum over fixed points.  On the e_i it reproduces the
# negative Cartan matrix.

# %%
n = 3
d = an_fixed_point_data(n)
e = [RingElement.basis(k, n, T1T2) for k in range(1, n + 1)]
print("<1,1> =", an_pairing(d, RingElement.one(n, T1T2), RingElement.one(n, T1T2)).to_text())
print([[an_pairing(d, a, b).to_text() for b in e] for a in e])

# %% [markdown]
# In every type a one-parameter torus acts and the product has a closed
# form in terms of roots:
# e_i e_j = -|G| (a_i, a_j) t^2 + t sum over positive roots a of (a_i, a)(a_j, a) e_a,
# where e_a is a written in the e basis.  For type A it agrees with the
# localization table at t1 = t2 = t.

# %%
print(table_differences(bg_cup_table(build_root_system("A3")), specialize_equal_parameters(table)))
e6 = bg_cup_table(build_root_system("E6"))
print("E6: e4*e4 =", e6.entry(4, 4).to_text())
print("associative:", e6.is_associative(), " commutative:", e6.is_commutative())
