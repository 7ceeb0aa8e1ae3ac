# %% [markdown]
# # Weight multiplicities of V(2 theta)
#
# The degree-two part of the minimal-orbit ideal is Sym^2 g minus V(2 theta).
# Its weight-zero dimension needs the zero-weight multiplicity of V(2 theta),
# which we get from the Freudenthal recursion over dominant weights.

# %%
from adehikita.rootsystem import build_root_system
from adehikita.weights import dim_i2_zero, freudenthal_table, two_theta

for name in ["A4", "D5", "E6", "E7", "E8"]:
    rs = build_root_system(name)
    table = freudenthal_table(rs, two_theta(rs))
    print(f"{name}: m(0) = {table[(0,) * rs.rank]:4d}, dim V(2 theta) = {table.dimension()}, "
          f"Weyl formula = {rs.weyl_dimension(two_theta(rs))}")

# %% [markdown]
# With m(0) in hand, the weight-zero part of the degree-two ideal always has
# dimension n(n+1)/2.  That is exactly the number of quadratic monomials
# h_i h_j, so the B-algebra is spanned by 1, h_1, ..., h_n.

# %%
for name in ["A4", "D5", "E6", "E7", "E8"]:
    rs = build_root_system(name)
    print(name, dim_i2_zero(rs), rs.rank * (rs.rank + 1) // 2)

# %% [markdown]
# The dominant part of the table, with Weyl orbit sizes:

# %%
rs = build_root_system("D4")
for row in freudenthal_table(rs, two_theta(rs)).to_json()["dominant"]:
    print(row)
