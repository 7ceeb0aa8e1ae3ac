# %% [markdown]
# # Root systems and structure constants
#
# Every computation in the package starts from a simply laced root system.
# Roots are integer vectors over the simple roots (Bourbaki numbering), and
# the inner product comes from the Cartan matrix.

# %%
from adehikita.rootsystem import AsymmetryFunction, build_root_system

rs = build_root_system("E6")
print("rank", rs.rank, "dimension", rs.dim, "positive roots", len(rs.positive_roots))
print("highest root", rs.highest_root)
for row in rs.cartan:
    print(" ".join(f"{x:2d}" for x in row))

# %% [markdown]
# The sign of each structure constant comes from a bimultiplicative function
# on the root lattice, fixed by an orientation of the Dynkin diagram.  Its
# value on a pair of simple roots is -1 when the indices agree or the edge
# points from the first to the second.

# %%
eps = AsymmetryFunction.for_type("E6")
print(sorted(eps.orientation))
print([[eps.simple(i, j) for j in range(1, 7)] for i in range(1, 7)])

# %% [markdown]
# Any other orientation gives an isomorphic Lie algebra.  Changing it moves
# signs around but keeps the Jacobi identity, which the test suite checks
# exhaustively in small rank.

# %%
from adehikita.enveloping import chevalley_algebra

alg = chevalley_algebra("A3")
theta = alg.rs.highest_root
print("[X_theta, Y_theta] =", dict(alg.bracket(alg.X(theta), alg.Y(theta))))
