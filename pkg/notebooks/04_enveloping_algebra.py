# %% [markdown]
# # Degree-two enveloping algebra and the projection kappa
#
# Elements of U^2 are dicts keyed by PBW-ordered monomials of length 0, 1
# or 2.  Lowering operators sort first, then the Cartan, then raising
# operators.  Products are put into normal order with one commutator.

# %%
from adehikita.enveloping import U2Element, chevalley_algebra

alg = chevalley_algebra("A2")
x1, y1 = alg.simple_X(1), alg.simple_Y(1)
print("X_1 Y_1 =", U2Element.product(alg, x1, y1).to_text())
print("Y_1 X_1 =", U2Element.product(alg, y1, x1).to_text())

# %% [markdown]
# The Casimir element commutes with everything.

# %%
C = U2Element(alg, alg.casimir())
print("C =", C.to_text())
print("ad X_1 C =", C.ad(x1).to_text(), "  ad Y_2 C =", C.ad(alg.simple_Y(2)).to_text())

# %% [markdown]
# kappa projects weight-zero elements onto polynomials in the h_i along
# n+ U + U n-.  Products X_a Y_a lie in that subspace and vanish, while
# Y_a X_a = X_a Y_a - h_a goes to -h_a (times hbar after homogenising).

# %%
print("kappa(X_1 Y_1) =", U2Element.product(alg, x1, y1).kappa())
print("kappa(Y_1 X_1) =", U2Element.product(alg, y1, x1).kappa())
print("kappa(C) =", C.kappa())
