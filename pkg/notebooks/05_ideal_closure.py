# %% [markdown]
# # The degree-two part of the Joseph ideal and its B-algebra
#
# The generators are computed rather than copied.  Each non-Casimir
# generator is a lowest-weight vector of U^2.  The last generator is the
# Casimir shifted by its prescribed eigenvalue, which for type A is a
# polynomial in the family parameter z.

# %%
from adehikita.joseph import (b_algebra, close_under_ad, extract_relations,
                              joseph_generators)

gens = joseph_generators("A3")
for g in gens.generators:
    print(g.name, "weight", g.weight)
    print("   ", g.element.to_text())

# %% [markdown]
# Closing under the adjoint action gives the whole degree-two piece of the
# ideal.  Its weight-zero part has dimension n(n+1)/2, and projecting it with
# kappa yields one relation per quadratic monomial h_i h_j.

# %%
sub = close_under_ad(gens)
print("closure dimension", sub.dimension, " weight zero", sub.weight_dimension((0, 0, 0)))
for (i, j), rel in sorted(extract_relations(sub).items()):
    print(f"h{i}*h{j}:", rel)

# %% [markdown]
# E8 is just as quick when only weights at or below zero are built from the
# lowest-weight generator.

# %%
import time

start = time.perf_counter()
b, _ = b_algebra("E8", allow_heavy=True)
print(f"E8 relations in {time.perf_counter() - start:.1f}s")
print("h4*h4 =", b.table.entry(4, 4).to_text("h"))
