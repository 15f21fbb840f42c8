# %% [markdown]
# # B-spline membership functions
#
# Every synapse of a neo-fuzzy node fuzzifies its input with a bank of
# B-splines.  Order 2 gives the familiar triangles, order 4 cubic bumps.
# Whatever the order, the degrees add up to one everywhere on the domain.

# %%
import numpy as np

from neofuzzy import build_basis, eval_basis

xs = np.linspace(0, 1, 11)
for q in (1, 2, 4):
    basis = build_basis(q, 5)
    print(f"order {q}, knots {np.round(basis.knots, 3)}")
    table = np.array([eval_basis(basis, x) for x in xs])
    for x, row in zip(xs, table):
        print(f"  x={x:.1f}  " + " ".join(f"{v:5.3f}" for v in row) + f"   sum={row.sum():.3f}")

# %% [markdown]
# Only `q` functions are active at any point, so a node touches just `2q`
# of its `2h` weights per sample.

# %%
basis = build_basis(3, 8)
print("active functions at x=0.37:", np.flatnonzero(eval_basis(basis, 0.37)))
