# %% [markdown]
# # Learning a single neo-fuzzy node
#
# A node computes `f_A(x_a) + f_B(x_b)`, each term a weighted sum of
# membership degrees.  The weights follow a scalar-gain recursion with a
# forgetting factor `alpha`.  Small `alpha` means large steps and fast
# tracking (`alpha = 0` projects onto each new sample exactly); `alpha = 1`
# averages over the whole history.

# %%
import numpy as np

from neofuzzy import NeoFuzzyNode, build_basis, rmse

rng = np.random.default_rng(0)
basis = build_basis(2, 6)


def target(a, b):
    return np.sin(3 * a) + 0.5 * b ** 2


X = rng.uniform(0, 1, (4000, 2))
for alpha in (0.0, 0.9, 0.99, 1.0):
    node = NeoFuzzyNode(basis, alpha)
    errors = [target(a, b) - node.update(a, b, target(a, b)) for a, b in X]
    windows = [rmse(errors[k:k + 500]) for k in range(0, 4000, 1000)]
    print(f"alpha={alpha:<5} RMSE per 1000-sample block: " + "  ".join(f"{w:.4f}" for w in windows))

# %% [markdown]
# With `alpha = 1` the gain keeps growing, so every step shrinks and the
# error falls slowly.  Forgetting keeps the step size away from zero.

# %%
node = NeoFuzzyNode(basis, 0.9)
for a, b in X:
    node.update(a, b, target(a, b))
grid = np.linspace(0, 1, 5)
print("learned vs true on a grid (x_b = 0.5):")
for a in grid:
    print(f"  x_a={a:.2f}  {node.forward(a, 0.5):+.4f}  {target(a, 0.5):+.4f}")
