# %% [markdown]
# # Growing the cascade
#
# With `n` inputs the first layer has one node per input pair.  A selection
# block ranks them by running MSE, and whenever the output error stalls a new
# node is stacked on top: it reads the previous output and the next-best
# first-layer node.

# %%
import numpy as np

from neofuzzy import GrowthPolicy, build_model, fit_normalizer, gen_synthetic, lag_embed
from neofuzzy.data import to_arrays

frame = gen_synthetic(2500)
norm = fit_normalizer(frame, 2000)
X, y = to_arrays(lag_embed(norm.apply(frame.to_numpy()), 4))

model = build_model(4, h=4, q=2, alpha=0.95, growth=GrowthPolicy(warmup=100, patience=50))
print("input pairs:", model.pairs)

for k, (x, t) in enumerate(zip(X[:1996], y[:1996])):
    step = model.learn_step(x, t)
    if step.grew:
        print(f"sample {k}: grew to depth {model.depth}; ranking {model.ranking}")

# %%
for m, (a, b) in enumerate(model.wiring(), start=2):
    print(f"layer {m} reads {a} and {b}")
print("running MSE of first-layer nodes:", np.round([e.value for e in model.first_errors], 5))
print("running MSE of cascade layers:  ", np.round([e.value for e in model.cascade_errors], 5))
print("parameters:", model.parameter_count)
