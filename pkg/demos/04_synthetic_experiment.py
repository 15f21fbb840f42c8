# %% [markdown]
# # Synthetic benchmark, end to end
#
# 2500 points of the sine-driven nonlinear plant; the first 2000 points feed
# one online pass, the last 500 are forecast by the frozen model.  The same
# run is available from the shell:
#
#     neofuzzy generate --length 2500 --out synthetic.csv
#     neofuzzy train --out-model model.json --out-report report.json
#     neofuzzy predict --model model.json --data synthetic.csv --out predictions.csv

# %%
import tempfile
from pathlib import Path

from neofuzzy import CascadeModel, gen_synthetic
from neofuzzy.pipeline import RunConfig, evaluate, predict_rows, train

config = RunConfig(n=3, h=4, q=2, alpha=0.95)
series = gen_synthetic(config.synthetic_length)
model, report = train(config, series)
print(report.table())

# %% [markdown]
# Snapshots are plain JSON and reload bit-exactly.

# %%
with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "model.json"
    model.save(path)
    again = evaluate(CascadeModel.load(path), series, config.train_count)
print("reloaded test RMSE identical:", again.rmse_test == report.rmse_test)

# %%
rows = predict_rows(model, series)
print("index  actual   predicted  residual")
for index, actual, pred, resid, _ in rows[-5:]:
    print(f"{index:5d}  {actual:.4f}   {pred:.4f}     {resid:+.4f}")
