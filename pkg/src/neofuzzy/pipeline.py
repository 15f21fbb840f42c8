"""Run configuration and the train / evaluate / predict workflow."""
from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, fields
from math import comb
from pathlib import Path
from typing import Optional, Union

import numpy as np

from .cascade import CascadeModel, GrowthPolicy
from .data import (Normalizer, SeriesFrame, fit_normalizer, gen_synthetic,
                   lag_embed, load_csv, to_arrays)
from .errors import InvalidArgument
from .metrics import EvalReport, rmse


@dataclass
class RunConfig:
    """
    Experiment knobs.

    ``train_count`` counts leading *series points*: the scaler is fitted on
    them and every sample whose target lies among them is a training sample,
    so with ``n`` lags there are ``train_count - n`` training samples and the
    test samples predict exactly the remaining points.
    """

    n: int = 3
    h: int = 4
    q: int = 2
    alpha: float = 0.95
    target_mse: float = 1e-4
    warmup: int = 100
    patience: int = 50
    min_rel_improvement: float = 0.01
    max_layers: Optional[int] = None
    decay: float = 0.99
    seed: int = 0
    synthetic_length: int = 2500
    csv_path: Optional[str] = None
    csv_column: Union[int, str] = 0
    train_count: int = 2000

    @classmethod
    def from_dict(cls, d: dict) -> "RunConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(d) - known
        if unknown:
            raise InvalidArgument(f"unknown config keys: {', '.join(sorted(unknown))}")
        return cls(**d)

    @classmethod
    def from_file(cls, path) -> "RunConfig":
        with open(path, encoding="utf-8") as f:
            try:
                d = json.load(f)
            except json.JSONDecodeError as exc:
                raise InvalidArgument(f"{path}: invalid JSON config: {exc}") from exc
        if not isinstance(d, dict):
            raise InvalidArgument(f"{path}: config must be a JSON object")
        cfg = cls.from_dict(d)
        if cfg.csv_path is not None and not Path(cfg.csv_path).is_absolute():
            cfg.csv_path = str(Path(path).parent / cfg.csv_path)
        return cfg

    def growth_policy(self) -> GrowthPolicy:
        return GrowthPolicy(self.target_mse, self.warmup, self.patience,
                            self.min_rel_improvement, self.max_layers)

    def validate(self):
        for name in ("n", "h", "q", "warmup", "patience", "seed", "synthetic_length",
                     "train_count"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, int):
                raise InvalidArgument(f"{name} must be an integer, got {v!r}")
        for name in ("alpha", "target_mse", "min_rel_improvement", "decay"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise InvalidArgument(f"{name} must be a number, got {v!r}")
        if self.n < 2:
            raise InvalidArgument("n must be >= 2")
        if self.q < 1 or self.h < self.q:
            raise InvalidArgument("need q >= 1 and h >= q")
        if not 0.0 <= self.alpha <= 1.0:
            raise InvalidArgument("alpha must lie in [0, 1]")
        if not 0.0 < self.decay < 1.0:
            raise InvalidArgument("decay must lie in (0, 1)")
        self.growth_policy().validate(self.n)
        if self.train_count < max(2, self.n + 1):
            raise InvalidArgument(f"train_count must be >= {max(2, self.n + 1)}")
        if self.csv_path is None and self.train_count >= self.synthetic_length:
            raise InvalidArgument("train_count must be smaller than the series length")
        if not isinstance(self.csv_column, (int, str)) or isinstance(self.csv_column, bool):
            raise InvalidArgument("csv_column must be an index or a column name")
        return self

    def to_dict(self) -> dict:
        return asdict(self)


def load_series(config: RunConfig) -> SeriesFrame:
    if config.csv_path is None:
        return gen_synthetic(config.synthetic_length)
    return load_csv(config.csv_path, config.csv_column)


def prepare(series: SeriesFrame, lags: int, train_count: int,
            normalizer: Optional[Normalizer] = None):
    """Scale ``series`` and cut it into train and test arrays.

    Returns ``(normalizer, (X_train, y_train), (X_test, y_test))``.
    """
    if not lags < train_count < len(series):
        raise InvalidArgument(
            f"train_count must lie in ({lags}, {len(series)}), got {train_count}")
    if normalizer is None:
        normalizer = fit_normalizer(series, train_count)
    samples = lag_embed(normalizer.apply(series.to_numpy()), lags)
    cut = train_count - lags
    return normalizer, to_arrays(samples[:cut]), to_arrays(samples[cut:])


def train(config: RunConfig, series: Optional[SeriesFrame] = None):
    """One online pass over the training samples, then a frozen evaluation.

    Returns ``(model, report)``.
    """
    config.validate()
    if series is None:
        series = load_series(config)
    norm, (X_tr, y_tr), (X_te, y_te) = prepare(series, config.n, config.train_count)
    model = CascadeModel(config.n, config.h, config.q, config.alpha,
                         config.growth_policy(), config.decay, (norm.lo, norm.hi))
    start = time.perf_counter()
    online = model.fit(X_tr, y_tr)
    elapsed = time.perf_counter() - start
    report = _report(model, norm, series, config.n, (X_tr, y_tr), (X_te, y_te))
    report.rmse_train_online = rmse(online - y_tr)
    report.wall_time = elapsed
    return model, report


def evaluate(model: CascadeModel, series: SeriesFrame, train_count: int) -> EvalReport:
    """Frozen-model accuracy on ``series`` split at ``train_count`` points."""
    norm = model_normalizer(model)
    start = time.perf_counter()
    _, train_part, test_part = prepare(series, model.input_dim, train_count, norm)
    report = _report(model, norm, series, model.input_dim, train_part, test_part)
    report.wall_time = time.perf_counter() - start
    return report


def model_normalizer(model: CascadeModel) -> Normalizer:
    if model.normalizer is None:
        return Normalizer(0.0, 1.0)
    return Normalizer(*model.normalizer)


def _report(model, norm, series, lags, train_part, test_part) -> EvalReport:
    raw = series.to_numpy()
    out = []
    offset = lags
    for X, y in (train_part, test_part):
        pred = model.predict(X) if len(X) else np.empty(0)
        raw_pred = norm.invert(pred)
        raw_true = raw[offset:offset + len(y)]
        offset += len(y)
        out.append((rmse(pred - y), rmse(raw_pred - raw_true), len(y)))
    (tr, tr_raw, n_tr), (te, te_raw, n_te) = out
    return EvalReport(rmse_train=tr, rmse_test=te, n_train=n_tr, n_test=n_te,
                      parameter_count=model.parameter_count,
                      rmse_train_raw=tr_raw, rmse_test_raw=te_raw, depth=model.depth,
                      growth_log=list(model.growth_log))


def predict_rows(model: CascadeModel, series: SeriesFrame):
    """Rows ``(index, actual, predicted, residual, predicted_raw)`` for every
    lag sample of ``series``; values on the normalised scale except the last."""
    if len(series) == 0:
        return []
    norm = model_normalizer(model)
    samples = lag_embed(norm.apply(series.to_numpy()), model.input_dim)
    rows = []
    for s in samples:
        p = model.forward(s.x)
        rows.append((s.index, s.y, p, s.y - p, norm.invert(p)))
    return rows


def parameter_count(n: int, h: int, depth: int) -> int:
    return 2 * h * (comb(n, 2) + depth)
