"""Error measures: RMSE for reports and a running exponentially weighted MSE."""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field, replace
from typing import List, Optional, Tuple

import numpy as np

from .errors import EmptyInput, InvalidArgument


def rmse(errors) -> float:
    errors = np.asarray(errors, dtype=float)
    if errors.size == 0:
        raise EmptyInput("rmse of an empty error list")
    return float(np.sqrt(np.mean(errors ** 2)))


@dataclass
class RunningError:
    """
    Exponentially weighted mean squared error.

    ``ew_mse`` holds the raw (zero-started) average; :attr:`value` divides
    out the start-up bias ``1 - decay**samples_seen``.
    """

    decay: float = 0.99
    ew_mse: float = 0.0
    samples_seen: int = 0

    def __post_init__(self):
        if not 0.0 < self.decay < 1.0:
            raise InvalidArgument(f"decay must lie in (0, 1), got {self.decay}")

    @property
    def value(self) -> float:
        if self.samples_seen == 0:
            return 0.0
        return self.ew_mse / (1.0 - self.decay ** self.samples_seen)

    def update(self, residual: float) -> "RunningError":
        self.ew_mse = self.decay * self.ew_mse + (1.0 - self.decay) * residual * residual
        self.samples_seen += 1
        return self

    def reset(self):
        self.ew_mse = 0.0
        self.samples_seen = 0


def ew_update(tracker: RunningError, residual: float) -> RunningError:
    """Pure variant of :meth:`RunningError.update`."""
    return replace(tracker).update(residual)


@dataclass
class EvalReport:
    """Train/test accuracy of one run.

    ``rmse_train`` and ``rmse_test`` come from the final, frozen model on the
    normalised scale.  ``rmse_train_online`` is the one-step-ahead error seen
    while streaming the training pass.
    """

    rmse_train: float
    rmse_test: float
    n_train: int
    n_test: int
    parameter_count: int
    rmse_train_online: Optional[float] = None
    rmse_train_raw: Optional[float] = None
    rmse_test_raw: Optional[float] = None
    depth: int = 0
    growth_log: List[Tuple[int, int]] = field(default_factory=list)
    wall_time: float = 0.0

    def to_dict(self, include_time: bool = True) -> dict:
        d = asdict(self)
        d["growth_log"] = [list(g) for g in self.growth_log]
        if not include_time:
            d.pop("wall_time")
        return d

    def to_json(self, include_time: bool = True) -> str:
        return json.dumps(self.to_dict(include_time), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> "EvalReport":
        d = dict(d)
        d["growth_log"] = [tuple(g) for g in d.get("growth_log", [])]
        return cls(**d)

    def table(self) -> str:
        rows = [("", "RMSE", "raw RMSE", "samples"),
                ("train", _fmt(self.rmse_train), _fmt(self.rmse_train_raw), str(self.n_train)),
                ("test", _fmt(self.rmse_test), _fmt(self.rmse_test_raw), str(self.n_test))]
        widths = [max(len(r[i]) for r in rows) for i in range(4)]
        lines = ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in rows]
        if self.rmse_train_online is not None:
            lines.append(f"online train RMSE: {_fmt(self.rmse_train_online)}")
        lines.append(f"parameters: {self.parameter_count}  depth: {self.depth}  "
                     f"time: {self.wall_time:.4f} s")
        if self.growth_log:
            lines.append("growth: " + ", ".join(f"k={k}->{d}" for k, d in self.growth_log))
        return "\n".join(lines)


def _fmt(v):
    if v is None or (isinstance(v, float) and math.isnan(v)):
        return "-"
    return f"{v:.4f}"
