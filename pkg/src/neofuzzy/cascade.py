"""
Evolving cascade of neo-fuzzy nodes
===================================

The first layer holds one two-input node per unordered pair of inputs.  All
of them learn to predict the same target, and a selection block ranks them
by running MSE.  When the output accuracy stalls, the model grows by one
node: the first extra layer reads the two best first-layer outputs, and every
later layer ``m`` reads the previous layer's output together with the
``m``-th ranked first-layer output.  Once the first extra layer exists the
ranking is frozen so the wiring of trained nodes never changes.

Input indices, first-layer node indices and ranking positions are 0-based.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import asdict, dataclass, field
from itertools import combinations
from math import comb
from typing import List, Optional, Tuple

import numpy as np

from .errors import (CapacityExhausted, DimensionMismatch, InvalidArgument,
                     NotWarmedUp, SnapshotError)
from .membership import MembershipBasis, build_basis
from .metrics import RunningError
from .neuron import NeoFuzzyNode

SNAPSHOT_FORMAT = "neofuzzy-cascade"
SNAPSHOT_VERSION = 1


@dataclass
class GrowthPolicy:
    """
    When to add a cascade layer.

    A layer is added once the output tracker has seen ``warmup`` samples, its
    MSE is still above ``target_mse``, and it improved by less than the
    fraction ``min_rel_improvement`` over the last ``patience`` steps.
    ``max_layers=None`` means "as many as the first layer can feed".
    """

    target_mse: float = 1e-4
    warmup: int = 100
    patience: int = 50
    min_rel_improvement: float = 0.01
    max_layers: Optional[int] = None

    def validate(self, input_dim: int):
        if not self.target_mse > 0:
            raise InvalidArgument("target_mse must be positive")
        if self.warmup < 1 or self.patience < 1:
            raise InvalidArgument("warmup and patience must be >= 1")
        if not 0.0 <= self.min_rel_improvement < 1.0:
            raise InvalidArgument("min_rel_improvement must lie in [0, 1)")
        bound = comb(input_dim, 2) - 1
        if self.max_layers is not None and not 0 <= self.max_layers <= bound:
            raise InvalidArgument(f"max_layers must lie in [0, {bound}] for {input_dim} inputs")


@dataclass
class StepReport:
    prediction: float
    node_errors: List[float]
    grew: bool = False


@dataclass
class CascadeModel:
    """
    Online cascade forecaster over ``input_dim`` normalised inputs.

    Parameters
    ----------
    input_dim: int
        number of inputs ``n`` (at least 2)
    h, q: int
        memberships per synapse and spline order of every node
    alpha: float
        forgetting factor shared by all nodes
    growth: GrowthPolicy
    decay: float
        forgetting of the running-MSE trackers
    """

    input_dim: int
    h: int = 4
    q: int = 2
    alpha: float = 1.0
    growth: GrowthPolicy = field(default_factory=GrowthPolicy)
    decay: float = 0.99
    normalizer: Optional[Tuple[float, float]] = None

    def __post_init__(self):
        if self.input_dim < 2:
            raise InvalidArgument(f"need at least 2 inputs, got {self.input_dim}")
        self.growth.validate(self.input_dim)
        self.basis = build_basis(self.q, self.h)
        self.pairs = list(combinations(range(self.input_dim), 2))
        self.first_layer = [NeoFuzzyNode(self.basis, self.alpha) for _ in self.pairs]
        self.ranking = list(range(len(self.pairs)))
        self.frozen = False
        self.cascade_layers: List[NeoFuzzyNode] = []
        self.first_errors = [RunningError(self.decay) for _ in self.pairs]
        self.cascade_errors: List[RunningError] = []
        self.output_error = RunningError(self.decay)
        self._history = deque(maxlen=self.growth.patience + 1)
        self.samples_seen = 0
        self.growth_log: List[Tuple[int, int]] = []

    @property
    def depth(self) -> int:
        return len(self.cascade_layers)

    @property
    def capacity(self) -> int:
        bound = len(self.pairs) - 1
        if self.growth.max_layers is not None:
            bound = min(bound, self.growth.max_layers)
        return bound

    @property
    def parameter_count(self) -> int:
        return 2 * self.h * (len(self.pairs) + self.depth)

    def wiring(self):
        """Declared inputs of every cascade layer as ``(source_a, source_b)``.

        A source is ``("first", k)`` for first-layer node ``k`` or
        ``("cascade", m)`` for cascade layer ``m``.
        """
        out = []
        for m in range(self.depth):
            a = ("first", self.ranking[0]) if m == 0 else ("cascade", m - 1)
            out.append((a, ("first", self.ranking[m + 1])))
        return out

    def _check(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float).ravel()
        if x.size != self.input_dim:
            raise DimensionMismatch(f"expected {self.input_dim} inputs, got {x.size}")
        return np.clip(x, 0.0, 1.0)

    def layer_outputs(self, x):
        """Outputs of the first layer (node order) and of each cascade layer."""
        x = self._check(x)
        first = [node.forward(x[i], x[j]) for node, (i, j) in zip(self.first_layer, self.pairs)]
        prev = first[self.ranking[0]]
        chain = []
        for m, node in enumerate(self.cascade_layers):
            prev = node.forward(_clip(prev), _clip(first[self.ranking[m + 1]]))
            chain.append(prev)
        return first, chain

    def forward(self, x) -> float:
        first, chain = self.layer_outputs(x)
        return chain[-1] if chain else first[self.ranking[0]]

    def predict(self, X) -> np.ndarray:
        return np.array([self.forward(x) for x in np.atleast_2d(X)])

    def rank_nodes(self) -> List[int]:
        """Sort first-layer nodes by ascending running MSE (ties by index)."""
        if self.frozen:
            return list(self.ranking)
        warm = self.growth.warmup
        if any(t.samples_seen < warm for t in self.first_errors):
            raise NotWarmedUp(f"selection needs {warm} samples per node")
        self.ranking = sorted(range(len(self.pairs)),
                              key=lambda k: (self.first_errors[k].value, k))
        return list(self.ranking)

    def grow(self) -> "CascadeModel":
        if self.depth >= self.capacity:
            raise CapacityExhausted(f"cascade already has {self.depth} layers")
        if not self.frozen:
            try:
                self.rank_nodes()
            except NotWarmedUp:
                pass
            self.frozen = True
        self.cascade_layers.append(NeoFuzzyNode(self.basis, self.alpha))
        self.cascade_errors.append(RunningError(self.decay))
        self.output_error.reset()
        self._history.clear()
        return self

    def learn_step(self, x, target: float) -> StepReport:
        """
        Predict ``target`` from ``x``, then update every node.

        Cascade nodes are trained on the pre-update outputs of the layers
        below, so a sample sees one consistent forward pass.
        """
        x = self._check(x)
        target = float(target)
        first = [node.update(x[i], x[j], target)
                 for node, (i, j) in zip(self.first_layer, self.pairs)]
        prediction = first[self.ranking[0]]
        chain = []
        for m, node in enumerate(self.cascade_layers):
            prediction = node.update(_clip(prediction), _clip(first[self.ranking[m + 1]]), target)
            chain.append(prediction)

        errors = [target - y for y in first + chain]
        for tracker, e in zip(self.first_errors + self.cascade_errors, errors):
            tracker.update(e)
        self.output_error.update(target - prediction)
        self.samples_seen += 1

        if not self.frozen and self.first_errors[0].samples_seen >= self.growth.warmup:
            self.rank_nodes()
        grew = self._should_grow()
        if grew:
            self.grow()
            self.growth_log.append((self.samples_seen, self.depth))
        return StepReport(prediction, errors, grew)

    def _should_grow(self) -> bool:
        mse = self.output_error.value
        self._history.append(mse)
        policy = self.growth
        if self.depth >= self.capacity or self.output_error.samples_seen < policy.warmup:
            return False
        if mse <= policy.target_mse or len(self._history) <= policy.patience:
            return False
        past = self._history[0]
        improvement = (past - mse) / past if past > 0 else 0.0
        return improvement < policy.min_rel_improvement

    def fit(self, X, y) -> np.ndarray:
        """Stream ``(X, y)`` once; returns the one-step-ahead predictions."""
        return np.array([self.learn_step(x, t).prediction for x, t in zip(X, y)])

    # -- persistence ---------------------------------------------------------

    def to_dict(self) -> dict:
        def node(n):
            return {"weights": n.weights.tolist(), "gain": n.gain}

        def tracker(t):
            return {"ew_mse": t.ew_mse, "samples_seen": t.samples_seen}

        return {
            "format": SNAPSHOT_FORMAT,
            "version": SNAPSHOT_VERSION,
            "input_dim": self.input_dim,
            "h": self.h,
            "q": self.q,
            "alpha": self.alpha,
            "decay": self.decay,
            "growth": asdict(self.growth),
            "knots": list(self.basis.knots),
            "pairs": [list(p) for p in self.pairs],
            "ranking": list(self.ranking),
            "frozen": self.frozen,
            "first_layer": [node(n) for n in self.first_layer],
            "cascade_layers": [node(n) for n in self.cascade_layers],
            "first_errors": [tracker(t) for t in self.first_errors],
            "cascade_errors": [tracker(t) for t in self.cascade_errors],
            "output_error": tracker(self.output_error),
            "history": list(self._history),
            "samples_seen": self.samples_seen,
            "growth_log": [list(g) for g in self.growth_log],
            "normalizer": None if self.normalizer is None else list(self.normalizer),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CascadeModel":
        if not isinstance(d, dict) or d.get("format") != SNAPSHOT_FORMAT:
            raise SnapshotError("not a cascade model snapshot")
        if d.get("version") != SNAPSHOT_VERSION:
            raise SnapshotError(f"unsupported snapshot version {d.get('version')!r}")
        try:
            norm = d.get("normalizer")
            model = cls(d["input_dim"], d["h"], d["q"], d["alpha"],
                        GrowthPolicy(**d["growth"]), d["decay"],
                        None if norm is None else tuple(norm))
            basis = MembershipBasis(d["q"], d["h"], tuple(d["knots"]))
            if [list(p) for p in model.pairs] != d["pairs"]:
                raise SnapshotError("input pairs do not match input_dim")
            model.basis = basis
            model.first_layer = [NeoFuzzyNode(basis, model.alpha, n["weights"], n["gain"])
                                 for n in d["first_layer"]]
            model.cascade_layers = [NeoFuzzyNode(basis, model.alpha, n["weights"], n["gain"])
                                    for n in d["cascade_layers"]]
            model.ranking = [int(k) for k in d["ranking"]]
            model.frozen = bool(d["frozen"])
            model.first_errors = [RunningError(model.decay, t["ew_mse"], t["samples_seen"])
                                  for t in d["first_errors"]]
            model.cascade_errors = [RunningError(model.decay, t["ew_mse"], t["samples_seen"])
                                    for t in d["cascade_errors"]]
            t = d["output_error"]
            model.output_error = RunningError(model.decay, t["ew_mse"], t["samples_seen"])
            model._history.extend(d["history"])
            model.samples_seen = d["samples_seen"]
            model.growth_log = [tuple(g) for g in d["growth_log"]]
        except (KeyError, TypeError) as exc:
            raise SnapshotError(f"malformed snapshot: {exc}") from exc
        if (len(model.first_layer) != len(model.pairs)
                or sorted(model.ranking) != list(range(len(model.pairs)))
                or len(model.cascade_errors) != model.depth
                or model.depth > len(model.pairs) - 1):
            raise SnapshotError("inconsistent snapshot structure")
        return model

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "CascadeModel":
        try:
            d = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SnapshotError(f"snapshot is not valid JSON: {exc}") from exc
        return cls.from_dict(d)

    def save(self, path):
        with open(path, "w", encoding="utf-8") as f:
            f.write(self.to_json())

    @classmethod
    def load(cls, path) -> "CascadeModel":
        with open(path, encoding="utf-8") as f:
            return cls.from_json(f.read())


def build_model(input_dim: int, h: int = 4, q: int = 2, alpha: float = 1.0,
                growth: Optional[GrowthPolicy] = None, decay: float = 0.99) -> CascadeModel:
    return CascadeModel(input_dim, h, q, alpha, growth or GrowthPolicy(), decay)


def _clip(v: float) -> float:
    return min(max(v, 0.0), 1.0)
