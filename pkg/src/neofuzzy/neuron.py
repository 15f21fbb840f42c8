"""
Neo-fuzzy neuron
================

Two-input node made of two nonlinear synapses.  Each synapse is a zero-order
Takagi-Sugeno system: a bank of B-spline memberships whose degrees weight a
vector of scalar consequents.  The node output is the sum of the two synapse
outputs and is linear in the weights, so it can be trained online with a
scalar-gain recursive rule

    r(k) = alpha * r(k-1) + phi' phi
    w(k) = w(k-1) + (y - w(k-1)' phi) / r(k) * phi

``alpha = 0`` turns this into the normalised (Kaczmarz / Widrow-Hoff)
projection step; ``alpha = 1`` accumulates the gain forever, which filters
noise on stationary data.
"""
from __future__ import annotations

import math

import numpy as np

from .errors import DegenerateRegressor, InvalidArgument
from .membership import MembershipBasis, build_basis, eval_basis


class NeoFuzzyNode:
    """
    Two-input neo-fuzzy neuron.

    Parameters
    ----------
    basis: MembershipBasis
        membership bank shared by both synapses
    alpha: float
        forgetting factor of the gain accumulator, in [0, 1]
    weights: array_like, optional
        initial consequents ``(w_1A..w_hA, w_1B..w_hB)``; zeros by default
    gain: float, optional
        initial value of the gain accumulator ``r`` (default 0)
    """

    def __init__(self, basis: MembershipBasis, alpha: float = 1.0,
                 weights=None, gain: float = 0.0):
        alpha = float(alpha)
        if not 0.0 <= alpha <= 1.0:
            raise InvalidArgument(f"forgetting factor must lie in [0, 1], got {alpha}")
        gain = float(gain)
        if not (gain >= 0.0 and math.isfinite(gain)):
            raise InvalidArgument(f"gain must be finite and non-negative, got {gain}")
        self.basis = basis
        self.alpha = alpha
        self.gain = gain
        size = 2 * basis.count
        if weights is None:
            self.weights = np.zeros(size)
        else:
            self.weights = np.array(weights, dtype=float)
            if self.weights.shape != (size,):
                raise InvalidArgument(f"expected {size} weights, got shape {self.weights.shape}")

    # the two synapses share one bank; kept as two names to mirror the wiring
    @property
    def basis_a(self) -> MembershipBasis:
        return self.basis

    @property
    def basis_b(self) -> MembershipBasis:
        return self.basis

    @property
    def n_params(self) -> int:
        return self.weights.size

    def regressor(self, x_a: float, x_b: float) -> np.ndarray:
        """Stacked membership vector ``(mu_A(x_a), mu_B(x_b))``."""
        return np.concatenate((eval_basis(self.basis, x_a), eval_basis(self.basis, x_b)))

    def synapses(self, x_a: float, x_b: float):
        """Outputs of the two synapses separately."""
        h = self.basis.count
        phi = self.regressor(x_a, x_b)
        return float(self.weights[:h] @ phi[:h]), float(self.weights[h:] @ phi[h:])

    def forward(self, x_a: float, x_b: float) -> float:
        return float(self.weights @ self.regressor(x_a, x_b))

    def update(self, x_a: float, x_b: float, target: float) -> float:
        """
        One learning step on ``(x_a, x_b) -> target``.

        Returns
        -------
        float
            the prediction made *before* the weights moved
        """
        prediction, self.weights, self.gain = gain_step(
            self.weights, self.gain, self.regressor(x_a, x_b), target, self.alpha)
        return prediction

    def copy(self) -> "NeoFuzzyNode":
        return NeoFuzzyNode(self.basis, self.alpha, self.weights.copy(), self.gain)

    def __repr__(self):
        return (f"NeoFuzzyNode(h={self.basis.count}, q={self.basis.order}, "
                f"alpha={self.alpha}, gain={self.gain:.4g})")


def gain_step(weights, gain, phi, target, alpha):
    """
    Scalar-gain recursive update for any linear-in-weights model.

    Parameters
    ----------
    weights: ndarray
        current weights ``w(k-1)``
    gain: float
        accumulator ``r(k-1)``
    phi: ndarray
        regressor ``phi(k)``
    target: float
    alpha: float
        forgetting factor

    Returns
    -------
    (prediction, weights, gain)
        prior prediction ``w(k-1)' phi`` and the new ``w(k)``, ``r(k)``
    """
    phi = np.asarray(phi, dtype=float)
    weights = np.asarray(weights, dtype=float)
    prediction = float(weights @ phi)
    innovation = float(target) - prediction
    gain = alpha * gain + float(phi @ phi)
    if gain > 0.0:
        weights = weights + (innovation / gain) * phi
    elif innovation != 0.0:
        raise DegenerateRegressor("gain accumulator is zero")
    return prediction, weights, gain


def new_node(basis, alpha: float = 1.0) -> NeoFuzzyNode:
    """Zero-initialised node.

    ``basis`` is either a :class:`MembershipBasis` or an ``(h, q)`` template
    expanded onto ``[0, 1]``.
    """
    if not isinstance(basis, MembershipBasis):
        h, q = basis
        basis = build_basis(q, h)
    return NeoFuzzyNode(basis, alpha)
