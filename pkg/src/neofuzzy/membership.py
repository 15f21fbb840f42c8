"""
B-spline membership functions
=============================

A bank of ``h`` B-spline membership functions of order ``q`` (degree
``q - 1``) defined on a clamped knot vector.  Because the knot vector is
clamped, the functions form a partition of unity over the whole domain, so
the synapse built on top of them needs no normalisation layer.

Order 1 gives indicator bins, order 2 the usual triangular memberships and
order 4 cubic splines.
"""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgument


@dataclass(frozen=True)
class MembershipBasis:
    """
    Immutable B-spline basis.

    Parameters
    ----------
    order: int
        spline order ``q`` (``q = 2`` is triangular)
    count: int
        number of membership functions ``h``
    knots: tuple of float
        clamped, non-decreasing knot vector of length ``h + q``
    """

    order: int
    count: int
    knots: tuple

    def __post_init__(self):
        q, h = self.order, self.count
        if q < 1:
            raise InvalidArgument(f"order must be >= 1, got {q}")
        if h < q:
            raise InvalidArgument(f"count ({h}) must be >= order ({q})")
        knots = tuple(float(c) for c in self.knots)
        object.__setattr__(self, "knots", knots)
        if len(knots) != h + q:
            raise InvalidArgument(f"expected {h + q} knots, got {len(knots)}")
        if any(b < a for a, b in zip(knots, knots[1:])):
            raise InvalidArgument("knots must be non-decreasing")
        lo, hi = knots[0], knots[-1]
        if not lo < hi:
            raise InvalidArgument("degenerate knot vector")
        if any(c != lo for c in knots[:q]) or any(c != hi for c in knots[-q:]):
            raise InvalidArgument("knot vector must be clamped at both ends")

    @property
    def lo(self) -> float:
        return self.knots[0]

    @property
    def hi(self) -> float:
        return self.knots[-1]

    def span(self, x: float) -> int:
        """Index ``i`` of the knot span ``[c_i, c_{i+1})`` holding ``x``.

        The top of the domain is folded into the last non-empty span.
        """
        i = bisect_right(self.knots, x) - 1
        return min(max(i, self.order - 1), self.count - 1)

    def __call__(self, x: float) -> np.ndarray:
        return eval_basis(self, x)


def build_basis(order: int, count: int, domain_lo: float = 0.0,
                domain_hi: float = 1.0) -> MembershipBasis:
    """Clamped uniform basis: ``order`` repeated knots at each boundary and
    ``count - order`` equally spaced interior knots."""
    if order < 1:
        raise InvalidArgument(f"order must be >= 1, got {order}")
    if count < order:
        raise InvalidArgument(f"count ({count}) must be >= order ({order})")
    if not domain_lo < domain_hi:
        raise InvalidArgument(f"degenerate domain [{domain_lo}, {domain_hi}]")
    n_spans = count - order + 1
    width = domain_hi - domain_lo
    interior = [domain_lo + width * j / n_spans for j in range(1, n_spans)]
    knots = [domain_lo] * order + interior + [domain_hi] * order
    return MembershipBasis(order, count, tuple(knots))


def eval_basis(basis: MembershipBasis, x: float) -> np.ndarray:
    """
    Evaluate all ``h`` membership degrees at ``x``.

    Only the ``q`` functions supported on the span containing ``x`` are
    computed, with the triangular form of the Cox-de Boor recursion.  The
    caller is responsible for clipping ``x`` into the basis domain.

    Returns
    -------
    ndarray of shape (h,)
    """
    mu = np.zeros(basis.count)
    i, values = _local(basis, float(x))
    mu[i - basis.order + 1:i + 1] = values
    return mu


def _local(basis: MembershipBasis, x: float):
    """Return the span index and the ``q`` non-zero values on it."""
    U = basis.knots
    p = basis.order - 1
    i = basis.span(x)
    N = [1.0] + [0.0] * p
    left = [0.0] * (p + 1)
    right = [0.0] * (p + 1)
    for j in range(1, p + 1):
        left[j] = x - U[i + 1 - j]
        right[j] = U[i + j] - x
        saved = 0.0
        for r in range(j):
            # span is non-empty, so the denominator is strictly positive
            temp = N[r] / (right[r + 1] + left[j - r])
            N[r] = saved + right[r + 1] * temp
            saved = left[j - r] * temp
        N[j] = saved
    return i, N
