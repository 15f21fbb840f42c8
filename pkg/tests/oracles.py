"""Independent reference implementations used only by the tests."""
import math


def cox_de_boor(knots, order, i, x):
    """Textbook recursion for the i-th B-spline of the given order.

    0/0 terms count as zero; the half-open top is handled by the caller.
    """
    if order == 1:
        return 1.0 if knots[i] <= x < knots[i + 1] else 0.0
    total = 0.0
    d1 = knots[i + order - 1] - knots[i]
    if d1 > 0:
        total += (x - knots[i]) / d1 * cox_de_boor(knots, order - 1, i, x)
    d2 = knots[i + order] - knots[i + 1]
    if d2 > 0:
        total += (knots[i + order] - x) / d2 * cox_de_boor(knots, order - 1, i + 1, x)
    return total


def naive_basis(knots, order, count, x):
    # evaluating exactly at the right end uses the left limit
    if x >= knots[-1]:
        x = math.nextafter(knots[-1], -math.inf)
    return [cox_de_boor(knots, order, i, x) for i in range(count)]


def plant(length, m=10):
    """Scripted recurrence, 1-based time like the textbook statement."""
    y = {}
    for t in range(1, length + 1):
        if t <= m:
            y[t] = 0.0
            continue
        prev = [y[t - i] for i in range(1, m + 1)]
        u = math.sin(2 * math.pi * (t - 1) / 20)
        y[t] = sum(prev) / (1 + sum(p ** 2 for p in prev)) + u
    return [y[t] for t in range(1, length + 1)]
