"""Finite-difference machinery: Fornberg stencils and Richardson extrapolation."""

from __future__ import annotations

import numpy as np

from .errors import DifferentiationUnstable

RICHARDSON_TOL = 1e-4


def fornberg_weights(x0, nodes, max_order):
    """Weights w[k, j] with f^(k)(x0) ~ sum_j w[k, j] f(nodes[j]), k = 0..max_order.

    Fornberg's recursive algorithm; nodes may be placed arbitrarily.
    """
    nodes = np.asarray(nodes, dtype=float)
    n = nodes.size
    if max_order >= n:
        raise ValueError("need more nodes than the derivative order")
    c = np.zeros((n, max_order + 1))
    c[0, 0] = 1.0
    c1 = 1.0
    c4 = nodes[0] - x0
    for i in range(1, n):
        mn = min(i, max_order)
        c2 = 1.0
        c5 = c4
        c4 = nodes[i] - x0
        for j in range(i):
            c3 = nodes[i] - nodes[j]
            c2 *= c3
            if j == i - 1:
                for k in range(mn, 0, -1):
                    c[i, k] = c1 * (k * c[i - 1, k - 1] - c5 * c[i - 1, k]) / c2
                c[i, 0] = -c1 * c5 * c[i - 1, 0] / c2
            for k in range(mn, 0, -1):
                c[j, k] = (c4 * c[j, k] - k * c[j, k - 1]) / c3
            c[j, 0] = c4 * c[j, 0] / c3
        c1 = c2
    return c.T


def central_difference(f, x, h):
    return (f(x + h) - f(x - h)) / (2.0 * h)


def richardson_derivative(f, x, h, levels=3):
    """First derivative by central differences refined with Richardson extrapolation.

    Uses steps h, h/2, ..., h/2^(levels-1). Returns (value, error estimate);
    the estimate is the change between the last two extrapolation levels.
    """
    table = [[central_difference(f, x, h / 2 ** i)] for i in range(levels)]
    for i in range(1, levels):
        for j in range(1, i + 1):
            fac = 4.0 ** j
            table[i].append((fac * table[i][j - 1] - table[i - 1][j - 1]) / (fac - 1.0))
    best = table[-1][-1]
    err = abs(best - table[-2][-1]) if levels > 1 else float("nan")
    return best, err


def checked_derivative(f, x, h, scale=1.0, tol=RICHARDSON_TOL):
    """``richardson_derivative`` that raises when the extrapolation disagrees."""
    val, err = richardson_derivative(f, x, h)
    if not np.isfinite(val) or err > tol * max(1.0, abs(scale)):
        raise DifferentiationUnstable(
            f"Richardson levels disagree by {err:.3g} at x={x:g}", err)
    return val, err
