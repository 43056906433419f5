"""Chebyshev interpolation helpers on the unit interval [0, 1].

All series use the standard Chebyshev basis after the affine map
t = 2x - 1; derivatives therefore pick up a factor 2 per order.
"""

from __future__ import annotations

import numpy as np
from numpy.polynomial import chebyshev as _cheb


def lobatto_nodes(count: int) -> np.ndarray:
    """Chebyshev-Lobatto points on [0, 1], ascending, endpoints included."""
    if count < 2:
        raise ValueError("need at least 2 nodes")
    k = np.arange(count)
    return 0.5 * (1.0 - np.cos(np.pi * k / (count - 1)))


def eval_series(coeffs, x, order: int = 0):
    """Evaluate the order-th derivative of a [0, 1] Chebyshev series at x."""
    c = np.asarray(coeffs, dtype=float)
    if order:
        c = _cheb.chebder(c, m=order, scl=2.0)
        if c.size == 0:
            c = np.zeros(1)
    t = 2.0 * np.asarray(x, dtype=float) - 1.0
    return _cheb.chebval(t, c)


def derivative(coeffs, order: int = 1) -> np.ndarray:
    """Coefficients of the order-th derivative of a [0, 1] series."""
    c = _cheb.chebder(np.asarray(coeffs, dtype=float), m=order, scl=2.0)
    return c if c.size else np.zeros(1)


def fit_values(nodes, values) -> np.ndarray:
    """Interpolating Chebyshev coefficients through (nodes, values) on [0, 1]."""
    t = 2.0 * np.asarray(nodes, dtype=float) - 1.0
    return _cheb.chebfit(t, np.asarray(values, dtype=float), len(t) - 1)


def chop(coeffs, rel: float = 1e-14) -> np.ndarray:
    """Zero the roundoff tail of a converged series.

    Trailing coefficients of an analytic interpolant sit at the roundoff
    floor; differentiating amplifies them by powers of the degree, so they
    must be dropped before derivatives are taken.
    """
    c = np.array(coeffs, dtype=float)
    top = np.max(np.abs(c))
    if top > 0.0:
        c[np.abs(c) < rel * top] = 0.0
    return c


def interpolate(func, count: int) -> np.ndarray:
    """Fit ``func`` sampled at ``count`` Lobatto nodes."""
    nodes = lobatto_nodes(count)
    return fit_values(nodes, func(nodes))


def barycentric_weights(count: int) -> np.ndarray:
    w = np.ones(count)
    w[1::2] = -1.0
    w[0] *= 0.5
    w[-1] *= 0.5
    return w


def barycentric(nodes, values, x) -> np.ndarray:
    """Barycentric interpolation at Lobatto nodes, vectorized in x."""
    nodes = np.asarray(nodes, dtype=float)
    values = np.asarray(values, dtype=float)
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    w = barycentric_weights(len(nodes))
    diff = xs[:, None] - nodes[None, :]
    hit_i, hit_j = np.nonzero(diff == 0.0)
    diff[hit_i, hit_j] = 1.0
    ratios = w[None, :] / diff
    out = (ratios @ values) / ratios.sum(axis=1)
    out[hit_i] = values[hit_j]
    return out
