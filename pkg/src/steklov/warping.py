"""Warping profiles on the unit cylinder and their reduced potentials.

The metric is conformally a product: a strictly positive factor f(x) on
[0, 1] multiplies dx^2 + (round sphere metric).  Separation of variables
reduces the boundary-value problem to a one-dimensional equation with
potential q = w''/w - frequency * f, where w = f^((n-2)/4).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import chebyshev
from .errors import (
    BadDimension,
    FrequencyOnDirichletSpectrum,
    NonPositiveProfile,
    OutOfDomain,
)

DEFAULT_NODE_COUNT = 64
POSITIVITY_SAMPLES = 256


@dataclass(frozen=True)
class WarpingProfile:
    """Conformal factor f on [0, 1] as a Chebyshev series, with dimension and frequency."""

    coefficients: np.ndarray
    n: int
    frequency: float

    def __post_init__(self):
        object.__setattr__(self, "coefficients", np.array(self.coefficients, dtype=float))
        self.coefficients.setflags(write=False)


@dataclass(frozen=True)
class Potential:
    """Reduced potential q sampled at Chebyshev-Lobatto nodes plus endpoint data of f and ln(h)'."""

    q_values: np.ndarray
    nodes: np.ndarray
    f0: float
    f1: float
    lnh_prime0: float
    lnh_prime1: float
    node_count: int
    q_bound: float  # max |q| on a 4x denser sample grid

    def __post_init__(self):
        object.__setattr__(self, "q_values", np.array(self.q_values, dtype=float))
        object.__setattr__(self, "nodes", np.array(self.nodes, dtype=float))
        self.q_values.setflags(write=False)
        self.nodes.setflags(write=False)

    def q_at(self, x) -> np.ndarray:
        """Evaluate q by barycentric interpolation (vectorized)."""
        return chebyshev.barycentric(self.nodes, self.q_values, x)


def make_profile(coefficients, n: int, frequency: float) -> WarpingProfile:
    """Validate and build a warping profile.

    Raises BadDimension for n < 2 and NonPositiveProfile when the sampled
    minimum of f on a dense Chebyshev grid is not strictly positive.
    """
    coeffs = np.asarray(coefficients, dtype=float)
    if coeffs.ndim != 1 or coeffs.size == 0:
        raise ValueError("coefficients must be a nonempty 1-d vector")
    if not np.all(np.isfinite(coeffs)):
        raise ValueError("coefficients must be finite")
    if n < 2:
        raise BadDimension(f"dimension must be >= 2, got {n}")
    grid = chebyshev.lobatto_nodes(max(POSITIVITY_SAMPLES, 4 * coeffs.size))
    samples = chebyshev.eval_series(coeffs, grid)
    if samples.min() <= 0.0:
        raise NonPositiveProfile(
            f"warping function not positive: min sampled value {samples.min():.3g}"
        )
    return WarpingProfile(coeffs, int(n), float(frequency))


def eval_profile(profile: WarpingProfile, x: float, order: int = 0) -> float:
    """Derivative of order 0..4 of f at x in [0, 1], by exact series differentiation."""
    if not 0.0 <= x <= 1.0:
        raise OutOfDomain(f"x={x} outside [0, 1]")
    if not 0 <= order <= 4:
        raise ValueError("order must be in 0..4")
    return float(chebyshev.eval_series(profile.coefficients, x, order))


def involute(profile: WarpingProfile) -> WarpingProfile:
    """Profile of the reflected factor x -> f(1 - x) (odd coefficients sign-flipped)."""
    coeffs = profile.coefficients.copy()
    coeffs[1::2] *= -1.0
    return WarpingProfile(coeffs, profile.n, profile.frequency)


def cb_membership(profile: WarpingProfile) -> bool:
    """Whether |f'(k)/f(k)| <= 1/(n-2) at both endpoints; vacuously true for n = 2."""
    if profile.n == 2:
        return True
    bound = 1.0 / (profile.n - 2)
    for x in (0.0, 1.0):
        ratio = eval_profile(profile, x, 1) / eval_profile(profile, x, 0)
        if abs(ratio) > bound:
            return False
    return True


def build_potential(profile: WarpingProfile, node_count: int = DEFAULT_NODE_COUNT) -> Potential:
    """Reduced potential on ``node_count`` Lobatto nodes.

    For n = 2 the curvature term is absent and q = -frequency * f exactly.
    Otherwise w = f^((n-2)/4) is interpolated and differentiated spectrally.
    """
    if node_count < 16:
        raise ValueError("node_count must be >= 16")
    nodes = chebyshev.lobatto_nodes(node_count)
    f_vals = chebyshev.eval_series(profile.coefficients, nodes)
    if f_vals.min() <= 0.0:
        raise NonPositiveProfile("warping function not positive on potential grid")
    lam = profile.frequency
    if profile.n == 2:
        q_vals = -lam * f_vals
        lnh0 = lnh1 = 0.0
    else:
        power = (profile.n - 2) / 4.0
        w_vals = f_vals**power
        w_coeffs = chebyshev.chop(chebyshev.fit_values(nodes, w_vals))
        w_second = chebyshev.eval_series(w_coeffs, nodes, order=2)
        q_vals = w_second / w_vals - lam * f_vals
        lnh0 = (profile.n - 2) * eval_profile(profile, 0.0, 1) / f_vals[0]
        lnh1 = (profile.n - 2) * eval_profile(profile, 1.0, 1) / f_vals[-1]
    if not np.all(np.isfinite(q_vals)):
        raise ValueError("potential evaluation produced non-finite values")
    dense = chebyshev.barycentric(nodes, q_vals, chebyshev.lobatto_nodes(4 * node_count))
    return Potential(
        q_values=q_vals,
        nodes=nodes,
        f0=float(f_vals[0]),
        f1=float(f_vals[-1]),
        lnh_prime0=float(lnh0),
        lnh_prime1=float(lnh1),
        node_count=node_count,
        q_bound=float(np.max(np.abs(dense))),
    )


# Relative floor under which the characteristic function counts as vanishing;
# the scale e^{Re sqrt(z)} / (2 (1 + sqrt(z))) matches its growth envelope.
ADMISSIBILITY_FLOOR = 1e-8


def characteristic_log_floor(z: float) -> float:
    """log of the admissibility threshold for |Delta(z)| at real z >= 0."""
    root = math.sqrt(max(z, 0.0))
    return math.log(ADMISSIBILITY_FLOOR) + root - math.log(2.0 * (1.0 + root))


def admissibility_check(profile: WarpingProfile, potential: Potential, m_max: int) -> None:
    """Verify the frequency avoids the interior Dirichlet spectrum for all m <= m_max.

    Only indices with kappa_m <= 4 max|q| + 16 need a numerical check; above
    that the sinh-type growth of the characteristic function keeps it away
    from zero.  Raises FrequencyOnDirichletSpectrum naming the first bad index.
    """
    from . import sturm_liouville, transversal

    guard = 4.0 * potential.q_bound + 16.0
    for m in range(m_max + 1):
        mu = transversal.kappa(profile.n, m)
        if mu > guard:
            break
        values = sturm_liouville.fundamental_at(potential, mu)
        if values.delta.log_abs() < characteristic_log_floor(mu):
            raise FrequencyOnDirichletSpectrum(m)
