"""Large-argument expansion of the Weyl functions and branch predictions.

Writing u = -psi'/psi for the solution psi vanishing at x = 1 turns the
equation into the Riccati form u' = u^2 - q - z^2.  Expanding
u = z + sum_j beta_j(x) / z^(j+1) and matching powers of z gives

    beta_0 = q / 2,
    beta_{j+1} = beta_j' / 2 - (1/2) sum_{l=0}^{j-1} beta_l beta_{j-1-l},

so that -M(z^2) = z + sum_j beta_j(0) / z^(j+1) + o(z^-(A+1)).  The gamma
coefficients satisfy the same recursion for the reflected potential and
feed the matching expansion of -N(z^2).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import chebyshev, sturm_liouville
from .errors import DegenerateFitWarning, OrderTooHigh
from .warping import Potential, WarpingProfile

DEFAULT_ORDER = 3
MAX_ORDER = 6


@dataclass(frozen=True)
class ExpansionCoefficients:
    """beta_j(0) and the reflected-side gamma_j(0), j = 0..order."""

    beta: np.ndarray
    gamma: np.ndarray
    order: int

    def __post_init__(self):
        object.__setattr__(self, "beta", np.array(self.beta, dtype=float))
        object.__setattr__(self, "gamma", np.array(self.gamma, dtype=float))
        self.beta.setflags(write=False)
        self.gamma.setflags(write=False)


@dataclass(frozen=True)
class BranchPrediction:
    """Leading-order and Weyl-refined predictions for the two branches."""

    leading_minus: float
    leading_plus: float
    refined_minus: float
    refined_plus: float
    series_minus: float | None = None
    series_plus: float | None = None


def _beta_endpoint_values(q_values: np.ndarray, nodes: np.ndarray, order: int) -> np.ndarray:
    """beta_j(0) for j = 0..order by the Riccati recursion on the given grid."""
    fields = [0.5 * q_values]
    for j in range(order):
        coeffs = chebyshev.chop(chebyshev.fit_values(nodes, fields[j]))
        deriv = chebyshev.eval_series(coeffs, nodes, order=1)
        conv = np.zeros_like(q_values)
        for l in range(j):
            conv = conv + fields[l] * fields[j - 1 - l]
        fields.append(0.5 * deriv - 0.5 * conv)
    return np.array([field[0] for field in fields])


def riccati_coefficients(potential: Potential, order: int = DEFAULT_ORDER) -> ExpansionCoefficients:
    """Expansion coefficients at both endpoints, noise-checked by grid refinement.

    Raises OrderTooHigh when the coarse and refined grids disagree by more
    than 1% on some coefficient, which signals that spectral
    differentiation noise has overtaken the coefficient itself.
    """
    if not 0 <= order <= MAX_ORDER:
        raise ValueError(f"order must be in 0..{MAX_ORDER}")
    nodes = potential.nodes
    q_vals = potential.q_values
    fine_nodes = chebyshev.lobatto_nodes(2 * potential.node_count)
    fine_q = potential.q_at(fine_nodes)

    beta = _beta_endpoint_values(q_vals, nodes, order)
    beta_fine = _beta_endpoint_values(fine_q, fine_nodes, order)
    # reflected potential: Lobatto grids are symmetric, so reversal is exact
    gamma = _beta_endpoint_values(q_vals[::-1], nodes, order)
    gamma_fine = _beta_endpoint_values(fine_q[::-1], fine_nodes, order)

    scale = 1.0 + potential.q_bound
    for j in range(order + 1):
        floor = 1e-8 * scale ** ((j + 2) / 2.0)
        for coarse, fine in ((beta[j], beta_fine[j]), (gamma[j], gamma_fine[j])):
            if abs(coarse - fine) > 0.01 * (abs(fine) + floor):
                raise OrderTooHigh(
                    f"coefficient {j} differs by {abs(coarse - fine):.3g} "
                    f"between grids; reduce order or refine the potential"
                )
    return ExpansionCoefficients(beta, gamma, order)


def wt_expansion(coeffs: ExpansionCoefficients, z: float) -> tuple[float, float]:
    """Truncated expansion values (-M(z^2), -N(z^2)) at real z > 0."""
    if z <= 0:
        raise ValueError("z must be positive")
    powers = z ** -(np.arange(coeffs.order + 1) + 1.0)
    return float(z + coeffs.beta @ powers), float(z + coeffs.gamma @ powers)


def vp_prediction(
    profile: WarpingProfile,
    potential: Potential,
    mu: float,
    coeffs: ExpansionCoefficients | None = None,
) -> BranchPrediction:
    """Branch eigenvalue predictions at transversal eigenvalue mu > 0.

    Leading order is sqrt(mu)/sqrt(f(k)) shifted by the endpoint constant
    ln(h)'(k) / (4 sqrt(f(k))); the refined prediction replaces sqrt(mu)
    with the numerically evaluated Weyl functions (the block diagonal).
    When expansion coefficients are supplied the truncated-series variant
    is reported as well.
    """
    if mu <= 0:
        raise ValueError("mu must be positive")
    rf0 = math.sqrt(potential.f0)
    rf1 = math.sqrt(potential.f1)
    c0 = potential.lnh_prime0 / (4.0 * rf0)
    c1 = potential.lnh_prime1 / (4.0 * rf1)
    root = math.sqrt(mu)
    m_fun, n_fun = sturm_liouville.weyl_functions(potential, mu)
    series_minus = series_plus = None
    if coeffs is not None:
        minus_m, minus_n = wt_expansion(coeffs, root)
        series_plus = minus_m / rf0 + c0
        series_minus = minus_n / rf1 - c1
    return BranchPrediction(
        leading_minus=root / rf1 - c1,
        leading_plus=root / rf0 + c0,
        refined_minus=-n_fun / rf1 - c1,
        refined_plus=-m_fun / rf0 + c0,
        series_minus=series_minus,
        series_plus=series_plus,
    )


def decay_order_fit(samples) -> float:
    """Least-squares slope of log|residual| against log z.

    Requires at least 5 positive-residual samples spanning a decade in z.
    Residuals at the roundoff floor (< 1e-13) are reported via
    DegenerateFitWarning but still enter the fit.
    """
    pts = [(float(z), float(r)) for z, r in samples]
    if len(pts) < 5:
        raise ValueError("need at least 5 samples")
    zs = np.array([p[0] for p in pts])
    rs = np.array([p[1] for p in pts])
    if np.any(rs <= 0.0) or np.any(zs <= 0.0):
        raise ValueError("samples must have positive z and residual")
    if zs.max() / zs.min() < 10.0 * (1.0 - 1e-12):
        raise ValueError("samples must span at least a decade in z")
    if np.any(rs < 1e-13):
        warnings.warn("residuals at the roundoff floor", DegenerateFitWarning)
    slope = np.polyfit(np.log(zs), np.log(rs), 1)[0]
    return float(slope)
