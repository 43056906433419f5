"""Fundamental systems, characteristic and Weyl functions, Dirichlet roots.

The equation is -u'' + q u = -z u, i.e. u'' = (q + z) u.  Solutions grow
like exp(sqrt(z) x), so every propagation step factors out its own growth
scale and results are carried as (mantissa, log_scale) pairs.

The propagator over a step is computed with a fourth-order Magnus scheme
(two-point Gauss): the step generator is a traceless 2x2 matrix whose
exponential has a closed form in cosh/sinh, evaluated with the growth
factor removed analytically.  The scheme is exact for constant potentials
and its accuracy is certified per call by doubling the step count until
two consecutive propagators agree to the requested tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import AtCharacteristicRoot, IntegrationFailure, RootSearchFailure
from .warping import Potential, characteristic_log_floor

_SQRT3 = math.sqrt(3.0)
_GAUSS_LO = 0.5 - _SQRT3 / 6.0
_GAUSS_HI = 0.5 + _SQRT3 / 6.0

MIN_STEPS = 128
MAX_STEPS = 1 << 17
DEFAULT_RTOL = 1e-11
Z_CAP = 1e9


@dataclass(frozen=True)
class ScaledValue:
    """A number stored as mantissa * exp(log_scale) to dodge overflow."""

    mantissa: complex | float
    log_scale: float

    @staticmethod
    def normalize(mantissa, log_scale: float) -> "ScaledValue":
        a = abs(mantissa)
        if a == 0.0:
            return ScaledValue(0.0 * mantissa, 0.0)
        return ScaledValue(mantissa / a, log_scale + math.log(a))

    @property
    def value(self):
        """Plain value; may overflow to inf for large log_scale."""
        return self.mantissa * math.exp(min(self.log_scale, 709.0)) * (
            1.0 if self.log_scale <= 709.0 else math.inf
        )

    def log_abs(self) -> float:
        if self.mantissa == 0.0:
            return -math.inf
        return math.log(abs(self.mantissa)) + self.log_scale


@dataclass(frozen=True)
class FundamentalValues:
    """Characteristic function and companion Wronskians at one spectral point.

    delta = s0(1) = -s1(0), dd = c0(1), ee = c1(0) = s0'(1).  ``wronskian``
    is the float check value c0(1) s0'(1) - c0'(1) s0(1); it is meaningful
    only while exp(2 log_scale) is representable.
    """

    delta: ScaledValue
    dd: ScaledValue
    ee: ScaledValue
    z: complex | float
    wronskian: complex | float
    steps: int


def _scaled_exp_entries(omega_sq):
    """cosh(w) e^{-rho}, sinh(w)/w e^{-rho}, rho = |Re w| for w = sqrt(omega_sq)."""
    if np.iscomplexobj(omega_sq):
        w = np.sqrt(omega_sq.astype(complex))
        rho = np.abs(w.real)
        ep = np.exp(w - rho)
        em = np.exp(-w - rho)
        ch = 0.5 * (ep + em)
        small = np.abs(w) < 1e-8
        wsafe = np.where(small, 1.0, w)
        shc = np.where(small, np.exp(-rho) * (1.0 + omega_sq / 6.0), 0.5 * (ep - em) / wsafe)
        return ch, shc, rho

    omega_sq = np.asarray(omega_sq, dtype=float)
    ch = np.empty_like(omega_sq)
    shc = np.empty_like(omega_sq)
    rho = np.zeros_like(omega_sq)
    pos = omega_sq > 0.0
    if np.any(pos):
        w = np.sqrt(omega_sq[pos])
        e2 = np.exp(-2.0 * w)
        ch[pos] = 0.5 * (1.0 + e2)
        shc[pos] = np.where(w < 1e-8, 1.0 - w, -np.expm1(-2.0 * w) / (2.0 * w))
        rho[pos] = w
    neg = ~pos
    if np.any(neg):
        y = np.sqrt(-omega_sq[neg])
        ch[neg] = np.cos(y)
        shc[neg] = np.sinc(y / np.pi)
    return ch, shc, rho


def _step_matrices(v1, v2, h):
    """Scaled Magnus-4 propagators for u'' = v(x) u over steps of width h."""
    vbar = 0.5 * (v1 + v2)
    d = (_SQRT3 / 12.0) * h * h * (v1 - v2)
    omega_sq = d * d + (h * h) * vbar
    ch, shc, rho = _scaled_exp_entries(omega_sq)
    n = len(np.atleast_1d(vbar))
    mats = np.empty((n, 2, 2), dtype=ch.dtype)
    mats[:, 0, 0] = ch + shc * d
    mats[:, 0, 1] = shc * h
    mats[:, 1, 0] = shc * h * vbar
    mats[:, 1, 1] = ch - shc * d
    return mats, rho


def _reduce_product(mats, logs):
    """Ordered product M_{n-1} ... M_1 M_0 with per-level rescaling."""
    while mats.shape[0] > 1:
        tail = None
        if mats.shape[0] % 2:
            tail = (mats[-1], logs[-1])
            mats, logs = mats[:-1], logs[:-1]
        mats = np.matmul(mats[1::2], mats[0::2])
        logs = logs[0::2] + logs[1::2]
        if tail is not None:
            mats = np.concatenate([mats, tail[0][None]])
            logs = np.append(logs, tail[1])
        scale = np.max(np.abs(mats), axis=(1, 2))
        scale = np.where(scale == 0.0, 1.0, scale)
        mats = mats / scale[:, None, None]
        logs = logs + np.log(scale)
    return mats[0], float(logs[0])


def _propagator_fixed(potential: Potential, z, nsteps: int):
    """(mantissa matrix, log scale) of the x=0 -> x=1 propagator with nsteps steps."""
    h = 1.0 / nsteps
    starts = np.arange(nsteps) * h
    x1 = starts + _GAUSS_LO * h
    x2 = starts + _GAUSS_HI * h
    q1 = potential.q_at(x1)
    q2 = potential.q_at(x2)
    if isinstance(z, complex) and z.imag != 0.0:
        v1 = q1.astype(complex) + z
        v2 = q2.astype(complex) + z
    else:
        zr = z.real if isinstance(z, complex) else float(z)
        v1 = q1 + zr
        v2 = q2 + zr
    mats, logs = _step_matrices(v1, v2, h)
    return _reduce_product(mats, logs)


def _converged_propagator(potential: Potential, z, rtol: float = DEFAULT_RTOL):
    """Propagator accepted once a step-count doubling changes it by <= rtol."""
    if abs(z) > Z_CAP:
        raise ValueError(f"|z| = {abs(z):.3g} exceeds the supported cap {Z_CAP:.0e}")
    # start fine enough that one step spans at most a few e-foldings / oscillations
    n0 = MIN_STEPS
    scale = math.sqrt(abs(z)) if z != 0 else 0.0
    while n0 * 8 < scale and n0 < MAX_STEPS:
        n0 *= 2
    prev_mat, prev_log = _propagator_fixed(potential, z, n0)
    n = n0
    while n < MAX_STEPS:
        n *= 2
        mat, log = _propagator_fixed(potential, z, n)
        shift = math.exp(min(prev_log - log, 700.0))
        err = np.max(np.abs(prev_mat * shift - mat))
        if err <= rtol * np.max(np.abs(mat)):
            return mat, log, n
        prev_mat, prev_log = mat, log
    raise IntegrationFailure(
        f"propagator did not converge below rtol={rtol:g} within {MAX_STEPS} steps at z={z}"
    )


def fundamental_at(potential: Potential, z, rtol: float = DEFAULT_RTOL) -> FundamentalValues:
    """Characteristic function Delta and the endpoint values D, E at z.

    The forward propagator P sends (u, u')(0) to (u, u')(1), so
    D = P[0,0], Delta = P[0,1] and E = P[1,1]; the three values share one
    growth scale and are renormalized individually on return.
    """
    mat, log, steps = _converged_propagator(potential, z, rtol)
    det = mat[0, 0] * mat[1, 1] - mat[0, 1] * mat[1, 0]
    two_log = 2.0 * log
    # beyond the float range the mantissa determinant is pure cancellation noise
    wronskian = det * math.exp(two_log) if two_log < 700.0 else math.nan
    return FundamentalValues(
        delta=ScaledValue.normalize(mat[0, 1], log),
        dd=ScaledValue.normalize(mat[0, 0], log),
        ee=ScaledValue.normalize(mat[1, 1], log),
        z=z,
        wronskian=wronskian,
        steps=steps,
    )


def weyl_functions(potential: Potential, z, rtol: float = DEFAULT_RTOL):
    """Weyl functions M = -D/Delta and N = -E/Delta at z.

    Computed from the shared-scale propagator so the growth scales cancel
    exactly.  Raises AtCharacteristicRoot when |Delta| sits below the
    admissibility threshold for this z.
    """
    mat, log, _ = _converged_propagator(potential, z, rtol)
    delta = mat[0, 1]
    zr = z.real if isinstance(z, complex) else float(z)
    if abs(delta) == 0.0 or math.log(abs(delta)) + log < characteristic_log_floor(zr):
        raise AtCharacteristicRoot(f"characteristic function too small at z={z}")
    m_fun = -mat[0, 0] / delta
    n_fun = -mat[1, 1] / delta
    if not (isinstance(z, complex) and z.imag != 0.0):
        m_fun, n_fun = float(m_fun), float(n_fun)
    return m_fun, n_fun


def block_inputs(potential: Potential, z, rtol: float = DEFAULT_RTOL):
    """(M, N, 1/Delta) at z from a single shared-scale propagation.

    This is what a DN block consumes; 1/Delta underflows gracefully to 0
    once the characteristic function outgrows the float range.  Raises
    AtCharacteristicRoot below the admissibility threshold.
    """
    mat, log, _ = _converged_propagator(potential, z, rtol)
    delta = mat[0, 1]
    zr = z.real if isinstance(z, complex) else float(z)
    if abs(delta) == 0.0 or math.log(abs(delta)) + log < characteristic_log_floor(zr):
        raise AtCharacteristicRoot(f"characteristic function too small at z={z}")
    inv_delta = (1.0 / delta) * math.exp(-log) if log < 700.0 else 0.0
    return -mat[0, 0] / delta, -mat[1, 1] / delta, inv_delta


def _delta_sign(potential: Potential, z: float) -> float:
    mat, _, _ = _converged_propagator(potential, z, rtol=1e-9)
    return math.copysign(1.0, float(mat[0, 1]))


def _pruefer_angle(potential: Potential, nu: float) -> float:
    """Scaled Pruefer angle theta(1) for u'' = (q - nu) u, theta(0) = 0.

    tan(theta) = s u / u' with s = sqrt(max(nu, 1)); each upward crossing
    of a multiple of pi marks a zero of u, so floor(theta(1)/pi) counts
    Dirichlet eigenvalues below nu.
    """
    s = math.sqrt(max(nu, 1.0))
    nsteps = max(256, 8 * int(math.ceil(s)))
    h = 1.0 / nsteps
    xs = np.arange(nsteps) * h
    q_a = potential.q_at(xs)
    q_m = potential.q_at(xs + 0.5 * h)
    q_b = potential.q_at(xs + h)

    def rate(theta, q):
        sin_t = math.sin(theta)
        cos_t = math.cos(theta)
        return s * cos_t * cos_t + ((nu - q) / s) * sin_t * sin_t

    theta = 0.0
    for i in range(nsteps):
        k1 = rate(theta, q_a[i])
        k2 = rate(theta + 0.5 * h * k1, q_m[i])
        k3 = rate(theta + 0.5 * h * k2, q_m[i])
        k4 = rate(theta + h * k3, q_b[i])
        theta += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return theta


def _count_below(potential: Potential, nu: float) -> int:
    return int(math.floor(_pruefer_angle(potential, nu) / math.pi))


def dirichlet_alphas(potential: Potential, count: int, tol: float = 1e-10) -> np.ndarray:
    """First ``count`` roots of Delta, strictly decreasing.

    alpha_j = -(j+1 th Dirichlet eigenvalue of -d^2/dx^2 + q).  Brackets
    come from Pruefer oscillation counts; the final refinement bisects on
    the sign of Delta, which flips across each simple root.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    q_lo = float(np.min(potential.q_values))
    q_hi = float(np.max(potential.q_values))
    alphas = np.empty(count)
    for j in range(count):
        base = (j + 1) ** 2 * math.pi**2
        lo, hi = base + q_lo - 0.5, base + q_hi + 0.5
        width = max(1.0, q_hi - q_lo)
        grown = 0
        while _count_below(potential, lo) > j:
            lo -= width
            width *= 2.0
            grown += 1
            if grown > 60:
                raise RootSearchFailure(f"no lower bracket for root {j}: lo={lo}, count>{j}")
        width = max(1.0, q_hi - q_lo)
        grown = 0
        while _count_below(potential, hi) < j + 1:
            hi += width
            width *= 2.0
            grown += 1
            if grown > 60:
                raise RootSearchFailure(f"no upper bracket for root {j}: hi={hi}")
        # shrink until the bracket isolates exactly this eigenvalue
        while _count_below(potential, lo) < j or _count_below(potential, hi) > j + 1:
            mid = 0.5 * (lo + hi)
            if _count_below(potential, mid) >= j + 1:
                hi = mid
            else:
                lo = mid
        sign_lo = _delta_sign(potential, -lo)
        sign_hi = _delta_sign(potential, -hi)
        if sign_lo == sign_hi:
            raise RootSearchFailure(
                f"no sign change for root {j} on [{lo}, {hi}] (signs {sign_lo}, {sign_hi})"
            )
        while hi - lo > tol:
            mid = 0.5 * (lo + hi)
            if _delta_sign(potential, -mid) == sign_lo:
                lo = mid
            else:
                hi = mid
        alphas[j] = -0.5 * (lo + hi)
    return alphas


def hadamard_truncated(alphas, normalization: float, z: float, terms: int) -> float:
    """Truncated Hadamard product C * prod_{k < terms} (1 - z / alpha_k)."""
    alphas = np.asarray(alphas, dtype=float)
    if terms > len(alphas):
        raise ValueError(f"terms={terms} exceeds available roots {len(alphas)}")
    return float(normalization * np.prod(1.0 - z / alphas[:terms]))
