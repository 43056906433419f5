"""Recovery of boundary data and equivalence-class probes from spectra.

The two branches of a Steklov spectrum are asymptotically affine in
sqrt(kappa_m) with slopes 1/sqrt(f(0)) and 1/sqrt(f(1)) and intercepts
carrying the endpoint log-derivative constants, so boundary data comes out
of two-line regression.  Because reflection x -> 1 - x leaves the spectrum
unchanged, everything here is determined only up to swapping the two ends.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import transversal
from .dn_map import SteklovSpectrum, block_eigenvalues, dn_block
from .errors import BranchAmbiguity, IllConditionedFit, LengthMismatch
from .warping import (
    DEFAULT_NODE_COUNT,
    WarpingProfile,
    build_potential,
    cb_membership,
    involute,
)

SLOPE_TIE = 1e-3  # below this slope gap the two lines count as parallel
AMBIGUITY_RATIO = 0.9  # competing assignments within 10% raise BranchAmbiguity
COEFF_TOL = 1e-8


@dataclass(frozen=True)
class BranchSplit:
    """Per-degree branch values and the fitted lines (in the variable m)."""

    m_indices: np.ndarray
    minus: np.ndarray
    plus: np.ndarray
    slope_minus: float
    slope_plus: float
    intercept_minus: float
    intercept_plus: float


@dataclass(frozen=True)
class BoundaryData:
    """Recovered endpoint values, endpoint constants and boundary volume."""

    f0_hat: float
    f1_hat: float
    b0_hat: float
    b1_hat: float
    volume_hat: float
    residual: float


@dataclass(frozen=True)
class TraceDetSignature:
    m_indices: np.ndarray
    traces: np.ndarray
    dets: np.ndarray


@dataclass(frozen=True)
class CompareReport:
    matched: bool
    max_deviation: float
    count: int
    tol: float


@dataclass(frozen=True)
class ProbeReport:
    verdict: str  # "identical" | "reflected" | "distinct"
    witness_m: int | None
    witness_deviation: float
    spectra_matched: bool
    spectra_max_deviation: float
    cb_ok_a: bool
    cb_ok_b: bool


def _pairs_by_degree(spectrum) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(m, low, high) arrays from a SteklovSpectrum or an (m, value) iterable."""
    if isinstance(spectrum, SteklovSpectrum):
        items = [(e.m_index, e.value) for e in spectrum.entries]
    else:
        items = [(int(m), float(v)) for m, v in spectrum]
    grouped: dict[int, list[float]] = {}
    for m, v in items:
        grouped.setdefault(m, []).append(v)
    ms = sorted(grouped)
    for m in ms:
        if len(grouped[m]) != 2:
            raise ValueError(f"degree {m} has {len(grouped[m])} values, expected 2")
    lows = np.array([min(grouped[m]) for m in ms])
    highs = np.array([max(grouped[m]) for m in ms])
    return np.array(ms, dtype=float), lows, highs


def _line_fit(x, y) -> tuple[float, float]:
    slope, intercept = np.polyfit(x, y, 1)
    return float(slope), float(intercept)


def _assign(ms, lows, highs, line_a, line_b, sweeps: int = 4):
    """Iteratively reassign each (low, high) pair to the two lines."""
    a = np.zeros_like(lows)
    b = np.zeros_like(lows)
    for _ in range(sweeps):
        pred_a = line_a[0] * ms + line_a[1]
        pred_b = line_b[0] * ms + line_b[1]
        keep = (lows - pred_a) ** 2 + (highs - pred_b) ** 2
        swap = (highs - pred_a) ** 2 + (lows - pred_b) ** 2
        take = keep <= swap
        a = np.where(take, lows, highs)
        b = np.where(take, highs, lows)
        line_a = _line_fit(ms, a)
        line_b = _line_fit(ms, b)
    rss = float(np.sum((a - (line_a[0] * ms + line_a[1])) ** 2))
    rss += float(np.sum((b - (line_b[0] * ms + line_b[1])) ** 2))
    return a, b, line_a, line_b, rss


def split_branches(spectrum) -> BranchSplit:
    """Separate a spectrum into its two affine branches.

    Works from values only (branch tags are ignored); accepts either a
    SteklovSpectrum or an iterable of (m, value) pairs, two values per m.
    With clearly distinct slopes the assignment is the better of two
    clustering hypotheses seeded by the extremal secants; if their
    residuals agree within 10% while the assignments differ, the call
    raises BranchAmbiguity.  Parallel branches (slopes within 1e-3) fall
    back to per-degree pairing: smaller value to the minus branch.
    """
    ms, lows, highs = _pairs_by_degree(spectrum)
    if len(ms) < 3:
        raise ValueError("need at least three degrees to split branches")
    span = ms[-1] - ms[0]
    sec_low = (lows[-1] - lows[0]) / span
    sec_high = (highs[-1] - highs[0]) / span

    if abs(sec_high - sec_low) <= SLOPE_TIE:
        line_lo = _line_fit(ms, lows)
        line_hi = _line_fit(ms, highs)
        return BranchSplit(
            m_indices=ms.astype(int),
            minus=lows,
            plus=highs,
            slope_minus=line_lo[0],
            slope_plus=line_hi[0],
            intercept_minus=line_lo[1],
            intercept_plus=line_hi[1],
        )

    straight = _assign(ms, lows, highs, (sec_low, lows[0] - sec_low * ms[0]),
                       (sec_high, highs[0] - sec_high * ms[0]))
    crossed_a = ((highs[-1] - lows[0]) / span, lows[0])
    crossed_b = ((lows[-1] - highs[0]) / span, highs[0])
    crossed = _assign(ms, lows, highs,
                      (crossed_a[0], crossed_a[1] - crossed_a[0] * ms[0]),
                      (crossed_b[0], crossed_b[1] - crossed_b[0] * ms[0]))
    first, second = (straight, crossed) if straight[4] <= crossed[4] else (crossed, straight)
    same_partition = np.array_equal(first[0], second[0]) or np.array_equal(first[0], second[1])
    if not same_partition and second[4] > 0.0:
        if first[4] / second[4] > AMBIGUITY_RATIO:
            raise BranchAmbiguity(
                f"competing branch assignments with residuals {first[4]:.3g} / {second[4]:.3g}"
            )
    a, b, line_a, line_b, _ = first
    if line_a[0] <= line_b[0]:
        minus, plus, line_minus, line_plus = a, b, line_a, line_b
    else:
        minus, plus, line_minus, line_plus = b, a, line_b, line_a
    return BranchSplit(
        m_indices=ms.astype(int),
        minus=minus,
        plus=plus,
        slope_minus=line_minus[0],
        slope_plus=line_plus[0],
        intercept_minus=line_minus[1],
        intercept_plus=line_plus[1],
    )


def recover_boundary(spectrum: SteklovSpectrum, fit_range: tuple[int, int]) -> BoundaryData:
    """Boundary data from per-branch regression of value against sqrt(kappa_m).

    The minus branch recovers f(1) and the constant b1 = ln(h)'(1)/(4 sqrt(f(1)));
    the plus branch recovers f(0) and b0.  Up to the reflection gauge the
    assignment of ends may be swapped relative to the generating profile.
    """
    lo, hi = fit_range
    split = split_branches(spectrum)
    mask = (split.m_indices >= lo) & (split.m_indices <= hi)
    if int(mask.sum()) < 10:
        raise IllConditionedFit(f"fit range [{lo}, {hi}] keeps only {int(mask.sum())} degrees")
    ms = split.m_indices[mask]
    roots = np.sqrt([transversal.kappa(spectrum.n, int(m)) for m in ms])
    slope_p, icept_p = _line_fit(roots, split.plus[mask])
    slope_m, icept_m = _line_fit(roots, split.minus[mask])
    resid = max(
        float(np.max(np.abs(split.plus[mask] - (slope_p * roots + icept_p)))),
        float(np.max(np.abs(split.minus[mask] - (slope_m * roots + icept_m)))),
    )
    if slope_p <= 0.0 or slope_m <= 0.0:
        raise IllConditionedFit("non-positive branch slope; fit range too low")
    f0_hat = slope_p**-2
    f1_hat = slope_m**-2
    half = (spectrum.n - 1) / 2.0
    return BoundaryData(
        f0_hat=f0_hat,
        f1_hat=f1_hat,
        b0_hat=icept_p,
        b1_hat=-icept_m,
        volume_hat=f0_hat**half + f1_hat**half,
        residual=resid,
    )


def trace_det_signature(
    profile: WarpingProfile,
    m_range: tuple[int, int],
    node_count: int = DEFAULT_NODE_COUNT,
) -> TraceDetSignature:
    """Trace and determinant of the DN blocks for m in the inclusive range."""
    lo, hi = m_range
    potential = build_potential(profile, node_count)
    ms, traces, dets = [], [], []
    for m in range(lo, hi + 1):
        mu = transversal.kappa(profile.n, m)
        block = dn_block(profile, potential, mu, m_index=m)
        ms.append(m)
        traces.append(block.a11 + block.a22)
        dets.append(block.a11 * block.a22 - block.a12 * block.a21)
    return TraceDetSignature(np.array(ms), np.array(traces), np.array(dets))


def isospectral_compare(
    spec_a: SteklovSpectrum, spec_b: SteklovSpectrum, tol: float
) -> CompareReport:
    """Match sorted eigenvalue multisets and report the worst deviation."""
    if (spec_a.n, spec_a.frequency, spec_a.m_max) != (spec_b.n, spec_b.frequency, spec_b.m_max):
        raise ValueError("spectra were computed with different n, frequency or m_max")
    va = spec_a.values_with_multiplicity()
    vb = spec_b.values_with_multiplicity()
    if len(va) != len(vb):
        raise LengthMismatch(f"spectra have {len(va)} vs {len(vb)} eigenvalues")
    dev = float(np.max(np.abs(np.array(va) - np.array(vb)))) if va else 0.0
    return CompareReport(matched=dev <= tol, max_deviation=dev, count=len(va), tol=tol)


def _coefficients_match(a: WarpingProfile, b: WarpingProfile) -> bool:
    size = max(a.coefficients.size, b.coefficients.size)
    ca = np.zeros(size)
    cb = np.zeros(size)
    ca[: a.coefficients.size] = a.coefficients
    cb[: b.coefficients.size] = b.coefficients
    scale = max(1.0, float(np.max(np.abs(ca))), float(np.max(np.abs(cb))))
    return bool(np.max(np.abs(ca - cb)) <= COEFF_TOL * scale)


def uniqueness_probe(
    profile_a: WarpingProfile,
    profile_b: WarpingProfile,
    m_max: int = 40,
) -> ProbeReport:
    """Classify two profiles as identical, reflected, or distinct.

    Coefficient comparison decides directly when possible; otherwise the
    trace/determinant signatures and spectra act as witnesses.  For n >= 3
    a warning is emitted if either profile leaves the endpoint-derivative
    class under which index alignment is guaranteed.
    """
    if (profile_a.n, profile_a.frequency) != (profile_b.n, profile_b.frequency):
        raise ValueError("profiles must share dimension and frequency")
    cb_a = cb_membership(profile_a)
    cb_b = cb_membership(profile_b)
    if profile_a.n >= 3 and not (cb_a and cb_b):
        warnings.warn(
            "endpoint derivative bound violated; spectral uniqueness is not guaranteed",
            UserWarning,
        )

    from .dn_map import steklov_spectrum

    spec_a = steklov_spectrum(profile_a, m_max)
    spec_b = steklov_spectrum(profile_b, m_max)
    compare = isospectral_compare(spec_a, spec_b, tol=1e-7)

    if _coefficients_match(profile_a, profile_b):
        verdict = "identical"
        witness_m, witness_dev = None, 0.0
    elif _coefficients_match(profile_a, involute(profile_b)):
        verdict = "reflected"
        witness_m, witness_dev = None, 0.0
    else:
        verdict = "distinct"
        sig_a = trace_det_signature(profile_a, (0, m_max))
        sig_b = trace_det_signature(profile_b, (0, m_max))
        gaps = np.maximum(np.abs(sig_a.traces - sig_b.traces), np.abs(sig_a.dets - sig_b.dets))
        best = int(np.argmax(gaps))
        witness_m, witness_dev = int(sig_a.m_indices[best]), float(gaps[best])
    return ProbeReport(
        verdict=verdict,
        witness_m=witness_m,
        witness_deviation=witness_dev,
        spectra_matched=compare.matched,
        spectra_max_deviation=compare.max_deviation,
        cb_ok_a=cb_a,
        cb_ok_b=cb_b,
    )
