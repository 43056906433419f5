"""Restricted Dirichlet-to-Neumann blocks and the assembled Steklov spectrum.

The DN operator is block diagonal over spherical-harmonic degrees; each
block is a 2x2 matrix built from the Weyl functions M, N and the
characteristic function Delta of the reduced potential, evaluated at the
transversal eigenvalue mu.  Its two real eigenvalues form the minus branch
(x = 1 side) and the plus branch (x = 0 side).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from . import sturm_liouville, transversal
from .warping import (
    DEFAULT_NODE_COUNT,
    Potential,
    WarpingProfile,
    admissibility_check,
    build_potential,
)

DEFAULT_M_MAX = 40


@dataclass(frozen=True)
class DNBlock:
    """One 2x2 restriction of the DN operator at transversal eigenvalue mu."""

    mu: float
    a11: float
    a12: float
    a21: float
    a22: float
    m_index: int


class SpectrumEntry(NamedTuple):
    value: float
    branch: str  # "-" or "+"
    m_index: int
    multiplicity: int


@dataclass(frozen=True)
class SteklovSpectrum:
    """Eigenvalues with branch tags, degree indices and multiplicities."""

    entries: tuple[SpectrumEntry, ...]
    n: int
    frequency: float
    m_max: int
    crossover_index: int  # both branches strictly increase in m from here on

    def values_with_multiplicity(self):
        out = []
        for e in self.entries:
            out.extend([e.value] * e.multiplicity)
        return sorted(out)


def dn_block(
    profile: WarpingProfile,
    potential: Potential,
    mu: float,
    m_index: int = 0,
    rtol: float = 1e-10,
) -> DNBlock:
    """Assemble the 2x2 DN block at mu from M, N, Delta and the endpoint data."""
    m_fun, n_fun, inv_delta = sturm_liouville.block_inputs(potential, mu, rtol)
    rf0 = math.sqrt(potential.f0)
    rf1 = math.sqrt(potential.f1)
    # (h(1)/h(0))^{1/4} with h = f^{n-2}
    h_ratio = (potential.f1 / potential.f0) ** ((profile.n - 2) / 4.0)
    return DNBlock(
        mu=float(mu),
        a11=-m_fun / rf0 + potential.lnh_prime0 / (4.0 * rf0),
        a12=-(1.0 / rf0) * h_ratio * inv_delta,
        a21=-(1.0 / rf1) / h_ratio * inv_delta,
        a22=-n_fun / rf1 - potential.lnh_prime1 / (4.0 * rf1),
        m_index=m_index,
    )


def block_eigenvalues(block: DNBlock) -> tuple[float, float]:
    """(lambda_minus, lambda_plus) of the block.

    Roots come from the trace/determinant with the cancellation-safe split
    (large root by sign of the trace, small root from the determinant).
    Labels are assigned by pairing the roots with the two diagonal entries
    at minimal total distance: the plus branch follows the x = 0 quasimode
    a11, the minus branch the x = 1 quasimode a22.  Ties give the smaller
    root to the minus branch.
    """
    tr = block.a11 + block.a22
    det = block.a11 * block.a22 - block.a12 * block.a21
    disc = (block.a11 - block.a22) ** 2 + 4.0 * block.a12 * block.a21
    disc = max(disc, 0.0)
    s = math.sqrt(disc)
    big = 0.5 * (tr + math.copysign(s, tr))
    if big == 0.0:
        lo = hi = 0.0
    else:
        other = det / big
        lo, hi = min(big, other), max(big, other)
    scale = max(abs(block.a11), abs(block.a22), 1.0)
    if abs(block.a11 - block.a22) <= 1e-9 * scale:
        return lo, hi  # quasimode values coincide: smaller root to the minus branch
    keep = abs(lo - block.a22) + abs(hi - block.a11)
    swap = abs(lo - block.a11) + abs(hi - block.a22)
    if keep <= swap:
        return lo, hi
    return hi, lo


def _crossover_index(per_m: list[tuple[float, float]]) -> int:
    cross = 0
    for i in range(1, len(per_m)):
        if per_m[i][0] <= per_m[i - 1][0] or per_m[i][1] <= per_m[i - 1][1]:
            cross = i
    return cross


def steklov_spectrum(
    profile: WarpingProfile,
    m_max: int = DEFAULT_M_MAX,
    node_count: int = DEFAULT_NODE_COUNT,
) -> SteklovSpectrum:
    """Full Steklov spectrum for degrees m = 0..m_max with multiplicities."""
    potential = build_potential(profile, node_count)
    admissibility_check(profile, potential, m_max)
    entries = []
    per_m = []
    for m in range(m_max + 1):
        mu = transversal.kappa(profile.n, m)
        block = dn_block(profile, potential, mu, m_index=m)
        minus, plus = block_eigenvalues(block)
        mult = transversal.multiplicity(profile.n, m)
        entries.append(SpectrumEntry(minus, "-", m, mult))
        entries.append(SpectrumEntry(plus, "+", m, mult))
        per_m.append((minus, plus))
    return SteklovSpectrum(
        entries=tuple(entries),
        n=profile.n,
        frequency=profile.frequency,
        m_max=m_max,
        crossover_index=_crossover_index(per_m),
    )


def counting_function(spectrum: SteklovSpectrum, t: float) -> int:
    """Number of eigenvalues <= t, counted with multiplicity."""
    return sum(e.multiplicity for e in spectrum.entries if e.value <= t)
