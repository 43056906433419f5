"""Spectrum of the Laplacian on the round unit sphere of dimension n-1."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple


class TransversalEntry(NamedTuple):
    m: int
    kappa: float
    multiplicity: int


@dataclass(frozen=True)
class TransversalSpectrum:
    n: int
    entries: tuple[TransversalEntry, ...]


def kappa(n: int, m: int) -> float:
    """Eigenvalue m (m + n - 2) of degree-m spherical harmonics."""
    if n < 2 or m < 0:
        raise ValueError("need n >= 2 and m >= 0")
    return float(m * (m + n - 2))


def multiplicity(n: int, m: int) -> int:
    """Dimension of the degree-m spherical harmonics on the (n-1)-sphere."""
    if n < 2 or m < 0:
        raise ValueError("need n >= 2 and m >= 0")
    if n == 2:
        return 1 if m == 0 else 2
    if m == 0:
        return 1
    return (2 * m + n - 2) * math.comb(m + n - 3, m) // (n - 2)


def transversal_spectrum(n: int, m_max: int) -> TransversalSpectrum:
    """Eigenvalues and multiplicities for m = 0..m_max."""
    if m_max < 0:
        raise ValueError("m_max must be >= 0")
    entries = tuple(
        TransversalEntry(m, kappa(n, m), multiplicity(n, m)) for m in range(m_max + 1)
    )
    return TransversalSpectrum(n, entries)


def weyl_coefficient(n: int) -> float:
    """Leading Weyl coefficient c with mu_j ~ c j^(2/(n-1)) for the sphere.

    c = (2 pi)^2 / (vol(B^{n-1}) vol(S^{n-1}))^{2/(n-1)}.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    ball = math.pi ** ((n - 1) / 2.0) / math.gamma((n + 1) / 2.0)
    sphere = 2.0 * math.pi ** (n / 2.0) / math.gamma(n / 2.0)
    return (2.0 * math.pi) ** 2 / (ball * sphere) ** (2.0 / (n - 1))
