"""Exact Dirichlet spectra of boxes by threshold-growing lattice enumeration."""

from __future__ import annotations

import math

import numpy as np

from ..errors import DomainError
from .types import Spectrum

__all__ = ["box_spectrum", "box_counting_function"]


def _modes_below(lengths: tuple[float, ...], threshold: float) -> np.ndarray:
    """All eigenvalues pi^2 sum (m_i/L_i)^2 <= threshold, m_i >= 1 integers.

    Outer axes recurse in Python; the last axis is vectorized.  Completeness
    holds per threshold by construction (no per-axis truncation).
    """
    radius = threshold / math.pi**2
    out: list[np.ndarray] = []

    def recurse(axis: int, acc: float) -> None:
        length = lengths[axis]
        room = radius - acc
        if room <= 0:
            return
        m_max = int(math.floor(math.sqrt(room) * length + 1e-12))
        if m_max < 1:
            return
        if axis == len(lengths) - 1:
            m = np.arange(1.0, m_max + 1.0)
            out.append(acc + (m / length) ** 2)
            return
        for m in range(1, m_max + 1):
            recurse(axis + 1, acc + (m / length) ** 2)

    recurse(0, 0.0)
    if not out:
        return np.empty(0)
    values = math.pi**2 * np.concatenate(out)
    return values[values <= threshold]


def box_spectrum(lengths, count: int) -> Spectrum:
    """The ``count`` smallest Dirichlet eigenvalues of a box, exactly.

    The enumeration threshold starts at the Weyl prediction for ``count``
    modes and doubles until enough lattice points are found, so anisotropic
    boxes cannot lose modes to a per-axis cutoff.
    """
    sides = tuple(float(v) for v in lengths)
    if not sides or any(v <= 0 for v in sides):
        raise DomainError(f"box edge lengths must be positive, got {sides!r}")
    if count < 1:
        raise DomainError(f"count must be >= 1, got {count!r}")
    n = len(sides)
    volume = math.prod(sides)
    from ..geometry import unit_ball_volume

    omega = unit_ball_volume(n)
    # Weyl: N(T) ~ omega_n V T^(n/2) / (2 pi)^n
    threshold = (1.5 * (count + 8) * (2 * math.pi) ** n / (omega * volume)) ** (2.0 / n)
    threshold = max(threshold, math.pi**2 * math.fsum(1.0 / v**2 for v in sides) * 2.0)
    while True:
        values = _modes_below(sides, threshold)
        if len(values) >= count:
            break
        threshold *= 2.0
    values.sort()
    return Spectrum.from_values("laplace", values[:count], "exact")


def box_counting_function(lengths, threshold: float) -> int:
    """Number of box eigenvalues <= threshold (exact enumeration)."""
    sides = tuple(float(v) for v in lengths)
    if threshold <= 0:
        return 0
    return int(len(_modes_below(sides, threshold)))
