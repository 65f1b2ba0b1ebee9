"""Clamped beam spectrum: the 1-D clamped plate has Gamma_s = (mu_s / L)^4
where mu_s are the positive roots of cos(mu) cosh(mu) = 1."""

from __future__ import annotations

import math

from ..errors import BracketError, DomainError
from .types import Spectrum

__all__ = ["beam_frequencies", "beam_spectrum"]

_TOL = 1e-13


def _characteristic(mu: float) -> float:
    # cos(mu) cosh(mu) - 1 = 0 rewritten as cos(mu) - sech(mu) = 0; sech is
    # evaluated overflow-free, so the residual stays meaningful for large mu.
    sech = 2.0 * math.exp(-mu) / (1.0 + math.exp(-2.0 * mu))
    return math.cos(mu) - sech


def beam_frequencies(count: int) -> list[float]:
    """First ``count`` roots mu_s; mu_s approaches (2s+1) pi/2 exponentially."""
    if count < 1:
        raise DomainError(f"count must be >= 1, got {count!r}")
    roots = []
    for s in range(1, count + 1):
        lo = (s + 0.25) * math.pi
        hi = (s + 0.75) * math.pi
        f_lo, f_hi = _characteristic(lo), _characteristic(hi)
        if f_lo * f_hi > 0:
            raise BracketError(
                f"beam bracket #{s} [{lo!r}, {hi!r}] has no sign change: "
                f"f(lo)={f_lo!r}, f(hi)={f_hi!r}"
            )
        while hi - lo > _TOL:
            mid = 0.5 * (lo + hi)
            if mid == lo or mid == hi:  # interval narrower than float spacing
                break
            if f_lo * _characteristic(mid) <= 0:
                hi = mid
            else:
                lo = mid
                f_lo = _characteristic(lo)
        mu = 0.5 * (lo + hi)
        if abs(_characteristic(mu)) > 1e-9:  # residual |cos*cosh - 1| <= 1e-9 cosh
            raise BracketError(f"beam root #{s} failed residual check at mu={mu!r}")
        roots.append(mu)
    return roots


def beam_spectrum(length: float, count: int) -> Spectrum:
    """First ``count`` clamped-beam eigenvalues (mu_s / L)^4."""
    if length <= 0:
        raise DomainError(f"beam length must be positive, got {length!r}")
    values = [(mu / length) ** 4 for mu in beam_frequencies(count)]
    return Spectrum.from_values("bilaplace", values, f"root-found(tol={_TOL:g})")
