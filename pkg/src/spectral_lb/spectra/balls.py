"""Dirichlet spectra of disks and 3-balls from Bessel zeros."""

from __future__ import annotations

import math

from ..errors import DomainError
from ..geometry import unit_ball_volume
from .bessel import BISECT_TOL, bessel_zero
from .types import Spectrum

__all__ = ["ball_spectrum"]


def _collect(n: int, radius: float, threshold: float) -> list[float]:
    """All eigenvalues (j_{nu,s}/R)^2 <= threshold, multiplicities expanded."""
    x_max = radius * math.sqrt(threshold)
    values: list[float] = []
    level = 0
    while True:
        nu = level + 0.5 if n == 3 else float(level)
        if bessel_zero(nu, 1) > x_max:
            break
        mult = (2 * level + 1) if n == 3 else (1 if level == 0 else 2)
        s = 1
        while True:
            zero = bessel_zero(nu, s)
            if zero > x_max:
                break
            values.extend([(zero / radius) ** 2] * mult)
            s += 1
        level += 1
    return values


def ball_spectrum(n: int, radius: float, count: int) -> Spectrum:
    """The ``count`` smallest Dirichlet eigenvalues of an n-ball, n in {2, 3}.

    Disk modes (j_{nu,s}/R)^2 carry multiplicity 1 for nu = 0 and 2 for
    nu >= 1; 3-ball modes (j_{l+1/2,s}/R)^2 carry multiplicity 2l+1.  The
    (nu, s) sweep is threshold-complete and the threshold doubles until
    enough modes are found.
    """
    if n not in (2, 3):
        raise DomainError(f"ball spectra are supported for n in {{2, 3}}, got n={n!r}")
    if radius <= 0:
        raise DomainError(f"radius must be positive, got {radius!r}")
    if count < 1:
        raise DomainError(f"count must be >= 1, got {count!r}")
    omega = unit_ball_volume(n)
    volume = omega * radius**n
    # Weyl: N(T) ~ omega_n V T^(n/2) / (2 pi)^n
    threshold = (1.5 * (count + 8) * (2 * math.pi) ** n / (omega * volume)) ** (2.0 / n)
    threshold = max(threshold, 1.2 * (bessel_zero(0.5 if n == 3 else 0.0, 1) / radius) ** 2)
    while True:
        values = _collect(n, radius, threshold)
        if len(values) >= count:
            break
        threshold *= 2.0
    values.sort()
    return Spectrum.from_values(
        "laplace", values[:count], f"root-found(tol={BISECT_TOL:g})"
    )
