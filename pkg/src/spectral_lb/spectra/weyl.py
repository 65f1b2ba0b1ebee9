"""Asymptotic reference curves for eigenvalue partial sums."""

from __future__ import annotations

import math

from ..errors import DomainError
from ..geometry import SpectralConstants

__all__ = ["weyl_reference"]


def weyl_reference(operator: str, c: SpectralConstants, k: int) -> float:
    """Asymptotic mean value of the first k eigenvalues, times k.

    For the Laplacian this is k (n/(n+2)) 4 pi^2 k^(2/n) / (omega_n V)^(2/n)
    (numerically identical to the semiclassical sum bound); for the
    bilaplacian the fourth-power analogue with 16 pi^4 and n/(n+4).
    """
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k!r}")
    n = c.n
    # grouped exactly like the semiclassical sum bounds so the two paths agree
    # bit for bit, not just to rounding
    if operator == "laplace":
        return k * (
            (n / (n + 2)) * 4.0 * math.pi**2 * k ** (2.0 / n)
            / (c.omega_n * c.volume) ** (2.0 / n)
        )
    if operator == "bilaplace":
        return k * (
            (n / (n + 4)) * 16.0 * math.pi**4 * k ** (4.0 / n)
            / (c.omega_n * c.volume) ** (4.0 / n)
        )
    raise DomainError(f"unknown operator {operator!r}")
