"""Proof-kernel polynomials and their grid certification.

Each bound family rests on a one-variable polynomial inequality f(t) >= 0
with f(0) = f(1) = 0 and minimum at t = 1.  The three kernels are

    laplace2:  f(t) = n t^(n+2) - (n+2) t^n + 2 - sum_{k=1..2}   2k t^(k-1) (t-1)^2
    general:   f(t) = n t^(n+2) - (n+2) t^n + 2 - sum_{k=1..m+1} 2k t^(k-1) (t-1)^2
    clamped:   f(t) = n t^(n+4) - (n+4) t^n + 4 - sum_{k=1..m}   4k t^(k-1) (t-1)^2

The coefficient vectors are built in exact integer arithmetic and evaluated
by Horner's rule, so the only rounding is the final float accumulation.  No
attempt is made to prove nonnegativity symbolically; ``kernel_scan`` certifies
it on a grid with a documented margin.
"""

from __future__ import annotations

import numpy as np

from .errors import ConstraintError

__all__ = [
    "kernel_coefficients",
    "kernel_residual",
    "kernel_scan",
    "kernel_validity_table",
    "leading_term_dominates",
]

_KINDS = {
    # kind: (power gap above t^n, constant term, subtracted weight)
    "laplace2": (2, 2, 2),
    "general": (2, 2, 2),
    "clamped": (4, 4, 4),
}


def _check_validity(kind: str, n: int, m: int | None) -> int:
    """Return the number of subtracted square terms after validating (n, m)."""
    if kind == "laplace2":
        if n < 2:
            raise ConstraintError(f"kernel laplace2 requires n >= 2, got n={n}")
        return 2
    if kind == "general":
        if m is None or m < 1 or n < m + 1:
            raise ConstraintError(f"kernel general requires n >= m+1 >= 2, got n={n}, m={m}")
        return m + 1
    if kind == "clamped":
        if m is None or not (n >= m >= 1):
            raise ConstraintError(f"kernel clamped requires n >= m >= 1, got n={n}, m={m}")
        return m
    raise ConstraintError(f"unknown kernel kind {kind!r}")


def kernel_coefficients(kind: str, n: int, m: int | None = None) -> list[int]:
    """Exact integer coefficients of f, index = power of t."""
    count = _check_validity(kind, n, m)
    gap, const, weight = _KINDS[kind]
    coeffs = [0] * (n + gap + 1)
    coeffs[n + gap] += n
    coeffs[n] -= n + gap
    coeffs[0] += const
    for j in range(1, count + 1):
        c = weight * j
        coeffs[j + 1] -= c  # t^(k-1) (t-1)^2 = t^(k+1) - 2 t^k + t^(k-1)
        coeffs[j] += 2 * c
        coeffs[j - 1] -= c
    return coeffs


def kernel_residual(kind: str, n: int, m: int | None, t: float) -> float:
    """f(t), evaluated by Horner on the exact coefficient vector."""
    if t < 0:
        raise ConstraintError(f"kernel argument must be >= 0, got {t!r}")
    acc = 0.0
    for c in reversed(kernel_coefficients(kind, n, m)):
        acc = acc * t + c
    return acc


def kernel_scan(
    kind: str, n: int, m: int | None = None, t_max: float = 10.0, step: float = 1e-3
) -> tuple[float, float]:
    """Grid minimum of f over [0, t_max]; certifies f >= 0 up to the margin.

    Returns (min value, argmin).
    """
    if t_max <= 0 or step <= 0:
        raise ConstraintError("kernel scan needs t_max > 0 and step > 0")
    coeffs = kernel_coefficients(kind, n, m)
    grid = np.arange(0.0, t_max + 0.5 * step, step)
    values = np.polyval(np.array(coeffs[::-1], dtype=float), grid)
    idx = int(np.argmin(values))
    return float(values[idx]), float(grid[idx])


def kernel_validity_table(n_max: int = 10) -> list[tuple[str, int, int | None]]:
    """Every (kind, n, m) combination the certification sweep covers."""
    table: list[tuple[str, int, int | None]] = []
    for n in range(2, n_max + 1):
        table.append(("laplace2", n, None))
    for n in range(3, n_max + 1):
        for m in range(1, n):
            table.append(("general", n, m))
    for n in range(1, n_max + 1):
        for m in range(1, n + 1):
            table.append(("clamped", n, m))
    return table


def leading_term_dominates(kind: str, n: int, m: int | None = None, t: float = 10.0) -> bool:
    """True when the leading monomial n t^deg outweighs the absolute sum of all
    other terms at ``t``; documents that scanning beyond ``t`` is redundant."""
    coeffs = kernel_coefficients(kind, n, m)
    deg = len(coeffs) - 1
    lead = coeffs[deg] * t**deg
    rest = sum(abs(c) * t**i for i, c in enumerate(coeffs[:deg]))
    return lead >= rest
