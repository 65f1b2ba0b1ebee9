"""Finite-difference oracle for the clamped square plate.

No closed form exists for the 2-D clamped plate, so a 13-point bilaplacian
stencil with ghost-point reflection (enforcing u = du/dnu = 0) provides a
discretized reference.  This oracle is second-class by design: it never gates
acceptance on its own, it only sanity-checks the 2-D clamped families within
a stated tolerance.  Richardson extrapolation over grids h and h/2 removes
the leading O(h^2) error.
"""

from __future__ import annotations

import numpy as np

from ..errors import BudgetError, DomainError
from .types import Spectrum

__all__ = ["fd_clamped_square", "FD_RELATIVE_TOLERANCE", "FD_ORACLE_MAX_K"]

# Stated tolerance of this oracle when cross-checking bound families, and the
# index range within which the extrapolated eigenvalues are trusted to it.
FD_RELATIVE_TOLERANCE = 0.02
FD_ORACLE_MAX_K = 10

_MAX_GRID = 64
_STENCIL = (
    (0, 0, 20.0),
    (1, 0, -8.0), (-1, 0, -8.0), (0, 1, -8.0), (0, -1, -8.0),
    (1, 1, 2.0), (1, -1, 2.0), (-1, 1, 2.0), (-1, -1, 2.0),
    (2, 0, 1.0), (-2, 0, 1.0), (0, 2, 1.0), (0, -2, 1.0),
)

_eig_cache: dict[int, np.ndarray] = {}


def _reflect(i: int, n: int) -> int | None:
    """Map a stencil neighbor index to an interior index, or None if it drops.

    Boundary nodes carry u = 0 and vanish; ghost nodes one step outside
    reflect to their interior mirror (u(-h) = u(h)), which encodes the zero
    normal derivative.
    """
    if i == 0 or i == n:
        return None
    if i == -1:
        return 1
    if i == n + 1:
        return n - 1
    if 1 <= i <= n - 1:
        return i
    raise AssertionError(f"stencil reached index {i} on grid {n}")


def _unit_square_eigenvalues(grid: int) -> np.ndarray:
    cached = _eig_cache.get(grid)
    if cached is not None:
        return cached
    n = grid
    size = n - 1
    matrix = np.zeros((size * size, size * size))
    for i in range(1, n):
        for j in range(1, n):
            row = (i - 1) * size + (j - 1)
            for di, dj, coeff in _STENCIL:
                ri = _reflect(i + di, n)
                rj = _reflect(j + dj, n)
                if ri is None or rj is None:
                    continue
                matrix[row, (ri - 1) * size + (rj - 1)] += coeff
    h = 1.0 / n
    eigs = np.linalg.eigvalsh(matrix) / h**4
    head = np.sort(eigs)[: min(64, eigs.size)].copy()
    _eig_cache[grid] = head
    return head


def fd_clamped_square(grid: int, extrapolate: bool, count: int) -> Spectrum:
    """First ``count`` clamped-plate eigenvalues of the unit square.

    ``grid`` is the number of subintervals per side of the fine solve
    (dense eigensolve budget: grid <= 64).  With ``extrapolate`` the grid/2
    solve is Richardson-combined under the O(h^2) error model.
    """
    if grid < 8:
        raise DomainError(f"grid must be >= 8, got {grid!r}")
    if grid > _MAX_GRID:
        raise BudgetError(f"grid {grid} exceeds the dense solve budget ({_MAX_GRID})")
    if count < 1:
        raise DomainError(f"count must be >= 1, got {count!r}")
    fine = _unit_square_eigenvalues(grid)
    if count > fine.size:
        raise DomainError(f"grid {grid} resolves only {fine.size} trusted modes")
    if extrapolate:
        if grid % 2:
            raise DomainError("extrapolation pairs the grid with grid/2; use an even grid")
        coarse = _unit_square_eigenvalues(grid // 2)
        usable = min(count, coarse.size)
        values = np.sort((4.0 * fine[:usable] - coarse[:usable]) / 3.0)
        provenance = f"discretized(h=1/{grid},extrapolated)"
    else:
        values = fine[:count]
        provenance = f"discretized(h=1/{grid})"
    return Spectrum.from_values("bilaplace", values[:count], provenance)
