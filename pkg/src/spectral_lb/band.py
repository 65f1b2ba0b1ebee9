"""Band parameter of the moment-matching equation and the derived coefficients.

The unit-width band [a, a+1] is placed so that its monomial mass matches a
prescribed target:

    integral_a^{a+1} s^n_eff ds  =  ((a+1)^{n_eff+1} - a^{n_eff+1}) / (n_eff+1)
                                 =  target.

Everything downstream of the rearrangement step consumes ``a`` only through
the power differences S_l = (a+1)^l - a^l, so those are cached on the band.
The cap coefficients c1/c2/c3 that keep the final positive term of each bound
family honest, and the slowly decaying exponent of the boundary-term family,
also live here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import BandInfeasible, ConstraintError, MissingInertiaError
from .geometry import TWO_PI, SpectralConstants

__all__ = [
    "BandData",
    "solve_band_parameter",
    "band_from_a",
    "band_power",
    "normalized_mass",
    "cap_coefficient",
    "kvw_epsilon",
]


@dataclass
class BandData:
    """Solved band: exponent of the defining equation, its target mass, the
    parameter ``a`` and a cache of the power differences S_l."""

    n_eff: int
    target: float
    a: float
    S: dict[int, float] = field(default_factory=dict)


def _power_difference(a: float, l: int) -> float:
    # (a+1)^l - a^l via the binomial expansion: all terms positive, so no
    # cancellation for large a (the direct difference loses ~a/2^52 absolute).
    acc = 0.0
    for j in range(l - 1, -1, -1):
        acc = acc * a + math.comb(l, j)
    return acc


def _band_mass(a: float, p: int) -> float:
    # integral of s^(p-1) over [a, a+1]
    return _power_difference(a, p) / p


def solve_band_parameter(n_eff: int, target: float) -> BandData:
    """Solve the defining band equation for a >= 0.

    The left side is strictly increasing in ``a`` with minimum 1/(n_eff+1) at
    a = 0, so a solution exists iff target >= 1/(n_eff+1); anything smaller
    raises :class:`BandInfeasible` naming the threshold.  Deterministic
    bracketed bisection down to relative width 1e-15, then two Newton polish
    steps; for n_eff = 1 the closed form a = target - 1/2 is returned as is.
    """
    if not isinstance(n_eff, int) or n_eff < 1:
        raise ConstraintError(f"band exponent n_eff must be a positive integer, got {n_eff!r}")
    if not math.isfinite(target) or target <= 0:
        raise ConstraintError(f"band target must be a positive finite real, got {target!r}")
    p = n_eff + 1
    if target < 1.0 / p:
        raise BandInfeasible(n_eff, target)
    if target == 1.0 / p:
        a = 0.0
    elif n_eff == 1:
        a = target - 0.5
    else:
        lo = 0.0
        hi = max(1.0, target ** (1.0 / n_eff))
        while _band_mass(hi, p) < target:  # defensive; the bound above suffices
            hi *= 2.0
        while hi - lo > 1e-15 * (1.0 + lo):
            mid = 0.5 * (lo + hi)
            if _band_mass(mid, p) < target:
                lo = mid
            else:
                hi = mid
        a = 0.5 * (lo + hi)
        for _ in range(2):
            slope = _power_difference(a, n_eff)
            if slope <= 0:
                break
            a -= (_band_mass(a, p) - target) / slope
            if a < 0.0:
                a = 0.0
    residual = abs(_band_mass(a, p) - target)
    if residual > 1e-12 * max(1.0, target):
        raise ArithmeticError(
            f"band solve failed to converge: residual {residual!r} at a={a!r}, "
            f"n_eff={n_eff}, target={target!r}"
        )
    return BandData(n_eff=n_eff, target=target, a=a)


def band_from_a(n_eff: int, a: float) -> BandData:
    """Band with an explicitly chosen parameter; the target is derived from it."""
    if not isinstance(n_eff, int) or n_eff < 1:
        raise ConstraintError(f"band exponent n_eff must be a positive integer, got {n_eff!r}")
    if a < 0 or not math.isfinite(a):
        raise ConstraintError(f"band parameter must be a nonnegative real, got {a!r}")
    return BandData(n_eff=n_eff, target=_band_mass(a, n_eff + 1), a=a)


def band_power(band: BandData, l: int) -> float:
    """S_l = (a+1)^l - a^l, cached on the band.  Always >= 1 for a >= 0."""
    if not isinstance(l, int) or l < 1:
        raise ConstraintError(f"band power exponent must be a positive integer, got {l!r}")
    cached = band.S.get(l)
    if cached is None:
        cached = _power_difference(band.a, l)
        band.S[l] = cached
    return cached


def normalized_mass(constants: SpectralConstants, k: int, policy: str = "isoperimetric") -> float:
    """Right-hand side fed to the band equation for eigenvalue index k.

    After rescaling the decreasing spectral envelope to unit height and unit
    slope cap, its n-th monomial mass becomes (k/omega_n) rho^n / alpha^(n+1).
    Under ``isoperimetric`` the volume-only cap rho cancels every power of V,
    leaving k (2 pi)^n / omega_n^2; under ``inertia`` the sharper cap
    2 (2 pi)^{-n} sqrt(V I) is used instead and the value depends on V/I.
    """
    if k < 1:
        raise ConstraintError(f"eigenvalue index k must be >= 1, got {k!r}")
    n = constants.n
    if policy == "isoperimetric":
        return k * TWO_PI**n / constants.omega_n**2
    if policy == "inertia":
        if constants.rho_inertia is None:
            raise MissingInertiaError(
                "band policy 'inertia' needs the domain's moment of inertia"
            )
        return (k / constants.omega_n) * constants.rho_inertia**n / constants.alpha ** (n + 1)
    raise ConstraintError(f"unknown band policy {policy!r}; expected 'isoperimetric' or 'inertia'")


def cap_coefficient(kind: str, n: int, m: int, k: int, band: BandData) -> float:
    """Largest admissible cap on the final positive term of a bound family.

    c1 closes the two-sided monotonicity argument of the n >= 2 sum bound;
    c2 its higher-order analogue (n >= m+1 >= 3); c3 the clamped analogue
    (n >= m >= 2).  All are clipped to 1.
    """
    if k < 1:
        raise ConstraintError(f"eigenvalue index k must be >= 1, got {k!r}")
    root2 = math.sqrt(2.0)
    if kind == "c1":
        if n < 2:
            raise ConstraintError(f"cap c1 requires n >= 2, got n={n}")
        s3 = band_power(band, 3)
        s4 = band_power(band, 4)
        first = 4.0 * root2 * n * s3 * k ** (1.0 / n) / ((3 * n + 1) * s4)
        second = 4.0 * root2 * (n + 2) * k ** (3.0 / n) / ((3 * n + 1) * s4)
        return min(1.0, max(first, second))
    if kind == "c2":
        if not (n >= m + 1 >= 3):
            raise ConstraintError(f"cap c2 requires n >= m+1 >= 3, got n={n}, m={m}")
        s_m2 = band_power(band, m + 2)
        s_m3 = band_power(band, m + 3)
        value = (
            ((m + 1) * n + m - 1)
            / ((m + 2) * n + m)
            * root2
            * (s_m2 / s_m3)
            * ((m + 3) / (m + 1))
            * k ** (1.0 / n)
        )
        return min(1.0, value)
    if kind == "c3":
        if not (n >= m >= 2):
            raise ConstraintError(f"cap c3 requires n >= m >= 2, got n={n}, m={m}")
        s_m2 = band_power(band, m + 2)
        value = (
            2.0 ** ((m + 1) / 2.0)
            * (n + 2)
            * (m + 2)
            * k ** ((m + 1.0) / n)
            / (s_m2 * ((m + 1) * n + m - 3))
        )
        return min(1.0, value)
    raise ConstraintError(f"unknown cap kind {kind!r}; expected 'c1', 'c2' or 'c3'")


# Constant of the boundary-term exponent; evaluated once at import to full
# double precision.
KVW_C = math.sqrt(3.0 * math.pi / 14.0) * 1e-11


def kvw_epsilon(k: int) -> float:
    """Slowly decaying exponent 2 / sqrt(log2(2 pi k / c)) of the boundary term."""
    if k < 1:
        raise ConstraintError(f"eigenvalue index k must be >= 1, got {k!r}")
    return 2.0 / math.sqrt(math.log2(TWO_PI * k / KVW_C))
