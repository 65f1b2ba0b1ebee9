"""Bound families for the clamped plate (bilaplacian with clamped boundary).

Same conventions as the Laplace module: evaluations carry a term breakdown,
study variants are never silently preferred, and out-of-hypothesis
evaluations (e.g. the n = 1 beam fed to an n >= 2 statement) are permitted
but always flagged.

The band-sharpened families need a band matched to the (n+3)-monomial mass of
the spectral envelope, which is not computable from (n, k, domain) alone.
The default places the unit band at the same normalized scale the n-monomial
band uses, i.e. target = (laplace mass)^((n+3)/n); callers who want a
different placement pass an explicit band.
"""

from __future__ import annotations

import math

from .band import (
    BandData,
    band_power,
    cap_coefficient,
    normalized_mass,
    solve_band_parameter,
)
from .errors import ConstraintError
from .evaluation import BoundEvaluation, make_evaluation
from .geometry import SpectralConstants

__all__ = [
    "levine_protter_sum",
    "cheng_wei_sum",
    "cheng_wei_upper",
    "yy_tse_sum",
    "jixu_clamped_sum",
    "gamma_k_lower",
]


def _check_k(k: int) -> None:
    if not isinstance(k, int) or k < 1:
        raise ConstraintError(f"eigenvalue index k must be a positive integer, got {k!r}")


def _lp_mean(c: SpectralConstants, k: int) -> float:
    n = c.n
    return (n / (n + 4)) * 16.0 * math.pi**4 * k ** (4.0 / n) / (c.omega_n * c.volume) ** (4.0 / n)


def levine_protter_sum(c: SpectralConstants, k: int) -> BoundEvaluation:
    """Semiclassical clamped bound: sum_{i<=k} Gamma_i >= k times the mean value."""
    _check_k(k)
    return make_evaluation(
        "levine-protter", "bilaplace", k, [("weyl-mean*k", k * _lp_mean(c, k))]
    )


# (V/I) coefficients of the two inertia-corrected families.  Version 2 is the
# later, stronger form; version 1 subtracts small second-order corrections.
def _cw_coefficients(n: int, version: int) -> tuple[float, float]:
    if version == 2:
        ca = (n + 2) / (12.0 * n * (n + 4))
        cb = (n + 2) ** 2 / (1152.0 * n * (n + 4) ** 2)
    else:
        ca = (n + 2) / (12.0 * n * (n + 4)) - 1.0 / (1152.0 * n**2 * (n + 4))
        cb = 1.0 / (576.0 * n * (n + 4)) - 1.0 / (27648.0 * n**2 * (n + 2) * (n + 4))
    return ca, cb


def cheng_wei_sum(c: SpectralConstants, k: int, version: int = 2) -> BoundEvaluation:
    """Clamped sum bound with inertia corrections in V/I and (V/I)^2.

    Version 1 is stated for n >= 1; version 2 for n >= 2 (an n = 1 evaluation
    is allowed for study but flagged out-of-hypothesis).
    """
    _check_k(k)
    if version not in (1, 2):
        raise ConstraintError(f"cheng-wei version must be 1 or 2, got {version!r}")
    n = c.n
    c.require_inertia()
    ca, cb = _cw_coefficients(n, version)
    weyl2 = (n / (n + 2)) * 4.0 * math.pi**2 * k ** (2.0 / n) / (c.omega_n * c.volume) ** (2.0 / n)
    terms = [
        ("levine-protter", k * _lp_mean(c, k)),
        ("v-over-i", k * ca * c.v_over_i * weyl2),
        ("v-over-i^2", k * cb * c.v_over_i**2),
    ]
    return make_evaluation(
        f"cheng-wei-{version}",
        "bilaplace",
        k,
        terms,
        out_of_hypothesis=(version == 2 and n < 2),
        params=(("version", float(version)),),
    )


def cheng_wei_upper(
    c: SpectralConstants, k: int, r0: float, v_shell: float
) -> BoundEvaluation:
    """Upper envelope for the clamped sum, valid once k >= V r0^n.

    ``v_shell`` is the volume of the inner boundary shell of width 1/r0,
    supplied by the caller (it is not computable from V alone).
    """
    _check_k(k)
    n = c.n
    if r0 <= 0:
        raise ConstraintError(f"shell parameter r0 must be positive, got {r0!r}")
    if not 0.0 <= v_shell < c.volume:
        raise ConstraintError(
            f"shell volume must lie in [0, V) = [0, {c.volume!r}), got {v_shell!r}"
        )
    threshold = c.volume * r0**n
    if k < threshold:
        raise ConstraintError(
            f"upper envelope needs k >= V r0^n = {threshold!r}, got k={k}"
        )
    frac = v_shell / c.volume
    factor = (1.0 + 4.0 * (n + 4) * (n**2 + 2 * n + 6) / (n + 2) * frac) / (1.0 - frac) ** (
        (n + 4.0) / n
    )
    value = factor * k * _lp_mean(c, k)
    return make_evaluation(
        "cheng-wei-upper",
        "bilaplace",
        k,
        [("lp*shell-factor", value)],
        direction="upper",
        params=(("r0", float(r0)), ("v_shell", float(v_shell)), ("factor", factor)),
    )


def yy_tse_sum(c: SpectralConstants, k: int) -> BoundEvaluation:
    """Three-term clamped sum bound whose tail terms decay in powers of rho.

    Stated for n >= 2; n = 1 evaluations are permitted but flagged.
    """
    _check_k(k)
    n = c.n
    om, al, rho = c.omega_n, c.alpha, c.rho
    terms = [
        (
            "k^(n+4)/n",
            (n / (n + 4)) * om ** (-4.0 / n) * al ** (-4.0 / n) * k ** ((4.0 + n) / n),
        ),
        (
            "k^(n+2)/n",
            om ** (-2.0 / n) * al ** ((2.0 * n - 2) / n) * k ** ((n + 2.0) / n)
            / (3.0 * (n + 4) * rho**2),
        ),
        (
            "k^(n+1)/n",
            2.0 * om ** (-1.0 / n) * al ** ((3.0 * n - 1) / n) * k ** ((n + 1.0) / n)
            / (9.0 * (n + 4) * rho**3),
        ),
    ]
    return make_evaluation(
        "yy-tse", "bilaplace", k, terms, out_of_hypothesis=(n < 2)
    )


def _clamped_band(
    c: SpectralConstants, k: int, band_policy: str, band: BandData | None
) -> BandData:
    n = c.n
    if band is not None:
        if band.n_eff != n + 3:
            raise ConstraintError(
                f"clamped band override has n_eff={band.n_eff} but needs {n + 3}"
            )
        return band
    mass = normalized_mass(c, k, band_policy)
    return solve_band_parameter(n + 3, mass ** ((n + 3.0) / n))


def jixu_clamped_sum(
    c: SpectralConstants,
    k: int,
    m: int,
    band: BandData | None = None,
    band_policy: str = "isoperimetric",
    variant: str = "printed",
) -> BoundEvaluation:
    """Band-sharpened clamped sum bound for n >= m >= 1.

    The m = 1 route is stated only for n = 1 and needs k to clear the
    threshold 2 sqrt(2) S_3 / 5; (m = 1, n >= 2) is rejected rather than
    guessed.  For m >= 2 the final term is capped by c3.  ``corrected``
    multiplies the leading term by n/(n+4), the asymptotic statement's form.
    """
    _check_k(k)
    if variant not in ("printed", "corrected"):
        raise ConstraintError(f"unknown variant {variant!r}")
    n = c.n
    if not (n >= m >= 1):
        raise ConstraintError(f"this family requires n >= m >= 1, got n={n}, m={m}")
    band = _clamped_band(c, k, band_policy, band)
    s_m2 = band_power(band, m + 2)
    if m == 1:
        if n != 1:
            raise ConstraintError(
                "the m = 1 route is stated for n = 1 only; its hypothesis does not "
                f"cover n={n} (choose m >= 2 there)"
            )
        threshold = 2.0 * math.sqrt(2.0) * band_power(band, 3) / 5.0
        if k < threshold:
            raise ConstraintError(
                f"m = 1 route needs k >= 2*sqrt(2)*S_3/5 = {threshold!r}, got k={k}"
            )
        gamma_cap = 1.0
    else:
        gamma_cap = cap_coefficient("c3", n, m, k, band)
    om, al, rho = c.omega_n, c.alpha, c.rho
    lead_scale = n / (n + 4) if variant == "corrected" else 1.0
    terms = [
        (
            "k^(n+4)/n",
            lead_scale * om ** (-4.0 / n) * al ** (-4.0 / n) * k ** (1.0 + 4.0 / n),
        ),
        (
            "k^(n-m+4)/n",
            -om ** ((m - 4.0) / n) * 4.0 * s_m2 * al ** ((m * n + m - 4.0) / n)
            * k ** ((n - m + 4.0) / n) / ((n + 4) * rho**m),
        ),
        (
            "k^(n-m+3)/n",
            gamma_cap * om ** ((m - 3.0) / n) * 4.0 * m * s_m2
            * al ** (((m + 1.0) * n + m - 3) / n) * k ** ((n - m + 3.0) / n)
            / ((n + 4) * (m + 2) * rho ** (m + 1)),
        ),
    ]
    return make_evaluation(
        "ji-xu-clamped",
        "bilaplace",
        k,
        terms,
        variant=variant,
        band_policy=band_policy,
        params=(("m", float(m)), ("a", band.a), ("gamma-cap", gamma_cap)),
    )


def gamma_k_lower(
    c: SpectralConstants,
    k: int,
    m: int,
    band: BandData | None = None,
    band_policy: str = "isoperimetric",
    variant: str = "printed",
) -> BoundEvaluation:
    """Per-eigenvalue clamped bound: the sum bound divided by k."""
    ev = jixu_clamped_sum(c, k, m, band=band, band_policy=band_policy, variant=variant)
    terms = [(label, value / k) for label, value in ev.terms]
    return make_evaluation(
        "gamma-k",
        "bilaplace",
        k,
        terms,
        per_eigenvalue=True,
        variant=variant,
        band_policy=band_policy,
        params=ev.params,
    )
