"""Lower-bound families for sums and single eigenvalues of the Dirichlet Laplacian.

Every function takes the precomputed :class:`SpectralConstants` of a domain
and an eigenvalue index k, and returns a :class:`BoundEvaluation` whose terms
sum (compensated) to the bound value.  The classical families need nothing
else; the refined families build a band parameter from the configured mass
policy and cap their final positive term with the matching cap coefficient.

Families whose middle coefficient circulates in two conventions are evaluated
in two variants: ``printed`` (the commonly stated form) and ``corrected``
(the form the underlying integral identity produces).  Neither variant is
silently preferred; the harness reports both.
"""

from __future__ import annotations

import math

from .band import (
    BandData,
    band_power,
    cap_coefficient,
    kvw_epsilon,
    normalized_mass,
    solve_band_parameter,
)
from .errors import ConstraintError
from .evaluation import BoundEvaluation, make_evaluation
from .geometry import SpectralConstants

__all__ = [
    "li_yau_sum",
    "polya_reference",
    "melas_sum",
    "kvw_sum",
    "jixu_n2_sum",
    "jixu_mt_sum",
    "jixu_gmt_sum",
    "lambda_k_lower",
    "epsilon_form_threshold",
]

_VARIANTS = ("printed", "corrected")


def _check_k(k: int) -> None:
    if not isinstance(k, int) or k < 1:
        raise ConstraintError(f"eigenvalue index k must be a positive integer, got {k!r}")


def _check_variant(variant: str) -> None:
    if variant not in _VARIANTS:
        raise ConstraintError(f"unknown variant {variant!r}; expected one of {_VARIANTS}")


def _weyl_mean(c: SpectralConstants, k: int) -> float:
    n = c.n
    return (n / (n + 2)) * 4.0 * math.pi**2 * k ** (2.0 / n) / (c.omega_n * c.volume) ** (2.0 / n)


def li_yau_sum(c: SpectralConstants, k: int) -> BoundEvaluation:
    """Classical semiclassical bound: sum_{i<=k} lambda_i >= k times the Weyl mean."""
    _check_k(k)
    return make_evaluation("li-yau", "laplace", k, [("weyl-mean*k", k * _weyl_mean(c, k))])


def polya_reference(c: SpectralConstants, k: int, tiling: bool = False) -> BoundEvaluation:
    """Per-eigenvalue reference curve 4 pi^2 (k/(omega_n V))^(2/n).

    Proved for planar tiling domains; conjectural everywhere else, and the
    evaluation says so unless the caller marks the domain as a 2-D tiler.
    """
    _check_k(k)
    n = c.n
    value = 4.0 * math.pi**2 * k ** (2.0 / n) / (c.omega_n * c.volume) ** (2.0 / n)
    return make_evaluation(
        "polya-ref",
        "laplace",
        k,
        [("weyl-per-eigenvalue", value)],
        per_eigenvalue=True,
        conjectural=not (tiling and n == 2),
    )


def melas_sum(c: SpectralConstants, k: int, c_n: float) -> BoundEvaluation:
    """Semiclassical bound plus an inertia correction k c_n V/I.

    The dimensional constant c_n is not pinned down by its source, so it is a
    required explicit parameter and is echoed in the evaluation.
    """
    _check_k(k)
    if c_n < 0:
        raise ConstraintError(f"melas constant c_n must be >= 0, got {c_n!r}")
    c.require_inertia()
    terms = [
        ("li-yau", k * _weyl_mean(c, k)),
        ("inertia", k * c_n * c.v_over_i),
    ]
    return make_evaluation("melas", "laplace", k, terms, params=(("c_n", float(c_n)),))


def kvw_sum(c: SpectralConstants, k: int, a0: float, C: float) -> BoundEvaluation:
    """Planar bound with a boundary term of order k^(3/2 - eps(k)).

    Only n = 2 is covered; C trades off against the inertia share a0 and
    depends on boundary regularity, so both are required explicit parameters.
    """
    _check_k(k)
    if c.n != 2:
        raise ConstraintError(f"this family is specific to n = 2, got n={c.n}")
    if not 0.0 <= a0 <= 1.0:
        raise ConstraintError(f"a0 must lie in [0, 1], got {a0!r}")
    if C < 0:
        raise ConstraintError(f"boundary constant C must be >= 0, got {C!r}")
    inertia = c.require_inertia()
    eps = kvw_epsilon(k)
    terms = [
        ("leading", 2.0 * math.pi * k**2 / c.volume),
        ("boundary", C * c.volume ** (-1.5) * k ** (1.5 - eps)),
        ("inertia", (1.0 - a0) * c.volume * k / (32.0 * inertia)),
    ]
    params = (("a0", float(a0)), ("C", float(C)), ("epsilon_k", eps))
    return make_evaluation("kvw", "laplace", k, terms, params=params)


def jixu_n2_sum(c: SpectralConstants, k: int) -> BoundEvaluation:
    """Four-term planar refinement of the semiclassical sum bound.

    For V = 1 the terms reduce to 2 pi k^2, pi k^(3/2), -5 pi k / 8 and
    pi sqrt(k) / 8; the positive k^(3/2) term is what beats the boundary-term
    family for every k.
    """
    _check_k(k)
    n = c.n
    if n != 2:
        raise ConstraintError(f"this family is specific to n = 2, got n={c.n}")
    om, al, rho = c.omega_n, c.alpha, c.rho
    terms = [
        (
            "k^2",
            (n / (n + 2)) * om ** (-2.0 / n) * al ** (-2.0 / n) * k ** ((n + 2.0) / n),
        ),
        (
            "k^3/2",
            2.0 * om ** (-1.0 / n) * al ** ((n - 1.0) / n) * k ** ((n + 1.0) / n)
            / ((n + 2) * rho),
        ),
        ("k", -5.0 * al**2 * k / (2.0 * (n + 2) * rho**2)),
        (
            "k^1/2",
            om ** (1.0 / n) * al ** ((3.0 * n + 1) / n) * k ** ((n - 1.0) / n)
            / ((n + 2) * rho**3),
        ),
    ]
    return make_evaluation("ji-xu-n2", "laplace", k, terms)


def epsilon_form_threshold(eps: float) -> int:
    """Smallest k at which the four-term planar sum bound dominates the
    two-term relaxation 2 pi k^2/V + (pi - eps) k^(3/2)/V.

    The gap is (eps k^(3/2) - 5 pi k/8 + pi sqrt(k)/8)/V, so the threshold is
    volume-independent and the once-crossed form stays dominated.  Reported
    empirically because no closed threshold is assumed.
    """
    if not 0.0 < eps < math.pi:
        raise ConstraintError(f"epsilon must lie in (0, pi), got {eps!r}")

    def dominated(k: int) -> bool:
        return eps * k**1.5 + math.pi * math.sqrt(k) / 8.0 >= 5.0 * math.pi * k / 8.0

    k = 1
    while not dominated(k):
        k *= 2
    lo, hi = k // 2, k  # first dominated index lies in (lo, hi]
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if dominated(mid):
            hi = mid
        else:
            lo = mid
    return hi


def _resolve_band(
    c: SpectralConstants, k: int, n_eff: int, band_policy: str, band: BandData | None
) -> BandData:
    if band is not None:
        if band.n_eff != n_eff:
            raise ConstraintError(
                f"band override has n_eff={band.n_eff} but this family needs {n_eff}"
            )
        return band
    return solve_band_parameter(n_eff, normalized_mass(c, k, band_policy))


def jixu_mt_sum(
    c: SpectralConstants,
    k: int,
    band_policy: str = "isoperimetric",
    variant: str = "printed",
    band: BandData | None = None,
) -> BoundEvaluation:
    """Band-sharpened sum bound for n >= 2.

    The middle term carries the printed/corrected coefficient split (1 versus
    the derivation's 2 on the cubic power difference); the last term is capped
    by c1.
    """
    _check_k(k)
    _check_variant(variant)
    n = c.n
    if n < 2:
        raise ConstraintError(f"this family requires n >= 2, got n={n}")
    band = _resolve_band(c, k, n, band_policy, band)
    s3, s4 = band_power(band, 3), band_power(band, 4)
    c1 = cap_coefficient("c1", n, 1, k, band)
    factor = 2.0 if variant == "corrected" else 1.0
    om, al, rho = c.omega_n, c.alpha, c.rho
    terms = [
        ("k^(n+2)/n", om ** (-2.0 / n) * al ** (-2.0 / n) * k ** ((n + 2.0) / n)),
        ("k", -factor * s3 * al**2 * k / ((n + 2) * rho**2)),
        (
            "k^(n-1)/n",
            c1 * om ** (1.0 / n) * s4 * al ** ((3.0 * n + 1) / n) * k ** ((n - 1.0) / n)
            / ((n + 2) * rho**3),
        ),
    ]
    return make_evaluation(
        "ji-xu-mt",
        "laplace",
        k,
        terms,
        variant=variant,
        band_policy=band_policy,
        params=(("a", band.a), ("c1", c1)),
    )


def jixu_gmt_sum(
    c: SpectralConstants,
    k: int,
    m: int,
    band_policy: str = "isoperimetric",
    variant: str = "printed",
    band: BandData | None = None,
) -> BoundEvaluation:
    """Higher-order band-sharpened sum bound for n >= m+1 >= 3.

    ``corrected`` multiplies the leading term by n/(n+2), matching the
    asymptotic statement that consumes this bound.  The breakdown also echoes
    that statement's two leading terms for asymptotic comparison.
    """
    _check_k(k)
    _check_variant(variant)
    n = c.n
    if not (n >= m + 1 >= 3):
        raise ConstraintError(f"this family requires n >= m+1 >= 3, got n={n}, m={m}")
    band = _resolve_band(c, k, n, band_policy, band)
    s_m2, s_m3 = band_power(band, m + 2), band_power(band, m + 3)
    c2 = cap_coefficient("c2", n, m, k, band)
    om, al, rho = c.omega_n, c.alpha, c.rho
    lead_scale = n / (n + 2) if variant == "corrected" else 1.0
    terms = [
        (
            "k^(n+2)/n",
            lead_scale * om ** (-2.0 / n) * al ** (-2.0 / n) * k ** ((n + 2.0) / n),
        ),
        (
            "k^(n-m+1)/n",
            -2.0 * om ** ((m - 1.0) / n) * s_m2 * al ** (((m + 1.0) * n + m - 1) / n)
            * k ** ((n - m + 1.0) / n) / ((n + 2) * rho ** (m + 1)),
        ),
        (
            "k^(n-m)/n",
            c2 * 2.0 * om ** (m / float(n)) * (m + 1) * s_m3
            * al ** (((m + 2.0) * n + m) / n) * k ** ((n - m + 0.0) / n)
            / ((n + 2) * (m + 3) * rho ** (m + 2)),
        ),
    ]
    asym_lead = (n / (n + 2)) * om ** (-2.0 / n) * al ** (-2.0 / n) * k ** ((n + 2.0) / n)
    asym_second = (
        2.0 * om ** (-1.0 / n) * al ** ((n - 1.0) / n) * k ** ((n + 1.0) / n) / ((n + 2) * rho)
    )
    return make_evaluation(
        "ji-xu-gmt",
        "laplace",
        k,
        terms,
        variant=variant,
        band_policy=band_policy,
        params=(
            ("m", float(m)),
            ("a", band.a),
            ("c2", c2),
            ("asymptotic-lead", asym_lead),
            ("asymptotic-second", asym_second),
        ),
    )


def lambda_k_lower(
    c: SpectralConstants,
    k: int,
    source: str = "mt",
    m: int | None = None,
    band_policy: str = "isoperimetric",
    variant: str = "printed",
    band: BandData | None = None,
) -> BoundEvaluation:
    """Per-eigenvalue bound: the matching sum bound divided by k.

    Since lambda_k is the largest of the first k eigenvalues, k lambda_k
    dominates the partial sum, so every k-exponent of the source drops by one.
    """
    _check_k(k)
    if source == "mt":
        ev = jixu_mt_sum(c, k, band_policy=band_policy, variant=variant, band=band)
        family = "lambda-k-mt"
    elif source == "gmt":
        if m is None:
            raise ConstraintError("per-eigenvalue gmt bound needs the order m")
        ev = jixu_gmt_sum(c, k, m, band_policy=band_policy, variant=variant, band=band)
        family = "lambda-k-gmt"
    else:
        raise ConstraintError(f"unknown per-eigenvalue source {source!r}; expected 'mt' or 'gmt'")
    terms = [(label, value / k) for label, value in ev.terms]
    return make_evaluation(
        family,
        "laplace",
        k,
        terms,
        per_eigenvalue=True,
        variant=variant,
        band_policy=band_policy,
        params=ev.params,
    )
