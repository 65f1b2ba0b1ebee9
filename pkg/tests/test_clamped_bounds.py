import math

import pytest
from hypothesis import given, strategies as st

from spectral_lb import (
    Abstract,
    Box,
    ConstraintError,
    DomainSpec,
    MissingInertiaError,
    band_from_a,
    beam_spectrum,
    cheng_wei_sum,
    cheng_wei_upper,
    domain_constants,
    gamma_k_lower,
    jixu_clamped_sum,
    levine_protter_sum,
    yy_tse_sum,
)

INTERVAL = domain_constants(DomainSpec(1, Box((1.0,))))
SQUARE = domain_constants(DomainSpec(2, Box((1.0, 1.0))))

REL = 1e-12


def close(a, b, rel=REL):
    return abs(a - b) <= rel * max(1.0, abs(a), abs(b))


def test_levine_protter_values():
    assert close(levine_protter_sum(INTERVAL, 1).value, math.pi**4 / 5)
    assert close(levine_protter_sum(SQUARE, 1).value, 16 * math.pi**2 / 3)
    beam = beam_spectrum(1.0, 1)
    assert levine_protter_sum(INTERVAL, 1).value <= beam.eigenvalue(1)


def test_cheng_wei_v2_square_term_values():
    ev = cheng_wei_sum(SQUARE, 1, version=2)
    terms = dict(ev.terms)
    assert close(terms["levine-protter"], 16 * math.pi**2 / 3)
    # (n+2)/(12 n (n+4)) * (V/I) * (n/(n+2)) 4 pi^2 / (omega V)^(2/n) = pi/3
    assert close(terms["v-over-i"], math.pi / 3)
    # (n+2)^2/(1152 n (n+4)^2) * (V/I)^2 = 1/144
    assert close(terms["v-over-i^2"], 1 / 144)
    assert ev.out_of_hypothesis is False


def test_cheng_wei_version_coefficients_v2_stronger():
    n = 2
    cb2 = (n + 2) ** 2 / (1152 * n * (n + 4) ** 2)
    cb1 = 1 / (576 * n * (n + 4)) - 1 / (27648 * n**2 * (n + 2) * (n + 4))
    assert cb2 > cb1
    v2 = cheng_wei_sum(SQUARE, 3, version=2).value
    v1 = cheng_wei_sum(SQUARE, 3, version=1).value
    assert v2 > v1


def test_cheng_wei_reduces_to_levine_protter_without_inertia_weight():
    # enormous inertia sends V/I to zero and both versions to the base bound
    flat = domain_constants(DomainSpec(2, Abstract(volume=1.0, inertia=1e12)))
    lp = levine_protter_sum(flat, 2).value
    assert abs(cheng_wei_sum(flat, 2, version=1).value - lp) < 1e-9
    assert abs(cheng_wei_sum(flat, 2, version=2).value - lp) < 1e-9


def test_cheng_wei_validation():
    bare = domain_constants(DomainSpec(2, Abstract(volume=1.0)))
    with pytest.raises(MissingInertiaError):
        cheng_wei_sum(bare, 1)
    with pytest.raises(ConstraintError):
        cheng_wei_sum(SQUARE, 1, version=3)
    assert cheng_wei_sum(INTERVAL, 1, version=1).out_of_hypothesis is False
    assert cheng_wei_sum(INTERVAL, 1, version=2).out_of_hypothesis is True


def test_cheng_wei_upper_factor_and_validity():
    ev = cheng_wei_upper(SQUARE, 100, r0=10.0, v_shell=0.36)
    factor = dict(ev.params)["factor"]
    assert close(factor, (1 + 84 * 0.36) / 0.64**3)
    assert close(ev.value, factor * levine_protter_sum(SQUARE, 100).value)
    assert ev.direction == "upper"
    with pytest.raises(ConstraintError):
        cheng_wei_upper(SQUARE, 99, r0=10.0, v_shell=0.36)  # k < V r0^n = 100
    with pytest.raises(ConstraintError):
        cheng_wei_upper(SQUARE, 100, r0=10.0, v_shell=1.0)  # shell fills the domain
    # degenerate shell reduces to the mean-value envelope
    assert close(cheng_wei_upper(SQUARE, 100, 10.0, 0.0).value,
                 levine_protter_sum(SQUARE, 100).value)


def test_cheng_wei_upper_dominates_beam_sums():
    beam = beam_spectrum(1.0, 50)
    # interval: width-1/r0 shell from both ends
    r0, shell = 4.0, 0.5
    for k in range(4, 51):
        ev = cheng_wei_upper(INTERVAL, k, r0=r0, v_shell=shell)
        assert ev.value >= beam.partial_sum(k)


def test_yy_tse_values():
    ev = yy_tse_sum(INTERVAL, 1)
    expected = math.pi**4 / 5 + 4 * math.pi**2 / 15 + 16 * math.pi / 45
    assert close(ev.value, expected)
    assert ev.out_of_hypothesis is True  # stated for n >= 2
    assert ev.value <= beam_spectrum(1.0, 1).eigenvalue(1)
    sq = yy_tse_sum(SQUARE, 1)
    terms = dict(sq.terms)
    assert close(terms["k^(n+4)/n"], 16 * math.pi**2 / 3)
    assert close(terms["k^(n+2)/n"], 2 * math.pi**2 / 9)
    assert close(terms["k^(n+1)/n"], 2 * math.pi**2 / 27)
    assert sq.out_of_hypothesis is False


def test_yy_tse_leading_term_is_levine_protter():
    for c, k in ((INTERVAL, 3), (SQUARE, 11)):
        lead = dict(yy_tse_sum(c, k).terms)["k^(n+4)/n"]
        assert close(lead, levine_protter_sum(c, k).value)
        assert yy_tse_sum(c, k).value >= levine_protter_sum(c, k).value


@given(
    st.integers(min_value=1, max_value=6),
    st.floats(min_value=0.05, max_value=50.0),
    st.integers(min_value=1, max_value=400),
)
def test_yy_tse_dominates_levine_protter_everywhere(n, volume, k):
    c = domain_constants(DomainSpec(n, Abstract(volume=volume)))
    # both extra terms are positive for every domain and index
    assert yy_tse_sum(c, k).value > levine_protter_sum(c, k).value


def test_jixu_clamped_interval_with_zero_band():
    band = band_from_a(4, 0.0)  # n_eff = n + 3 = 4, all S_l = 1
    ev = jixu_clamped_sum(INTERVAL, 1, m=1, band=band)
    terms = dict(ev.terms)
    assert close(terms["k^(n+4)/n"], math.pi**4)
    assert close(terms["k^(n-m+4)/n"], -8 * math.pi**3 / 5)
    assert close(terms["k^(n-m+3)/n"], 16 * math.pi**2 / 15)
    expected = math.pi**4 - 8 * math.pi**3 / 5 + 16 * math.pi**2 / 15
    assert close(ev.value, expected)
    assert ev.value <= beam_spectrum(1.0, 1).eigenvalue(1)


def test_jixu_clamped_case1_threshold():
    band = band_from_a(4, 0.0)
    # S_3 = 1: threshold 2 sqrt(2)/5 ~ 0.566 <= k = 1 passes
    jixu_clamped_sum(INTERVAL, 1, m=1, band=band)
    # the default mass policy puts the band far out; k = 1 falls below the
    # threshold and the rejection names it
    with pytest.raises(ConstraintError) as err:
        jixu_clamped_sum(INTERVAL, 1, m=1)
    assert "2*sqrt(2)*S_3/5" in str(err.value)


def test_jixu_clamped_m1_requires_n1():
    with pytest.raises(ConstraintError) as err:
        jixu_clamped_sum(SQUARE, 5, m=1)
    assert "n = 1" in str(err.value)
    with pytest.raises(ConstraintError):
        jixu_clamped_sum(INTERVAL, 1, m=2)  # n >= m fails


def test_jixu_clamped_case2_uses_cap():
    ev = jixu_clamped_sum(SQUARE, 1, m=2)
    cap = dict(ev.params)["gamma-cap"]
    assert 0.0 < cap <= 1.0
    corrected = jixu_clamped_sum(SQUARE, 1, m=2, variant="corrected")
    lead = dict(ev.terms)["k^(n+4)/n"]
    lead_corrected = dict(corrected.terms)["k^(n+4)/n"]
    assert close(lead_corrected, lead * 2 / 6)  # n/(n+4) at n = 2


def test_jixu_clamped_zero_band_m2():
    band = band_from_a(5, 0.0)
    ev = jixu_clamped_sum(SQUARE, 1, m=2, band=band)
    # S_{m+2} = 1 and the cap saturates at 1 for the zero band
    assert dict(ev.params)["gamma-cap"] == 1.0


def test_gamma_k_values():
    band = band_from_a(4, 0.0)
    assert close(
        gamma_k_lower(INTERVAL, 1, m=1, band=band).value,
        jixu_clamped_sum(INTERVAL, 1, m=1, band=band).value,
    )
    ev2 = gamma_k_lower(INTERVAL, 2, m=1, band=band)
    expected = (
        math.pi**4 * 2**4 - (8 * math.pi**3 / 5) * 2**3 + (16 * math.pi**2 / 15) * 2**2
    )
    assert close(ev2.value, expected)
    beam = beam_spectrum(1.0, 2)
    assert ev2.value <= beam.eigenvalue(2)
    assert ev2.per_eigenvalue is True


def test_gamma_k_middle_exponent_vanishes_at_m4_n4():
    c4 = domain_constants(DomainSpec(4, Box((1.0, 1.0, 1.0, 1.0))))
    band = band_from_a(7, 1.0)
    t_16 = dict(gamma_k_lower(c4, 16, m=4, band=band).terms)["k^(n-m+4)/n"]
    t_1 = dict(gamma_k_lower(c4, 1, m=4, band=band).terms)["k^(n-m+4)/n"]
    assert close(t_16, t_1)  # per-eigenvalue exponent (4-m)/n = 0


@pytest.mark.parametrize("factor", [0.5, 2.0])
def test_clamped_scaling_covariance(factor):
    base_spec = DomainSpec(2, Box((1.0, 1.0)))
    base = domain_constants(base_spec)
    scaled = domain_constants(base_spec.scaled(factor))
    k = 5
    band = band_from_a(5, 0.7)
    cases = [
        (levine_protter_sum(base, k), levine_protter_sum(scaled, k)),
        (cheng_wei_sum(base, k, 1), cheng_wei_sum(scaled, k, 1)),
        (cheng_wei_sum(base, k, 2), cheng_wei_sum(scaled, k, 2)),
        (yy_tse_sum(base, k), yy_tse_sum(scaled, k)),
        (jixu_clamped_sum(base, k, m=2), jixu_clamped_sum(scaled, k, m=2)),
        (jixu_clamped_sum(base, k, m=2, band=band), jixu_clamped_sum(scaled, k, m=2, band=band)),
        (gamma_k_lower(base, k, m=2), gamma_k_lower(scaled, k, m=2)),
        (
            cheng_wei_upper(base, 30, r0=5.0, v_shell=0.2),
            cheng_wei_upper(scaled, 30, r0=5.0 / factor, v_shell=0.2 * factor**2),
        ),
    ]
    for before, after in cases:
        assert abs(after.value - before.value / factor**4) <= 1e-10 * abs(before.value), (
            before.family
        )


def test_breakdowns_sum_to_values():
    evaluations = [
        levine_protter_sum(SQUARE, 6),
        cheng_wei_sum(SQUARE, 6, 1),
        cheng_wei_sum(SQUARE, 6, 2),
        cheng_wei_upper(SQUARE, 100, 10.0, 0.36),
        yy_tse_sum(SQUARE, 6),
        jixu_clamped_sum(SQUARE, 6, m=2),
        gamma_k_lower(SQUARE, 6, m=2),
    ]
    for ev in evaluations:
        total = math.fsum(v for _, v in ev.terms)
        assert abs(ev.value - total) <= 1e-12 * max(1.0, abs(ev.value)), ev.family


def test_lower_families_hold_on_beam():
    beam = beam_spectrum(1.0, 50)
    for k in range(1, 51):
        assert levine_protter_sum(INTERVAL, k).value <= beam.partial_sum(k) + 1e-9
        assert cheng_wei_sum(INTERVAL, k, 1).value <= beam.partial_sum(k) + 1e-9
        assert cheng_wei_sum(INTERVAL, k, 2).value <= beam.partial_sum(k) + 1e-9
        assert yy_tse_sum(INTERVAL, k).value <= beam.partial_sum(k) + 1e-9


def test_levine_protter_ratio_climbs_on_beam():
    beam = beam_spectrum(1.0, 200)
    r20 = levine_protter_sum(INTERVAL, 20).value / beam.partial_sum(20)
    r200 = levine_protter_sum(INTERVAL, 200).value / beam.partial_sum(200)
    assert r20 < r200 < 1.0
    assert 0.9 <= r200
