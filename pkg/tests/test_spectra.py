import math

import pytest
from hypothesis import given, settings, strategies as st

from spectral_lb import (
    Box,
    BudgetError,
    DomainError,
    DomainSpec,
    Spectrum,
    ball_spectrum,
    beam_frequencies,
    beam_spectrum,
    bessel_j,
    bessel_zero,
    box_spectrum,
    domain_constants,
    fd_clamped_square,
    levine_protter_sum,
    li_yau_sum,
    weyl_reference,
)
from spectral_lb.spectra.lattice import box_counting_function


def brute_force_box(lengths, count, per_axis=40):
    """Independent oracle: plain per-axis nested loops, oversized grid."""
    values = []

    def rec(axis, acc):
        if axis == len(lengths):
            values.append(math.pi**2 * acc)
            return
        for m in range(1, per_axis + 1):
            rec(axis + 1, acc + (m / lengths[axis]) ** 2)

    rec(0, 0.0)
    values.sort()
    return values[:count]


def test_box_spectrum_unit_square():
    spectrum = box_spectrum((1.0, 1.0), 5)
    expected = [2, 5, 5, 8, 10]
    for got, want in zip(spectrum.eigenvalues, expected):
        assert got == pytest.approx(want * math.pi**2, rel=1e-14)


def test_box_spectrum_against_brute_force():
    for lengths in ((1.0, 1.0), (1.0, 2.7), (0.4, 1.0, 1.3)):
        spectrum = box_spectrum(lengths, 30)
        oracle = brute_force_box(lengths, 30)
        for got, want in zip(spectrum.eigenvalues, oracle):
            assert got == pytest.approx(want, rel=1e-13)


def test_interval_spectrum_closed_form():
    spectrum = box_spectrum((1.0,), 10)
    for k, value in enumerate(spectrum.eigenvalues, start=1):
        assert value == pytest.approx(math.pi**2 * k**2, rel=1e-14)


def test_cube_ground_state():
    assert box_spectrum((1.0, 1.0, 1.0), 1).eigenvalue(1) == pytest.approx(
        3 * math.pi**2, rel=1e-14
    )


def test_four_dimensional_box():
    spectrum = box_spectrum((1.0, 1.0, 1.0, 1.0), 5)
    # (1,1,1,1) -> 4; (2,1,1,1) in four orientations -> 7
    expected = [4, 7, 7, 7, 7]
    for got, want in zip(spectrum.eigenvalues, expected):
        assert got == pytest.approx(want * math.pi**2, rel=1e-13)


def test_ball_truncation_inside_a_multiplet():
    spectrum = ball_spectrum(2, 1.0, 2)
    # the second mode is the first member of the doubly degenerate pair
    assert len(spectrum) == 2
    assert spectrum.eigenvalue(2) == pytest.approx(
        bessel_zero(1.0, 1) ** 2, rel=1e-13
    )


@settings(max_examples=25, deadline=None)
@given(
    st.lists(st.floats(min_value=0.3, max_value=3.0), min_size=1, max_size=3),
    st.integers(min_value=1, max_value=25),
)
def test_box_spectrum_complete_for_random_boxes(lengths, count):
    spectrum = box_spectrum(tuple(lengths), count)
    oracle = brute_force_box(tuple(lengths), count, per_axis=60)
    assert len(spectrum) == count
    for got, want in zip(spectrum.eigenvalues, oracle):
        assert got == pytest.approx(want, rel=1e-12)


def test_counting_function_two_term_envelope():
    for threshold in (1e3, 1e4, 1e5, 4 * math.pi * 1e5):
        count = box_counting_function((1.0, 1.0), threshold)
        assert abs(count - threshold / (4 * math.pi)) <= 2 * math.sqrt(threshold) + 10


def test_prefix_sums_recomputed_independently():
    spectrum = box_spectrum((1.0, 2.0), 40)
    acc = 0.0
    for value, prefix in zip(spectrum.eigenvalues, spectrum.prefix_sums):
        acc += value
        assert prefix == acc  # same accumulation order: exact equality


def test_bessel_point_values():
    assert bessel_j(0.0, 0.0) == 1.0
    assert bessel_j(1.0, 0.0) == 0.0
    assert abs(bessel_j(0.5, math.pi)) <= 1e-12  # sqrt(2/(pi x)) sin x at x = pi
    assert abs(bessel_j(0.0, 2.404825557695773)) <= 1e-12
    # closed form for the half-integer order
    for x in (0.7, 3.3, 20.0):
        want = math.sqrt(2 / (math.pi * x)) * math.sin(x)
        assert bessel_j(0.5, x) == pytest.approx(want, rel=1e-12, abs=1e-14)


@settings(max_examples=300)
@given(
    st.integers(min_value=0, max_value=60),
    st.floats(min_value=0.2, max_value=60.0),
)
def test_bessel_three_term_recurrence_across_branches(two_nu, x):
    # J_{nu-1}(x) + J_{nu+1}(x) = (2 nu / x) J_nu(x) ties together the series,
    # backward-recurrence, and trigonometric evaluation paths
    nu = two_nu / 2.0 + 1.0
    left = bessel_j(nu - 1.0, x) + bessel_j(nu + 1.0, x)
    right = 2 * nu / x * bessel_j(nu, x)
    assert left == pytest.approx(right, rel=1e-9, abs=1e-11)


def test_bessel_zero_reference_values():
    assert bessel_zero(0.0, 1) == pytest.approx(2.404825557695773, abs=1e-11)
    assert bessel_zero(1.0, 1) == pytest.approx(3.831705970207512, abs=1e-11)
    assert bessel_zero(0.0, 2) == pytest.approx(5.520078110286311, abs=1e-11)
    # residual at the root
    for nu, s in ((0.0, 1), (1.0, 1), (2.5, 3)):
        assert abs(bessel_j(nu, bessel_zero(nu, s))) < 1e-10


def test_bessel_zero_interlacing_and_monotonicity():
    for nu in (0.0, 0.5, 1.0, 3.5):
        zeros = [bessel_zero(nu, s) for s in range(1, 8)]
        above = [bessel_zero(nu + 1.0, s) for s in range(1, 7)]
        assert all(b > a for a, b in zip(zeros, zeros[1:]))
        for s in range(6):
            assert zeros[s] < above[s] < zeros[s + 1]


def test_half_integer_zeros_are_multiples_of_pi():
    for s in range(1, 9):
        assert bessel_zero(0.5, s) == pytest.approx(s * math.pi, abs=1e-12)


def test_bessel_validation():
    with pytest.raises(DomainError):
        bessel_j(0.3, 1.0)
    with pytest.raises(DomainError):
        bessel_j(1.0, -1.0)
    with pytest.raises(DomainError):
        bessel_zero(0.0, 0)


def test_disk_spectrum_values_and_multiplicities():
    spectrum = ball_spectrum(2, 1.0, 10)
    j01 = bessel_zero(0.0, 1)
    j11 = bessel_zero(1.0, 1)
    assert spectrum.eigenvalue(1) == pytest.approx(j01**2, rel=1e-13)
    assert spectrum.eigenvalue(1) == pytest.approx(5.783185962946785, rel=1e-10)
    assert spectrum.eigenvalue(2) == pytest.approx(j11**2, rel=1e-13)
    assert spectrum.eigenvalue(2) == spectrum.eigenvalue(3)  # multiplicity 2
    assert spectrum.eigenvalue(2) == pytest.approx(14.68197064212389, rel=1e-10)


def test_disk_spectrum_radius_scaling():
    unit = ball_spectrum(2, 1.0, 12)
    half = ball_spectrum(2, 0.5, 12)
    for a, b in zip(unit.eigenvalues, half.eigenvalues):
        assert b == pytest.approx(4 * a, rel=1e-12)


def test_ball3_ground_state_is_pi_squared():
    spectrum = ball_spectrum(3, 1.0, 5)
    assert abs(spectrum.eigenvalue(1) - math.pi**2) <= 1e-10
    # second level: first zero of J_{3/2}, multiplicity 3
    assert spectrum.eigenvalue(2) == spectrum.eigenvalue(3) == spectrum.eigenvalue(4)


def test_ball_spectrum_validation():
    with pytest.raises(DomainError):
        ball_spectrum(4, 1.0, 3)
    with pytest.raises(DomainError):
        ball_spectrum(2, -1.0, 3)


def test_beam_frequencies_and_spectrum():
    mu = beam_frequencies(5)
    assert mu[0] == pytest.approx(4.730040744862704, abs=1e-9)
    assert mu[1] == pytest.approx(7.853204624095838, abs=1e-9)
    for s, value in enumerate(mu, start=1):
        # residual of the untransformed characteristic equation
        assert abs(math.cos(value) * math.cosh(value) - 1.0) <= 1e-9 * math.cosh(value)
        if s >= 2:
            assert abs(value - (2 * s + 1) * math.pi / 2) <= 0.04
    spectrum = beam_spectrum(2.0, 3)
    assert spectrum.eigenvalue(1) == pytest.approx((mu[0] / 2.0) ** 4, rel=1e-12)
    assert spectrum.operator == "bilaplace"


def test_fd_plate_self_convergence():
    coarse = fd_clamped_square(16, False, 1).eigenvalue(1)
    fine = fd_clamped_square(32, False, 1).eigenvalue(1)
    best = fd_clamped_square(32, True, 1).eigenvalue(1)
    ratio = (coarse - best) / (fine - best)
    assert 3.0 < ratio < 5.0  # O(h^2) deviation halves twice per refinement


def test_fd_plate_symmetry_and_reference_value():
    spectrum = fd_clamped_square(32, True, 4)
    assert spectrum.eigenvalue(2) == pytest.approx(spectrum.eigenvalue(3), rel=1e-6)
    # extrapolated ground value of the unit clamped square, stable to ~0.1%
    assert spectrum.eigenvalue(1) == pytest.approx(1294.9, rel=2e-3)
    assert spectrum.provenance == "discretized(h=1/32,extrapolated)"


def test_fd_plate_bounds_sanity_within_tolerance():
    spectrum = fd_clamped_square(32, True, 10)
    square = domain_constants(DomainSpec(2, Box((1.0, 1.0))))
    for k in range(1, 11):
        reference = spectrum.partial_sum(k)
        assert levine_protter_sum(square, k).value <= reference * 1.02 + 1e-9


def test_fd_plate_validation():
    with pytest.raises(BudgetError):
        fd_clamped_square(96, False, 2)
    with pytest.raises(DomainError):
        fd_clamped_square(6, False, 2)
    with pytest.raises(DomainError):
        fd_clamped_square(17, True, 2)  # odd grid cannot pair with grid/2


def test_weyl_reference_values():
    square = domain_constants(DomainSpec(2, Box((1.0, 1.0))))
    interval = domain_constants(DomainSpec(1, Box((1.0,))))
    assert weyl_reference("laplace", square, 100) == pytest.approx(
        2 * math.pi * 100**2, rel=1e-13
    )
    assert weyl_reference("bilaplace", interval, 1) == pytest.approx(
        math.pi**4 / 5, rel=1e-13
    )
    for k in (1, 7, 40):
        assert weyl_reference("laplace", square, k) == li_yau_sum(square, k).value
    with pytest.raises(DomainError):
        weyl_reference("heat", square, 1)


def test_spectrum_container_validation():
    with pytest.raises(DomainError):
        Spectrum("laplace", (2.0, 1.0), (2.0, 3.0), "exact")  # not sorted
    with pytest.raises(DomainError):
        Spectrum("laplace", (1.0,), (1.0, 2.0), "exact")  # prefix length
    with pytest.raises(DomainError):
        Spectrum("other", (1.0,), (1.0,), "exact")
    spectrum = Spectrum.from_values("laplace", [3.0, 1.0, 2.0], "exact")
    assert spectrum.eigenvalues == (1.0, 2.0, 3.0)
    with pytest.raises(DomainError):
        spectrum.eigenvalue(4)
