import pytest
from hypothesis import given, settings, strategies as st

from spectral_lb import (
    ConstraintError,
    kernel_residual,
    kernel_scan,
    kernel_validity_table,
    leading_term_dominates,
)
from spectral_lb.kernels import kernel_coefficients


def direct_kernel(kind, n, m, t):
    """Definition-level evaluation, independent of the Horner path."""
    if kind == "laplace2":
        gap, const, weight, count = 2, 2.0, 2.0, 2
    elif kind == "general":
        gap, const, weight, count = 2, 2.0, 2.0, m + 1
    else:
        gap, const, weight, count = 4, 4.0, 4.0, m
    total = n * t ** (n + gap) - (n + gap) * t**n + const
    for j in range(1, count + 1):
        total -= weight * j * t ** (j - 1) * (t - 1) ** 2
    return total


@pytest.mark.parametrize("kind,n,m", kernel_validity_table(8))
def test_kernel_vanishes_at_endpoints(kind, n, m):
    assert kernel_residual(kind, n, m, 1.0) == pytest.approx(0.0, abs=1e-12)
    assert kernel_residual(kind, n, m, 0.0) == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize("kind,n,m", kernel_validity_table(8))
def test_kernel_stationary_at_one(kind, n, m):
    h = 1e-6
    diff = (kernel_residual(kind, n, m, 1 + h) - kernel_residual(kind, n, m, 1 - h)) / (2 * h)
    assert abs(diff) <= 1e-6


def test_laplace2_n2_factors_exactly():
    # f(t) = 2 t^2 (t-1)^2 when n = 2
    for t in (0.0, 0.3, 1.0, 2.5, 7.0):
        assert kernel_residual("laplace2", 2, None, t) == pytest.approx(
            2 * t**2 * (t - 1) ** 2, rel=1e-13, abs=1e-13
        )


def test_general_m1_equals_laplace2():
    for n in range(2, 9):
        assert kernel_coefficients("general", n, 1) == kernel_coefficients("laplace2", n)


@settings(max_examples=200)
@given(
    st.sampled_from(kernel_validity_table(9)),
    st.floats(min_value=0.0, max_value=9.0),
)
def test_horner_matches_definition(case, t):
    kind, n, m = case
    got = kernel_residual(kind, n, m, t)
    want = direct_kernel(kind, n, m, t)
    scale = max(1.0, abs(want))
    assert abs(got - want) <= 1e-9 * scale


@pytest.mark.parametrize(
    "kind,n,m",
    [("laplace2", 2, None), ("general", 5, 3), ("clamped", 4, 4), ("clamped", 1, 1)],
)
def test_scan_certifies_nonnegativity(kind, n, m):
    minimum, argmin = kernel_scan(kind, n, m, t_max=10.0, step=1e-3)
    assert minimum >= -1e-9
    # the double zeros sit at t = 0 and t = 1
    assert min(abs(argmin), abs(argmin - 1.0)) < 0.51


@pytest.mark.parametrize("kind,n,m", kernel_validity_table(10))
def test_leading_term_dominates_beyond_scan_window(kind, n, m):
    assert leading_term_dominates(kind, n, m, t=10.0)


def test_validity_constraints():
    with pytest.raises(ConstraintError):
        kernel_residual("laplace2", 1, None, 1.0)
    with pytest.raises(ConstraintError):
        kernel_residual("general", 3, 3, 1.0)  # needs n >= m+1
    with pytest.raises(ConstraintError):
        kernel_residual("clamped", 2, 3, 1.0)  # needs n >= m
    with pytest.raises(ConstraintError):
        kernel_residual("clamped", 2, 0, 1.0)
    with pytest.raises(ConstraintError):
        kernel_residual("poly", 3, 1, 1.0)
    with pytest.raises(ConstraintError):
        kernel_residual("laplace2", 2, None, -0.5)
    with pytest.raises(ConstraintError):
        kernel_scan("laplace2", 2, None, t_max=0.0)


def test_validity_table_shape():
    table = kernel_validity_table(10)
    assert ("laplace2", 2, None) in table
    assert ("laplace2", 10, None) in table
    assert ("general", 3, 1) in table and ("general", 10, 9) in table
    assert ("general", 3, 3) not in table
    assert ("clamped", 1, 1) in table and ("clamped", 10, 10) in table
    laplace2 = sum(1 for kind, _, _ in table if kind == "laplace2")
    general = sum(1 for kind, _, _ in table if kind == "general")
    clamped = sum(1 for kind, _, _ in table if kind == "clamped")
    assert (laplace2, general, clamped) == (9, sum(range(2, 10)), sum(range(1, 11)))
