"""Self-contained Bessel J evaluation and zero finding for ball spectra.

Deliberately no external special-function dependency: the oracle must stay
independent of platform libraries.  Orders are restricted to the half-integer
lattice (integer orders for disks, l+1/2 for 3-balls), which is all the ball
spectra need.

Evaluation strategy:
  * ascending series where its alternating terms stay tame (small x, or the
    decaying region x below the order);
  * everywhere else: integer orders use backward recurrence with the
    even-order normalization sum, half-integer orders walk the trigonometric
    closed forms upward from J_{1/2}, J_{3/2} (zero brackets only ever sit in
    the oscillatory region x > nu, where that walk is stable).

Zeros are bracketed (asymptotic spacing for the two base rows, interlacing
for every row above) and refined by bisection to 1e-13 in the abscissa.
"""

from __future__ import annotations

import math
import threading

from ..errors import BracketError, DomainError
from ..geometry import gamma_half_integer

__all__ = ["bessel_j", "bessel_zero", "BISECT_TOL"]

BISECT_TOL = 1e-13


def _check_order(nu: float) -> int:
    two_nu = round(2 * nu)
    if two_nu < 0 or abs(2 * nu - two_nu) > 1e-12:
        raise DomainError(f"order must be a nonnegative half-integer, got {nu!r}")
    return two_nu


def _series(nu: float, x: float) -> float:
    term = (0.5 * x) ** nu / gamma_half_integer(nu + 1.0)
    total = term
    q = -0.25 * x * x
    for j in range(1, 500):
        term *= q / (j * (nu + j))
        total += term
        if abs(term) <= 1e-17 * abs(total):
            break
    return total


def _backward_integer(nu: int, x: float) -> float:
    # Miller's algorithm: recurse down from a high order, normalize with
    # J_0 + 2 J_2 + 2 J_4 + ... = 1.
    start = max(nu, int(x)) + 40
    start += start % 2  # even start keeps the normalization bookkeeping simple
    jp = 0.0  # J_{start+1}
    jc = 1e-30  # J_{start}
    norm = 2.0 * jc
    result = 0.0
    for order in range(start, 0, -1):
        jm = (2.0 * order / x) * jc - jp  # J_{order-1}
        jp = jc
        jc = jm
        if order - 1 == nu:
            result = jc
        if order - 1 == 0:
            norm += jc
        elif (order - 1) % 2 == 0:
            norm += 2.0 * jc
        if abs(jc) > 1e250:
            jc *= 1e-250
            jp *= 1e-250
            norm *= 1e-250
            result *= 1e-250
    return result / norm


def _forward_half_integer(nu: float, x: float) -> float:
    # x >= nu here, so the upward trigonometric recurrence stays oscillatory.
    prefactor = math.sqrt(2.0 / (math.pi * x))
    jm = prefactor * math.sin(x)  # J_{1/2}
    if nu == 0.5:
        return jm
    jc = prefactor * (math.sin(x) / x - math.cos(x))  # J_{3/2}
    order = 1.5
    while order < nu:
        jm, jc = jc, (2.0 * order / x) * jc - jm
        order += 1.0
    return jc


def _backward_half_integer(nu: float, x: float) -> float:
    # Decaying region x < nu: recurse down to the exactly known J_{1/2} (or
    # J_{3/2} when sin x is too close to a node) and rescale.
    start = int(max(nu, x)) + 40
    jp = 0.0
    jc = 1e-30
    val_nu = jc if start + 0.5 == nu else 0.0
    val_32 = 0.0
    val_12 = 0.0
    order = start + 0.5
    while order > 0.5:
        jm = (2.0 * order / x) * jc - jp
        jp = jc
        jc = jm
        order -= 1.0
        if order == nu:
            val_nu = jc
        if order == 1.5:
            val_32 = jc
        if order == 0.5:
            val_12 = jc
        if abs(jc) > 1e250:
            jp *= 1e-250
            jc *= 1e-250
            val_nu *= 1e-250
            val_32 *= 1e-250
            val_12 *= 1e-250
    prefactor = math.sqrt(2.0 / (math.pi * x))
    exact_12 = prefactor * math.sin(x)
    exact_32 = prefactor * (math.sin(x) / x - math.cos(x))
    if abs(math.sin(x)) >= 0.1:
        return val_nu * (exact_12 / val_12)
    return val_nu * (exact_32 / val_32)


def bessel_j(nu: float, x: float) -> float:
    """J_nu(x) for half-integer nu >= 0 and x >= 0."""
    two_nu = _check_order(nu)
    if x < 0:
        raise DomainError(f"argument must be >= 0, got {x!r}")
    if x == 0.0:
        return 1.0 if two_nu == 0 else 0.0
    if two_nu % 2 == 0:
        if x <= 8.0:
            return _series(nu, x)
        return _backward_integer(two_nu // 2, x)
    if x >= max(8.0, nu):
        return _forward_half_integer(nu, x)
    if x <= 8.0:
        return _series(nu, x)
    return _backward_half_integer(nu, x)


def _bisect(nu: float, lo: float, hi: float, s: int) -> float:
    f_lo = bessel_j(nu, lo)
    f_hi = bessel_j(nu, hi)
    tries = 0
    while f_lo * f_hi > 0 and tries < 4:
        # Endpoints of interlacing brackets are zeros of the neighbor order;
        # nudge inward if rounding left both evaluations on one side.
        lo += 1e-9
        hi -= 1e-9
        f_lo = bessel_j(nu, lo)
        f_hi = bessel_j(nu, hi)
        tries += 1
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if f_lo * f_hi > 0:
        raise BracketError(
            f"no sign change for J_{nu} zero #{s} on [{lo!r}, {hi!r}]: "
            f"f(lo)={f_lo!r}, f(hi)={f_hi!r}"
        )
    while hi - lo > BISECT_TOL:
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:  # interval narrower than float spacing
            break
        f_mid = bessel_j(nu, mid)
        if f_mid == 0.0:
            return mid
        if f_lo * f_mid < 0:
            hi = mid
        else:
            lo = mid
            f_lo = f_mid
    return 0.5 * (lo + hi)


_ZERO_CACHE: dict[int, list[float]] = {}
_CACHE_LOCK = threading.Lock()


def _base_bracket(two_nu: int, s: int) -> tuple[float, float]:
    if two_nu == 0:
        # zeros of J_0 sit just above (s - 1/4) pi, spaced ~pi apart
        center = (s - 0.25) * math.pi
        return center - 1.2, center + 0.3
    # zeros of J_{1/2} are exactly s pi; bracket them without assuming it
    return s * math.pi - 0.5, s * math.pi + 0.5


def _zeros_row(two_nu: int, count: int) -> list[float]:
    zeros = _ZERO_CACHE.setdefault(two_nu, [])
    while len(zeros) < count:
        s = len(zeros) + 1
        if two_nu <= 1:
            lo, hi = _base_bracket(two_nu, s)
        else:
            below = _zeros_row(two_nu - 2, s + 1)
            lo, hi = below[s - 1], below[s]
        zeros.append(_bisect(two_nu / 2.0, lo, hi, s))
    return zeros


def bessel_zero(nu: float, s: int) -> float:
    """s-th positive zero of J_nu, half-integer nu >= 0.

    Rows climb by interlacing: the s-th zero of J_nu lies strictly between the
    s-th and (s+1)-th zeros of J_{nu-1}, so no zero can be skipped.  Bracket
    failures raise with diagnostics rather than silently dropping a zero.
    """
    two_nu = _check_order(nu)
    if s < 1:
        raise DomainError(f"zero index must be >= 1, got {s!r}")
    with _CACHE_LOCK:
        return _zeros_row(two_nu, s)[s - 1]
