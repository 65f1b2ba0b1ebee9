"""Reference spectra: exact lattice enumeration for boxes, Bessel-zero spectra
for disks and 3-balls, the clamped beam, an optional finite-difference plate
oracle, and asymptotic reference curves."""

from .balls import ball_spectrum
from .beam import beam_frequencies, beam_spectrum
from .bessel import bessel_j, bessel_zero
from .lattice import box_counting_function, box_spectrum
from .plate_fd import FD_ORACLE_MAX_K, FD_RELATIVE_TOLERANCE, fd_clamped_square
from .types import Spectrum
from .weyl import weyl_reference

__all__ = [
    "Spectrum",
    "box_spectrum",
    "box_counting_function",
    "bessel_j",
    "bessel_zero",
    "ball_spectrum",
    "beam_frequencies",
    "beam_spectrum",
    "fd_clamped_square",
    "FD_RELATIVE_TOLERANCE",
    "FD_ORACLE_MAX_K",
    "weyl_reference",
]
