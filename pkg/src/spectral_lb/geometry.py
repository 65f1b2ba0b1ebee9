"""Domain descriptions and the geometric constants every bound family consumes.

Supported shapes are axis-aligned boxes, round balls, and "abstract" domains
known only through their volume (and optionally their moment of inertia).
All derived scalars are pure functions of the shape; instances are frozen, so
they are safe to share across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .errors import DomainError, MissingInertiaError

__all__ = [
    "Box",
    "Ball",
    "Abstract",
    "DomainSpec",
    "SpectralConstants",
    "gamma_half_integer",
    "unit_ball_volume",
    "inertia_floor",
    "rho_floor",
    "domain_constants",
]

TWO_PI = 2.0 * math.pi


def gamma_half_integer(x: float) -> float:
    """Gamma(x) for x on the positive half-integer lattice {1/2, 1, 3/2, ...}.

    Exact recursion seeded with Gamma(1) = 1 and Gamma(1/2) = sqrt(pi).  Every
    unit-ball volume (and every Bessel series prefactor used by the spectra
    oracles) lands on this lattice, so no general-purpose Gamma is needed.
    """
    two_x = round(2 * x)
    if two_x <= 0 or abs(2 * x - two_x) > 1e-12:
        raise DomainError(f"gamma argument {x!r} is not a positive half-integer")
    if two_x % 2 == 0:
        value = 1.0
        for j in range(1, two_x // 2):
            value *= j
        return value
    value = math.sqrt(math.pi)
    for j in range(1, two_x, 2):
        value *= j / 2.0
    return value


def unit_ball_volume(n: int) -> float:
    """Volume of the unit ball in dimension n: 2 pi^(n/2) / (n Gamma(n/2))."""
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"dimension must be a positive integer, got {n!r}")
    return 2.0 * math.pi ** (n / 2.0) / (n * gamma_half_integer(n / 2.0))


def inertia_floor(n: int, volume: float) -> float:
    """Smallest moment of inertia a domain of the given volume can have.

    The minimizer is the centered ball of equal volume:
    (n/(n+2)) * V * (V/omega_n)^(2/n).
    """
    if volume <= 0:
        raise DomainError(f"volume must be positive, got {volume!r}")
    omega = unit_ball_volume(n)
    return (n / (n + 2)) * volume * (volume / omega) ** (2.0 / n)


def rho_floor(n: int, volume: float, kind: str = "laplace") -> float:
    """Volume-only lower bound for the gradient cap of the spectral envelope.

    ``laplace`` uses the isoperimetric route; ``clamped`` combines the
    inertia floor with the 2 sqrt(V I) cap, picking up 2 sqrt(n/(n+2)).
    """
    if volume <= 0:
        raise DomainError(f"volume must be positive, got {volume!r}")
    omega = unit_ball_volume(n)
    base = TWO_PI ** (-n) * omega ** (-1.0 / n) * volume ** ((n + 1.0) / n)
    if kind == "laplace":
        return base
    if kind == "clamped":
        return 2.0 * math.sqrt(n / (n + 2)) * base
    raise DomainError(f"unknown rho floor kind {kind!r}; expected 'laplace' or 'clamped'")


@dataclass(frozen=True)
class Box:
    """Axis-aligned box with the given edge lengths."""

    lengths: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "lengths", tuple(float(v) for v in self.lengths))
        if not self.lengths or any(v <= 0 or not math.isfinite(v) for v in self.lengths):
            raise DomainError(f"box edge lengths must be positive, got {self.lengths!r}")


@dataclass(frozen=True)
class Ball:
    """Round ball of the given radius."""

    radius: float

    def __post_init__(self):
        if self.radius <= 0 or not math.isfinite(self.radius):
            raise DomainError(f"ball radius must be positive, got {self.radius!r}")


@dataclass(frozen=True)
class Abstract:
    """Domain known only through its volume and (optionally) moment of inertia."""

    volume: float
    inertia: float | None = None

    def __post_init__(self):
        if self.volume <= 0 or not math.isfinite(self.volume):
            raise DomainError(f"abstract domain volume must be positive, got {self.volume!r}")
        if self.inertia is not None and self.inertia <= 0:
            raise DomainError(f"moment of inertia must be positive, got {self.inertia!r}")


Shape = Box | Ball | Abstract


@dataclass(frozen=True)
class DomainSpec:
    """Dimension plus shape; the source of V and I for all bound families."""

    dimension: int
    shape: Shape

    def __post_init__(self):
        n = self.dimension
        if not isinstance(n, int) or n < 1:
            raise DomainError(f"dimension must be a positive integer, got {n!r}")
        if isinstance(self.shape, Box) and len(self.shape.lengths) != n:
            raise DomainError(
                f"box has {len(self.shape.lengths)} edge lengths but dimension is {n}"
            )
        if isinstance(self.shape, Abstract) and self.shape.inertia is not None:
            floor = inertia_floor(n, self.shape.volume)
            if self.shape.inertia < floor * (1.0 - 1e-12):
                raise DomainError(
                    f"inertia {self.shape.inertia!r} is below the ball floor {floor!r} "
                    f"for volume {self.shape.volume!r} in dimension {n}"
                )

    def scaled(self, factor: float) -> "DomainSpec":
        """The domain dilated by ``factor`` (V -> c^n V, I -> c^(n+2) I)."""
        if factor <= 0:
            raise DomainError(f"dilation factor must be positive, got {factor!r}")
        n = self.dimension
        s = self.shape
        if isinstance(s, Box):
            return replace(self, shape=Box(tuple(v * factor for v in s.lengths)))
        if isinstance(s, Ball):
            return replace(self, shape=Ball(s.radius * factor))
        inertia = None if s.inertia is None else s.inertia * factor ** (n + 2)
        return replace(self, shape=Abstract(s.volume * factor**n, inertia))

    def to_json(self) -> dict:
        s = self.shape
        if isinstance(s, Box):
            shape: dict = {"box": list(s.lengths)}
        elif isinstance(s, Ball):
            shape = {"ball": s.radius}
        else:
            body = {"volume": s.volume}
            if s.inertia is not None:
                body["inertia"] = s.inertia
            shape = {"abstract": body}
        return {"dimension": self.dimension, "shape": shape}

    @staticmethod
    def from_json(obj: dict) -> "DomainSpec":
        """Parse ``{"dimension": n, "shape": {...}}`` with exactly one shape key."""
        if not isinstance(obj, dict):
            raise DomainError(f"domain object must be a JSON object, got {type(obj).__name__}")
        unknown = set(obj) - {"dimension", "shape"}
        if unknown:
            raise DomainError(f"unknown domain field(s): {sorted(unknown)}")
        if "dimension" not in obj or "shape" not in obj:
            raise DomainError("domain object requires 'dimension' and 'shape'")
        dim = obj["dimension"]
        if not isinstance(dim, int) or isinstance(dim, bool):
            raise DomainError(f"'dimension' must be an integer, got {dim!r}")
        shape_obj = obj["shape"]
        if not isinstance(shape_obj, dict) or len(shape_obj) != 1:
            raise DomainError("'shape' must be an object with exactly one of box/ball/abstract")
        (kind, body), = shape_obj.items()
        if kind == "box":
            if not isinstance(body, list):
                raise DomainError("'box' takes a list of edge lengths")
            shape: Shape = Box(tuple(body))
        elif kind == "ball":
            shape = Ball(float(body))
        elif kind == "abstract":
            if not isinstance(body, dict):
                raise DomainError("'abstract' takes an object with 'volume' and optional 'inertia'")
            extra = set(body) - {"volume", "inertia"}
            if extra:
                raise DomainError(f"unknown abstract field(s): {sorted(extra)}")
            if "volume" not in body:
                raise DomainError("abstract domain requires 'volume'")
            shape = Abstract(float(body["volume"]),
                             None if body.get("inertia") is None else float(body["inertia"]))
        else:
            raise DomainError(f"unknown shape kind {kind!r}")
        return DomainSpec(dimension=dim, shape=shape)


@dataclass(frozen=True)
class SpectralConstants:
    """Derived scalars of one domain.

    ``alpha`` is the Fourier-side density cap V/(2 pi)^n, ``rho`` its
    volume-only gradient cap, and ``rho_inertia`` the sharper cap
    2 (2 pi)^{-n} sqrt(V I) available when the moment of inertia is known.
    """

    n: int
    omega_n: float
    volume: float
    inertia: float | None
    alpha: float
    rho: float
    rho_inertia: float | None
    v_over_i: float | None

    def require_inertia(self) -> float:
        if self.inertia is None:
            raise MissingInertiaError(
                f"domain of dimension {self.n} has no moment of inertia; supply one "
                "or opt into the ball floor with assume_inertia_floor"
            )
        return self.inertia


def _shape_volume_inertia(spec: DomainSpec) -> tuple[float, float | None]:
    n = spec.dimension
    s = spec.shape
    if isinstance(s, Box):
        volume = math.prod(s.lengths)
        # centered box: integral of |x|^2 is V * sum(L_i^2) / 12
        return volume, volume * math.fsum(v * v for v in s.lengths) / 12.0
    if isinstance(s, Ball):
        omega = unit_ball_volume(n)
        return omega * s.radius**n, n * omega * s.radius ** (n + 2) / (n + 2)
    return s.volume, s.inertia


def domain_constants(spec: DomainSpec, assume_inertia_floor: bool = False) -> SpectralConstants:
    """All derived constants of one domain.

    Boxes and balls get exact closed-form volume and inertia; abstract domains
    pass through whatever was supplied.  With ``assume_inertia_floor`` an
    unknown inertia is replaced by the ball floor (explicit opt-in; see
    :class:`~spectral_lb.errors.MissingInertiaError`).
    """
    n = spec.dimension
    omega = unit_ball_volume(n)
    volume, inertia = _shape_volume_inertia(spec)
    if inertia is None and assume_inertia_floor:
        inertia = inertia_floor(n, volume)
    alpha = volume / TWO_PI**n
    rho = volume ** ((n + 1.0) / n) / (TWO_PI**n * omega ** (1.0 / n))
    if inertia is not None:
        rho_inertia = 2.0 * TWO_PI ** (-n) * math.sqrt(volume * inertia)
        v_over_i = volume / inertia
    else:
        rho_inertia = None
        v_over_i = None
    return SpectralConstants(
        n=n,
        omega_n=omega,
        volume=volume,
        inertia=inertia,
        alpha=alpha,
        rho=rho,
        rho_inertia=rho_inertia,
        v_over_i=v_over_i,
    )
