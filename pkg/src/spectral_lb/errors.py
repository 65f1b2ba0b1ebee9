"""Exception types shared across the toolkit."""

from __future__ import annotations

__all__ = [
    "DomainError",
    "MissingInertiaError",
    "BandInfeasible",
    "ConstraintError",
    "BracketError",
    "BudgetError",
    "ConfigError",
]


class DomainError(ValueError):
    """A domain description is malformed (bad dimension, non-positive size, ...)."""


class MissingInertiaError(ValueError):
    """An inertia-dependent quantity was requested for a domain whose moment of
    inertia is unknown.  Pass ``assume_inertia_floor=True`` to substitute the
    ball-rearrangement floor instead (this weakens nothing: the floor only
    enters denominators where a smaller inertia gives a larger claimed bound,
    so substitution is an explicit opt-in)."""


class BandInfeasible(ValueError):
    """No nonnegative band parameter solves the defining moment equation."""

    def __init__(self, n_eff: int, target: float):
        self.n_eff = n_eff
        self.target = target
        self.threshold = 1.0 / (n_eff + 1)
        super().__init__(
            f"band equation infeasible: target {target!r} is below the minimum "
            f"1/(n_eff+1) = {self.threshold!r} for n_eff = {n_eff}"
        )


class ConstraintError(ValueError):
    """Arguments violate a validity constraint of a bound family, cap
    coefficient, or proof kernel; the message names the constraint."""


class BracketError(RuntimeError):
    """A root bracket failed to capture a sign change.  Raised instead of
    silently skipping a root; carries the offending interval for diagnosis."""


class BudgetError(ValueError):
    """A discretization request exceeds the dense-solve budget."""


class ConfigError(ValueError):
    """A campaign configuration is invalid; the message names the offending
    field or family."""
