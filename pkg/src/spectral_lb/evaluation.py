"""Common result type for every bound family evaluation."""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = ["BoundEvaluation", "make_evaluation"]


@dataclass(frozen=True)
class BoundEvaluation:
    """One bound value with its per-term breakdown.

    ``value`` bounds the partial sum of the first k eigenvalues from below
    (from above when ``direction`` is "upper"); with ``per_eigenvalue`` set it
    bounds the k-th eigenvalue instead.  ``terms`` always sums to ``value``.
    ``params`` echoes whatever scalars shaped the evaluation (band parameter,
    caps, user constants) for report transparency.
    """

    family: str
    operator: str  # "laplace" | "bilaplace"
    k: int
    value: float
    terms: tuple[tuple[str, float], ...]
    direction: str = "lower"
    per_eigenvalue: bool = False
    conjectural: bool = False
    out_of_hypothesis: bool = False
    variant: str | None = None
    band_policy: str | None = None
    params: tuple[tuple[str, float], ...] = ()


def make_evaluation(
    family: str,
    operator: str,
    k: int,
    terms: list[tuple[str, float]],
    **flags,
) -> BoundEvaluation:
    """Assemble an evaluation; the value is the compensated sum of the terms."""
    value = math.fsum(v for _, v in terms)
    return BoundEvaluation(
        family=family,
        operator=operator,
        k=k,
        value=value,
        terms=tuple(terms),
        **flags,
    )
