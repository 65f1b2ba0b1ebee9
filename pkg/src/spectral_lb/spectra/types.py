"""Reference spectrum container."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import DomainError

__all__ = ["Spectrum"]


@dataclass(frozen=True)
class Spectrum:
    """Sorted eigenvalue sequence with multiplicities expanded.

    ``prefix_sums[i]`` is the plain running sum of ``eigenvalues[:i+1]``;
    ``provenance`` records how the values were obtained (exact closed form,
    root-finding at a stated tolerance, or a discretized solve).
    """

    operator: str  # "laplace" | "bilaplace"
    eigenvalues: tuple[float, ...]
    prefix_sums: tuple[float, ...]
    provenance: str

    def __post_init__(self):
        if self.operator not in ("laplace", "bilaplace"):
            raise DomainError(f"unknown operator {self.operator!r}")
        ev = self.eigenvalues
        if not ev:
            raise DomainError("spectrum must contain at least one eigenvalue")
        if any(b < a for a, b in zip(ev, ev[1:])):
            raise DomainError("eigenvalues must be nondecreasing")
        if ev[0] <= 0:
            raise DomainError("eigenvalues must be positive")
        if len(self.prefix_sums) != len(ev):
            raise DomainError("prefix sums must match the eigenvalue count")

    @classmethod
    def from_values(cls, operator: str, values, provenance: str) -> "Spectrum":
        ordered = tuple(sorted(float(v) for v in values))
        sums = []
        acc = 0.0
        for v in ordered:
            acc += v
            sums.append(acc)
        return cls(
            operator=operator,
            eigenvalues=ordered,
            prefix_sums=tuple(sums),
            provenance=provenance,
        )

    def __len__(self) -> int:
        return len(self.eigenvalues)

    def eigenvalue(self, k: int) -> float:
        """k-th eigenvalue, 1-indexed."""
        if not 1 <= k <= len(self.eigenvalues):
            raise DomainError(f"eigenvalue index {k} outside 1..{len(self.eigenvalues)}")
        return self.eigenvalues[k - 1]

    def partial_sum(self, k: int) -> float:
        """Sum of the first k eigenvalues, 1-indexed."""
        if not 1 <= k <= len(self.prefix_sums):
            raise DomainError(f"prefix index {k} outside 1..{len(self.prefix_sums)}")
        return self.prefix_sums[k - 1]
