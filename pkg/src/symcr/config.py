"""Numerical tolerances used across the package."""

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Tolerances:
    eq: float = 1e-9        # relative equality tolerance
    cluster: float = 1e-7   # eigenvalue clustering / rank decisions
    psd: float = 1e-9       # margin on eigenvalues for cone membership

    def __post_init__(self):
        if min(self.eq, self.cluster, self.psd) <= 0:
            raise ValueError("tolerances must be positive")

    def with_eq(self, eq: float) -> "Tolerances":
        return replace(self, eq=eq)


DEFAULT_TOL = Tolerances()
