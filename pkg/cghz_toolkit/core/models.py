from __future__ import annotations

"""Shared data structures used across the cghz_toolkit core.

This module is free of I/O so that the contained objects can be reused in
any context (tests, CLI, sweeps run in worker processes).
"""

import math
from dataclasses import dataclass, field
from typing import Iterator, List, Optional, Sequence, Tuple

from cghz_toolkit.core.errors import InvalidParameterError
from cghz_toolkit.core.fock.state import PhotonState
from cghz_toolkit.core.measurement.detection import DetectionPattern
from cghz_toolkit.core.optics.elements import CircuitElement

__all__ = [
    "CghzParams",
    "EcpOutcome",
    "EcpReport",
    "SWEEP_COLUMNS",
    "SweepSpec",
    "SweepRow",
]

_NORM_TOL = 1e-12


@dataclass(frozen=True)
class CghzParams:
    """Shape and coefficients of a less-entangled C-GHZ input.

    Attributes
    ----------
    m
        Photons per logic qubit (≥ 2).
    n
        Number of logic qubits N (≥ 2).
    alpha, beta
        Coefficients of the GHZ⁺ and GHZ⁻ branches, ``|α|² + |β|² = 1``.
    """

    m: int
    n: int
    alpha: complex
    beta: complex

    def __post_init__(self) -> None:
        if not isinstance(self.m, int) or self.m < 2:
            raise InvalidParameterError(f"m must be an integer ≥ 2, got {self.m!r}")
        if not isinstance(self.n, int) or self.n < 2:
            raise InvalidParameterError(f"N must be an integer ≥ 2, got {self.n!r}")
        norm = abs(self.alpha) ** 2 + abs(self.beta) ** 2
        if abs(norm - 1.0) > _NORM_TOL:
            raise InvalidParameterError(f"|alpha|² + |beta|² = {norm!r}, expected 1")
        object.__setattr__(self, "alpha", complex(self.alpha))
        object.__setattr__(self, "beta", complex(self.beta))

    @classmethod
    def from_alpha(cls, m: int, n: int, alpha: float) -> "CghzParams":
        """Real α in [0, 1]; β = √(1 − α²) ≥ 0."""
        if not 0.0 <= alpha <= 1.0:
            raise InvalidParameterError(f"alpha must lie in [0, 1], got {alpha!r}")
        return cls(m, n, complex(alpha), complex(math.sqrt(max(0.0, 1.0 - alpha * alpha))))

    @classmethod
    def from_complex(cls, m: int, n: int, alpha_re: float, alpha_im: float) -> "CghzParams":
        """Complex α = re + i·im with |α| ≤ 1; β = √(1 − |α|²) ≥ 0."""
        alpha = complex(alpha_re, alpha_im)
        weight = abs(alpha) ** 2
        if weight > 1.0 + _NORM_TOL:
            raise InvalidParameterError(f"|alpha| must not exceed 1, got {abs(alpha)!r}")
        return cls(m, n, alpha, complex(math.sqrt(max(0.0, 1.0 - weight))))

    @property
    def mn(self) -> int:
        return self.m * self.n

    @property
    def is_degenerate(self) -> bool:
        """True when one branch is absent (α or β zero)."""
        return abs(self.alpha * self.beta) == 0.0

    def swapped(self) -> "CghzParams":
        return CghzParams(self.m, self.n, self.beta, self.alpha)


@dataclass(frozen=True)
class EcpOutcome:
    """One successful detection pattern and the state it leaves behind."""

    pattern: DetectionPattern
    probability: float
    corrections: Tuple[CircuitElement, ...]
    corrected_state: PhotonState
    fidelity: float


@dataclass(frozen=True)
class EcpReport:
    params: CghzParams
    success_probability: float
    analytic_probability: float
    outcomes: Tuple[EcpOutcome, ...] = ()
    min_fidelity: float = 1.0

    def invariant_failures(self, probability_tol: float = 1e-9, fidelity_tol: float = 1e-9) -> List[str]:
        """Human-readable list of broken report invariants (empty when all hold)."""
        failures: List[str] = []
        total = math.fsum(o.probability for o in self.outcomes)
        if abs(total - self.success_probability) > probability_tol:
            failures.append(f"outcome probabilities sum to {total!r}, report says {self.success_probability!r}")
        gap = abs(self.success_probability - self.analytic_probability)
        if gap > probability_tol:
            failures.append(f"simulated {self.success_probability!r} differs from analytic {self.analytic_probability!r} by {gap:.3g}")
        if self.min_fidelity < 1.0 - fidelity_tol:
            failures.append(f"minimum output fidelity {self.min_fidelity!r} below 1")
        return failures

    @property
    def ok(self) -> bool:
        return not self.invariant_failures()


SWEEP_COLUMNS: Tuple[str, ...] = (
    "m",
    "N",
    "alpha",
    "p_analytic",
    "p_simulated",
    "abs_error",
    "min_fidelity",
    "runtime_ms",
)


@dataclass(frozen=True)
class SweepSpec:
    """Grid of (m, N, α) points; alphas strictly inside (0, 1)."""

    m_values: Tuple[int, ...]
    n_values: Tuple[int, ...]
    alpha_grid: Tuple[float, ...]
    columns: Tuple[str, ...] = SWEEP_COLUMNS

    def __post_init__(self) -> None:
        for name in ("m_values", "n_values", "alpha_grid"):
            values = tuple(getattr(self, name))
            if not values:
                raise InvalidParameterError(f"Sweep {name} is empty")
            object.__setattr__(self, name, values)
        for alpha in self.alpha_grid:
            if not 0.0 < alpha < 1.0:
                raise InvalidParameterError(f"Sweep alphas must lie strictly in (0, 1), got {alpha!r}")
        unknown = [c for c in self.columns if c not in SWEEP_COLUMNS]
        if unknown:
            raise InvalidParameterError(f"Unknown sweep columns: {unknown}")

    @classmethod
    def evenly_spaced(cls, m_values: Sequence[int], n_values: Sequence[int], count: int) -> "SweepSpec":
        """Alphas k/(count+1) for k = 1..count."""
        if count < 1:
            raise InvalidParameterError("Sweep needs at least one alpha")
        return cls(tuple(m_values), tuple(n_values), tuple(k / (count + 1) for k in range(1, count + 1)))

    def points(self) -> Iterator[Tuple[int, int, float]]:
        """Grid points in lexicographic (m, N, α) order, duplicates removed."""
        for m in sorted(set(self.m_values)):
            for n in sorted(set(self.n_values)):
                for alpha in sorted(set(self.alpha_grid)):
                    yield m, n, alpha

    def __len__(self) -> int:
        return len(set(self.m_values)) * len(set(self.n_values)) * len(set(self.alpha_grid))


@dataclass(frozen=True)
class SweepRow:
    """One sweep grid point. Skipped rows carry ``None`` simulated values."""

    m: int
    n: int
    alpha: float
    p_analytic: float
    p_simulated: Optional[float]
    abs_error: Optional[float]
    min_fidelity: Optional[float]
    runtime_ms: float = 0.0
    skipped_reason: Optional[str] = field(default=None, compare=False)

    @property
    def skipped(self) -> bool:
        return self.p_simulated is None

    def as_dict(self) -> dict:
        return {
            "m": self.m,
            "N": self.n,
            "alpha": self.alpha,
            "p_analytic": self.p_analytic,
            "p_simulated": self.p_simulated,
            "abs_error": self.abs_error,
            "min_fidelity": self.min_fidelity,
            "runtime_ms": self.runtime_ms,
        }
