from __future__ import annotations

"""Linear optical elements as mode-substitution matrices.

Each :class:`CircuitElement` touches a handful of modes and carries a small
unitary ``U`` such that the creation operator of its ``k``-th input mode is
replaced by ``Σ_j U[j, k]`` times the creation operator of its ``j``-th
output mode. Inputs and outputs occupy the same registry positions; a PBS
with fresh output labels renames the spatial labels it routes.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, Optional, Tuple

import numpy as np

from cghz_toolkit.core.errors import InvalidParameterError
from cghz_toolkit.core.fock.modes import ModeId, Polarization

__all__ = [
    "ElementKind",
    "CircuitElement",
    "Circuit",
    "hwp",
    "pbs",
    "phase_flip",
    "bit_flip",
    "hadamard_layer",
]

_H, _V = Polarization.H, Polarization.V
_SQRT1_2 = 1.0 / math.sqrt(2.0)


class ElementKind(str, Enum):
    HWP = "hwp"
    PBS = "pbs"
    PHASE_FLIP = "phase_flip"
    BIT_FLIP = "bit_flip"


@dataclass(frozen=True)
class CircuitElement:
    """One optical element.

    Attributes
    ----------
    kind
        Element family.
    spatials
        ``(label,)`` for single-mode elements, ``(in1, in2, out1, out2)``
        for a PBS.
    reflection_phase
        Factor picked up by every reflected (V) photon in a PBS. The protocol
        algebra assumes 1; other values model a different PBS convention.
    """

    kind: ElementKind
    spatials: Tuple[str, ...]
    reflection_phase: complex = 1.0
    matrix: np.ndarray = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        expected = 4 if self.kind is ElementKind.PBS else 1
        if len(self.spatials) != expected:
            raise InvalidParameterError(
                f"{self.kind.value} expects {expected} spatial label(s), got {self.spatials}"
            )
        if self.kind is ElementKind.PBS and len(set(self.spatials[:2])) != 2:
            raise InvalidParameterError(f"PBS inputs must differ: {self.spatials[:2]}")
        matrix = self._build_matrix()
        if not np.allclose(matrix.conj().T @ matrix, np.eye(matrix.shape[0]), atol=1e-12):
            raise InvalidParameterError(f"{self.kind.value} mode map is not unitary")
        object.__setattr__(self, "matrix", matrix)

    def _build_matrix(self) -> np.ndarray:
        if self.kind is ElementKind.HWP:
            # H -> (H + V)/√2, V -> (H - V)/√2; columns are inputs.
            return _SQRT1_2 * np.array([[1, 1], [1, -1]], dtype=complex)
        if self.kind is ElementKind.PHASE_FLIP:
            return np.array([[1, 0], [0, -1]], dtype=complex)
        if self.kind is ElementKind.BIT_FLIP:
            return np.array([[0, 1], [1, 0]], dtype=complex)
        # PBS over (in1 H, in1 V, in2 H, in2 V) at the same positions, output
        # labels out1/out2 replacing in1/in2: H transmits, V reflects.
        r = complex(self.reflection_phase)
        u = np.zeros((4, 4), dtype=complex)
        u[0, 0] = 1.0  # (in1, H) -> (out1, H)
        u[3, 1] = r    # (in1, V) -> (out2, V)
        u[2, 2] = 1.0  # (in2, H) -> (out2, H)
        u[1, 3] = r    # (in2, V) -> (out1, V)
        return u

    # ------------------------------------------------------------------
    # Mode addressing
    # ------------------------------------------------------------------
    @property
    def inputs(self) -> Tuple[str, ...]:
        return self.spatials[:2] if self.kind is ElementKind.PBS else self.spatials

    @property
    def outputs(self) -> Tuple[str, ...]:
        return self.spatials[2:] if self.kind is ElementKind.PBS else self.spatials

    def input_modes(self) -> Tuple[ModeId, ...]:
        return tuple(ModeId(label, pol) for label in self.inputs for pol in (_H, _V))

    def relabeling(self) -> dict[str, str]:
        """Spatial renames performed by the element (empty unless a PBS uses fresh outputs)."""
        return {i: o for i, o in zip(self.inputs, self.outputs) if i != o}

    def __str__(self) -> str:
        if self.kind is ElementKind.PBS:
            in1, in2, out1, out2 = self.spatials
            routed = "" if (in1, in2) == (out1, out2) else f"->{out1},{out2}"
            return f"PBS({in1},{in2}{routed})"
        names = {ElementKind.HWP: "HWP", ElementKind.PHASE_FLIP: "Z", ElementKind.BIT_FLIP: "X"}
        return f"{names[self.kind]}({self.spatials[0]})"


# ---------------------------------------------------------------------------
# Factories
# ---------------------------------------------------------------------------

def hwp(spatial: str) -> CircuitElement:
    return CircuitElement(ElementKind.HWP, (spatial,))


def pbs(
    in1: str,
    in2: str,
    out1: Optional[str] = None,
    out2: Optional[str] = None,
    *,
    reflection_phase: complex = 1.0,
) -> CircuitElement:
    """PBS pairing *in1* and *in2*; outputs reuse the input labels by default."""
    return CircuitElement(
        ElementKind.PBS,
        (in1, in2, out1 or in1, out2 or in2),
        reflection_phase=reflection_phase,
    )


def phase_flip(spatial: str) -> CircuitElement:
    return CircuitElement(ElementKind.PHASE_FLIP, (spatial,))


def bit_flip(spatial: str) -> CircuitElement:
    return CircuitElement(ElementKind.BIT_FLIP, (spatial,))


@dataclass(frozen=True)
class Circuit:
    """Ordered element list, applied strictly front to back."""

    elements: Tuple[CircuitElement, ...] = ()

    def __iter__(self) -> Iterator[CircuitElement]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __add__(self, other: "Circuit") -> "Circuit":
        return Circuit(self.elements + other.elements)

    def count(self, kind: ElementKind) -> int:
        return sum(1 for e in self.elements if e.kind is kind)

    def of_kind(self, kind: ElementKind) -> "Circuit":
        return Circuit(tuple(e for e in self.elements if e.kind is kind))


def hadamard_layer(spatials: Iterable[str]) -> Circuit:
    """One HWP per spatial label."""
    return Circuit(tuple(hwp(label) for label in spatials))
