from __future__ import annotations

"""Linear optical elements and their action on photon states."""

from .elements import (  # noqa: F401
    Circuit,
    CircuitElement,
    ElementKind,
    bit_flip,
    hadamard_layer,
    hwp,
    pbs,
    phase_flip,
)
from .engine import (  # noqa: F401
    apply_bit_flip,
    apply_circuit,
    apply_element,
    apply_hwp,
    apply_pbs,
    apply_phase_flip,
)

__all__: list[str] = [
    "ElementKind",
    "CircuitElement",
    "Circuit",
    "hwp",
    "pbs",
    "phase_flip",
    "bit_flip",
    "hadamard_layer",
    "apply_element",
    "apply_circuit",
    "apply_hwp",
    "apply_pbs",
    "apply_phase_flip",
    "apply_bit_flip",
]
