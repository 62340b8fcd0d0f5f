from __future__ import annotations

"""C-GHZ state builders and the end-to-end concentration protocol."""

from .circuit_builder import EcpCircuit, build_ecp_circuit, check_cap  # noqa: F401
from .ecp import EcpStages, analytic_success, run_ecp, score_stages, simulate_stages  # noqa: F401
from .labels import CopyLabels, copy_labels, flatten  # noqa: F401
from .states import (  # noqa: F401
    c_ghz_state,
    canonical_state,
    ghz_state,
    swap_circuit,
    swapped_copy,
    target_state,
)

__all__: list[str] = [
    "CopyLabels",
    "copy_labels",
    "flatten",
    "ghz_state",
    "c_ghz_state",
    "swap_circuit",
    "swapped_copy",
    "target_state",
    "canonical_state",
    "EcpCircuit",
    "build_ecp_circuit",
    "check_cap",
    "EcpStages",
    "simulate_stages",
    "score_stages",
    "run_ecp",
    "analytic_success",
]
