"""Top-level package for the C-GHZ entanglement concentration simulator.

Front-ends (the CLI, notebooks, tests) should depend on the public API
exposed here rather than importing internal modules directly.
"""

from .core.models import CghzParams, EcpReport, SweepRow, SweepSpec  # re-export for convenience
from .core.protocol.ecp import analytic_success, run_ecp, simulate_stages
from .core.services.ecp_service import EcpService

__all__: list[str] = [
    "CghzParams",
    "EcpReport",
    "SweepSpec",
    "SweepRow",
    "run_ecp",
    "simulate_stages",
    "analytic_success",
    "EcpService",
]
