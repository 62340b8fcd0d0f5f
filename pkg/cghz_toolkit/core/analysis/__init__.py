from __future__ import annotations

"""Cross-checks and batch runs built on top of the protocol."""

from .oracle import OracleResult, oracle_enumerate  # noqa: F401
from .sweep import (  # noqa: F401
    FORMATS,
    ScanResult,
    optimal_alpha_scan,
    read_rows,
    rows_to_text,
    run_point,
    run_sweep,
    write_rows,
)
from .verification import CheckResult, protocol_grid, random_photon_states, run_verification  # noqa: F401

__all__: list[str] = [
    "OracleResult",
    "oracle_enumerate",
    "FORMATS",
    "run_point",
    "run_sweep",
    "write_rows",
    "read_rows",
    "rows_to_text",
    "ScanResult",
    "optimal_alpha_scan",
    "CheckResult",
    "protocol_grid",
    "random_photon_states",
    "run_verification",
]
