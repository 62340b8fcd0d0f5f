from __future__ import annotations

"""High-level service for running the concentration protocol.

Entry-point for any front-end (CLI, notebooks, tests) that needs protocol
runs, state traces, sweeps or the verification suite. Only this layer touches
the filesystem.
"""

import logging
from pathlib import Path
from typing import List, Optional

from cghz_toolkit.config import ConfigManager
from cghz_toolkit.core.analysis.sweep import run_sweep, write_rows
from cghz_toolkit.core.analysis.verification import CheckResult, run_verification
from cghz_toolkit.core.errors import InvalidParameterError, ResourceCapError
from cghz_toolkit.core.models import CghzParams, EcpReport, SweepRow, SweepSpec
from cghz_toolkit.core.preview.state_printer import render_stage
from cghz_toolkit.core.protocol.ecp import run_ecp, score_stages, simulate_stages

logger = logging.getLogger(__name__)

__all__ = ["EcpService"]


class EcpService:
    """Business-logic façade with no argument parsing or printing."""

    def __init__(self, config: Optional[ConfigManager] = None) -> None:
        self.config = config or ConfigManager()
        self.logger = logger

    # ---------------------------------------------------------------------
    # PUBLIC API
    # ---------------------------------------------------------------------
    def run(self, params: CghzParams, *, reflection_phase: complex = 1.0) -> EcpReport:
        """Full protocol for a non-degenerate input (0 < |α| < 1)."""
        if params.is_degenerate:
            raise InvalidParameterError(
                "alpha must lie strictly between 0 and 1; the input is already a product of GHZ states"
            )
        self.logger.info("Running ECP for m=%d N=%d", params.m, params.n)
        return run_ecp(params, max_mn=self.config.max_mn(), reflection_phase=reflection_phase)

    def trace(self, params: CghzParams, stage: str) -> str:
        """State listing after *stage*; degenerate inputs are allowed here."""
        cap = min(self.config.limit("trace_max_mn"), self.config.max_mn())
        if params.mn > cap:
            raise ResourceCapError(f"trace prints states only for m·N ≤ {cap}, got {params.mn}")
        self.logger.info("Tracing stage %s for m=%d N=%d", stage, params.m, params.n)
        stages = simulate_stages(params, max_mn=cap)
        report = score_stages(stages) if stage == "final" else None
        return render_stage(stages, stage, report)

    def sweep(self, spec: SweepSpec, *, workers: int = 1, timing: bool = True) -> List[SweepRow]:
        return run_sweep(spec, workers=workers, timing=timing, max_mn=self.config.max_mn())

    def write_sweep(self, rows: List[SweepRow], out: str | Path, fmt: str = "csv") -> Path:
        """Write *rows* to *out*, creating parent folders. ``OSError`` propagates."""
        out = Path(out)
        self.logger.info("Writing %d rows to %s", len(rows), out)
        out.parent.mkdir(parents=True, exist_ok=True)
        with out.open("w", encoding="utf-8", newline="") as handle:
            write_rows(rows, handle, fmt)
        return out

    def verify(self, *, quick: bool = False, reflection_phase: complex = 1.0) -> List[CheckResult]:
        self.logger.info("Running verification suite (quick=%s)", quick)
        return run_verification(quick=quick, reflection_phase=reflection_phase)
