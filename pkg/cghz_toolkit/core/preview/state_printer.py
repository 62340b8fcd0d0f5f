from __future__ import annotations

"""Plain-text listings of protocol states for ``cghz trace``.

This module is **read-only**: it formats :class:`EcpStages` and
:class:`EcpReport` objects and never runs the simulation itself, so it can be
reused from tests or any other front-end.
"""

from typing import Iterable, List, Optional

from cghz_toolkit.core.errors import InvalidParameterError
from cghz_toolkit.core.fock.state import PhotonState, normalize
from cghz_toolkit.core.measurement.detection import Sign
from cghz_toolkit.core.models import EcpReport
from cghz_toolkit.core.protocol.ecp import EcpStages
from cghz_toolkit.core.utils import format_amplitude, format_ket

__all__ = [
    "STAGES",
    "render_state",
    "render_stage",
]

STAGES = ("prepared", "hwp", "pbs", "postselect", "measured", "final")


# ---------------------------------------------------------------------------
# Single state
# ---------------------------------------------------------------------------

def _sort_key(key: tuple) -> tuple:
    # H before V on the first label that differs
    return tuple(-k for k in key)


def render_state(state: PhotonState, *, digits: int = 10) -> List[str]:
    """One ``amplitude × ket`` line per basis ket, in a fixed ket order."""
    return [
        f"{format_amplitude(state.terms[key], digits)} × {format_ket(state.registry, key)}"
        for key in sorted(state.terms, key=_sort_key)
    ]


def _section(title: str, state: PhotonState) -> List[str]:
    return [f"# {title} ({len(state)} kets)", *render_state(state)]


# ---------------------------------------------------------------------------
# Stage dispatcher
# ---------------------------------------------------------------------------

def render_stage(stages: EcpStages, stage: str, report: Optional[EcpReport] = None) -> str:
    """Text dump of *stage*; ``final`` additionally needs the run *report*."""
    if stage not in STAGES:
        raise InvalidParameterError(f"Unknown stage {stage!r}; expected one of {', '.join(STAGES)}")

    p = stages.params
    lines = [f"# m={p.m} N={p.n} alpha={format_amplitude(p.alpha)} beta={format_amplitude(p.beta)} stage={stage}"]

    if stage == "prepared":
        lines += _section("copy 1", stages.copy1)
        lines += _section("copy 2", stages.copy2)
    elif stage == "hwp":
        lines += _section("after HWP layer", stages.after_hwp)
    elif stage == "pbs":
        lines += _section("after PBS layer", stages.after_pbs)
    elif stage == "postselect":
        lines += _postselect_lines(stages)
    elif stage == "measured":
        lines += _measured_lines(stages)
    else:
        if report is None:
            raise InvalidParameterError("stage 'final' needs the protocol report")
        lines += _final_lines(report, stages.labels.measured)
    return "\n".join(lines) + "\n"


def _postselect_lines(stages: EcpStages) -> List[str]:
    if stages.kept.is_zero():
        return ["# no ket has one photon in every output (probability 0)"]
    kept, _ = normalize(stages.kept)
    lines = [f"# post-selection probability {stages.kept_probability:.17g}"]
    return lines + _section("post-selected, normalised", kept)


def _measured_lines(stages: EcpStages) -> List[str]:
    if not stages.measurements:
        return ["# no detection pattern occurs"]
    lines: List[str] = []
    for result in stages.measurements:
        lines.append(f"# pattern {result.pattern.sign_string()} p={result.probability:.17g}")
        lines += render_state(result.conditional)
    return lines


def _final_lines(report: EcpReport, measured: Iterable[str]) -> List[str]:
    measured = tuple(measured)
    all_plus = tuple(Sign.PLUS for _ in measured)
    for outcome in report.outcomes:
        if outcome.pattern.signs_for(measured) == all_plus:
            corrections = ", ".join(str(e) for e in outcome.corrections) or "none"
            return [
                f"# pattern {'+' * len(measured)} corrections: {corrections}",
                f"# fidelity with target {outcome.fidelity:.17g}",
                *_section("corrected copy 1 after Hadamard layer", outcome.corrected_state),
            ]
    return ["# the all-plus pattern does not occur"]
