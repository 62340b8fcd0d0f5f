from __future__ import annotations

"""Post-selection, |±⟩ detection and outcome corrections."""

from .corrections import correction_for, correction_table, solve_phase_correction  # noqa: F401
from .detection import (  # noqa: F401
    DetectionPattern,
    MeasurementResult,
    Sign,
    measure_pm,
    pattern_probabilities,
)
from .postselection import PostSelectionRule, post_select  # noqa: F401

__all__: list[str] = [
    "PostSelectionRule",
    "post_select",
    "Sign",
    "DetectionPattern",
    "MeasurementResult",
    "measure_pm",
    "pattern_probabilities",
    "solve_phase_correction",
    "correction_table",
    "correction_for",
]
