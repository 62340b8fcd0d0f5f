from __future__ import annotations

"""Text renderings of protocol states and reports."""

from .report_printer import report_to_dict, report_to_json, report_to_text  # noqa: F401
from .state_printer import STAGES, render_stage, render_state  # noqa: F401

__all__: list[str] = [
    "STAGES",
    "render_state",
    "render_stage",
    "report_to_dict",
    "report_to_json",
    "report_to_text",
]
