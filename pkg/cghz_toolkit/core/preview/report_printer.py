from __future__ import annotations

"""Human and JSON renderings of :class:`EcpReport`."""

import json
from typing import Any, Dict

from cghz_toolkit.core.models import EcpReport
from cghz_toolkit.core.utils import format_amplitude

__all__ = ["report_to_dict", "report_to_json", "report_to_text"]


def _complex_pair(value: complex) -> list[float]:
    return [value.real, value.imag]


def report_to_dict(report: EcpReport) -> Dict[str, Any]:
    p = report.params
    return {
        "m": p.m,
        "N": p.n,
        "alpha": _complex_pair(p.alpha),
        "beta": _complex_pair(p.beta),
        "success_probability": report.success_probability,
        "analytic_probability": report.analytic_probability,
        "min_fidelity": report.min_fidelity,
        "ok": report.ok,
        "outcomes": [
            {
                "pattern": o.pattern.sign_string(),
                "probability": o.probability,
                "corrections": [str(e) for e in o.corrections],
                "fidelity": o.fidelity,
            }
            for o in report.outcomes
        ],
    }


def report_to_json(report: EcpReport) -> str:
    return json.dumps(report_to_dict(report), indent=2) + "\n"


def report_to_text(report: EcpReport) -> str:
    """Summary block followed by a per-outcome table."""
    p = report.params
    lines = [
        f"m = {p.m}, N = {p.n}, alpha = {format_amplitude(p.alpha)}, beta = {format_amplitude(p.beta)}",
        f"success_probability  {report.success_probability:.17g}",
        f"analytic_probability {report.analytic_probability:.17g}",
        f"min_fidelity         {report.min_fidelity:.17g}",
        f"outcomes             {len(report.outcomes)}",
    ]
    if report.outcomes:
        width = max(len(o.pattern) for o in report.outcomes)
        lines.append("")
        lines.append(f"{'pattern':<{max(width, 7)}}  {'probability':<24}  {'fidelity':<20}  corrections")
        for o in report.outcomes:
            corrections = " ".join(str(e) for e in o.corrections) or "-"
            lines.append(
                f"{o.pattern.sign_string():<{max(width, 7)}}  {o.probability:<24.17g}  {o.fidelity:<20.15f}  {corrections}"
            )
    for failure in report.invariant_failures():
        lines.append(f"FAILED: {failure}")
    return "\n".join(lines) + "\n"
