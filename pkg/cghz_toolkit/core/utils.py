from __future__ import annotations

"""Simple reusable helper functions.

These helpers are side-effect-free and contain no disk I/O; they can be used
across all layers of the toolkit.
"""

import math
from typing import Optional

from cghz_toolkit.core.fock.modes import ModeRegistry
from cghz_toolkit.core.fock.state import FockBasisState

__all__ = [
    "format_float",
    "parse_float",
    "format_amplitude",
    "format_ket",
]

MISSING = "nan"


def format_float(value: Optional[float]) -> str:
    """17 significant digits (round-trips any double); ``None`` becomes ``nan``."""
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return MISSING
    return format(float(value), ".17g")


def parse_float(text: str) -> Optional[float]:
    """Inverse of :func:`format_float`."""
    text = text.strip()
    if not text or text.lower() == MISSING:
        return None
    return float(text)


def format_amplitude(amp: complex, digits: int = 10) -> str:
    """Signed fixed-point real part, with an imaginary part only when present."""
    amp = complex(amp)
    real = f"{amp.real:+.{digits}f}"
    if abs(amp.imag) < 10 ** (-digits):
        return real
    return f"({real}{amp.imag:+.{digits}f}j)"


def format_ket(registry: ModeRegistry, key: FockBasisState) -> str:
    """``|H⟩a1|V⟩c1`` style rendering; empty labels are omitted."""
    parts = []
    for label in registry.spatial_labels():
        h, v = registry.positions(label)
        pols = "H" * key[h] + "V" * key[v]
        if pols:
            parts.append(f"|{pols}⟩{label}")
    return "".join(parts) or "|vac⟩"
