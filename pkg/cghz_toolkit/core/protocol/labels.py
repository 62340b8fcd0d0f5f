from __future__ import annotations

"""Spatial-label schemes for the two input copies.

The two smallest protocol sizes reuse the familiar hand labels (``a1, c1 /
b1, d1`` and ``a1, c1, t1 / b1, d1, h1``); every other size uses
``q{j}p{k}c{copy}`` for photon ``k`` of logic qubit ``j``.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Tuple

from cghz_toolkit.core.errors import InvalidParameterError

__all__ = ["Blocks", "CopyLabels", "copy_labels", "flatten"]

Blocks = Tuple[Tuple[str, ...], ...]
"""N logic qubits, each a tuple of m spatial labels."""

_PRESETS: Dict[Tuple[int, int], Tuple[Tuple[str, ...], ...]] = {
    (2, 2): (("a", "c"), ("b", "d")),
    (3, 2): (("a", "c", "t"), ("b", "d", "h")),
}


def flatten(blocks: Blocks) -> Tuple[str, ...]:
    return tuple(label for block in blocks for label in block)


@dataclass(frozen=True)
class CopyLabels:
    """Labels of copy 1 and copy 2 for one ``(m, N)``.

    Photon ``k`` of logic qubit ``j`` in copy 1 meets its counterpart in
    copy 2 on a PBS; PBS outputs keep the input labels.
    """

    copy1: Blocks
    copy2: Blocks

    @property
    def flat1(self) -> Tuple[str, ...]:
        return flatten(self.copy1)

    @property
    def flat2(self) -> Tuple[str, ...]:
        return flatten(self.copy2)

    @property
    def pairs(self) -> Tuple[Tuple[str, str], ...]:
        """PBS input pairs ``(copy-1 label, copy-2 label)``, block-major."""
        return tuple(zip(self.flat1, self.flat2))

    @property
    def measured(self) -> Tuple[str, ...]:
        """Copy-2 outputs read by the |±⟩ detectors, block-major."""
        return self.flat2

    def partner(self, label: str) -> str:
        """Copy-1 label paired with copy-2 *label* (or the reverse)."""
        for one, two in self.pairs:
            if label == two:
                return one
            if label == one:
                return two
        raise InvalidParameterError(f"Label {label!r} is not part of this protocol")


@lru_cache(maxsize=None)
def copy_labels(m: int, n: int) -> CopyLabels:
    """Label scheme for ``m`` photons per logic qubit and ``n`` logic qubits."""
    if m < 1 or n < 1:
        raise InvalidParameterError(f"m and N must be positive, got m={m}, N={n}")
    preset = _PRESETS.get((m, n))
    if preset is not None:
        return CopyLabels(
            copy1=tuple(tuple(f"{p}1" for p in block) for block in preset),
            copy2=tuple(tuple(f"{p}2" for p in block) for block in preset),
        )
    return CopyLabels(
        copy1=tuple(tuple(f"q{j}p{k}c1" for k in range(1, m + 1)) for j in range(1, n + 1)),
        copy2=tuple(tuple(f"q{j}p{k}c2" for k in range(1, m + 1)) for j in range(1, n + 1)),
    )
