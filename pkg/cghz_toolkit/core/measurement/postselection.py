from __future__ import annotations

"""Photon-count post-selection."""

import logging
from dataclasses import dataclass
from typing import Iterable, Tuple

from cghz_toolkit.core.errors import InvalidParameterError
from cghz_toolkit.core.fock.state import PhotonState

logger = logging.getLogger(__name__)

__all__ = ["PostSelectionRule", "post_select"]


@dataclass(frozen=True)
class PostSelectionRule:
    """Exact photon count (H + V) required on each listed spatial label."""

    required: Tuple[Tuple[str, int], ...]

    def __post_init__(self) -> None:
        labels = [label for label, _ in self.required]
        if len(set(labels)) != len(labels):
            raise InvalidParameterError(f"Post-selection lists a label twice: {labels}")
        for label, count in self.required:
            if count < 0:
                raise InvalidParameterError(f"Negative photon count required on {label}")

    @classmethod
    def one_photon_each(cls, labels: Iterable[str]) -> "PostSelectionRule":
        return cls(tuple((label, 1) for label in labels))

    @property
    def labels(self) -> Tuple[str, ...]:
        return tuple(label for label, _ in self.required)

    def __len__(self) -> int:
        return len(self.required)


def post_select(s: PhotonState, rule: PostSelectionRule) -> Tuple[PhotonState, float]:
    """Keep the terms whose photon counts match *rule*.

    Returns the unnormalised kept part and its squared norm. An empty kept
    part is a valid result with probability 0.
    """
    registry = s.registry
    checks = [(registry.positions(label), count) for label, count in rule.required]

    kept = {
        key: amp
        for key, amp in s.terms.items()
        if all(key[h] + key[v] == count for (h, v), count in checks)
    }
    result = PhotonState.from_terms(registry, kept)
    probability = result.norm_squared()
    logger.debug("post-selection on %d labels kept %d of %d terms (p=%.6g)", len(rule), len(result), len(s), probability)
    return result, probability
