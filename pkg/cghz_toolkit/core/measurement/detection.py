from __future__ import annotations

"""Projective detection in the diagonal |±⟩ polarization basis.

:func:`measure_pm` enumerates every sign pattern exactly. With one photon in
each measured mode, projecting onto ``|±⟩ = (|H⟩ ± |V⟩)/√2`` multiplies a ket
by ``2^(-k/2)·(-1)^(number of V photons read as −)``, so all patterns are
computed at once from a parity matrix.
"""

import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Mapping, Sequence, Tuple

import numpy as np

from cghz_toolkit.core.errors import InvalidParameterError, MeasurementPreconditionError
from cghz_toolkit.core.fock.state import PRUNE_THRESHOLD, FockBasisState, PhotonState

logger = logging.getLogger(__name__)

__all__ = ["Sign", "DetectionPattern", "MeasurementResult", "measure_pm", "pattern_probabilities"]


class Sign(str, Enum):
    PLUS = "+"
    MINUS = "-"

    @property
    def bit(self) -> int:
        return 0 if self is Sign.PLUS else 1


@dataclass(frozen=True)
class DetectionPattern:
    """One detector reading: a sign per measured spatial label."""

    outcomes: Tuple[Tuple[str, Sign], ...]

    def __post_init__(self) -> None:
        labels = self.labels
        if len(set(labels)) != len(labels):
            raise InvalidParameterError(f"Detection pattern repeats a label: {labels}")

    @classmethod
    def from_signs(cls, labels: Sequence[str], signs: Sequence[Sign | str]) -> "DetectionPattern":
        if len(labels) != len(signs):
            raise InvalidParameterError(f"{len(labels)} labels but {len(signs)} signs")
        return cls(tuple((label, Sign(sign)) for label, sign in zip(labels, signs)))

    @property
    def labels(self) -> Tuple[str, ...]:
        return tuple(label for label, _ in self.outcomes)

    @property
    def signs(self) -> Tuple[Sign, ...]:
        return tuple(sign for _, sign in self.outcomes)

    def as_dict(self) -> Dict[str, Sign]:
        return dict(self.outcomes)

    def signs_for(self, labels: Sequence[str]) -> Tuple[Sign, ...]:
        """Signs re-ordered to *labels*; the label sets must be equal."""
        lookup = self.as_dict()
        if set(lookup) != set(labels) or len(labels) != len(lookup):
            raise InvalidParameterError(
                f"Pattern covers {sorted(lookup)} but {sorted(labels)} were measured"
            )
        return tuple(lookup[label] for label in labels)

    def minus_labels(self) -> Tuple[str, ...]:
        return tuple(label for label, sign in self.outcomes if sign is Sign.MINUS)

    def sign_string(self) -> str:
        return "".join(sign.value for sign in self.signs)

    def __len__(self) -> int:
        return len(self.outcomes)

    def __str__(self) -> str:
        return " ".join(f"{label}:{sign.value}" for label, sign in self.outcomes)


@dataclass(frozen=True)
class MeasurementResult:
    pattern: DetectionPattern
    probability: float
    conditional: PhotonState


def _v_bits(s: PhotonState, spatials: Sequence[str]) -> Tuple[List[FockBasisState], np.ndarray, np.ndarray]:
    """Reduced keys, V-occupation bits of the measured labels and amplitudes."""
    registry = s.registry
    pairs = [registry.positions(label) for label in spatials]
    measured = {p for pair in pairs for p in pair}
    keep = [i for i in range(len(registry)) if i not in measured]

    reduced: List[FockBasisState] = []
    bits = np.zeros((len(s), len(spatials)), dtype=np.int64)
    amps = np.zeros(len(s), dtype=complex)
    for row, (key, amp) in enumerate(s.terms.items()):
        for col, ((h, v), label) in enumerate(zip(pairs, spatials)):
            if key[h] + key[v] != 1:
                raise MeasurementPreconditionError(
                    f"Mode {label} holds {key[h] + key[v]} photons in a term; exactly 1 required"
                )
            bits[row, col] = key[v]
        reduced.append(tuple(key[i] for i in keep))
        amps[row] = amp
    return reduced, bits, amps


def measure_pm(s: PhotonState, spatials: Sequence[str]) -> List[MeasurementResult]:
    """Measure every label of *spatials* in the |±⟩ basis.

    Parameters
    ----------
    s
        State with exactly one photon in each measured mode of every term
        (apply :func:`post_select` first).
    spatials
        Labels to measure; patterns are reported in this order.

    Returns
    -------
    list[MeasurementResult]
        Patterns with non-zero probability, ``+`` before ``−`` with the first
        label most significant. Conditional states live on the registry with
        the measured labels removed and are normalised.

    Raises
    ------
    MeasurementPreconditionError
        If a measured mode does not hold exactly one photon in some term.
    """
    spatials = list(spatials)
    if len(set(spatials)) != len(spatials):
        raise InvalidParameterError(f"Measured labels repeat: {spatials}")
    s.registry.require(spatials)
    out_registry = s.registry.without(spatials)
    if s.is_zero():
        return []

    reduced, bits, amps = _v_bits(s, spatials)
    slots: Dict[FockBasisState, int] = {}
    slot_of = np.array([slots.setdefault(k, len(slots)) for k in reduced], dtype=np.int64)
    slot_keys = list(slots)

    k = len(spatials)
    patterns = np.array(list(itertools.product((0, 1), repeat=k)), dtype=np.int64).reshape(-1, k)
    parity = (patterns @ bits.T) % 2                    # (2^k, terms)
    contrib = np.where(parity == 1, -1.0, 1.0) * amps * 2.0 ** (-k / 2)

    projected = np.zeros((len(patterns), len(slot_keys)), dtype=complex)
    rows = np.repeat(np.arange(len(patterns))[:, None], len(reduced), axis=1)
    np.add.at(projected, (rows, np.broadcast_to(slot_of, rows.shape)), contrib)

    # Normalise before pruning: heralded amplitudes of a weak input can sit
    # below the absolute threshold while the branch itself is real.
    floor = PRUNE_THRESHOLD ** 2 * s.norm_squared()
    results: List[MeasurementResult] = []
    for index, row in enumerate(projected):
        probability = float(np.vdot(row, row).real)
        if probability <= floor:
            continue
        conditional = PhotonState.from_terms(
            out_registry, dict(zip(slot_keys, row / np.sqrt(probability)))
        )
        if conditional.is_zero():
            continue
        signs = [Sign.MINUS if b else Sign.PLUS for b in patterns[index]]
        results.append(
            MeasurementResult(
                pattern=DetectionPattern.from_signs(spatials, signs),
                probability=probability,
                conditional=conditional,
            )
        )
    logger.debug("|±⟩ measurement on %d labels: %d of %d patterns occur", k, len(results), len(patterns))
    return results


def pattern_probabilities(results: Sequence[MeasurementResult]) -> Mapping[DetectionPattern, float]:
    """``{pattern: probability}`` view of a measurement."""
    return {r.pattern: r.probability for r in results}
