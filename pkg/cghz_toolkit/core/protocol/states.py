from __future__ import annotations

"""GHZ and concatenated-GHZ state builders."""

import logging
import math
from functools import reduce
from typing import Sequence

from cghz_toolkit.core.errors import CghzError, InvalidParameterError
from cghz_toolkit.core.fock.modes import ModeRegistry
from cghz_toolkit.core.fock.state import PhotonState, combine, states_close, tensor
from cghz_toolkit.core.measurement.detection import Sign
from cghz_toolkit.core.models import CghzParams
from cghz_toolkit.core.optics.elements import Circuit, hadamard_layer, phase_flip
from cghz_toolkit.core.optics.engine import apply_circuit
from cghz_toolkit.core.protocol.labels import Blocks, flatten

logger = logging.getLogger(__name__)

__all__ = [
    "ghz_state",
    "c_ghz_state",
    "swap_circuit",
    "swapped_copy",
    "target_state",
    "canonical_state",
]

_SQRT1_2 = 1.0 / math.sqrt(2.0)


def ghz_state(m: int, sign: Sign | str | int, labels: Sequence[str]) -> PhotonState:
    """(|H…H⟩ ± |V…V⟩)/√2 on *labels*.

    Raises
    ------
    InvalidParameterError
        If ``m < 1`` or ``len(labels) != m``.
    RegistryCollisionError
        If *labels* repeats a label.
    """
    if m < 1 or len(labels) != m:
        raise InvalidParameterError(f"GHZ state of {m} photons needs {m} labels, got {list(labels)}")
    if isinstance(sign, int):
        sign = Sign.PLUS if sign > 0 else Sign.MINUS
    sign = Sign(sign)
    registry = ModeRegistry.from_spatials(labels)
    all_h = tuple([1, 0] * m)
    all_v = tuple([0, 1] * m)
    relative = 1.0 if sign is Sign.PLUS else -1.0
    return PhotonState.from_terms(registry, {all_h: _SQRT1_2, all_v: relative * _SQRT1_2})


def _check_blocks(p: CghzParams, blocks: Blocks) -> None:
    if len(blocks) != p.n or any(len(b) != p.m for b in blocks):
        raise InvalidParameterError(f"Expected {p.n} logic qubits of {p.m} labels, got {blocks}")


def _branch(m: int, sign: Sign, blocks: Blocks) -> PhotonState:
    return reduce(tensor, (ghz_state(m, sign, block) for block in blocks))


def c_ghz_state(p: CghzParams, blocks: Blocks) -> PhotonState:
    """α·GHZ⁺_m^⊗N + β·GHZ⁻_m^⊗N with logic qubit ``j`` on ``blocks[j]``."""
    _check_blocks(p, blocks)
    plus = _branch(p.m, Sign.PLUS, blocks)
    minus = _branch(p.m, Sign.MINUS, blocks)
    return combine([(p.alpha, plus), (p.beta, minus)])


def swap_circuit(blocks: Blocks) -> Circuit:
    """Phase flip on the first photon of each logic qubit (GHZ⁺_m ↔ GHZ⁻_m)."""
    return Circuit(tuple(phase_flip(block[0]) for block in blocks))


def swapped_copy(p: CghzParams, blocks: Blocks) -> PhotonState:
    """β·GHZ⁺_m^⊗N + α·GHZ⁻_m^⊗N, prepared from the α-copy by phase flips.

    The direct construction with exchanged coefficients is built alongside
    and must agree with the flipped copy.
    """
    flipped = apply_circuit(c_ghz_state(p, blocks), swap_circuit(blocks))
    direct = c_ghz_state(p.swapped(), blocks)
    if not states_close(flipped, direct, tol=1e-12):
        raise CghzError("Phase-flip preparation of the swapped copy disagrees with the direct construction")
    return flipped


def target_state(p: CghzParams, blocks: Blocks) -> PhotonState:
    """Maximally entangled C-GHZ, (GHZ⁺_m^⊗N + GHZ⁻_m^⊗N)/√2."""
    _check_blocks(p, blocks)
    return combine([(_SQRT1_2, _branch(p.m, Sign.PLUS, blocks)), (_SQRT1_2, _branch(p.m, Sign.MINUS, blocks))])


def canonical_state(p: CghzParams, blocks: Blocks) -> PhotonState:
    """Target state before the final Hadamard layer; corrections aim here."""
    return apply_circuit(target_state(p, blocks), hadamard_layer(flatten(blocks)))
