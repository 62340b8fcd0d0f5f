from __future__ import annotations

"""Apply optical elements to sparse photon states.

Every element is handled by one routine: the creation operator of each input
mode is replaced by the matching column of the element's unitary, and the
resulting monomials are regrouped into occupation-number kets with their
bosonic ``√(n!)`` factors. Transitions are memoised per local occupation
pattern, so a call costs one expansion per distinct pattern rather than per
ket.
"""

import itertools
import logging
import math
from collections import defaultdict
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from cghz_toolkit.core.errors import RegistryCollisionError
from cghz_toolkit.core.fock.state import FockBasisState, PhotonState
from cghz_toolkit.core.optics.elements import (
    Circuit,
    CircuitElement,
    bit_flip,
    hwp,
    pbs,
    phase_flip,
)

logger = logging.getLogger(__name__)

__all__ = [
    "apply_element",
    "apply_circuit",
    "apply_hwp",
    "apply_pbs",
    "apply_phase_flip",
    "apply_bit_flip",
]

_Transitions = List[Tuple[Tuple[int, ...], complex]]


def _local_transitions(matrix: np.ndarray, occupation: Tuple[int, ...]) -> _Transitions:
    """Expand Π (Σ_j U[j,k] b_j†)^{n_k} / √(n_k!) into occupation kets."""
    width = matrix.shape[0]
    photons = [k for k, n in enumerate(occupation) for _ in range(n)]
    norm_in = math.prod(math.factorial(n) for n in occupation)

    merged: Dict[Tuple[int, ...], complex] = defaultdict(complex)
    for targets in itertools.product(range(width), repeat=len(photons)):
        coeff = 1 + 0j
        for j, k in zip(targets, photons):
            coeff *= matrix[j, k]
            if coeff == 0:
                break
        if coeff == 0:
            continue
        out = [0] * width
        for j in targets:
            out[j] += 1
        merged[tuple(out)] += coeff

    result: _Transitions = []
    for out, coeff in merged.items():
        norm_out = math.prod(math.factorial(n) for n in out)
        result.append((out, complex(coeff) * math.sqrt(norm_out / norm_in)))
    return result


def _check_outputs(s: PhotonState, element: CircuitElement) -> None:
    """Fresh PBS outputs must not collide with labels already in use."""
    for label in element.relabeling().values():
        if label not in element.inputs and s.registry.has_spatial(label):
            raise RegistryCollisionError(f"{element}: output label '{label}' is already registered")


def apply_element(s: PhotonState, element: CircuitElement) -> PhotonState:
    """Return *element* applied to *s*.

    Raises
    ------
    UnknownModeError
        If an input label is not registered.
    RegistryCollisionError
        If a PBS routes into an output label already present.
    OccupancyError
        If an output mode would exceed the occupancy cap.
    """
    registry = s.registry
    registry.require(element.inputs)
    _check_outputs(s, element)
    positions = [registry.position(m.spatial, m.pol) for m in element.input_modes()]

    cache: Dict[Tuple[int, ...], _Transitions] = {}
    merged: Dict[FockBasisState, complex] = defaultdict(complex)
    for key, amp in s.terms.items():
        local = tuple(key[p] for p in positions)
        transitions = cache.get(local)
        if transitions is None:
            transitions = _local_transitions(element.matrix, local)
            cache[local] = transitions
        for out, coeff in transitions:
            new_key = list(key)
            for p, n in zip(positions, out):
                new_key[p] = n
            merged[tuple(new_key)] += amp * coeff

    renames = element.relabeling()
    out_registry = registry.renamed(renames) if renames else registry
    result = PhotonState.from_terms(out_registry, merged)
    logger.debug("%s: %d -> %d terms", element, len(s), len(result))
    return result


def apply_circuit(s: PhotonState, circuit: Circuit | Sequence[CircuitElement]) -> PhotonState:
    """Fold the elements of *circuit* over *s* in order."""
    for element in circuit:
        s = apply_element(s, element)
    return s


# ---------------------------------------------------------------------------
# Per-element shorthands
# ---------------------------------------------------------------------------

def apply_hwp(s: PhotonState, spatial: str) -> PhotonState:
    return apply_element(s, hwp(spatial))


def apply_pbs(
    s: PhotonState,
    in1: str,
    in2: str,
    out1: Optional[str] = None,
    out2: Optional[str] = None,
    *,
    reflection_phase: complex = 1.0,
) -> PhotonState:
    """H transmits (in1→out1, in2→out2), V reflects (in1→out2, in2→out1)."""
    return apply_element(s, pbs(in1, in2, out1, out2, reflection_phase=reflection_phase))


def apply_phase_flip(s: PhotonState, spatial: str) -> PhotonState:
    return apply_element(s, phase_flip(spatial))


def apply_bit_flip(s: PhotonState, spatial: str) -> PhotonState:
    return apply_element(s, bit_flip(spatial))
