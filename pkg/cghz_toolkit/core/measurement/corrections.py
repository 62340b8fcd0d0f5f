from __future__ import annotations

"""Feed-forward corrections for |±⟩ detection outcomes.

A detection pattern leaves the surviving photons in the canonical state up
to a sign ``(-1)^(z·v)`` on each ket, where ``v`` marks the V-polarized
photons. Finding the phase flips ``z`` that undo it is a linear problem over
GF(2); :func:`solve_phase_correction` solves it with bitmask elimination and
returns the lightest solution. Tables per ``(m, N)`` are built once from a
reference run and cached.
"""

import functools
import itertools
import logging
import math
from typing import Dict, List, Mapping, Sequence, Tuple

from cghz_toolkit.core.errors import CorrectionNotFoundError, InvalidParameterError
from cghz_toolkit.core.fock.state import FockBasisState, PhotonState, fidelity
from cghz_toolkit.core.measurement.detection import DetectionPattern, Sign
from cghz_toolkit.core.optics.elements import CircuitElement, phase_flip

logger = logging.getLogger(__name__)

__all__ = ["solve_phase_correction", "correction_table", "correction_for"]

# Null spaces larger than this are not searched for a lighter coset member.
_MAX_NULL_DIM = 16


def _v_mask(key: FockBasisState, v_positions: Sequence[int]) -> int:
    mask = 0
    for bit, pos in enumerate(v_positions):
        if key[pos] & 1:
            mask |= 1 << bit
    return mask


def _relative_signs(conditional: PhotonState, canonical: PhotonState, tol: float) -> Dict[FockBasisState, int]:
    """Sign bit of ``conditional/canonical`` per ket, relative to the first ket."""
    if conditional.registry != canonical.registry:
        raise CorrectionNotFoundError("Conditional and canonical states live on different registries")
    if set(conditional.terms) != set(canonical.terms):
        raise CorrectionNotFoundError("Conditional state has a different ket support than the canonical state")

    keys = sorted(canonical.terms)
    ref = conditional.terms[keys[0]] / canonical.terms[keys[0]]
    signs: Dict[FockBasisState, int] = {}
    for key in keys:
        q = conditional.terms[key] / canonical.terms[key] / ref
        if abs(q - 1) <= tol:
            signs[key] = 0
        elif abs(q + 1) <= tol:
            signs[key] = 1
        else:
            raise CorrectionNotFoundError(f"Amplitude ratio {q:.6g} is not ±1; no phase-flip correction exists")
    return signs


def _solve_gf2(equations: Sequence[Tuple[int, int]], width: int) -> Tuple[int, List[int]]:
    """Particular solution and null-space basis of ``row·z = rhs`` over GF(2)."""
    basis: Dict[int, Tuple[int, int]] = {}
    for row, rhs in equations:
        while row:
            top = row.bit_length() - 1
            if top not in basis:
                basis[top] = (row, rhs)
                break
            prow, prhs = basis[top]
            row ^= prow
            rhs ^= prhs
        if row == 0 and rhs:
            raise CorrectionNotFoundError("Sign pattern is not a product of phase flips")

    def back_substitute(free: int) -> int:
        z = free
        for top in sorted(basis):
            row, rhs = basis[top]
            lower = row & ~(1 << top)
            value = (rhs if free == 0 else 0) ^ (bin(lower & z).count("1") & 1)
            if value:
                z |= 1 << top
            else:
                z &= ~(1 << top)
        return z

    particular = back_substitute(0)
    null = [back_substitute(1 << bit) for bit in range(width) if bit not in basis]
    return particular, null


def _lightest(particular: int, null: Sequence[int], width: int) -> int:
    if len(null) > _MAX_NULL_DIM:
        logger.warning("Correction null space of dimension %d not searched; using particular solution", len(null))
        return particular

    def rank(z: int) -> Tuple[int, Tuple[int, ...]]:
        bits = tuple(b for b in range(width) if z >> b & 1)
        return len(bits), bits

    best = particular
    for choice in itertools.product((0, 1), repeat=len(null)):
        z = particular
        for use, vec in zip(choice, null):
            if use:
                z ^= vec
        if rank(z) < rank(best):
            best = z
    return best


def solve_phase_correction(
    conditional: PhotonState, canonical: PhotonState, *, tol: float = 1e-9
) -> Tuple[CircuitElement, ...]:
    """Lightest set of phase flips mapping *conditional* onto *canonical*.

    Both states must be normalised and share a registry. Among equally light
    solutions the one touching the earliest-registered labels wins. The
    result is checked by fidelity.

    Raises
    ------
    CorrectionNotFoundError
        If no set of phase flips reaches *canonical* up to a global phase.
    """
    from cghz_toolkit.core.optics.engine import apply_circuit  # local import

    labels = canonical.registry.spatial_labels()
    v_positions = [canonical.registry.position(label, "V") for label in labels]
    signs = _relative_signs(conditional, canonical, tol)

    keys = sorted(signs)
    ref_mask = _v_mask(keys[0], v_positions)
    equations = [(_v_mask(k, v_positions) ^ ref_mask, signs[k]) for k in keys[1:]]
    particular, null = _solve_gf2(equations, len(labels))
    z = _lightest(particular, null, len(labels))

    elements = tuple(phase_flip(labels[b]) for b in range(len(labels)) if z >> b & 1)
    overlap = fidelity(apply_circuit(conditional, elements), canonical)
    if abs(overlap - 1.0) > tol:
        raise CorrectionNotFoundError(f"Phase-flip solution reaches fidelity {overlap:.12f} only")
    return elements


# ---------------------------------------------------------------------------
# Cached per-(m, N) tables
# ---------------------------------------------------------------------------

@functools.lru_cache(maxsize=None)
def correction_table(m: int, n: int) -> Mapping[Tuple[Sign, ...], Tuple[CircuitElement, ...]]:
    """Correction for every detection pattern of the ``(m, N)`` protocol.

    Keys are sign tuples in measured-label order. The table is built from a
    reference run at ``α = β = 1/√2``; conditional states depend on the
    input only through a global factor, so it applies to every input.
    """
    from cghz_toolkit.core.models import CghzParams
    from cghz_toolkit.core.protocol.ecp import simulate_stages
    from cghz_toolkit.core.protocol.states import canonical_state

    params = CghzParams.from_alpha(m, n, 1.0 / math.sqrt(2.0))
    stages = simulate_stages(params, max_mn=m * n)
    canonical = canonical_state(params, stages.labels.copy1)

    table: Dict[Tuple[Sign, ...], Tuple[CircuitElement, ...]] = {}
    for result in stages.measurements:
        key = result.pattern.signs_for(stages.labels.measured)
        table[key] = solve_phase_correction(result.conditional, canonical)
    flips = [len(v) for v in table.values()]
    logger.info(
        "correction table m=%d N=%d: %d patterns, %d-%d phase flips",
        m, n, len(table), min(flips, default=0), max(flips, default=0),
    )
    return table


def correction_for(pattern: DetectionPattern, m: int, n: int) -> Tuple[CircuitElement, ...]:
    """Elements that bring the state heralded by *pattern* to canonical form.

    Raises
    ------
    InvalidParameterError
        If *pattern* does not cover exactly the ``m·N`` measured labels.
    CorrectionNotFoundError
        If the pattern never occurs in the protocol.
    """
    from cghz_toolkit.core.protocol.labels import copy_labels

    measured = copy_labels(m, n).measured
    if len(pattern) != len(measured):
        raise InvalidParameterError(f"Pattern has {len(pattern)} signs; m·N = {len(measured)} expected")
    key = pattern.signs_for(measured)
    try:
        return correction_table(m, n)[key]
    except KeyError:
        raise CorrectionNotFoundError(f"Pattern {pattern} has zero probability for m={m}, N={n}") from None
