from __future__ import annotations

"""Sparse multi-photon polarization states.

A :class:`PhotonState` maps occupation vectors (``FockBasisState`` tuples, one
entry per registered mode) to complex amplitudes. Every constructor merges
identical kets, prunes amplitudes below :data:`PRUNE_THRESHOLD`, enforces the
occupancy cap and checks photon-number superselection, so instances are
always in canonical form. States are immutable; all operations return new
states.
"""

import cmath
import logging
import math
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, Mapping, Optional, Sequence, Tuple

from cghz_toolkit.core.errors import (
    InvalidParameterError,
    NormalizationError,
    OccupancyError,
    PhotonNumberError,
)
from cghz_toolkit.core.fock.modes import ModeRegistry, Polarization

logger = logging.getLogger(__name__)

__all__ = [
    "FockBasisState",
    "PRUNE_THRESHOLD",
    "MAX_OCCUPANCY",
    "PhotonState",
    "basis_state",
    "from_kets",
    "tensor",
    "inner_product",
    "normalize",
    "combine",
    "fidelity",
    "states_close",
]

FockBasisState = Tuple[int, ...]
"""Photon count per registered mode, in registry order."""

PRUNE_THRESHOLD = 1e-12
MAX_OCCUPANCY = 3


def _canonical(registry: ModeRegistry, raw: Mapping[FockBasisState, complex]) -> Dict[FockBasisState, complex]:
    """Prune, validate and return a fresh term dictionary."""
    width = len(registry)
    terms: Dict[FockBasisState, complex] = {}
    photons: Optional[int] = None
    for key, amp in raw.items():
        if abs(amp) < PRUNE_THRESHOLD:
            continue
        if len(key) != width:
            raise InvalidParameterError(
                f"Occupation vector of length {len(key)} on a registry of {width} modes"
            )
        if key and max(key) > MAX_OCCUPANCY:
            raise OccupancyError(f"Occupancy {max(key)} exceeds the cap of {MAX_OCCUPANCY} photons per mode")
        total = sum(key)
        if photons is None:
            photons = total
        elif total != photons:
            raise PhotonNumberError(f"Superposition mixes {photons}- and {total}-photon kets")
        terms[key] = complex(amp)
    return terms


@dataclass(frozen=True)
class PhotonState:
    """Immutable sparse superposition of Fock basis states."""

    registry: ModeRegistry
    terms: Mapping[FockBasisState, complex]

    @classmethod
    def from_terms(cls, registry: ModeRegistry, raw: Mapping[FockBasisState, complex]) -> "PhotonState":
        """Build a state from already merged amplitudes (pruned and validated here)."""
        return cls(registry, _canonical(registry, raw))

    @classmethod
    def accumulate(
        cls, registry: ModeRegistry, pairs: Iterable[Tuple[FockBasisState, complex]]
    ) -> "PhotonState":
        """Build a state from ``(ket, amplitude)`` pairs, summing repeated kets."""
        merged: Dict[FockBasisState, complex] = {}
        for key, amp in pairs:
            merged[key] = merged.get(key, 0j) + amp
        return cls.from_terms(registry, merged)

    @classmethod
    def vacuum(cls, registry: ModeRegistry) -> "PhotonState":
        return cls(registry, {tuple([0] * len(registry)): 1 + 0j})

    # ------------------------------------------------------------------
    # Queries
    # ------------------------------------------------------------------
    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[Tuple[FockBasisState, complex]]:
        return iter(self.terms.items())

    def amplitude(self, key: FockBasisState) -> complex:
        return self.terms.get(tuple(key), 0j)

    def norm_squared(self) -> float:
        return math.fsum(abs(a) ** 2 for a in self.terms.values())

    def is_zero(self) -> bool:
        return not self.terms

    def photon_number(self) -> int:
        """Total photon number shared by every ket (0 for the zero state)."""
        counts = {sum(k) for k in self.terms}
        if len(counts) > 1:
            raise PhotonNumberError(f"State mixes photon numbers {sorted(counts)}")
        return counts.pop() if counts else 0

    def scaled(self, factor: complex) -> "PhotonState":
        return PhotonState.from_terms(self.registry, {k: a * factor for k, a in self.terms.items()})

    def with_global_phase_removed(self) -> "PhotonState":
        """Rotate so the lexicographically largest ket has a positive real amplitude."""
        if not self.terms:
            return self
        lead = self.terms[max(self.terms)]
        return self.scaled(cmath.exp(-1j * cmath.phase(lead)))


# ---------------------------------------------------------------------------
# Construction from readable kets
# ---------------------------------------------------------------------------

def basis_state(registry: ModeRegistry, assignment: Mapping[str, str]) -> FockBasisState:
    """Occupation vector with one photon per ``{spatial: "H"|"V"}`` entry.

    Labels absent from *assignment* are empty. A value such as ``"HV"``
    places several photons on the same spatial label.
    """
    occ = [0] * len(registry)
    for spatial, pols in assignment.items():
        for pol in pols:
            occ[registry.position(spatial, Polarization(pol))] += 1
    return tuple(occ)


def from_kets(
    registry: ModeRegistry, kets: Iterable[Tuple[complex, Mapping[str, str]]]
) -> PhotonState:
    """Sum ``amplitude × |assignment⟩`` terms into a state (not renormalised)."""
    return PhotonState.accumulate(registry, ((basis_state(registry, a), amp) for amp, a in kets))


# ---------------------------------------------------------------------------
# Elementary linear algebra
# ---------------------------------------------------------------------------

def tensor(left: PhotonState, right: PhotonState) -> PhotonState:
    """Product state on ``left.registry`` followed by ``right.registry``.

    Raises
    ------
    RegistryCollisionError
        If the two registries share a spatial label.
    """
    registry = left.registry.concat(right.registry)
    terms = {
        kl + kr: al * ar
        for kl, al in left.terms.items()
        for kr, ar in right.terms.items()
    }
    return PhotonState.from_terms(registry, terms)


def _require_same_registry(a: PhotonState, b: PhotonState) -> None:
    if a.registry != b.registry:
        raise InvalidParameterError("States live on different mode registries")


def inner_product(a: PhotonState, b: PhotonState) -> complex:
    """⟨a|b⟩ = Σ conj(a_k)·b_k over a shared registry."""
    _require_same_registry(a, b)
    small, large = (a, b) if len(a) <= len(b) else (b, a)
    total = 0j
    for key, amp in small.terms.items():
        other = large.terms.get(key)
        if other is not None:
            total += amp.conjugate() * other if small is a else other.conjugate() * amp
    return total


def normalize(s: PhotonState) -> Tuple[PhotonState, float]:
    """Return ``(s/‖s‖, Σ|amp|²)``.

    The second element is the squared norm of the input, i.e. a probability
    when *s* is an unnormalised projection residue.
    """
    weight = s.norm_squared()
    if s.is_zero() or weight == 0.0:
        raise NormalizationError("Cannot normalise the zero state")
    return s.scaled(1.0 / math.sqrt(weight)), weight


def combine(terms: Sequence[Tuple[complex, PhotonState]]) -> PhotonState:
    """Linear combination Σ cᵢ·sᵢ of states sharing one registry."""
    if not terms:
        raise InvalidParameterError("combine() needs at least one state")
    registry = terms[0][1].registry
    merged: Dict[FockBasisState, complex] = {}
    for coeff, state in terms:
        _require_same_registry(terms[0][1], state)
        for key, amp in state.terms.items():
            merged[key] = merged.get(key, 0j) + coeff * amp
    return PhotonState.from_terms(registry, merged)


def fidelity(a: PhotonState, b: PhotonState) -> float:
    """|⟨a|b⟩|² clipped to [0, 1]; both states are expected normalised."""
    return min(1.0, max(0.0, abs(inner_product(a, b)) ** 2))


def states_close(a: PhotonState, b: PhotonState, tol: float = 1e-12) -> bool:
    """Term-by-term amplitude equality within *tol*."""
    if a.registry != b.registry:
        return False
    for key in set(a.terms) | set(b.terms):
        if abs(a.amplitude(key) - b.amplitude(key)) > tol:
            return False
    return True
