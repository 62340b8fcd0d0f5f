from __future__ import annotations

"""Optical mode bookkeeping.

A :class:`ModeId` is one (spatial label, polarization) pair; a
:class:`ModeRegistry` fixes the order in which modes appear in every
occupation vector built on it.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, Sequence, Tuple

from cghz_toolkit.core.errors import RegistryCollisionError, UnknownModeError

__all__ = ["Polarization", "ModeId", "ModeRegistry"]


class Polarization(str, Enum):
    """Photon polarization: horizontal or vertical."""

    H = "H"
    V = "V"


@dataclass(frozen=True)
class ModeId:
    """One optical mode, addressed by spatial label and polarization."""

    spatial: str
    pol: Polarization

    def __str__(self) -> str:
        return f"{self.spatial}:{self.pol.value}"


@dataclass(frozen=True)
class ModeRegistry:
    """Ordered, duplicate-free list of modes.

    Registration order is the position of each mode inside occupation
    vectors, so two states can only be compared when their registries are
    equal.
    """

    modes: Tuple[ModeId, ...]
    index: Dict[ModeId, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        index: Dict[ModeId, int] = {}
        for pos, mode in enumerate(self.modes):
            if mode in index:
                raise RegistryCollisionError(f"Mode {mode} registered twice")
            index[mode] = pos
        object.__setattr__(self, "index", index)

    # ------------------------------------------------------------------
    # Construction helpers
    # ------------------------------------------------------------------
    @classmethod
    def from_spatials(cls, spatials: Iterable[str]) -> "ModeRegistry":
        """Register ``(label, H)`` and ``(label, V)`` for every label, in order."""
        modes = []
        for label in spatials:
            modes.append(ModeId(label, Polarization.H))
            modes.append(ModeId(label, Polarization.V))
        return cls(tuple(modes))

    def concat(self, other: "ModeRegistry") -> "ModeRegistry":
        """Return *self*'s modes followed by *other*'s.

        Raises
        ------
        RegistryCollisionError
            If the two registries share a spatial label.
        """
        shared = set(self.spatial_labels()) & set(other.spatial_labels())
        if shared:
            raise RegistryCollisionError(
                f"Registries share spatial labels: {', '.join(sorted(shared))}"
            )
        return ModeRegistry(self.modes + other.modes)

    def without(self, spatials: Iterable[str]) -> "ModeRegistry":
        """Return the registry with every mode of *spatials* removed."""
        drop = set(spatials)
        return ModeRegistry(tuple(m for m in self.modes if m.spatial not in drop))

    def renamed(self, mapping: Dict[str, str]) -> "ModeRegistry":
        """Rename spatial labels in place (positions kept)."""
        modes = tuple(ModeId(mapping.get(m.spatial, m.spatial), m.pol) for m in self.modes)
        return ModeRegistry(modes)

    # ------------------------------------------------------------------
    # Lookups
    # ------------------------------------------------------------------
    def __len__(self) -> int:
        return len(self.modes)

    def position(self, spatial: str, pol: Polarization | str) -> int:
        """Index of ``(spatial, pol)`` inside occupation vectors."""
        try:
            return self.index[ModeId(spatial, Polarization(pol))]
        except KeyError:
            raise UnknownModeError(f"Mode {spatial}:{Polarization(pol).value} is not registered") from None

    def positions(self, spatial: str) -> Tuple[int, int]:
        """``(H position, V position)`` of a spatial label."""
        return self.position(spatial, Polarization.H), self.position(spatial, Polarization.V)

    def has_spatial(self, spatial: str) -> bool:
        return ModeId(spatial, Polarization.H) in self.index

    def require(self, spatials: Sequence[str]) -> None:
        """Raise :class:`UnknownModeError` unless every label is registered with both polarizations."""
        for label in spatials:
            self.positions(label)

    def spatial_labels(self) -> Tuple[str, ...]:
        """Distinct spatial labels in registration order."""
        seen: Dict[str, None] = {}
        for m in self.modes:
            seen.setdefault(m.spatial, None)
        return tuple(seen)
