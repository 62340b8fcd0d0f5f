from __future__ import annotations

"""Exception hierarchy for the simulator core.

Core code raises these and never exits; front-ends map them to exit codes
(see :mod:`cghz_toolkit.cli`). Each class also derives from the closest
builtin so callers may catch either.
"""

__all__ = [
    "CghzError",
    "InvalidParameterError",
    "RegistryCollisionError",
    "UnknownModeError",
    "OccupancyError",
    "PhotonNumberError",
    "NormalizationError",
    "MeasurementPreconditionError",
    "CorrectionNotFoundError",
    "ResourceCapError",
    "ConfigError",
]


class CghzError(Exception):
    """Base class for every error raised by cghz_toolkit."""


class InvalidParameterError(CghzError, ValueError):
    """Parameters violate a documented precondition (m, N, alpha, grids…)."""


class RegistryCollisionError(CghzError, ValueError):
    """Two registries (or a rename) would share a spatial label."""


class UnknownModeError(CghzError, KeyError):
    """A spatial label or mode is not registered."""

    def __str__(self) -> str:  # KeyError quotes its message otherwise
        return str(self.args[0]) if self.args else ""


class OccupancyError(CghzError, ValueError):
    """A mode would hold more photons than the supported maximum."""


class PhotonNumberError(CghzError, ValueError):
    """A superposition mixes kets with different total photon numbers."""


class NormalizationError(CghzError, ZeroDivisionError):
    """The zero state cannot be normalised."""


class MeasurementPreconditionError(CghzError, ValueError):
    """A measured mode does not hold exactly one photon in every term."""


class CorrectionNotFoundError(CghzError, RuntimeError):
    """No phase-flip correction maps a conditional state onto the canonical one."""


class ResourceCapError(CghzError, RuntimeError):
    """m·N exceeds the configured desk-scale cap."""


class ConfigError(CghzError, ValueError):
    """A configuration file could not be read or holds unknown keys."""
