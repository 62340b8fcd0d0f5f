from __future__ import annotations

"""Sparse Fock-space representation of polarization-encoded photons."""

from .modes import ModeId, ModeRegistry, Polarization  # noqa: F401
from .state import (  # noqa: F401
    MAX_OCCUPANCY,
    PRUNE_THRESHOLD,
    FockBasisState,
    PhotonState,
    basis_state,
    combine,
    fidelity,
    from_kets,
    inner_product,
    normalize,
    states_close,
    tensor,
)

__all__: list[str] = [
    "ModeId",
    "ModeRegistry",
    "Polarization",
    "FockBasisState",
    "PhotonState",
    "PRUNE_THRESHOLD",
    "MAX_OCCUPANCY",
    "basis_state",
    "from_kets",
    "tensor",
    "inner_product",
    "normalize",
    "combine",
    "fidelity",
    "states_close",
]
