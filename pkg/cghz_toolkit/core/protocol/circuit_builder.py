from __future__ import annotations

"""Optical layout of the concentration protocol for any (m, N).

The layout depends only on ``m`` and ``N``: an HWP on every photon of both
copies, then one PBS per photon pairing copy 1 with copy 2. The coefficients
of the input never enter.
"""

import logging
from typing import NamedTuple, Optional, Tuple

from cghz_toolkit.core.errors import ResourceCapError
from cghz_toolkit.core.measurement.postselection import PostSelectionRule
from cghz_toolkit.core.models import CghzParams
from cghz_toolkit.core.optics.elements import Circuit, hadamard_layer, pbs
from cghz_toolkit.core.protocol.labels import CopyLabels, copy_labels

logger = logging.getLogger(__name__)

__all__ = ["EcpCircuit", "check_cap", "build_ecp_circuit"]


class EcpCircuit(NamedTuple):
    hwp_layer: Circuit
    pbs_layer: Circuit
    rule: PostSelectionRule
    measured: Tuple[str, ...]
    labels: CopyLabels

    @property
    def circuit(self) -> Circuit:
        return self.hwp_layer + self.pbs_layer


def check_cap(m: int, n: int, max_mn: Optional[int] = None) -> None:
    """Raise :class:`ResourceCapError` when ``m·N`` exceeds the desk-scale cap."""
    if max_mn is None:
        from cghz_toolkit.config import ConfigManager

        max_mn = ConfigManager().max_mn()
    if m * n > max_mn:
        raise ResourceCapError(f"m·N = {m * n} exceeds the cap of {max_mn} (set CGHZ_MAX_MN to raise it)")


def build_ecp_circuit(
    p: CghzParams, *, max_mn: Optional[int] = None, reflection_phase: complex = 1.0
) -> EcpCircuit:
    """HWP layer, PBS layer, post-selection rule and measured labels.

    Parameters
    ----------
    p
        Only ``p.m`` and ``p.n`` are read.
    max_mn
        Cap on ``m·N``; the configured cap when omitted.
    reflection_phase
        Factor on reflected photons of every PBS (1 for the standard layout).
    """
    check_cap(p.m, p.n, max_mn)
    labels = copy_labels(p.m, p.n)

    hwps = hadamard_layer(labels.flat1 + labels.flat2)
    pbss = Circuit(tuple(pbs(one, two, reflection_phase=reflection_phase) for one, two in labels.pairs))
    rule = PostSelectionRule.one_photon_each(labels.flat1 + labels.flat2)

    logger.debug(
        "ECP layout m=%d N=%d: %d HWPs, %d PBSs, %d post-selected, %d measured",
        p.m, p.n, len(hwps), len(pbss), len(rule), len(labels.measured),
    )
    return EcpCircuit(hwps, pbss, rule, labels.measured, labels)
