from __future__ import annotations

"""Brute-force enumerator used to cross-check the main engine.

Nothing here touches :mod:`cghz_toolkit.core.fock` or
:mod:`cghz_toolkit.core.optics`. Each copy is written out directly in its
post-HWP form, every logic qubit expanded as ``(|+⟩^m ± |−⟩^m)/√2`` term by
term with no merging, giving ``2·(2^(m+1))^N`` raw terms per copy. All joint
pairs are then routed through the PBS rules with numpy, filtered to one
photon per output and projected on every |±⟩ pattern.

Photon ``k`` of a copy is bit ``k`` of an integer key (block-major), and
bit value 1 means V.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

import numpy as np

from cghz_toolkit.core.errors import ResourceCapError
from cghz_toolkit.core.models import CghzParams
from cghz_toolkit.core.protocol.labels import copy_labels

logger = logging.getLogger(__name__)

__all__ = ["OracleResult", "oracle_enumerate"]


@dataclass(frozen=True)
class OracleResult:
    success_probability: float
    pattern_probabilities: Dict[Tuple[str, ...], float]
    measured: Tuple[str, ...]
    raw_terms_per_copy: int
    surviving_pairs: int


def _bit_table(width: int) -> np.ndarray:
    """Row ``x`` holds the ``width`` bits of ``x`` (bit k in column k)."""
    return (np.arange(2**width)[:, None] >> np.arange(width)[None, :]) & 1


def _block_terms(m: int, relative: int) -> Tuple[np.ndarray, np.ndarray]:
    """Raw terms of ``(|+⟩^m + relative·|−⟩^m)/√2`` in the H/V basis."""
    bits = _bit_table(m)
    weight = bits.sum(axis=1)
    scale = 2.0 ** (-m / 2) / np.sqrt(2.0)
    keys = np.arange(2**m, dtype=np.int64)
    plus_amps = np.full(2**m, scale)
    minus_amps = relative * scale * np.where(weight % 2 == 1, -1.0, 1.0)
    return np.concatenate([keys, keys]), np.concatenate([plus_amps, minus_amps])


def _branch_terms(m: int, n: int, relative: int) -> Tuple[np.ndarray, np.ndarray]:
    """Outer product of ``n`` identical blocks, block ``j`` on bits ``j·m…``."""
    block_keys, block_amps = _block_terms(m, relative)
    keys = np.zeros(1, dtype=np.int64)
    amps = np.ones(1, dtype=complex)
    for j in range(n):
        keys = (keys[:, None] | (block_keys[None, :] << (j * m))).ravel()
        amps = (amps[:, None] * block_amps[None, :]).ravel()
    return keys, amps


def _copy_terms(m: int, n: int, plus_coeff: complex, minus_coeff: complex) -> Tuple[np.ndarray, np.ndarray]:
    plus_keys, plus_amps = _branch_terms(m, n, +1)
    minus_keys, minus_amps = _branch_terms(m, n, -1)
    return (
        np.concatenate([plus_keys, minus_keys]),
        np.concatenate([plus_coeff * plus_amps, minus_coeff * minus_amps]),
    )


def oracle_enumerate(p: CghzParams, *, max_mn: Optional[int] = None) -> OracleResult:
    """Success probability and per-pattern probabilities by explicit expansion.

    Raises
    ------
    ResourceCapError
        If ``m·N`` exceeds the oracle cap (6 by default).
    """
    if max_mn is None:
        from cghz_toolkit.config import ConfigManager

        max_mn = ConfigManager().limit("oracle_max_mn")
    if p.mn > max_mn:
        raise ResourceCapError(f"Oracle limited to m·N ≤ {max_mn}, got {p.mn}")

    photons = p.mn
    keys1, amps1 = _copy_terms(p.m, p.n, p.alpha, p.beta)
    keys2, amps2 = _copy_terms(p.m, p.n, p.beta, p.alpha)

    # PBS k: out1 holds (in1 H) + (in2 V), out2 holds (in1 V) + (in2 H).
    # One photon in each output of every PBS means equal polarizations on
    # both inputs; out2 then carries in1's polarization, out1 in2's.
    bits1 = _bit_table(photons)[keys1]
    bits2 = _bit_table(photons)[keys2]
    out1_count = (bits1[:, None, :] == 0).astype(np.int8) + (bits2[None, :, :] == 1)
    out2_count = (bits1[:, None, :] == 1).astype(np.int8) + (bits2[None, :, :] == 0)
    kept = np.all((out1_count == 1) & (out2_count == 1), axis=2)
    rows, cols = np.nonzero(kept)

    out2_keys = keys1[rows]          # measured copy-2 outputs
    out1_keys = keys2[cols]          # surviving copy-1 outputs
    amps = amps1[rows] * amps2[cols]

    # Amplitude per (measured key, surviving key) after summing raw pairs.
    size = 2**photons
    joint = np.zeros((size, size), dtype=complex)
    np.add.at(joint, (out2_keys, out1_keys), amps)

    # ⟨s|x⟩ = 2^(-M/2)·(−1)^(s·x) for pattern s (bit 1 = −) and V-mask x.
    table = _bit_table(photons)
    overlap = np.where((table @ table.T) % 2 == 1, -1.0, 1.0) * 2.0 ** (-photons / 2)
    projected = overlap @ joint                      # (pattern, surviving key)
    probabilities = np.sum(np.abs(projected) ** 2, axis=1)

    measured = copy_labels(p.m, p.n).measured
    patterns: Dict[Tuple[str, ...], float] = {}
    for s, prob in enumerate(probabilities):
        if prob > 1e-20:
            patterns[tuple("-" if table[s, k] else "+" for k in range(photons))] = float(prob)

    success = float(np.sum(probabilities))
    logger.debug(
        "oracle m=%d N=%d: %d raw terms per copy, %d surviving pairs, P=%.12g",
        p.m, p.n, len(keys1), len(rows), success,
    )
    return OracleResult(
        success_probability=success,
        pattern_probabilities=patterns,
        measured=measured,
        raw_terms_per_copy=len(keys1),
        surviving_pairs=int(len(rows)),
    )
