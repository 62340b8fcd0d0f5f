from __future__ import annotations

"""End-to-end concentration protocol.

``simulate_stages`` propagates the two prepared copies through the optical
layout and records every intermediate state; ``run_ecp`` then corrects each
heralded branch, applies the final Hadamard layer and scores it against the
maximally entangled target.
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

from cghz_toolkit.core.fock.state import PhotonState, fidelity, tensor
from cghz_toolkit.core.measurement.corrections import correction_for
from cghz_toolkit.core.measurement.detection import MeasurementResult, measure_pm
from cghz_toolkit.core.measurement.postselection import post_select
from cghz_toolkit.core.models import CghzParams, EcpOutcome, EcpReport
from cghz_toolkit.core.optics.elements import hadamard_layer
from cghz_toolkit.core.optics.engine import apply_circuit
from cghz_toolkit.core.protocol.circuit_builder import EcpCircuit, build_ecp_circuit
from cghz_toolkit.core.protocol.labels import CopyLabels
from cghz_toolkit.core.protocol.states import c_ghz_state, swapped_copy, target_state

logger = logging.getLogger(__name__)

__all__ = ["EcpStages", "simulate_stages", "score_stages", "run_ecp", "analytic_success"]


@dataclass(frozen=True)
class EcpStages:
    """Every intermediate state of one protocol run.

    ``kept`` is the unnormalised post-selected part; its squared norm is
    ``kept_probability``. Measurement results carry absolute probabilities.
    """

    params: CghzParams
    layout: EcpCircuit
    copy1: PhotonState
    copy2: PhotonState
    prepared: PhotonState
    after_hwp: PhotonState
    after_pbs: PhotonState
    kept: PhotonState
    kept_probability: float
    measurements: Tuple[MeasurementResult, ...]

    @property
    def labels(self) -> CopyLabels:
        return self.layout.labels


def simulate_stages(
    p: CghzParams, *, max_mn: Optional[int] = None, reflection_phase: complex = 1.0
) -> EcpStages:
    """Prepare, interfere, post-select and measure.

    Raises
    ------
    ResourceCapError
        If ``m·N`` exceeds the cap.
    """
    layout = build_ecp_circuit(p, max_mn=max_mn, reflection_phase=reflection_phase)
    labels = layout.labels

    copy1 = c_ghz_state(p, labels.copy1)
    copy2 = swapped_copy(p, labels.copy2)
    prepared = tensor(copy1, copy2)
    logger.info("m=%d N=%d: prepared %d x %d kets", p.m, p.n, len(copy1), len(copy2))

    after_hwp = apply_circuit(prepared, layout.hwp_layer)
    after_pbs = apply_circuit(after_hwp, layout.pbs_layer)
    logger.info("after HWP layer: %d kets; after PBS layer: %d kets", len(after_hwp), len(after_pbs))

    kept, kept_probability = post_select(after_pbs, layout.rule)
    measurements: List[MeasurementResult] = []
    if not kept.is_zero():
        measurements = measure_pm(kept, layout.measured)
    logger.info(
        "post-selection kept %d kets (p=%.12g); %d detection patterns occur",
        len(kept), kept_probability, len(measurements),
    )
    return EcpStages(
        params=p,
        layout=layout,
        copy1=copy1,
        copy2=copy2,
        prepared=prepared,
        after_hwp=after_hwp,
        after_pbs=after_pbs,
        kept=kept,
        kept_probability=kept_probability,
        measurements=tuple(measurements),
    )


def analytic_success(p: CghzParams) -> float:
    """Closed-form success probability |αβ|² / 2^((m−1)N−1)."""
    return abs(p.alpha * p.beta) ** 2 / 2.0 ** ((p.m - 1) * p.n - 1)


def run_ecp(
    p: CghzParams, *, max_mn: Optional[int] = None, reflection_phase: complex = 1.0
) -> EcpReport:
    """Run the full protocol and score every heralded branch.

    Degenerate inputs (α or β zero) give an empty outcome list, success
    probability 0 and a vacuous minimum fidelity of 1.
    """
    return score_stages(simulate_stages(p, max_mn=max_mn, reflection_phase=reflection_phase))


def score_stages(stages: EcpStages) -> EcpReport:
    """Correct, Hadamard and score the heralded branches of a finished simulation."""
    p = stages.params
    labels = stages.labels
    target = target_state(p, labels.copy1)
    final_layer = hadamard_layer(labels.flat1)

    outcomes: List[EcpOutcome] = []
    for result in stages.measurements:
        corrections = correction_for(result.pattern, p.m, p.n)
        state = apply_circuit(apply_circuit(result.conditional, corrections), final_layer)
        outcomes.append(
            EcpOutcome(
                pattern=result.pattern,
                probability=result.probability,
                corrections=corrections,
                corrected_state=state,
                fidelity=fidelity(state, target),
            )
        )

    report = EcpReport(
        params=p,
        success_probability=math.fsum(o.probability for o in outcomes),
        analytic_probability=analytic_success(p),
        outcomes=tuple(outcomes),
        min_fidelity=min((o.fidelity for o in outcomes), default=1.0),
    )
    failures = report.invariant_failures()
    if failures:
        for failure in failures:
            logger.warning("m=%d N=%d: %s", p.m, p.n, failure)
    logger.info(
        "m=%d N=%d alpha=%s: P=%.12g (analytic %.12g), %d outcomes, min fidelity %.12f",
        p.m, p.n, p.alpha, report.success_probability, report.analytic_probability,
        len(outcomes), report.min_fidelity,
    )
    return report
