from __future__ import annotations

"""Self-check suite behind ``cghz verify``.

Each check returns a :class:`CheckResult`; the suite never raises on a
failed property. ``reflection_phase`` perturbs every PBS of the protocol runs
so the suite can be shown to catch a wrong beam-splitter convention.
"""

import itertools
import logging
import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from cghz_toolkit.core.fock.modes import ModeRegistry
from cghz_toolkit.core.fock.state import PhotonState, combine, normalize, states_close
from cghz_toolkit.core.models import CghzParams, EcpReport
from cghz_toolkit.core.optics.elements import CircuitElement, bit_flip, hwp, pbs, phase_flip
from cghz_toolkit.core.optics.engine import apply_circuit, apply_element

logger = logging.getLogger(__name__)

__all__ = ["CheckResult", "random_photon_states", "protocol_grid", "run_verification"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name}" + (f"  ({self.detail})" if self.detail else "")


# ---------------------------------------------------------------------------
# Random inputs
# ---------------------------------------------------------------------------

_RANDOM_LABELS = ("x", "y")


def random_photon_states(count: int, seed: int, photons: int = 2) -> List[PhotonState]:
    """Normalised random superpositions of every *photons*-photon ket on two labels."""
    registry = ModeRegistry.from_spatials(_RANDOM_LABELS)
    width = len(registry)
    kets = [
        tuple(sum(1 for m in combo if m == i) for i in range(width))
        for combo in itertools.combinations_with_replacement(range(width), photons)
    ]
    rng = np.random.default_rng(seed)
    states = []
    for _ in range(count):
        amps = rng.normal(size=len(kets)) + 1j * rng.normal(size=len(kets))
        amps /= np.linalg.norm(amps)
        states.append(PhotonState.from_terms(registry, dict(zip(kets, amps))))
    return states


def _random_elements() -> List[CircuitElement]:
    x, y = _RANDOM_LABELS
    return [hwp(x), pbs(x, y), phase_flip(x), bit_flip(y)]


# ---------------------------------------------------------------------------
# Element-level properties
# ---------------------------------------------------------------------------

def _check_unitarity(states: Sequence[PhotonState], tol: float) -> CheckResult:
    worst = 0.0
    for state in states:
        for element in _random_elements():
            worst = max(worst, abs(apply_element(state, element).norm_squared() - 1.0))
    return CheckResult("element norm preservation", worst <= tol, f"max |‖E(s)‖²−1| = {worst:.2e}")


def _check_hwp_involution(states: Sequence[PhotonState]) -> CheckResult:
    twice = [hwp(_RANDOM_LABELS[0]), hwp(_RANDOM_LABELS[0])]
    ok = all(states_close(apply_circuit(s, twice), s, tol=1e-12) for s in states)
    return CheckResult("HWP involution", ok, f"{len(states)} states")


def _polarization_counts(registry: ModeRegistry, key: Tuple[int, ...]) -> Tuple[int, int]:
    h = sum(key[p] for p, mode in enumerate(registry.modes) if mode.pol.value == "H")
    return h, sum(key) - h


def _check_pbs_polarization(states: Sequence[PhotonState]) -> CheckResult:
    element = pbs(*_RANDOM_LABELS)
    for state in states:
        for key, _ in state:
            out = apply_element(PhotonState.from_terms(state.registry, {key: 1.0}), element)
            expected = _polarization_counts(state.registry, key)
            if any(_polarization_counts(out.registry, k) != expected for k, _ in out):
                return CheckResult("PBS polarization conservation", False, f"ket {key} changed H/V counts")
    return CheckResult("PBS polarization conservation", True)


def _check_linearity(states: Sequence[PhotonState], seed: int) -> CheckResult:
    rng = np.random.default_rng(seed + 1)
    pairs = list(zip(states[::2], states[1::2]))
    for s1, s2 in pairs:
        a, b = complex(*rng.normal(size=2)), complex(*rng.normal(size=2))
        for element in _random_elements():
            lhs = apply_element(combine([(a, s1), (b, s2)]), element)
            rhs = combine([(a, apply_element(s1, element)), (b, apply_element(s2, element))])
            if not states_close(lhs, rhs, tol=1e-12):
                return CheckResult("linearity", False, f"{element} is not linear")
    return CheckResult("linearity", True, f"{len(pairs)} pairs")


# ---------------------------------------------------------------------------
# Protocol-level properties
# ---------------------------------------------------------------------------

def protocol_grid(max_mn: int) -> List[Tuple[int, int]]:
    """All (m, N) with m, N ≥ 2 and m·N ≤ *max_mn*."""
    return [(m, n) for m in range(2, max_mn // 2 + 1) for n in range(2, max_mn // m + 1)]


def _check_pair_regression(reflection_phase: complex) -> List[CheckResult]:
    from cghz_toolkit.core.protocol import reference_states as ref
    from cghz_toolkit.core.protocol.ecp import simulate_stages

    params = CghzParams.from_alpha(2, 2, 0.6)
    alpha, beta = params.alpha, params.beta
    stages = simulate_stages(params, reflection_phase=reflection_phase)
    prepared_ok = states_close(stages.copy1, ref.pair_input(alpha, beta), 1e-12) and states_close(
        stages.copy2, ref.pair_swapped_input(alpha, beta), 1e-12
    )
    hwp_ok = states_close(stages.after_hwp, ref.pair_after_hwp(alpha, beta), 1e-12)
    kept_ok = False
    if not stages.kept.is_zero():
        kept_ok = states_close(normalize(stages.kept)[0], ref.pair_postselected(), 1e-12)
    return [
        CheckResult("m=N=2 prepared copies", prepared_ok),
        CheckResult("m=N=2 state after HWP layer", hwp_ok, f"{len(stages.after_hwp)} kets"),
        CheckResult("m=N=2 post-selected state", kept_ok, f"{len(stages.kept)} kets"),
    ]


def _check_measurement_completeness(grid: Sequence[Tuple[int, int]], reflection_phase: complex) -> CheckResult:
    from cghz_toolkit.core.protocol.ecp import simulate_stages

    worst_sum, worst_norm = 0.0, 0.0
    for m, n in grid:
        stages = simulate_stages(CghzParams.from_alpha(m, n, 0.6), reflection_phase=reflection_phase)
        total = math.fsum(r.probability for r in stages.measurements)
        worst_sum = max(worst_sum, abs(total - stages.kept_probability))
        for r in stages.measurements:
            worst_norm = max(worst_norm, abs(r.conditional.norm_squared() - 1.0))
    ok = worst_sum <= 1e-10 and worst_norm <= 1e-10
    return CheckResult("measurement completeness", ok, f"Σp gap {worst_sum:.2e}, norm gap {worst_norm:.2e}")


def _run_grid(
    grid: Sequence[Tuple[int, int]], alphas: Sequence[float], reflection_phase: complex, max_mn: int
) -> Dict[Tuple[int, int, float], EcpReport]:
    from cghz_toolkit.core.protocol.ecp import run_ecp

    reports = {}
    for m, n in grid:
        for alpha in alphas:
            params = CghzParams.from_alpha(m, n, alpha)
            reports[(m, n, alpha)] = run_ecp(params, reflection_phase=reflection_phase, max_mn=max_mn)
    return reports


def _check_formula(reports: Dict[Tuple[int, int, float], EcpReport], tol: float) -> CheckResult:
    worst = max((abs(r.success_probability - r.analytic_probability) for r in reports.values()), default=0.0)
    return CheckResult("success probability formula", worst <= tol, f"{len(reports)} runs, max error {worst:.2e}")


def _check_fidelity(reports: Dict[Tuple[int, int, float], EcpReport], tol: float) -> CheckResult:
    worst = min((r.min_fidelity for r in reports.values()), default=1.0)
    return CheckResult("output fidelity", worst >= 1.0 - tol, f"min fidelity {worst:.12f}")


def _check_oracle(grid: Sequence[Tuple[int, int]], alphas: Sequence[float], reflection_phase: complex, tol: float) -> CheckResult:
    from cghz_toolkit.core.analysis.oracle import oracle_enumerate
    from cghz_toolkit.core.protocol.ecp import simulate_stages

    worst = 0.0
    for m, n in grid:
        for alpha in alphas:
            params = CghzParams.from_alpha(m, n, alpha)
            oracle = oracle_enumerate(params)
            stages = simulate_stages(params, reflection_phase=reflection_phase)
            engine = {
                tuple(s.value for s in r.pattern.signs_for(oracle.measured)): r.probability
                for r in stages.measurements
            }
            keys = set(engine) | set(oracle.pattern_probabilities)
            for key in keys:
                worst = max(worst, abs(engine.get(key, 0.0) - oracle.pattern_probabilities.get(key, 0.0)))
            total = math.fsum(engine.values())
            worst = max(worst, abs(total - oracle.success_probability))
    return CheckResult("oracle equivalence", worst <= tol, f"{len(grid)} sizes, max gap {worst:.2e}")


def _check_symmetry(grid: Sequence[Tuple[int, int]], reflection_phase: complex) -> CheckResult:
    from cghz_toolkit.core.protocol.ecp import run_ecp

    worst = 0.0
    for m, n in grid:
        for alpha in (0.3, 0.6):
            params = CghzParams.from_alpha(m, n, alpha)
            forward = run_ecp(params, reflection_phase=reflection_phase).success_probability
            backward = run_ecp(params.swapped(), reflection_phase=reflection_phase).success_probability
            worst = max(worst, abs(forward - backward))
    return CheckResult("alpha/beta symmetry", worst <= 1e-12, f"max gap {worst:.2e}")


def _check_alpha_independence(grid: Sequence[Tuple[int, int]]) -> CheckResult:
    from cghz_toolkit.core.protocol.circuit_builder import build_ecp_circuit

    for m, n in grid:
        layouts = {build_ecp_circuit(CghzParams.from_alpha(m, n, a)) for a in (0.1, 0.5, 0.9)}
        if len(layouts) != 1:
            return CheckResult("layout independent of alpha", False, f"m={m} N={n}")
    return CheckResult("layout independent of alpha", True, f"{len(grid)} sizes")


def _check_optimal_alpha(count: int) -> CheckResult:
    from cghz_toolkit.core.analysis.sweep import optimal_alpha_scan

    scan = optimal_alpha_scan(2, 2, count)
    expected = 2.0 ** (1 - (2 - 1) * 2) / 4
    ok = scan.best_alpha == 1.0 / math.sqrt(2.0) and abs(scan.best_probability - expected) <= 1e-12
    return CheckResult("maximum at alpha = 1/sqrt(2)", ok, f"best alpha {scan.best_alpha:.6f}, P {scan.best_probability:.6g}")


def _guarded(name: str, check: Callable[[], CheckResult | List[CheckResult]]) -> List[CheckResult]:
    try:
        result = check()
    except Exception as exc:  # a crash is a failed check, not a failed suite
        logger.exception("Check %s raised", name)
        return [CheckResult(name, False, f"{type(exc).__name__}: {exc}")]
    return result if isinstance(result, list) else [result]


def run_verification(
    *, quick: bool = False, reflection_phase: complex = 1.0, max_mn: Optional[int] = None
) -> List[CheckResult]:
    """Run every check and return one result per property.

    ``quick`` restricts protocol runs to ``m·N ≤ quick_max_mn``.
    """
    from cghz_toolkit.config import ConfigManager

    cfg = ConfigManager()
    verify_cfg = cfg.get_verify_defaults()
    seed = int(verify_cfg["seed"])
    alphas = [float(a) for a in verify_cfg["alphas"]]
    cap = max_mn if max_mn is not None else (cfg.limit("quick_max_mn") if quick else cfg.max_mn())
    grid = protocol_grid(cap)
    oracle_grid = protocol_grid(min(cap, cfg.limit("oracle_max_mn")))
    small_grid = protocol_grid(min(cap, 6))
    logger.info("Verification on sizes %s (quick=%s, reflection phase %s)", grid, quick, reflection_phase)

    states = random_photon_states(int(verify_cfg["random_states"]), seed)
    results: List[CheckResult] = []
    results += _guarded("element norm preservation", lambda: _check_unitarity(states, cfg.tolerance("unitarity")))
    results += _guarded("HWP involution", lambda: _check_hwp_involution(states))
    results += _guarded("PBS polarization conservation", lambda: _check_pbs_polarization(states))
    results += _guarded("linearity", lambda: _check_linearity(states, seed))
    results += _guarded("m=N=2 regression", lambda: _check_pair_regression(reflection_phase))
    results += _guarded("measurement completeness", lambda: _check_measurement_completeness(small_grid, reflection_phase))

    reports: Dict[Tuple[int, int, float], EcpReport] = {}

    def grid_runs() -> List[CheckResult]:
        reports.update(_run_grid(grid, alphas, reflection_phase, cap))
        return [
            _check_formula(reports, cfg.tolerance("probability")),
            _check_fidelity(reports, cfg.tolerance("fidelity")),
        ]

    results += _guarded("success probability formula", grid_runs)
    results += _guarded("oracle equivalence", lambda: _check_oracle(oracle_grid, alphas, reflection_phase, cfg.tolerance("oracle")))
    results += _guarded("alpha/beta symmetry", lambda: _check_symmetry(small_grid, reflection_phase))
    results += _guarded("layout independent of alpha", lambda: _check_alpha_independence(grid))
    results += _guarded("maximum at alpha = 1/sqrt(2)", lambda: _check_optimal_alpha(int(verify_cfg["optimal_scan_count"])))

    failed = [r.name for r in results if not r.passed]
    if failed:
        logger.warning("Verification failed: %s", ", ".join(failed))
    return results
