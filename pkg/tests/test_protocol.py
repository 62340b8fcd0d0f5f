import cmath
import math

import pytest

from cghz_toolkit.core.errors import CghzError, InvalidParameterError, ResourceCapError
from cghz_toolkit.core.fock import fidelity, normalize, states_close
from cghz_toolkit.core.measurement import Sign
from cghz_toolkit.core.models import CghzParams
from cghz_toolkit.core.optics import ElementKind, apply_circuit, hadamard_layer
from cghz_toolkit.core.protocol import (
    analytic_success,
    build_ecp_circuit,
    c_ghz_state,
    canonical_state,
    copy_labels,
    ghz_state,
    run_ecp,
    score_stages,
    simulate_stages,
    swap_circuit,
    swapped_copy,
    target_state,
)
from cghz_toolkit.core.protocol import reference_states as ref

SQRT1_2 = 1 / math.sqrt(2)
# r² = i: VV pairs pick up a relative phase the protocol algebra does not expect
TILTED = cmath.exp(1j * math.pi / 4)


# ---------------------------------------------------------------------------
# Parameters and labels
# ---------------------------------------------------------------------------

def test_params_validation():
    with pytest.raises(InvalidParameterError):
        CghzParams.from_alpha(1, 2, 0.6)
    with pytest.raises(InvalidParameterError):
        CghzParams.from_alpha(2, 1, 0.6)
    with pytest.raises(InvalidParameterError):
        CghzParams.from_alpha(2, 2, 1.2)
    with pytest.raises(InvalidParameterError):
        CghzParams(2, 2, 0.6, 0.6)
    p = CghzParams.from_alpha(2, 2, 0.6)
    assert p.beta == pytest.approx(0.8)
    assert p.swapped().alpha == pytest.approx(0.8)
    assert CghzParams.from_alpha(2, 2, 1.0).is_degenerate


def test_complex_alpha():
    p = CghzParams.from_complex(2, 2, 0.3, 0.4)
    assert abs(p.alpha) ** 2 + abs(p.beta) ** 2 == pytest.approx(1.0)
    assert analytic_success(p) == pytest.approx(0.25 * 0.75 / 2)
    assert run_ecp(p).success_probability == pytest.approx(0.09375, abs=1e-12)


def test_labels():
    pair = copy_labels(2, 2)
    assert pair.flat1 == ("a1", "c1", "b1", "d1")
    assert pair.measured == ("a2", "c2", "b2", "d2")
    assert pair.partner("c2") == "c1"
    assert copy_labels(3, 2).copy1 == (("a1", "c1", "t1"), ("b1", "d1", "h1"))
    assert copy_labels(2, 3).copy2[2] == ("q3p1c2", "q3p2c2")
    with pytest.raises(InvalidParameterError):
        pair.partner("zz")


@pytest.mark.parametrize("m, n", [(2, 2), (2, 3), (3, 2), (4, 2)])
def test_layout_counts(m, n):
    layout = build_ecp_circuit(CghzParams.from_alpha(m, n, 0.6))
    assert layout.circuit.count(ElementKind.HWP) == 2 * m * n
    assert layout.circuit.count(ElementKind.PBS) == m * n
    assert len(layout.rule) == 2 * m * n
    assert len(layout.measured) == m * n


def test_layout_ignores_coefficients():
    layouts = {build_ecp_circuit(CghzParams.from_alpha(3, 2, a)) for a in (0.1, 0.5, SQRT1_2, 0.9)}
    assert len(layouts) == 1


def test_size_cap(monkeypatch):
    with pytest.raises(ResourceCapError):
        build_ecp_circuit(CghzParams.from_alpha(4, 3, 0.6))
    monkeypatch.setenv("CGHZ_MAX_MN", "4")
    from cghz_toolkit.config import ConfigManager

    ConfigManager.reset()
    with pytest.raises(ResourceCapError):
        run_ecp(CghzParams.from_alpha(2, 3, 0.6))
    assert run_ecp(CghzParams.from_alpha(2, 2, 0.6)).success_probability == pytest.approx(0.1152)


# ---------------------------------------------------------------------------
# State builders
# ---------------------------------------------------------------------------

def test_ghz_state():
    s = ghz_state(3, "-", ["x", "y", "z"])
    assert len(s) == 2
    assert s.amplitude((0, 1, 0, 1, 0, 1)) == pytest.approx(-SQRT1_2)
    with pytest.raises(InvalidParameterError):
        ghz_state(3, "+", ["x", "y"])


def test_c_ghz_matches_hand_expansion(pair_params, triple_params):
    labels = copy_labels(2, 2)
    assert states_close(c_ghz_state(pair_params, labels.copy1), ref.pair_input(0.6, 0.8))
    assert len(c_ghz_state(pair_params, labels.copy1)) == 4
    triple = c_ghz_state(triple_params, copy_labels(3, 2).copy1)
    assert len(triple) == 4
    assert states_close(triple, ref.triple_input(0.6, 0.8))


def test_swapped_copy(pair_params):
    blocks = copy_labels(2, 2).copy2
    assert len(swap_circuit(blocks)) == 2
    assert states_close(swapped_copy(pair_params, blocks), ref.pair_swapped_input(0.6, 0.8))
    assert states_close(swapped_copy(pair_params, blocks), c_ghz_state(pair_params.swapped(), blocks))


def test_target_state_is_normalised():
    p = CghzParams.from_alpha(3, 2, 0.3)
    target = target_state(p, copy_labels(3, 2).copy1)
    assert target.norm_squared() == pytest.approx(1.0)
    assert states_close(target, ref.triple_target())


# ---------------------------------------------------------------------------
# Stage regressions against the hand-expanded states
# ---------------------------------------------------------------------------

def test_pair_stages(pair_params):
    stages = simulate_stages(pair_params)
    assert len(stages.prepared) == 16
    assert len(stages.after_hwp) == 64
    assert states_close(stages.after_hwp, ref.pair_after_hwp(0.6, 0.8))
    assert len(stages.kept) == 8
    assert stages.kept_probability == pytest.approx(0.1152)
    assert states_close(normalize(stages.kept)[0], ref.pair_postselected())


def test_triple_single_copy_after_hwp(triple_params):
    labels = copy_labels(3, 2)
    copy1 = simulate_stages(triple_params).copy1
    after = apply_circuit(copy1, hadamard_layer(labels.flat1))
    assert len(copy1) == 4
    assert len(after) == 32
    assert sorted(round(abs(a), 12) for _, a in after) == [0.15] * 16 + [0.2] * 16


def test_pair_heralded_states(balanced_pair):
    stages = simulate_stages(balanced_pair)
    by_pattern = {r.pattern.sign_string(): r for r in stages.measurements}
    assert len(by_pattern) == 16
    assert states_close(by_pattern["++++"].conditional, ref.pair_heralded_even())
    assert fidelity(by_pattern["+-+-"].conditional, ref.pair_heralded_odd()) == pytest.approx(1.0)
    assert states_close(by_pattern["++++"].conditional, canonical_state(balanced_pair, copy_labels(2, 2).copy1))


def test_triple_heralded_state():
    p = CghzParams.from_alpha(3, 2, 0.6)
    stages = simulate_stages(p)
    all_plus = next(r for r in stages.measurements if r.pattern.sign_string() == "+" * 6)
    assert states_close(all_plus.conditional, ref.triple_heralded_even())


def test_every_pattern_is_equally_likely(triple_params):
    stages = simulate_stages(triple_params)
    assert len(stages.measurements) == 2 ** 6
    for r in stages.measurements:
        assert r.probability == pytest.approx(analytic_success(triple_params) / 2 ** 6, rel=1e-9)


def test_reflection_phase_breaks_postselected_state(pair_params):
    stages = simulate_stages(pair_params, reflection_phase=TILTED)
    assert states_close(stages.after_hwp, ref.pair_after_hwp(0.6, 0.8))
    assert not states_close(normalize(stages.kept)[0], ref.pair_postselected())


# ---------------------------------------------------------------------------
# End-to-end acceptance
# ---------------------------------------------------------------------------

@pytest.mark.parametrize(
    "m, n, alpha, expected",
    [
        (2, 2, 0.6, 0.1152),
        (2, 2, SQRT1_2, 0.125),
        (3, 2, SQRT1_2, 0.03125),
        (3, 2, 0.6, 0.0288),
        (2, 3, 0.6, 0.0576),
        pytest.param(3, 3, SQRT1_2, 0.0078125, marks=pytest.mark.slow),
    ],
)
def test_success_probability(m, n, alpha, expected):
    report = run_ecp(CghzParams.from_alpha(m, n, alpha))
    assert report.success_probability == pytest.approx(expected, abs=1e-9)
    assert report.analytic_probability == pytest.approx(expected, abs=1e-12)
    assert report.min_fidelity >= 1 - 1e-9
    assert len(report.outcomes) == 2 ** (m * n)
    assert report.ok


def test_final_state_is_the_target(pair_params):
    report = run_ecp(pair_params)
    for outcome in report.outcomes:
        assert states_close(outcome.corrected_state.with_global_phase_removed(), ref.pair_target(), tol=1e-9)


def test_alpha_beta_symmetry():
    for m, n in [(2, 2), (3, 2), (2, 3)]:
        p = CghzParams.from_alpha(m, n, 0.3)
        assert run_ecp(p).success_probability == pytest.approx(run_ecp(p.swapped()).success_probability, abs=1e-12)


def test_degenerate_input():
    report = run_ecp(CghzParams.from_alpha(2, 2, 1.0))
    assert report.success_probability == 0.0
    assert report.outcomes == ()
    assert report.min_fidelity == 1.0


def test_invariant_failures_are_reported(pair_params):
    report = run_ecp(pair_params, reflection_phase=TILTED)
    assert not report.ok
    assert any("fidelity" in failure for failure in report.invariant_failures())


def test_swap_mismatch_is_an_error(pair_params, monkeypatch):
    from cghz_toolkit.core.protocol import states

    monkeypatch.setattr(states, "swap_circuit", lambda blocks: states.Circuit(()))
    with pytest.raises(CghzError):
        states.swapped_copy(pair_params, copy_labels(2, 2).copy2)


def test_all_plus_needs_no_correction(pair_params):
    report = run_ecp(pair_params)
    all_plus = next(o for o in report.outcomes if set(o.pattern.signs) == {Sign.PLUS})
    assert all_plus.corrections == ()


@pytest.mark.parametrize(
    "smaller, larger",
    [((2, 2), (2, 3)), ((2, 3), (3, 2)), ((3, 2), (2, 5)), ((2, 4), (2, 5)), ((3, 3), (2, 7))],
)
@pytest.mark.parametrize("alpha", [0.3, 0.6, SQRT1_2])
def test_analytic_probability_halves_per_extra_photon_pair(smaller, larger, alpha):
    assert (larger[0] - 1) * larger[1] == (smaller[0] - 1) * smaller[1] + 1
    p_small = analytic_success(CghzParams.from_alpha(*smaller, alpha))
    p_large = analytic_success(CghzParams.from_alpha(*larger, alpha))
    assert p_small / p_large == pytest.approx(2.0, abs=1e-12)


def test_scoring_reuses_a_finished_simulation(triple_params):
    stages = simulate_stages(triple_params)
    scored = score_stages(stages)
    direct = run_ecp(triple_params)
    assert scored.success_probability == pytest.approx(direct.success_probability, abs=1e-15)
    assert [o.pattern for o in scored.outcomes] == [r.pattern for r in stages.measurements]
    assert [o.corrections for o in scored.outcomes] == [o.corrections for o in direct.outcomes]
    assert scored.min_fidelity >= 1 - 1e-9
