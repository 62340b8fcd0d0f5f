import math

import pytest

from cghz_toolkit.core.errors import CorrectionNotFoundError, InvalidParameterError
from cghz_toolkit.core.fock import ModeRegistry, fidelity, from_kets
from cghz_toolkit.core.measurement import DetectionPattern, Sign, correction_for, correction_table, solve_phase_correction
from cghz_toolkit.core.optics import apply_circuit, phase_flip
from cghz_toolkit.core.protocol import copy_labels

R2 = 1 / math.sqrt(2)


def _two(signs, kets=("HH", "VV")):
    reg = ModeRegistry.from_spatials(["x", "y"])
    return from_kets(reg, [(s * R2, {"x": k[0], "y": k[1]}) for s, k in zip(signs, kets)])


def test_identical_states_need_nothing():
    assert solve_phase_correction(_two((1, 1)), _two((1, 1))) == ()


def test_global_sign_is_ignored():
    assert solve_phase_correction(_two((-1, -1)), _two((1, 1))) == ()


def test_single_flip_on_earliest_label():
    assert solve_phase_correction(_two((1, -1)), _two((1, 1))) == (phase_flip("x"),)


def test_two_flips_when_needed():
    reg = ModeRegistry.from_spatials(["x", "y"])
    canonical = from_kets(reg, [(0.5, {"x": a, "y": b}) for a in "HV" for b in "HV"])
    conditional = from_kets(
        reg, [(0.5 * (-1) ** ((a == "V") + (b == "V")), {"x": a, "y": b}) for a in "HV" for b in "HV"]
    )
    flips = solve_phase_correction(conditional, canonical)
    assert flips == (phase_flip("x"), phase_flip("y"))
    assert fidelity(apply_circuit(conditional, flips), canonical) == pytest.approx(1.0)


def test_support_mismatch():
    with pytest.raises(CorrectionNotFoundError):
        solve_phase_correction(_two((1, 1), kets=("HV", "VH")), _two((1, 1)))


def test_non_sign_ratio():
    reg = ModeRegistry.from_spatials(["x", "y"])
    conditional = from_kets(reg, [(R2, {"x": "H", "y": "H"}), (1j * R2, {"x": "V", "y": "V"})])
    with pytest.raises(CorrectionNotFoundError):
        solve_phase_correction(conditional, _two((1, 1)))


def test_pair_table_covers_every_pattern():
    table = correction_table(2, 2)
    assert len(table) == 16
    assert table[(Sign.PLUS,) * 4] == ()
    assert all(e.kind.value == "phase_flip" for flips in table.values() for e in flips)


@pytest.mark.parametrize(
    "signs, needs_flips",
    [
        ("++++", False),
        ("----", False),   # even number of −− pairs
        ("--++", True),    # odd number of −− pairs
        ("+-+-", True),
        ("+--+", True),
    ],
)
def test_pair_patterns(signs, needs_flips):
    measured = copy_labels(2, 2).measured
    flips = correction_for(DetectionPattern.from_signs(measured, signs), 2, 2)
    assert bool(flips) is needs_flips


def test_correction_for_wrong_arity():
    with pytest.raises(InvalidParameterError):
        correction_for(DetectionPattern.from_signs(["a2", "c2"], "++"), 2, 2)


def test_mixed_pairs_flip_one_photon_per_logic_qubit():
    labels = copy_labels(2, 2)
    flips = correction_for(DetectionPattern.from_signs(labels.measured, "+--+"), 2, 2)
    assert all(e.kind.value == "phase_flip" for e in flips)
    flipped = [e.inputs[0] for e in flips]
    assert len(flipped) == len(labels.copy1)
    for block in labels.copy1:
        assert sum(label in block for label in flipped) == 1
