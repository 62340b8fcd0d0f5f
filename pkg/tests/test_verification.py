import pytest

from cghz_toolkit.core.analysis import protocol_grid, random_photon_states, run_verification


def test_protocol_grid():
    assert protocol_grid(6) == [(2, 2), (2, 3), (3, 2)]
    assert (3, 3) in protocol_grid(9) and (4, 2) in protocol_grid(9)
    assert protocol_grid(3) == []


def test_random_states_are_normalised_and_seeded():
    first = random_photon_states(5, seed=1)
    again = random_photon_states(5, seed=1)
    assert [s.terms for s in first] == [s.terms for s in again]
    for s in first:
        assert s.norm_squared() == pytest.approx(1.0)
        assert s.photon_number() == 2


def test_quick_suite_passes():
    results = run_verification(quick=True)
    failed = [r.line() for r in results if not r.passed]
    assert not failed
    names = {r.name for r in results}
    assert {"oracle equivalence", "success probability formula", "m=N=2 post-selected state"} <= names


@pytest.mark.slow
def test_full_suite_passes():
    assert all(r.passed for r in run_verification())
