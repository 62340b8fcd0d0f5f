import math

import pytest

from cghz_toolkit.core.errors import (
    InvalidParameterError,
    NormalizationError,
    OccupancyError,
    PhotonNumberError,
    RegistryCollisionError,
    UnknownModeError,
)
from cghz_toolkit.core.fock import (
    ModeId,
    ModeRegistry,
    PhotonState,
    Polarization,
    basis_state,
    combine,
    fidelity,
    from_kets,
    inner_product,
    normalize,
    states_close,
    tensor,
)

R2 = 1 / math.sqrt(2)


def _xy():
    return ModeRegistry.from_spatials(["x", "y"])


def test_registry_order_and_lookup():
    reg = _xy()
    assert len(reg) == 4
    assert reg.modes[0] == ModeId("x", Polarization.H)
    assert reg.position("y", "V") == 3
    assert reg.positions("x") == (0, 1)
    assert reg.spatial_labels() == ("x", "y")
    assert reg.has_spatial("y") and not reg.has_spatial("z")


def test_registry_unknown_label():
    with pytest.raises(UnknownModeError, match="z:H"):
        _xy().position("z", "H")


def test_registry_collisions():
    with pytest.raises(RegistryCollisionError):
        _xy().concat(ModeRegistry.from_spatials(["y"]))
    with pytest.raises(RegistryCollisionError):
        ModeRegistry.from_spatials(["x", "x"])


def test_registry_without_and_renamed():
    reg = ModeRegistry.from_spatials(["x", "y", "z"])
    assert reg.without(["y"]).spatial_labels() == ("x", "z")
    assert reg.renamed({"x": "u"}).spatial_labels() == ("u", "y", "z")


def test_basis_state_allows_several_photons_per_label():
    assert basis_state(_xy(), {"x": "HV", "y": "V"}) == (1, 1, 0, 1)
    assert basis_state(_xy(), {}) == (0, 0, 0, 0)


def test_tiny_amplitudes_are_pruned():
    s = PhotonState.from_terms(_xy(), {(1, 0, 1, 0): 1.0, (0, 1, 0, 1): 1e-13})
    assert len(s) == 1


def test_mixed_photon_numbers_rejected():
    with pytest.raises(PhotonNumberError):
        PhotonState.from_terms(_xy(), {(1, 0, 0, 0): 1.0, (1, 0, 1, 0): 1.0})


def test_occupancy_cap():
    with pytest.raises(OccupancyError):
        PhotonState.from_terms(_xy(), {(4, 0, 0, 0): 1.0})


def test_wrong_key_length():
    with pytest.raises(InvalidParameterError):
        PhotonState.from_terms(_xy(), {(1, 0): 1.0})


def test_photon_number_and_vacuum():
    s = from_kets(_xy(), [(R2, {"x": "H", "y": "V"}), (R2, {"x": "HV"})])
    assert s.photon_number() == 2
    vac = PhotonState.vacuum(_xy())
    assert vac.photon_number() == 0 and vac.norm_squared() == 1.0


def test_tensor_orders_registries():
    left = from_kets(ModeRegistry.from_spatials(["x"]), [(1.0, {"x": "H"})])
    right = from_kets(ModeRegistry.from_spatials(["y"]), [(R2, {"y": "H"}), (R2, {"y": "V"})])
    joint = tensor(left, right)
    assert joint.registry.spatial_labels() == ("x", "y")
    assert joint.amplitude((1, 0, 0, 1)) == pytest.approx(R2)
    with pytest.raises(RegistryCollisionError):
        tensor(left, left)


def test_tensor_is_associative():
    a = from_kets(ModeRegistry.from_spatials(["x"]), [(0.6, {"x": "H"}), (0.8j, {"x": "V"})])
    b = from_kets(ModeRegistry.from_spatials(["y"]), [(R2, {"y": "HV"}), (-R2, {"y": "VV"})])
    c = from_kets(ModeRegistry.from_spatials(["z"]), [(0.28, {"z": "V"}), (0.96, {"z": "H"})])
    left = tensor(tensor(a, b), c)
    right = tensor(a, tensor(b, c))
    assert left.registry == right.registry
    assert len(left) == 8
    assert states_close(left, right, tol=1e-12)


def test_normalize_returns_weight():
    s = from_kets(_xy(), [(1.0, {"x": "H", "y": "H"}), (1.0, {"x": "V", "y": "V"})])
    unit, weight = normalize(s)
    assert weight == pytest.approx(2.0)
    assert unit.norm_squared() == pytest.approx(1.0)


def test_normalize_zero_state():
    zero = PhotonState.from_terms(_xy(), {})
    with pytest.raises(NormalizationError):
        normalize(zero)
    with pytest.raises(ZeroDivisionError):
        normalize(zero)


def test_inner_product_and_fidelity():
    hh = from_kets(_xy(), [(1.0, {"x": "H", "y": "H"})])
    vv = from_kets(_xy(), [(1.0, {"x": "V", "y": "V"})])
    bell = combine([(R2, hh), (1j * R2, vv)])
    assert inner_product(hh, vv) == 0
    assert inner_product(hh, bell) == pytest.approx(R2)
    assert inner_product(vv, bell) == pytest.approx(1j * R2)
    assert fidelity(hh, bell) == pytest.approx(0.5)
    assert fidelity(bell, bell) == pytest.approx(1.0)


def test_combine_cancels_to_zero():
    hh = from_kets(_xy(), [(1.0, {"x": "H", "y": "H"})])
    assert combine([(1.0, hh), (-1.0, hh)]).is_zero()
    with pytest.raises(InvalidParameterError):
        combine([])


def test_combine_needs_one_registry():
    hh = from_kets(_xy(), [(1.0, {"x": "H", "y": "H"})])
    other = from_kets(ModeRegistry.from_spatials(["y", "x"]), [(1.0, {"x": "H", "y": "H"})])
    with pytest.raises(InvalidParameterError):
        combine([(1.0, hh), (1.0, other)])
    assert not states_close(hh, other)


def test_global_phase_removed():
    s = from_kets(_xy(), [(1j * R2, {"x": "H", "y": "H"}), (-R2, {"x": "V", "y": "V"})])
    fixed = s.with_global_phase_removed()
    lead = max(fixed.terms)
    assert fixed.terms[lead].real > 0 and abs(fixed.terms[lead].imag) < 1e-15
    assert fidelity(fixed, s) == pytest.approx(1.0)
