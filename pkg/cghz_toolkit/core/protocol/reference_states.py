from __future__ import annotations

"""Closed forms of the protocol's intermediate states, written out by hand.

These are expanded from bracketed products of polarization strings and never
touch the optics engine, so they serve as regression targets for the two
smallest layouts: ``m = N = 2`` (labels ``a, c / b, d``) and ``m = 3, N = 2``
(labels ``a, c, t / b, d, h``).
"""

import itertools
import math
from typing import Dict, List, Sequence, Tuple

from cghz_toolkit.core.fock.modes import ModeRegistry
from cghz_toolkit.core.fock.state import PhotonState, from_kets

__all__ = [
    "pair_input",
    "pair_swapped_input",
    "pair_after_hwp",
    "pair_postselected",
    "pair_heralded_even",
    "pair_heralded_odd",
    "pair_target",
    "triple_input",
    "triple_heralded_even",
    "triple_target",
]

_Term = Tuple[complex, Dict[str, str]]

_PAIR_COPY1 = ("a1", "c1", "b1", "d1")
_PAIR_COPY2 = ("a2", "c2", "b2", "d2")
_TRIPLE_COPY1 = ("a1", "c1", "t1", "b1", "d1", "h1")

_R2 = 1.0 / math.sqrt(2.0)

# Even / odd V-parity strings of a two- and a three-photon block.
_EVEN2, _ODD2 = ("HH", "VV"), ("HV", "VH")
_EVEN3 = ("HHH", "VVH", "HVV", "VHV")
_ODD3 = ("HVH", "VHH", "HHV", "VVV")


def _bracket(labels: Sequence[str], kets: Sequence[str], signs: Sequence[int] | None = None) -> List[_Term]:
    """Σ ± |ket⟩ with polarization ``ket[i]`` on ``labels[i]``."""
    signs = signs or [1] * len(kets)
    return [(complex(sign), dict(zip(labels, ket))) for ket, sign in zip(kets, signs)]


def _product(coeff: complex, *brackets: List[_Term]) -> List[_Term]:
    terms: List[_Term] = []
    for combo in itertools.product(*brackets):
        amp = coeff
        assignment: Dict[str, str] = {}
        for c, part in combo:
            amp *= c
            assignment.update(part)
        terms.append((amp, assignment))
    return terms


# ---------------------------------------------------------------------------
# m = N = 2
# ---------------------------------------------------------------------------

def _pair_copy(first: complex, second: complex, suffix: str) -> PhotonState:
    a, c, b, d = (f"{p}{suffix}" for p in "acbd")
    terms = _product(first / 2, _bracket((a, c), _EVEN2), _bracket((b, d), _EVEN2))
    terms += _product(second / 2, _bracket((a, c), _EVEN2, (1, -1)), _bracket((b, d), _EVEN2, (1, -1)))
    labels = (a, c, b, d)
    return from_kets(ModeRegistry.from_spatials(labels), terms)


def pair_input(alpha: complex, beta: complex) -> PhotonState:
    """α/2 (HH+VV)(HH+VV) + β/2 (HH−VV)(HH−VV) on a1c1, b1d1."""
    return _pair_copy(alpha, beta, "1")


def pair_swapped_input(alpha: complex, beta: complex) -> PhotonState:
    """Second copy with exchanged coefficients on a2c2, b2d2."""
    return _pair_copy(beta, alpha, "2")


def pair_after_hwp(alpha: complex, beta: complex) -> PhotonState:
    """Both copies after the HWP layer, on registry a1 c1 b1 d1 a2 c2 b2 d2."""
    ac1, bd1 = ("a1", "c1"), ("b1", "d1")
    ac2, bd2 = ("a2", "c2"), ("b2", "d2")
    groups = [
        (alpha * alpha, _EVEN2, _ODD2),
        (beta * beta, _ODD2, _EVEN2),
        (alpha * beta, _EVEN2, _EVEN2),
        (alpha * beta, _ODD2, _ODD2),
    ]
    terms: List[_Term] = []
    for coeff, first, second in groups:
        terms += _product(
            coeff / 4,
            _bracket(ac1, first), _bracket(bd1, first),
            _bracket(ac2, second), _bracket(bd2, second),
        )
    return from_kets(ModeRegistry.from_spatials(_PAIR_COPY1 + _PAIR_COPY2), terms)


def pair_postselected() -> PhotonState:
    """Normalised one-photon-per-output part after the PBS layer."""
    ac = ("a1", "c1", "a2", "c2")
    bd = ("b1", "d1", "b2", "d2")
    terms = _product(1 / (2 * math.sqrt(2.0)), _bracket(ac, ("HHHH", "VVVV")), _bracket(bd, ("HHHH", "VVVV")))
    terms += _product(1 / (2 * math.sqrt(2.0)), _bracket(ac, ("HVHV", "VHVH")), _bracket(bd, ("HVHV", "VHVH")))
    return from_kets(ModeRegistry.from_spatials(_PAIR_COPY1 + _PAIR_COPY2), terms)


def pair_heralded_even() -> PhotonState:
    """[(HH+VV)(HH+VV) + (HV+VH)(HV+VH)] / (2√2): the canonical heralded state."""
    terms = _product(_R2 / 2, _bracket(("a1", "c1"), _EVEN2), _bracket(("b1", "d1"), _EVEN2))
    terms += _product(_R2 / 2, _bracket(("a1", "c1"), _ODD2), _bracket(("b1", "d1"), _ODD2))
    return from_kets(ModeRegistry.from_spatials(_PAIR_COPY1), terms)


def pair_heralded_odd() -> PhotonState:
    """[(HH−VV)(HH−VV) + (HV−VH)(HV−VH)] / (2√2)."""
    flip = (1, -1)
    terms = _product(_R2 / 2, _bracket(("a1", "c1"), _EVEN2, flip), _bracket(("b1", "d1"), _EVEN2, flip))
    terms += _product(_R2 / 2, _bracket(("a1", "c1"), _ODD2, flip), _bracket(("b1", "d1"), _ODD2, flip))
    return from_kets(ModeRegistry.from_spatials(_PAIR_COPY1), terms)


def pair_target() -> PhotonState:
    """[(HH+VV)(HH+VV) + (HH−VV)(HH−VV)] / (2√2)."""
    flip = (1, -1)
    terms = _product(_R2 / 2, _bracket(("a1", "c1"), _EVEN2), _bracket(("b1", "d1"), _EVEN2))
    terms += _product(_R2 / 2, _bracket(("a1", "c1"), _EVEN2, flip), _bracket(("b1", "d1"), _EVEN2, flip))
    return from_kets(ModeRegistry.from_spatials(_PAIR_COPY1), terms)


# ---------------------------------------------------------------------------
# m = 3, N = 2
# ---------------------------------------------------------------------------

def triple_input(alpha: complex, beta: complex) -> PhotonState:
    """Merged expansion: four kets with amplitudes (α ± β)/2."""
    act, bdh = ("a1", "c1", "t1"), ("b1", "d1", "h1")
    terms: List[_Term] = []
    for left, right, amp in (
        ("HHH", "HHH", alpha + beta),
        ("VVV", "VVV", alpha + beta),
        ("HHH", "VVV", alpha - beta),
        ("VVV", "HHH", alpha - beta),
    ):
        terms.append((amp / 2, {**dict(zip(act, left)), **dict(zip(bdh, right))}))
    return from_kets(ModeRegistry.from_spatials(_TRIPLE_COPY1), terms)


def triple_heralded_even() -> PhotonState:
    """(E·E + O·O)/√2 with E, O the even/odd V-parity blocks, each normalised."""
    act, bdh = ("a1", "c1", "t1"), ("b1", "d1", "h1")
    terms = _product(_R2 / 4, _bracket(act, _EVEN3), _bracket(bdh, _EVEN3))
    terms += _product(_R2 / 4, _bracket(act, _ODD3), _bracket(bdh, _ODD3))
    return from_kets(ModeRegistry.from_spatials(_TRIPLE_COPY1), terms)


def triple_target() -> PhotonState:
    """[(HHH+VVV)(HHH+VVV) + (HHH−VVV)(HHH−VVV)] / (2√2)."""
    act, bdh = ("a1", "c1", "t1"), ("b1", "d1", "h1")
    ghz, flip = ("HHH", "VVV"), (1, -1)
    terms = _product(_R2 / 2, _bracket(act, ghz), _bracket(bdh, ghz))
    terms += _product(_R2 / 2, _bracket(act, ghz, flip), _bracket(bdh, ghz, flip))
    return from_kets(ModeRegistry.from_spatials(_TRIPLE_COPY1), terms)
