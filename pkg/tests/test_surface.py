import json

import pytest
from hypothesis import given, strategies as st

from hymcg.errors import FixedLocusMismatch, InvalidTopologicalType, PairingViolation
from hymcg.surface import (
    DisconnectedHyperellipticSurface,
    HyperellipticSurface,
    QuotientProfile,
    Surface,
    make_hyperelliptic,
    make_surface,
    quotient_surface,
)


@pytest.mark.parametrize("g, n, k, chi, hyperbolic", [
    (0, 3, 0, -1, True),
    (2, 0, 0, -2, True),
    (1, 0, 0, 0, False),
    (0, 2, 1, -1, True),
])
def test_make_surface(g, n, k, chi, hyperbolic):
    s = make_surface(g, n, k)
    assert s.euler_characteristic == chi
    assert s.hyperbolic is hyperbolic


@pytest.mark.parametrize("args", [(-1, 0, 0), (0, -2, 0), (1, 0, -1)])
def test_negative_inputs_rejected(args):
    with pytest.raises(InvalidTopologicalType):
        make_surface(*args)


def test_filled_and_interior():
    s = make_surface(2, 3, 1)
    assert s.filled() == Surface(2, 0, 0)
    assert s.interior() == Surface(2, 4, 0)
    assert s.interior().euler_characteristic == s.euler_characteristic


def test_valid_hyperelliptic_surfaces():
    assert make_hyperelliptic(make_surface(2), 6).genus == 2
    h = make_hyperelliptic(make_surface(1, 1), 3, 1)
    assert h.swapped_puncture_pairs == 0


def test_both_violations_reported():
    with pytest.raises(FixedLocusMismatch) as info:
        make_hyperelliptic(make_surface(2, 2), 6, 1)
    assert "PairingViolation" in info.value.violations


def test_pairing_violation_alone():
    # 5 + 1 = 6 = 2g+2 but one puncture is left unpaired
    with pytest.raises(PairingViolation):
        make_hyperelliptic(make_surface(2, 2), 5, 1)
    with pytest.raises(PairingViolation):
        make_hyperelliptic(make_surface(2, 0, 1), 6, 0, 0)


@pytest.mark.parametrize("h, quotient, branch", [
    (HyperellipticSurface(Surface(2), 6), Surface(0, 0, 0), 6),
    (HyperellipticSurface(Surface(1, 1), 3, 1), Surface(0, 1, 0), 3),
    (HyperellipticSurface(Surface(2, 4), 6, 0), Surface(0, 2, 0), 6),
    (HyperellipticSurface(Surface(1, 2, 2), 2, 2, 0), Surface(0, 2, 1), 2),
])
def test_quotient(h, quotient, branch):
    q = quotient_surface(h)
    assert q.quotient == quotient
    assert q.branchPoints == branch


def test_closed_genus_two_riemann_hurwitz():
    q = quotient_surface(HyperellipticSurface(Surface(2), 6))
    assert 2 * q.quotient.euler_characteristic - q.branchPoints == -2


@st.composite
def hyperelliptic_surfaces(draw):
    g = draw(st.integers(0, 6))
    w_p = draw(st.integers(0, 2 * g + 2))
    w_o = draw(st.integers(0, 2 * g + 2 - w_p))
    w_b = 2 * g + 2 - w_p - w_o
    pairs_o = draw(st.integers(0, 3))
    pairs_b = draw(st.integers(0, 3))
    s = Surface(g, w_o + 2 * pairs_o, w_b + 2 * pairs_b)
    return HyperellipticSurface(s, w_p, w_o, w_b)


@given(hyperelliptic_surfaces())
def test_fixed_locus_and_riemann_hurwitz(h):
    assert h.wPoints + h.wPunctures + h.wBoundary == 2 * h.genus + 2
    q = quotient_surface(h)
    assert q.quotient.genus == 0
    # closed-up surfaces: every fixed point, puncture or circle becomes a branch point
    assert 2 - 2 * h.genus == 4 - (h.wPoints + h.wPunctures + h.wBoundary)
    assert h.euler_characteristic == 2 * q.quotient.euler_characteristic - h.wPoints


@given(hyperelliptic_surfaces())
def test_json_round_trip(h):
    assert HyperellipticSurface.from_json(json.loads(json.dumps(h.to_json()))) == h
    assert Surface.from_json(h.base.to_json()) == h.base
    q = quotient_surface(h)
    assert QuotientProfile.from_json(json.loads(json.dumps(q.to_json()))) == q


def test_json_field_names():
    h = HyperellipticSurface(Surface(1, 1), 3, 1)
    assert set(h.to_json()) == {"genus", "punctures", "boundary", "wPoints", "wPunctures", "wBoundary"}
    assert set(quotient_surface(h).to_json()) == {"genus", "punctures", "boundary", "branchPoints"}


def test_disconnected_surface_euler():
    d = DisconnectedHyperellipticSurface(
        (HyperellipticSurface(Surface(1, 0, 2), 4, 0, 0),),
        (Surface(0, 0, 3),),
    )
    assert d.component_count == 3
    assert d.euler_characteristic == -2 + 2 * -1
    assert DisconnectedHyperellipticSurface.from_json(d.to_json()) == d
