from fractions import Fraction

import numpy as np
import pytest

from isinghom.bounds import averaging_bounds, projection_bounds, theorem_membership
from isinghom.homogenize import direction_fan, phi_direction, phi_profile
from isinghom.lattice import volume_fractions
from isinghom.microgeometry import ConstructionError, SpecialSpec, laminate, prop_special_field, realize

A, B = 1.0, 2.0


def test_laminate_zero_is_alpha():
    f = laminate(3, 0, 0, A, B)
    assert np.all(f.horizontal == A) and np.all(f.vertical == A)


def test_laminate_full_rows():
    f = laminate(4, 4, 0, A, B)
    for z in direction_fan(2):
        e = phi_direction(f, z, k_max=1)
        assert e.value == pytest.approx(B * abs(e.nu[0]) + A * abs(e.nu[1]), abs=1e-12)


def test_laminate_bound_pairs_by_hand():
    f = laminate(4, 2, 1, A, B)
    assert projection_bounds(f).as_tuple() == (1.5, 1.25)
    assert averaging_bounds(f).as_tuple() == (1.5, 1.25)


def test_laminate_range_checked():
    with pytest.raises(ConstructionError):
        laminate(4, 5, 0, A, B)


@pytest.mark.parametrize("T", [2, 4, 8])
def test_laminate_projection_equals_averaging(T):
    for N1 in range(T + 1):
        for N2 in range(T + 1):
            f = laminate(T, N1, N2, A, B)
            assert projection_bounds(f).as_tuple() == averaging_bounds(f).as_tuple()


def test_special_lower_extreme():
    spec = SpecialSpec(8, 0, 0, Fraction(3, 8), Fraction(3, 8))
    f = prop_special_field(spec, A, B)
    assert volume_fractions(f).theta == Fraction(3, 8)
    for z in direction_fan(2):
        e = phi_direction(f, z, k_max=1)
        assert e.value == pytest.approx(A * (abs(e.nu[0]) + abs(e.nu[1])), abs=1e-12)


def test_special_by_hand():
    spec = SpecialSpec(8, Fraction(1, 4), Fraction(1, 2), Fraction(1, 2), Fraction(3, 4))
    f = prop_special_field(spec, A, B)
    assert projection_bounds(f).as_tuple() == (1.25, 1.5)
    vf = volume_fractions(f)
    assert (vf.theta_h, vf.theta_v) == (Fraction(1, 2), Fraction(3, 4))
    assert vf.theta == (spec.theta1 + spec.theta2) / 2


def test_special_rejects_t_not_below_theta():
    with pytest.raises(ConstructionError):
        SpecialSpec(8, Fraction(1, 2), Fraction(0), Fraction(1, 2), Fraction(1, 4))


def test_special_rejects_unrepresentable():
    with pytest.raises(ConstructionError):
        SpecialSpec(8, Fraction(1, 3), Fraction(0), Fraction(1, 2), Fraction(1, 4))


def test_special_infeasible_fill():
    # theta1 = 1 needs every bond beta, but column 0 is forced to alpha outside the beta rows
    spec = SpecialSpec(4, Fraction(1, 4), Fraction(0), Fraction(1), Fraction(1, 4))
    with pytest.raises(ConstructionError, match="infeasible"):
        prop_special_field(spec, A, B)


@pytest.mark.parametrize("seed", range(6))
def test_special_phi_independent_of_fill(seed):
    spec = SpecialSpec(6, Fraction(1, 3), Fraction(1, 6), Fraction(1, 2), Fraction(1, 3), seed)
    f = prop_special_field(spec, A, B)
    c1 = 1 / 3 * B + 2 / 3 * A
    c2 = 1 / 6 * B + 5 / 6 * A
    for z in direction_fan(2):
        e = phi_direction(f, z, k_max=8)
        assert e.upper_certificate == pytest.approx(c1 * abs(e.nu[0]) + c2 * abs(e.nu[1]), rel=1e-12)
        assert e.lower_certificate == pytest.approx(e.upper_certificate, rel=1e-12)


def test_realize_lower_extreme():
    r = realize(A, A, 0.3, A, B, 10)
    assert (r.c1, r.c2) == (A, A)
    assert r.theta == Fraction(3, 10)
    assert projection_bounds(r.field).as_tuple() == (A, A)


def test_realize_zero_fraction():
    r = realize(A, A, 0.0, A, B, 4)
    assert np.all(r.field.horizontal == A)


@pytest.mark.parametrize("theta, T", [(0.5, 10), (0.25, 8), (0.3, 20)])
def test_realize_equality_case(theta, T):
    m = theta * B + (1 - theta) * A
    r = realize(m, m, theta, A, B, T)
    assert abs(r.c1 - m) <= (B - A) / T + 1e-12
    assert abs(r.c2 - m) <= (B - A) / T + 1e-12
    assert volume_fractions(r.field).theta == r.theta


def test_realize_exact_example():
    r = realize(1.2, 1.3, 0.5, A, B, 20)
    assert (r.spec.t1, r.spec.t2) == (Fraction(1, 5), Fraction(3, 10))
    assert (r.c1, r.c2) == pytest.approx((1.2, 1.3), abs=1e-15)
    assert r.theta == Fraction(1, 2)


def test_realize_preconditions():
    with pytest.raises(ConstructionError):
        realize(2.0, 2.0, 0.5, A, B, 10)
    with pytest.raises(ConstructionError):
        realize(0.5, 1.0, 0.5, A, B, 10)


def test_realize_remeasures_to_reported_values():
    r = realize(1.37, 1.51, 0.6, A, B, 16, seed=3)
    vf = volume_fractions(r.field)
    assert vf.theta == r.theta
    assert (vf.theta_h, vf.theta_v) == (r.spec.theta1, r.spec.theta2)
    assert projection_bounds(r.field).as_tuple() == pytest.approx((r.c1, r.c2), rel=1e-14)


def test_realized_field_is_member():
    r = realize(1.4, 1.5, 0.5, A, B, 10)
    prof = phi_profile(r.field, 2, 2)
    assert theorem_membership(prof, A, B, float(r.theta), 1e-9).member


def test_provenance_blocks():
    r = realize(1.2, 1.3, 0.5, A, B, 20)
    prov = r.provenance()
    assert prov["construction"] == "realize"
    assert prov["achieved"]["t1"] == "1/5"
