import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from isinghom.bounds import (
    BoundPair,
    averaging_bounds,
    mixture_upper_bound,
    projection_bounds,
    theorem_membership,
)
from isinghom.homogenize import profile_from_function, weighted_l1_profile
from isinghom.lattice import FieldError, homogeneous, new_bond_field, random_mixture, volume_fractions
from isinghom.microgeometry import laminate
from oracles import loop_averaging, loop_projection

A, B = 1.0, 2.0


def test_projection_homogeneous():
    assert projection_bounds(homogeneous(3, 1.5)).as_tuple() == (1.5, 1.5)


def test_projection_laminate_by_hand():
    f = laminate(4, 2, 0, A, B)
    assert projection_bounds(f).c1 == (2 * B + 2 * A) / 4 == (A + B) / 2


def test_projection_alpha_in_every_row_and_column():
    h = np.full((4, 4), B)
    v = np.full((4, 4), B)
    for i in range(4):
        h[i, (i * 3) % 4] = A
        v[(i + 1) % 4, i] = A
    f = new_bond_field(4, h, v, A, B)
    assert projection_bounds(f).as_tuple() == (A, A)
    assert volume_fractions(f).theta == 0.75


def test_averaging_all_beta():
    assert averaging_bounds(homogeneous(2, B)).as_tuple() == (B, B)


def test_averaging_by_hand():
    f = new_bond_field(2, [[1, 1], [2, 2]], [[1, 2], [2, 2]], A, B)
    assert averaging_bounds(f).as_tuple() == (1.5, 1.75)


def test_mixture_bound_examples():
    f = new_bond_field(2, np.full((2, 2), B), np.full((2, 2), A), A, B)
    assert mixture_upper_bound(f).as_tuple() == (B, A)
    g = laminate(4, 2, 2, A, B)
    th = 0.5
    assert mixture_upper_bound(g).as_tuple() == (th * B + (1 - th) * A,) * 2
    with pytest.raises(FieldError):
        mixture_upper_bound(new_bond_field(1, [[1]], [[1]]))


@pytest.mark.parametrize("seed", range(50))
def test_mixture_bound_equals_averaging(seed):
    rng = np.random.default_rng(seed)
    f = random_mixture(int(rng.integers(1, 9)), float(rng.uniform()), seed)
    assert mixture_upper_bound(f).as_tuple() == pytest.approx(averaging_bounds(f).as_tuple(), rel=1e-14)


@settings(max_examples=50, deadline=None)
@given(T=st.integers(1, 6), seed=st.integers(0, 10**6))
def test_bounds_match_loop_oracles_and_order(T, seed):
    rng = np.random.default_rng(seed)
    f = new_bond_field(T, rng.uniform(0.5, 3, (T, T)), rng.uniform(0.5, 3, (T, T)))
    p, a = projection_bounds(f), averaging_bounds(f)
    assert p.as_tuple() == pytest.approx(loop_projection(f), rel=1e-14)
    assert a.as_tuple() == pytest.approx(loop_averaging(f), rel=1e-14)
    assert p.c1 <= a.c1 and p.c2 <= a.c2


def test_boundpair_validation():
    with pytest.raises(ValueError):
        BoundPair(-1.0, 1.0)
    with pytest.raises(ValueError):
        BoundPair(math.inf, 1.0)
    assert BoundPair(1.0, 2.0).evaluate((-0.6, 0.8)) == pytest.approx(2.2)


# -- membership --------------------------------------------------------------

@pytest.mark.parametrize("theta", [0.0, 0.1, 0.25, 0.5, 0.9, 1.0])
def test_minimal_tension_always_member(theta):
    v = theorem_membership(weighted_l1_profile(A, A, 4), A, B, theta)
    assert v.member and v.witness is not None and v.violation_nu is None


def test_trivial_bound_at_full_fraction():
    v = theorem_membership(weighted_l1_profile(B, B, 4), A, B, 1.0)
    assert v.member
    assert v.witness.as_tuple() == pytest.approx((B, B))


def test_beta_l1_rejected_at_half():
    v = theorem_membership(weighted_l1_profile(B, B, 4), A, B, 0.5)
    assert not v.member and v.witness is None
    nu = np.abs(v.violation_nu)
    assert nu == pytest.approx((math.sqrt(0.5), math.sqrt(0.5)))
    # phi(nu) - m |nu|_1 = (2 - 1.5) * sqrt(2), less the tolerance
    assert v.violation_amount == pytest.approx(0.5 * math.sqrt(2) - 1e-9)


def test_lower_bound_failure_reported():
    v = theorem_membership(weighted_l1_profile(0.8, 1.0, 3), A, B, 0.5)
    assert not v.member
    assert v.violation_amount > 0


def test_asymmetric_witness_found():
    # needs c1 = 1.9, so s = 0.4 at m = 1.5
    v = theorem_membership(weighted_l1_profile(1.9, 1.0, 4), A, B, 0.5)
    assert v.member
    c1, c2 = v.witness.as_tuple()
    assert c1 + c2 == pytest.approx(3.0) and c1 >= 1.9 - 1e-9 and c1 <= B


def test_missing_axes_rejected():
    from isinghom.homogenize import PhiEstimate, SurfaceTensionProfile

    s = PhiEstimate((1, 1), (0.7071067811865476, -0.7071067811865476), 1.5, 1.5, 1.5, 1, True)
    with pytest.raises(ValueError):
        theorem_membership(SurfaceTensionProfile([s]), A, B, 0.5)


def test_verdict_document():
    doc = theorem_membership(weighted_l1_profile(B, B, 2), A, B, 0.5).to_document()
    assert doc["member"] is False and "violation" in doc and "witness" not in doc
    doc = theorem_membership(weighted_l1_profile(A, A, 2), A, B, 0.5).to_document()
    assert set(doc) == {"member", "witness", "theta", "alpha", "beta", "tol"}


def _fixed_profiles():
    rng = np.random.default_rng(1234)
    profs = []
    for _ in range(10):
        c1, c2 = rng.uniform(A, B, 2)
        w = rng.uniform(0, 0.3)
        # convex mix of a weighted l1 norm and a scaled euclidean norm
        profs.append(profile_from_function(lambda nu, c1=c1, c2=c2, w=w: (1 - w) * (c1 * abs(nu[0]) + c2 * abs(nu[1]))
                                           + w * A * math.sqrt(2) * math.hypot(*nu), 4))
    return profs


@pytest.mark.parametrize("idx", range(10))
def test_membership_monotone_in_theta(idx):
    prof = _fixed_profiles()[idx]
    thetas = np.linspace(0, 1, 41)
    flags = [theorem_membership(prof, A, B, float(t)).member for t in thetas]
    first = flags.index(True) if True in flags else len(flags)
    assert all(flags[first:])
