import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from isinghom.homogenize import phi_profile, profile_from_function, weighted_l1_profile
from isinghom.lattice import random_mixture
from isinghom.wulff import (
    WulffError,
    admissible,
    boundary_energy,
    contains_admissible_rectangle,
    envelope,
    halfplane_polygon,
    polygon_from_vertices,
    profile_phi,
    rectangle_vertex,
    square,
    wulff_shape,
)

A, B = 1.0, 2.0


def first_quadrant_vertex(poly):
    v = poly.vertices
    return tuple(v[np.argmax(v[:, 0] + v[:, 1])])


def test_rectangle_vertex_example():
    poly = wulff_shape(weighted_l1_profile(1.0, 2.0, 3))
    assert first_quadrant_vertex(poly) == pytest.approx((1 / 16, 1 / 8), abs=1e-12)
    assert len(poly.vertices) == 4
    assert poly.energy == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("a", [0.5, 1.0, 3.0])
def test_minimal_tension_square(a):
    poly = wulff_shape(weighted_l1_profile(a, a, 8))
    assert np.allclose(np.abs(poly.vertices), 1 / (8 * a), atol=1e-12)
    assert len(poly.vertices) == 4


def test_euclidean_normalization_and_symmetry():
    poly = wulff_shape(profile_from_function(lambda nu: float(np.hypot(*nu)), 6))
    assert poly.energy == pytest.approx(1.0, abs=1e-9)
    rot = poly.vertices @ np.array([[0, 1], [-1, 0]])
    key = lambda a: sorted(map(tuple, np.round(a, 10)))
    assert key(rot) == key(poly.vertices)
    assert key(-poly.vertices) == key(poly.vertices)


@settings(max_examples=40, deadline=None)
@given(c1=st.floats(A, B), c2=st.floats(A, B))
def test_rectangle_law(c1, c2):
    poly = wulff_shape(weighted_l1_profile(c1, c2, 3))
    assert first_quadrant_vertex(poly) == pytest.approx(rectangle_vertex(c1, c2), abs=1e-9)
    assert abs(poly.energy - 1) <= 1e-9


@pytest.mark.parametrize("seed", range(5))
def test_normalization_on_computed_profiles(seed):
    prof = phi_profile(random_mixture(4, 0.5, seed), 3, 4)
    poly = wulff_shape(prof)
    assert abs(poly.energy - 1) <= 1e-9
    # independent check of the energy via the polygon's own edges
    assert boundary_energy(poly.vertices, profile_phi(prof)) == pytest.approx(1.0, abs=1e-9)
    assert np.allclose(sorted(map(tuple, -poly.vertices)), sorted(map(tuple, poly.vertices)))


def test_square_side_decreasing_in_weight():
    sides = [2 * wulff_shape(weighted_l1_profile(c, c, 2)).vertices.max() for c in (0.5, 1.0, 1.5, 2.0)]
    assert all(b < a for a, b in zip(sides, sides[1:]))


def test_halfplane_unbounded():
    with pytest.raises(WulffError):
        halfplane_polygon([(1, 0), (0, 1), (-1, 0)], [1, 1, 1])


def test_halfplane_duplicate_normals_keep_smaller_offset():
    verts, _, _ = halfplane_polygon([(1, 0), (1, 0), (0, 1), (-1, 0), (0, -1)], [3, 1, 1, 1, 1])
    assert np.abs(verts).max() == pytest.approx(1.0)


def test_halfplane_redundant_constraint_pruned():
    s = math.sqrt(0.5)
    verts, normals, _ = halfplane_polygon([(1, 0), (0, 1), (-1, 0), (0, -1), (s, s)], [1, 1, 1, 1, 5])
    assert len(verts) == 4 and len(normals) == 4


# -- envelope ----------------------------------------------------------------

def curve_residual(p, m):
    return abs(1 / abs(p[0]) + 1 / abs(p[1]) - 16 * m)


def test_envelope_symmetric_point():
    arcs = envelope(0.5, A, B, 513)
    m = 1.5
    mid = arcs[0].points[256]
    assert mid == pytest.approx((1 / 12, 1 / 12), abs=1e-15)
    assert 1 / mid[0] + 1 / mid[1] == pytest.approx(24.0, abs=1e-12)
    assert arcs[0].m == m


def test_envelope_theta_zero_hits_corner():
    arcs = envelope(0.0, A, B, 16)
    assert np.allclose(arcs[0].points, 1 / (8 * A))
    assert len(arcs) == 4


@pytest.mark.parametrize("theta", [0.0, 0.2, 0.5, 0.7, 1.0])
def test_envelope_points_on_curve_inside_square(theta):
    arcs = envelope(theta, A, B, 200)
    assert len(arcs) == (8 if theta >= 0.5 else 4)
    for arc in arcs:
        assert max(curve_residual(p, arc.m) for p in arc.points) <= 1e-12
        assert np.abs(arc.points).max() <= 1 / (8 * A) * (1 + 1e-15)
        if arc.restricted:
            assert np.abs(arc.points).min() >= 1 / (8 * B) * (1 - 1e-15)
    signs = {arc.quadrant: np.sign(arc.points[0]) for arc in arcs}
    assert signs == {1: pytest.approx((1, 1)), 2: pytest.approx((-1, 1)),
                     3: pytest.approx((-1, -1)), 4: pytest.approx((1, -1))}


@settings(max_examples=50, deadline=None)
@given(theta=st.floats(0, 1), s=st.floats(-1, 1))
def test_admissible_rectangle_vertices_on_curve(theta, s):
    m = theta * B + (1 - theta) * A
    smax = min(B - m, m - A)
    c1, c2 = m + s * smax, m - s * smax
    assert curve_residual(rectangle_vertex(c1, c2), m) <= 1e-12


# -- predicates --------------------------------------------------------------

@pytest.mark.parametrize("theta", [0.0, 0.25, 0.5])
def test_bounding_square_admissible(theta):
    res = admissible(square(1 / (8 * A)), theta, A, B)
    assert res.admissible and res.which_test == "theta<=1/2" if theta < 0.5 else res.admissible


@pytest.mark.parametrize("theta, s", [(0.3, 0.0), (0.5, 0.4), (0.8, -0.1), (1.0, 0.0)])
def test_rectangle_wulff_shape_admissible(theta, s):
    m = theta * B + (1 - theta) * A
    c1, c2 = m + s, m - s
    poly = wulff_shape(weighted_l1_profile(c1, c2, 2))
    assert admissible(poly, theta, A, B).admissible
    ok, witness = contains_admissible_rectangle(poly, theta, A, B)
    assert ok and witness == pytest.approx(s, abs=1e-6)


def test_tiny_square_rejected():
    tiny = square(1e-3 / (8 * A))
    assert not admissible(tiny, 0.5, A, B).admissible
    assert contains_admissible_rectangle(tiny, 0.5, A, B) == (False, None)


def test_square_contains_symmetric_rectangle():
    ok, s = contains_admissible_rectangle(square(1 / (8 * A)), 0.5, A, B)
    assert ok and abs(s) <= 0.5


def test_oversized_square_not_admissible():
    res = admissible(square(1.5 / (8 * A)), 0.5, A, B)
    assert not res.contained and not res.admissible


def test_predicates_diverge_on_diamond():
    # meets each arc at an endpoint but contains no rectangle with vertex on the curve
    diamond = polygon_from_vertices([(1 / 16, 1 / 8), (-1 / 8, 1 / 16), (-1 / 16, -1 / 8), (1 / 8, -1 / 16)])
    assert admissible(diamond, 0.5, A, B).admissible
    assert contains_admissible_rectangle(diamond, 0.5, A, B) == (False, None)


def test_polygon_document():
    doc = wulff_shape(weighted_l1_profile(1.0, 2.0, 2)).to_document()
    assert set(doc) == {"vertices", "scale", "energy"}
    assert doc["scale"] == pytest.approx(1 / 16)
