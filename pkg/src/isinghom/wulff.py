"""Energy-normalized Wulff shapes, envelope arcs and the admissibility tests."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .bounds import mixture_mean
from .homogenize import SurfaceTensionProfile, full_circle


class WulffError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class WulffPolygon:
    vertices: np.ndarray  # counterclockwise, shape (n, 2)
    scale: float
    energy: float
    normals: np.ndarray  # outward unit normal of edge i -> i+1
    offsets: np.ndarray  # support values of the scaled polygon along ``normals``

    def to_document(self) -> dict:
        return {"vertices": self.vertices.tolist(), "scale": self.scale, "energy": self.energy}

    def area(self) -> float:
        x, y = self.vertices[:, 0], self.vertices[:, 1]
        return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))

    def outside(self, points) -> np.ndarray:
        """Signed excess ``max_i (n_i . p - h_i)``; ``<= 0`` inside."""
        p = np.atleast_2d(points)
        return (p @ self.normals.T - self.offsets).max(axis=1)


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _turns_left(o, a, b, rel=1e-12) -> bool:
    scale = math.hypot(a[0] - o[0], a[1] - o[1]) * math.hypot(b[0] - o[0], b[1] - o[1])
    return _cross(o, a, b) > rel * scale


def convex_hull(points) -> np.ndarray:
    """Monotone chain; counterclockwise, (nearly) collinear points dropped."""
    pts = sorted(map(tuple, np.asarray(points, dtype=float)))
    pts = list(dict.fromkeys(pts))
    if len(pts) < 3:
        return np.array(pts)
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and not _turns_left(lower[-2], lower[-1], p):
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and not _turns_left(upper[-2], upper[-1], p):
            upper.pop()
        upper.append(p)
    return np.array(lower[:-1] + upper[:-1])


def halfplane_polygon(normals, offsets, tol: float = 1e-12) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Intersect ``{x : n_i . x <= h_i}`` for unit ``n_i`` and ``h_i > 0``.

    Works in the polar picture: the constraint points ``n_i / h_i`` have a
    convex hull whose edges are the vertices of the intersection and whose
    hull vertices are the non-redundant constraints. Normals closer than
    ``tol`` in angle are merged, keeping the smaller offset.
    """
    normals = np.asarray(normals, dtype=float)
    offsets = np.asarray(offsets, dtype=float)
    if np.any(offsets <= 0):
        raise WulffError("support values must be positive")
    ang = np.arctan2(normals[:, 1], normals[:, 0])
    order = np.lexsort((offsets, ang))
    keep = []
    for i in order:
        if keep and abs(ang[i] - ang[keep[-1]]) < tol:
            continue
        keep.append(i)
    if len(keep) > 1 and abs(ang[keep[0]] + 2 * math.pi - ang[keep[-1]]) < tol:
        if offsets[keep[0]] > offsets[keep[-1]]:
            keep[0] = keep[-1]
        keep.pop()
    normals, offsets = normals[keep], offsets[keep]
    srt = np.sort(np.arctan2(normals[:, 1], normals[:, 0]))
    gaps = np.diff(np.append(srt, srt[0] + 2 * math.pi))
    if len(normals) < 3 or gaps.max() >= math.pi - tol:
        raise WulffError("half-plane intersection is unbounded")
    polar = normals / offsets[:, None]
    hull = convex_hull(polar)
    n = len(hull)
    verts, edge_n, edge_h = [], [], []
    for i in range(n):
        p, q = hull[i], hull[(i + 1) % n]
        # vertex x with p.x = 1 and q.x = 1
        det = p[0] * q[1] - p[1] * q[0]
        verts.append(((q[1] - p[1]) / det, (p[0] - q[0]) / det))
    verts = np.array(verts)
    # vertex i joins constraints hull[i] and hull[i+1]; edge from vertex i-1 to i lies on hull[i]
    for i in range(n):
        p = hull[i]
        r = math.hypot(*p)
        edge_n.append(p / r)
        edge_h.append(1.0 / r)
    # reorder so that edge i runs from vertex i to vertex i+1
    verts = np.roll(verts, 1, axis=0)
    return verts, np.array(edge_n), np.array(edge_h)


def profile_phi(profile: SurfaceTensionProfile):
    """1-homogeneous piecewise-linear extension of the sampled values."""
    nus, vals = full_circle(profile)
    angles = np.arctan2(nus[:, 1], nus[:, 0])

    def phi(x) -> float:
        x = np.asarray(x, dtype=float)
        t = math.atan2(x[1], x[0])
        j = int(np.searchsorted(angles, t, side="right"))
        a, c = (j - 1) % len(nus), j % len(nus)
        A, C = nus[a], nus[c]
        det = A[0] * C[1] - A[1] * C[0]
        if abs(det) < 1e-15:
            return float(vals[a] * math.hypot(*x))
        lam = (x[0] * C[1] - x[1] * C[0]) / det
        mu = (A[0] * x[1] - A[1] * x[0]) / det
        return float(lam * vals[a] + mu * vals[c])

    return phi


def boundary_energy(vertices, phi) -> float:
    """``sum_edges length * phi(outward normal)`` for a counterclockwise polygon."""
    v = np.asarray(vertices, dtype=float)
    e = np.roll(v, -1, axis=0) - v
    total = 0.0
    for dx, dy in e:
        length = math.hypot(dx, dy)
        total += length * phi(np.array([dy / length, -dx / length]))
    return total


def wulff_shape(profile: SurfaceTensionProfile) -> WulffPolygon:
    """Intersect ``x . nu <= phi(nu)`` over the samples and their negatives, then
    rescale so that the boundary energy is 1."""
    nus, vals = full_circle(profile)
    if np.any(vals <= 0):
        raise WulffError("surface tension samples must be positive")
    verts, normals, offsets = halfplane_polygon(nus, vals)
    phi = profile_phi(profile)
    raw = boundary_energy(verts, phi)
    lam = 1.0 / raw
    scaled = verts * lam
    energy = boundary_energy(scaled, phi)
    return WulffPolygon(scaled, lam, energy, normals, offsets * lam)


def polygon_from_vertices(vertices, phi=None) -> WulffPolygon:
    """Wrap a convex vertex list (any orientation) as a polygon with unit scale."""
    hull = convex_hull(vertices)
    nxt = np.roll(hull, -1, axis=0)
    e = nxt - hull
    lengths = np.hypot(e[:, 0], e[:, 1])
    normals = np.column_stack([e[:, 1], -e[:, 0]]) / lengths[:, None]
    offsets = np.einsum("ij,ij->i", normals, hull)
    energy = boundary_energy(hull, phi) if phi is not None else float("nan")
    return WulffPolygon(hull, 1.0, energy, normals, offsets)


def square(half_side: float) -> WulffPolygon:
    h = half_side
    return polygon_from_vertices([(h, h), (-h, h), (-h, -h), (h, -h)])


def rectangle_vertex(c1: float, c2: float) -> tuple[float, float]:
    """First-quadrant vertex of the normalized Wulff shape of ``c1|x1| + c2|x2|``."""
    return (1.0 / (8.0 * c2), 1.0 / (8.0 * c1))


# -- envelope ---------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class EnvelopeArc:
    theta: float
    alpha: float
    beta: float
    m: float
    quadrant: int
    restricted: bool
    c2_range: tuple[float, float]
    points: np.ndarray
    half_side: float

    def point(self, c2: float) -> np.ndarray:
        return _arc_point(c2, self.m, self.quadrant)


_SIGNS = {1: (1.0, 1.0), 2: (-1.0, 1.0), 3: (-1.0, -1.0), 4: (1.0, -1.0)}


def _arc_point(c2, m, quadrant):
    """Vertex ``(1/(8 c2), 1/(8 c1))`` of the rectangle with ``c1 = 2m - c2``."""
    sx, sy = _SIGNS[quadrant]
    x1 = 1.0 / (8.0 * c2)
    x2 = 1.0 / (16.0 * m - 1.0 / x1)
    return np.array([sx * x1, sy * x2])


def arc_range(theta, alpha, beta, restricted) -> tuple[float, float] | None:
    """Admissible ``c2`` interval: ``c1, c2 >= alpha`` (inside the square),
    and ``<= beta`` as well when restricted."""
    m = mixture_mean(theta, alpha, beta)
    lo, hi = alpha, 2 * m - alpha
    if restricted:
        lo, hi = max(lo, 2 * m - beta), min(hi, beta)
    if lo > hi:
        return None
    return (lo, hi)


def envelope(theta: float, alpha: float, beta: float, n_points: int = 512) -> list[EnvelopeArc]:
    """Quadrant arcs of ``1/|x1| + 1/|x2| = 16 m`` inside the square of side ``1/(4 alpha)``.

    Four unrestricted arcs are always returned; for ``theta >= 1/2`` four more
    with ``|x1|, |x2| >= 1/(8 beta)`` follow.
    """
    if not (0 <= theta <= 1 and 0 < alpha < beta):
        raise ValueError("need 0 <= theta <= 1 and 0 < alpha < beta")
    m = mixture_mean(theta, alpha, beta)
    arcs = []
    for restricted in ((False, True) if theta >= 0.5 else (False,)):
        lo, hi = arc_range(theta, alpha, beta, restricted)
        c2s = np.linspace(lo, hi, n_points)
        for q in (1, 2, 3, 4):
            pts = np.array([_arc_point(c, m, q) for c in c2s])
            arcs.append(EnvelopeArc(theta, alpha, beta, m, q, restricted, (lo, hi), pts, 1.0 / (8 * alpha)))
    return arcs


@dataclass(frozen=True)
class Admissibility:
    admissible: bool
    which_test: str
    contained: bool
    arc_gaps: tuple[float, ...]


def _min_along(fn, lo, hi, n):
    if hi - lo <= 0:
        return float(fn(lo)), lo
    xs = np.linspace(lo, hi, n)
    ys = np.array([fn(x) for x in xs])
    i = int(np.argmin(ys))
    best, arg = float(ys[i]), float(xs[i])
    a, b = xs[max(i - 1, 0)], xs[min(i + 1, n - 1)]
    res = minimize_scalar(fn, bounds=(a, b), method="bounded", options={"xatol": 1e-14 * max(1.0, abs(b))})
    if res.fun < best:
        best, arg = float(res.fun), float(res.x)
    # bounded Brent stops near sqrt(eps) in x; kinks need a tighter polish
    if a < arg < b and fn(arg) < min(fn(a), fn(b)):
        res = minimize_scalar(fn, bracket=(a, arg, b), method="golden", tol=1e-15, options={"maxiter": 200})
        if a <= res.x <= b and res.fun < best:
            best, arg = float(res.fun), float(res.x)
    return best, arg


def admissible(polygon: WulffPolygon, theta: float, alpha: float, beta: float,
               samples: int = 512, tol: float = 1e-9) -> Admissibility:
    """Containment in the square of side ``1/(4 alpha)`` and contact with all four envelope arcs."""
    half = 1.0 / (8 * alpha)
    contained = bool(np.abs(polygon.vertices).max() <= half * (1 + tol))
    restricted = theta >= 0.5
    which = "theta>=1/2" if restricted else "theta<=1/2"
    m = mixture_mean(theta, alpha, beta)
    rng = arc_range(theta, alpha, beta, restricted)
    gaps = []
    for q in (1, 2, 3, 4):
        gap, _ = _min_along(lambda c: polygon.outside(_arc_point(c, m, q))[0], rng[0], rng[1], samples)
        gaps.append(gap)
    scale = half * tol
    meets = all(g <= scale for g in gaps)
    return Admissibility(contained and meets, which, contained, tuple(gaps))


def contains_admissible_rectangle(polygon: WulffPolygon, theta: float, alpha: float, beta: float,
                                  samples: int = 512, tol: float = 1e-9) -> tuple[bool, float | None]:
    """Search ``c1 = m + s``, ``c2 = m - s`` for a rectangle inside ``polygon``.

    ``s`` ranges over ``|s| <= beta - m`` intersected with ``c1, c2 >= alpha``.
    Containment is tested on the vertices ``(a, b)`` and ``(-a, b)``; central
    symmetry covers the other two.
    """
    m = mixture_mean(theta, alpha, beta)
    rng = arc_range(theta, alpha, beta, True)
    if rng is None:
        return False, None

    def excess(c2):
        a, b = _arc_point(c2, m, 1)
        return float(polygon.outside(np.array([[a, b], [-a, b]])).max())

    best, c2 = _min_along(excess, rng[0], rng[1], samples)
    if best <= tol / (8 * alpha):
        return True, m - c2
    return False, None
