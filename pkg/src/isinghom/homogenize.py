"""Homogenized surface tension of a periodic bond field.

The surface tension in direction ``nu`` is the asymptotic cost per unit
length of the cheapest chain of bonds whose dual segments join up into a
path with net displacement perpendicular to ``nu``. On the dual lattice
(nodes at half-integer points) such a chain is an ordinary edge path, each
dual edge paying the weight of the primal bond it crosses.

Dual node ``(a, b)`` sits at ``(a + 1/2, b + 1/2)``. The dual edge
``(a, b)-(a, b+1)`` crosses the horizontal bond ``h[b+1, a]`` and the dual
edge ``(a, b)-(a+1, b)`` crosses the vertical bond ``v[b, a+1]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

import numpy as np

from .kernels import grid_dijkstra
from .lattice import BondField, field_hash


class WindowOverflow(RuntimeError):
    """The search window would exceed the configured node budget."""


MAX_WINDOW_NODES = 20_000_000


@dataclass(frozen=True)
class CrossingSpec:
    z: tuple[int, int]
    k: int = 1

    def __post_init__(self):
        z1, z2 = self.z
        if math.gcd(abs(z1), abs(z2)) != 1:
            raise ValueError(f"direction {self.z} is not a primitive integer vector")
        if self.k < 1:
            raise ValueError("k must be >= 1")

    @property
    def length(self) -> float:
        return math.hypot(*self.z)

    @property
    def nu(self) -> tuple[float, float]:
        return normal_of(self.z)


def normal_of(z) -> tuple[float, float]:
    """Unit normal: ``z / |z|`` rotated by -pi/2."""
    z1, z2 = z
    r = math.hypot(z1, z2)
    return (z2 / r, -z1 / r)


@dataclass(frozen=True)
class PhiEstimate:
    z: tuple[int, int]
    nu: tuple[float, float]
    value: float
    upper_certificate: float
    lower_certificate: float
    k_used: int
    converged: bool
    period: int = 1
    k_max: int = 1

    def slack(self, beta: float) -> float:
        """Allowance ``4 beta / (k T |z|)`` for comparing against the averaging bound."""
        return 4.0 * beta / (self.k_used * self.period * math.hypot(*self.z))


@dataclass
class SurfaceTensionProfile:
    samples: list[PhiEstimate]
    field_hash: str = ""
    meta: dict = dc_field(default_factory=dict)

    def directions(self) -> np.ndarray:
        return np.array([s.nu for s in self.samples])

    def values(self) -> np.ndarray:
        return np.array([s.value for s in self.samples])

    def to_document(self) -> dict:
        return {
            "field_hash": self.field_hash,
            "samples": [
                {
                    "z": list(s.z),
                    "nu": list(s.nu),
                    "value": s.value,
                    "upper": s.upper_certificate,
                    "lower": s.lower_certificate,
                    "k": s.k_used,
                    "converged": s.converged,
                }
                for s in self.samples
            ],
        }

    @classmethod
    def from_document(cls, doc) -> "SurfaceTensionProfile":
        try:
            samples = [
                PhiEstimate(
                    z=(int(s["z"][0]), int(s["z"][1])),
                    nu=(float(s["nu"][0]), float(s["nu"][1])),
                    value=float(s["value"]),
                    upper_certificate=float(s["upper"]),
                    lower_certificate=float(s["lower"]),
                    k_used=int(s["k"]),
                    converged=bool(s["converged"]),
                )
                for s in doc["samples"]
            ]
        except (KeyError, TypeError, IndexError, ValueError) as exc:
            raise ValueError(f"malformed profile document: {exc!r}") from None
        return cls(samples, str(doc.get("field_hash", "")))


# -- dual lattice windows ---------------------------------------------------

def straight_cost(field: BondField, z, k: int) -> float:
    """Cost of the L-shaped dual path up dual column 0, then along dual row 0.

    Over whole periods the vertical leg crosses every ``h[., 0]`` and the
    horizontal leg every ``v[0, .]`` once per period.
    """
    z1, z2 = z
    return k * (abs(z2) * float(field.horizontal[:, 0].sum()) + abs(z1) * float(field.vertical[0, :].sum()))


@dataclass(frozen=True)
class Window:
    a0: int
    b0: int
    width: int
    height: int

    def index(self, a: int, b: int) -> int:
        return (b - self.b0) * self.width + (a - self.a0)

    @property
    def nodes(self) -> int:
        return self.width * self.height


def search_window(field: BondField, z, k: int) -> Window:
    """Box around the endpoints that no optimal path can leave.

    A path reaching a node more than ``margin`` steps outside the box spanned
    by the endpoints takes at least ``L1 + 2 (margin + 1)`` steps, so costs
    more than the explicit L-shaped path once
    ``margin >= (U / w_min - L1) / 2``.
    """
    T = field.period
    ex, ey = k * T * z[0], k * T * z[1]
    l1 = abs(ex) + abs(ey)
    upper = straight_cost(field, z, k)
    margin = int(math.floor((upper / field.min_weight - l1) / 2.0)) + 1
    margin = max(margin, 1)
    a0 = min(0, ex) - margin
    b0 = min(0, ey) - margin
    width = abs(ex) + 2 * margin + 1
    height = abs(ey) + 2 * margin + 1
    return Window(a0, b0, width, height)


def dual_weights(field: BondField, win: Window) -> tuple[np.ndarray, np.ndarray]:
    """Edge weight arrays (``wh``, ``wv``) of the dual grid restricted to ``win``."""
    T = field.period
    a = np.arange(win.a0, win.a0 + win.width)
    b = np.arange(win.b0, win.b0 + win.height)
    # (a, b)-(a+1, b) crosses v[b, a+1]
    wh = field.vertical[np.ix_(b % T, (a[:-1] + 1) % T)]
    # (a, b)-(a, b+1) crosses h[b+1, a]
    wv = field.horizontal[np.ix_((b[:-1] + 1) % T, a % T)]
    return wh, wv


def crossing_costs(field: BondField, z, k: int) -> np.ndarray:
    """``d_j`` for ``j = 1..k`` from one search on the window for ``k``."""
    CrossingSpec(tuple(z), k)
    win = search_window(field, z, k)
    if win.nodes > MAX_WINDOW_NODES:
        raise WindowOverflow(f"window of {win.nodes} nodes exceeds budget {MAX_WINDOW_NODES}")
    wh, wv = dual_weights(field, win)
    T = field.period
    targets = [win.index(j * T * z[0], j * T * z[1]) for j in range(1, k + 1)]
    return grid_dijkstra(wh, wv, win.index(0, 0), targets)


def crossing_cost(field: BondField, z, k: int = 1) -> float:
    """Minimal dual path cost from ``(1/2, 1/2)`` to ``(1/2, 1/2) + k T z``."""
    return float(crossing_costs(field, z, k)[-1])


def _doubling_schedule(k_max: int) -> list[int]:
    ks = []
    k = 1
    while k < k_max:
        ks.append(k)
        k *= 2
    ks.append(k_max)
    return ks


def phi_direction(field: BondField, z, k_max: int = 8, rel_tol: float = 1e-3) -> PhiEstimate:
    """Certified estimate of the surface tension for normal ``normal_of(z)``.

    By subadditivity each ``d_k / (k T |z|)`` bounds the limit from above, so
    the minimum over ``k <= k_max`` is the upper certificate; one search on
    the ``k_max`` window yields every ``d_k``. A ``k = 1`` search runs first
    and is final when it already meets the projection lower bound. The
    ``converged`` flag is set when the certificate is within ``rel_tol`` of
    the lower bound, or when the last doubling ``k_max / 2 -> k_max`` moved
    it by less than ``rel_tol`` relatively.
    """
    from .bounds import projection_bounds

    z = (int(z[0]), int(z[1]))
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    spec = CrossingSpec(z, 1)
    nu = spec.nu
    T = field.period
    lower = projection_bounds(field).evaluate(nu)

    d = crossing_costs(field, z, 1)
    best = float(d[0] / (T * spec.length))
    if best - lower <= 1e-12 * best or k_max == 1:
        return PhiEstimate(z, nu, best, best, lower, 1, best - lower <= rel_tol * best, T, k_max)

    d = crossing_costs(field, z, k_max)
    ratios = d / (np.arange(1, k_max + 1) * T * spec.length)
    running = np.minimum.accumulate(ratios)
    j = int(np.argmin(ratios))
    best = float(ratios[j])
    prev = float(running[_doubling_schedule(k_max)[-2] - 1])
    converged = best - lower <= rel_tol * best or prev - best < rel_tol * best
    return PhiEstimate(z, nu, best, best, lower, j + 1, converged, T, k_max)


def direction_fan(max_component: int = 8) -> list[tuple[int, int]]:
    """Primitive ``z`` with ``max(|z1|, |z2|) <= max_component`` over a half-turn.

    Sorted by the angle of the associated normal, which runs over
    ``[-pi/2, pi/2)``.
    """
    if max_component < 1:
        raise ValueError("max_component must be >= 1")
    fan = []
    for z2 in range(0, max_component + 1):
        for z1 in range(-max_component, max_component + 1):
            if z2 == 0 and z1 <= 0:
                continue
            if math.gcd(abs(z1), z2) == 1:
                fan.append((z1, z2))
    fan.sort(key=lambda z: math.atan2(*reversed(normal_of(z))))
    return fan


def phi_profile(field: BondField, max_component: int = 8, k_max: int = 8, rel_tol: float = 1e-3,
                workers: int = 1) -> SurfaceTensionProfile:
    fan = direction_fan(max_component)
    if workers > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(workers) as pool:
            samples = list(pool.map(lambda z: phi_direction(field, z, k_max, rel_tol), fan))
    else:
        samples = [phi_direction(field, z, k_max, rel_tol) for z in fan]
    meta = {"max_component": max_component, "k_max": k_max, "rel_tol": rel_tol, "period": field.period}
    return SurfaceTensionProfile(samples, field_hash(field), meta)


def profile_from_function(phi, max_component: int = 8) -> SurfaceTensionProfile:
    """Exact samples of an analytic ``phi(nu)`` on the standard fan."""
    samples = []
    for z in direction_fan(max_component):
        nu = normal_of(z)
        val = float(phi(np.array(nu)))
        samples.append(PhiEstimate(z, nu, val, val, val, 0, True))
    return SurfaceTensionProfile(samples, "analytic")


def weighted_l1_profile(c1: float, c2: float, max_component: int = 8) -> SurfaceTensionProfile:
    return profile_from_function(lambda nu: c1 * abs(nu[0]) + c2 * abs(nu[1]), max_component)


@dataclass(frozen=True)
class ConvexityViolation:
    a: tuple[float, float]
    b: tuple[float, float]
    c: tuple[float, float]
    defect: float


def full_circle(profile: SurfaceTensionProfile) -> tuple[np.ndarray, np.ndarray]:
    """Directions and values mirrored by evenness, sorted by angle."""
    nus = profile.directions()
    vals = profile.values()
    nus = np.vstack([nus, -nus])
    vals = np.concatenate([vals, vals])
    order = np.argsort(np.arctan2(nus[:, 1], nus[:, 0]), kind="stable")
    return nus[order], vals[order]


def convexity_report(profile: SurfaceTensionProfile, tol: float = 1e-12) -> list[ConvexityViolation]:
    """Defects ``phi(b) - lam phi(a) - mu phi(c)`` on consecutive triples, where ``b = lam a + mu c``."""
    nus, vals = full_circle(profile)
    n = len(nus)
    out = []
    for i in range(n):
        a, b, c = nus[i - 1], nus[i], nus[(i + 1) % n]
        det = a[0] * c[1] - a[1] * c[0]
        if det <= 0:
            continue  # a and c span at least a half-turn
        lam = (b[0] * c[1] - b[1] * c[0]) / det
        mu = (a[0] * b[1] - a[1] * b[0]) / det
        defect = vals[i] - lam * vals[i - 1] - mu * vals[(i + 1) % n]
        if defect > tol * max(1.0, abs(vals[i])):
            out.append(ConvexityViolation(tuple(a), tuple(b), tuple(c), float(defect)))
    return out
