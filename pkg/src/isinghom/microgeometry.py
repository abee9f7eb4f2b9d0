"""Periodic microgeometries that attain prescribed bound pairs.

Both constructions keep dual column 0 and dual row 0 as the cheap corridors:
the dual path up column 0 crosses ``h[:, 0]`` and the one along row 0
crosses ``v[0, :]``. Whenever the row minima of ``h`` equal ``h[:, 0]`` and
the column minima of ``v`` equal ``v[0, :]``, the projection lower bound and
the L-shaped corridor path give the same value, which pins the surface
tension to ``c1 |nu1| + c2 |nu2|``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, asdict
from fractions import Fraction

import numpy as np

from .lattice import BondField, FieldError, new_bond_field, volume_fractions


class ConstructionError(ValueError):
    pass


def laminate(T: int, N1: int, N2: int, alpha: float, beta: float) -> BondField:
    """Rows ``0..N1-1`` of horizontal bonds and columns ``0..N2-1`` of vertical bonds set to beta."""
    if not (0 <= N1 <= T and 0 <= N2 <= T):
        raise ConstructionError(f"need 0 <= N1, N2 <= T, got N1={N1}, N2={N2}, T={T}")
    h = np.full((T, T), float(alpha))
    v = np.full((T, T), float(alpha))
    h[:N1, :] = beta
    v[:, :N2] = beta
    return new_bond_field(T, h, v, alpha, beta)


@dataclass(frozen=True)
class SpecialSpec:
    T: int
    t1: Fraction
    t2: Fraction
    theta1: Fraction
    theta2: Fraction
    seed: int = 0

    def __post_init__(self):
        for name in ("t1", "t2", "theta1", "theta2"):
            object.__setattr__(self, name, Fraction(getattr(self, name)).limit_denominator(10**9))
        T = self.T
        for t, th in ((self.t1, self.theta1), (self.t2, self.theta2)):
            if not 0 <= t < 1:
                raise ConstructionError(f"row fraction {t} outside [0, 1)")
            if (t * T).denominator != 1:
                raise ConstructionError(f"t*T = {t * T} is not an integer")
            if (th * T * T).denominator != 1:
                raise ConstructionError(f"theta*T^2 = {th * T * T} is not an integer")
            # equality is only allowed in the empty case t = theta = 0
            if not (t < th or t == th == 0):
                raise ConstructionError(f"need t < theta, got t={t}, theta={th}")

    @property
    def N1(self) -> int:
        return int(self.t1 * self.T)

    @property
    def N2(self) -> int:
        return int(self.t2 * self.T)

    @property
    def theta(self) -> Fraction:
        return (self.theta1 + self.theta2) / 2


def _fill_rows(T, N, count, alpha, beta, rng) -> np.ndarray:
    """Rows ``< N`` all beta, column 0 alpha elsewhere, ``count`` beta-bonds in total."""
    a = np.full((T, T), float(alpha))
    a[:N, :] = beta
    free_rows, free_cols = np.meshgrid(np.arange(N, T), np.arange(1, T), indexing="ij")
    free = np.column_stack([free_rows.ravel(), free_cols.ravel()])
    extra = count - N * T
    if extra < 0 or extra > len(free):
        raise ConstructionError(
            f"infeasible fill: need {extra} extra beta-bonds, {len(free)} free slots"
        )
    pick = free[rng.choice(len(free), size=extra, replace=False)] if extra else free[:0]
    a[pick[:, 0], pick[:, 1]] = beta
    return a


def prop_special_field(spec: SpecialSpec, alpha: float, beta: float) -> BondField:
    """Field with orientation fractions ``theta1``, ``theta2`` and surface tension
    ``(t1 beta + (1-t1) alpha)|nu1| + (t2 beta + (1-t2) alpha)|nu2|``.

    Horizontal rows ``0..N1-1`` are all beta; every other row carries alpha at
    column 0; the remaining beta-bonds are placed at random (seeded) away from
    column 0. Vertical bonds are the transpose of the same construction with
    ``N2`` and ``theta2``.
    """
    T = spec.T
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    h = _fill_rows(T, spec.N1, int(spec.theta1 * T * T), alpha, beta, rng)
    v = _fill_rows(T, spec.N2, int(spec.theta2 * T * T), alpha, beta, rng).T
    return new_bond_field(T, h, v, alpha, beta)


@dataclass(frozen=True)
class Realization:
    field: BondField
    c1: float
    c2: float
    theta: Fraction
    spec: SpecialSpec
    target: tuple[float, float, float]

    def provenance(self) -> dict:
        s = self.spec
        return {
            "construction": "realize",
            "params": {"c1": self.target[0], "c2": self.target[1], "theta": self.target[2], "T": s.T},
            "achieved": {
                "c1": self.c1,
                "c2": self.c2,
                "theta": str(self.theta),
                "t1": str(s.t1),
                "t2": str(s.t2),
                "theta1": str(s.theta1),
                "theta2": str(s.theta2),
            },
        }


def realize(c1: float, c2: float, theta: float, alpha: float, beta: float, T: int, seed: int = 0) -> Realization:
    """Build a field whose surface tension is ``c1 |nu1| + c2 |nu2|`` up to rounding to ``1/T``.

    ``t_i = (c_i - alpha) / (beta - alpha)`` is rounded down to a multiple of
    ``1/T``; the beta count ``round(2 T^2 theta)`` is split between the two
    orientations as evenly as the constraints ``t_i < theta_i`` and the fill
    capacity allow. If no split exists the larger ``t_i`` is lowered by
    ``1/T`` and the split retried.
    """
    eps = 1e-12 * max(1.0, beta)
    if not (0 < alpha < beta):
        raise ConstructionError("need 0 < alpha < beta")
    if not (alpha - eps <= c1 <= beta + eps and alpha - eps <= c2 <= beta + eps):
        raise ConstructionError(f"need alpha <= c1, c2 <= beta, got ({c1}, {c2})")
    if not 0 <= theta <= 1:
        raise ConstructionError(f"theta outside [0, 1]: {theta}")
    m = theta * beta + (1 - theta) * alpha
    if c1 + c2 > 2 * m + 2 * eps:
        raise ConstructionError(f"c1 + c2 = {c1 + c2} exceeds 2(theta beta + (1-theta) alpha) = {2 * m}")

    total = math.floor(2 * T * T * theta + 0.5)
    N = [min(T - 1, max(0, math.floor((c - alpha) / (beta - alpha) * T + 1e-9))) for c in (c1, c2)]

    def split(N):
        lo, hi = [], []
        for n in N:
            lo.append(n * T + 1 if n > 0 else 0)
            hi.append(T * T - (T - n))
        b_lo = max(lo[0], total - hi[1])
        b_hi = min(hi[0], total - lo[1])
        if b_lo > b_hi:
            return None
        b1 = min(max(total // 2, b_lo), b_hi)
        b2 = total - b1
        # t = theta = 0 is allowed, t = theta > 0 is not
        if (b1 == 0 and N[0] > 0) or (b2 == 0 and N[1] > 0):
            return None
        return b1, b2

    while (res := split(N)) is None:
        if max(N) == 0:
            raise ConstructionError(f"no feasible split of {total} beta-bonds at T={T}")
        i = 0 if N[0] >= N[1] else 1
        N[i] -= 1
    b1, b2 = res
    spec = SpecialSpec(T, Fraction(N[0], T), Fraction(N[1], T), Fraction(b1, T * T), Fraction(b2, T * T), seed)
    field = prop_special_field(spec, alpha, beta)
    achieved = tuple(float(alpha + t * (beta - alpha)) for t in (spec.t1, spec.t2))
    return Realization(field, achieved[0], achieved[1], volume_fractions(field).theta, spec, (c1, c2, theta))


def laminate_provenance(T, N1, N2, alpha, beta) -> dict:
    return {
        "construction": "laminate",
        "params": {"T": T, "N1": N1, "N2": N2, "alpha": alpha, "beta": beta},
        "achieved": {
            "c1": (N1 * beta + (T - N1) * alpha) / T,
            "c2": (N2 * beta + (T - N2) * alpha) / T,
        },
    }


def special_provenance(spec: SpecialSpec, alpha, beta) -> dict:
    return {
        "construction": "special",
        "params": {k: (str(v) if isinstance(v, Fraction) else v) for k, v in asdict(spec).items()},
        "achieved": {
            "c1": float(alpha + spec.t1 * (beta - alpha)),
            "c2": float(alpha + spec.t2 * (beta - alpha)),
            "theta": str(spec.theta),
        },
    }
