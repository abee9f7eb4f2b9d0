"""Projection and averaging bounds, and the optimal-bounds membership test."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .lattice import BondField, FieldError, volume_fractions


@dataclass(frozen=True)
class BoundPair:
    """Comparison function ``c1 |x1| + c2 |x2|``."""

    c1: float
    c2: float
    kind: Literal["projection", "averaging", "mixture", "witness"] = "witness"

    def __post_init__(self):
        if not (math.isfinite(self.c1) and math.isfinite(self.c2)) or self.c1 < 0 or self.c2 < 0:
            raise ValueError(f"bound coefficients must be finite and >= 0, got ({self.c1}, {self.c2})")

    def evaluate(self, x) -> float:
        return self.c1 * abs(x[0]) + self.c2 * abs(x[1])

    def as_tuple(self) -> tuple[float, float]:
        return (self.c1, self.c2)


def projection_bounds(field: BondField) -> BoundPair:
    """Row-minimum and column-minimum means (a lower bound on the surface tension)."""
    c1 = float(field.horizontal.min(axis=1).mean())
    c2 = float(field.vertical.min(axis=0).mean())
    return BoundPair(c1, c2, "projection")


def averaging_bounds(field: BondField) -> BoundPair:
    """Mean horizontal and mean vertical weight (an upper bound)."""
    return BoundPair(float(field.horizontal.mean()), float(field.vertical.mean()), "averaging")


def mixture_upper_bound(field: BondField) -> BoundPair:
    if not field.is_mixture:
        raise FieldError("mixture bound needs a mixture-tagged field")
    vf = volume_fractions(field)
    a, b = field.alpha, field.beta
    th, tv = float(vf.theta_h), float(vf.theta_v)
    return BoundPair(th * b + (1 - th) * a, tv * b + (1 - tv) * a, "mixture")


def mixture_mean(theta: float, alpha: float, beta: float) -> float:
    return theta * beta + (1 - theta) * alpha


@dataclass(frozen=True)
class MembershipVerdict:
    member: bool
    witness: BoundPair | None
    violation_nu: tuple[float, float] | None
    violation_amount: float | None
    theta: float
    alpha: float
    beta: float
    tol: float

    def to_document(self) -> dict:
        doc = {"member": self.member}
        if self.witness is not None:
            doc["witness"] = [self.witness.c1, self.witness.c2]
        if self.violation_nu is not None:
            doc["violation"] = {"nu": list(self.violation_nu), "amount": self.violation_amount}
        doc.update(theta=self.theta, alpha=self.alpha, beta=self.beta, tol=self.tol)
        return doc


def _has_axes(nus: np.ndarray) -> bool:
    def present(target):
        return bool(np.any(np.all(np.abs(np.abs(nus) - target) < 1e-12, axis=1)))

    return present((1.0, 0.0)) and present((0.0, 1.0))


def theorem_membership(profile, alpha: float, beta: float, theta: float, tol: float = 1e-9) -> MembershipVerdict:
    """Decide whether sampled ``phi`` lies in the optimal-bounds set at ``theta``.

    With ``m = theta beta + (1 - theta) alpha`` the candidates are
    ``c1 = m + s``, ``c2 = m - s`` with ``|s| <= beta - m``. Each sample
    ``phi(nu) <= c1 |nu1| + c2 |nu2| + tol`` is a half-line in ``s``; the
    lower bound ``phi >= alpha (|nu1| + |nu2|) - tol`` is checked separately.
    On failure the reported violation is the sample that is worst off under
    the best possible ``s``.
    """
    nus = np.asarray(profile.directions(), dtype=float)
    vals = np.asarray(profile.values(), dtype=float)
    if not _has_axes(nus):
        raise ValueError("profile must contain both axis directions")
    m = mixture_mean(theta, alpha, beta)
    smax = max(beta - m, 0.0)
    a1, a2 = np.abs(nus[:, 0]), np.abs(nus[:, 1])
    l1 = a1 + a2

    lower_excess = alpha * l1 - tol - vals
    # upper violation of sample i at s: vals - tol - m l1 - s (a1 - a2)
    base = vals - tol - m * l1
    slope = -(a1 - a2)

    def upper_excess(s):
        return base + slope * s

    # the max of lines is convex in s; its minimum over [-smax, smax] sits at
    # an endpoint or at a crossing of two lines
    cands = [-smax, smax]
    n = len(base)
    for i in range(n):
        ds = slope[i] - slope[i + 1 :]
        ok = ds != 0
        s = (base[i + 1 :][ok] - base[i]) / ds[ok]
        cands.extend(s[(s > -smax) & (s < smax)].tolist())
    cands = np.unique(np.array(cands))
    worst = np.array([upper_excess(s).max() for s in cands])
    best_idx = int(np.argmin(worst))
    s_best = float(cands[best_idx])

    lo, hi = -smax, smax
    for b_i, k_i in zip(base, slope):
        # need b_i + k_i s <= 0
        if k_i > 0:
            hi = min(hi, -b_i / k_i)
        elif k_i < 0:
            lo = max(lo, -b_i / k_i)
        elif b_i > 0:
            lo, hi = 1.0, 0.0
    upper_ok = lo <= hi
    lower_ok = bool(np.all(lower_excess <= 0))

    if upper_ok and lower_ok:
        s = 0.5 * (lo + hi)
        return MembershipVerdict(True, BoundPair(m + s, m - s, "witness"), None, None, theta, alpha, beta, tol)

    excess = np.maximum(lower_excess, upper_excess(s_best))
    i = int(np.argmax(excess))
    return MembershipVerdict(False, None, tuple(map(float, nus[i])), float(excess[i]), theta, alpha, beta, tol)
