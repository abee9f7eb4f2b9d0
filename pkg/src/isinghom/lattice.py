"""Periodic bond fields on the square lattice.

A bond field stores one period cell of nearest-neighbour weights.
``horizontal[y, x]`` is the weight of the bond between sites ``(x, y)`` and
``(x + 1, y)``; ``vertical[y, x]`` is the weight of the bond between ``(x, y)``
and ``(x, y + 1)``. Every integer coordinate is reduced modulo the period.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np


class FieldError(ValueError):
    """Raised for invalid bond fields or malformed field documents."""


@dataclass(frozen=True, eq=False)
class BondField:
    period: int
    horizontal: np.ndarray
    vertical: np.ndarray
    alpha: float | None = None
    beta: float | None = None

    @property
    def T(self) -> int:
        return self.period

    @property
    def is_mixture(self) -> bool:
        return self.alpha is not None and self.beta is not None

    @property
    def min_weight(self) -> float:
        return float(min(self.horizontal.min(), self.vertical.min()))

    @property
    def max_weight(self) -> float:
        return float(max(self.horizontal.max(), self.vertical.max()))

    def h(self, x: int, y: int) -> float:
        """Weight of the bond (x, y)-(x+1, y)."""
        T = self.period
        return float(self.horizontal[y % T, x % T])

    def v(self, x: int, y: int) -> float:
        """Weight of the bond (x, y)-(x, y+1)."""
        T = self.period
        return float(self.vertical[y % T, x % T])

    def __eq__(self, other):
        if not isinstance(other, BondField):
            return NotImplemented
        return (
            self.period == other.period
            and self.alpha == other.alpha
            and self.beta == other.beta
            and np.array_equal(self.horizontal, other.horizontal)
            and np.array_equal(self.vertical, other.vertical)
        )

    __hash__ = None


@dataclass(frozen=True)
class VolumeFractions:
    theta: Fraction
    theta_h: Fraction
    theta_v: Fraction
    count_h: int
    count_v: int


def new_bond_field(T, horizontal, vertical, alpha=None, beta=None) -> BondField:
    """Validate weights and build a :class:`BondField`.

    Passing both ``alpha`` and ``beta`` tags the field as a two-phase mixture;
    every weight must then equal one of them exactly.
    """
    if not isinstance(T, (int, np.integer)) or isinstance(T, bool) or T < 1:
        raise FieldError(f"period must be a positive integer, got {T!r}")
    T = int(T)
    h = np.array(horizontal, dtype=np.float64)
    v = np.array(vertical, dtype=np.float64)
    if h.shape != (T, T) or v.shape != (T, T):
        raise FieldError(f"shape mismatch: expected ({T}, {T}), got {h.shape} and {v.shape}")
    if not (np.all(np.isfinite(h)) and np.all(np.isfinite(v))):
        raise FieldError("non-finite weight")
    if (h <= 0).any() or (v <= 0).any():
        raise FieldError("non-positive weight")
    if (alpha is None) != (beta is None):
        raise FieldError("alpha and beta must be given together")
    if alpha is not None:
        alpha, beta = float(alpha), float(beta)
        if not 0 < alpha < beta:
            raise FieldError(f"need 0 < alpha < beta, got alpha={alpha}, beta={beta}")
        for arr in (h, v):
            if not np.all((arr == alpha) | (arr == beta)):
                raise FieldError("weight outside {alpha, beta} in mixture-tagged field")
    h.setflags(write=False)
    v.setflags(write=False)
    return BondField(T, h, v, alpha, beta)


def homogeneous(T: int, weight: float, beta: float | None = None) -> BondField:
    """Constant field; tagged as a mixture when ``beta`` is given."""
    full = np.full((T, T), float(weight))
    if beta is None:
        return new_bond_field(T, full, full)
    return new_bond_field(T, full, full, alpha=weight, beta=beta)


def volume_fractions(field: BondField) -> VolumeFractions:
    if not field.is_mixture:
        raise FieldError("volume fractions need a mixture-tagged field")
    T2 = field.period**2
    nh = int(np.count_nonzero(field.horizontal == field.beta))
    nv = int(np.count_nonzero(field.vertical == field.beta))
    theta_h = Fraction(nh, T2)
    theta_v = Fraction(nv, T2)
    return VolumeFractions((theta_h + theta_v) / 2, theta_h, theta_v, nh, nv)


def random_mixture(T: int, theta: float, seed: int = 0, alpha: float = 1.0, beta: float = 2.0) -> BondField:
    """Place ``round(2 T^2 theta)`` beta-bonds uniformly without replacement.

    Uses numpy's PCG64 generator seeded with ``seed``.
    """
    if not 0.0 <= theta <= 1.0:
        raise FieldError(f"theta must lie in [0, 1], got {theta}")
    n = 2 * T * T
    count = math.floor(n * theta + 0.5)
    rng = np.random.Generator(np.random.PCG64(seed))
    flat = np.full(n, float(alpha))
    flat[rng.choice(n, size=count, replace=False)] = beta
    return new_bond_field(T, flat[: T * T].reshape(T, T), flat[T * T :].reshape(T, T), alpha, beta)


def transpose(field: BondField) -> BondField:
    """Reflect across the diagonal x <-> y."""
    return new_bond_field(field.period, field.vertical.T, field.horizontal.T, field.alpha, field.beta)


def scale(field: BondField, lam: float) -> BondField:
    if not lam > 0:
        raise FieldError(f"scale factor must be positive, got {lam}")
    alpha = None if field.alpha is None else field.alpha * lam
    beta = None if field.beta is None else field.beta * lam
    return new_bond_field(field.period, field.horizontal * lam, field.vertical * lam, alpha, beta)


def to_document(field: BondField, provenance: dict | None = None) -> dict:
    doc = {"T": field.period}
    if field.is_mixture:
        doc["alpha"] = field.alpha
        doc["beta"] = field.beta
    doc["horizontal"] = field.horizontal.tolist()
    doc["vertical"] = field.vertical.tolist()
    if provenance is not None:
        doc["provenance"] = provenance
    return doc


def from_document(doc) -> BondField:
    if not isinstance(doc, dict):
        raise FieldError("field document must be a JSON object")
    try:
        T = doc["T"]
        h, v = doc["horizontal"], doc["vertical"]
    except KeyError as exc:
        raise FieldError(f"missing key {exc.args[0]!r}") from None
    try:
        return new_bond_field(T, h, v, doc.get("alpha"), doc.get("beta"))
    except (TypeError, ValueError) as exc:
        if isinstance(exc, FieldError):
            raise
        raise FieldError(f"malformed field document: {exc}") from None


def serialize(field: BondField, provenance: dict | None = None) -> str:
    return json.dumps(to_document(field, provenance))


def parse(text: str) -> BondField:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FieldError(f"malformed document: {exc}") from None
    return from_document(doc)


def field_hash(field: BondField) -> str:
    return hashlib.sha256(serialize(field).encode()).hexdigest()
