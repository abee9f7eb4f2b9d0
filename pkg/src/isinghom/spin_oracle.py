"""Spin-configuration oracle for interface energies.

Energies use the normalized convention ``(1/8) sum_{ordered pairs} c (u_i - u_j)^2``:
each unordered bond joining opposite spins contributes ``2 * 4 * c / 8 = c``.

A framed window has ``width x height`` free interior sites surrounded by a
one-site frame whose spins follow a half-plane trace. Bonds between two frame
sites never change and are left out of the energy.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra

from .lattice import BondField

MAX_EXHAUSTIVE_SITES = 16


@dataclass(frozen=True, eq=False)
class SpinWindow:
    """Spins on a rectangle of sites; ``values[r, c]`` sits at ``(x0 + c, y0 + r)``."""

    values: np.ndarray
    x0: int = 0
    y0: int = 0
    nu: tuple[float, float] | None = None
    offset: float = 0.0

    @property
    def framed(self) -> bool:
        return self.nu is not None

    @property
    def width(self) -> int:
        return self.values.shape[1] - (2 if self.framed else 0)

    @property
    def height(self) -> int:
        return self.values.shape[0] - (2 if self.framed else 0)

    @classmethod
    def half_plane(cls, width, height, nu, offset, x0=0, y0=0, fill=None) -> "SpinWindow":
        """Interior sites ``x0..x0+width-1`` by ``y0..y0+height-1``; the frame carries
        ``u = +1`` where ``<x, nu> > offset`` and ``-1`` elsewhere. The interior
        takes the same trace unless ``fill`` is given."""
        xs = np.arange(x0 - 1, x0 + width + 1)
        ys = np.arange(y0 - 1, y0 + height + 1)
        X, Y = np.meshgrid(xs, ys)
        trace = np.where(X * nu[0] + Y * nu[1] > offset, 1, -1).astype(np.int8)
        if fill is not None:
            trace[1:-1, 1:-1] = np.asarray(fill, dtype=np.int8).reshape(height, width)
        return cls(trace, x0 - 1, y0 - 1, (float(nu[0]), float(nu[1])), float(offset))

    def with_interior(self, interior) -> "SpinWindow":
        vals = self.values.copy()
        vals[1:-1, 1:-1] = np.asarray(interior, dtype=np.int8).reshape(self.height, self.width)
        return SpinWindow(vals, self.x0, self.y0, self.nu, self.offset)


def _bond_weights(field: BondField, win: SpinWindow):
    T = field.period
    rows, cols = win.values.shape
    ys = (win.y0 + np.arange(rows)) % T
    xs = (win.x0 + np.arange(cols)) % T
    wh = field.horizontal[np.ix_(ys, xs[:-1])]  # (x, y)-(x+1, y)
    wv = field.vertical[np.ix_(ys[:-1], xs)]  # (x, y)-(x, y+1)
    if win.framed:
        wh = wh.copy()
        wv = wv.copy()
        wh[0, :] = 0.0
        wh[-1, :] = 0.0
        wv[:, 0] = 0.0
        wv[:, -1] = 0.0
    return wh, wv


def spin_energy(field: BondField, window: SpinWindow) -> float:
    u = window.values.astype(np.float64)
    wh, wv = _bond_weights(field, window)
    unordered = (wh * (u[:, :-1] - u[:, 1:]) ** 2).sum() + (wv * (u[:-1, :] - u[1:, :]) ** 2).sum()
    return float(0.125 * (2.0 * unordered))


def exhaustive_min(field: BondField, window: SpinWindow) -> float:
    """Minimum energy over every assignment of the interior sites."""
    n = window.width * window.height
    if n > MAX_EXHAUSTIVE_SITES:
        raise ValueError(f"{n} free sites is too many for enumeration (limit {MAX_EXHAUSTIVE_SITES})")
    wh, wv = _bond_weights(field, window)
    bits = np.array(list(itertools.product((-1, 1), repeat=n)), dtype=np.float64)
    u = np.broadcast_to(window.values.astype(np.float64), (len(bits),) + window.values.shape).copy()
    u[:, 1:-1, 1:-1] = bits.reshape(len(bits), window.height, window.width)
    cut_h = (u[:, :, :-1] != u[:, :, 1:]) * wh
    cut_v = (u[:, :-1, :] != u[:, 1:, :]) * wv
    energies = cut_h.sum(axis=(1, 2)) + cut_v.sum(axis=(1, 2))
    return float(energies.min())


def _plaquette_terminals(window: SpinWindow) -> list[tuple[int, int]]:
    """Plaquettes next to frame bonds whose end spins differ."""
    u = window.values
    rows, cols = u.shape
    out = []
    for c in range(cols - 1):
        if u[0, c] != u[0, c + 1]:
            out.append((c, 0))
        if u[-1, c] != u[-1, c + 1]:
            out.append((c, rows - 2))
    for r in range(rows - 1):
        if u[r, 0] != u[r + 1, 0]:
            out.append((0, r))
        if u[r, -1] != u[r + 1, -1]:
            out.append((cols - 2, r))
    return out


def dual_path_min(field: BondField, window: SpinWindow) -> float:
    """Interface energy as a shortest path between the two boundary plaquettes.

    Plaquette ``(p, q)`` has lower-left site ``values[q, p]``; neighbouring
    plaquettes share one bond with at least one interior endpoint.
    """
    terminals = _plaquette_terminals(window)
    if not terminals:
        return 0.0
    if len(terminals) != 2:
        raise ValueError(f"boundary trace changes sign {len(terminals)} times; expected 0 or 2")
    wh, wv = _bond_weights(field, window)
    rows, cols = window.values.shape
    P, Q = cols - 1, rows - 1
    idx = np.arange(P * Q).reshape(Q, P)
    # plaquettes (p, q)-(p+1, q) share the vertical bond at column p+1
    w_right = wv[:, 1:-1]
    # plaquettes (p, q)-(p, q+1) share the horizontal bond at row q+1
    w_up = wh[1:-1, :]
    r = np.concatenate([idx[:, :-1].ravel(), idx[:-1, :].ravel()])
    c = np.concatenate([idx[:, 1:].ravel(), idx[1:, :].ravel()])
    w = np.concatenate([w_right.ravel(), w_up.ravel()])
    graph = csr_matrix((w, (r, c)), shape=(P * Q, P * Q))
    (p0, q0), (p1, q1) = terminals
    dist = dijkstra(graph, directed=False, indices=int(idx[q0, p0]))
    return float(dist[idx[q1, p1]])


def min_interface_energy(field: BondField, window: SpinWindow, method: str = "auto") -> float:
    """Minimal energy over interior spins with the window's frame trace."""
    if not window.framed:
        raise ValueError("window needs a half-plane frame")
    if method == "exhaustive" or (method == "auto" and window.width * window.height <= MAX_EXHAUSTIVE_SITES):
        return exhaustive_min(field, window)
    if method in ("auto", "dual"):
        return dual_path_min(field, window)
    raise ValueError(f"unknown method {method!r}")


def odd_plaquettes(field: BondField, window: SpinWindow) -> list[tuple[int, int]]:
    """Plaquettes met by an odd number of cut non-frame bonds."""
    u = window.values
    wh, wv = _bond_weights(field, window)
    cut_h = (u[:, :-1] != u[:, 1:]) & (wh > 0)
    cut_v = (u[:-1, :] != u[1:, :]) & (wv > 0)
    # plaquette (p, q) is bounded by h rows q, q+1 at column p and v columns p, p+1 at row q
    deg = (
        cut_h[:-1, :].astype(int) + cut_h[1:, :] + cut_v[:, :-1] + cut_v[:, 1:]
    )
    qs, ps = np.nonzero(deg % 2)
    return sorted(zip(ps.tolist(), qs.tolist()))


def oracle_report(field: BondField, window: SpinWindow, exhaustive: bool | None = None) -> dict:
    if exhaustive is None:
        exhaustive = window.width * window.height <= MAX_EXHAUSTIVE_SITES
    dual = dual_path_min(field, window)
    doc = {"nu": list(window.nu), "window": [window.width, window.height]}
    agree = True
    if exhaustive:
        ex = exhaustive_min(field, window)
        doc["exhaustive"] = ex
        agree = ex == dual
    doc["dual_path"] = dual
    doc["agree"] = agree
    return doc
