"""Single-source shortest paths on a rectangular 4-connected grid.

Node ``(i, j)`` of an ``H x W`` grid has flat index ``j * W + i``.
``wh[j, i]`` weights the edge ``(i, j)-(i+1, j)`` and ``wv[j, i]`` the edge
``(i, j)-(i, j+1)``. All weights must be positive.

Two interchangeable engines are provided: a compiled binary-heap Dijkstra
(:func:`grid_dijkstra_numba`) and :func:`grid_dijkstra_scipy`, which hands a
CSR matrix to ``scipy.sparse.csgraph``. Both return the minimum over paths of
left-to-right accumulated float sums, so their results agree bitwise.
"""

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra as _csgraph_dijkstra

from ._accel import USE_NUMBA, njit


@njit(cache=True)
def _less(da, va, db, vb):
    return da < db or (da == db and va < vb)


@njit(cache=True)
def _push(hd, hv, size, d, v):
    k = size
    hd[k] = d
    hv[k] = v
    while k > 0:
        parent = (k - 1) >> 1
        if _less(hd[k], hv[k], hd[parent], hv[parent]):
            hd[k], hd[parent] = hd[parent], hd[k]
            hv[k], hv[parent] = hv[parent], hv[k]
            k = parent
        else:
            break
    return size + 1


@njit(cache=True)
def _pop(hd, hv, size):
    size -= 1
    hd[0] = hd[size]
    hv[0] = hv[size]
    k = 0
    while True:
        left = 2 * k + 1
        if left >= size:
            break
        child = left
        right = left + 1
        if right < size and _less(hd[right], hv[right], hd[left], hv[left]):
            child = right
        if _less(hd[child], hv[child], hd[k], hv[k]):
            hd[k], hd[child] = hd[child], hd[k]
            hv[k], hv[child] = hv[child], hv[k]
            k = child
        else:
            break
    return size


@njit(cache=True)
def _grid_dijkstra(wh, wv, src, targets):
    H = wh.shape[0]
    W = wv.shape[1]
    n = H * W
    dist = np.full(n, np.inf)
    done = np.zeros(n, dtype=np.bool_)
    wanted = np.zeros(n, dtype=np.bool_)
    remaining = 0
    for t in targets:
        if not wanted[t]:
            wanted[t] = True
            remaining += 1
    # every node is pushed at most once per incident edge, plus the source
    hd = np.empty(4 * n + 1)
    hv = np.empty(4 * n + 1, dtype=np.int64)
    dist[src] = 0.0
    size = _push(hd, hv, 0, 0.0, src)
    while size > 0 and remaining > 0:
        d = hd[0]
        u = hv[0]
        size = _pop(hd, hv, size)
        if done[u]:
            continue
        done[u] = True
        if wanted[u]:
            remaining -= 1
        i = u % W
        j = u // W
        if i > 0:
            nd = d + wh[j, i - 1]
            if nd < dist[u - 1]:
                dist[u - 1] = nd
                size = _push(hd, hv, size, nd, u - 1)
        if i < W - 1:
            nd = d + wh[j, i]
            if nd < dist[u + 1]:
                dist[u + 1] = nd
                size = _push(hd, hv, size, nd, u + 1)
        if j > 0:
            nd = d + wv[j - 1, i]
            if nd < dist[u - W]:
                dist[u - W] = nd
                size = _push(hd, hv, size, nd, u - W)
        if j < H - 1:
            nd = d + wv[j, i]
            if nd < dist[u + W]:
                dist[u + W] = nd
                size = _push(hd, hv, size, nd, u + W)
    out = np.empty(targets.shape[0])
    for k in range(targets.shape[0]):
        out[k] = dist[targets[k]]
    return out


def _check(wh, wv):
    wh = np.ascontiguousarray(wh, dtype=np.float64)
    wv = np.ascontiguousarray(wv, dtype=np.float64)
    H, W = wh.shape[0], wv.shape[1]
    if wh.shape != (H, W - 1) or wv.shape != (H - 1, W):
        raise ValueError(f"inconsistent edge arrays {wh.shape} and {wv.shape}")
    return wh, wv


def grid_dijkstra_numba(wh, wv, src, targets):
    wh, wv = _check(wh, wv)
    targets = np.asarray(targets, dtype=np.int64)
    return _grid_dijkstra(wh, wv, np.int64(src), targets)


def grid_graph(wh, wv):
    """CSR adjacency (one direction per edge) of the weighted grid."""
    wh, wv = _check(wh, wv)
    H, W = wh.shape[0], wv.shape[1]
    idx = np.arange(H * W).reshape(H, W)
    rows = np.concatenate([idx[:, :-1].ravel(), idx[:-1, :].ravel()])
    cols = np.concatenate([idx[:, 1:].ravel(), idx[1:, :].ravel()])
    data = np.concatenate([wh.ravel(), wv.ravel()])
    return csr_matrix((data, (rows, cols)), shape=(H * W, H * W))


def grid_dijkstra_scipy(wh, wv, src, targets):
    graph = grid_graph(wh, wv)
    dist = _csgraph_dijkstra(graph, directed=False, indices=int(src))
    return dist[np.asarray(targets, dtype=np.int64)]


def grid_dijkstra(wh, wv, src, targets):
    """Distances from ``src`` to each flat index in ``targets``."""
    if USE_NUMBA:
        return grid_dijkstra_numba(wh, wv, src, targets)
    return grid_dijkstra_scipy(wh, wv, src, targets)
