"""Hot numeric kernels, with numba-compiled and pure-numpy twins.

Two inner loops dominate the toolkit's runtime: the per-expansion edge-cost
delta of the edit-distance tree search (called once per open-list pop) and
the per-source accumulation of betweenness centrality. Both live here in a
plain-Python form that numba can compile, next to vectorized numpy
fallbacks.

Backend selection happens once at import time: the numba build is used when
numba imports cleanly, unless the ``CGED_NO_NUMBA`` environment variable is
set to anything but ``0`` or empty. Both builds stay importable regardless
of the selection so they can be cross-checked and benchmarked against each
other (see the ``bench-backends`` CLI subcommand).

Array conventions shared with :mod:`cged.ged` and :mod:`cged.centrality`:

* edge-kind matrices are uint8, 0 = no edge, 1 = unlabeled, 2 = numeric;
* edge-value matrices are float64, meaningful only where kind == 2;
* node mappings are int64, with -1 marking a deleted source node.
"""

from __future__ import annotations

import os

import numpy as np

EPS_SLOT = -1  # mapping value for "source node deleted"


def _numba_requested() -> bool:
    flag = os.environ.get("CGED_NO_NUMBA", "").strip()
    return flag in ("", "0")


# ----------------------------------------------------------------------
# edit-search expansion kernel
# ----------------------------------------------------------------------

def _extend_costs_loop(a1u, w1u, adj2, w2, mapping, depth, used, node_dist_u,
                       x_node, y_node, x_edge, y_edge):
    """Cost deltas for placing source node number `depth`.

    a1u / w1u: edge-kind and edge-value rows of the node being placed
    against the already-placed source nodes (indices < depth).
    adj2 / w2: full target-graph matrices. mapping[i] is the target index
    the i-th source node was mapped to, or -1 if it was deleted.

    Returns float64[n2 + 1]: slot v is the cost of mapping onto target v
    (inf when v is already used), the last slot is the cost of deletion.
    """
    n2 = adj2.shape[0]
    out = np.empty(n2 + 1, np.float64)
    dead_edges = 0
    for i in range(depth):
        if a1u[i] > 0:
            dead_edges += 1
    out[n2] = x_node + x_edge * dead_edges
    for v in range(n2):
        if used[v]:
            out[v] = np.inf
            continue
        c = y_node * node_dist_u[v]
        for i in range(depth):
            k1 = a1u[i]
            w = mapping[i]
            k2 = np.uint8(0)
            if w >= 0:
                k2 = adj2[v, w]
            if k1 > 0 and k2 > 0:
                if k1 != k2:
                    d = 1.0
                elif k1 == 2:
                    d = abs(w1u[i] - w2[v, w])
                else:
                    d = 0.0
                c += y_edge * d
            elif k1 > 0 or k2 > 0:
                c += x_edge
        out[v] = c
    return out


def extend_costs_numpy(a1u, w1u, adj2, w2, mapping, depth, used, node_dist_u,
                       x_node, y_node, x_edge, y_edge):
    """Vectorized twin of :func:`_extend_costs_loop`."""
    n2 = adj2.shape[0]
    out = np.empty(n2 + 1, np.float64)
    a1 = a1u[:depth]
    m = mapping[:depth]
    has1 = a1 > 0
    out[n2] = x_node + x_edge * np.count_nonzero(has1)
    live = m >= 0
    ml = m[live]
    a1l = a1[live]
    w1l = w1u[:depth][live]
    has1l = a1l > 0
    dead_del = np.count_nonzero(has1 & ~live)

    k2 = adj2[:, ml]                     # (n2, n_live)
    has2 = k2 > 0
    both = has1l[None, :] & has2
    mismatch = both & (k2 != a1l[None, :])
    numeric = both & (k2 == 2) & (a1l[None, :] == 2)
    dist = np.where(mismatch, 1.0, 0.0)
    if numeric.any():
        dist = np.where(numeric, np.abs(w2[:, ml] - w1l[None, :]), dist)
    sub_cost = y_edge * dist.sum(axis=1)
    indel = np.count_nonzero(has1l[None, :] & ~has2, axis=1) \
        + np.count_nonzero(~has1l[None, :] & has2, axis=1)

    out[:n2] = y_node * node_dist_u + sub_cost + x_edge * (indel + dead_del)
    out[:n2][used] = np.inf
    return out


# ----------------------------------------------------------------------
# betweenness kernel (per-source BFS + dependency accumulation, CSR input)
# ----------------------------------------------------------------------

def _betweenness_loop(indptr, indices, n):
    """Unweighted betweenness counts over a CSR adjacency.

    Endpoints are excluded; the returned scores count each unordered pair
    once (the ordered-pair accumulation is halved at the end).
    """
    bc = np.zeros(n, np.float64)
    dist = np.empty(n, np.int64)
    sigma = np.empty(n, np.float64)
    delta = np.empty(n, np.float64)
    queue = np.empty(n, np.int64)
    for s in range(n):
        for i in range(n):
            dist[i] = -1
            sigma[i] = 0.0
            delta[i] = 0.0
        dist[s] = 0
        sigma[s] = 1.0
        queue[0] = s
        head = 0
        tail = 1
        while head < tail:
            v = queue[head]
            head += 1
            dv1 = dist[v] + 1
            for j in range(indptr[v], indptr[v + 1]):
                w = indices[j]
                if dist[w] < 0:
                    dist[w] = dv1
                    queue[tail] = w
                    tail += 1
                if dist[w] == dv1:
                    sigma[w] += sigma[v]
        # queue holds BFS order; walk it backwards for the accumulation
        for i in range(tail - 1, -1, -1):
            w = queue[i]
            coeff = (1.0 + delta[w]) / sigma[w]
            dw1 = dist[w] - 1
            for j in range(indptr[w], indptr[w + 1]):
                v = indices[j]
                if dist[v] == dw1:
                    delta[v] += sigma[v] * coeff
            if w != s:
                bc[w] += delta[w]
    return bc * 0.5


betweenness_numpy = _betweenness_loop


# ----------------------------------------------------------------------
# backend selection
# ----------------------------------------------------------------------

extend_costs_numba = None
betweenness_numba = None

if _numba_requested():
    try:
        from numba import njit
    except ImportError:
        pass
    else:
        extend_costs_numba = njit(cache=True)(_extend_costs_loop)
        betweenness_numba = njit(cache=True)(_betweenness_loop)

NUMBA_ENABLED = extend_costs_numba is not None

if NUMBA_ENABLED:
    extend_costs = extend_costs_numba
    betweenness_counts = betweenness_numba
else:
    extend_costs = extend_costs_numpy
    betweenness_counts = betweenness_numpy


def backend_name() -> str:
    return "numba" if NUMBA_ENABLED else "numpy"


_warmed = False


def warm_up() -> None:
    """Run both active kernels once on tiny inputs.

    The compiled backend is built (or loaded from the on-disk cache) on
    first call; timed code paths call this first so compilation is never
    charged to a measured run. Idempotent per process.
    """
    global _warmed
    if _warmed:
        return
    extend_costs(
        np.zeros(1, np.uint8), np.zeros(1, np.float64),
        np.zeros((1, 1), np.uint8), np.zeros((1, 1), np.float64),
        np.zeros(0, np.int64), 0, np.zeros(1, bool), np.zeros(1, np.float64),
        1.0, 1.0, 1.0, 1.0,
    )
    betweenness_counts(np.zeros(2, np.int64), np.zeros(0, np.int64), 1)
    _warmed = True
