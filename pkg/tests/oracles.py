"""Independent reference implementations used to cross-check the package.

Everything here is deliberately naive: explicit adjacency lists, per-source
breadth-first searches, dense O(n^2) convolution, high-precision mpmath
evaluations, and exact Fraction cell sums.  None of it shares code paths
with the package, so agreement is evidence rather than tautology.
"""

import math
from fractions import Fraction

import mpmath as mp
import numpy as np


# ---------------------------------------------------------------------------
# Tree geometry by explicit adjacency lists
# ---------------------------------------------------------------------------

def adjacency_ball(q, radius):
    """Neighbour lists of the ball of the given radius, grown one sphere at a time.

    Vertices are appended sphere by sphere, children in parent order, which
    reproduces the breadth-first indexing used by the package without
    sharing any of its array bookkeeping.  Returns ``(neighbors, parent,
    depth)`` as plain Python lists.
    """
    neighbors = [[]]
    parent = [-1]
    depth = [0]
    frontier = [0]
    for d in range(1, radius + 1):
        nxt = []
        for v in frontier:
            width = (q + 1) if d == 1 else q
            for _ in range(width):
                i = len(parent)
                parent.append(v)
                depth.append(d)
                neighbors.append([v])
                neighbors[v].append(i)
                nxt.append(i)
        frontier = nxt
    return neighbors, parent, depth


def bfs_distances(neighbors, source):
    """Hop distances from ``source`` to every vertex, by plain breadth-first search."""
    dist = [-1] * len(neighbors)
    dist[source] = 0
    queue = [source]
    while queue:
        nxt = []
        for v in queue:
            for w in neighbors[v]:
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    nxt.append(w)
        queue = nxt
    return dist


def ray_heights(neighbors, parent, depth, radius):
    """Merge depths and heights relative to the first-child reference ray.

    The upward ray is recovered by following, from the base vertex, the
    lowest-index unvisited neighbour at each step; the merge depth of a
    vertex is the depth of its deepest ancestor on that ray, found by
    climbing parents.  Returns ``(merge, height)`` lists.
    """
    ray = [0]
    v = 0
    for _ in range(radius):
        v = min(w for w in neighbors[v] if depth[w] == depth[v] + 1)
        ray.append(v)
    on_ray = set(ray)
    merge = []
    for i in range(len(parent)):
        v = i
        while v not in on_ray:
            v = parent[v]
        merge.append(depth[v])
    height = [2 * m - d for m, d in zip(merge, depth)]
    return merge, height


def dense_convolve(neighbors, kernel_values, f):
    """O(n^2) radial convolution via per-source breadth-first distances."""
    n = len(neighbors)
    kv = list(kernel_values) + [0.0] * n
    out = np.zeros(n, dtype=complex)
    for x in range(n):
        dist = bfs_distances(neighbors, x)
        out[x] = sum(kv[dist[y]] * f[y] for y in range(n))
    return out


def census_counter(q, radius):
    """Census rows ``(height, depth, merge, count)`` counted vertex by vertex."""
    neighbors, parent, depth = adjacency_ball(q, radius)
    merge, height = ray_heights(neighbors, parent, depth, radius)
    counts = {}
    for i in range(len(parent)):
        key = (height[i], depth[i], merge[i])
        counts[key] = counts.get(key, 0) + 1
    rows = sorted((h, d, m, c) for (h, d, m), c in counts.items())
    return rows


# ---------------------------------------------------------------------------
# Exact horocyclic sums (Fraction arithmetic)
# ---------------------------------------------------------------------------

def fraction_slice_sum(q, kernel_values, j):
    """Exact horocyclic integral of a radial kernel over the height-``j`` set.

    Works cell by cell rather than shell by shell: the ray cell at height
    ``j >= 0`` carries the telescoped mass ``q^j``, the single cell hanging
    below the base vertex (``m = 0``, ``j < 0``) carries mass 1, and every
    intermediate cell at merge depth ``m`` carries ``(q-1) q^{m-1}``.
    Exact Fraction arithmetic throughout.
    """
    D = len(kernel_values) - 1
    total = Fraction(0)
    if 0 <= j <= D:
        total += Fraction(q) ** j * Fraction(kernel_values[j])
    if j < 0 and -j <= D:
        total += Fraction(kernel_values[-j])
    for m in range(max(j, 0) + 1, (D + j) // 2 + 1):
        if m == 0:
            continue
        d = 2 * m - j
        if d <= D:
            total += Fraction(q - 1) * Fraction(q) ** (m - 1) * Fraction(kernel_values[d])
    return total


# ---------------------------------------------------------------------------
# High-precision spectral oracles (mpmath)
# ---------------------------------------------------------------------------

def mp_c_function(q, z, dps=40):
    """c-function evaluated in ``dps``-digit arithmetic straight from its w-form."""
    with mp.workdps(dps):
        w = mp.exp(1j * mp.mpmathify(z) * mp.log(q))
        rq = mp.sqrt(q)
        val = (rq / (q + 1)) * (rq * w - (1 / rq) / w) / (w - 1 / w)
        return complex(val)


def recurrence_spherical(q, z, dmax):
    """Spherical function values ``phi_z(0..dmax)`` from the eigenfunction recurrence.

    Uses only ``phi(0) = 1``, ``phi(1) = gamma(z)`` and the radial
    three-term recurrence ``q phi(d+1) = (q+1) gamma phi(d) - phi(d-1)``
    of the nearest-neighbour averaging operator; no c-function expansion.
    """
    with mp.workdps(50):
        zz = mp.mpmathify(z)
        w = mp.exp(1j * zz * mp.log(q))
        gamma = (mp.sqrt(q) / (q + 1)) * (w + 1 / w)
        phi = [mp.mpc(1), gamma]
        for d in range(1, dmax):
            phi.append(((q + 1) * gamma * phi[d] - phi[d - 1]) / q)
        return [complex(v) for v in phi[: dmax + 1]]


def mp_moment(q, p, ell, dps=40):
    """Horocyclic moment sum evaluated term by term in high precision."""
    with mp.workdps(dps):
        x = mp.power(q, 1 - mp.mpf(2) / p)
        total = mp.mpf(0) if ell > 0 else mp.mpf(1)
        m = 1
        while True:
            # mu_m q^{-2m/p} = (q-1) q^{m-1} q^{-2m/p} = ((q-1)/q) x^m
            term = (2 * m) ** ell * (q - 1) / q * mp.power(x, m)
            total += term
            if term < mp.mpf(10) ** (-(dps - 5)) * max(total, 1):
                break
            m += 1
            if m > 200000:
                raise RuntimeError("moment oracle failed to converge")
        return float(total)


def grid_line_sup(q, v, n=1 << 14):
    """Dense-grid maximum of the reciprocal c-function on the line ``Im z = -v``."""
    log_q = math.log(q)
    tau = 2.0 * math.pi / log_q
    s = -tau / 2.0 + tau * np.arange(n) / n
    z = -s - 1j * v
    rq = math.sqrt(q)
    w = np.exp(1j * z * log_q)
    vals = ((q + 1) / rq) * (w - 1.0 / w) / (rq * w - (1.0 / rq) / w)
    return float(np.max(np.abs(vals)))
