"""Finite balls of a homogeneous tree: geometry, census, convolution.

Vertices of the closed ball of radius ``R`` are indexed breadth-first
from the base vertex, so each sphere occupies a contiguous index block
and the children of every vertex occupy a contiguous block of the next
sphere.  A distinguished doubly infinite geodesic through the base vertex
(the first-child chain upward, the second-child-then-first-children chain
downward) induces horocyclic coordinates: each vertex carries a *merge
height* ``m`` (depth of its deepest ancestor on the upward ray) and a
*height* ``h = 2 m - depth``.  Distance to the base vertex is recovered
as ``depth = 2 m - h``, which is the larger of ``2 m - h`` and ``h``.

Radial convolution is performed through the sphere-sum three-term
recurrence driven by the nearest-neighbour sum, never through explicit
distance matrices; for inputs supported in the ball of radius ``R - D``
(``D`` the kernel radius) the truncation at the ball boundary is exact,
because every missing sphere sum vanishes identically.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .params import DomainError, check_exponent, dual_exponent, tree_params
from .spherical import RadialKernel, sphere_sizes
from .zline import _phase_power, lp_norm


@dataclass(frozen=True)
class TreeBall:
    """Closed ball of radius ``R`` in breadth-first vertex order.

    Arrays (all length ``size`` unless noted):

    - ``parent``: parent index, ``-1`` at the base vertex;
    - ``depth``: hop distance to the base vertex;
    - ``cstart``/``cend``: children of ``i`` are indices ``cstart[i]:cend[i]``;
    - ``merge``: depth of the deepest upward-ray ancestor;
    - ``height``: horocycle index ``2 * merge - depth``;
    - ``level_start``: length ``R + 2``, sphere ``d`` is
      ``level_start[d]:level_start[d + 1]``;
    - ``ray_up``/``ray_down``: indices of the reference geodesic at times
      ``0 .. R`` and ``0 .. -R``.
    """

    params: object
    radius: int
    level_start: np.ndarray
    parent: np.ndarray
    depth: np.ndarray
    cstart: np.ndarray
    cend: np.ndarray
    merge: np.ndarray
    height: np.ndarray
    ray_up: np.ndarray
    ray_down: np.ndarray

    @property
    def size(self):
        return int(self.level_start[-1])

    def sphere_slice(self, d):
        """Index slice of the sphere of radius ``d``."""
        d = int(d)
        if not 0 <= d <= self.radius:
            raise DomainError(f"sphere radius {d} outside ball of radius {self.radius}")
        return slice(int(self.level_start[d]), int(self.level_start[d + 1]))

    def distance(self, i, j):
        """Hop distance between two vertices, by climbing to the common ancestor."""
        i, j = int(i), int(j)
        di, dj = int(self.depth[i]), int(self.depth[j])
        steps = 0
        while di > dj:
            i = int(self.parent[i])
            di -= 1
            steps += 1
        while dj > di:
            j = int(self.parent[j])
            dj -= 1
            steps += 1
        while i != j:
            i = int(self.parent[i])
            j = int(self.parent[j])
            steps += 2
        return steps

    def census(self):
        """Occupied ``(height, depth, merge, count)`` cells, sorted by height then depth.

        Counts every vertex of the ball by its horocyclic cell; complete
        cells agree with the closed-form :func:`census_cells`.
        """
        keys = self.height.astype(np.int64) * (2 * self.radius + 2) + self.merge
        uniq, counts = np.unique(keys, return_counts=True)
        h = uniq // (2 * self.radius + 2)
        m = uniq % (2 * self.radius + 2)
        rows = np.column_stack([h, 2 * m - h, m, counts])
        order = np.lexsort((rows[:, 1], rows[:, 0]))
        return rows[order]

    def adjacency_sum(self, f):
        """Sum of ``f`` over the neighbours of each vertex, within the ball.

        Exact nearest-neighbour sum except at the boundary sphere, whose
        outside children are treated as zero.
        """
        f = np.asarray(f)
        if f.shape != (self.size,):
            raise DomainError(f"expected a vector of length {self.size}, got {f.shape}")
        out = np.zeros(self.size, dtype=complex)
        out[1:] = f[self.parent[1:]]
        cs = np.concatenate([[0.0 + 0.0j], np.cumsum(f.astype(complex))])
        out += cs[self.cend] - cs[self.cstart]
        return out

    def convolve(self, kernel, f):
        """Radial convolution ``(k * f)(x) = sum_y k(dist(x, y)) f(y)`` on the ball.

        Uses the sphere-sum recurrence ``s_1 = A f``,
        ``s_2 = A s_1 - (q + 1) f``, ``s_{d+1} = A s_d - q s_{d-1}``, where
        ``A`` is :meth:`adjacency_sum`.  For ``f`` supported in the ball of
        radius ``radius - D`` the result is exact at every vertex, since
        all truncated contributions vanish.
        """
        if kernel.params.q != self.params.q:
            raise DomainError("kernel and ball live on trees of different degree")
        kernel = kernel.trimmed()
        kv = kernel.values
        f = np.asarray(f, dtype=complex)
        if f.shape != (self.size,):
            raise DomainError(f"expected a vector of length {self.size}, got {f.shape}")
        out = kv[0] * f
        if kernel.radius == 0:
            return out
        q = self.params.q
        s_prev = f
        s_cur = self.adjacency_sum(f)
        out += kv[1] * s_cur
        for d in range(2, kernel.radius + 1):
            back = (q + 1) if d == 2 else q
            s_next = self.adjacency_sum(s_cur) - back * s_prev
            out += kv[d] * s_next
            s_prev, s_cur = s_cur, s_next
        return out


def ball_geometry(q, radius):
    """Build the breadth-first :class:`TreeBall` of the given radius."""
    params = tree_params(q)
    radius = int(radius)
    if radius < 0:
        raise DomainError(f"ball radius must be >= 0, got {radius}")
    q = params.q
    counts = sphere_sizes(params, radius).astype(np.int64)
    level_start = np.concatenate([[0], np.cumsum(counts)])
    n = int(level_start[-1])

    parent = np.full(n, -1, dtype=np.int64)
    depth = np.repeat(np.arange(radius + 1), counts)
    for d in range(1, radius + 1):
        lo, hi = level_start[d], level_start[d + 1]
        if d == 1:
            parent[lo:hi] = 0
        else:
            parent[lo:hi] = level_start[d - 1] + np.arange(hi - lo) // q

    cstart = np.full(n, n, dtype=np.int64)
    cend = np.full(n, n, dtype=np.int64)
    for d in range(0, radius):
        lo, hi = level_start[d], level_start[d + 1]
        nxt = level_start[d + 1]
        width = (q + 1) if d == 0 else q
        cstart[lo:hi] = nxt + np.arange(hi - lo) * width
        cend[lo:hi] = cstart[lo:hi] + width

    merge = np.zeros(n, dtype=np.int64)
    for d in range(1, radius + 1):
        lo, hi = level_start[d], level_start[d + 1]
        merge[lo:hi] = merge[parent[lo:hi]]
        merge[lo] = d  # first child chain: the upward reference ray
    height = 2 * merge - depth

    ray_up = level_start[: radius + 1].copy()
    ray_down = np.zeros(radius + 1, dtype=np.int64)
    if radius >= 1:
        ray_down[1] = level_start[1] + 1  # second child of the base vertex
        for t in range(2, radius + 1):
            ray_down[t] = cstart[ray_down[t - 1]]

    return TreeBall(
        params=params,
        radius=radius,
        level_start=level_start,
        parent=parent,
        depth=depth,
        cstart=cstart,
        cend=cend,
        merge=merge,
        height=height,
        ray_up=ray_up,
        ray_down=ray_down,
    )


# ---------------------------------------------------------------------------
# Census and horocyclic masses
# ---------------------------------------------------------------------------

def census_cells(q, radius):
    """Closed-form census of the ball: rows ``(height, depth, merge, count)``.

    A horocyclic cell is a (height, merge) pair; its depth is
    ``2 * merge - height`` and its vertex count in the full tree is ``1``
    on the reference ray (``merge == height``), ``q^{|height|}`` for the
    cells hanging off the base vertex (``merge == 0 > height``), and
    ``(q - 1) q^{merge - height - 1}`` otherwise.  Exactly the cells with
    depth <= radius appear, each complete.
    """
    params = tree_params(q)
    q = params.q
    radius = int(radius)
    rows = []
    for m in range(0, radius + 1):
        j_lo = 2 * m - radius
        for j in range(j_lo, m + 1):
            d = 2 * m - j
            if m == j:
                count = 1
            elif m == 0:
                count = q ** (-j)
            else:
                count = (q - 1) * q ** (m - j - 1)
            rows.append((j, d, m, count))
    rows.sort(key=lambda r: (r[0], r[1]))
    return np.array(rows, dtype=np.int64)


def shell_masses(q, mmax):
    """Horocyclic shell masses ``mu_0 = 1`` and ``mu_m = q^m - q^{m-1}``.

    ``mu_m`` is the mass a single horocycle assigns to its merge-``m``
    slice; the masses telescope, ``sum_{m <= j} mu_m = q^j``.
    """
    params = tree_params(q)
    q = params.q
    mmax = int(mmax)
    mu = np.empty(mmax + 1)
    mu[0] = 1.0
    if mmax >= 1:
        powers = float(q) ** np.arange(0, mmax)
        mu[1:] = (q - 1) * powers
    return mu


def haar_residual(ball, values):
    """Exact defect of the horocyclic mass decomposition for rational data.

    Computes ``sum_x f(x) - sum_cells q^{-h} mass(h, m) avg_cell(f)`` in
    exact :class:`fractions.Fraction` arithmetic, where ``mass(h, m)`` is
    ``q^h`` on the reference ray and the shell mass ``mu_m`` otherwise.
    Every cell of a ball is complete, so the result is exactly 0; the
    function exists to let that be *checked* rather than assumed.
    """
    q = ball.params.q
    vals = [Fraction(v) for v in values]
    if len(vals) != ball.size:
        raise DomainError(f"expected {ball.size} values, got {len(vals)}")
    total = sum(vals, Fraction(0))

    cells = {}
    for i in range(ball.size):
        key = (int(ball.height[i]), int(ball.merge[i]))
        acc = cells.get(key)
        if acc is None:
            cells[key] = [vals[i], 1]
        else:
            acc[0] += vals[i]
            acc[1] += 1

    recon = Fraction(0)
    for (h, m), (cell_sum, cell_count) in cells.items():
        if m == h:
            mass = Fraction(q) ** h
        elif m == 0:
            mass = Fraction(1)
        else:
            mass = Fraction(q) ** m - Fraction(q) ** (m - 1)
        recon += Fraction(q) ** (-h) * mass * cell_sum / cell_count
    return total - recon


# ---------------------------------------------------------------------------
# Certified operator-norm lower bounds
# ---------------------------------------------------------------------------

_TREE_POWER_ITERATES = 200


def opnorm_lower(ball, kernel, p, seed=0, iters=_TREE_POWER_ITERATES):
    """Best certified lower bound for the ``l^p`` norm of radial convolution.

    Every candidate ``f`` is supported in the ball of radius
    ``radius - D`` (``D`` the kernel radius), where the ball convolution
    is exact, so every ratio ``||k * f||_p / ||f||_p`` is a true lower
    bound for the operator norm on the whole tree.  Candidates: the point
    mass at the base vertex (sharp at ``p = 1``), ball indicators at
    dyadic radii, a phase-matched radial profile concentrated at the base
    vertex (sharp at ``p = inf`` once the window holds the kernel), seeded
    random sign vectors, and the iterates of a duality-map ascent.
    Returns ``(bound, method)``.
    """
    p = check_exponent(p)
    kernel = kernel.trimmed()
    D = kernel.radius
    window = ball.radius - D
    if window < 0:
        raise DomainError(
            f"ball radius {ball.radius} too small for kernel radius {D}: "
            "no support window is left for trial functions"
        )
    nw = int(ball.level_start[window + 1])
    n = ball.size

    best = 0.0
    best_name = "none"

    def consider(fw, name):
        nonlocal best, best_name
        denom = lp_norm(fw, p)
        if denom == 0.0:
            return
        f = np.zeros(n, dtype=complex)
        f[: fw.size] = fw
        ratio = lp_norm(ball.convolve(kernel, f), p) / denom
        if ratio > best:
            best = ratio
            best_name = name

    consider(np.ones(1, dtype=complex), "delta")
    r = 1
    radii = []
    while r < window:
        radii.append(r)
        r *= 2
    if window >= 1:
        radii.append(window)
    for r in radii:
        consider(np.ones(int(ball.level_start[r + 1]), dtype=complex), f"ball[{r}]")

    rmatch = min(D, window)
    prof = np.abs(kernel.values[ball.depth[: int(ball.level_start[rmatch + 1])]])
    phase = np.conj(kernel.values[ball.depth[: int(ball.level_start[rmatch + 1])]])
    nzmask = prof > 0.0
    matched = np.zeros(prof.size, dtype=complex)
    if math.isinf(p):
        matched[nzmask] = phase[nzmask] / prof[nzmask]
    elif p > 1.0:
        matched[nzmask] = (
            phase[nzmask] / prof[nzmask] * prof[nzmask] ** (1.0 / (p - 1.0))
        )
    else:
        matched[nzmask] = phase[nzmask] / prof[nzmask]
    consider(matched, "matched-row")

    rng = np.random.default_rng(seed)
    for rep in range(8):
        consider(rng.integers(0, 2, size=nw) * 2.0 - 1.0, f"sign[#{rep}]")

    if 1.0 < p and not math.isinf(p):
        pd = dual_exponent(p)
        conj_kernel = RadialKernel(kernel.params, np.conj(kernel.values))
        x = np.zeros(n, dtype=complex)
        x[:nw] = 1.0
        x /= lp_norm(x[:nw], p)
        prev = -1.0
        for it in range(iters):
            y = ball.convolve(kernel, x)
            est = lp_norm(y, p)
            if est > best:
                best = est
                best_name = f"power[{it + 1}]"
            if prev >= 0.0 and abs(est - prev) <= 1e-10 * max(est, 1e-300):
                break
            prev = est
            z = ball.convolve(conj_kernel, _phase_power(y, p - 1.0))
            x = np.zeros(n, dtype=complex)
            x[:nw] = _phase_power(z[:nw], pd - 1.0)
            nx = lp_norm(x[:nw], p)
            if nx == 0.0:
                break
            x /= nx
    return best, best_name
