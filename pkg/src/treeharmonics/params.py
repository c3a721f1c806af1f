"""Branching parameters and the spectral geometry they induce.

A homogeneous tree of degree ``q`` is the infinite tree in which every
vertex has exactly ``q + 1`` neighbours.  All spectral quantities of the
tree are periodic in the frequency variable with period ``2*pi/log(q)``,
so the natural frequency domain is a torus of that circumference.  This
module holds the parameter object shared by every other module, plus the
small exponent arithmetic (dual exponents, strip half-widths) that the
multiplier machinery uses throughout.
"""

import math
from dataclasses import dataclass

import numpy as np

#: Evaluating the meromorphic density ``c`` closer than this to one of its
#: real poles is refused; callers get the distance in the error message.
POLE_GUARD = 1e-8

#: Within this distance of the exceptional frequency lattice the spherical
#: function switches to its degenerate (polynomial-times-power) form.
LATTICE_SWITCH = 1e-6


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ScopeError(ValueError):
    """The request is outside the certified scope (for example ``p == 2``)."""


@dataclass(frozen=True)
class TreeParams:
    """Degree parameter of a homogeneous tree.

    Parameters
    ----------
    q : int
        Branching number; every vertex has ``q + 1`` neighbours.  Must be
        an integer ``>= 2``.
    """

    q: int

    def __post_init__(self):
        if not isinstance(self.q, (int, np.integer)) or isinstance(self.q, bool):
            raise DomainError(f"branching number must be an integer, got {self.q!r}")
        if self.q < 2:
            raise DomainError(f"branching number must be >= 2, got {self.q}")
        object.__setattr__(self, "q", int(self.q))

    @property
    def log_q(self):
        return math.log(self.q)

    @property
    def period(self):
        """Circumference ``2*pi/log(q)`` of the frequency torus."""
        return 2.0 * math.pi / self.log_q

    @property
    def plancherel_const(self):
        """Normalising constant ``q*log(q) / (4*pi*(q+1))`` of the inversion density."""
        return self.q * self.log_q / (4.0 * math.pi * (self.q + 1.0))

    def qpow(self, w):
        """``q**w`` for real or complex ``w`` (scalar or array)."""
        return np.exp(np.asarray(w) * self.log_q)


def tree_params(q):
    """Coerce ``q`` into a validated :class:`TreeParams`."""
    if isinstance(q, TreeParams):
        return q
    return TreeParams(q)


def check_exponent(p, low=1.0, high=math.inf, name="p"):
    """Validate a Lebesgue exponent ``p`` against a closed range.

    ``math.inf`` is accepted when ``high`` is infinite.  Returns ``p`` as a
    float so downstream arithmetic never sees an integer surprise.
    """
    p = float(p)
    if math.isnan(p) or p < low or p > high:
        raise DomainError(f"{name} must lie in [{low}, {high}], got {p}")
    return p


def dual_exponent(p):
    """Conjugate exponent ``p' = p/(p-1)`` with the usual conventions at 1 and inf."""
    p = check_exponent(p)
    if p == 1.0:
        return math.inf
    if math.isinf(p):
        return 1.0
    return p / (p - 1.0)


def strip_halfwidth(p):
    """Distance ``|1/p - 1/2|`` from ``p`` to 2 on the reciprocal scale.

    This is the half-width of the strip of frequencies on which the
    multiplier machinery for exponent ``p`` lives; it is 1/2 at ``p`` in
    ``{1, inf}`` and 0 at ``p == 2``.
    """
    p = check_exponent(p)
    if math.isinf(p):
        return 0.5
    return abs(1.0 / p - 0.5)


def torus_grid(params, n):
    """Uniform grid of ``n`` frequencies covering ``[-period/2, period/2)``."""
    params = tree_params(params)
    n = check_grid(n)
    tau = params.period
    return -tau / 2.0 + tau * np.arange(n) / n


def check_grid(n):
    """Validate a quadrature size: a power of two, at least 64."""
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
        raise DomainError(f"grid size must be an integer, got {n!r}")
    n = int(n)
    if n < 64 or (n & (n - 1)) != 0:
        raise DomainError(f"grid size must be a power of two >= 64, got {n}")
    return n
