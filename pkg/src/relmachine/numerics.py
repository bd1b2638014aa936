"""Scalar special functions, root finding, and 1-D search used across the package.

All routines are pure functions on floats and safe to call from any thread.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "DomainError",
    "ConvergenceError",
    "Tolerance",
    "DEFAULT_TOLERANCE",
    "log1mexp",
    "log_ratio_one_minus_exp",
    "x_coth_half_x",
    "inverse_x_tanh_x",
    "generalized_tur_rhs",
    "maximize_scalar",
]


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


class ConvergenceError(RuntimeError):
    """Iteration budget exhausted before the requested tolerance was met."""


@dataclass(frozen=True)
class Tolerance:
    """Stopping rule shared by the iterative routines."""

    abs_tol: float = 1e-12
    rel_tol: float = 1e-12
    max_iter: int = 200

    def __post_init__(self):
        if not (self.abs_tol > 0.0 and math.isfinite(self.abs_tol)):
            raise DomainError("abs_tol must be a positive finite number")
        if not (self.rel_tol > 0.0 and math.isfinite(self.rel_tol)):
            raise DomainError("rel_tol must be a positive finite number")
        if self.max_iter < 1:
            raise DomainError("max_iter must be at least 1")

    def width(self, scale: float) -> float:
        return self.abs_tol + self.rel_tol * abs(scale)


DEFAULT_TOLERANCE = Tolerance()

_LN2 = 0.6931471805599453
# |x| below this, x*coth(x/2) uses its even Taylor series; the x^4 term keeps
# the switchover matched far beyond double precision.
_COTH_SERIES_CUTOFF = 1e-4
# log1p argument below this means the ratio is far from 1, so the plain
# difference of logarithms is already cancellation-free.
_LOG1P_CUTOFF = -0.5
# argument of csch^2 beyond which sinh would overflow; 4*exp(-2g) is exact
# to better than 1e-300 relative there.
_CSCH_ASYMPTOTIC = 350.0

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0   # 1/phi
_INVPHI2 = (3.0 - math.sqrt(5.0)) / 2.0  # 1/phi^2


def log1mexp(x: float) -> float:
    """ln(1 - e^{-x}) for x > 0, switching forms at ln 2 to keep full precision."""
    if x <= _LN2:
        return math.log(-math.expm1(-x))
    return math.log1p(-math.exp(-x))


def log_ratio_one_minus_exp(a: float, b: float) -> float:
    """ln((1 - e^{-a}) / (1 - e^{-b})) without catastrophic cancellation.

    Both arguments must be nonzero and carry the same sign, so numerator and
    denominator sit on the same side of zero and the ratio is positive.
    """
    if not (math.isfinite(a) and math.isfinite(b)):
        raise DomainError("arguments must be finite")
    if a == 0.0 or b == 0.0:
        raise DomainError("arguments must be nonzero")
    if (a > 0.0) != (b > 0.0):
        raise DomainError("arguments must have the same sign")
    if a == b:
        return 0.0
    if abs(b - a) < 500.0:
        # single relative-precision expression:
        # ln(num/den) = log1p((num - den)/den), num - den = -e^{-b} expm1(b - a)
        arg = math.exp(-b) * math.expm1(b - a) / math.expm1(-b)
        if math.isfinite(arg) and arg > _LOG1P_CUTOFF:
            return math.log1p(arg)
    # ratio far from 1: difference of stable single-argument logs
    if a > 0.0:
        return log1mexp(a) - log1mexp(b)
    # negative branch: 1 - e^{-x} = -expm1(-x), ln(expm1(-x)) = -x + log1mexp(-x)
    return (b - a) + log1mexp(-a) - log1mexp(-b)


def x_coth_half_x(x: float) -> float:
    """x*coth(x/2): even, minimum value 2 at x = 0 (removable singularity)."""
    if abs(x) < _COTH_SERIES_CUTOFF:
        x2 = x * x
        return 2.0 + x2 / 6.0 - x2 * x2 / 360.0
    return x / math.tanh(0.5 * x)


def _x_tanh_x(x: float) -> float:
    return x * math.tanh(x)


def inverse_x_tanh_x(y: float, tol: Tolerance = DEFAULT_TOLERANCE) -> float:
    """Unique x >= 0 with x*tanh(x) = y, by a bracketed bisection-secant hybrid.

    x*tanh(x) is strictly increasing on x >= 0, grows like x^2 near 0 and like
    x at infinity, so [0, max(sqrt(y), y) + 1] always brackets the root.
    """
    if not (math.isfinite(y) and y >= 0.0):
        raise DomainError("inverse of x*tanh(x) needs y >= 0")
    if y == 0.0:
        return 0.0
    lo = 0.0
    hi = max(math.sqrt(y), y) + 1.0
    flo = -y
    fhi = _x_tanh_x(hi) - y
    for it in range(tol.max_iter):
        if hi - lo <= tol.width(hi):
            return 0.5 * (lo + hi)
        # secant through the bracket endpoints; every third step bisects to
        # guarantee the bracket keeps shrinking
        x = lo + (hi - lo) * (-flo) / (fhi - flo)
        if it % 3 == 2 or not (lo < x < hi):
            x = 0.5 * (lo + hi)
        fx = _x_tanh_x(x) - y
        if fx == 0.0:
            return x
        if fx > 0.0:
            hi, fhi = x, fx
        else:
            lo, flo = x, fx
    raise ConvergenceError(f"inverse_x_tanh_x({y}) did not converge "
                           f"in {tol.max_iter} iterations")


def generalized_tur_rhs(sigma: float, tol: Tolerance = DEFAULT_TOLERANCE) -> float:
    """csch^2(g(sigma/2)) with g the inverse of x*tanh(x); decreasing in sigma.

    Behaves like 2/sigma - 2/3 for small sigma, recovering the plain 2/sigma
    noise bound in the near-equilibrium limit. The inverse is resolved to a
    width relative to the root's own magnitude, so the result keeps ~rel_tol
    relative accuracy even for tiny sigma.
    """
    if not (math.isfinite(sigma) and sigma > 0.0):
        raise DomainError("entropy production must be positive")
    y = 0.5 * sigma
    scale = max(math.sqrt(y), y)  # g is between sqrt(y)-ish and y + 1
    root_tol = Tolerance(abs_tol=max(1e-300, tol.rel_tol * scale),
                         rel_tol=tol.rel_tol, max_iter=tol.max_iter)
    g = inverse_x_tanh_x(y, root_tol)
    if g > _CSCH_ASYMPTOTIC:
        return 4.0 * math.exp(-2.0 * g)
    s = math.sinh(g)
    return 1.0 / (s * s)


def maximize_scalar(f, lo: float, hi: float,
                    tol: Tolerance = DEFAULT_TOLERANCE) -> tuple[float, float]:
    """Golden-section maximization of a unimodal f on [lo, hi].

    Returns (argmax, max). For a non-unimodal f the result is a local maximum.
    """
    if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
        raise DomainError("need lo < hi")
    c = hi - _INVPHI * (hi - lo)
    d = lo + _INVPHI * (hi - lo)
    fc = f(c)
    fd = f(d)
    for _ in range(tol.max_iter):
        if hi - lo <= tol.width(0.5 * (lo + hi)):
            break
        if fc > fd:
            hi, d, fd = d, c, fc
            c = hi - _INVPHI * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + _INVPHI * (hi - lo)
            fd = f(d)
    if fc > fd:
        return c, fc
    return d, fd
