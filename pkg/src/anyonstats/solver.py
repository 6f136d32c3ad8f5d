"""Direct solution of the occupation equation

    exp(t) = sin((n+1) x)**2 / (n (n+1) sin(x)**2),   x = pi alpha / 2,

for the mean occupation ``n`` at reduced energy ``t = beta (E - mu)``.

The smallest positive root is returned.  It lies below the first zero of the
right-hand side, ``n = 2/alpha - 1``, and is the branch that joins the
Bose-Einstein solution continuously as ``alpha -> 0``.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass

from scipy.optimize import brentq

from .basic_numbers import as_statistics, sinpi, sinpi_product
from .errors import BracketError, ConvergenceError, DomainError
from .series import leading_coefficient

__all__ = [
    "DEFAULT_TOL",
    "MAX_ITER",
    "ThermoPoint",
    "SolveResult",
    "rhs",
    "log_rhs",
    "branch_cap",
    "solve_occupation",
    "bose_distribution",
]

DEFAULT_TOL = 1e-12
MAX_ITER = 200
SCAN_POINTS = 64
_SCAN_FLOOR = 1e-12
_LOG_FLOOR = 1e4


@dataclass(frozen=True)
class ThermoPoint:
    """Reduced energy ``t = beta (E - mu)``."""

    t: float

    def __post_init__(self):
        t = float(self.t)
        if not math.isfinite(t):
            raise DomainError(f"t must be finite, got {self.t!r}")
        object.__setattr__(self, "t", t)

    @classmethod
    def from_energy(cls, beta, energy, mu=0.0):
        if not beta > 0:
            raise DomainError(f"beta must be positive, got {beta!r}")
        return cls(beta * (energy - mu))

    @property
    def boltzmann(self):
        return math.exp(self.t)

    def g(self, stat):
        """Shifted variable ``exp(t) - a_0(alpha)`` of the series solution."""
        return self.boltzmann - leading_coefficient(stat)


@dataclass(frozen=True)
class SolveResult:
    n: float
    residual: float
    bracket: tuple
    iterations: int
    converged: bool = True


def _check_n(n):
    n = float(n)
    if not n > 0.0:
        raise DomainError(f"occupation must be positive, got {n!r}")
    return n


def rhs(n, stat):
    """Right-hand side ``sin((n+1)x)**2 / (n (n+1) sin(x)**2)``.

    ``alpha = 0`` uses the limit ``(n+1)/n``.
    """
    n = _check_n(n)
    stat = as_statistics(stat)
    if stat.is_bose:
        return (n + 1.0) / n
    ratio = sinpi_product(n + 1.0, stat.alpha / 2.0) / sinpi(stat.alpha / 2.0)
    return ratio * ratio / (n * (n + 1.0))


def log_rhs(n, stat):
    """``log(rhs(n))``; ``-inf`` at zeros of the numerator."""
    n = _check_n(n)
    stat = as_statistics(stat)
    if stat.is_bose:
        return math.log1p(1.0 / n)
    s = abs(sinpi_product(n + 1.0, stat.alpha / 2.0))
    if s == 0.0:
        return -math.inf
    return (
        2.0 * (math.log(s) - math.log(sinpi(stat.alpha / 2.0)))
        - math.log(n)
        - math.log1p(n)
    )


def branch_cap(stat):
    """First zero ``2/alpha - 1`` of the right-hand side; ``inf`` for bosons."""
    stat = as_statistics(stat)
    if stat.is_bose:
        return math.inf
    return 2.0 / stat.alpha - 1.0


def bose_distribution(t):
    """``1 / (exp(t) - 1)``."""
    t = float(t)
    if not t > 0.0:
        raise DomainError(f"Bose-Einstein occupation needs t > 0, got {t!r}")
    return 1.0 / math.expm1(t)


def _polish(phi, n, lo, hi, steps=8):
    """Walk to the nearby float with the smallest ``|phi|``."""
    best, best_res = n, abs(phi(n))
    for direction in (-math.inf, math.inf):
        cand = best
        for _ in range(steps):
            cand = math.nextafter(cand, direction)
            if not lo <= cand <= hi:
                break
            res = abs(phi(cand))
            if res >= best_res:
                break
            best, best_res = cand, res
    return best, best_res


def solve_occupation(point, stat, tol=DEFAULT_TOL, strict=True):
    """Smallest positive root of ``rhs(n) = exp(t)``.

    The root is bracketed by a geometric scan of ``(0, branch_cap)`` and
    refined with Brent's method on ``log rhs(n) - t``.

    Parameters
    ----------
    point : ThermoPoint or float
        Reduced energy ``t``.
    stat : StatisticsParameter or float
    tol : float
        Bound on ``|log rhs(n) - t|``.
    strict : bool
        If false, a root limited by floating-point resolution is returned with
        ``converged=False`` instead of raising.

    Raises
    ------
    BracketError
        No sign change was found (at ``alpha = 0`` this means ``t <= 0``).
    ConvergenceError
        The residual could not be brought below ``tol`` (``strict`` only).
    """
    if not isinstance(point, ThermoPoint):
        point = ThermoPoint(point)
    stat = as_statistics(stat)
    if not tol > 0:
        raise DomainError(f"tol must be positive, got {tol!r}")
    t = point.t

    if stat.is_bose:
        if t <= 0.0:
            raise BracketError(f"no Bose-Einstein occupation for t = {t!r} <= 0")
        n = 1.0 / math.expm1(t)
        res = abs(log_rhs(n, stat) - t)
        return SolveResult(n, res, (n, n), 0, res <= tol)

    cap = branch_cap(stat)

    def phi(n):
        return log_rhs(n, stat) - t

    if t < 0.0:
        lo = _SCAN_FLOOR
    else:
        lo = min(_SCAN_FLOOR, 0.25 * math.exp(-t)) if t < 700 else 0.0
    if lo == 0.0:
        raise DomainError(f"occupation underflows at t = {t!r}")
    while phi(lo) <= 0.0:
        lo *= 1e-3
        if lo == 0.0:
            raise BracketError(f"rhs stays below exp(t) near n = 0 for t = {t!r}")

    # geometric scan for the first sign change below the cap
    ratio = (cap / lo) ** (1.0 / SCAN_POINTS)
    a = lo
    bracket = None
    for i in range(1, SCAN_POINTS + 1):
        b = cap if i == SCAN_POINTS else lo * ratio**i
        fb = phi(b)
        if fb <= 0.0:
            bracket = (a, b)
            break
        a = b
    if bracket is None:
        raise BracketError(f"no sign change on (0, {cap}) for t = {t!r}, alpha = {stat.alpha!r}")

    a, b = bracket
    if phi(b) == 0.0:
        n, iterations = b, 0
    else:
        # the cap itself gives log(0) = -inf; a finite floor keeps Brent's
        # interpolation steps well defined
        def phi_finite(n):
            return max(phi(n), -_LOG_FLOOR)

        n, info = brentq(
            phi_finite, a, b, xtol=1e-300, rtol=4 * sys.float_info.epsilon,
            maxiter=MAX_ITER, full_output=True, disp=False,
        )
        iterations = info.iterations
        if not info.converged:
            raise ConvergenceError(f"Brent iteration did not converge in {MAX_ITER} steps")
    n, res = _polish(phi, n, bracket[0], bracket[1])
    converged = res <= tol
    if strict and not converged:
        raise ConvergenceError(
            f"residual {res:.3e} above tol {tol:.1e} at t = {t!r}, alpha = {stat.alpha!r}"
        )
    return SolveResult(n, res, bracket, iterations, converged)
