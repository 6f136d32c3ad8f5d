"""Power-series expansion of the occupation equation and its reversion.

The right-hand side of the occupation equation is expanded as

    exp(t) = 1/n + a_0 + a_1 n + a_2 n**2 + ...

and, with ``g = exp(t) - a_0``, reverted into

    n = 1/g + alpha_3/g**3 + alpha_4/g**4 + ...

Coefficients are produced by truncated power-series arithmetic, so no
symbolic algebra is needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .basic_numbers import StatisticsParameter, as_statistics, sinpi
from .errors import DomainError, SizeError

__all__ = [
    "DEFAULT_ORDER",
    "TruncatedSeries",
    "SeriesCoefficients",
    "RevertedSeries",
    "rhs_series",
    "closed_form_a",
    "leading_coefficient",
    "revert_series",
    "eval_series",
    "forward_value",
]

DEFAULT_ORDER = 12

# extra working order for the tail-side division by (1 + n)
_GUARD_TERMS = 40
_POLE_RESIDUAL_TOL = 1e-14


class TruncatedSeries:
    """Power series ``c_0 + c_1 z + ... + c_K z**K`` modulo ``z**(K+1)``.

    Binary operations truncate to the smaller order of the two operands.
    Instances are immutable.
    """

    __slots__ = ("_c",)

    def __init__(self, coefficients, order=None):
        c = np.asarray(coefficients, dtype=float).ravel()
        if order is not None:
            if order < 0:
                raise SizeError("order must be >= 0")
            if c.size <= order:
                c = np.concatenate([c, np.zeros(order + 1 - c.size)])
            c = c[: order + 1]
        if c.size == 0:
            raise SizeError("a truncated series needs at least one coefficient")
        c.setflags(write=False)
        self._c = c

    @classmethod
    def constant(cls, value, order):
        return cls([value], order)

    @classmethod
    def variable(cls, order, scale=1.0):
        """The series ``scale * z``."""
        return cls([0.0, scale], order)

    @property
    def coefficients(self):
        return self._c

    @property
    def order(self):
        return self._c.size - 1

    def __len__(self):
        return self._c.size

    def __getitem__(self, k):
        return float(self._c[k])

    def __repr__(self):
        return f"TruncatedSeries({self._c.tolist()!r})"

    def _coerce(self, other):
        if isinstance(other, TruncatedSeries):
            return other
        return TruncatedSeries.constant(float(other), self.order)

    def truncate(self, order):
        return TruncatedSeries(self._c, min(order, self.order))

    def __neg__(self):
        return TruncatedSeries(-self._c)

    def __add__(self, other):
        other = self._coerce(other)
        k = min(self.order, other.order)
        return TruncatedSeries(self._c[: k + 1] + other._c[: k + 1])

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return TruncatedSeries(self._c * float(other))
        k = min(self.order, other.order)
        return TruncatedSeries(np.convolve(self._c[: k + 1], other._c[: k + 1])[: k + 1])

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, TruncatedSeries):
            return TruncatedSeries(self._c / float(other))
        k = min(self.order, other.order)
        num, den = self._c[: k + 1], other._c[: k + 1]
        if den[0] == 0.0:
            raise DomainError("series division needs a non-zero constant term")
        out = np.zeros(k + 1)
        for j in range(k + 1):
            out[j] = (num[j] - np.dot(den[1 : j + 1], out[j - 1 :: -1][:j])) / den[0]
        return TruncatedSeries(out)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, p):
        if int(p) != p or p < 0:
            raise DomainError("only non-negative integer powers are supported")
        result = TruncatedSeries.constant(1.0, self.order)
        base = self
        p = int(p)
        while p:
            if p & 1:
                result = result * base
            base = base * base
            p >>= 1
        return result

    def shift_down(self):
        """Divide by ``z``; the constant term must already be zero."""
        return TruncatedSeries(self._c[1:]) if self.order else TruncatedSeries([0.0])

    def compose(self, inner):
        """``self(inner(z))`` for an inner series without constant term."""
        if inner[0] != 0.0:
            raise DomainError("composition needs an inner series with zero constant term")
        k = min(self.order, inner.order)
        inner = inner.truncate(k)
        result = TruncatedSeries.constant(self._c[k], k)
        for c in self._c[k - 1 :: -1] if k else []:
            result = result * inner + c
        return result

    def __call__(self, z):
        value = 0.0
        for c in self._c[::-1]:
            value = value * z + c
        return float(value)


def _sin_taylor(order):
    c = np.zeros(order + 1)
    for j in range(1, order + 1, 2):
        c[j] = (-1) ** (j // 2) / math.factorial(j)
    return TruncatedSeries(c)


def _cos_taylor(order):
    c = np.zeros(order + 1)
    for j in range(0, order + 1, 2):
        c[j] = (-1) ** (j // 2) / math.factorial(j)
    return TruncatedSeries(c)


def _divide_by_one_plus(num):
    """Quotient ``num(z) / (1 + z)`` for a numerator vanishing at ``z = -1``.

    Forward division suffers catastrophic cancellation here because the
    quotient coefficients are much smaller than the partial sums.  Dividing
    from the high-order end uses the decaying tail instead.
    """
    c = num.coefficients
    out = np.zeros(c.size - 1)
    acc = 0.0
    for k in range(c.size - 2, -1, -1):
        acc = c[k + 1] - acc
        out[k] = acc
    return TruncatedSeries(out)


@dataclass(frozen=True)
class SeriesCoefficients:
    """Coefficients ``a_0 .. a_K`` of ``exp(t) - 1/n`` in powers of ``n``."""

    stat: StatisticsParameter
    a: tuple

    @property
    def K(self):
        return len(self.a) - 1

    def __getitem__(self, k):
        return self.a[k]


@dataclass(frozen=True)
class RevertedSeries:
    """Coefficients ``alpha_1 .. alpha_K`` of ``n`` in powers of ``1/g``."""

    stat: StatisticsParameter
    alpha: tuple

    @property
    def K(self):
        return len(self.alpha)

    def __getitem__(self, k):
        if k < 1 or k > len(self.alpha):
            raise IndexError(f"alpha_{k} not available (1 <= k <= {len(self.alpha)})")
        return self.alpha[k - 1]


def _half_angle_parts(stat):
    alpha = stat.alpha
    x = math.pi * alpha / 2.0
    return x, sinpi(alpha / 2.0), sinpi(alpha), sinpi(0.5 - alpha)


def rhs_series(stat, K=DEFAULT_ORDER):
    """Expansion coefficients ``a_0 .. a_K`` at fixed ``alpha``.

    Builds ``sin((n+1)x)**2 / sin(x)**2`` from the addition theorem
    ``1 - cos(2(n+1)x) = 1 - cos 2x cos 2nx + sin 2x sin 2nx`` in series
    arithmetic, removes the ``1/n`` pole, and divides by ``n (n+1)``.
    """
    stat = as_statistics(stat)
    if K < 0 or int(K) != K:
        raise SizeError(f"order must be a non-negative integer, got {K!r}")
    K = int(K)
    if stat.is_bose:
        return SeriesCoefficients(stat, (1.0,) + (0.0,) * K)

    x, sx, s2x, c2x = _half_angle_parts(stat)
    W = K + _GUARD_TERMS + 2
    two_nx = TruncatedSeries.variable(W, 2.0 * x)
    cos_2nx = _cos_taylor(W).compose(two_nx)
    sin_2nx = _sin_taylor(W).compose(two_nx)
    # cos 2x = 1 - 2 sin^2 x keeps the constant term exact; 2 sin^2 x itself
    # is taken from whichever form does not cancel
    two_s2 = 2.0 * sx * sx if stat.alpha < 0.5 else 1.0 - c2x
    numerator = (1.0 - cos_2nx) + two_s2 * cos_2nx + s2x * sin_2nx
    ratio = numerator / two_s2

    # (ratio - 1 - n) / n must have no pole
    reduced = ratio - TruncatedSeries([1.0, 1.0], W)
    if abs(reduced[0]) > _POLE_RESIDUAL_TOL:
        raise ArithmeticError(
            f"constant term {reduced[0]!r} did not cancel in the series expansion"
        )
    quotient = _divide_by_one_plus(reduced.shift_down())
    return SeriesCoefficients(stat, tuple(float(v) for v in quotient.coefficients[: K + 1]))


def closed_form_a(stat, k):
    """Closed-form ``a_0 .. a_3``, kept separate from :func:`rhs_series`."""
    stat = as_statistics(stat)
    if k not in (0, 1, 2, 3):
        raise SizeError(f"closed forms exist for k in 0..3 only, got {k!r}")
    if stat.is_bose:
        return 1.0 if k == 0 else 0.0
    x, sx, s2x, c2x = _half_angle_parts(stat)
    s2 = sx * sx
    if k == 0:
        body = x * s2x - s2
    elif k == 1:
        body = x * x * c2x - x * s2x + s2
    elif k == 2:
        body = -x * x * c2x - s2 + (x - 2.0 * x**3 / 3.0) * s2x
    else:
        body = (x * x - x**4 / 3.0) * c2x + s2 - (x - 2.0 * x**3 / 3.0) * s2x
    return body / s2


def leading_coefficient(stat):
    """``a_0(alpha)``; 1 for bosons, -1 at ``alpha = 1``."""
    return closed_form_a(stat, 0)


def revert_series(coeffs, K=DEFAULT_ORDER):
    """Revert ``g = 1/n + sum_{k>=1} a_k n**k`` into ``n = sum alpha_k g**-k``.

    Uses Lagrange inversion on ``u = n / phi(n)`` with
    ``phi(n) = 1 + sum_{j>=1} a_j n**(j+1)``:
    ``alpha_k = [n**(k-1)] phi**k / k``.
    """
    if K < 1 or int(K) != K:
        raise SizeError(f"reversion order must be >= 1, got {K!r}")
    K = int(K)
    if coeffs.K < K - 2:
        raise SizeError(
            f"reversion to order {K} needs a_1..a_{K - 2}; only a_0..a_{coeffs.K} given"
        )
    phi = np.zeros(K)
    phi[0] = 1.0
    for j in range(1, K - 1):
        phi[j + 1] = coeffs.a[j]
    phi = TruncatedSeries(phi)
    alpha = []
    power = TruncatedSeries.constant(1.0, K - 1)
    for k in range(1, K + 1):
        power = power * phi
        alpha.append(power[k - 1] / k)
    return RevertedSeries(coeffs.stat, tuple(alpha))


def eval_series(rev, g):
    """Truncated sum ``sum_{k=1..K} alpha_k / g**k``."""
    g = float(g)
    if g == 0.0:
        raise DomainError("the reverted series is undefined at g = 0")
    u = 1.0 / g
    value = 0.0
    for c in reversed(rev.alpha):
        value = (value + c) * u
    return value


def forward_value(coeffs, n):
    """Truncated forward series ``1/n + a_0 + a_1 n + ... + a_K n**K``."""
    n = float(n)
    if n == 0.0:
        raise DomainError("the forward series has a pole at n = 0")
    tail = 0.0
    for c in reversed(coeffs.a):
        tail = tail * n + c
    return 1.0 / n + tail
