"""Symmetric basic numbers with base ``f = exp(i*pi*alpha)``.

The bracket ``[nu] = sin(nu*pi*alpha) / sin(pi*alpha)`` interpolates between
the ordinary integers (``alpha = 0``) and the alternating integers
``(-1)**(n+1) * n`` (``alpha = 1``).  All trigonometry goes through
:func:`sinpi`, which reduces its argument exactly so that zeros such as
``[2]`` at ``alpha = 1/2`` come out as exact zeros.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import DomainError

__all__ = [
    "StatisticsParameter",
    "as_statistics",
    "sinpi",
    "sinpi_product",
    "cospi_product",
    "cos_half_angle",
    "basic_number",
    "basic_number_sum",
    "basic_number_sum_closed",
    "basic_number_phase_sum",
]

#: half-width of the window around alpha in {0, 1} that uses the expanded form
LIMIT_WINDOW = 1e-8


@dataclass(frozen=True)
class StatisticsParameter:
    """The statistics parameter ``alpha`` in ``[0, 1]``.

    ``alpha = 0`` is Bose-Einstein, ``alpha = 1`` the generalized-fermion
    limit.  The exchange phase is ``f = exp(i*pi*alpha)`` and the half angle
    used by the occupation equation is ``x = pi*alpha/2``.
    """

    alpha: float

    def __post_init__(self):
        alpha = float(self.alpha)
        if not (0.0 <= alpha <= 1.0):
            raise DomainError(f"alpha must lie in [0, 1], got {self.alpha!r}")
        object.__setattr__(self, "alpha", alpha)

    @classmethod
    def folded(cls, alpha):
        """Map a signed ``alpha`` onto ``|alpha|``.

        Everything physical depends on ``alpha`` through ``sin**2``, so the
        conjugate phase gives the same statistics.
        """
        return cls(abs(float(alpha)))

    @property
    def x(self):
        return math.pi * self.alpha / 2.0

    @property
    def f(self):
        return complex(sinpi(0.5 - self.alpha), sinpi(self.alpha))

    @property
    def is_bose(self):
        return self.alpha == 0.0

    @property
    def is_fermi(self):
        return self.alpha == 1.0


def as_statistics(stat):
    """Accept a :class:`StatisticsParameter` or a bare ``alpha``."""
    if isinstance(stat, StatisticsParameter):
        return stat
    return StatisticsParameter(stat)


def sinpi(y):
    """Return ``sin(pi*y)`` with exact argument reduction.

    Integers map to exactly zero and half-integers to exactly +-1.
    """
    y = float(y)
    if not math.isfinite(y):
        raise DomainError(f"sinpi of non-finite argument {y!r}")
    sign = 1.0
    if y < 0.0:
        y = -y
        sign = -1.0
    r = math.fmod(y, 2.0)
    if r > 1.0:
        r -= 1.0
        sign = -sign
    if r > 0.5:
        r = 1.0 - r
    if r == 0.0:
        return 0.0
    return sign * math.sin(math.pi * r)


_SPLIT = 134217729.0  # 2**27 + 1


def _two_product(a, b):
    """``(p, e)`` with ``p = fl(a*b)`` and ``p + e == a*b`` exactly (Dekker)."""
    p = a * b
    t = _SPLIT * a
    ah = t - (t - a)
    al = a - ah
    t = _SPLIT * b
    bh = t - (t - b)
    bl = b - bh
    e = ((ah * bh - p) + ah * bl + al * bh) + al * bl
    return p, e


def _reduced_product(a, b):
    """``(r, e, sign)`` with ``|a*b| = 2m + r + e``, ``0 <= r < 2``, tiny ``e``."""
    a, b = float(a), float(b)
    if not (math.isfinite(a) and math.isfinite(b)):
        raise DomainError(f"non-finite phase {a!r} * {b!r}")
    p, e = _two_product(a, b)
    if abs(p) >= 2.0**52 or abs(p) < 2.0**-500:
        e = 0.0
    sign = 1.0
    if p < 0.0:
        p, e, sign = -p, -e, -1.0
    return math.fmod(p, 2.0), e, sign


def sinpi_product(a, b):
    """``sin(pi*a*b)`` without the phase error of rounding ``a*b``.

    Rounding the product first costs up to ``|a*b|`` ulps of absolute phase,
    which the small denominators near ``alpha = 1`` amplify.  The rounded
    product is reduced modulo 2 exactly and its rounding error added back
    afterwards.
    """
    r, e, sign = _reduced_product(a, b)
    if r >= 1.0:
        r -= 1.0
        sign = -sign
    if r > 0.5:
        r, e = 1.0 - r, -e
    if r == 0.0 and e == 0.0:
        return 0.0
    return sign * math.sin(math.pi * (r + e))


def cospi_product(a, b):
    """``cos(pi*a*b)``, reduced like :func:`sinpi_product`."""
    r, e, _ = _reduced_product(a, b)
    if r > 1.0:
        r = 2.0 - r
        e = -e
    # cos(pi (r + e)) = sin(pi (1/2 - r - e)); 1/2 - r is exact for r >= 1/4
    if r >= 0.25:
        h = 0.5 - r
        if h == 0.0 and e == 0.0:
            return 0.0
        return math.sin(math.pi * (h - e))
    return math.cos(math.pi * (r + e))


def cos_half_angle(stat):
    """``cos(pi*alpha/2)``, accurate as alpha approaches 1."""
    stat = as_statistics(stat)
    return sinpi((1.0 - stat.alpha) / 2.0)


def _is_integer(nu):
    return float(nu).is_integer()


def basic_number(nu, stat, window=LIMIT_WINDOW):
    """Evaluate the basic number ``[nu]`` for real ``nu``.

    Parameters
    ----------
    nu : float
        Argument of the bracket. Non-integer values use the same sine ratio.
    stat : StatisticsParameter or float
        Statistics parameter.
    window : float, optional
        Half-width of the neighbourhood of ``alpha in {0, 1}`` where a
        second-order expansion replaces the sine ratio.

    Returns
    -------
    float

    Raises
    ------
    DomainError
        For non-integer ``nu`` at exactly ``alpha = 1``, where the ratio has
        no limit.
    """
    nu = float(nu)
    if not math.isfinite(nu):
        raise DomainError(f"basic number needs a finite argument, got {nu!r}")
    alpha = as_statistics(stat).alpha

    if alpha == 0.0:
        return nu
    if alpha == 1.0:
        if not _is_integer(nu):
            raise DomainError(
                f"[{nu}] has no limit at alpha = 1 for non-integer argument"
            )
        return nu if int(nu) % 2 else -nu

    # sin(nu*pi*d)/sin(pi*d) = nu * (1 - (nu**2 - 1) (pi d)**2 / 6 + O(d**4))
    if alpha < window and abs(nu) * alpha < window:
        d = math.pi * alpha
        return nu * (1.0 - (nu * nu - 1.0) * d * d / 6.0)
    if 1.0 - alpha < window and _is_integer(nu) and abs(nu) * (1.0 - alpha) < window:
        d = math.pi * (1.0 - alpha)
        sign = 1.0 if int(nu) % 2 else -1.0
        return sign * nu * (1.0 - (nu * nu - 1.0) * d * d / 6.0)

    return sinpi_product(nu, alpha) / sinpi(alpha)


def basic_number_phase_sum(n, stat):
    """``f**(n-1) + f**(n-3) + ... + f**(1-n)`` as a complex number.

    Independent of :func:`basic_number`; only used to cross-check it.
    """
    if n < 0:
        raise DomainError("phase-sum representation needs n >= 0")
    alpha = as_statistics(stat).alpha
    return sum(cmath.exp(1j * math.pi * alpha * (n - 1 - 2 * k)) for k in range(n))


def basic_number_sum(n, stat):
    """``[0] + [1] + ... + [n]`` by direct summation."""
    if n < 0 or int(n) != n:
        raise DomainError(f"n must be a non-negative integer, got {n!r}")
    stat = as_statistics(stat)
    return math.fsum(basic_number(k, stat) for k in range(int(n) + 1))


def basic_number_sum_closed(n, stat):
    """Closed form ``2 cos(pi alpha/2) [n/2] [(n+1)/2]`` of the bracket sum.

    At ``alpha = 1`` one of the two half brackets is fractional, so the
    product ``cos(pi alpha/2) [m/2]`` is evaluated through its limit
    ``sin(m pi alpha/2) / (2 sin(pi alpha/2))``.
    """
    if n < 0 or int(n) != n:
        raise DomainError(f"n must be a non-negative integer, got {n!r}")
    stat = as_statistics(stat)
    if stat.is_fermi:
        # exactly one of n/2, (n+1)/2 is an integer; 2 cos(x) [h] -> sin(pi h)
        whole, half = (n / 2.0, (n + 1) / 2.0) if n % 2 == 0 else ((n + 1) / 2.0, n / 2.0)
        return sinpi(half) * basic_number(whole, stat)
    c = cos_half_angle(stat)
    return 2.0 * c * basic_number(n / 2.0, stat) * basic_number((n + 1) / 2.0, stat)
