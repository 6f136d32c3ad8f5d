"""Continued-fraction form of the occupation number.

A fraction ``b_1/(c_1 + b_2/(c_2 + ...))`` is stored as a list of partial
terms whose numerators ``b_k`` and denominators ``c_k`` are polynomials in
``g`` (coefficient tuples, lowest power first).  The first two levels are
always

    b_1 = 1,          c_1 = g
    b_2 = -alpha_3 g, c_2 = g**2 + alpha_3

Two continuations are available.

``"corresponding"`` (default)
    Each further level is read off the Laurent expansion (in ``1/g``) of the
    remaining tail, so the m-th convergent reproduces the reverted series to
    increasing order.  Beyond level 3 the terms take the form
    ``b_k = const``, ``c_k = g + const``.

``"literal"``
    The fixed pattern ``b_k = -alpha_{k+1} g``, ``c_k = alpha_k g + alpha_{k+1}``
    for ``k >= 3``.  Its convergents past the second stop improving on the
    series (they miss the ``alpha_4/g**4`` term), so it is kept for
    structural comparison only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .basic_numbers import as_statistics
from .errors import DomainError, PoleError, SizeError
from .series import TruncatedSeries, leading_coefficient

__all__ = [
    "SCHEMES",
    "TERMINATION_TOL",
    "ContinuedFractionRep",
    "Convergent",
    "required_order",
    "build_cf",
    "eval_convergent",
    "convergent",
    "convergents",
    "first_approximant",
]

SCHEMES = ("corresponding", "literal")
TERMINATION_TOL = 1e-14
_RESCALE_AT = 1e150


@dataclass(frozen=True)
class ContinuedFractionRep:
    """Partial numerators/denominators as polynomials in ``g``.

    ``depth`` is the number of levels actually stored; it is smaller than
    ``requested_depth`` when a vanishing coefficient terminated the fraction
    exactly.
    """

    terms: tuple
    requested_depth: int
    scheme: str = "corresponding"

    @property
    def depth(self):
        return len(self.terms)

    @property
    def numerators(self):
        return tuple(b for b, _ in self.terms)

    @property
    def denominators(self):
        return tuple(c for _, c in self.terms)


@dataclass(frozen=True)
class Convergent:
    """Numerator ``B`` and denominator ``C`` of the m-th approximant."""

    B: float
    C: float
    m: int

    @property
    def value(self):
        if self.C == 0.0:
            raise PoleError(self.m, float("nan"))
        return self.B / self.C


def required_order(depth, scheme="corresponding"):
    """Reversion order that suffices to build ``depth`` levels."""
    if scheme == "literal":
        return max(3, depth + 1)
    # level 3 reads two new coefficients, every later level two more
    if depth <= 3:
        return max(3, 2 * depth - 1)
    return 2 * depth - 2


class _Laurent:
    """``sum c[i] u**(lo+i)`` with only ``len(c)`` known coefficients."""

    __slots__ = ("lo", "c")

    def __init__(self, lo, c):
        self.lo = lo
        self.c = np.asarray(c, dtype=float)

    def __len__(self):
        return self.c.size

    def strip(self, tol):
        k = 0
        while k < self.c.size and abs(self.c[k]) < tol:
            k += 1
        return _Laurent(self.lo + k, self.c[k:])

    def reciprocal(self):
        inv = 1.0 / TruncatedSeries(self.c)
        return _Laurent(-self.lo, inv.coefficients)

    def scaled(self, factor, g_power=0):
        return _Laurent(self.lo - g_power, self.c * factor)

    def minus_poly(self, poly):
        """Subtract a polynomial in ``g = 1/u`` (lowest power first)."""
        c = self.c.copy()
        for p, v in enumerate(poly):
            idx = -p - self.lo
            if v == 0.0:
                continue
            if not 0 <= idx < c.size:
                raise SizeError("polynomial part lies outside the known Laurent range")
            c[idx] -= v
        return _Laurent(self.lo, c)

    def polynomial_part(self):
        """Coefficients of ``g**0 .. g**(-lo)``, lowest power first."""
        if self.lo > 0:
            raise SizeError("tail has no polynomial part")
        degree = -self.lo
        if self.c.size < degree + 1:
            raise SizeError("not enough coefficients to fix the polynomial part")
        return tuple(float(self.c[degree - p]) for p in range(degree + 1))


def _literal_terms(alpha, depth):
    a = lambda k: alpha[k - 1]  # noqa: E731
    terms = [((1.0,), (0.0, 1.0))]
    if depth >= 2 and abs(a(3)) >= TERMINATION_TOL:
        terms.append(((0.0, -a(3)), (a(3), 0.0, 1.0)))
        for k in range(3, depth + 1):
            if abs(a(k + 1)) < TERMINATION_TOL:
                break
            terms.append(((0.0, -a(k + 1)), (a(k + 1), a(k))))
    return terms


def _corresponding_terms(alpha, depth):
    terms = [((1.0,), (0.0, 1.0))]
    if depth < 2:
        return terms
    a3 = alpha[2]
    if abs(a3) < TERMINATION_TOL:
        return terms

    b2 = (0.0, -a3)
    c2 = (a3, 0.0, 1.0)
    terms.append((b2, c2))
    if depth == 2:
        return terms

    series = _Laurent(1, alpha)
    remainder = series.reciprocal().minus_poly((0.0, 1.0)).strip(TERMINATION_TOL)
    if len(remainder) < 2 or remainder.lo != 1:
        raise SizeError("reverted series too short to continue past the second level")
    tail = remainder.reciprocal().scaled(-a3, g_power=1)
    remainder = tail.minus_poly(c2)

    for k in range(3, depth + 1):
        known = len(remainder)
        remainder = remainder.strip(TERMINATION_TOL)
        if len(remainder) == 0:
            if known >= 2:
                break  # fraction terminates exactly
            raise SizeError(f"reverted series too short for level {k}")
        p = remainder.lo
        lead = float(remainder.c[0])
        e = max(0, -p)
        b = (0.0,) * e + (lead,)
        tail = _Laurent(p, remainder.c / lead).reciprocal().scaled(1.0, g_power=e)
        try:
            c = tail.polynomial_part()
        except SizeError:
            raise SizeError(f"reverted series too short for level {k}") from None
        terms.append((b, c))
        remainder = tail.minus_poly(c)
        remainder = _Laurent(remainder.lo + len(c), remainder.c[len(c):])
    return terms


def build_cf(rev, depth, scheme="corresponding"):
    """Build a continued fraction of the given depth from a reverted series.

    Parameters
    ----------
    rev : RevertedSeries
    depth : int
        Number of levels, at least 1.
    scheme : {"corresponding", "literal"}

    Raises
    ------
    SizeError
        When ``rev`` does not carry enough coefficients (see
        :func:`required_order`).
    """
    if depth < 1 or int(depth) != depth:
        raise SizeError(f"depth must be a positive integer, got {depth!r}")
    if scheme not in SCHEMES:
        raise ValueError(f"unknown scheme {scheme!r}; expected one of {SCHEMES}")
    depth = int(depth)
    need = required_order(depth, scheme) if depth > 1 else 1
    if rev.K < need:
        raise SizeError(
            f"depth {depth} ({scheme}) needs alpha_k through k={need}; got {rev.K}"
        )
    alpha = tuple(rev.alpha)
    if scheme == "literal":
        terms = _literal_terms(alpha, depth)
    else:
        terms = _corresponding_terms(alpha, depth)
    return ContinuedFractionRep(tuple(terms), depth, scheme)


def _poly(coeffs, g):
    value = 0.0
    for c in reversed(coeffs):
        value = value * g + c
    return value


def convergent(cf, g, m):
    """The m-th :class:`Convergent` by the forward three-term recurrence."""
    g = float(g)
    if g == 0.0:
        raise DomainError("convergents are evaluated for g != 0")
    if m < 1 or m > cf.requested_depth:
        raise SizeError(f"m must lie in 1..{cf.requested_depth}, got {m!r}")
    B_prev, C_prev = 1.0, 0.0  # index -1
    B, C = 0.0, 1.0  # index 0, c_0 = 0
    for k in range(min(m, cf.depth)):
        b_poly, c_poly = cf.terms[k]
        b, c = _poly(b_poly, g), _poly(c_poly, g)
        B, B_prev = c * B + b * B_prev, B
        C, C_prev = c * C + b * C_prev, C
        scale = max(abs(B), abs(C))
        if scale > _RESCALE_AT:
            B, B_prev, C, C_prev = B / scale, B_prev / scale, C / scale, C_prev / scale
    return Convergent(B, C, m)


def eval_convergent(cf, g, m):
    """Value ``B_m / C_m`` of the m-th approximant at ``g``.

    Raises
    ------
    PoleError
        If ``C_m`` vanishes.
    """
    conv = convergent(cf, g, m)
    if conv.C == 0.0 or not math.isfinite(conv.C):
        raise PoleError(m, g)
    return conv.B / conv.C


def convergents(cf, g):
    """All approximants ``m = 1 .. requested_depth`` at ``g``."""
    return [eval_convergent(cf, g, m) for m in range(1, cf.requested_depth + 1)]


def first_approximant(stat, t):
    """``1 / (exp(t) - a_0(alpha))``."""
    stat = as_statistics(stat)
    denom = math.exp(t) - leading_coefficient(stat)
    if not denom > 0.0:
        raise DomainError(
            f"first approximant needs exp(t) > a_0; got t={t!r}, alpha={stat.alpha!r}"
        )
    return 1.0 / denom
