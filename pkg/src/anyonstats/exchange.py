"""Scattering probabilities of identical particles under exchange phase ``f``.

Two independent routes are provided.  The brute-force route enumerates all
permutations of ``n`` particles, weights each by ``f**inv(sigma)`` and squares
the modulus of the sum.  The closed route multiplies the bracket factors
``2 + 2[2] + ... + 2[m-1] + [m]``.  Their agreement is the main oracle for the
enhancement factor ``F(n) = P(n+1) / P(n)``.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from .basic_numbers import (
    as_statistics,
    basic_number,
    cos_half_angle,
    cospi_product,
    sinpi,
    sinpi_product,
)
from .errors import DomainError, SizeError

__all__ = [
    "MAX_BRUTEFORCE_N",
    "inversion_count",
    "lexicographic_permutations",
    "amplitude_bruteforce",
    "probability_bruteforce",
    "probability_closed",
    "enhancement_factor",
    "enhancement_factor_closed",
    "fermi_limit_enhancement",
]

MAX_BRUTEFORCE_N = 10


def _check_count(n):
    if int(n) != n or n < 0:
        raise DomainError(f"particle number must be a non-negative integer, got {n!r}")
    return int(n)


def inversion_count(perm):
    """Number of pairs ``i < j`` with ``perm[i] > perm[j]``."""
    perm = list(perm)
    return sum(
        1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j]
    )


@lru_cache(maxsize=None)
def lexicographic_permutations(n):
    """All permutations of ``range(n)`` in lexicographic order, one per row."""
    if n == 0:
        return np.zeros((1, 0), dtype=np.int8)
    rest = lexicographic_permutations(n - 1)
    blocks = []
    for first in range(n):
        tail = rest + (rest >= first)
        head = np.full((tail.shape[0], 1), first, dtype=np.int8)
        blocks.append(np.hstack([head, tail.astype(np.int8)]))
    out = np.vstack(blocks)
    out.setflags(write=False)
    return out


@lru_cache(maxsize=None)
def _inversions(n):
    perms = lexicographic_permutations(n)
    inv = np.zeros(perms.shape[0], dtype=np.int64)
    for i in range(n):
        for j in range(i + 1, n):
            inv += perms[:, i] > perms[:, j]
    inv.setflags(write=False)
    return inv


def amplitude_bruteforce(n, stat):
    """Sum of ``f**inv(sigma)`` over all permutations of ``n`` particles.

    The sum runs in lexicographic permutation order so repeated calls are
    bit-identical.

    Raises
    ------
    SizeError
        If ``n > MAX_BRUTEFORCE_N``; the enumeration costs ``n!``.
    """
    n = _check_count(n)
    if n > MAX_BRUTEFORCE_N:
        raise SizeError(f"brute-force enumeration limited to n <= {MAX_BRUTEFORCE_N}")
    alpha = as_statistics(stat).alpha
    inv = _inversions(n)
    k = np.arange(n * (n - 1) // 2 + 1)
    # f**k with exact reduction of k*alpha
    powers = np.array([complex(cospi_product(kk, alpha), sinpi_product(kk, alpha)) for kk in k])
    return complex(np.sum(powers[inv]))


def probability_bruteforce(n, stat):
    """``|amplitude|**2 / n!`` from explicit permutation enumeration."""
    amp = amplitude_bruteforce(n, stat)
    return (amp.real**2 + amp.imag**2) / math.factorial(int(n))


def _bracket_factor(m, stat):
    """``2[1] + 2[2] + ... + 2[m-1] + [m]``.

    The sum equals ``(sin(m x) / sin x)**2`` with ``x = pi alpha / 2``, so it
    is never negative; a rounding residue below zero is clipped to 0.
    """
    s = 2.0 * math.fsum(basic_number(k, stat) for k in range(1, m)) + basic_number(m, stat)
    return max(s, 0.0)


def probability_closed(n, stat):
    """Product form ``P(n) = (1/n!) prod_{m=1..n} (2 + 2[2] + ... + [m])``.

    ``P(0) = P(1) = 1``.  The product is accumulated as ``prod(factor_m / m)``
    so large ``n`` does not overflow through ``n!``.
    """
    n = _check_count(n)
    stat = as_statistics(stat)
    p = 1.0
    for m in range(1, n + 1):
        p *= _bracket_factor(m, stat) / m
    return p


def enhancement_factor(n, stat):
    """``F(n) = (2 + 2[2] + ... + 2[n] + [n+1]) / (n+1)`` for integer ``n``."""
    n = _check_count(n)
    stat = as_statistics(stat)
    return _bracket_factor(n + 1, stat) / (n + 1)


def enhancement_factor_closed(n, stat):
    """Closed form ``F(n) = 4/(n+1) * ([(n+1)/2] cos(pi alpha/2))**2``.

    Accepts real ``n >= 0`` (mean occupations).  At ``alpha = 0`` it returns
    ``n + 1``; at ``alpha = 1`` it returns the limit
    ``sin(pi (n+1)/2)**2 / (n+1)``, which reduces to the alternating
    ``1/(n+1), 0`` pattern at integers.
    """
    n = float(n)
    if not (n >= 0.0) or not math.isfinite(n):
        raise DomainError(f"occupation must be finite and >= 0, got {n!r}")
    stat = as_statistics(stat)
    if stat.is_bose:
        return n + 1.0
    if stat.is_fermi:
        return sinpi((n + 1.0) / 2.0) ** 2 / (n + 1.0)
    bracket = basic_number((n + 1.0) / 2.0, stat) * cos_half_angle(stat)
    return 4.0 / (n + 1.0) * bracket * bracket


def fermi_limit_enhancement(n):
    """``lim_{alpha->1} F(n)``: ``1/(n+1)`` for even ``n``, ``0`` for odd."""
    n = _check_count(n)
    return 0.0 if n % 2 else 1.0 / (n + 1)
