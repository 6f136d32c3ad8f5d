"""Multi-level equilibrium: fugacity at fixed particle number, detailed-balance
checks between levels, and occupation sweeps over ``(alpha, t)`` grids."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from .basic_numbers import as_statistics
from .contfrac import build_cf, eval_convergent, first_approximant, required_order
from .errors import AnyonError, BracketError, CapacityError, DomainError, MonotonicityError
from .exchange import enhancement_factor_closed
from .series import eval_series, leading_coefficient, revert_series, rhs_series
from .solver import branch_cap, log_rhs, solve_occupation

__all__ = [
    "METHODS",
    "EnergyLevel",
    "EquilibriumState",
    "read_levels",
    "total_occupation",
    "solve_fugacity",
    "detailed_balance_residual",
    "fugacity_invariants",
    "occupation_sweep",
]

METHODS = ("solver", "series", "cf", "first-approx")

N_REL_TOL = 1e-8
MU_MARGIN = 50.0
MAX_EXPANSIONS = 10
MAX_BISECTIONS = 400


@dataclass(frozen=True)
class EnergyLevel:
    energy: float
    degeneracy: int = 1

    def __post_init__(self):
        if int(self.degeneracy) != self.degeneracy or self.degeneracy < 1:
            raise DomainError(f"degeneracy must be a positive integer, got {self.degeneracy!r}")
        if not math.isfinite(self.energy):
            raise DomainError(f"energy must be finite, got {self.energy!r}")
        object.__setattr__(self, "degeneracy", int(self.degeneracy))
        object.__setattr__(self, "energy", float(self.energy))


@dataclass(frozen=True)
class EquilibriumState:
    beta: float
    mu: float
    occupations: tuple
    total: float
    iterations: int = 0

    @property
    def fugacity(self):
        return math.exp(self.beta * self.mu)


def read_levels(lines):
    """Parse ``energy degeneracy`` lines; ``#`` starts a comment.

    A missing degeneracy defaults to 1.  Accepts an open file or any iterable
    of strings.
    """
    levels = []
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) > 2:
            raise ValueError(f"line {lineno}: expected 'energy [degeneracy]', got {raw!r}")
        try:
            energy = float(fields[0])
            deg = int(fields[1]) if len(fields) == 2 else 1
        except ValueError:
            raise ValueError(f"line {lineno}: cannot parse {raw!r}") from None
        levels.append(EnergyLevel(energy, deg))
    if not levels:
        raise ValueError("no energy levels given")
    return levels


def _occupation(t, stat):
    if t > 700.0:
        # deep Boltzmann tail, n ~ exp(-t) to far below double resolution of 1/n
        return math.exp(-t)
    return solve_occupation(t, stat, strict=False).n


def total_occupation(levels, beta, mu, stat):
    """``sum_i g_i n_i`` with ``n_i`` solved at ``t_i = beta (E_i - mu)``.

    For bosons the total is infinite once ``mu`` reaches the lowest level.
    """
    stat = as_statistics(stat)
    if stat.is_bose and mu >= min(lv.energy for lv in levels):
        return math.inf, None
    occ = tuple(_occupation(beta * (lv.energy - mu), stat) for lv in levels)
    return math.fsum(lv.degeneracy * n for lv, n in zip(levels, occ)), occ


def solve_fugacity(levels, beta, N, stat):
    """Chemical potential that places ``N`` particles on ``levels``.

    Bisects on ``mu`` until ``|sum g_i n_i - N| <= 1e-8 N``.

    Raises
    ------
    CapacityError
        ``N`` reaches ``sum g_i (2/alpha - 1)``, the most the first branch can
        hold.
    BracketError
        ``mu`` could not be bracketed after the allowed expansions.
    MonotonicityError
        The total was seen to decrease as ``mu`` increased.
    """
    levels = list(levels)
    if not levels:
        raise DomainError("at least one level is required")
    if not beta > 0:
        raise DomainError(f"beta must be positive, got {beta!r}")
    if not N > 0:
        raise DomainError(f"particle number must be positive, got {N!r}")
    stat = as_statistics(stat)
    capacity = sum(lv.degeneracy for lv in levels) * branch_cap(stat)
    if N >= capacity:
        raise CapacityError(f"N = {N!r} is at or above the saturation bound {capacity!r}")

    energies = [lv.energy for lv in levels]
    width = MU_MARGIN / beta
    lo, hi = min(energies) - width, max(energies) + width
    if stat.is_bose:
        hi = min(energies)

    trace = []

    def evaluate(mu):
        total, occ = total_occupation(levels, beta, mu, stat)
        trace.append((mu, total))
        return total, occ

    for _ in range(MAX_EXPANSIONS + 1):
        if evaluate(lo)[0] < N:
            break
        lo -= width
        width *= 2.0
    else:
        raise BracketError(f"could not bracket mu from below for N = {N!r}")
    width = MU_MARGIN / beta
    for _ in range(MAX_EXPANSIONS + 1):
        if evaluate(hi)[0] > N:
            break
        hi += width
        width *= 2.0
    else:
        raise BracketError(f"could not bracket mu from above for N = {N!r}")

    state = None
    for it in range(1, MAX_BISECTIONS + 1):
        mid = 0.5 * (lo + hi)
        total, occ = evaluate(mid)
        if abs(total - N) <= N_REL_TOL * N:
            state = EquilibriumState(beta, mid, occ, total, it)
            break
        if total < N:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 2 * math.ulp(mid):
            break
    _check_monotone(trace)
    if state is None:
        raise BracketError(f"bisection on mu stalled at mu = {0.5 * (lo + hi)!r}")
    return state


def _check_monotone(trace):
    pts = sorted(trace)
    for (m0, n0), (m1, n1) in zip(pts, pts[1:]):
        if n1 < n0 and (n0 - n1) > 1e-12 * max(abs(n0), 1.0):
            raise MonotonicityError(
                f"total occupation fell from {n0!r} to {n1!r} between mu = {m0!r} and {m1!r}"
            )


def detailed_balance_residual(state, levels, stat):
    """Largest relative imbalance of ``n_i F(n_j) e^{b E_i} = n_j F(n_i) e^{b E_j}``.

    ``F`` is the closed-form enhancement factor at real occupations.
    Returns 0 for a single level.
    """
    stat = as_statistics(stat)
    levels = list(levels)
    if len(levels) != len(state.occupations):
        raise ValueError("state and levels have different lengths")
    worst = 0.0
    for (i, li), (j, lj) in combinations(enumerate(levels), 2):
        ni, nj = state.occupations[i], state.occupations[j]
        if ni <= 0 or nj <= 0:
            raise DomainError("occupations must be positive")
        lhs = ni * enhancement_factor_closed(nj, stat) * math.exp(state.beta * li.energy)
        rhs_ = nj * enhancement_factor_closed(ni, stat) * math.exp(state.beta * lj.energy)
        scale = max(abs(lhs), abs(rhs_))
        if scale > 0:
            worst = max(worst, abs(lhs - rhs_) / scale)
    return worst


def fugacity_invariants(state, levels, stat):
    """``n_i / F(n_i) * exp(beta E_i)`` per level; all equal ``exp(beta mu)``."""
    stat = as_statistics(stat)
    return [
        n / enhancement_factor_closed(n, stat) * math.exp(state.beta * lv.energy)
        for lv, n in zip(levels, state.occupations)
    ]


def _approximate(method, stat, t, order, depth, cache):
    if method == "solver":
        res = solve_occupation(t, stat)
        return res.n
    if method == "first-approx":
        return first_approximant(stat, t)
    key = (stat.alpha, method)
    if key not in cache:
        if method == "series":
            cache[key] = revert_series(rhs_series(stat, order), order)
        else:
            K = required_order(depth)
            cache[key] = build_cf(revert_series(rhs_series(stat, K), K), depth)
    g = math.exp(t) - leading_coefficient(stat)
    if method == "series":
        return eval_series(cache[key], g)
    return eval_convergent(cache[key], g, depth)


def occupation_sweep(stats, ts, method="solver", order=10, depth=8):
    """Occupation on an ``alpha``-major grid.

    Each row is a dict with keys ``alpha, t, method, n, residual, status``.
    ``residual`` is ``|log rhs(n) - t|`` for whatever ``n`` the method gave.
    Failures are reported in ``status`` and never stop the sweep.
    """
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    stats = [as_statistics(s) for s in stats]
    ts = [float(t) for t in ts]
    if not stats or not ts:
        raise ValueError("alpha and t grids must be non-empty")
    cache = {}
    rows = []
    for stat in stats:
        for t in ts:
            row = {"alpha": stat.alpha, "t": t, "method": method,
                   "n": math.nan, "residual": math.nan, "status": "ok"}
            try:
                n = _approximate(method, stat, t, order, depth, cache)
                row["n"] = n
                if not n > 0 or n >= branch_cap(stat):
                    row["status"] = "out-of-branch"
                else:
                    row["residual"] = abs(log_rhs(n, stat) - t)
            except (AnyonError, ArithmeticError) as exc:
                row["status"] = f"{type(exc).__name__}: {exc}"
            rows.append(row)
    return rows

