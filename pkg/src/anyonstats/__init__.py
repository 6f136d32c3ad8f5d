"""Occupation-number distribution for particles with intermediate statistics.

The statistics parameter ``alpha`` interpolates between Bose-Einstein
(``alpha = 0``) and a generalized Fermi limit (``alpha = 1``).  Exchange
probabilities are written with basic numbers, detailed balance turns them into
a transcendental equation for the occupation ``n``, and that equation is
solved directly, as a series in ``1/g`` and as a continued fraction.
"""

from .basic_numbers import (
    StatisticsParameter,
    basic_number,
    basic_number_phase_sum,
    basic_number_sum,
    basic_number_sum_closed,
    cos_half_angle,
    sinpi,
    sinpi_product,
    cospi_product,
)
from .contfrac import (
    ContinuedFractionRep,
    Convergent,
    build_cf,
    convergent,
    convergents,
    eval_convergent,
    first_approximant,
    required_order,
)
from .errors import (
    AnyonError,
    BracketError,
    CapacityError,
    ConvergenceError,
    DomainError,
    MonotonicityError,
    PoleError,
    SizeError,
)
from .exchange import (
    amplitude_bruteforce,
    enhancement_factor,
    enhancement_factor_closed,
    fermi_limit_enhancement,
    inversion_count,
    probability_bruteforce,
    probability_closed,
)
from .series import (
    RevertedSeries,
    SeriesCoefficients,
    TruncatedSeries,
    closed_form_a,
    eval_series,
    forward_value,
    leading_coefficient,
    revert_series,
    rhs_series,
)
from .solver import (
    SolveResult,
    ThermoPoint,
    bose_distribution,
    branch_cap,
    log_rhs,
    rhs,
    solve_occupation,
)
from .thermo import (
    EnergyLevel,
    EquilibriumState,
    detailed_balance_residual,
    fugacity_invariants,
    occupation_sweep,
    read_levels,
    solve_fugacity,
)

__version__ = "0.1.0"
