"""Quantum Stackelberg duopoly with one firm in a uniformly accelerated frame."""

from .duopoly_game import (
    BilinearCoefficients,
    GameParameters,
    PayoffPair,
    apply_strategies,
    bilinear_coefficients,
    payoff_pair,
    quantity_to_probability,
)
from .equilibrium import (
    EquilibriumOutcome,
    Reason,
    backward_induction,
    closed_form_equilibrium,
    closed_form_payoffs_maximal,
    closed_form_payoffs_unentangled,
    find_breakdown_r,
    find_crossing_r,
    find_crossing_theta,
    find_vanishing_r,
    reaction_function,
)
from .errors import (
    BracketError,
    ContractError,
    DegenerateInstanceError,
    DomainError,
    DuopolyError,
    NonConcaveError,
    SolverError,
)
from .rindler_state import (
    acceleration_to_r,
    closed_form_rho,
    format_density_matrix,
    initial_state,
    is_density_matrix,
    trace_out_region_II,
    unruh_expand,
)

__version__ = "0.1.0"
