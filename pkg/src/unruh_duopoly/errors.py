"""Exception types raised by the library."""


class DuopolyError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(DuopolyError, ValueError):
    """An input lies outside the domain of the operation."""


class ContractError(DuopolyError, ValueError):
    """A value violates an invariant it is required to satisfy."""


class DegenerateInstanceError(DuopolyError, ValueError):
    """The parameters describe a degenerate game (e.g. a vanishing denominator)."""


class NonConcaveError(DuopolyError):
    """The follower's payoff is unbounded above, so no best response exists."""


class BracketError(DuopolyError, ValueError):
    """A root-finding bracket does not enclose a sign change."""


class SolverError(DuopolyError, RuntimeError):
    """An iterative solver failed to converge."""
