"""Backward-induction (subgame perfect) equilibrium of the duopoly.

The follower's best response is solved analytically from the bilinear
payoff bracket; the leader's problem is then maximised numerically and
cross-checked against the closed-form equilibrium quantities.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .duopoly_game import (
    BilinearCoefficients,
    GameParameters,
    PayoffPair,
    bilinear_coefficients,
    payoff_pair,
)
from .errors import BracketError, DegenerateInstanceError, DomainError, NonConcaveError, SolverError
from .optimize import bisect, bisect_predicate, golden_section_max, parabolic_vertex
from .rindler_state import HALF_PI, check_r

Q_MAX = 1e6
Q1_TOL = 1e-10
CROSSING_TOL = 1e-10
# r close to pi/2 is still inside the mathematical domain
R_DOMAIN_MAX = HALF_PI - 1e-6

# Leader/follower payoff crossing for theta = 0, k = 1: bisection of
# P_A* - P_B* on [0.5, 0.75] to 1e-10 (plot reading puts it near 0.66).
UNENTANGLED_CROSSING_R = 0.6662394324957859


class Reason(str, enum.Enum):
    OK = "OK"
    LEADER_QUANTITY_NEGATIVE = "LEADER_QUANTITY_NEGATIVE"
    FOLLOWER_QUANTITY_NEGATIVE = "FOLLOWER_QUANTITY_NEGATIVE"
    NON_CONCAVE_FOLLOWER_PROBLEM = "NON_CONCAVE_FOLLOWER_PROBLEM"


@dataclass(frozen=True)
class EquilibriumOutcome:
    """Equilibrium quantities and payoffs.

    When ``valid`` is false the numeric fields hold the unconstrained
    analytic values, kept for diagnostics. ``follower_at_boundary`` marks
    solutions where the follower's best response was clamped to q2 = 0.
    """

    q1_star: float
    q2_star: float
    p_a: float
    p_b: float
    valid: bool
    reason: Reason
    follower_at_boundary: bool = False

    @property
    def payoffs(self) -> PayoffPair:
        return PayoffPair(self.p_a, self.p_b)


def _interior_response(coeffs: BilinearCoefficients, q1: float) -> float:
    A, B, C, D = coeffs
    return -(A + C * q1) / (2.0 * (B + D * q1))


def reaction_function(params: GameParameters, q1: float, coeffs: BilinearCoefficients | None = None) -> float:
    """Follower's payoff-maximising quantity q2 >= 0 against leader quantity ``q1``."""
    if not (math.isfinite(q1) and q1 >= 0):
        raise DomainError(f"leader quantity must be finite and nonnegative, got {q1!r}")
    if coeffs is None:
        coeffs = bilinear_coefficients(params)
    A, B, C, D = coeffs
    curvature = B + D * q1
    slope = A + C * q1
    if curvature < 0:
        return max(0.0, -slope / (2.0 * curvature))
    if curvature == 0 and slope <= 0:
        return 0.0
    raise NonConcaveError(
        f"follower payoff unbounded in q2 at q1={q1!r} (B + D*q1 = {curvature!r})"
    )


def _classify(coeffs: BilinearCoefficients, q1: float, q2: float) -> Reason:
    A, B, C, D = coeffs
    if q1 < 0:
        return Reason.LEADER_QUANTITY_NEGATIVE
    if B + D * q1 >= 0:
        return Reason.NON_CONCAVE_FOLLOWER_PROBLEM
    if q2 < 0:
        return Reason.FOLLOWER_QUANTITY_NEGATIVE
    return Reason.OK


def _analytic_point(coeffs: BilinearCoefficients) -> tuple[float, float]:
    A, B, C, D = coeffs
    q1 = -A / (2.0 * C)
    curvature = B + D * q1
    q2 = -(A + C * q1) / (2.0 * curvature) if curvature != 0 else math.inf
    return q1, q2


def _outcome(params, coeffs, q1, q2, reason, at_boundary=False) -> EquilibriumOutcome:
    if reason is Reason.OK:
        pa, pb = payoff_pair(params, q1, q2)
    else:
        pa, pb = coeffs.payoffs(q1, q2)
    return EquilibriumOutcome(q1, q2, pa, pb, reason is Reason.OK, reason, at_boundary)


def _concave_interval(coeffs: BilinearCoefficients, q_max: float) -> tuple[float, float] | None:
    """Leader quantities in [0, q_max] for which the follower's problem is strictly concave."""
    _, B, _, D = coeffs
    lo, hi = 0.0, q_max
    if D > 0:
        hi = min(hi, -B / D)
    elif D < 0:
        lo = max(lo, -B / D)
    elif B >= 0:
        return None
    if lo >= hi:
        return None
    # keep strictly inside: the boundary itself is non-concave
    span = 1e-12 * max(1.0, abs(lo), abs(hi))
    lo_in = lo if B + D * lo < 0 else lo + span
    hi_in = hi if B + D * hi < 0 else hi - span
    return (lo_in, hi_in) if lo_in < hi_in else None


def _seed_bracket(f, q0: float, lo: float, hi: float) -> tuple[float, float]:
    """Bracket around the guess ``q0`` that contains the maximiser of unimodal ``f``."""
    c = min(max(q0, lo), hi)
    fc = f(c)
    width = max(1.0, abs(c))
    for _ in range(80):
        a, b = max(lo, c - width), min(hi, c + width)
        left_ok = a == lo or f(a) < fc
        right_ok = b == hi or f(b) < fc
        if left_ok and right_ok:
            return a, b
        width *= 2.0
    raise SolverError(f"could not bracket the leader's maximum around q1={q0!r}")


def backward_induction(params: GameParameters, q_max: float = Q_MAX, tol: float = Q1_TOL) -> EquilibriumOutcome:
    """Solve follower first, then maximise the leader's payoff numerically over [0, q_max]."""
    coeffs = bilinear_coefficients(params)
    A, B, C, D = coeffs
    q1_guess, q2_guess = _analytic_point(coeffs)
    if A < 0:
        # marginal payoff of the leader at q1 = 0 is A/2: it wants a negative quantity
        return _outcome(params, coeffs, q1_guess, q2_guess, Reason.LEADER_QUANTITY_NEGATIVE)

    interval = _concave_interval(coeffs, q_max)
    if interval is None or not (interval[0] <= q1_guess <= interval[1]):
        return _outcome(params, coeffs, q1_guess, q2_guess, Reason.NON_CONCAVE_FOLLOWER_PROBLEM)
    lo, hi = interval

    def leader_payoff(q1: float) -> float:
        try:
            q2 = reaction_function(params, q1, coeffs)
        except NonConcaveError:
            return -math.inf
        return coeffs.payoffs(q1, q2).p_a

    a, b = _seed_bracket(leader_payoff, q1_guess, lo, hi)
    q1 = golden_section_max(leader_payoff, a, b, tol=tol)

    # golden section stalls where payoff differences drop below rounding;
    # one parabolic step recovers the vertex of the locally quadratic objective
    h = 1e-3 * max(1.0, q1)
    if lo <= q1 - h and q1 + h <= hi:
        v = parabolic_vertex(leader_payoff, q1, h)
        if v is not None and abs(v - q1) <= 1e-6 and lo <= v <= hi:
            q1 = v

    q2 = reaction_function(params, q1, coeffs)
    at_boundary = A + C * q1 < 0
    reason = _classify(coeffs, q1, q2)
    if reason is not Reason.OK:
        return _outcome(params, coeffs, q1_guess, q2_guess, reason)
    return _outcome(params, coeffs, q1, q2, reason, at_boundary)


def closed_form_quantities(params: GameParameters) -> tuple[float, float]:
    """Equilibrium quantities from the closed-form expressions in (theta, r, k)."""
    th, r, k = params.theta, params.r, params.k
    c2, s2 = math.cos(th) ** 2, math.sin(th) ** 2
    cr2, sr2 = math.cos(r) ** 2, math.sin(r) ** 2
    margin = c2 * (k * cr2 - sr2)
    weight = cr2 * c2 + s2
    den1 = 2.0 * weight
    den2 = (
        (3 - k + 12 * math.cos(2 * r) + (1 + k) * math.cos(4 * r)) * c2 * c2
        - 8 * c2 * ((-4 + k * k) * cr2 + k * sr2) * s2
        + 16 * s2 * s2
    )
    for name, den in (("q1*", den1), ("q2*", den2)):
        if abs(den) < 1e-300:
            raise DegenerateInstanceError(f"denominator of {name} vanishes at {params}")
    return margin / den1, 4.0 * margin * weight / den2


def closed_form_equilibrium(params: GameParameters) -> EquilibriumOutcome:
    coeffs = bilinear_coefficients(params)
    q1, q2 = closed_form_quantities(params)
    return _outcome(params, coeffs, q1, q2, _classify(coeffs, q1, q2))


def closed_form_payoffs_unentangled(r: float) -> PayoffPair:
    """Equilibrium payoffs at theta = 0, k = 1."""
    r = check_r(r)
    c2r = math.cos(2 * r)
    p_a = c2r**2 / (8 * math.cos(r) ** 2)
    p_b = math.cos(r) ** 2 * c2r / (4 * (3 + c2r))
    return PayoffPair(p_a, p_b)


def closed_form_payoffs_maximal(r: float) -> PayoffPair:
    """Equilibrium payoffs at theta = pi/4, k = 1."""
    r = check_r(r)
    c2r = math.cos(2 * r)
    p_a = c2r**2 / (8 * (3 + c2r))
    p_b = c2r**2 * (3 + c2r) / (32 * math.cos(r) ** 2 * (6 + c2r))
    return PayoffPair(p_a, p_b)


def find_vanishing_r(params: GameParameters) -> float:
    """Smallest r > 0 at which the leader's margin ``k cos^2 r - sin^2 r`` vanishes.

    Equals ``arctan(sqrt(k))`` for every theta < pi/2; the analytic value is
    confirmed by bisection before it is returned.
    """
    if abs(params.theta - HALF_PI) < 1e-12:
        raise DegenerateInstanceError("theta = pi/2: the leader's margin is identically zero")
    analytic = math.atan(math.sqrt(params.k))

    def margin(r: float) -> float:
        return bilinear_coefficients(params.with_(r=r)).A

    numeric = bisect(margin, 0.0, R_DOMAIN_MAX, tol=1e-12)
    if abs(numeric - analytic) > 1e-9:
        raise SolverError(f"vanishing r: bisection {numeric!r} disagrees with arctan(sqrt(k)) {analytic!r}")
    return analytic


def _valid_gap(params: GameParameters, **axis) -> float:
    out = backward_induction(params.with_(**axis))
    if not out.valid:
        raise BracketError(f"equilibrium invalid at {axis} ({out.reason.value})")
    return out.p_a - out.p_b


def find_crossing_r(params: GameParameters, r_lo: float, r_hi: float, tol: float = CROSSING_TOL) -> float:
    """Acceleration in [r_lo, r_hi] at which leader and follower earn the same equilibrium payoff."""
    return bisect(lambda r: _valid_gap(params, r=r), r_lo, r_hi, tol=tol)


def find_crossing_theta(params: GameParameters, theta_lo: float, theta_hi: float, tol: float = CROSSING_TOL) -> float:
    """Entanglement angle in [theta_lo, theta_hi] at which equilibrium payoffs are equal."""
    return bisect(lambda th: _valid_gap(params, theta=th), theta_lo, theta_hi, tol=tol)


def find_breakdown_r(params: GameParameters, r_lo: float = 0.0, r_hi: float = R_DOMAIN_MAX, tol: float = 1e-10) -> float:
    """Acceleration at which the equilibrium stops being valid."""
    return bisect_predicate(lambda r: backward_induction(params.with_(r=r)).valid, r_lo, r_hi, tol=tol)


def scan_crossings(params: GameParameters, r_lo: float, r_hi: float, steps: int = 200) -> list[float]:
    """All payoff crossings in r found by a grid scan over valid equilibria, refined by bisection."""
    grid = [r_lo + i * (r_hi - r_lo) / (steps - 1) for i in range(steps)]
    gaps = []
    for r in grid:
        out = backward_induction(params.with_(r=r))
        gaps.append(out.p_a - out.p_b if out.valid else None)
    roots = []
    for (r0, g0), (r1, g1) in zip(zip(grid, gaps), zip(grid[1:], gaps[1:])):
        if g0 is None or g1 is None:
            continue
        if g0 == 0:
            roots.append(r0)
        elif (g0 > 0) != (g1 > 0) and g1 != 0:
            roots.append(find_crossing_r(params, r0, r1))
    return roots
