"""Payoffs of the quantum Stackelberg duopoly for arbitrary quantities.

Each firm mixes the identity and the bit flip. Quantities map to identity
probabilities through ``x = 1/(1+q1)``, ``y = 1/(1+q2)``; the payoffs are
read off the diagonal of the strategy-mixed density matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DomainError
from .rindler_state import check_r, check_theta, closed_form_rho

IDENTITY = np.eye(2, dtype=complex)
BIT_FLIP = np.array([[0, 1], [1, 0]], dtype=complex)

_I_C = np.kron(IDENTITY, BIT_FLIP)
_C_I = np.kron(BIT_FLIP, IDENTITY)
_C_C = np.kron(BIT_FLIP, BIT_FLIP)


@dataclass(frozen=True)
class GameParameters:
    """One game instance: entanglement angle, acceleration parameter, demand constant."""

    theta: float
    r: float
    k: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "theta", check_theta(self.theta))
        object.__setattr__(self, "r", check_r(self.r))
        k = float(self.k)
        if not (math.isfinite(k) and k > 0):
            raise DomainError(f"demand constant k must be finite and positive, got {k!r}")
        object.__setattr__(self, "k", k)

    def with_(self, **changes) -> "GameParameters":
        fields = {"theta": self.theta, "r": self.r, "k": self.k}
        fields.update(changes)
        return GameParameters(**fields)


class PayoffPair(NamedTuple):
    p_a: float
    p_b: float


class BilinearCoefficients(NamedTuple):
    """Coefficients of the shared payoff bracket ``A + B*q2 + C*q1 + D*q1*q2``.

    ``P_A = q1 * bracket`` and ``P_B = q2 * bracket``.
    """

    A: float
    B: float
    C: float
    D: float

    def bracket(self, q1: float, q2: float) -> float:
        return self.A + self.B * q2 + self.C * q1 + self.D * q1 * q2

    def payoffs(self, q1: float, q2: float) -> PayoffPair:
        # no domain check: also used for diagnostic (possibly negative) quantities
        e = self.bracket(q1, q2)
        return PayoffPair(q1 * e, q2 * e)


def quantity_to_probability(q: float) -> float:
    q = float(q)
    if not math.isfinite(q) or q < 0:
        raise DomainError(f"quantity must be finite and nonnegative, got {q!r}")
    return 1.0 / (1.0 + q)


def apply_strategies(rho: np.ndarray, x: float, y: float) -> np.ndarray:
    """Mix ``rho`` under A's (I w.p. x, C w.p. 1-x) and B's (I w.p. y, C w.p. 1-y)."""
    for name, p in (("x", x), ("y", y)):
        if not (0.0 <= p <= 1.0):
            raise DomainError(f"probability {name}={p!r} outside [0, 1]")
    rho = np.asarray(rho, dtype=complex)
    return (
        x * y * rho
        + x * (1 - y) * (_I_C @ rho @ _I_C.conj().T)
        + y * (1 - x) * (_C_I @ rho @ _C_I.conj().T)
        + (1 - x) * (1 - y) * (_C_C @ rho @ _C_C.conj().T)
    )


def payoff_pair(params: GameParameters, q1: float, q2: float) -> PayoffPair:
    """Payoffs of leader (A) and follower (B) via the density-matrix route."""
    x = quantity_to_probability(q1)
    y = quantity_to_probability(q2)
    rho_f = apply_strategies(closed_form_rho(params.theta, params.r), x, y)
    d = rho_f.diagonal().real
    e = params.k * d[0] - d[1] - d[2]
    inv_q12 = (1.0 + q1) * (1.0 + q2)
    return PayoffPair(float(q1 * inv_q12 * e), float(q2 * inv_q12 * e))


def bilinear_coefficients(params: GameParameters) -> BilinearCoefficients:
    ct2 = math.cos(params.theta) ** 2
    p = math.cos(params.r) ** 2 * ct2
    s = math.sin(params.r) ** 2 * ct2
    t = math.sin(params.theta) ** 2
    k = params.k
    return BilinearCoefficients(A=k * p - s, B=k * s - p - t, C=-(p + t), D=k * t - s)
