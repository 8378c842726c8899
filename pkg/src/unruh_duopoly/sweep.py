"""Parameter sweeps over r or theta, emitted as deterministic CSV."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from .duopoly_game import GameParameters
from .equilibrium import (
    EquilibriumOutcome,
    backward_induction,
    closed_form_payoffs_maximal,
    closed_form_payoffs_unentangled,
)
from .errors import DomainError
from .rindler_state import QUARTER_PI

SWEEP_HEADER = (
    "theta", "r", "k", "q1_star", "q2_star", "payoff_A", "payoff_B",
    "valid", "reason", "closed_payoff_A", "closed_payoff_B",
)


def fmt(x: float | None) -> str:
    """Shortest round-trip text for a float; empty for None."""
    if x is None:
        return ""
    return repr(float(x) + 0.0)


def csv_line(cells: Iterable[str]) -> str:
    return ",".join(cells) + "\n"


@dataclass(frozen=True)
class SweepSpec:
    axis: str
    lo: float
    hi: float
    steps: int
    fixed: GameParameters

    def __post_init__(self):
        if self.axis not in ("r", "theta"):
            raise DomainError(f"sweep axis must be 'r' or 'theta', got {self.axis!r}")
        if not (math.isfinite(self.lo) and math.isfinite(self.hi) and self.lo < self.hi):
            raise DomainError(f"sweep needs finite lo < hi, got lo={self.lo!r}, hi={self.hi!r}")
        if int(self.steps) != self.steps or self.steps < 2:
            raise DomainError(f"sweep needs an integer steps >= 2, got {self.steps!r}")

    def values(self) -> list[float]:
        # linspace pins both endpoints exactly
        return [float(v) for v in np.linspace(self.lo, self.hi, int(self.steps))]

    def points(self) -> list[GameParameters]:
        return [self.fixed.with_(**{self.axis: v}) for v in self.values()]


def closed_form_payoffs(params: GameParameters):
    """Closed-form equilibrium payoffs where they are known (k = 1, theta in {0, pi/4}), else None."""
    if params.k != 1.0:
        return None
    if params.theta == 0.0:
        return closed_form_payoffs_unentangled(params.r)
    if math.isclose(params.theta, QUARTER_PI, rel_tol=0.0, abs_tol=1e-12):
        return closed_form_payoffs_maximal(params.r)
    return None


def sweep_row(params: GameParameters, out: EquilibriumOutcome | None = None) -> list[str]:
    if out is None:
        out = backward_induction(params)
    closed = closed_form_payoffs(params) if out.valid else None
    return [
        fmt(params.theta), fmt(params.r), fmt(params.k),
        fmt(out.q1_star), fmt(out.q2_star),
        fmt(out.p_a if out.valid else None), fmt(out.p_b if out.valid else None),
        "true" if out.valid else "false", out.reason.value,
        fmt(closed.p_a if closed else None), fmt(closed.p_b if closed else None),
    ]


def run_sweep(spec: SweepSpec, jobs: int = 1) -> Iterator[str]:
    """Yield the CSV header and one line per grid point in ascending axis order."""
    points = spec.points()
    yield csv_line(SWEEP_HEADER)
    if jobs <= 1:
        rows = map(sweep_row, points)
        for row in rows:
            yield csv_line(row)
        return
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        for row in pool.map(sweep_row, points):
            yield csv_line(row)
