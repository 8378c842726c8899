"""Bracketed scalar search: golden-section maximisation and bisection."""

from __future__ import annotations

import math
from typing import Callable

from .errors import BracketError, SolverError

INV_PHI = (math.sqrt(5) - 1) / 2
INV_PHI2 = (3 - math.sqrt(5)) / 2


def golden_section_max(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float = 1e-10,
    max_iter: int = 500,
) -> float:
    """Maximise a unimodal ``f`` on ``[a, b]`` to absolute tolerance ``tol``.

    Ties keep the left sub-interval, so a flat maximum resolves to its
    smallest point. Raises SolverError if ``max_iter`` is exhausted.
    """
    a, b = min(a, b), max(a, b)
    h = b - a
    if h <= tol:
        return a
    c = a + INV_PHI2 * h
    d = a + INV_PHI * h
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if h <= tol:
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            h = b - a
            c = a + INV_PHI2 * h
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            h = b - a
            d = a + INV_PHI * h
            fd = f(d)
    else:
        raise SolverError(f"golden-section search did not reach tol={tol} in {max_iter} iterations")
    # the interval endpoints themselves are never evaluated
    best_x, best_f = (c, fc) if fc >= fd else (d, fd)
    for x in (a, b):
        fx = f(x)
        if fx > best_f or (fx == best_f and x < best_x):
            best_x, best_f = x, fx
    return best_x


def parabolic_vertex(f: Callable[[float], float], x: float, h: float) -> float | None:
    """Vertex of the parabola through ``x - h, x, x + h``, or None if not a maximum."""
    fl, fm, fr = f(x - h), f(x), f(x + h)
    curv = fl - 2 * fm + fr
    if not curv < 0:
        return None
    return x + h * (fl - fr) / (2 * curv)


def bisect(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = 1e-10,
    max_iter: int = 200,
) -> float:
    """Root of ``f`` on ``[lo, hi]`` by bisection; ``f(lo)`` and ``f(hi)`` must differ in sign."""
    flo, fhi = f(lo), f(hi)
    if flo == 0:
        return lo
    if fhi == 0:
        return hi
    if (flo > 0) == (fhi > 0):
        raise BracketError(f"no sign change on [{lo}, {hi}]: f = {flo!r}, {fhi!r}")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if hi - lo <= tol or mid in (lo, hi):
            return mid
        fm = f(mid)
        if fm == 0:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    raise SolverError(f"bisection did not reach tol={tol} in {max_iter} iterations")


def bisect_predicate(pred: Callable[[float], bool], lo: float, hi: float, tol: float = 1e-10) -> float:
    """Boundary between ``pred(lo)`` and ``not pred(lo)`` on ``[lo, hi]``."""
    return bisect(lambda x: 1.0 if pred(x) else -1.0, lo, hi, tol=tol)
