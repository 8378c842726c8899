"""Two-firm quantum state seen from firm B's uniformly accelerated frame.

Firm A stays inertial, firm B accelerates. B's Minkowski mode splits into
Rindler modes I and II; region II is causally disconnected from B and is
traced out, leaving a 4x4 density matrix over |00>, |01>, |10>, |11>.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import ContractError, DomainError

HALF_PI = math.pi / 2
QUARTER_PI = math.pi / 4

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10
NORM_TOL = 1e-9


def check_theta(theta: float) -> float:
    theta = float(theta)
    if not (0.0 <= theta <= HALF_PI):
        raise DomainError(f"entanglement angle theta={theta!r} outside [0, pi/2]")
    return theta


def check_r(r: float) -> float:
    r = float(r)
    if not (0.0 <= r < HALF_PI):
        raise DomainError(f"acceleration parameter r={r!r} outside [0, pi/2)")
    return r


def acceleration_to_r(a: float, omega: float, c: float) -> float:
    """Map a proper acceleration to the squeezing angle r.

    ``cos r = (exp(-2*pi*omega*c/a) + 1) ** -0.5``. Units are not fixed;
    ``2*pi*omega*c/a`` is treated as one dimensionless exponent, so the
    caller must pass consistent units. The result lies in [0, pi/4).
    """
    for name, value in (("a", a), ("omega", omega), ("c", c)):
        if not (math.isfinite(value) and value > 0):
            raise DomainError(f"{name} must be finite and positive, got {value!r}")
    exponent = -2.0 * math.pi * omega * c / a
    return math.acos((math.exp(exponent) + 1.0) ** -0.5)


def initial_state(theta: float) -> np.ndarray:
    """Amplitudes of cos(theta)|00> + sin(theta)|11>."""
    theta = check_theta(theta)
    return np.array([math.cos(theta), 0.0, 0.0, math.sin(theta)], dtype=complex)


def unruh_expand(theta: float, r: float) -> np.ndarray:
    """Pure state over (A, Rindler I, Rindler II) as a (2, 2, 2) array.

    Uses |0>_M = cos r |0>_I|0>_II + sin r |1>_I|1>_II and
    |1>_M = |1>_I|0>_II for firm B's mode.
    """
    theta = check_theta(theta)
    r = check_r(r)
    amp = np.zeros((2, 2, 2), dtype=complex)
    amp[0, 0, 0] = math.cos(theta) * math.cos(r)
    amp[0, 1, 1] = math.cos(theta) * math.sin(r)
    amp[1, 1, 0] = math.sin(theta)
    return amp


def trace_out_region_II(psi: np.ndarray) -> np.ndarray:
    """Reduced density matrix of (A, I) after tracing out Rindler region II."""
    psi = np.asarray(psi, dtype=complex)
    if psi.shape != (2, 2, 2):
        raise ContractError(f"expected (2, 2, 2) amplitudes, got shape {psi.shape}")
    norm = float(np.sum(np.abs(psi) ** 2))
    if abs(norm - 1.0) > NORM_TOL:
        raise ContractError(f"tripartite state not normalised: sum |amp|^2 = {norm!r}")
    flat = psi.reshape(4, 2)  # rows (a, i), columns j
    return flat @ flat.conj().T


def closed_form_rho(theta: float, r: float) -> np.ndarray:
    theta = check_theta(theta)
    r = check_r(r)
    ct, st = math.cos(theta), math.sin(theta)
    cr, sr = math.cos(r), math.sin(r)
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = cr * cr * ct * ct
    rho[1, 1] = ct * ct * sr * sr
    # rho[2, 2] stays an exact zero
    rho[3, 3] = st * st
    rho[0, 3] = rho[3, 0] = cr * ct * st
    return rho


def density_matrix_violations(m: np.ndarray) -> list[str]:
    """Return a description of every density-matrix invariant ``m`` breaks."""
    m = np.asarray(m)
    if m.shape != (4, 4):
        return [f"shape {m.shape} is not (4, 4)"]
    problems = []
    herm = float(np.max(np.abs(m - m.conj().T)))
    if herm > HERMITIAN_TOL:
        problems.append(f"not Hermitian (max |m - m^H| = {herm:.3g})")
    tr = complex(np.trace(m))
    if abs(tr - 1.0) > TRACE_TOL:
        problems.append(f"trace {tr} != 1")
    eig_min = float(np.min(np.linalg.eigvalsh((m + m.conj().T) / 2)))
    if eig_min < -PSD_TOL:
        problems.append(f"not PSD (min eigenvalue {eig_min:.3g})")
    return problems


def is_density_matrix(m: np.ndarray) -> bool:
    return not density_matrix_violations(m)


def check_density_matrix(m: np.ndarray) -> np.ndarray:
    problems = density_matrix_violations(m)
    if problems:
        raise ContractError("invalid density matrix: " + "; ".join(problems))
    return m


def _fmt_real(x: float) -> str:
    # + 0.0 folds -0.0 into 0.0
    return repr(float(x) + 0.0)


def format_density_matrix(m: np.ndarray) -> str:
    """Debug dump: 4 lines of 4 comma-separated ``re+imj`` entries, row-major."""
    lines = []
    for row in np.asarray(m, dtype=complex):
        cells = []
        for z in row:
            im = _fmt_real(z.imag)
            sign = "" if im.startswith("-") else "+"
            cells.append(f"{_fmt_real(z.real)}{sign}{im}j")
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"
