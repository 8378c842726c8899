import itertools
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from unruh_duopoly.duopoly_game import (
    GameParameters,
    apply_strategies,
    bilinear_coefficients,
    payoff_pair,
    quantity_to_probability,
)
from unruh_duopoly.errors import DomainError
from unruh_duopoly.rindler_state import closed_form_rho, density_matrix_violations

probs = st.floats(0.0, 1.0)
quantities = st.floats(0.0, 50.0)
params_st = st.builds(
    GameParameters,
    theta=st.floats(0.0, math.pi / 2),
    r=st.floats(0.0, math.pi / 2, exclude_max=True),
    k=st.floats(0.1, 5.0),
)


def flip_by_permutation(rho, flip_a, flip_b):
    """Conjugation by bit flips written as an index permutation on |ab>."""
    def perm(i):
        a, b = divmod(i, 2)
        return 2 * (a ^ flip_a) + (b ^ flip_b)

    out = np.empty_like(rho)
    for i, j in itertools.product(range(4), repeat=2):
        out[i, j] = rho[perm(i), perm(j)]
    return out


def mix_oracle(rho, x, y):
    return (
        x * y * rho
        + x * (1 - y) * flip_by_permutation(rho, 0, 1)
        + y * (1 - x) * flip_by_permutation(rho, 1, 0)
        + (1 - x) * (1 - y) * flip_by_permutation(rho, 1, 1)
    )


@pytest.mark.parametrize("q,expected", [(0, 1.0), (1, 0.5), (3, 0.25)])
def test_quantity_to_probability(q, expected):
    assert quantity_to_probability(q) == expected


@pytest.mark.parametrize("q", [-1e-9, math.inf, math.nan])
def test_quantity_to_probability_domain(q):
    with pytest.raises(DomainError):
        quantity_to_probability(q)


def test_game_parameters_validation():
    assert GameParameters(0.1, 0.2).k == 1.0
    for bad in [dict(theta=-0.1, r=0), dict(theta=0, r=math.pi / 2), dict(theta=0, r=0, k=0.0), dict(theta=0, r=0, k=-1)]:
        with pytest.raises(DomainError):
            GameParameters(**bad)


def test_apply_strategies_identity():
    rho = closed_form_rho(0.4, 0.3)
    np.testing.assert_array_equal(apply_strategies(rho, 1.0, 1.0), rho)


def test_apply_strategies_double_flip():
    rho = np.diag([1, 0, 0, 0]).astype(complex)
    np.testing.assert_allclose(apply_strategies(rho, 0.0, 0.0), np.diag([0, 0, 0, 1]), atol=0)


def test_apply_strategies_uniform_mixture():
    rho = np.diag([1, 0, 0, 0]).astype(complex)
    expected = mix_oracle(rho, 0.5, 0.5)
    np.testing.assert_allclose(expected, np.diag([0.25] * 4), atol=0)
    np.testing.assert_allclose(apply_strategies(rho, 0.5, 0.5), expected, atol=1e-16)


@pytest.mark.parametrize("x,y", [(-0.1, 0.5), (0.5, 1.1)])
def test_apply_strategies_domain(x, y):
    with pytest.raises(DomainError):
        apply_strategies(np.eye(4) / 4, x, y)


@given(st.floats(0.0, math.pi / 2), st.floats(0.0, 1.5), probs, probs)
def test_apply_strategies_matches_oracle_and_stays_a_state(theta, r, x, y):
    rho = closed_form_rho(theta, r)
    out = apply_strategies(rho, x, y)
    np.testing.assert_allclose(out, mix_oracle(rho, x, y), atol=1e-15)
    assert not density_matrix_violations(out)


def test_payoff_classical_limit_example():
    pa, pb = payoff_pair(GameParameters(0.0, 0.0, 1.0), 0.5, 0.25)
    assert pa == pytest.approx(0.125, abs=1e-15)
    assert pb == pytest.approx(0.0625, abs=1e-15)


@given(params_st, quantities)
def test_zero_leader_quantity_zero_payoff(params, q2):
    assert payoff_pair(params, 0.0, q2).p_a == 0.0


def test_payoff_at_maximally_entangled_equilibrium():
    # equilibrium quantities at theta = pi/4, r = 0, k = 1 are (1/4, 1/7)
    pa, pb = payoff_pair(GameParameters(math.pi / 4, 0.0, 1.0), 0.25, 1 / 7)
    assert pa == pytest.approx(1 / 32, abs=1e-15)
    assert pb == pytest.approx(1 / 56, abs=1e-15)


@pytest.mark.parametrize(
    "theta,r,expected",
    [
        (0.0, 0.0, (1.0, -1.0, -1.0, 0.0)),
        (math.pi / 4, 0.0, (0.5, -1.0, -1.0, 0.5)),
    ],
)
def test_bilinear_coefficients_examples(theta, r, expected):
    coeffs = bilinear_coefficients(GameParameters(theta, r, 1.0))
    np.testing.assert_allclose(coeffs, expected, atol=1e-15)


def test_leader_margin_vanishes_at_quarter_pi():
    assert bilinear_coefficients(GameParameters(0.0, math.pi / 4, 1.0)).A == pytest.approx(0.0, abs=1e-15)


@given(params_st)
def test_bilinear_c_is_negative(params):
    assert bilinear_coefficients(params).C < 0


GRID_THETA = np.linspace(0, math.pi / 2, 5)
GRID_R = np.linspace(0, 1.5, 5)
GRID_K = [0.5, 1.0, 2.0]
GRID_Q = np.linspace(0, 3, 10)


@pytest.mark.parametrize("theta", GRID_THETA)
@pytest.mark.parametrize("r", GRID_R)
@pytest.mark.parametrize("k", GRID_K)
def test_trace_path_equals_bilinear_path(theta, r, k):
    params = GameParameters(theta, r, k)
    coeffs = bilinear_coefficients(params)
    for q1, q2 in itertools.product(GRID_Q, GRID_Q):
        trace = payoff_pair(params, q1, q2)
        bil = coeffs.payoffs(q1, q2)
        assert abs(trace.p_a - bil.p_a) <= 1e-10
        assert abs(trace.p_b - bil.p_b) <= 1e-10


def test_classical_reduction_on_grid():
    for k in GRID_K:
        params = GameParameters(0.0, 0.0, k)
        for q1, q2 in itertools.product(GRID_Q, GRID_Q):
            pa, pb = payoff_pair(params, q1, q2)
            assert pa == pytest.approx(q1 * (k - q1 - q2), abs=1e-12)
            assert pb == pytest.approx(q2 * (k - q1 - q2), abs=1e-12)


@given(params_st, st.floats(1e-3, 10.0), st.floats(1e-3, 10.0))
def test_payoffs_share_one_bracket(params, q1, q2):
    pa, pb = payoff_pair(params, q1, q2)
    assert pa * q2 == pytest.approx(pb * q1, abs=1e-12)
