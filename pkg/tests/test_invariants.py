from types import SimpleNamespace

import numpy as np
import pytest

from zesolver import (
    ConcentrationPair,
    InvariantPair,
    MixtureParams,
    concentrations_to_invariants,
    invariants_to_concentrations,
    lambda_k,
    rh_residual,
    validate_params,
)
from zesolver.errors import (
    ComplexRoots,
    DegenerateLeadingCoefficient,
    DivisionByZero,
    NonPhysicalState,
    OrderingViolation,
)


def test_validate_accepts_reference_parameters(params):
    assert validate_params(params) is params


def test_validate_rejects_equal_q1_mu1():
    p = MixtureParams(mu1=5, mu2=8, q1=5, q2=10, x1=-1, x2=1)
    with pytest.raises(OrderingViolation, match="q1=5"):
        validate_params(p)


def test_validate_rejects_swapped_positions():
    p = MixtureParams(mu1=5, mu2=8, q1=2, q2=10, x1=1, x2=-1)
    with pytest.raises(OrderingViolation, match="x1"):
        validate_params(p)


def test_characteristic_speeds():
    assert lambda_k(1, 2.0, 10.0) == 40.0
    assert lambda_k(2, 2.0, 10.0) == 200.0
    # The slow speed at (5, 8) equals 5*5*8, the same product as the
    # 2-shock speed check value.
    assert lambda_k(1, 5.0, 8.0) == 200.0
    with pytest.raises(ValueError):
        lambda_k(3, 1.0, 2.0)


def test_speeds_ordered_on_reachable_rectangle(params):
    R1, R2 = np.meshgrid(np.linspace(2, 5, 21), np.linspace(8, 10, 21))
    assert np.all(lambda_k(1, R1, R2) < lambda_k(2, R1, R2))


def test_genuine_nonlinearity_proxy(params):
    # lambda1 strictly increasing in R1 at fixed R2 and vice versa.
    R1 = np.linspace(2, 5, 50)
    for R2 in (8.0, 9.0, 10.0):
        assert np.all(np.diff(lambda_k(1, R1, R2)) > 0)
    R2 = np.linspace(8, 10, 50)
    for R1 in (2.0, 3.5, 5.0):
        assert np.all(np.diff(lambda_k(2, R1, R2)) > 0)


def test_concentrations_at_outer_plateau(params):
    u = invariants_to_concentrations(params, InvariantPair(5.0, 8.0))
    assert u.u1 == 0.0 and u.u2 == 0.0


def test_concentrations_at_inner_plateau(params):
    u = invariants_to_concentrations(params, InvariantPair(2.0, 10.0))
    assert u.u1 == pytest.approx(2.0, abs=1e-14)
    assert u.u2 == pytest.approx(-1.0, abs=1e-14)
    assert u.s == pytest.approx(1.0)
    assert u.E == pytest.approx(0.5)


def test_concentrations_mixed_state(params):
    u = invariants_to_concentrations(params, InvariantPair(2.0, 8.0))
    assert u.u1 == pytest.approx(1.5, abs=1e-14)
    assert u.u2 == 0.0


def test_zero_invariant_rejected(params):
    with pytest.raises(DivisionByZero):
        invariants_to_concentrations(params, InvariantPair(0.0, 8.0))


def test_inverse_map_examples(params):
    R = concentrations_to_invariants(params, ConcentrationPair(0.0, 0.0))
    assert (R.R1, R.R2) == (5.0, 8.0)
    R = concentrations_to_invariants(params, ConcentrationPair(2.0, -1.0))
    assert R.R1 == pytest.approx(2.0, rel=1e-14)
    assert R.R2 == pytest.approx(10.0, rel=1e-14)
    R = concentrations_to_invariants(params, ConcentrationPair(1.5, 0.0))
    assert R.R1 == pytest.approx(2.0, rel=1e-14)
    assert R.R2 == pytest.approx(8.0, rel=1e-14)


def test_inverse_map_complex_roots(params):
    with pytest.raises(ComplexRoots):
        concentrations_to_invariants(params, ConcentrationPair(-1.0, 0.5))


def test_inverse_map_degenerate_leading_coefficient(params):
    # The ConcentrationPair type forbids 1+s <= 0, so probe the solver with
    # a bare state object.
    with pytest.raises(DegenerateLeadingCoefficient):
        concentrations_to_invariants(params, SimpleNamespace(u1=-0.5, u2=-0.5))


def test_concentration_pair_requires_positive_conductivity():
    with pytest.raises(NonPhysicalState):
        ConcentrationPair(-0.5, -0.5)


def test_round_trip_on_random_reachable_states(params):
    rng = np.random.default_rng(7)
    for _ in range(1000):
        R1 = rng.uniform(params.q1, params.mu1)
        R2 = rng.uniform(params.mu2, params.q2)
        u = invariants_to_concentrations(params, InvariantPair(R1, R2))
        back = concentrations_to_invariants(params, u)
        assert back.R1 == pytest.approx(R1, rel=1e-12)
        assert back.R2 == pytest.approx(R2, rel=1e-12)


def test_conductivity_positive_on_reachable_rectangle(params):
    from zesolver.invariants import concentrations_from_invariants

    R1, R2 = np.meshgrid(np.linspace(2, 5, 40), np.linspace(8, 10, 40))
    u1, u2 = concentrations_from_invariants(params, R1, R2)
    assert np.all(u1 + u2 > -1.0)


def test_rh_residual_initial_shocks(params):
    # 1-shock between (mu1, mu2) and (q1, mu2) at D = q1*mu1*mu2.
    res = rh_residual(params, 80.0, InvariantPair(5, 8), InvariantPair(2, 8))
    assert res == pytest.approx((0.0, 0.0), abs=1e-14)
    # 2-shock between (mu1, q2) and (mu1, mu2) at D = mu1*mu2*q2.
    res = rh_residual(params, 400.0, InvariantPair(5, 10), InvariantPair(5, 8))
    assert res == pytest.approx((0.0, 0.0), abs=1e-14)


def test_rh_residual_zero_jump(params):
    st = InvariantPair(3.0, 9.0)
    assert rh_residual(params, 123.0, st, st) == (0.0, 0.0)


def test_rh_residual_zero_invariant_rejected(params):
    with pytest.raises(DivisionByZero):
        rh_residual(params, 1.0, InvariantPair(0.0, 8.0), InvariantPair(2.0, 8.0))
