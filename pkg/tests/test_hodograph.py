import numpy as np
import pytest

from zesolver import riemann_green, goursat_solution
from zesolver.errors import CoincidentInvariants
from zesolver.hodograph import CharacteristicBoundaryData, scenario_boundary_data
from zesolver.invariants import lambda_k


def test_kernel_normalization():
    assert riemann_green(2, 10, 2, 10) == 1.0
    assert riemann_green(3.3, 9.1, 3.3, 9.1) == pytest.approx(1.0, rel=1e-14)


def test_kernel_reference_values(hodo):
    # T_int * V(q | mu) is the separation time, T_int * V(q | q1, mu2) the
    # first fan-death time; both figure captions pin the products.
    assert riemann_green(2, 10, 5, 8) == pytest.approx(32 / 3, rel=1e-14)
    assert riemann_green(2, 10, 2, 8) == pytest.approx(16 / 9, rel=1e-14)
    assert hodo.T_int * riemann_green(2, 10, 5, 8) == pytest.approx(2 / 15, rel=1e-14)
    assert hodo.T_int * riemann_green(2, 10, 2, 8) == pytest.approx(1 / 45, rel=1e-14)


def test_kernel_coincident_guard():
    with pytest.raises(CoincidentInvariants):
        riemann_green(2, 10, 4, 4 + 1e-12)


def test_time_surface_reference_values(hodo):
    assert hodo.t(2, 10) == pytest.approx(0.0125, abs=1e-15)
    assert hodo.t(5, 8) == pytest.approx(2 / 15, rel=1e-14)
    assert hodo.t(2, 8) == pytest.approx(1 / 45, rel=1e-14)
    assert hodo.t(5, 10) == pytest.approx(0.032, rel=1e-14)


def test_position_surface_reference_values(hodo):
    assert hodo.x(2, 10) == pytest.approx(1.5, rel=1e-14)  # X_int
    assert hodo.x(2, 8) == pytest.approx(-1 + 128 / 45, rel=1e-13)  # X_3
    assert hodo.x(5, 8) == pytest.approx(31.0, rel=1e-13)  # X_fin


def test_time_positive_and_finite_inside_rectangle(hodo):
    R1, R2 = np.meshgrid(np.linspace(2, 5, 30), np.linspace(8, 10, 30))
    t = hodo.t(R1, R2)
    assert np.all(np.isfinite(t))
    assert np.all(t > 0)


def test_partials_match_finite_differences(hodo):
    h = 1e-6
    for R1, R2 in ((3.0, 9.0), (2.2, 8.4), (4.8, 9.9)):
        d1, d2 = hodo.t_partials(R1, R2)
        fd1 = (hodo.t(R1 + h, R2) - hodo.t(R1 - h, R2)) / (2 * h)
        fd2 = (hodo.t(R1, R2 + h) - hodo.t(R1, R2 - h)) / (2 * h)
        assert d1 == pytest.approx(fd1, rel=1e-6)
        assert d2 == pytest.approx(fd2, rel=1e-6)


def test_partial_at_corner_matches_boundary_derivative(hodo):
    # d/dR1 of the theta-side boundary time at R1 = q1 is
    # -2 T_int (q1-q2)^2 / (q1-q2)^3 = 2 T_int / (q2-q1).
    p = hodo.params
    expected = 2 * hodo.T_int / (p.q2 - p.q1)
    assert hodo.t_partials(p.q1, p.q2)[0] == pytest.approx(expected, rel=1e-12)


def test_partials_index_exchange_symmetry(hodo):
    # The kernel is symmetric in (q1, q2); swapping the two invariant
    # arguments maps dt/dR1 <-> -dt/dR2.
    for R1, R2 in ((2.5, 9.0), (4.0, 8.2)):
        d1, d2 = hodo.t_partials(R1, R2)
        d1s, d2s = hodo.t_partials(R2, R1)
        assert d1s == pytest.approx(-d2, rel=1e-13)
        assert d2s == pytest.approx(-d1, rel=1e-13)


def test_boundary_restrictions_are_exact(hodo):
    p = hodo.params
    R2 = np.linspace(p.mu2, p.q2, 17)
    assert hodo.t(p.q1, R2) == pytest.approx(hodo.t_on_phi(R2), rel=1e-12)
    R1 = np.linspace(p.q1, p.mu1, 17)
    assert hodo.t(R1, p.q2) == pytest.approx(hodo.t_on_theta(R1), rel=1e-12)


def test_hodograph_consistency_relations(hodo):
    # dx/dR2 = lambda1 dt/dR2 and dx/dR1 = lambda2 dt/dR1, checked with
    # central differences of both closed forms.
    h = 1e-6
    R1g = np.linspace(2.05, 4.95, 50)
    R2g = np.linspace(8.05, 9.95, 50)
    worst = 0.0
    for R1 in R1g[::7]:
        for R2 in R2g[::7]:
            x_r1 = (hodo.x(R1 + h, R2) - hodo.x(R1 - h, R2)) / (2 * h)
            x_r2 = (hodo.x(R1, R2 + h) - hodo.x(R1, R2 - h)) / (2 * h)
            t_r1 = (hodo.t(R1 + h, R2) - hodo.t(R1 - h, R2)) / (2 * h)
            t_r2 = (hodo.t(R1, R2 + h) - hodo.t(R1, R2 - h)) / (2 * h)
            r1 = abs(x_r1 - lambda_k(2, R1, R2) * t_r1) / max(abs(x_r1), 1e-300)
            r2 = abs(x_r2 - lambda_k(1, R1, R2) * t_r2) / max(abs(x_r2), 1e-300)
            worst = max(worst, r1, r2)
    assert worst < 1e-6


def test_pde_residual_under_finite_differences(hodo):
    h = 1e-4
    worst = 0.0
    for R1 in np.linspace(2.1, 4.9, 12):
        for R2 in np.linspace(8.1, 9.9, 12):
            t_cross = (
                hodo.t(R1 + h, R2 + h)
                - hodo.t(R1 + h, R2 - h)
                - hodo.t(R1 - h, R2 + h)
                + hodo.t(R1 - h, R2 - h)
            ) / (4 * h * h)
            t_r1 = (hodo.t(R1 + h, R2) - hodo.t(R1 - h, R2)) / (2 * h)
            t_r2 = (hodo.t(R1, R2 + h) - hodo.t(R1, R2 - h)) / (2 * h)
            other = 2.0 * (t_r1 - t_r2) / (R2 - R1)
            rel = abs(t_cross + other) / max(abs(t_cross), abs(other))
            worst = max(worst, rel)
    assert worst < 1e-6


def test_goursat_reproduces_closed_form(hodo):
    data = scenario_boundary_data(hodo)
    assert goursat_solution(data, 2.0, 10.0) == pytest.approx(0.0125, abs=1e-10)
    assert goursat_solution(data, 5.0, 8.0) == pytest.approx(2 / 15, abs=1e-8)
    for R1 in (2.5, 3.5, 4.5):
        for R2 in (8.3, 9.0, 9.7):
            assert goursat_solution(data, R1, R2) == pytest.approx(
                hodo.t(R1, R2), abs=1e-8
            )


def test_goursat_constant_data_normalization():
    data = CharacteristicBoundaryData(
        R1_0=2.0, R2_0=10.0, t0=0.37,
        on_r1_axis=lambda r: 0.37, on_r2_axis=lambda r: 0.37,
    )
    assert goursat_solution(data, 2.0, 10.0) == pytest.approx(0.37, rel=1e-12)


def test_boundary_data_corner_mismatch_rejected():
    with pytest.raises(ValueError):
        CharacteristicBoundaryData(
            R1_0=2.0, R2_0=10.0, t0=1.0,
            on_r1_axis=lambda r: 1.0, on_r2_axis=lambda r: 2.0,
        )
