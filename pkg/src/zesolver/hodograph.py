"""Hodograph-plane solution of the wave-interaction region.

Swapping dependent and independent variables turns the quasilinear system
into a linear second-order equation for t(R1, R2),

    t_{R1 R2} + 2 (t_{R1} - t_{R2}) / (R2 - R1) = 0,

whose Riemann-Green function V is known in closed form.  With boundary data
on the two characteristics bounding the interaction region the Goursat
solution collapses to

    t(R1, R2) = T_int * V(q1, q2 | R1, R2),

and x(R1, R2) follows from the same kernel after the substitution R -> 1/R.
This module provides the kernel, the closed-form pair (t, x) with exact
partial derivatives, and a generic quadrature-based Goursat evaluator.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.integrate import quad

from .errors import CoincidentInvariants, QuadratureFailure
from .invariants import MixtureParams, lambda_k, validate_params

#: |R1 - R2| below this (times scale) counts as a coincident-invariant misuse.
COINCIDENT_RTOL = 1e-9


def _check_separated(R1, R2):
    scale = np.maximum(1.0, np.maximum(np.abs(R1), np.abs(R2)))
    if np.any(np.abs(np.asarray(R1) - np.asarray(R2)) < COINCIDENT_RTOL * scale):
        raise CoincidentInvariants("R1 and R2 coincide: (R1-R2)^3 denominator")


def riemann_green(r1, r2, R1, R2):
    """Riemann-Green kernel V(r1, r2 | R1, R2) of the hodograph equation.

    V = ((R1+R2)(r1+r2) - 2(R1 R2 + r1 r2)) (r1 - r2) / (R1 - R2)^3,
    normalized so V(r1, r2 | r1, r2) = 1.
    """
    _check_separated(R1, R2)
    num = ((R1 + R2) * (r1 + r2) - 2.0 * (R1 * R2 + r1 * r2)) * (r1 - r2)
    return num / (R1 - R2) ** 3


class ImplicitSolution:
    """Closed-form implicit solution t(R1, R2), x(R1, R2) for one instance.

    Normalized so t(q1, q2) = T_int, the birth time of the interaction
    region.  Evaluators accept scalars or numpy arrays.
    """

    def __init__(self, params: MixtureParams):
        self.params = validate_params(params)
        p = params
        self.T_int = (p.x2 - p.x1) / (p.q1 * p.q2 * (p.q2 - p.q1))
        self.X_int = (p.x1 * p.q1 - p.x2 * p.q2) / (p.q1 - p.q2)

    # -- time ---------------------------------------------------------------

    def t(self, R1, R2):
        """t(R1, R2) = T_int * V(q1, q2 | R1, R2), expanded in closed form."""
        p = self.params
        _check_separated(R1, R2)
        num = 2.0 * R1 * R2 + 2.0 * p.q1 * p.q2 - (p.q1 + p.q2) * (R1 + R2)
        return (p.x2 - p.x1) * num / (p.q1 * p.q2 * (R1 - R2) ** 3)

    def t_partials(self, R1, R2):
        """Exact (dt/dR1, dt/dR2) of the closed form.

        With C = (x2-x1)/(q1 q2), S = q1+q2, d = R1-R2 and
        N = 2 R1 R2 + 2 q1 q2 - S (R1+R2):

            dt/dR1 = C ((2 R2 - S) d - 3 N) / d^4
            dt/dR2 = C ((2 R1 - S) d + 3 N) / d^4
        """
        p = self.params
        _check_separated(R1, R2)
        C = (p.x2 - p.x1) / (p.q1 * p.q2)
        S = p.q1 + p.q2
        d = R1 - R2
        N = 2.0 * R1 * R2 + 2.0 * p.q1 * p.q2 - S * (R1 + R2)
        t_r1 = C * ((2.0 * R2 - S) * d - 3.0 * N) / d**4
        t_r2 = C * ((2.0 * R1 - S) * d + 3.0 * N) / d**4
        return t_r1, t_r2

    # -- position -----------------------------------------------------------

    def x(self, R1, R2):
        """x(R1, R2) obtained from the kernel under t <-> x, R -> 1/R."""
        p = self.params
        _check_separated(R1, R2)
        d3 = (R1 - R2) ** 3
        term1 = (
            (p.x2 - p.x1)
            * (R1 * R2) ** 2
            * (R2 + R1 - 2.0 * (p.q1 + p.q2))
            / (p.q1 * p.q2 * d3)
        )
        term2 = (
            p.x1 * R1**3 - p.x2 * R2**3 + 3.0 * R1 * R2 * (R2 * p.x2 - R1 * p.x1)
        ) / d3
        return term1 + term2

    def x_partials(self, R1, R2):
        """(dx/dR1, dx/dR2) via the hodograph relations x_Rk = lambda^(3-k) t_Rk."""
        t_r1, t_r2 = self.t_partials(R1, R2)
        return lambda_k(2, R1, R2) * t_r1, lambda_k(1, R1, R2) * t_r2

    # -- characteristic boundary restrictions -------------------------------

    def t_on_phi(self, R2):
        """Time along the left bounding characteristic R1 = q1."""
        p = self.params
        return self.T_int * (p.q2 - p.q1) ** 2 / (R2 - p.q1) ** 2

    def t_on_theta(self, R1):
        """Time along the right bounding characteristic R2 = q2."""
        p = self.params
        return self.T_int * (p.q1 - p.q2) ** 2 / (R1 - p.q2) ** 2


@dataclass(frozen=True)
class CharacteristicBoundaryData:
    """Goursat data: t prescribed on the two characteristics of a corner.

    on_r1_axis(R1) is t(R1, R2_0); on_r2_axis(R2) is t(R1_0, R2).  Both must
    agree with t0 at the corner (R1_0, R2_0).
    """

    R1_0: float
    R2_0: float
    t0: float
    on_r1_axis: Callable[[float], float]
    on_r2_axis: Callable[[float], float]

    def __post_init__(self):
        for corner in (self.on_r1_axis(self.R1_0), self.on_r2_axis(self.R2_0)):
            if abs(corner - self.t0) > 1e-9 * max(1.0, abs(self.t0)):
                raise ValueError(
                    f"boundary data disagree at the corner: {corner} vs {self.t0}"
                )


def scenario_boundary_data(sol: ImplicitSolution) -> CharacteristicBoundaryData:
    """Boundary data carried by the weak-discontinuity curves of the scenario."""
    p = sol.params
    return CharacteristicBoundaryData(
        R1_0=p.q1,
        R2_0=p.q2,
        t0=sol.T_int,
        on_r1_axis=sol.t_on_theta,
        on_r2_axis=sol.t_on_phi,
    )


def goursat_solution(data: CharacteristicBoundaryData, R1: float, R2: float) -> float:
    """Evaluate the Goursat solution with kernel V at a hodograph point.

    t = -V(R1_0, R2_0 | R1, R2) t0
        + 2 (R1-R1_0)(R2-R1_0) H2(R2) / (R1-R2)^3
        - 2 (R1-R2_0)(R2-R2_0) H1(R1) / (R1-R2)^3
        + (R1-R2_0)^2 t(R1, R2_0) / (R1-R2)^2
        + (R2-R1_0)^2 t(R1_0, R2) / (R1-R2)^2

    with H1, H2 the running integrals of the boundary data, computed here by
    adaptive quadrature (abs tolerance 1e-10).
    """
    _check_separated(R1, R2)
    H1 = _boundary_integral(data.on_r1_axis, data.R1_0, R1)
    H2 = _boundary_integral(data.on_r2_axis, data.R2_0, R2)
    d = R1 - R2
    V0 = riemann_green(data.R1_0, data.R2_0, R1, R2)
    return (
        -V0 * data.t0
        + 2.0 * (R1 - data.R1_0) * (R2 - data.R1_0) * H2 / d**3
        - 2.0 * (R1 - data.R2_0) * (R2 - data.R2_0) * H1 / d**3
        + (R1 - data.R2_0) ** 2 * data.on_r1_axis(R1) / d**2
        + (R2 - data.R1_0) ** 2 * data.on_r2_axis(R2) / d**2
    )


def _boundary_integral(fn, a, b):
    if a == b:
        return 0.0
    import warnings

    from scipy.integrate import IntegrationWarning

    with warnings.catch_warnings():
        warnings.simplefilter("error", IntegrationWarning)
        try:
            val, abserr = quad(fn, a, b, epsabs=1e-10, epsrel=1e-12, limit=200)
        except IntegrationWarning as exc:
            raise QuadratureFailure(f"boundary quadrature failed: {exc}") from exc
    if abserr > 1e-8 * max(1.0, abs(val)):
        raise QuadratureFailure(
            f"boundary quadrature error estimate {abserr} too large on [{a}, {b}]"
        )
    return val
