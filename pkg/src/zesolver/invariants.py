"""State algebra for the two-component electrophoresis system.

The system

    u^k_t + (mu^k u^k / (1 + s))_x = 0,   k = 1, 2,   s = u1 + u2 > -1,

diagonalizes in Riemann invariants (R1, R2) with characteristic speeds
lambda1 = R1*R1*R2 and lambda2 = R1*R2*R2.  This module holds the two state
representations, the maps between them, and the Rankine-Hugoniot residual
used to verify shock speeds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    ComplexRoots,
    DegenerateLeadingCoefficient,
    DivisionByZero,
    NonPhysicalState,
    OrderingViolation,
)


@dataclass(frozen=True)
class MixtureParams:
    """Problem instance: mobilities, plateau invariants, jump positions.

    Valid instances satisfy 0 < q1 < mu1 < mu2 < q2 and x1 < x2.  The initial
    invariants equal (mu1, mu2) outside (x1, x2) and (q1, q2) inside.
    """

    mu1: float
    mu2: float
    q1: float
    q2: float
    x1: float
    x2: float


@dataclass(frozen=True)
class ConcentrationPair:
    """Effective concentrations; s = u1 + u2, E = 1/(1+s) is the field."""

    u1: float
    u2: float

    def __post_init__(self):
        if 1.0 + self.u1 + self.u2 <= 0.0:
            raise NonPhysicalState(
                f"1 + u1 + u2 = {1.0 + self.u1 + self.u2} must be positive"
            )

    @property
    def s(self) -> float:
        return self.u1 + self.u2

    @property
    def E(self) -> float:
        return 1.0 / (1.0 + self.s)


@dataclass(frozen=True)
class InvariantPair:
    """A point (R1, R2) of the hodograph plane."""

    R1: float
    R2: float


def validate_params(p: MixtureParams) -> MixtureParams:
    """Check 0 < q1 < mu1 < mu2 < q2 and x1 < x2; return p unchanged.

    Raises OrderingViolation naming the first inequality that fails.
    """
    chain = [("0", 0.0), ("q1", p.q1), ("mu1", p.mu1), ("mu2", p.mu2), ("q2", p.q2)]
    for (lo_name, lo), (hi_name, hi) in zip(chain, chain[1:]):
        if not lo < hi:
            raise OrderingViolation(
                f"parameter ordering violated: expected 0 < q1 < mu1 < mu2 < q2, "
                f"got {lo_name}={lo} >= {hi_name}={hi}"
            )
    if not p.x1 < p.x2:
        raise OrderingViolation(
            f"parameter ordering violated: expected x1 < x2, got x1={p.x1} >= x2={p.x2}"
        )
    return p


def lambda_k(k: int, R1, R2):
    """Characteristic speed of the k-wave: lambda1 = R1^2 R2, lambda2 = R1 R2^2.

    Accepts scalars or numpy arrays.
    """
    if k == 1:
        return R1 * R1 * R2
    if k == 2:
        return R1 * R2 * R2
    raise ValueError(f"wave index must be 1 or 2, got {k}")


def invariants_to_concentrations(p: MixtureParams, R: InvariantPair) -> ConcentrationPair:
    """Map (R1, R2) to effective concentrations (u1, u2)."""
    u1, u2 = concentrations_from_invariants(p, R.R1, R.R2)
    return ConcentrationPair(float(u1), float(u2))


def concentrations_from_invariants(p: MixtureParams, R1, R2):
    """Array-friendly core of the (R1, R2) -> (u1, u2) map."""
    return u_from_mobilities(p.mu1, p.mu2, R1, R2)


def u_from_mobilities(mu1, mu2, R1, R2):
    """Concentrations from invariants, needing only the two mobilities."""
    prod = np.asarray(R1) * np.asarray(R2)
    if np.any(prod == 0.0):
        raise DivisionByZero("R1*R2 = 0: concentration formulas are singular")
    u1 = mu2 * (R1 - mu1) * (R2 - mu1) / (prod * (mu1 - mu2))
    u2 = mu1 * (R1 - mu2) * (R2 - mu2) / (prod * (mu2 - mu1))
    return u1, u2


def concentrations_to_invariants(p: MixtureParams, u: ConcentrationPair) -> InvariantPair:
    """Invert the concentration map via the characteristic quadratic.

    R1, R2 are the roots of

        (1 + u1 + u2) R^2 - (mu1 + mu2 + u1 mu2 + u2 mu1) R + mu1 mu2 = 0,

    with R1 the smaller root.  Round-trips with invariants_to_concentrations.
    """
    a = 1.0 + u.u1 + u.u2
    if a == 0.0:
        raise DegenerateLeadingCoefficient("1 + u1 + u2 = 0")
    b = p.mu1 + p.mu2 + u.u1 * p.mu2 + u.u2 * p.mu1
    c = p.mu1 * p.mu2
    disc = b * b - 4.0 * a * c
    if disc < 0.0:
        raise ComplexRoots(f"discriminant {disc} < 0: no real invariants")
    # Roots of a R^2 - b R + c; grouping avoids cancellation for |b| large.
    sq = math.sqrt(disc)
    qq = 0.5 * (b + math.copysign(sq, b))
    r_a = qq / a
    r_b = c / qq if qq != 0.0 else r_a
    return InvariantPair(min(r_a, r_b), max(r_a, r_b))


def rh_residual(p: MixtureParams, D: float, left: InvariantPair, right: InvariantPair):
    """Rankine-Hugoniot residual pair for a discontinuity moving at speed D.

    For k = 1, 2 returns

        D * [ (mu^k - R1)(mu^k - R2) / (mu^k R1 R2) ] - [ (mu^k - R1)(mu^k - R2) ]

    where [.] is the right-minus-left jump.  Exact shocks give (0, 0).
    """
    for R in (left, right):
        if R.R1 * R.R2 == 0.0:
            raise DivisionByZero("zero invariant on a shock side")

    def jump(fn):
        return fn(right) - fn(left)

    out = []
    for mu in (p.mu1, p.mu2):
        g = lambda R: (mu - R.R1) * (mu - R.R2) / (mu * R.R1 * R.R2)
        h = lambda R: (mu - R.R1) * (mu - R.R2)
        out.append(D * jump(g) - jump(h))
    return tuple(out)
