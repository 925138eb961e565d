"""Explicit profiles on isochrones t = t* of the implicit solution.

Inside the interaction zone the map (R1, R2) -> (t, x) is known in closed
form; on a level line t(R1, R2) = t* the inverse map satisfies the ODE pair

    dR1/dx = -t_R2 / Delta,   dR2/dx = t_R1 / Delta,
    Delta  = (lambda1 - lambda2) t_R1 t_R2,

integrated between the moving weak boundaries.  The transport zones created
after the fan deaths are one-parameter families x(rho) at fixed t*, and the
curved shocks created after T_9 / T_10 obey an implicit ODE for the invariant
value carried just behind the shock.  This module reconstructs all of them
and assembles complete profiles across every zone.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq

from . import wavefield
from .errors import (
    DomainError,
    DomainExit,
    EndpointMismatch,
    IntegrationFailure,
    NoRootInInterval,
    NonMonotoneParametrization,
    PhaseGap,
)
from .hodograph import ImplicitSolution
from .invariants import MixtureParams, concentrations_from_invariants, lambda_k
from .wavefield import Timeline, build_timeline

ODE_RTOL = 1e-10
ODE_ATOL = 1e-12
#: |interval| below this counts as a degenerate (point) zone.
DEGENERATE_WIDTH = 1e-12

_trapz = getattr(np, "trapezoid", None) or np.trapz


@dataclass
class Profile:
    """Sampled solution along an isochrone, ordered by x and tagged by zone.

    x is non-decreasing; it is strictly increasing within each zone run and
    repeats only at zone boundaries, where both one-sided states are kept
    (shocks are genuinely two-valued there).
    """

    t_star: float
    x: np.ndarray
    R1: np.ndarray
    R2: np.ndarray
    u1: np.ndarray
    u2: np.ndarray
    zone: list

    def __post_init__(self):
        if np.any(np.diff(self.x) < 0):
            raise PhaseGap("profile samples are not ordered by x")
        for _, sl in self.zone_runs():
            if np.any(np.diff(self.x[sl]) <= 0) and sl.stop - sl.start > 1:
                raise PhaseGap("x not strictly increasing inside a zone run")

    def zone_runs(self):
        """Contiguous runs of equal zone label, as (label, slice) pairs."""
        runs = []
        start = 0
        for i in range(1, len(self.zone) + 1):
            if i == len(self.zone) or self.zone[i] != self.zone[start]:
                runs.append((self.zone[start], slice(start, i)))
                start = i
        return runs

    def mass(self):
        """(integral of u1 dx, integral of u2 dx) by per-zone trapezoid."""
        m1 = m2 = 0.0
        for _, sl in self.zone_runs():
            if sl.stop - sl.start < 2:
                continue
            m1 += _trapz(self.u1[sl], self.x[sl])
            m2 += _trapz(self.u2[sl], self.x[sl])
        return m1, m2

    def interp(self, xq):
        """Zone-aware linear interpolation of (u1, u2) at query points.

        Queries must lie inside [x[0], x[-1]]; a query exactly on a shock
        position resolves to the left zone's value.
        """
        xq = np.atleast_1d(np.asarray(xq, dtype=float))
        if xq.min() < self.x[0] - 1e-12 or xq.max() > self.x[-1] + 1e-12:
            from .errors import DomainMismatch

            raise DomainMismatch(
                f"queries outside profile range [{self.x[0]}, {self.x[-1]}]"
            )
        runs = self.zone_runs()
        right_edges = np.array([self.x[sl].max() for _, sl in runs])
        idx = np.searchsorted(right_edges, xq, side="left")
        idx = np.clip(idx, 0, len(runs) - 1)
        u1 = np.empty_like(xq)
        u2 = np.empty_like(xq)
        for k, (_, sl) in enumerate(runs):
            mask = idx == k
            if not np.any(mask):
                continue
            u1[mask] = np.interp(xq[mask], self.x[sl], self.u1[sl])
            u2[mask] = np.interp(xq[mask], self.x[sl], self.u2[sl])
        return u1, u2

    def csv_rows(self):
        yield "x,R1,R2,u1,u2,zone"
        for i in range(len(self.x)):
            yield (
                f"{float(self.x[i])!r},{float(self.R1[i])!r},{float(self.R2[i])!r},"
                f"{float(self.u1[i])!r},{float(self.u2[i])!r},{self.zone[i]}"
            )


@dataclass
class ShockBoundaryState:
    """Trajectory of a curved shock and the invariant value behind it."""

    side: int
    t_start: float
    t_end: float
    t_grid: np.ndarray
    rho: np.ndarray
    X: np.ndarray
    _solver: "ScenarioSolver" = field(repr=False, default=None)
    _dense: object = field(repr=False, default=None)

    def rho_at(self, t):
        """Invariant value behind the shock, constraint-projected if drifted."""
        rho, X = self._dense(t)
        res, drho = self._solver._shock_constraint(self.side, rho, X, t)
        if abs(res) > 1e-9 * max(1.0, abs(X)):
            rho = rho - res / drho
        return float(rho)

    def X_at(self, t):
        return float(self._dense(t)[1])

    def constraint_residual(self, t):
        rho, X = self._dense(t)
        res, _ = self._solver._shock_constraint(self.side, rho, X, t)
        return float(res)


@dataclass
class Segment:
    zone: str
    x: np.ndarray
    R1: np.ndarray
    R2: np.ndarray


class ScenarioSolver:
    """Facade: timeline + implicit solution + cached shock trajectories."""

    def __init__(self, params: MixtureParams):
        self.params = params
        self.timeline: Timeline = build_timeline(params)
        self.hodograph: ImplicitSolution = self.timeline.hodograph
        self._shocks = {1: None, 2: None}

    # -- moving weak boundaries of Z5 ----------------------------------------

    def phi(self, t):
        """Left boundary of Z5 (radical form before T_3, parametric after)."""
        T = self.timeline.times
        if t < T["T_int"] * (1 - 1e-12) or t > T["T_fin"] * (1 + 1e-12):
            raise DomainError("phi defined on [T_int, T_fin]")
        if t <= T["T_3"]:
            return self.timeline.curves["phi_early"].x(t)
        return self.timeline.curves["phi"].x(t)

    def theta(self, t):
        T = self.timeline.times
        if t < T["T_int"] * (1 - 1e-12) or t > T["T_fin"] * (1 + 1e-12):
            raise DomainError("theta defined on [T_int, T_fin]")
        if t <= T["T_6"]:
            return self.timeline.curves["theta_early"].x(t)
        return self.timeline.curves["theta"].x(t)

    # -- parametric-boundary roots -------------------------------------------

    def rho_star(self, t_star):
        """Unique root of t(rho, mu2) = t* in [q1, mu1] (cubic + Newton)."""
        p = self.params
        return self._boundary_root(
            t_star, side=1, lo=p.q1, hi=p.mu1,
            t_of=lambda r: self.hodograph.t(r, p.mu2),
            dt_of=lambda r: self.hodograph.t_partials(r, p.mu2)[0],
            coeffs=self._cubic_coeffs_side1(t_star),
        )

    def sigma_star(self, t_star):
        """Mirror root of t(mu1, rho) = t* in [mu2, q2]."""
        p = self.params
        return self._boundary_root(
            t_star, side=2, lo=p.mu2, hi=p.q2,
            t_of=lambda r: self.hodograph.t(p.mu1, r),
            dt_of=lambda r: self.hodograph.t_partials(p.mu1, r)[1],
            coeffs=self._cubic_coeffs_side2(t_star),
        )

    def _cubic_coeffs_side1(self, t_star):
        p = self.params
        C = (p.x2 - p.x1) / (p.q1 * p.q2)
        S = p.q1 + p.q2
        P = p.q1 * p.q2
        return [
            t_star,
            -3.0 * t_star * p.mu2,
            3.0 * t_star * p.mu2**2 - C * (2.0 * p.mu2 - S),
            -t_star * p.mu2**3 - C * (2.0 * P - S * p.mu2),
        ]

    def _cubic_coeffs_side2(self, t_star):
        p = self.params
        C = (p.x2 - p.x1) / (p.q1 * p.q2)
        S = p.q1 + p.q2
        P = p.q1 * p.q2
        return [
            -t_star,
            3.0 * t_star * p.mu1,
            -3.0 * t_star * p.mu1**2 - C * (2.0 * p.mu1 - S),
            t_star * p.mu1**3 - C * (2.0 * P - S * p.mu1),
        ]

    @staticmethod
    def _boundary_root(t_star, side, lo, hi, t_of, dt_of, coeffs):
        pad = 1e-9 * (hi - lo)
        roots = np.roots(coeffs)
        candidates = [
            float(r.real)
            for r in roots
            if abs(r.imag) < 1e-8 and lo - pad <= r.real <= hi + pad
        ]
        if not candidates:
            raise NoRootInInterval(
                f"t = {t_star}: no boundary root in [{lo}, {hi}] (side {side})"
            )
        rho = min(candidates, key=lambda r: abs(t_of(r) - t_star))
        for _ in range(3):
            f = t_of(rho) - t_star
            rho = rho - f / dt_of(rho)
        rho = min(max(rho, lo), hi)
        if abs(t_of(rho) - t_star) > 1e-12 * max(1.0, abs(t_star)):
            raise NoRootInInterval(
                f"boundary root failed to converge at t = {t_star} (side {side})"
            )
        return rho

    # -- zone Z5: isochrone ODE ------------------------------------------------

    def z5_profile(self, t_star, n=64) -> Segment:
        """Integrate the level-line ODEs across Z5 at time t*.

        Starts at phi(t*) with the left boundary state and integrates to
        theta(t*); the terminal state must hit the right boundary value
        within 1e-6 or EndpointMismatch is raised.
        """
        p = self.params
        T = self.timeline.times
        if t_star < T["T_int"] * (1 - 1e-12) or t_star > T["T_fin"] * (1 + 1e-12):
            raise DomainError("Z5 exists on [T_int, T_fin] only")
        xl = self.phi(t_star)
        xr = self.theta(t_star)

        if t_star <= T["T_3"]:
            left = (p.q1, float(wavefield.fan_R2(p, xl, t_star)))
        else:
            left = (self.rho_star(t_star), p.mu2)
        if t_star <= T["T_6"]:
            right = (float(wavefield.fan_R1(p, xr, t_star)), p.q2)
        else:
            right = (p.mu1, self.sigma_star(t_star))

        if xr - xl < DEGENERATE_WIDTH * max(1.0, abs(xl)):
            return Segment("Z5", np.array([xl]), np.array([left[0]]), np.array([left[1]]))

        sol = solve_ivp(
            self._z5_rhs,
            (xl, xr),
            np.array(left),
            method="RK45",
            rtol=ODE_RTOL,
            atol=ODE_ATOL,
            dense_output=True,
        )
        if not sol.success:
            raise IntegrationFailure(f"Z5 isochrone ODE failed: {sol.message}")
        end = sol.y[:, -1]
        if t_star <= T["T_6"]:
            mismatch = abs(end[1] - right[1])
        else:
            mismatch = abs(end[0] - right[0])
        if mismatch > 1e-6:
            raise EndpointMismatch(
                f"Z5 endpoint missed the boundary state by {mismatch} at t* = {t_star}"
            )
        xs = np.linspace(xl, xr, max(n, 2))
        ys = sol.sol(xs)
        # Pin the endpoints to the exact boundary states.
        ys[:, 0] = left
        ys[:, -1] = right
        # Both invariants rise monotonically across Z5; a violation means
        # the integration went wrong, not that the solution looks unusual.
        if np.any(np.diff(ys[0]) < 0) or np.any(np.diff(ys[1]) < 0):
            raise IntegrationFailure(
                f"Z5 invariants lost monotonicity at t* = {t_star}"
            )
        return Segment("Z5", xs, ys[0], ys[1])

    def _z5_rhs(self, x, y):
        R1, R2 = y
        t_r1, t_r2 = self.hodograph.t_partials(R1, R2)
        delta = (lambda_k(1, R1, R2) - lambda_k(2, R1, R2)) * t_r1 * t_r2
        return (-t_r2 / delta, t_r1 / delta)

    # -- zones Z9 / Z10: one-parameter transport ---------------------------------

    def z9_profile(self, t_star, n=64) -> Segment:
        """One-parameter representation of Z9 at time t*.

        x(rho) = x(rho, mu2) + rho^2 mu2 (t* - t(rho, mu2)) for rho between
        the left-boundary value (q1, or the shock value after T_9) and the
        isochrone root rho* (mu1 after T_fin).
        """
        p = self.params
        T = self.timeline.times
        if t_star < T["T_3"] * (1 - 1e-12):
            raise DomainError("Z9 exists for t >= T_3 only")
        rho_hi = self.rho_star(t_star) if t_star <= T["T_fin"] else p.mu1
        if t_star <= T["T_9"]:
            rho_lo = p.q1
        else:
            rho_lo = self.shock_boundary(1, t_star).rho_at(t_star)
        return self._transport_segment("Z9", 1, rho_lo, rho_hi, t_star, n)

    def z10_profile(self, t_star, n=64) -> Segment:
        p = self.params
        T = self.timeline.times
        if t_star < T["T_6"] * (1 - 1e-12):
            raise DomainError("Z10 exists for t >= T_6 only")
        rho_lo = self.sigma_star(t_star) if t_star <= T["T_fin"] else p.mu2
        if t_star <= T["T_10"]:
            rho_hi = p.q2
        else:
            rho_hi = self.shock_boundary(2, t_star).rho_at(t_star)
        return self._transport_segment("Z10", 2, rho_lo, rho_hi, t_star, n)

    def transport_x(self, side, rho, t_star):
        """Position reached at t* by the value rho leaving the Z5 boundary."""
        p = self.params
        if side == 1:
            tau = self.hodograph.t(rho, p.mu2)
            x0 = self.hodograph.x(rho, p.mu2)
            return x0 + rho * rho * p.mu2 * (t_star - tau)
        tau = self.hodograph.t(p.mu1, rho)
        x0 = self.hodograph.x(p.mu1, rho)
        return x0 + p.mu1 * rho * rho * (t_star - tau)

    def _transport_segment(self, zone, side, rho_lo, rho_hi, t_star, n):
        p = self.params
        if rho_hi - rho_lo < 1e-14 * max(1.0, abs(rho_hi)):
            x = self.transport_x(side, rho_lo, t_star)
            R = (rho_lo, p.mu2) if side == 1 else (p.mu1, rho_lo)
            return Segment(zone, np.array([x]), np.array([R[0]]), np.array([R[1]]))
        rho = np.linspace(rho_lo, rho_hi, max(n, 2))
        x = np.array([self.transport_x(side, r, t_star) for r in rho])
        if side == 1:
            seg = Segment(zone, x, rho, np.full_like(rho, p.mu2))
        else:
            seg = Segment(zone, x, np.full_like(rho, p.mu1), rho)
        if np.any(np.diff(x) <= 0):
            raise NonMonotoneParametrization(
                f"{zone} parametrization x(rho) not strictly increasing at t* = {t_star}"
            )
        return seg

    def tau_root(self, x, t):
        """Departure time tau of the 1-characteristic through (x, t) in Z9.

        Solves x = phi(tau) + R1^2 mu2 (t - tau) by inverting the transport
        map in the parameter rho; returns tau = t(rho, mu2).
        """
        p = self.params
        rho_hi = self.rho_star(t) if t <= self.timeline.times["T_fin"] else p.mu1
        f = lambda r: self.transport_x(1, r, t) - x
        f_lo, f_hi = f(p.q1), f(rho_hi)
        if f_lo * f_hi > 0:
            raise NoRootInInterval(f"({x}, {t}) is not inside zone Z9")
        rho = brentq(f, p.q1, rho_hi, xtol=1e-15, rtol=8.9e-16)
        return float(self.hodograph.t(rho, p.mu2))

    # -- curved shocks after T_9 / T_10 ----------------------------------------

    def _shock_constraint(self, side, rho, X, beta):
        """Residual of the parametric shock constraint and its rho-derivative."""
        p = self.params
        if side == 1:
            tau = self.hodograph.t(rho, p.mu2)
            t_rho = self.hodograph.t_partials(rho, p.mu2)[0]
            pos = self.hodograph.x(rho, p.mu2) + p.mu2 * rho * rho * (beta - tau)
            dres = p.mu2 * rho * ((p.mu2 - rho) * t_rho + 2.0 * (beta - tau))
        else:
            tau = self.hodograph.t(p.mu1, rho)
            t_rho = self.hodograph.t_partials(p.mu1, rho)[1]
            pos = self.hodograph.x(p.mu1, rho) + p.mu1 * rho * rho * (beta - tau)
            dres = p.mu1 * rho * ((p.mu1 - rho) * t_rho + 2.0 * (beta - tau))
        return pos - X, dres

    def _shock_rhs(self, side):
        p = self.params

        def rhs(beta, y):
            rho = y[0]
            if side == 1:
                tau = self.hodograph.t(rho, p.mu2)
                t_rho = self.hodograph.t_partials(rho, p.mu2)[0]
                drho = (p.mu1 - rho) / ((p.mu2 - rho) * t_rho + 2.0 * (beta - tau))
            else:
                tau = self.hodograph.t(p.mu1, rho)
                t_rho = self.hodograph.t_partials(p.mu1, rho)[1]
                drho = (p.mu2 - rho) / ((p.mu1 - rho) * t_rho + 2.0 * (beta - tau))
            return (drho, p.mu1 * p.mu2 * rho)

        return rhs

    def shock_boundary(self, side, t_end, n_grid=256) -> ShockBoundaryState:
        """Curved shock after the shock-weak interaction, as (rho(t), X(t)).

        The Rankine-Hugoniot speed is D = mu1 mu2 rho(t); rho evolves by the
        explicit ODE obtained by differentiating the parametric constraint.
        Trajectories are cached and extended on demand.
        """
        p = self.params
        T = self.timeline.times
        if side == 1:
            t0, x0, r0, r_far = T["T_9"], self._event_X("T_9"), p.q1, p.mu1
        elif side == 2:
            t0, x0, r0, r_far = T["T_10"], self._event_X("T_10"), p.q2, p.mu2
        else:
            raise ValueError("side must be 1 or 2")
        if t_end <= t0:
            raise DomainError(f"shock boundary {side} starts at {t0}")

        cached = self._shocks[side]
        if cached is not None and cached.t_end >= t_end:
            return cached

        lo, hi = sorted((r0, r_far))
        pad = 1e-9 * (hi - lo)

        def out_of_domain(beta, y):
            return (y[0] - (lo - pad)) * ((hi + pad) - y[0])

        out_of_domain.terminal = True

        sol = solve_ivp(
            self._shock_rhs(side),
            (t0, t_end),
            np.array([r0, x0]),
            method="RK45",
            rtol=ODE_RTOL,
            atol=ODE_ATOL,
            dense_output=True,
            events=out_of_domain,
        )
        if sol.status == 1:
            raise DomainExit(
                f"shock-side invariant left [{lo}, {hi}] at t = {sol.t_events[0]}"
            )
        if not sol.success:
            raise IntegrationFailure(f"shock boundary ODE failed: {sol.message}")

        t_grid = np.linspace(t0, t_end, n_grid)
        vals = sol.sol(t_grid)
        state = ShockBoundaryState(
            side=side,
            t_start=t0,
            t_end=t_end,
            t_grid=t_grid,
            rho=vals[0],
            X=vals[1],
            _solver=self,
            _dense=sol.sol,
        )
        self._shocks[side] = state
        return state

    def _event_X(self, label):
        return self.timeline.event_by_label[label].X

    # -- full-profile assembly ---------------------------------------------------

    def profile_at(self, t_star, n=1024, window=None) -> Profile:
        """Complete profile across all zones alive at t*.

        Samples are spread over the finite zones proportionally to width
        (uniform in x, or uniform in the parameter for transport zones); the
        two outer plateaus are clipped to the window.
        """
        p = self.params
        if t_star <= 0.0:
            raise DomainError("profiles exist for t > 0")
        T = self.timeline.times

        Phi = Theta = None
        if t_star >= T["T_9"]:
            Phi = self.shock_boundary(1, max(t_star, T["T_9"] * 1.001) * (1 + 1e-9)).X_at
        if t_star >= T["T_10"]:
            Theta = self.shock_boundary(2, max(t_star, T["T_10"] * 1.001) * (1 + 1e-9)).X_at

        intervals = self.timeline.zones_at(t_star, Phi=Phi, Theta=Theta)

        x_lo_active = intervals[0].x_right
        x_hi_active = intervals[-1].x_left
        span = max(x_hi_active - x_lo_active, 1.0)
        if window is None:
            window = (x_lo_active - 0.1 * span, x_hi_active + 0.1 * span)

        widths = []
        for iv in intervals:
            xl = window[0] if iv.x_left is None else iv.x_left
            xr = window[1] if iv.x_right is None else iv.x_right
            widths.append(max(xr - xl, 0.0))
        total = sum(widths) or 1.0

        segments = []
        for iv, w in zip(intervals, widths):
            xl = window[0] if iv.x_left is None else iv.x_left
            xr = window[1] if iv.x_right is None else iv.x_right
            n_k = max(2, int(round(n * w / total)))
            segments.append(self._zone_segment(iv.zone, xl, xr, t_star, n_k))

        return self._merge_segments(t_star, segments)

    def _zone_segment(self, zone, xl, xr, t_star, n_k) -> Segment:
        p = self.params
        desc = wavefield.zone_descriptor(p, zone)
        degenerate = (xr - xl) < DEGENERATE_WIDTH * max(1.0, abs(xl))
        if desc.content == "plateau":
            xs = np.array([xl]) if degenerate else np.linspace(xl, xr, n_k)
            return Segment(
                zone, xs, np.full_like(xs, desc.R1), np.full_like(xs, desc.R2)
            )
        if desc.content == "fan2":
            xs = np.array([xl]) if degenerate else np.linspace(xl, xr, n_k)
            return Segment(
                zone, xs, np.full_like(xs, p.q1), wavefield.fan_R2(p, xs, t_star)
            )
        if desc.content == "fan1":
            xs = np.array([xl]) if degenerate else np.linspace(xl, xr, n_k)
            return Segment(
                zone, xs, wavefield.fan_R1(p, xs, t_star), np.full_like(xs, p.q2)
            )
        if desc.content == "goursat":
            return self.z5_profile(t_star, n_k)
        if desc.content == "transport1":
            return self.z9_profile(t_star, n_k)
        if desc.content == "transport2":
            return self.z10_profile(t_star, n_k)
        raise PhaseGap(f"no sampler for zone {zone}")

    def _merge_segments(self, t_star, segments) -> Profile:
        for a, b in zip(segments, segments[1:]):
            if abs(a.x[-1] - b.x[0]) > 1e-6 * max(1.0, abs(a.x[-1])):
                raise PhaseGap(
                    f"assembly gap between {a.zone} ({a.x[-1]}) and {b.zone} ({b.x[0]})"
                )
        x = np.concatenate([s.x for s in segments])
        R1 = np.concatenate([s.R1 for s in segments])
        R2 = np.concatenate([s.R2 for s in segments])
        zone = sum(([s.zone] * len(s.x) for s in segments), [])
        # Shared boundary samples may disagree in the last bit; enforce order.
        x = np.maximum.accumulate(x)
        u1, u2 = concentrations_from_invariants(self.params, R1, R2)
        return Profile(t_star, x, R1, R2, np.asarray(u1), np.asarray(u2), zone)


# -- module-level convenience wrappers -----------------------------------------


def z5_profile(solver: ScenarioSolver, t_star, n=64) -> Segment:
    return solver.z5_profile(t_star, n)


def rho_star(solver: ScenarioSolver, t_star):
    return solver.rho_star(t_star)


def z9_profile(solver: ScenarioSolver, t_star, n=64) -> Segment:
    return solver.z9_profile(t_star, n)


def z10_profile(solver: ScenarioSolver, t_star, n=64) -> Segment:
    return solver.z10_profile(t_star, n)


def tau_root(solver: ScenarioSolver, x, t):
    return solver.tau_root(x, t)


def shock_boundary(solver: ScenarioSolver, side, t_end) -> ShockBoundaryState:
    return solver.shock_boundary(side, t_end)


def profile_at(params_or_solver, t_star, n=1024, window=None) -> Profile:
    solver = (
        params_or_solver
        if isinstance(params_or_solver, ScenarioSolver)
        else ScenarioSolver(params_or_solver)
    )
    return solver.profile_at(t_star, n=n, window=window)
