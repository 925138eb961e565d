"""Zone decomposition of the (x,t)-plane and the interaction timeline.

The two-point initial discontinuity breaks up into shocks and rarefaction
fans whose boundaries are straight lines; every later interaction (fan-fan,
fan death, shock-fan, final separation) happens at a closed-form event
(T_int, T_3, T_6, T_9, T_10, T_fin).  This module builds the boundary
curves, the event list, and the zone layout at any time.  The two shock
boundaries created after T_9 / T_10 require an ODE solve and live in the
isochrone module; the layout accepts their positions as callables.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.optimize import brentq

from .errors import DomainError, UnexpectedOrdering
from .hodograph import ImplicitSolution
from .invariants import MixtureParams, validate_params

#: rho samples used to tabulate the parametric boundaries (monotonicity check).
PARAM_TABLE_SIZE = 512
#: relative bracket extension for root solves just beyond a curve's endpoint.
PARAM_MARGIN = 0.02


@dataclass
class BoundaryCurve:
    """A zone boundary: shock or weak discontinuity, with adjacent states.

    kind is "shock", "weak-1" or "weak-2"; the digit is the characteristic
    family.  left_state/right_state map t to the (R1, R2) pair on each side
    (equal for weak curves).  Parametric curves carry their (rho, t, x)
    table; x(t) queries go through an exact root solve in the parameter.
    """

    id: str
    kind: str
    t_start: float
    t_end: float
    x: Callable[[float], float]
    left_state: Callable[[float], tuple]
    right_state: Callable[[float], tuple]
    param_grid: Optional[np.ndarray] = field(default=None, repr=False)
    t_grid: Optional[np.ndarray] = field(default=None, repr=False)
    x_grid: Optional[np.ndarray] = field(default=None, repr=False)

    @property
    def family(self) -> Optional[int]:
        if self.kind == "weak-1":
            return 1
        if self.kind == "weak-2":
            return 2
        return None


@dataclass(frozen=True)
class Event:
    """An interaction point on the (x,t)-plane."""

    label: str
    T: float
    X: float
    participants: tuple
    consequence: str


@dataclass(frozen=True)
class Zone:
    """Descriptor of one zone's invariant content.

    content is one of "plateau", "fan1" (R1 self-similar, R2 constant),
    "fan2", "goursat" (both vary, zone Z5), "transport1" (R1 varies along
    1-characteristics, R2 constant; zone Z9) or "transport2" (Z10 mirror).
    """

    id: str
    content: str
    R1: Optional[float] = None
    R2: Optional[float] = None


def fan_R1(p: MixtureParams, x, t):
    """Self-similar invariant in the 1-rarefaction fan: sqrt(z1/q2), z1=(x-x2)/t."""
    return np.sqrt((x - p.x2) / (p.q2 * t))


def fan_R2(p: MixtureParams, x, t):
    """Self-similar invariant in the 2-rarefaction fan: sqrt(z2/q1), z2=(x-x1)/t."""
    return np.sqrt((x - p.x1) / (p.q1 * t))


def _line(x0, speed):
    return lambda t: x0 + speed * t


def _const_state(R1, R2):
    return lambda t: (R1, R2)


def initial_breakup(p: MixtureParams) -> dict:
    """Curves created at t = +0 by the independent breakup of both jumps.

    Returns the six boundary curves keyed by id: the 1-shock xs1 and
    2-shock xs2, and the four rarefaction fronts xl1, xr1, xl2, xr2.
    Fronts move at the characteristic speed of the state they border;
    shock speeds are D1 = q1*mu1*mu2 and D2 = mu1*mu2*q2.
    """
    validate_params(p)
    T_int = (p.x2 - p.x1) / (p.q1 * p.q2 * (p.q2 - p.q1))

    def fan2_state(t, x_of_t):
        return (p.q1, float(fan_R2(p, x_of_t(t), t)))

    def fan1_state(t, x_of_t):
        return (float(fan_R1(p, x_of_t(t), t)), p.q2)

    xl2 = _line(p.x1, p.q1 * p.mu2 * p.mu2)
    xr2 = _line(p.x1, p.q1 * p.q2 * p.q2)
    xl1 = _line(p.x2, p.q1 * p.q1 * p.q2)
    xr1 = _line(p.x2, p.mu1 * p.mu1 * p.q2)

    curves = {
        "xs1": BoundaryCurve(
            "xs1", "shock", 0.0, _t9(p),
            _line(p.x1, p.q1 * p.mu1 * p.mu2),
            _const_state(p.mu1, p.mu2), _const_state(p.q1, p.mu2),
        ),
        "xs2": BoundaryCurve(
            "xs2", "shock", 0.0, _t10(p),
            _line(p.x2, p.mu1 * p.mu2 * p.q2),
            _const_state(p.mu1, p.q2), _const_state(p.mu1, p.mu2),
        ),
        "xl2": BoundaryCurve(
            "xl2", "weak-2", 0.0, _t3(p), xl2,
            _const_state(p.q1, p.mu2), _const_state(p.q1, p.mu2),
        ),
        "xr2": BoundaryCurve(
            "xr2", "weak-2", 0.0, T_int, xr2,
            lambda t: fan2_state(t, xr2), _const_state(p.q1, p.q2),
        ),
        "xl1": BoundaryCurve(
            "xl1", "weak-1", 0.0, T_int, xl1,
            _const_state(p.q1, p.q2), lambda t: fan1_state(t, xl1),
        ),
        "xr1": BoundaryCurve(
            "xr1", "weak-1", 0.0, _t6(p), xr1,
            _const_state(p.mu1, p.q2), _const_state(p.mu1, p.q2),
        ),
    }
    return curves


def _tint(p):
    return (p.x2 - p.x1) / (p.q1 * p.q2 * (p.q2 - p.q1))


def _t3(p):
    return _tint(p) * (p.q2 - p.q1) ** 2 / (p.q1 - p.mu2) ** 2


def _t6(p):
    return _tint(p) * (p.q2 - p.q1) ** 2 / (p.q2 - p.mu1) ** 2


def _t9(p):
    return _t3(p) * (p.mu2 - p.q1) / (p.mu1 - p.q1)


def _t10(p):
    return _t6(p) * (p.mu1 - p.q2) / (p.mu2 - p.q2)


def interaction_point(p: MixtureParams) -> Event:
    """Meeting of the two inner rarefaction fronts xr2 and xl1."""
    validate_params(p)
    T = _tint(p)
    X = (p.x1 * p.q1 - p.x2 * p.q2) / (p.q1 - p.q2)
    return Event("T_int", T, X, ("xr2", "xl1"), "Z4 dies; Z5 born")


def weak_curves_pre(p: MixtureParams):
    """Weak-discontinuity boundaries of Z5 right after the fan interaction.

    phi(t) (left, a 1-characteristic through the fan of R2) satisfies

        sqrt(phi - x1) = q1^(3/2) (sqrt(t) - sqrt(T_int)) + sqrt(X_int - x1)

    and theta(t) mirrors it with (q2, x2).  Valid until T_3 resp. T_6.
    """
    validate_params(p)
    ev = interaction_point(p)
    T_int, X_int = ev.T, ev.X

    def make(label, q, x0, t_end, kind):
        root0 = math.sqrt(X_int - x0)

        def x_of_t(t):
            if t < T_int * (1.0 - 1e-12):
                raise DomainError(f"{label} undefined before the interaction time")
            r = q ** 1.5 * (math.sqrt(t) - math.sqrt(T_int)) + root0
            return x0 + r * r

        return label, x_of_t, t_end, kind

    phi_label, phi_x, phi_end, _ = make("phi_early", p.q1, p.x1, _t3(p), "weak-1")
    theta_label, theta_x, theta_end, _ = make("theta_early", p.q2, p.x2, _t6(p), "weak-2")

    phi = BoundaryCurve(
        phi_label, "weak-1", T_int, phi_end, phi_x,
        lambda t: (p.q1, float(fan_R2(p, phi_x(t), t))),
        lambda t: (p.q1, float(fan_R2(p, phi_x(t), t))),
    )
    theta = BoundaryCurve(
        theta_label, "weak-2", T_int, theta_end, theta_x,
        lambda t: (float(fan_R1(p, theta_x(t), t)), p.q2),
        lambda t: (float(fan_R1(p, theta_x(t), t)), p.q2),
    )
    return phi, theta


def zone_death_events(p: MixtureParams):
    """Deaths of the outer fan zones Z3 (phi meets xl2) and Z6 (theta meets xr1)."""
    validate_params(p)
    T3 = _t3(p)
    T6 = _t6(p)
    X3 = p.x1 + p.q1 * p.mu2 * p.mu2 * T3
    X6 = p.x2 + p.mu1 * p.mu1 * p.q2 * T6
    return (
        Event("T_3", T3, X3, ("phi_early", "xl2"), "Z3 dies; Z9 born"),
        Event("T_6", T6, X6, ("theta_early", "xr1"), "Z6 dies; Z10 born"),
    )


def _parametric_curve(sol: ImplicitSolution, id_, kind, side: int,
                      t_start, t_end, state):
    """Build a boundary given parametrically by the implicit solution.

    side 1: (x(rho, mu2), t(rho, mu2)) for rho in [q1, mu1] (curve phi).
    side 2: (x(mu1, rho), t(mu1, rho)) for rho in [mu2, q2] (curve theta).
    The t(rho) table must be strictly monotone; x(t) queries bracket the
    parameter and root-solve t(rho) = t exactly.
    """
    p = sol.params
    if side == 1:
        lo, hi = p.q1, p.mu1
        t_of = lambda r: sol.t(r, p.mu2)
        x_of = lambda r: sol.x(r, p.mu2)
    else:
        lo, hi = p.mu2, p.q2
        t_of = lambda r: sol.t(p.mu1, r)
        x_of = lambda r: sol.x(p.mu1, r)

    grid = np.linspace(lo, hi, PARAM_TABLE_SIZE)
    t_tab = np.array([t_of(r) for r in grid])
    x_tab = np.array([x_of(r) for r in grid])
    d = np.diff(t_tab)
    if not (np.all(d > 0) or np.all(d < 0)):
        raise UnexpectedOrdering(
            f"boundary {id_}: t(rho) is not monotone over [{lo}, {hi}]"
        )

    margin = PARAM_MARGIN * (hi - lo)

    def rho_of_t(t):
        a, b = lo - margin, hi + margin
        fa, fb = t_of(a) - t, t_of(b) - t
        if fa * fb > 0:
            raise DomainError(f"{id_}: time {t} outside the curve's span")
        return brentq(lambda r: t_of(r) - t, a, b, xtol=1e-15, rtol=8.9e-16)

    def x_of_t(t):
        return x_of(rho_of_t(t))

    curve = BoundaryCurve(
        id_, kind, t_start, t_end, x_of_t, state, state,
        param_grid=grid, t_grid=t_tab, x_grid=x_tab,
    )
    curve.rho_of_t = rho_of_t
    curve.param_point = lambda r: (x_of(r), t_of(r))
    return curve


def post_interaction_curves(p: MixtureParams, sol: ImplicitSolution) -> dict:
    """Boundaries of the transport zones Z9 and Z10.

    x_w1 is the 1-characteristic carrying the plateau value q1 out of the
    Z3 death point; the new phi is the 2-characteristic boundary given
    parametrically by (x(rho, mu2), t(rho, mu2)).  Mirrored for x_w2/theta.
    """
    E3, E6 = zone_death_events(p)

    def phi_state(t):
        rho = curves["phi"].rho_of_t(t)
        return (rho, p.mu2)

    def theta_state(t):
        rho = curves["theta"].rho_of_t(t)
        return (p.mu1, rho)

    T_fin = sol.t(p.mu1, p.mu2)
    curves = {
        "xw1": BoundaryCurve(
            "xw1", "weak-1", E3.T, _t9(p),
            lambda t: E3.X + p.q1 * p.q1 * p.mu2 * (t - E3.T),
            _const_state(p.q1, p.mu2), _const_state(p.q1, p.mu2),
        ),
        "xw2": BoundaryCurve(
            "xw2", "weak-2", E6.T, _t10(p),
            lambda t: E6.X + p.mu1 * p.q2 * p.q2 * (t - E6.T),
            _const_state(p.mu1, p.q2), _const_state(p.mu1, p.q2),
        ),
    }
    curves["phi"] = _parametric_curve(sol, "phi", "weak-2", 1, E3.T, T_fin, phi_state)
    curves["theta"] = _parametric_curve(sol, "theta", "weak-1", 2, E6.T, T_fin, theta_state)
    return curves


def shock_weak_events(p: MixtureParams):
    """Shock x_s1 catches the weak line x_w1 (and mirrored x_s2 / x_w2)."""
    validate_params(p)
    T9 = _t9(p)
    T10 = _t10(p)
    X9 = p.x1 + p.q1 * p.mu1 * p.mu2 * T9
    X10 = p.x2 + p.q2 * p.mu1 * p.mu2 * T10
    return (
        Event("T_9", T9, X9, ("xw1", "xs1"), "Z2 dies; Z1/Z9 boundary becomes shock Phi"),
        Event("T_10", T10, X10, ("xw2", "xs2"), "Z7 dies; Z10/Z8 boundary becomes shock Theta"),
    )


def final_event(p: MixtureParams, sol: ImplicitSolution):
    """Separation point where phi and theta merge; the empty zone Z11 opens.

    T_fin = t(mu1, mu2) = T_int * V(q1, q2 | mu1, mu2); the Z11 boundaries
    leave (X_fin, T_fin) at the pure-component characteristic speeds.
    """
    validate_params(p)
    T_fin = sol.t(p.mu1, p.mu2)
    X_fin = sol.x(p.mu1, p.mu2)
    ev = Event("T_fin", T_fin, X_fin, ("phi", "theta"), "Z5 dies; Z11 born")
    xf1 = BoundaryCurve(
        "xf1", "weak-1", T_fin, math.inf,
        lambda t: X_fin + p.mu1 * p.mu1 * p.mu2 * (t - T_fin),
        _const_state(p.mu1, p.mu2), _const_state(p.mu1, p.mu2),
    )
    xf2 = BoundaryCurve(
        "xf2", "weak-2", T_fin, math.inf,
        lambda t: X_fin + p.mu2 * p.mu1 * p.mu2 * (t - T_fin),
        _const_state(p.mu1, p.mu2), _const_state(p.mu1, p.mu2),
    )
    return ev, xf1, xf2


ZONES = {
    "Z1": Zone("Z1", "plateau"),
    "Z2": Zone("Z2", "plateau"),
    "Z3": Zone("Z3", "fan2"),
    "Z4": Zone("Z4", "plateau"),
    "Z5": Zone("Z5", "goursat"),
    "Z6": Zone("Z6", "fan1"),
    "Z7": Zone("Z7", "plateau"),
    "Z8": Zone("Z8", "plateau"),
    "Z9": Zone("Z9", "transport1"),
    "Z10": Zone("Z10", "transport2"),
    "Z11": Zone("Z11", "plateau"),
}


def zone_descriptor(p: MixtureParams, zone_id: str) -> Zone:
    """Zone content with plateau values filled in for this instance."""
    plateaus = {
        "Z1": (p.mu1, p.mu2),
        "Z2": (p.q1, p.mu2),
        "Z3": (p.q1, None),
        "Z4": (p.q1, p.q2),
        "Z5": (None, None),
        "Z6": (None, p.q2),
        "Z7": (p.mu1, p.q2),
        "Z8": (p.mu1, p.mu2),
        "Z9": (None, p.mu2),
        "Z10": (p.mu1, None),
        "Z11": (p.mu1, p.mu2),
    }
    base = ZONES[zone_id]
    R1, R2 = plateaus[zone_id]
    return Zone(zone_id, base.content, R1, R2)


@dataclass(frozen=True)
class ZoneInterval:
    """One zone's slice of an isochrone: [x_left, x_right] with its curves."""

    zone: str
    x_left: Optional[float]
    x_right: Optional[float]
    left_curve: Optional[str]
    right_curve: Optional[str]


class Timeline:
    """Ordered events, boundary curves, and zone lifetimes for one instance."""

    def __init__(self, params: MixtureParams):
        self.params = validate_params(params)
        self.hodograph = ImplicitSolution(params)

        ev_int = interaction_point(params)
        ev3, ev6 = zone_death_events(params)
        ev9, ev10 = shock_weak_events(params)
        ev_fin, xf1, xf2 = final_event(params, self.hodograph)

        self._check_partial_order(ev_int, ev3, ev6, ev9, ev10, ev_fin)

        self.events = sorted(
            [ev_int, ev3, ev6, ev9, ev10, ev_fin], key=lambda e: e.T
        )
        self.event_by_label = {e.label: e for e in self.events}

        self.curves = initial_breakup(params)
        phi_e, theta_e = weak_curves_pre(params)
        self.curves[phi_e.id] = phi_e
        self.curves[theta_e.id] = theta_e
        self.curves.update(post_interaction_curves(params, self.hodograph))
        self.curves["xf1"] = xf1
        self.curves["xf2"] = xf2

        T = self.times = {e.label: e.T for e in self.events}
        self.zone_lifetimes = {
            "Z1": (0.0, math.inf),
            "Z2": (0.0, T["T_9"]),
            "Z3": (0.0, T["T_3"]),
            "Z4": (0.0, T["T_int"]),
            "Z5": (T["T_int"], T["T_fin"]),
            "Z6": (0.0, T["T_6"]),
            "Z7": (0.0, T["T_10"]),
            "Z8": (0.0, math.inf),
            "Z9": (T["T_3"], math.inf),
            "Z10": (T["T_6"], math.inf),
            "Z11": (T["T_fin"], math.inf),
        }

    @staticmethod
    def _check_partial_order(ev_int, ev3, ev6, ev9, ev10, ev_fin):
        required = [
            ("T_int < T_3", ev_int.T, ev3.T),
            ("T_int < T_6", ev_int.T, ev6.T),
            ("T_3 < T_9", ev3.T, ev9.T),
            ("T_6 < T_10", ev6.T, ev10.T),
            ("T_9 < T_fin", ev9.T, ev_fin.T),
            ("T_10 < T_fin", ev10.T, ev_fin.T),
        ]
        for name, lo, hi in required:
            if not lo < hi:
                raise UnexpectedOrdering(
                    f"event order {name} violated ({lo} >= {hi}); "
                    "parameters are outside the supported interaction scenario"
                )

    # -- layout --------------------------------------------------------------

    def zones_at(self, t: float, Phi=None, Theta=None) -> list:
        """Ordered zone intervals tiling the x-axis at time t.

        Past T_9 (T_10) the left (right) outer boundary is the curved shock
        Phi (Theta); their positions must be supplied as callables of t,
        since they come from an ODE solve outside this module.
        """
        if t <= 0.0:
            raise DomainError("zone layout defined for t > 0 only")
        T = self.times
        c = self.curves

        def pos(curve_id):
            return float(c[curve_id].x(t))

        chain = []
        if t < T["T_9"]:
            left_outer = ("xs1", pos("xs1"))
        else:
            if Phi is None:
                raise DomainError("t >= T_9 requires the Phi shock position")
            left_outer = ("Phi", float(Phi(t)))
        if t < T["T_10"]:
            right_outer = ("xs2", pos("xs2"))
        else:
            if Theta is None:
                raise DomainError("t >= T_10 requires the Theta shock position")
            right_outer = ("Theta", float(Theta(t)))

        chain.append(ZoneInterval("Z1", None, left_outer[1], None, left_outer[0]))
        cursor_id, cursor_x = left_outer

        def push(zone, right_id, right_x):
            nonlocal cursor_id, cursor_x
            chain.append(ZoneInterval(zone, cursor_x, right_x, cursor_id, right_id))
            cursor_id, cursor_x = right_id, right_x

        if t < T["T_9"]:
            rid = "xl2" if t <= T["T_3"] else "xw1"
            push("Z2", rid, pos(rid))
        if t <= T["T_3"]:
            rid = "xr2" if t <= T["T_int"] else "phi_early"
            push("Z3", rid, pos(rid))
        if t <= T["T_int"]:
            push("Z4", "xl1", pos("xl1"))
        if t > T["T_3"]:
            rid = "phi" if t <= T["T_fin"] else "xf1"
            push("Z9", rid, pos(rid))
        if T["T_int"] <= t <= T["T_fin"]:
            rid = "theta_early" if t <= T["T_6"] else "theta"
            push("Z5", rid, pos(rid))
        if t > T["T_fin"]:
            push("Z11", "xf2", pos("xf2"))
        if t <= T["T_6"]:
            push("Z6", "xr1", pos("xr1"))
        if t > T["T_6"]:
            rid = "xw2" if t <= T["T_10"] else "Theta"
            push("Z10", rid, right_outer[1] if rid == "Theta" else pos(rid))
        if t < T["T_10"]:
            push("Z7", "xs2", pos("xs2"))
        chain.append(ZoneInterval("Z8", cursor_x, None, cursor_id, None))

        self._check_tiling(chain)
        return chain

    @staticmethod
    def _check_tiling(chain):
        for left, right in zip(chain, chain[1:]):
            if left.x_right is None or right.x_left is None:
                raise DomainError("interior zone with an open end")
            if not math.isclose(left.x_right, right.x_left, rel_tol=0.0, abs_tol=1e-9):
                raise DomainError(
                    f"zone tiling gap between {left.zone} and {right.zone}"
                )
        xs = [z.x_right for z in chain[:-1]]
        if any(b < a - 1e-9 for a, b in zip(xs, xs[1:])):
            raise UnexpectedOrdering("zone boundaries out of order")

    # -- export ---------------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "events": [
                {
                    "label": e.label,
                    "T": e.T,
                    "X": e.X,
                    "participants": list(e.participants),
                    "consequence": e.consequence,
                }
                for e in self.events
            ],
            "zones": [
                {"id": z, "birth": birth, "death": death}
                for z, (birth, death) in self.zone_lifetimes.items()
            ],
        }

    def report_lines(self) -> list:
        lines = []
        for e in self.events:
            lines.append(
                f"EVENT label={e.label} T={e.T!r} X={e.X!r} "
                f"participants={','.join(e.participants)} consequence={e.consequence}"
            )
        for z, (birth, death) in self.zone_lifetimes.items():
            lines.append(f"ZONE id={z} birth={birth!r} death={death!r}")
        return lines


def build_timeline(p: MixtureParams) -> Timeline:
    """Construct and order the full event/zone structure for one instance."""
    return Timeline(p)
