"""Adaptive integration of the three-body equations of motion.

DOP853 (embedded Runge-Kutta of order 8(5,3)) with dense output drives
everything; diagnostics are recomputed from full states at accepted steps,
never interpolated. Collisions terminate a run at the configured radius --
no regularization, every claim this package checks lives before first
collision.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq

from .dynamics import (Diagnostics, Masses, PlanarState, PotentialLaw,
                       diagnostics, moment_of_inertia)
from .family import InitialFamily

_PAIRS = ((0, 1), (0, 2), (1, 2))
_EVAL_BUDGET = 2_000_000  # safety valve against pathological step grinding


@dataclass(frozen=True)
class IntegratorConfig:
    rel_tol: float = 1e-12
    abs_tol: float = 1e-14
    max_step: float = math.inf
    collision_radius: float = 1e-8
    max_time: float = math.inf

    def __post_init__(self):
        if self.rel_tol <= 0 or self.abs_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.collision_radius <= 0:
            raise ValueError("collision radius must be positive")


@dataclass(frozen=True)
class CollisionEvent:
    pair: tuple[int, int]     # 1-based body indices
    time: float
    min_distance: float


@dataclass
class Trajectory:
    """Accepted-step samples, diagnostics, events and the dense interpolant."""

    masses: Masses
    law: PotentialLaw
    times: np.ndarray
    states: list[PlanarState]
    diagnostics: list[Diagnostics]
    events: list[CollisionEvent]
    termination: str          # 't_end' | 'collision' | 'step_underflow' | 'eval_budget'
    dense: object = field(default=None, repr=False)

    def state_at(self, t: float) -> PlanarState:
        """Interpolated state from the dense output."""
        if self.dense is None:
            raise ValueError("trajectory carries no dense output")
        return PlanarState.from_flat(t, self.dense(t))

    @property
    def t_final(self) -> float:
        return float(self.times[-1])


class _BudgetExceeded(Exception):
    pass


def make_rhs(masses: Masses, law: PotentialLaw, budget: list | None = None):
    """Scalar-arithmetic RHS for the 12-dim first-order system.

    Scalar math beats numpy at this dimension by a wide margin, and the
    search modules call this thousands of times.
    """
    m1, m2, m3 = masses.m1, masses.m2, masses.m3
    expo = -1.0 if law.is_log else (law.alpha - 2.0) / 2.0

    def rhs(t, y):
        if budget is not None:
            budget[0] -= 1
            if budget[0] <= 0:
                raise _BudgetExceeded
        x1, y1, x2, y2, x3, y3, vx1, vy1, vx2, vy2, vx3, vy3 = y
        dx, dy = x2 - x1, y2 - y1
        w = (dx * dx + dy * dy) ** expo
        f12x, f12y = dx * w, dy * w
        dx, dy = x3 - x1, y3 - y1
        w = (dx * dx + dy * dy) ** expo
        f13x, f13y = dx * w, dy * w
        dx, dy = x3 - x2, y3 - y2
        w = (dx * dx + dy * dy) ** expo
        f23x, f23y = dx * w, dy * w
        return (vx1, vy1, vx2, vy2, vx3, vy3,
                m2 * f12x + m3 * f13x, m2 * f12y + m3 * f13y,
                -m1 * f12x + m3 * f23x, -m1 * f12y + m3 * f23y,
                -m1 * f13x - m2 * f23x, -m1 * f13y - m2 * f23y)

    return rhs


def _pair_event(i: int, j: int, radius: float):
    """Terminal crossing of the collision radius (inward)."""
    def event(t, y):
        dx = y[2 * j] - y[2 * i]
        dy = y[2 * j + 1] - y[2 * i + 1]
        return dx * dx + dy * dy - radius * radius

    event.terminal = True
    event.direction = -1.0
    return event


def _pair_minimum_event(i: int, j: int):
    """Non-terminal distance minimum: d/dt |dr|^2 crossing zero upward.

    Transversal collisions (regular force laws, alpha >= 2) dip below the
    collision radius only inside a window far narrower than a step, so the
    radius crossing alone is missed; the minimum event catches them.
    """
    def event(t, y):
        dx = y[2 * j] - y[2 * i]
        dy = y[2 * j + 1] - y[2 * i + 1]
        dvx = y[6 + 2 * j] - y[6 + 2 * i]
        dvy = y[7 + 2 * j] - y[7 + 2 * i]
        return dx * dvx + dy * dvy

    event.terminal = False
    event.direction = 1.0
    return event


def integrate(family: InitialFamily, config: IntegratorConfig = IntegratorConfig(),
              t_end: float = 10.0, dense: bool = True) -> Trajectory:
    """Integrate the family's initial state to t_end or first collision.

    Negative t_end integrates backwards. Step-size underflow and the
    internal evaluation budget terminate the run with the last good state
    rather than raising; callers treat those as sentinels.
    """
    if math.isfinite(config.max_time):
        t_end = math.copysign(min(abs(t_end), config.max_time), t_end)
    y0 = family.state.to_flat()
    budget = [_EVAL_BUDGET]
    rhs = make_rhs(family.masses, family.law, budget)
    events = [_pair_event(i, j, config.collision_radius) for i, j in _PAIRS]
    events += [_pair_minimum_event(i, j) for i, j in _PAIRS]
    try:
        sol = solve_ivp(rhs, (0.0, t_end), y0, method="DOP853",
                        rtol=config.rel_tol, atol=config.abs_tol,
                        max_step=config.max_step, dense_output=dense,
                        events=events)
    except _BudgetExceeded:
        return Trajectory(masses=family.masses, law=family.law,
                          times=np.array([0.0]),
                          states=[family.state],
                          diagnostics=[diagnostics(family.state, family.masses,
                                                   family.law)],
                          events=[], termination="eval_budget", dense=None)

    def _distance_at(i, j, t_ev):
        y_ev = sol.sol(t_ev) if dense else sol.y[:, -1]
        return math.hypot(y_ev[2 * j] - y_ev[2 * i],
                          y_ev[2 * j + 1] - y_ev[2 * i + 1])

    collision_events = []
    for k, (i, j) in enumerate(_PAIRS):
        for t_ev in sol.t_events[k]:
            collision_events.append(CollisionEvent(pair=(i + 1, j + 1),
                                                   time=float(t_ev),
                                                   min_distance=_distance_at(i, j, t_ev)))
        # sub-radius distance minima count as collisions too
        if dense:
            for t_ev in sol.t_events[3 + k]:
                d = _distance_at(i, j, t_ev)
                if d <= config.collision_radius:
                    collision_events.append(CollisionEvent(pair=(i + 1, j + 1),
                                                           time=float(t_ev),
                                                           min_distance=d))
    collision_events.sort(key=lambda e: e.time if t_end > 0 else -e.time)

    if sol.status == 1 or collision_events:
        termination = "collision"
    elif sol.status == 0:
        termination = "t_end"
    else:
        termination = "step_underflow"

    times = np.asarray(sol.t, dtype=float)
    ys = sol.y
    if collision_events and sol.status != 1:
        # a minimum event caught what the radius crossing missed: truncate
        t_stop = collision_events[0].time
        keep = times < t_stop if t_end > 0 else times > t_stop
        times = np.append(times[keep], t_stop)
        ys = np.column_stack([ys[:, keep], sol.sol(t_stop)])
        collision_events = [collision_events[0]]

    states = [PlanarState.from_flat(t, ys[:, k]) for k, t in enumerate(times)]
    diags = [diagnostics(s, family.masses, family.law) for s in states]
    return Trajectory(masses=family.masses, law=family.law,
                      times=times, states=states,
                      diagnostics=diags, events=collision_events,
                      termination=termination,
                      dense=sol.sol if dense else None)


# ---------------------------------------------------------------------------
# closed-form reference solutions
# ---------------------------------------------------------------------------

SQRT3 = math.sqrt(3.0)
ALPHA2_COLLISION_TIME = math.pi / (2.0 * SQRT3)   # bodies 1 and 2
ALPHA4_COLLISION_TIME = math.pi / 18.0            # bodies 1 and 3


def closed_form_alpha2(theta: float, t: float) -> PlanarState:
    """Equal-mass alpha = 2 orbit: isotropic harmonic motion, any theta.

    r3 = (2/sqrt3) sin(sqrt3 t)(cos th, sin th), r1/r2 = (+-cos(sqrt3 t), 0)
    - r3/2. The moment of inertia is exactly 1 for all t.
    """
    c, s = math.cos(theta), math.sin(theta)
    w = SQRT3 * t
    r3 = np.array([2.0 / SQRT3 * math.sin(w) * c, 2.0 / SQRT3 * math.sin(w) * s])
    v3 = np.array([2.0 * math.cos(w) * c, 2.0 * math.cos(w) * s])
    ax = np.array([math.cos(w), 0.0])
    vax = np.array([-SQRT3 * math.sin(w), 0.0])
    return PlanarState.from_vectors(t, ax - r3 / 2, -ax - r3 / 2, r3,
                                    vax - v3 / 2, -vax - v3 / 2, v3)


_ALPHA4_PHASES = (2.0 * math.pi / 3.0, -2.0 * math.pi / 3.0, 0.0)


def closed_form_alpha4(t: float) -> PlanarState:
    """Equal-mass alpha = 4, theta = 0 orbit: collinear harmonic triple."""
    pos = [(2.0 / SQRT3 * math.sin(3.0 * t + p), 0.0) for p in _ALPHA4_PHASES]
    vel = [(2.0 * SQRT3 * math.cos(3.0 * t + p), 0.0) for p in _ALPHA4_PHASES]
    return PlanarState.from_vectors(t, *pos, *vel)


def max_position_error(traj: Trajectory, reference, t_max: float,
                       n_samples: int = 400) -> float:
    """Max |numeric - reference| over a uniform grid in [0, t_max]."""
    ts = np.linspace(0.0, min(t_max, traj.t_final), n_samples)
    err = 0.0
    for t in ts:
        num = traj.state_at(t).positions
        ref = reference(t).positions
        err = max(err, float(np.max(np.abs(num - ref))))
    return err


# ---------------------------------------------------------------------------
# event refinement and diagnostics over trajectories
# ---------------------------------------------------------------------------

def detect_collisions(traj: Trajectory, config: IntegratorConfig,
                      n_scan: int = 2000) -> list[CollisionEvent]:
    """Locate pairwise-distance minima below the collision radius.

    Scans the dense output, then polishes each minimum by root-finding on
    d/dt |dr|^2 = 2 dr.dv (from interpolated states). Terminal crossing
    events recorded during integration are included as boundary minima.
    """
    if traj.dense is None:
        raise ValueError("collision detection needs dense output")
    t0, t1 = float(traj.times[0]), traj.t_final
    ts = np.linspace(t0, t1, n_scan)
    Y = traj.dense(ts)
    found: list[CollisionEvent] = list(traj.events)

    def ddot(i, j):
        def g(t):
            y = traj.dense(t)
            dx = y[2 * j] - y[2 * i]
            dy = y[2 * j + 1] - y[2 * i + 1]
            dvx = y[6 + 2 * j] - y[6 + 2 * i]
            dvy = y[7 + 2 * j] - y[7 + 2 * i]
            return 2.0 * (dx * dvx + dy * dvy)
        return g

    for i, j in _PAIRS:
        d = np.hypot(Y[2 * j] - Y[2 * i], Y[2 * j + 1] - Y[2 * i + 1])
        interior = np.where((d[1:-1] <= d[:-2]) & (d[1:-1] <= d[2:]))[0] + 1
        g = ddot(i, j)
        for k in interior:
            a, b = ts[k - 1], ts[k + 1]
            ga, gb = g(a), g(b)
            if ga == 0.0:
                t_min = a
            elif ga * gb < 0:
                t_min = brentq(g, a, b, xtol=1e-12)
            else:
                t_min = ts[k]
            y = traj.dense(t_min)
            dist = math.hypot(y[2 * j] - y[2 * i], y[2 * j + 1] - y[2 * i + 1])
            if dist <= config.collision_radius:
                if not any(e.pair == (i + 1, j + 1) and abs(e.time - t_min) < 1e-6
                           for e in found):
                    found.append(CollisionEvent(pair=(i + 1, j + 1),
                                                time=float(t_min),
                                                min_distance=float(dist)))
    return sorted(found, key=lambda e: e.time)


def inertia_variation(traj: Trajectory) -> tuple[float, float]:
    """(max |I(t) - I(0)|, same divided by I(0)) over accepted steps."""
    inertias = np.array([d.I for d in traj.diagnostics])
    dev = float(np.max(np.abs(inertias - inertias[0]))) if len(inertias) else 0.0
    return dev, dev / inertias[0] if len(inertias) else 0.0


def energy_drift(traj: Trajectory) -> float:
    """max |E(t) - E(0)| / max(1, |E(0)|)."""
    es = np.array([d.E for d in traj.diagnostics])
    return float(np.max(np.abs(es - es[0])) / max(1.0, abs(es[0])))


def max_angular_momentum(traj: Trajectory) -> float:
    return float(np.max(np.abs([d.L for d in traj.diagnostics])))


def lj_residual(traj: Trajectory, n_samples: int = 201,
                h: float | None = None) -> float:
    """Central-difference check of d2I/dt2 = 2K - alpha V on resampled states.

    States come from the dense interpolant; diagnostics are recomputed from
    those full states. Expected O(h^2) plus the integrator error floor.
    """
    if n_samples < 5:
        raise ValueError("need at least 5 samples")
    if traj.dense is None:
        raise ValueError("lj_residual needs dense output")
    t0, t1 = float(traj.times[0]), traj.t_final
    if h is None:
        ts = np.linspace(t0, t1, n_samples)
        h = float(ts[1] - ts[0])
    else:
        n = int(math.floor((t1 - t0) / h)) + 1
        if n < 5:
            raise ValueError("step too large for the window")
        ts = t0 + h * np.arange(n)
    states = [traj.state_at(t) for t in ts]
    inertias = np.array([moment_of_inertia(s, traj.masses) for s in states])
    from .dynamics import lagrange_jacobi_rhs
    rhs_vals = np.array([lagrange_jacobi_rhs(s, traj.masses, traj.law)
                         for s in states])
    second = (inertias[2:] - 2.0 * inertias[1:-1] + inertias[:-2]) / h**2
    return float(np.max(np.abs(second - rhs_vals[1:-1])))


# ---------------------------------------------------------------------------
# CSV serialization
# ---------------------------------------------------------------------------

CSV_HEADER = "t,x1,y1,x2,y2,x3,y3,vx1,vy1,vx2,vy2,vx3,vy3,I,K,V,E,L"


def _fmt(x: float) -> str:
    return format(x, ".17g")


def trajectory_to_csv(traj: Trajectory) -> str:
    """One row per accepted step; collision events as commented footer lines."""
    lines = [CSV_HEADER]
    for t, s, d in zip(traj.times, traj.states, traj.diagnostics):
        row = [t, *s.positions.reshape(-1), *s.velocities.reshape(-1),
               d.I, d.K, d.V, d.E, d.L]
        lines.append(",".join(_fmt(v) for v in row))
    for e in traj.events:
        lines.append(f"# collision pair=({e.pair[0]},{e.pair[1]}) t={_fmt(e.time)}")
    return "\n".join(lines) + "\n"
