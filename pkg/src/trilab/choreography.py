"""Search for the figure-eight choreography inside the constrained family.

A choreography is detected through its cyclic-shift property: one third of
a period maps the state onto itself with the bodies relabeled by a cyclic
permutation. That is stronger than full-period closure and needs only a
T/3 integration per probe.

At alpha = -2 nearly every launch angle ends in a finite-time close
encounter; search points whose trajectory dies before T/3 are recorded as
+inf sentinels, not errors.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import minimize

from .dynamics import Masses, PotentialLaw
from .errors import NoProgress
from .family import build
from .integrator import IntegratorConfig, Trajectory, integrate, make_rhs, _BudgetExceeded

CYCLIC_PERMS = ((1, 2, 0), (2, 0, 1))   # body i takes the role of perm[i]
_SHOOT_BUDGET = 400_000


def _permuted(y0: np.ndarray, perm: tuple) -> np.ndarray:
    out = np.empty(12)
    for i in range(3):
        out[2 * i:2 * i + 2] = y0[2 * perm[i]:2 * perm[i] + 2]
        out[6 + 2 * i:8 + 2 * i] = y0[6 + 2 * perm[i]:8 + 2 * perm[i]]
    return out


def _shoot(theta: float, t: float, law: PotentialLaw, masses: Masses,
           rel_tol: float) -> np.ndarray | None:
    """State at time t from the family angle theta, or None on failure."""
    fam = build(masses, law, theta)
    budget = [_SHOOT_BUDGET]
    rhs = make_rhs(masses, law, budget)
    try:
        sol = solve_ivp(rhs, (0.0, t), fam.state.to_flat(), method="DOP853",
                        rtol=rel_tol, atol=1e-14)
    except _BudgetExceeded:
        return None
    if not sol.success:
        return None
    return sol.y[:, -1]


def residual(theta: float, period: float, law: PotentialLaw | None = None,
             masses: Masses | None = None, rel_tol: float = 1e-12) -> float:
    """Cyclic-shift mismatch norm at T/3; +inf when the probe is infeasible.

    Both cyclic permutations are tried and the smaller mismatch reported.
    """
    law = law or PotentialLaw.power(-2.0)
    masses = masses or Masses.equal()
    if not period > 0:
        return math.inf
    yT = _shoot(theta, period / 3.0, law, masses, rel_tol)
    if yT is None:
        return math.inf
    y0 = build(masses, law, theta).state.to_flat()
    return min(float(np.linalg.norm(yT - _permuted(y0, p))) for p in CYCLIC_PERMS)


@dataclass
class ScanRow:
    theta: float
    period: float | None
    residual: float


@dataclass
class ThetaScan:
    rows: list[ScanRow]

    def best(self) -> ScanRow:
        finite = [r for r in self.rows if math.isfinite(r.residual)]
        if not finite:
            raise NoProgress("no feasible scan point")
        return min(finite, key=lambda r: r.residual)


def _scan_point(theta: float, law: PotentialLaw, masses: Masses,
                horizon: float, rel_tol: float) -> ScanRow:
    """Best (period, residual) at one angle via the dense interpolant.

    Near-returns of body 3 to the origin bracket the candidate periods
    (a return is either T/2 or T); residual minimization runs on a fine
    period grid inside windows around each candidate.
    """
    fam = build(masses, law, theta)
    budget = [_SHOOT_BUDGET]
    rhs = make_rhs(masses, law, budget)
    try:
        sol = solve_ivp(rhs, (0.0, horizon), fam.state.to_flat(), method="DOP853",
                        rtol=rel_tol, atol=1e-12, dense_output=True)
    except _BudgetExceeded:
        return ScanRow(theta, None, math.inf)
    t_hi = float(sol.t[-1])
    if t_hi < 0.5:
        return ScanRow(theta, None, math.inf)

    ts = np.linspace(0.02, t_hi * 0.999, 1200)
    Y = sol.sol(ts)
    r3 = np.hypot(Y[4], Y[5])
    is_min = (r3[1:-1] < r3[:-2]) & (r3[1:-1] < r3[2:]) & (r3[1:-1] < 0.5)
    returns = ts[np.where(is_min)[0] + 1]

    candidates: list[float] = []
    if len(returns) >= 1:
        candidates += [2.0 * returns[0], returns[0]]
    if len(returns) >= 2:
        candidates += [returns[1], 2.0 * returns[1]]
    if not candidates:
        candidates = [1.5 * t_hi]  # fallback: one wide window over what exists

    y0 = fam.state.to_flat()
    targets = [_permuted(y0, p) for p in CYCLIC_PERMS]
    best_r, best_T = math.inf, None
    seen: list[float] = []
    for T_c in candidates:
        if any(abs(T_c - s) < 1e-9 for s in seen):
            continue
        seen.append(T_c)
        lo = max(0.6 * T_c, 0.3)
        hi = min(1.4 * T_c, 3.0 * t_hi * 0.999)
        if hi <= lo:
            continue
        Ts = np.linspace(lo, hi, 220)
        states = sol.sol(Ts / 3.0)
        for k in range(len(Ts)):
            if Ts[k] / 3.0 > t_hi:
                continue
            r = min(float(np.linalg.norm(states[:, k] - tg)) for tg in targets)
            if r < best_r:
                best_r, best_T = r, float(Ts[k])
    return ScanRow(theta, best_T, best_r)


def scan(theta_range: tuple[float, float] = (0.0, math.pi / 2), steps: int = 200,
         law: PotentialLaw | None = None, masses: Masses | None = None,
         horizon: float = 8.0, rel_tol: float = 1e-10) -> ThetaScan:
    """Residual landscape over a theta grid (ascending), sentinels included."""
    if steps < 2:
        return ThetaScan(rows=[])
    law = law or PotentialLaw.power(-2.0)
    masses = masses or Masses.equal()
    thetas = np.linspace(theta_range[0], theta_range[1], steps)
    return ThetaScan(rows=[_scan_point(float(t), law, masses, horizon, rel_tol)
                           for t in thetas])


@dataclass
class ChoreographySolution:
    theta: float
    period: float
    residual: float

    def fourfold_thetas(self) -> list[float]:
        return fourfold(self.theta)

    def as_dict(self) -> dict:
        return {"theta": self.theta, "period": self.period,
                "residual": self.residual, "fourfold": self.fourfold_thetas()}


def refine(theta0: float, period0: float, law: PotentialLaw | None = None,
           masses: Masses | None = None, rel_tol: float = 1e-12,
           max_iter: int = 600) -> ChoreographySolution:
    """Simplex descent on (theta, T) from a feasible seed.

    Raises NoProgress when the seed is infeasible or no improvement is
    found; the analytic route to these angles is unknown, so failure here
    is a reportable outcome rather than a bug.
    """
    law = law or PotentialLaw.power(-2.0)
    masses = masses or Masses.equal()
    r0 = residual(theta0, period0, law, masses, rel_tol)
    if not math.isfinite(r0):
        raise NoProgress(f"infeasible seed (theta={theta0}, T={period0})")

    def objective(p):
        r = residual(p[0], p[1], law, masses, rel_tol)
        return r if math.isfinite(r) else 1e12

    res = minimize(objective, [theta0, period0], method="Nelder-Mead",
                   options={"xatol": 1e-12, "fatol": 1e-14, "maxiter": max_iter,
                            "maxfev": 2 * max_iter})
    r_final = residual(res.x[0], res.x[1], law, masses, rel_tol)
    if not math.isfinite(r_final) or r_final > r0:
        raise NoProgress("refinement failed to improve the residual")
    return ChoreographySolution(theta=float(res.x[0]), period=float(res.x[1]),
                                residual=r_final)


def fourfold(theta: float) -> list[float]:
    """The four angles giving the same curve: theta, -theta, pi +- theta."""
    two_pi = 2.0 * math.pi
    vals = {theta % two_pi, (-theta) % two_pi, (math.pi - theta) % two_pi,
            (math.pi + theta) % two_pi}
    return sorted(vals)


def period_trajectory(sol: ChoreographySolution, law: PotentialLaw | None = None,
                      masses: Masses | None = None, max_step: float = 1e-3,
                      rel_tol: float = 1e-12) -> Trajectory:
    """Dense full-period trajectory of a converged choreography."""
    law = law or PotentialLaw.power(-2.0)
    masses = masses or Masses.equal()
    fam = build(masses, law, sol.theta)
    cfg = IntegratorConfig(rel_tol=rel_tol, abs_tol=1e-14, max_step=max_step)
    return integrate(fam, cfg, t_end=sol.period)


def trace_hausdorff(traj: Trajectory) -> float:
    """Largest pairwise Hausdorff distance between the three orbit traces."""
    from scipy.spatial import cKDTree

    pts = [np.array([[s.positions[i, 0], s.positions[i, 1]] for s in traj.states])
           for i in range(3)]
    worst = 0.0
    for i in range(3):
        for j in range(i + 1, 3):
            ta, tb = cKDTree(pts[i]), cKDTree(pts[j])
            d = max(float(tb.query(pts[i])[0].max()),
                    float(ta.query(pts[j])[0].max()))
            worst = max(worst, d)
    return worst


# ---------------------------------------------------------------------------
# CSV serialization
# ---------------------------------------------------------------------------

SCAN_CSV_HEADER = "theta,period,residual"


def _fmt(x: float | None) -> str:
    if x is None:
        return "nan"
    return format(x, ".17g")


def scan_to_csv(scan_result: ThetaScan) -> str:
    lines = [SCAN_CSV_HEADER]
    for row in scan_result.rows:
        lines.append(f"{_fmt(row.theta)},{_fmt(row.period)},{_fmt(row.residual)}")
    return "\n".join(lines) + "\n"
