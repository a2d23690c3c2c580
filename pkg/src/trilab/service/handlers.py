"""Plain handler functions behind the service endpoints.

The CLI calls these in-process (no sockets); the FastAPI app wraps them
for remote clients. Handlers raise ValueError/TrilabError for bad
parameters, which the endpoints convert to 422.
"""
from __future__ import annotations

import math

import numpy as np

from .. import certificate, choreography, jets
from ..dynamics import Masses, PlanarState, PotentialLaw, pair_distances
from ..errors import NoProgress
from ..family import build, theta_equal_mass
from ..integrator import (ALPHA2_COLLISION_TIME, ALPHA4_COLLISION_TIME,
                          IntegratorConfig, closed_form_alpha2,
                          closed_form_alpha4, integrate, max_position_error,
                          trajectory_to_csv)
from .models import (AppendixVerifyRequest, ChoreoRefineRequest,
                     ChoreoRefineResponse, ChoreoScanRequest,
                     ChoreoScanResponse, ClosedFormRequest, ClosedFormResponse,
                     CollisionEventModel, DiagnosticsModel, JetsRequest,
                     JetsResponse, RepulsiveCheckRequest,
                     RepulsiveCheckResponse, ScanBest, SimulateRequest,
                     SimulateResponse, ThetaRequest, ThetaResponse)

COLLISION_FREE_DISTANCE = 0.1   # conservation is judged away from close encounters


def _config(model) -> IntegratorConfig:
    return IntegratorConfig(
        rel_tol=model.rel_tol, abs_tol=model.abs_tol,
        max_step=model.max_step if model.max_step is not None else math.inf,
        collision_radius=model.collision_radius,
        max_time=model.max_time if model.max_time is not None else math.inf)


def _window_conservation(traj) -> tuple[float, float]:
    """(energy drift, max |L|) over samples clear of close encounters."""
    idx = [k for k, s in enumerate(traj.states)
           if pair_distances(s).min() >= COLLISION_FREE_DISTANCE]
    if not idx:
        return math.nan, math.nan
    es = np.array([traj.diagnostics[k].E for k in idx])
    ls = np.array([traj.diagnostics[k].L for k in idx])
    drift = float(np.max(np.abs(es - es[0])) / max(1.0, abs(es[0])))
    return drift, float(np.max(np.abs(ls)))


def _event_model(e) -> CollisionEventModel:
    return CollisionEventModel(pair=e.pair, time=e.time, min_distance=e.min_distance)


def handle_simulate(req: SimulateRequest) -> SimulateResponse:
    law = PotentialLaw.from_alpha(req.alpha)
    masses = Masses(*req.masses.as_tuple())
    fam = build(masses, law, req.theta)
    traj = integrate(fam, _config(req.config), t_end=req.t_end)
    d0 = traj.diagnostics[0]
    drift, max_l = _window_conservation(traj)
    inertias = np.array([d.I for d in traj.diagnostics])
    dev = float(np.max(np.abs(inertias - inertias[0])))
    return SimulateResponse(
        termination=traj.termination, t_final=traj.t_final,
        n_samples=len(traj.times),
        events=[_event_model(e) for e in traj.events],
        initial=DiagnosticsModel(I=d0.I, K=d0.K, V=d0.V, E=d0.E, L=d0.L),
        inertia_deviation=dev, energy_drift_window=drift,
        max_angular_momentum_window=max_l, csv=trajectory_to_csv(traj))


def handle_jets(req: JetsRequest) -> JetsResponse:
    law = PotentialLaw.from_alpha(req.alpha)
    masses = req.masses.as_tuple()
    theta = req.theta
    if theta is None:
        if len(set(masses)) != 1:
            raise ValueError("omitting theta needs equal masses "
                             "(the consistency angle is equal-mass only)")
        if req.alpha == 2:
            theta = 0.0  # every angle satisfies the second-order condition
        else:
            theta = jets.consistency_angle(req.alpha)
    report = jets.derivative_report(masses, law, theta, req.order, dps=req.dps)
    return JetsResponse(**report.as_dict())


def handle_theta(req: ThetaRequest) -> ThetaResponse:
    sol = theta_equal_mass(req.alpha)
    return ThetaResponse(solution=sol.kind, value=sol.value, angles=sol.angles())


def handle_closed_form(req: ClosedFormRequest) -> ClosedFormResponse:
    law = PotentialLaw.power(req.alpha)
    theta = req.theta if req.alpha == 2.0 else 0.0
    fam = build(Masses.equal(), law, theta)
    expected = ALPHA2_COLLISION_TIME if req.alpha == 2.0 else ALPHA4_COLLISION_TIME
    t_end = req.t_end if req.t_end is not None else 2.0 * expected
    traj = integrate(fam, _config(req.config), t_end=t_end)
    collision = traj.events[0] if traj.events else None
    pos_err = None
    if req.compare:
        reference = ((lambda t: closed_form_alpha2(theta, t))
                     if req.alpha == 2.0 else closed_form_alpha4)
        pos_err = max_position_error(traj, reference, 0.9 * expected)
    inertias = np.array([d.I for d in traj.diagnostics])
    return ClosedFormResponse(
        alpha=req.alpha, theta=theta, termination=traj.termination,
        collision=_event_model(collision) if collision else None,
        expected_collision_time=expected,
        collision_time_error=(abs(collision.time - expected) if collision else None),
        max_position_error=pos_err,
        max_inertia_deviation=float(np.max(np.abs(inertias - 1.0))),
        csv=trajectory_to_csv(traj))


def handle_appendix_verify(req: AppendixVerifyRequest) -> dict:
    return certificate.build_certificate(digits=req.digits)


def handle_choreo_scan(req: ChoreoScanRequest) -> ChoreoScanResponse:
    law = PotentialLaw.from_alpha(req.alpha)
    result = choreography.scan((req.theta_min, req.theta_max), req.steps,
                               law=law, horizon=req.horizon, rel_tol=req.rel_tol)
    best = None
    try:
        b = result.best()
        best = ScanBest(theta=b.theta, period=b.period, residual=b.residual)
    except NoProgress:
        pass
    return ChoreoScanResponse(steps=len(result.rows), best=best,
                              csv=choreography.scan_to_csv(result))


def handle_choreo_refine(req: ChoreoRefineRequest) -> ChoreoRefineResponse:
    law = PotentialLaw.from_alpha(req.alpha)
    try:
        sol = choreography.refine(req.theta, req.period, law=law,
                                  rel_tol=req.rel_tol)
    except NoProgress as exc:
        return ChoreoRefineResponse(converged=False, message=str(exc))
    return ChoreoRefineResponse(converged=True, theta=sol.theta,
                                period=sol.period, residual=sol.residual,
                                fourfold=sol.fourfold_thetas())


def handle_repulsive_check(req: RepulsiveCheckRequest) -> RepulsiveCheckResponse:
    law = PotentialLaw.from_alpha(req.alpha)
    masses = Masses(*req.masses.as_tuple())
    if req.state is not None:
        state = PlanarState.from_flat(0.0, np.array(req.state))
    else:
        state = build(masses, law, req.theta).state
    value = jets.repulsive_positivity(state, masses, law)
    return RepulsiveCheckResponse(value=value, positive=value > 0)
