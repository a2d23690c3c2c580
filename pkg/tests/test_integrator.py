import math

import numpy as np
import pytest

from trilab.dynamics import (Masses, PotentialLaw, diagnostics,
                             moment_of_inertia, pair_distances,
                             potential_energy)
from trilab.family import build, theta_equal_mass
from trilab.integrator import (ALPHA2_COLLISION_TIME, ALPHA4_COLLISION_TIME,
                               CSV_HEADER, IntegratorConfig, closed_form_alpha2,
                               closed_form_alpha4, detect_collisions,
                               energy_drift, inertia_variation, integrate,
                               lj_residual, max_angular_momentum,
                               max_position_error, trajectory_to_csv)

EQ = Masses.equal()
CFG = IntegratorConfig()


def newtonian_family(theta=None):
    if theta is None:
        theta = math.acos(theta_equal_mass(-1.0).value) / 2
    return build(EQ, PotentialLaw.power(-1.0), theta)


class TestClosedFormAlpha2:
    def test_initial_data(self):
        st = closed_form_alpha2(0.65, 0.0)
        fam = build(EQ, PotentialLaw.power(2.0), 0.65)
        assert np.allclose(st.positions, fam.state.positions, atol=1e-15)
        assert np.allclose(st.velocities, fam.state.velocities, atol=1e-15)
        assert fam.u == pytest.approx(1.0, rel=1e-15)

    def test_bodies_12_collide(self):
        st = closed_form_alpha2(0.3, ALPHA2_COLLISION_TIME)
        assert np.allclose(st.r1, st.r2, atol=1e-15)

    @pytest.mark.parametrize("t", [0.0, 0.4, 1.7, 5.0])
    def test_inertia_exactly_one(self, t):
        st = closed_form_alpha2(1.1, t)
        assert moment_of_inertia(st, EQ) == pytest.approx(1.0, abs=1e-14)

    def test_velocities_are_derivatives(self):
        h = 1e-6
        for t in (0.2, 0.8):
            st = closed_form_alpha2(0.9, t)
            fd = (closed_form_alpha2(0.9, t + h).positions
                  - closed_form_alpha2(0.9, t - h).positions) / (2 * h)
            assert np.allclose(st.velocities, fd, atol=1e-9)


class TestClosedFormAlpha4:
    def test_initial_data(self):
        st = closed_form_alpha4(0.0)
        assert np.allclose(st.positions[:, 0], (1.0, -1.0, 0.0), atol=1e-15)
        assert np.allclose(st.velocities[:, 0],
                           (-math.sqrt(3), -math.sqrt(3), 2 * math.sqrt(3)),
                           atol=1e-14)
        assert np.allclose(st.positions[:, 1], 0.0)

    def test_bodies_13_collide(self):
        st = closed_form_alpha4(ALPHA4_COLLISION_TIME)
        assert st.positions[0, 0] == pytest.approx(st.positions[2, 0], abs=1e-15)

    @pytest.mark.parametrize("t", [0.0, 0.05, 0.33, 2.0])
    def test_inertia_exactly_one(self, t):
        st = closed_form_alpha4(t)
        assert moment_of_inertia(st, EQ) == pytest.approx(1.0, abs=1e-14)

    @pytest.mark.parametrize("t", [0.0, 0.04, 0.11])
    def test_reduced_equation(self, t):
        # -(9/2) x_i sum x_j^2 equals the pairwise cubic force sum
        x = closed_form_alpha4(t).positions[:, 0]
        for i in range(3):
            cubic = sum((x[j] - x[i]) ** 3 for j in range(3) if j != i)
            assert cubic == pytest.approx(-4.5 * x[i] * np.sum(x**2), rel=1e-10, abs=1e-12)


class TestIntegrateAlpha2:
    @pytest.mark.parametrize("theta", [0.0, 0.3, 1.2])
    def test_matches_closed_form(self, theta):
        fam = build(EQ, PotentialLaw.power(2.0), theta)
        traj = integrate(fam, CFG, t_end=2.0)
        err = max_position_error(traj, lambda t: closed_form_alpha2(theta, t),
                                 0.9 * ALPHA2_COLLISION_TIME)
        assert err < 1e-8

    def test_collision_located(self):
        fam = build(EQ, PotentialLaw.power(2.0), 0.3)
        traj = integrate(fam, CFG, t_end=2.0)
        assert traj.termination == "collision"
        assert traj.events
        ev = traj.events[0]
        assert ev.pair == (1, 2)
        assert abs(ev.time - ALPHA2_COLLISION_TIME) < 1e-6

    def test_inertia_constant(self):
        fam = build(EQ, PotentialLaw.power(2.0), 0.7)
        traj = integrate(fam, CFG, t_end=2.0)
        dev, _ = inertia_variation(traj)
        assert dev < 1e-8


class TestIntegrateAlpha4:
    def test_matches_closed_form_and_collision(self):
        fam = build(EQ, PotentialLaw.power(4.0), 0.0)
        traj = integrate(fam, CFG, t_end=1.0)
        err = max_position_error(traj, closed_form_alpha4, 0.9 * ALPHA4_COLLISION_TIME)
        assert err < 1e-8
        assert traj.events and traj.events[0].pair == (1, 3)
        assert abs(traj.events[0].time - ALPHA4_COLLISION_TIME) < 1e-6
        dev, _ = inertia_variation(traj)
        assert dev < 1e-8


class TestIntegrateAlphaMinus2:
    @pytest.mark.parametrize("theta", [0.3, 0.7, 1.1])
    def test_constant_inertia_until_close_encounter(self, theta):
        fam = build(EQ, PotentialLaw.power(-2.0), theta)
        traj = integrate(fam, CFG, t_end=10.0)
        dev, _ = inertia_variation(traj)
        assert dev < 1e-8
        assert abs(traj.diagnostics[0].E) < 1e-12
        # these launch angles all fall into a finite-time pair collapse;
        # the run must have made real progress before terminating
        assert traj.t_final > 0.3
        if traj.termination != "t_end":
            assert min(pair_distances(traj.states[-1])) < 1e-3

    def test_no_collision_events_before_radius(self):
        fam = build(EQ, PotentialLaw.power(-2.0), 0.7)
        traj = integrate(fam, CFG, t_end=10.0)
        assert detect_collisions(traj, CFG) == traj.events


class TestIntegrateNewtonian:
    def test_inertia_not_constant(self):
        traj = integrate(newtonian_family(), CFG, t_end=5.0)
        assert traj.termination == "t_end"
        dev, _ = inertia_variation(traj)
        assert dev > 1e-4

    def test_conservation(self):
        traj = integrate(newtonian_family(), CFG, t_end=5.0)
        assert energy_drift(traj) < 1e-9
        assert max_angular_momentum(traj) < 1e-10

    def test_forward_backward_potential_symmetry(self):
        # V(r(-t)) = V(r(t)) for the equal-mass family
        fam = newtonian_family()
        fwd = integrate(fam, CFG, t_end=2.0)
        bwd = integrate(fam, CFG, t_end=-2.0)
        ts = np.linspace(0.05, 1.95, 40)
        worst = 0.0
        for t in ts:
            vf = potential_energy(fwd.state_at(t), EQ, fam.law)
            vb = potential_energy(bwd.state_at(-t), EQ, fam.law)
            worst = max(worst, abs(vf - vb) / abs(vf))
        assert worst < 1e-8

    def test_lj_residual_matches_fd_oracle(self):
        # oracle: residual ~ (h^2/12) max|d4I/dt4|, with d4I/dt4 estimated by
        # second differences of the Lagrange-Jacobi right-hand side
        from trilab.dynamics import lagrange_jacobi_rhs
        traj = integrate(newtonian_family(), CFG, t_end=5.0)
        h = 1e-3
        ts = np.arange(0.0, 5.0 + h / 2, h)
        rhs = np.array([lagrange_jacobi_rhs(traj.state_at(t), EQ, traj.law)
                        for t in ts])
        i4_max = np.max(np.abs((rhs[2:] - 2 * rhs[1:-1] + rhs[:-2]) / h**2))
        residual = lj_residual(traj, h=h)
        assert residual < 2.0 * (h**2 / 12.0) * i4_max + 1e-7
        assert residual < 1e-4

    def test_lj_residual_second_order(self):
        traj = integrate(newtonian_family(), CFG, t_end=5.0)
        r1 = lj_residual(traj, h=8e-3)
        r2 = lj_residual(traj, h=4e-3)
        assert 2.5 < r1 / r2 < 5.5  # ~4x per halving until the error floor

    def test_lj_residual_alpha_minus2(self):
        # I is flat and 2K - aV = 2E = 0, so only the interpolant noise
        # (amplified by 1/h^2) remains; h is kept large enough to sit below 1e-8
        fam = build(EQ, PotentialLaw.power(-2.0), 1.1)
        traj = integrate(fam, CFG, t_end=2.0)
        assert lj_residual(traj, h=5e-2) < 1e-8


class TestLogLaw:
    def test_runs_and_conserves(self):
        fam = build(EQ, PotentialLaw.log(), 0.8)
        traj = integrate(fam, CFG, t_end=4.0)
        assert traj.termination == "t_end"
        assert energy_drift(traj) < 1e-9
        assert max_angular_momentum(traj) < 1e-10


class TestInertiaVariation:
    def test_single_sample(self):
        fam = build(EQ, PotentialLaw.power(-1.0), 0.4)
        traj = integrate(fam, CFG, t_end=1.0)
        single = type(traj)(masses=traj.masses, law=traj.law,
                            times=traj.times[:1], states=traj.states[:1],
                            diagnostics=traj.diagnostics[:1], events=[],
                            termination="t_end", dense=None)
        assert inertia_variation(single) == (0.0, 0.0)


class TestTrajectoryCsv:
    def test_header_and_shape(self):
        fam = build(EQ, PotentialLaw.power(2.0), 0.3)
        traj = integrate(fam, CFG, t_end=2.0)
        text = trajectory_to_csv(traj)
        lines = text.strip().split("\n")
        assert lines[0] == CSV_HEADER
        assert lines[0].count(",") == 17
        data_lines = [l for l in lines[1:] if not l.startswith("#")]
        assert len(data_lines) == len(traj.times)
        assert all(l.count(",") == 17 for l in data_lines)
        footer = [l for l in lines if l.startswith("#")]
        assert footer and footer[0].startswith("# collision pair=(1,2) t=")

    def test_deterministic(self):
        fam = build(EQ, PotentialLaw.power(-1.0), 0.5)
        a = trajectory_to_csv(integrate(fam, CFG, t_end=1.0))
        b = trajectory_to_csv(integrate(fam, CFG, t_end=1.0))
        assert a == b

    def test_roundtrip_first_row(self):
        fam = build(EQ, PotentialLaw.power(-1.0), 0.5)
        traj = integrate(fam, CFG, t_end=1.0)
        row = trajectory_to_csv(traj).strip().split("\n")[1].split(",")
        assert float(row[0]) == 0.0
        assert float(row[1]) == 1.0
        d = diagnostics(traj.states[0], EQ, fam.law)
        assert float(row[13]) == d.I


class TestConfigValidation:
    def test_bad_tolerances(self):
        with pytest.raises(ValueError):
            IntegratorConfig(rel_tol=-1.0)
        with pytest.raises(ValueError):
            IntegratorConfig(collision_radius=0.0)

    def test_max_time_caps_horizon(self):
        fam = build(EQ, PotentialLaw.power(-1.0), 0.4)
        traj = integrate(fam, IntegratorConfig(max_time=1.0), t_end=5.0)
        assert traj.t_final == pytest.approx(1.0, abs=1e-12)

    def test_max_step_controls_sampling(self):
        fam = build(EQ, PotentialLaw.power(-1.0), 0.4)
        traj = integrate(fam, IntegratorConfig(max_step=0.01), t_end=1.0)
        assert np.max(np.diff(traj.times)) <= 0.01 + 1e-12
