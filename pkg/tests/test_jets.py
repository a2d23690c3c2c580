import math

import mpmath as mp
import pytest

from trilab import jets
from trilab.dynamics import Masses, PotentialLaw
from trilab.errors import AlphaTwoSingular
from trilab.family import build, newtonian_m3_root
from trilab.integrator import IntegratorConfig, integrate

EQ = (1, 1, 1)
SQRT3 = math.sqrt(3.0)


def law_of(alpha):
    return PotentialLaw.from_alpha(alpha)


class TestExpandJet:
    def test_order_one_coefficients_are_velocities(self):
        fam = build(Masses.equal(), law_of(-1.0), 0.8)
        jet = jets.expand_jet(EQ, law_of(-1.0), 0.8, 4)
        for i in range(3):
            assert float(jet.x[i][0]) == pytest.approx(fam.state.positions[i, 0], abs=1e-15)
            assert float(jet.x[i][1]) == pytest.approx(fam.state.velocities[i, 0], abs=1e-15)
            assert float(jet.y[i][1]) == pytest.approx(fam.state.velocities[i, 1], abs=1e-15)

    @pytest.mark.parametrize("theta", [0.0, 0.7, 2.1])
    def test_alpha2_difference_is_cosine(self, theta):
        # r1 - r2 = (2 cos(sqrt3 t), 0) for any launch angle
        order = 10
        jet = jets.expand_jet(EQ, law_of(2.0), theta, order)
        with mp.workdps(60):
            for k in range(order + 1):
                diff_x = jet.x[0][k] - jet.x[1][k]
                diff_y = jet.y[0][k] - jet.y[1][k]
                expected = (2 * mp.power(-3, k // 2) / mp.factorial(k)
                            if k % 2 == 0 else mp.mpf(0))
                assert abs(diff_x - expected) < mp.mpf("1e-45")
                assert abs(diff_y) < mp.mpf("1e-45")

    def test_alpha4_third_body_is_sine(self):
        # x3(t) = (2/sqrt3) sin(3t) at theta = 0
        order = 9
        jet = jets.expand_jet(EQ, law_of(4.0), 0.0, order)
        with mp.workdps(60):
            for k in range(order + 1):
                expected = (2 / mp.sqrt(3) * mp.power(3, k) * mp.power(-1, k // 2)
                            / mp.factorial(k) if k % 2 == 1 else mp.mpf(0))
                assert abs(jet.x[2][k] - expected) < mp.mpf("1e-40")
                assert abs(jet.y[2][k]) < mp.mpf("1e-45")

    def test_order_validation(self):
        with pytest.raises(ValueError):
            jets.expand_jet(EQ, law_of(-1.0), 0.0, 1)

    def test_jet_from_family_matches_direct(self):
        fam = build(Masses.equal(), law_of(-1.0), 0.8)
        a = jets.jet_from_family(fam, 4)
        b = jets.expand_jet(EQ, law_of(-1.0), 0.8, 4)
        for i in range(3):
            assert a.x[i] == b.x[i] and a.y[i] == b.y[i]

    @pytest.mark.parametrize("alpha", [-2.0, -1.0, 0.0, 1.0, 3.0])
    def test_matches_integrator_at_small_time(self, alpha):
        law = law_of(alpha)
        theta = 0.7
        jet = jets.expand_jet(EQ, law, theta, 10)
        fam = build(Masses.equal(), law, theta)
        traj = integrate(fam, IntegratorConfig(), t_end=2e-3)
        t = 1e-3
        y = traj.state_at(t)
        for i in range(3):
            px, py = jet.position(i, t)
            assert abs(float(px) - y.positions[i, 0]) < 1e-12
            assert abs(float(py) - y.positions[i, 1]) < 1e-12


class TestDerivativesOfV:
    def test_value0_is_potential(self):
        from trilab.dynamics import potential_energy
        for alpha in (-1.0, 0.0, 3.0):
            law = law_of(alpha)
            rep = jets.derivative_report(EQ, law, 0.6, 4)
            fam = build(Masses.equal(), law, 0.6)
            assert float(rep.values[0]) == pytest.approx(
                potential_energy(fam.state, fam.masses, law), rel=1e-13)

    @pytest.mark.parametrize("alpha", [-1.0, 0.0, 1.0, 3.0])
    def test_odd_orders_vanish(self, alpha):
        theta = jets.consistency_angle(alpha)
        rep = jets.derivative_report(EQ, law_of(alpha), theta, 9)
        flags = rep.zero_flags()
        for n in (1, 3, 5, 7, 9):
            assert flags[n], f"odd order {n} should vanish at alpha={alpha}"
        # relative to even neighbours, residual < 1e-10
        with mp.workdps(60):
            for n in (3, 5):
                neighbour = max(abs(rep.values[n - 1]), abs(rep.values[n + 1]))
                assert abs(rep.values[n]) < mp.mpf("1e-10") * neighbour

    @pytest.mark.parametrize("alpha", [-1.0, 0.0, 1.0, 3.0])
    def test_second_derivative_vanishes_at_consistency_angle(self, alpha):
        rep = jets.derivative_report(EQ, law_of(alpha), jets.consistency_angle(alpha), 6)
        assert rep.zero_flags()[2]
        assert not rep.zero_flags()[4]  # fourth derivative must NOT vanish

    def test_alpha_minus1_hand_angle(self):
        theta = mp.acos(mp.mpf(-11) / 18) / 2
        rep = jets.derivative_report(EQ, law_of(-1.0), theta, 4)
        scale = abs(rep.values[4])
        assert abs(rep.values[2]) < mp.mpf("1e-10") * scale

    def test_alpha2_any_angle_kills_second_derivative(self):
        for theta in (0.1, 0.5, 0.9, 1.3, 2.7):
            rep = jets.derivative_report(EQ, law_of(2.0), theta, 4)
            assert rep.zero_flags()[2]

    def test_alpha_minus2_no_consistency_but_zero_energy(self):
        # Eq of motion at alpha = -2: derivatives of V need not vanish...
        rep = jets.derivative_report(EQ, law_of(-2.0), 0.7, 4)
        assert not rep.zero_flags()[2]
        # ...while 2K - alpha V (= 2E) is exactly zero at t = 0
        fam = build(Masses.equal(), law_of(-2.0), 0.7)
        from trilab.dynamics import diagnostics
        assert abs(diagnostics(fam.state, fam.masses, fam.law).E) < 1e-12


class TestClosedForms:
    @pytest.mark.parametrize("alpha", [-1.0, 0.0, 1.0, 3.0])
    def test_f4_f6_match_jets(self, alpha):
        rep = jets.derivative_report(EQ, law_of(alpha), jets.consistency_angle(alpha), 6)
        check = jets.cross_check(rep, {4: jets.f4_closed(alpha),
                                       6: jets.f6_closed(alpha)}, tol=1e-9)
        assert check.passed, check.diffs

    def test_alpha_two_pole(self):
        with pytest.raises(AlphaTwoSingular):
            jets.f4_closed(2.0)
        with pytest.raises(AlphaTwoSingular):
            jets.f6_closed(2.0)

    def test_f4_root_bracket(self):
        # f4(alpha, 2^alpha) changes sign between -1.9 and -1.8
        with mp.workdps(40):
            lo = jets.f4_poly(mp.mpf("-1.9"), mp.power(2, mp.mpf("-1.9")))
            hi = jets.f4_poly(mp.mpf("-1.8"), mp.power(2, mp.mpf("-1.8")))
        assert lo * hi < 0

    def test_f6_root_bracket(self):
        with mp.workdps(40):
            lo = jets.f6_poly(mp.mpf("-1.9"), mp.power(2, mp.mpf("-1.9")))
            hi = jets.f6_poly(mp.mpf("-1.8"), mp.power(2, mp.mpf("-1.8")))
        assert lo * hi < 0

    def test_f4_root_localized_tighter(self):
        # the quartic-derivative extra root sits near -1.886, the sextic near -1.822
        with mp.workdps(40):
            assert jets.f4_poly(mp.mpf("-1.89"), mp.power(2, mp.mpf("-1.89"))) * \
                jets.f4_poly(mp.mpf("-1.88"), mp.power(2, mp.mpf("-1.88"))) < 0
            assert jets.f6_poly(mp.mpf("-1.83"), mp.power(2, mp.mpf("-1.83"))) * \
                jets.f6_poly(mp.mpf("-1.82"), mp.power(2, mp.mpf("-1.82"))) < 0


class TestNewtonianClosedForms:
    @pytest.mark.parametrize("mu", [1, 3, mp.mpf(0.5)])
    def test_equal_pair_matches_jets(self, mu):
        theta = jets.newtonian_equal_pair_angle_mp(mu)
        masses = (1, 1, mu)
        rep = jets.derivative_report(masses, law_of(-1.0), theta, 6)
        closed = jets.newtonian_equal_pair_closed(1, mu)
        check = jets.cross_check(rep, closed, tol=1e-9)
        assert check.passed, check.diffs

    def test_equal_pair_critical_mu(self):
        with mp.workdps(60):
            mu = (197 + 14 * mp.sqrt(418)) / 108
        theta = jets.newtonian_equal_pair_angle_mp(mu)
        rep = jets.derivative_report((1, 1, mu), law_of(-1.0), theta, 6)
        flags = rep.zero_flags()
        assert flags[2] and flags[4]        # second and fourth vanish
        assert rep.values[6] < 0            # sixth strictly negative

    def test_equal_pair_d6_always_negative(self):
        for mu in (0.1, 0.5, 1.0, 2.0, 4.47, 10.0, 100.0):
            assert jets.newtonian_equal_pair_closed(1, mu)[6] < 0

    def test_branches_odd_orders_vanish_to_nine(self):
        # time reversal equals a symmetry of the initial data on both
        # general-mass branches, so odd orders vanish there too
        law = law_of(-1.0)
        rep = jets.derivative_report((1, 1, 2.5), law,
                                     jets.newtonian_equal_pair_angle_mp(2.5), 9)
        with mp.workdps(60):
            half_pi = mp.pi / 2
        m3 = jets.newtonian_m3_root_mp(1, 2)
        rep2 = jets.derivative_report((1, 2, m3), law, half_pi, 9)
        for r in (rep, rep2):
            flags = r.zero_flags()
            assert all(flags[n] for n in (1, 3, 5, 7, 9))

    @pytest.mark.parametrize("pair", [(1, 2), (2, 3), (1, 3)])
    def test_unequal_pair_matches_jets(self, pair):
        m1, m2 = pair
        m3 = jets.newtonian_m3_root_mp(m1, m2)
        assert float(m3) == pytest.approx(newtonian_m3_root(m1, m2), rel=1e-15)
        with mp.workdps(60):
            theta = mp.pi / 2  # cos(theta) = 0 branch, at working precision
        rep = jets.derivative_report((m1, m2, m3), law_of(-1.0), theta, 6)
        closed = jets.newtonian_unequal_pair_closed(m1, m2, m3)
        check = jets.cross_check(rep, closed, tol=1e-9)
        assert check.passed, check.diffs
        assert rep.zero_flags()[2]
        assert rep.values[4] < 0


class TestCrossCheck:
    def test_reports_differences(self):
        rep = jets.derivative_report(EQ, law_of(-1.0), jets.consistency_angle(-1.0), 4)
        bad = jets.cross_check(rep, {4: 0.0}, tol=1e-9)
        assert not bad.passed

    def test_near_zero_pair_passes(self):
        rep = jets.derivative_report(EQ, law_of(-1.0), jets.consistency_angle(-1.0), 4)
        ok = jets.cross_check(rep, {2: 0.0}, tol=1e-9)
        assert ok.passed


class TestRepulsivePositivity:
    def test_family_state_alpha1(self):
        fam = build(Masses.equal(), law_of(1.0), 0.4)
        val = jets.repulsive_positivity(fam.state, fam.masses, fam.law)
        assert val > 0

    def test_random_states_newtonian(self, rng):
        from conftest import random_state
        for _ in range(10):
            st = random_state(rng)
            assert jets.repulsive_positivity(st, Masses.equal(), law_of(-1.0)) > 0

    def test_log_zero_velocity(self):
        from trilab.dynamics import PlanarState
        st = PlanarState.from_vectors(0, (1, 0), (-1, 0), (0, 1),
                                      (0, 0), (0, 0), (0, 0))
        val = jets.repulsive_positivity(st, Masses.equal(), PotentialLaw.log())
        assert val == pytest.approx(3.0, rel=1e-15)


class TestReportSerialization:
    def test_as_dict_schema(self):
        rep = jets.derivative_report(EQ, law_of(-1.0), jets.consistency_angle(-1.0), 6)
        d = rep.as_dict()
        assert set(d) == {"law", "alpha", "masses", "theta", "order",
                          "values", "zero_flags"}
        assert d["law"] == "power" and len(d["values"]) == 7
        assert all(isinstance(v, str) for v in d["values"])

    def test_log_law_echo(self):
        rep = jets.derivative_report(EQ, PotentialLaw.log(), jets.consistency_angle(0.0), 4)
        d = rep.as_dict()
        assert d["law"] == "log" and d["alpha"] == 0.0
