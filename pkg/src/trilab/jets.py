"""High-order time derivatives of the potential via Taylor jets.

The equations of motion close the Taylor recursion: position coefficients
of order n are fixed by acceleration coefficients of order n-2, which are
polynomial/power-series data of lower-order position coefficients. The
potential composed with that trajectory is then itself a truncated series,
and n! times its n-th coefficient is d^n V/dt^n at t = 0.

All series arithmetic runs in mpmath at >= 50 significant digits so that
"this derivative vanishes" can be decided against a 1e-20 relative
threshold -- double precision dies around order 6.
"""
from __future__ import annotations

from dataclasses import dataclass

import mpmath as mp

from .dynamics import Masses, PotentialLaw
from .errors import AlphaTwoSingular, CollisionSingularity
from .family import InitialFamily

DEFAULT_DPS = 60          # working precision (decimal digits)
ZERO_TEST_RTOL = mp.mpf("1e-20")

_PAIRS = ((0, 1), (0, 2), (1, 2))


# ---------------------------------------------------------------------------
# truncated power-series helpers (coefficient lists, ascending order)
# ---------------------------------------------------------------------------

def _smul(a, b, order):
    out = [mp.mpf(0)] * (order + 1)
    for i in range(min(len(a), order + 1)):
        ai = a[i]
        if ai == 0:
            continue
        for j in range(min(len(b), order - i + 1)):
            out[i + j] += ai * b[j]
    return out


def _ssub(a, b):
    n = max(len(a), len(b))
    out = [mp.mpf(0)] * n
    for i, x in enumerate(a):
        out[i] += x
    for i, y in enumerate(b):
        out[i] -= y
    return out


def _spow(s, beta, order):
    """p = s^beta with s[0] > 0, via k*p_k*s_0 = sum_j (beta*j - (k-j)) s_j p_{k-j}."""
    if s[0] <= 0:
        raise CollisionSingularity("series power needs positive leading coefficient")
    p = [mp.mpf(0)] * (order + 1)
    p[0] = mp.power(s[0], beta)
    for k in range(1, order + 1):
        acc = mp.mpf(0)
        for j in range(1, min(k, len(s) - 1) + 1):
            acc += (beta * j - (k - j)) * s[j] * p[k - j]
        p[k] = acc / (k * s[0])
    return p


def _slog(s, order):
    """l = log s with s[0] > 0, via l' = s'/s."""
    if s[0] <= 0:
        raise CollisionSingularity("series log needs positive leading coefficient")
    out = [mp.mpf(0)] * (order + 1)
    out[0] = mp.log(s[0])
    for k in range(1, order + 1):
        acc = k * s[k] if k < len(s) else mp.mpf(0)
        for j in range(1, k):
            if k - j < len(s):
                acc -= j * out[j] * s[k - j]
        out[k] = acc / (k * s[0])
    return out


# ---------------------------------------------------------------------------
# family initial data at working precision
# ---------------------------------------------------------------------------

def consistency_angle(alpha, dps: int = DEFAULT_DPS) -> mp.mpf:
    """Equal-mass angle with vanishing second derivative, at full precision.

    theta = acos((2 + 2^a - 3a)/(3(a-2)))/2; alpha = 2 has no pinned angle
    and alpha > 4 no angle at all.
    """
    with mp.workdps(dps):
        a = mp.mpf(alpha)
        if a == 2:
            raise ValueError("alpha = 2 imposes no angle; every theta works")
        rhs = (2 + mp.power(2, a) - 3 * a) / (3 * (a - 2))
        if rhs > 1:
            raise ValueError(f"no consistency angle exists for alpha = {alpha}")
        return mp.acos(rhs) / 2


def newtonian_equal_pair_angle_mp(mu, dps: int = DEFAULT_DPS) -> mp.mpf:
    """Full-precision angle for the m1 = m2, m3 = mu*m branch at alpha = -1."""
    with mp.workdps(dps):
        mu = mp.mpf(mu)
        return mp.acos(-(5 + 6 * mu) / (12 + 6 * mu)) / 2


def newtonian_m3_root_mp(m1, m2, dps: int = DEFAULT_DPS) -> mp.mpf:
    """Full-precision positive root of the m1 != m2 quadratic for m3.

    The second-derivative zero test resolves 1e-20 relative, which a
    binary64 root cannot reach; jet work needs this variant.
    """
    with mp.workdps(dps):
        m1, m2 = mp.mpf(m1), mp.mpf(m2)
        if m1 == m2:
            from .errors import DegenerateMasses
            raise DegenerateMasses("m1 = m2 makes the quadratic degenerate")
        c2 = (m1 - m2) ** 2 * (m1 + m2) ** 2 * (m1**2 + m1 * m2 + m2**2)
        c1 = 2 * m1 * m2 * (m1 + m2) * (m1**4 + m1**3 * m2 + 3 * m1**2 * m2**2
                                        + m1 * m2**3 + m2**4)
        c0 = m1 * m2 * (m1**6 + 2 * m1**5 * m2 + m1**4 * m2**2 - m1**3 * m2**3
                        + m1**2 * m2**4 + 2 * m1 * m2**5 + m2**6)
        return (c1 + mp.sqrt(c1**2 + 4 * c0 * c2)) / (2 * c2)


def _initial_series_data(masses, law: PotentialLaw, theta):
    """t=0 positions/velocities of the family as mpf pairs."""
    m1, m2, m3 = (mp.mpf(m) for m in masses)
    s = m1 + m2
    a = mp.mpf(0) if law.is_log else mp.mpf(law.alpha)
    u2 = m3 / (s * (s + m3)) * (m1 * m2 * mp.power(2, a)
                                + m2 * m3 * mp.power(2 * m1 / s, a)
                                + m3 * m1 * mp.power(2 * m2 / s, a))
    u = mp.sqrt(u2)
    c, sn = mp.cos(mp.mpf(theta)), mp.sin(mp.mpf(theta))
    pos = ((2 * m2 / s, mp.mpf(0)), (-2 * m1 / s, mp.mpf(0)), (mp.mpf(0), mp.mpf(0)))
    vel = ((-u * c, -u * sn), (-u * c, -u * sn), (s / m3 * u * c, s / m3 * u * sn))
    return (m1, m2, m3), pos, vel


def _as_mass_tuple(masses) -> tuple:
    if isinstance(masses, Masses):
        return (masses.m1, masses.m2, masses.m3)
    return tuple(masses)


# ---------------------------------------------------------------------------
# jets
# ---------------------------------------------------------------------------

@dataclass
class TrajectoryJet:
    """Taylor coefficients of the three trajectories about t = 0."""

    masses: tuple
    law: PotentialLaw
    theta: object            # mpf or float; echoed into reports
    order: int
    x: list                  # x[i][k]: k-th coefficient of body i, mpf
    y: list

    def position(self, i: int, t) -> tuple:
        """Evaluate the truncated series of body i at time t (Horner)."""
        tv = mp.mpf(t)
        px = mp.mpf(0)
        py = mp.mpf(0)
        for k in range(self.order, -1, -1):
            px = px * tv + self.x[i][k]
            py = py * tv + self.y[i][k]
        return px, py


def expand_jet(masses, law: PotentialLaw, theta, order: int,
               dps: int = DEFAULT_DPS) -> TrajectoryJet:
    """Taylor-expand the family trajectory to the given order.

    masses may be a Masses instance or a 3-tuple (mpf-able values, so exact
    rationals and mpf angles survive). theta is taken verbatim; pass an
    mpf angle when downstream zero tests need it resolved beyond binary64.
    """
    if order < 2:
        raise ValueError("jet order must be >= 2")
    mt = _as_mass_tuple(masses)
    with mp.workdps(dps):
        (m1, m2, m3), pos, vel = _initial_series_data(mt, law, theta)
        mvals = (m1, m2, m3)
        X = [[mp.mpf(0)] * (order + 1) for _ in range(3)]
        Y = [[mp.mpf(0)] * (order + 1) for _ in range(3)]
        for i in range(3):
            X[i][0], Y[i][0] = pos[i]
            X[i][1], Y[i][1] = vel[i]
        expo = mp.mpf(-1) if law.is_log else (mp.mpf(law.alpha) - 2) / 2
        for n in range(2, order + 1):
            k = n - 2
            ax = [mp.mpf(0)] * 3
            ay = [mp.mpf(0)] * 3
            for i, j in _PAIRS:
                dx = _ssub(X[j][:k + 1], X[i][:k + 1])
                dy = _ssub(Y[j][:k + 1], Y[i][:k + 1])
                d2 = [a + b for a, b in zip(_smul(dx, dx, k), _smul(dy, dy, k))]
                w = _spow(d2, expo, k)
                fx = _smul(dx, w, k)[k]
                fy = _smul(dy, w, k)[k]
                ax[i] += mvals[j] * fx
                ay[i] += mvals[j] * fy
                ax[j] -= mvals[i] * fx
                ay[j] -= mvals[i] * fy
            for i in range(3):
                X[i][n] = ax[i] / (n * (n - 1))
                Y[i][n] = ay[i] / (n * (n - 1))
    return TrajectoryJet(masses=mt, law=law, theta=theta, order=order, x=X, y=Y)


def jet_from_family(family: InitialFamily, order: int,
                    dps: int = DEFAULT_DPS) -> TrajectoryJet:
    return expand_jet(family.masses, family.law, family.theta, order, dps=dps)


@dataclass
class DerivativeReport:
    """d^n V/dt^n at t = 0 for n = 0..order, plus scale-aware zero flags."""

    masses: tuple
    law: PotentialLaw
    theta: object
    order: int
    values: list             # mpf

    def zero_flags(self) -> list[bool]:
        """value 'vanishes' iff |v| < 1e-20 * max(1, |values[2]|, |values[4]|)."""
        scale = max(mp.mpf(1), abs(self.values[2]),
                    abs(self.values[4]) if self.order >= 4 else mp.mpf(0))
        return [abs(v) < ZERO_TEST_RTOL * scale for v in self.values]

    def as_dict(self, digits: int = 50) -> dict:
        law = self.law
        return {
            "law": law.kind,
            "alpha": 0.0 if law.is_log else law.alpha,
            "masses": [float(m) for m in self.masses],
            "theta": float(self.theta),
            "order": self.order,
            "values": [mp.nstr(v, digits) for v in self.values],
            "zero_flags": self.zero_flags(),
        }


def derivatives_of_v(jet: TrajectoryJet, dps: int = DEFAULT_DPS) -> DerivativeReport:
    """Derivatives of the potential along the jet: n! times series coefficients."""
    order = jet.order
    with mp.workdps(dps):
        m = [mp.mpf(v) for v in jet.masses]
        V = [mp.mpf(0)] * (order + 1)
        for i, j in _PAIRS:
            dx = _ssub(jet.x[i], jet.x[j])
            dy = _ssub(jet.y[i], jet.y[j])
            d2 = [a + b for a, b in zip(_smul(dx, dx, order), _smul(dy, dy, order))]
            if jet.law.is_log:
                term = _slog(d2, order)
                coef = m[i] * m[j] / 2
            else:
                term = _spow(d2, mp.mpf(jet.law.alpha) / 2, order)
                coef = m[i] * m[j] / jet.law.alpha
            for k in range(order + 1):
                V[k] += coef * term[k]
        values = [mp.factorial(n) * V[n] for n in range(order + 1)]
    return DerivativeReport(masses=jet.masses, law=jet.law, theta=jet.theta,
                            order=order, values=values)


def derivative_report(masses, law: PotentialLaw, theta, order: int,
                      dps: int = DEFAULT_DPS) -> DerivativeReport:
    return derivatives_of_v(expand_jet(masses, law, theta, order, dps=dps), dps=dps)


# ---------------------------------------------------------------------------
# closed forms for the equal-mass fourth and sixth derivatives
# ---------------------------------------------------------------------------

# f4/f6 coefficient tables, ascending in y per x power
F4_SECTIONS = {
    2: (128, -36, 24, 1),
    1: (0, 224, -124, -10),
    0: (-256, -304, 104, 24),
}
F6_SECTIONS = {
    4: (6144, 6496, -1816, 60, 50, 1),
    3: (-41984, -26080, 14704, -2032, -1064, -28),
    2: (1024, -41152, -60128, 7808, 7384, 284),
    1: (81920, 173440, 150848, 2368, -18976, -1232),
    0: (-28672, -102144, -119040, -19136, 13056, 1920),
}


def _eval_sections(sections: dict, x, y):
    total = mp.mpf(0)
    for xd, coeffs in sections.items():
        inner = mp.mpf(0)
        for c in reversed(coeffs):
            inner = inner * y + c
        total += inner * mp.power(x, xd)
    return total


def f4_poly(x, y):
    """Quartic-derivative consistency polynomial f4(x, y), y standing for 2^x."""
    return _eval_sections(F4_SECTIONS, mp.mpf(x), mp.mpf(y))


def f6_poly(x, y):
    return _eval_sections(F6_SECTIONS, mp.mpf(x), mp.mpf(y))


def f4_closed(alpha, dps: int = DEFAULT_DPS) -> mp.mpf:
    """d^4 V/dt^4(0) = (2^a + 2) f4(a, 2^a) / (8 (a - 2)) at the pinned angle."""
    if alpha == 2:
        raise AlphaTwoSingular("closed-form prefactor has a pole at alpha = 2")
    with mp.workdps(dps):
        a = mp.mpf(alpha)
        y = mp.power(2, a)
        return (y + 2) * f4_poly(a, y) / (8 * (a - 2))


def f6_closed(alpha, dps: int = DEFAULT_DPS) -> mp.mpf:
    """d^6 V/dt^6(0) = (2^a + 2) f6(a, 2^a) / (32 (a - 2)^2) at the pinned angle."""
    if alpha == 2:
        raise AlphaTwoSingular("closed-form prefactor has a pole at alpha = 2")
    with mp.workdps(dps):
        a = mp.mpf(alpha)
        y = mp.power(2, a)
        return (y + 2) * f6_poly(a, y) / (32 * (a - 2) ** 2)


# ---------------------------------------------------------------------------
# Newtonian (alpha = -1) general-mass closed forms
# ---------------------------------------------------------------------------

# symmetric coefficient rows of the quartic-derivative expression on the
# m1 != m2, cos(theta) = 0 branch
P0_COEFFS = (7, 74, 321, 955, 2335, 4925, 9261, 15383, 22843, 29992, 35297,
             37102, 35297, 29992, 22843, 15383, 9261, 4925, 2335, 955, 321, 74, 7)
P1_COEFFS = (21, 136, 457, 1104, 2049, 3284, 4510, 5516, 5830, 5516, 4510,
             3284, 2049, 1104, 457, 136, 21)
OMEGA_COEFFS = (1, 2, 1, 4, 9, 15, 9, 4, 1, 2, 1)


def _homogeneous(coeffs, m1, m2):
    deg = len(coeffs) - 1
    return sum(mp.mpf(c) * mp.power(m1, deg - k) * mp.power(m2, k)
               for k, c in enumerate(coeffs))


def newtonian_equal_pair_closed(m, mu, dps: int = DEFAULT_DPS) -> dict:
    """d^2, d^4, d^6 of V at t=0 for m1 = m2 = m, m3 = mu*m, theta pinned."""
    with mp.workdps(dps):
        m = mp.mpf(m)
        mu = mp.mpf(mu)
        cos2t = -(5 + 6 * mu) / (12 + 6 * mu)
        d2 = -mp.mpf(1) / 8 * m**3 * (1 + 4 * mu) * (5 + 6 * mu + 6 * (2 + mu) * cos2t)
        d4 = -(m**4 * (1 + 4 * mu) * (-1597 - 1576 * mu + 432 * mu**2)) / (384 * mu)
        d6 = -(m**5 / (6144 * mu**2)) * (315165 + 2686088 * mu + 6911872 * mu**2
                                         + 4944512 * mu**3 + 443136 * mu**4
                                         + 110592 * mu**5)
        return {2: d2, 4: d4, 6: d6}


def newtonian_unequal_pair_closed(m1, m2, m3, dps: int = DEFAULT_DPS) -> dict:
    """d^2 and d^4 of V at t=0 for m1 != m2, cos(theta) = 0, general m3."""
    with mp.workdps(dps):
        m1 = mp.mpf(m1)
        m2 = mp.mpf(m2)
        m3 = mp.mpf(m3)
        c2 = (m1 - m2) ** 2 * (m1 + m2) ** 2 * (m1**2 + m1 * m2 + m2**2)
        c1 = 2 * m1 * m2 * (m1 + m2) * (m1**4 + m1**3 * m2 + 3 * m1**2 * m2**2
                                        + m1 * m2**3 + m2**4)
        c0 = m1 * m2 * (m1**6 + 2 * m1**5 * m2 + m1**4 * m2**2 - m1**3 * m2**3
                        + m1**2 * m2**4 + 2 * m1 * m2**5 + m2**6)
        d2 = -(m1 + m2) * (c2 * m3**2 - c1 * m3 - c0) / (16 * m1**3 * m2**3)
        omega = _homogeneous(OMEGA_COEFFS, m1, m2)
        root = mp.sqrt(m1 * m2 * omega)
        p0 = _homogeneous(P0_COEFFS, m1, m2)
        p1 = _homogeneous(P1_COEFFS, m1, m2)
        q = (128 * (m1 - m2) ** 4 * (m1**2 + m1 * m2 + m2**2) ** 3
             * (m1 * m2) ** 2
             * ((m1**4 + m1**3 * m2 + 3 * m1**2 * m2**2 + m1 * m2**3 + m2**4)
                * m1 * m2 + root))
        d4 = -3 * (m1 + m2) ** 2 * (p0 + p1 * root) / q
        return {2: d2, 4: d4}


# ---------------------------------------------------------------------------
# cross-checks and the repulsive-law positivity certificate
# ---------------------------------------------------------------------------

@dataclass
class CrossCheck:
    """Per-order relative differences between jet values and closed forms."""

    diffs: dict               # order -> relative difference (mpf)
    tol: float

    @property
    def passed(self) -> bool:
        return all(d < self.tol for d in self.diffs.values())


def cross_check(report: DerivativeReport, closed: dict, tol: float = 1e-9,
                scale_floor: float = 1e-30) -> CrossCheck:
    """Compare report.values[n] against closed[n] for each given order.

    Relative difference uses max(|a|, |b|, scale_floor) as denominator so
    a pair of near-zeros compares as equal.
    """
    diffs = {}
    for n, cval in closed.items():
        a = report.values[n]
        b = mp.mpf(cval)
        den = max(abs(a), abs(b), mp.mpf(scale_floor))
        diffs[n] = abs(a - b) / den
    return CrossCheck(diffs=diffs, tol=tol)


def repulsive_positivity(state, masses: Masses, law: PotentialLaw) -> float:
    """d2I/dt2 under the sign-flipped (repulsive) potential: 2K + alpha*V,
    or 2K + sum m_i m_j for the log law. Always positive off collisions."""
    from . import dynamics

    K = dynamics.kinetic_energy(state, masses)
    if law.is_log:
        m = masses.as_array()
        val = 2.0 * K + float(sum(m[i] * m[j] for i, j in _PAIRS))
    else:
        val = 2.0 * K + law.alpha * dynamics.potential_energy(state, masses, law)
    if not val > 0.0:
        raise AssertionError(f"repulsive-law d2I/dt2 not positive: {val}")
    return val
