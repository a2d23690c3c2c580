"""Constrained one-parameter initial-condition family.

At t = 0: body 3 sits at the centre of mass, bodies 1 and 2 are on the
x-axis with m1*r1 = -m2*r2, and the common speed u is fixed so that the
moment of inertia is stationary to second order (dI/dt = d2I/dt2 = 0)
while the angular momentum vanishes. One angle theta remains free.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dynamics import (Masses, PlanarState, PotentialLaw, angular_momentum,
                       lagrange_jacobi_rhs, moment_of_inertia)
from .errors import DegenerateMasses


def speed_general(masses: Masses, alpha: float) -> float:
    """Launch speed u for arbitrary masses.

    u^2 = m3/((m1+m2)(m1+m2+m3)) * (m1 m2 2^a + m2 m3 (2m1/(m1+m2))^a
         + m3 m1 (2m2/(m1+m2))^a).

    alpha = 0 evaluates the same closed form, which is the finite log-law
    limit (all power factors become 1).
    """
    m1, m2, m3 = masses.m1, masses.m2, masses.m3
    s = m1 + m2
    u2 = m3 / (s * masses.total) * (
        m1 * m2 * 2.0**alpha
        + m2 * m3 * (2.0 * m1 / s) ** alpha
        + m3 * m1 * (2.0 * m2 / s) ** alpha)
    return math.sqrt(u2)


def speed_equal_mass(alpha: float) -> float:
    """u = sqrt((2^alpha + 2)/6) for three unit masses, any alpha."""
    return math.sqrt((2.0**alpha + 2.0) / 6.0)


@dataclass(frozen=True)
class ThetaSolution:
    """Solution set of the second-derivative consistency condition.

    kind: 'all' (every theta works), 'none' (no theta works),
    'cos2theta' (cos 2theta = value), or 'cos_theta_zero' (theta = pi/2
    branch for unequal leading masses).
    """

    kind: str
    value: float | None = None

    def __post_init__(self):
        if self.kind not in ("all", "none", "cos2theta", "cos_theta_zero"):
            raise ValueError(f"unknown ThetaSolution kind {self.kind!r}")
        if self.kind == "cos2theta":
            if self.value is None or not -1.0 <= self.value <= 1.0:
                raise ValueError("cos2theta value must lie in [-1, 1]")

    def angles(self) -> list[float]:
        """Representative theta values in [0, 2pi)."""
        if self.kind == "cos2theta":
            t = math.acos(self.value) / 2.0
            return sorted({a % (2 * math.pi) for a in (t, -t, math.pi - t, math.pi + t)})
        if self.kind == "cos_theta_zero":
            return [math.pi / 2, 3 * math.pi / 2]
        return []


def theta_equal_mass_rhs(alpha: float) -> float:
    """Right-hand side of cos 2theta = (2 + 2^a - 3a)/(3(a - 2)), a != 2."""
    return (2.0 + 2.0**alpha - 3.0 * alpha) / (3.0 * (alpha - 2.0))


def theta_equal_mass(alpha: float) -> ThetaSolution:
    """Angles that keep d2V/dt2(0) = 0 for equal masses.

    Every theta works at alpha = 2; no theta works for alpha > 4 (the
    cosine would exceed 1); otherwise cos 2theta is pinned, reaching
    exactly 1 at alpha = 4.
    """
    if alpha == 2:
        return ThetaSolution("all")
    if alpha > 4:
        return ThetaSolution("none")
    return ThetaSolution("cos2theta", value=theta_equal_mass_rhs(alpha))


def newtonian_u(masses: Masses) -> float:
    """Launch speed for alpha = -1 in its dedicated closed form."""
    m1, m2, m3 = masses.m1, masses.m2, masses.m3
    num = m3 * (m1**2 * m2**2 + (m1**3 + m1**2 * m2 + m1 * m2**2 + m2**3) * m3)
    den = 2.0 * m1 * m2 * (m1 + m2) * masses.total
    return math.sqrt(num / den)


def newtonian_equal_pair_angle(mu: float) -> float:
    """cos 2theta = -(5 + 6 mu)/(12 + 6 mu) for m1 = m2, m3 = mu*m1 at alpha = -1."""
    if mu <= 0:
        raise ValueError("mu must be positive")
    return -(5.0 + 6.0 * mu) / (12.0 + 6.0 * mu)


def newtonian_m3_coeffs(m1: float, m2: float) -> tuple[float, float, float]:
    """(c0, c1, c2) of the quadratic c2*m3^2 - c1*m3 - c0 = 0 (alpha = -1,
    m1 != m2, cos theta = 0)."""
    c2 = (m1 - m2) ** 2 * (m1 + m2) ** 2 * (m1**2 + m1 * m2 + m2**2)
    c1 = 2 * m1 * m2 * (m1 + m2) * (m1**4 + m1**3 * m2 + 3 * m1**2 * m2**2
                                    + m1 * m2**3 + m2**4)
    c0 = m1 * m2 * (m1**6 + 2 * m1**5 * m2 + m1**4 * m2**2 - m1**3 * m2**3
                    + m1**2 * m2**4 + 2 * m1 * m2**5 + m2**6)
    return c0, c1, c2


def newtonian_m3_root(m1: float, m2: float) -> float:
    """Positive root m3 = (c1 + sqrt(c1^2 + 4 c0 c2))/(2 c2)."""
    if m1 <= 0 or m2 <= 0:
        raise ValueError("masses must be positive")
    if m1 == m2:
        raise DegenerateMasses("m1 = m2 makes the quadratic degenerate (c2 = 0)")
    c0, c1, c2 = newtonian_m3_coeffs(m1, m2)
    return (c1 + math.sqrt(c1**2 + 4 * c0 * c2)) / (2 * c2)


@dataclass(frozen=True)
class InitialFamily:
    """A point of the family: masses, law, angle, derived speed, t=0 state."""

    masses: Masses
    law: PotentialLaw
    theta: float
    u: float
    state: PlanarState


def build(masses: Masses, law: PotentialLaw, theta: float) -> InitialFamily:
    """Construct the t = 0 configuration for the given angle.

    r1 = (2 m2/(m1+m2), 0), r2 = (-2 m1/(m1+m2), 0), r3 = 0;
    v1 = v2 = -u (cos t, sin t), v3 = (m1+m2)/m3 * u (cos t, sin t).
    """
    m1, m2, m3 = masses.m1, masses.m2, masses.m3
    s = m1 + m2
    u = speed_general(masses, 0.0 if law.is_log else law.alpha)
    c, sn = math.cos(theta), math.sin(theta)
    uvec = np.array([u * c, u * sn])
    state = PlanarState.from_vectors(
        0.0,
        (2.0 * m2 / s, 0.0), (-2.0 * m1 / s, 0.0), (0.0, 0.0),
        -uvec, -uvec, (s / m3) * uvec)
    return InitialFamily(masses=masses, law=law, theta=float(theta), u=u, state=state)


@dataclass(frozen=True)
class ConstraintReport:
    """Residuals of the defining constraints at t = 0."""

    centre_of_mass: float     # |sum m_i r_i|
    inertia_rate: float       # |dI/dt|
    angular_momentum: float   # |L|
    lagrange_jacobi: float    # |2K - alpha V|

    def max_residual(self) -> float:
        return max(self.centre_of_mass, self.inertia_rate,
                   self.angular_momentum, self.lagrange_jacobi)

    def ok(self, tol: float = 1e-12) -> bool:
        return self.max_residual() < tol


def verify_constraints(family: InitialFamily) -> ConstraintReport:
    st, masses = family.state, family.masses
    m = masses.as_array()
    com = float(np.linalg.norm(np.sum(m[:, None] * st.positions, axis=0)))
    didt = float(np.sum(m * np.sum(st.positions * st.velocities, axis=1)))
    return ConstraintReport(
        centre_of_mass=com,
        inertia_rate=abs(didt),
        angular_momentum=abs(angular_momentum(st, masses)),
        lagrange_jacobi=abs(lagrange_jacobi_rhs(st, masses, family.law)))


def family_inertia(family: InitialFamily) -> float:
    return moment_of_inertia(family.state, family.masses)
