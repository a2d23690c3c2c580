"""Planar three-body fundamentals: states, potentials, forces, conserved quantities.

All functions are pure and operate on immutable value objects, so they are
safe to call concurrently. States are planar; zero-angular-momentum motion
is planar, and callers reduce 3-D input before it gets here.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import CollisionSingularity

PAIRS = ((0, 1), (0, 2), (1, 2))


@dataclass(frozen=True)
class Masses:
    """Strictly positive masses of the three bodies."""

    m1: float
    m2: float
    m3: float

    def __post_init__(self):
        if not (self.m1 > 0 and self.m2 > 0 and self.m3 > 0):
            raise ValueError("all three masses must be strictly positive")

    @property
    def total(self) -> float:
        return self.m1 + self.m2 + self.m3

    def as_array(self) -> np.ndarray:
        return np.array([self.m1, self.m2, self.m3])

    @classmethod
    def equal(cls, m: float = 1.0) -> "Masses":
        return cls(m, m, m)


@dataclass(frozen=True)
class PotentialLaw:
    """Pairwise interaction law: power r^alpha (alpha != 0) or log r.

    The log law is the alpha = 0 member of the family; construct it with
    ``PotentialLaw.log()``. ``Power(0)`` is rejected.
    """

    alpha: float
    is_log: bool = False

    def __post_init__(self):
        if not self.is_log and self.alpha == 0:
            raise ValueError("alpha = 0 selects the log law; use PotentialLaw.log()")
        if self.is_log and self.alpha != 0:
            raise ValueError("log law carries alpha = 0")

    @classmethod
    def power(cls, alpha: float) -> "PotentialLaw":
        return cls(alpha=float(alpha), is_log=False)

    @classmethod
    def log(cls) -> "PotentialLaw":
        return cls(alpha=0.0, is_log=True)

    @classmethod
    def from_alpha(cls, alpha: float) -> "PotentialLaw":
        """CLI convention: alpha = 0 means the log law."""
        return cls.log() if alpha == 0 else cls.power(alpha)

    @property
    def kind(self) -> str:
        return "log" if self.is_log else "power"


@dataclass(frozen=True)
class PlanarState:
    """Positions and velocities of the three bodies at one time instant."""

    t: float
    positions: np.ndarray = field(repr=False)   # shape (3, 2)
    velocities: np.ndarray = field(repr=False)  # shape (3, 2)

    def __post_init__(self):
        p = np.asarray(self.positions, dtype=float).reshape(3, 2)
        v = np.asarray(self.velocities, dtype=float).reshape(3, 2)
        object.__setattr__(self, "positions", p)
        object.__setattr__(self, "velocities", v)

    @classmethod
    def from_vectors(cls, t, r1, r2, r3, v1, v2, v3) -> "PlanarState":
        return cls(t=float(t), positions=np.array([r1, r2, r3], dtype=float),
                   velocities=np.array([v1, v2, v3], dtype=float))

    @classmethod
    def from_flat(cls, t: float, y: np.ndarray) -> "PlanarState":
        """Unpack the integrator layout [x1,y1,x2,y2,x3,y3,vx1,...,vy3]."""
        y = np.asarray(y, dtype=float)
        return cls(t=float(t), positions=y[:6].reshape(3, 2).copy(),
                   velocities=y[6:].reshape(3, 2).copy())

    def to_flat(self) -> np.ndarray:
        return np.concatenate([self.positions.reshape(-1), self.velocities.reshape(-1)])

    @property
    def r1(self) -> np.ndarray:
        return self.positions[0]

    @property
    def r2(self) -> np.ndarray:
        return self.positions[1]

    @property
    def r3(self) -> np.ndarray:
        return self.positions[2]

    @property
    def v1(self) -> np.ndarray:
        return self.velocities[0]

    @property
    def v2(self) -> np.ndarray:
        return self.velocities[1]

    @property
    def v3(self) -> np.ndarray:
        return self.velocities[2]


@dataclass(frozen=True)
class Diagnostics:
    """Scalar diagnostics of a state: inertia, energies, angular momentum."""

    I: float
    K: float
    V: float
    E: float
    L: float


def pair_distances(state: PlanarState) -> np.ndarray:
    """Distances [r12, r13, r23]."""
    r = state.positions
    return np.array([np.linalg.norm(r[j] - r[i]) for i, j in PAIRS])


def moment_of_inertia(state: PlanarState, masses: Masses) -> float:
    """Half the mass-weighted sum of squared distances from the origin."""
    m = masses.as_array()
    return 0.5 * float(np.sum(m * np.sum(state.positions**2, axis=1)))


def kinetic_energy(state: PlanarState, masses: Masses) -> float:
    m = masses.as_array()
    return 0.5 * float(np.sum(m * np.sum(state.velocities**2, axis=1)))


def angular_momentum(state: PlanarState, masses: Masses) -> float:
    """z-component of the total angular momentum about the origin."""
    m = masses.as_array()
    r, v = state.positions, state.velocities
    return float(np.sum(m * (r[:, 0] * v[:, 1] - r[:, 1] * v[:, 0])))


def potential_energy(state: PlanarState, masses: Masses, law: PotentialLaw) -> float:
    """Pairwise potential: (1/alpha) sum m_i m_j r_ij^alpha, or sum m_i m_j log r_ij."""
    m = masses.as_array()
    d = pair_distances(state)
    if np.any(d == 0.0) and (law.is_log or law.alpha < 0):
        raise CollisionSingularity("zero pairwise distance in a singular potential branch")
    total = 0.0
    for (i, j), dist in zip(PAIRS, d):
        if law.is_log:
            total += m[i] * m[j] * np.log(dist)
        else:
            total += m[i] * m[j] * dist**law.alpha / law.alpha
    return float(total)


def forces(state: PlanarState, masses: Masses, law: PotentialLaw) -> np.ndarray:
    """Pairwise attractive forces, shape (3, 2); they sum to zero.

    f_i = m_i sum_j m_j (r_j - r_i) |r_j - r_i|^(alpha-2), with alpha = 0
    for the log law.
    """
    m = masses.as_array()
    r = state.positions
    alpha = 0.0 if law.is_log else law.alpha
    out = np.zeros((3, 2))
    for i, j in PAIRS:
        d = r[j] - r[i]
        r2 = float(d @ d)
        if r2 == 0.0:
            raise CollisionSingularity(f"bodies {i + 1} and {j + 1} coincide")
        f = m[i] * m[j] * d * r2 ** ((alpha - 2) / 2)
        out[i] += f
        out[j] -= f
    return out


def accelerations(state: PlanarState, masses: Masses, law: PotentialLaw) -> np.ndarray:
    return forces(state, masses, law) / masses.as_array()[:, None]


def lagrange_jacobi_rhs(state: PlanarState, masses: Masses, law: PotentialLaw) -> float:
    """Second time derivative of the moment of inertia: 2K - alpha*V
    (power law) or 2K - sum m_i m_j (log law)."""
    K = kinetic_energy(state, masses)
    if law.is_log:
        m = masses.as_array()
        return 2.0 * K - float(sum(m[i] * m[j] for i, j in PAIRS))
    return 2.0 * K - law.alpha * potential_energy(state, masses, law)


def diagnostics(state: PlanarState, masses: Masses, law: PotentialLaw) -> Diagnostics:
    K = kinetic_energy(state, masses)
    V = potential_energy(state, masses, law)
    return Diagnostics(I=moment_of_inertia(state, masses), K=K, V=V, E=K + V,
                       L=angular_momentum(state, masses))
