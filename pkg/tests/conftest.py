import numpy as np
import pytest

from trilab.dynamics import Masses, PlanarState


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)


def random_state(rng, spread=2.0, t=0.0) -> PlanarState:
    """Random non-collision planar state."""
    while True:
        pos = rng.uniform(-spread, spread, size=(3, 2))
        d = [np.linalg.norm(pos[j] - pos[i]) for i, j in ((0, 1), (0, 2), (1, 2))]
        if min(d) > 0.2:
            break
    vel = rng.uniform(-1.5, 1.5, size=(3, 2))
    return PlanarState(t=t, positions=pos, velocities=vel)


def random_zero_com_state(rng, masses: Masses) -> PlanarState:
    """Random state with the mass-weighted centroid at the origin."""
    st = random_state(rng)
    m = masses.as_array()
    com = np.sum(m[:, None] * st.positions, axis=0) / masses.total
    return PlanarState(t=0.0, positions=st.positions - com, velocities=st.velocities)
