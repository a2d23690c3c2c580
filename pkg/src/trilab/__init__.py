"""Three-body dynamics laboratory.

Constructs the constrained zero-angular-momentum initial family, verifies
its consistency conditions through high-order potential derivatives,
reproduces the exactly solvable cases, certifies the quartic/sixth
derivative root structure in exact arithmetic, and searches for the
constant-inertia figure-eight choreography.
"""

from .dynamics import (Diagnostics, Masses, PlanarState, PotentialLaw,
                       angular_momentum, diagnostics, forces, kinetic_energy,
                       lagrange_jacobi_rhs, moment_of_inertia, potential_energy)
from .family import (InitialFamily, ThetaSolution, build, newtonian_equal_pair_angle,
                     newtonian_m3_root, newtonian_u, speed_equal_mass,
                     speed_general, theta_equal_mass, verify_constraints)
from .integrator import (CollisionEvent, IntegratorConfig, Trajectory,
                         closed_form_alpha2, closed_form_alpha4,
                         detect_collisions, inertia_variation, integrate,
                         lj_residual, trajectory_to_csv)

__version__ = "0.1.0"

__all__ = [
    "Diagnostics", "Masses", "PlanarState", "PotentialLaw",
    "angular_momentum", "diagnostics", "forces", "kinetic_energy",
    "lagrange_jacobi_rhs", "moment_of_inertia", "potential_energy",
    "InitialFamily", "ThetaSolution", "build", "newtonian_equal_pair_angle",
    "newtonian_m3_root", "newtonian_u", "speed_equal_mass", "speed_general",
    "theta_equal_mass", "verify_constraints",
    "CollisionEvent", "IntegratorConfig", "Trajectory", "closed_form_alpha2",
    "closed_form_alpha4", "detect_collisions", "inertia_variation",
    "integrate", "lj_residual", "trajectory_to_csv",
    "__version__",
]
