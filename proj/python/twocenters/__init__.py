"""Planar two-center problem toolkit.

Thin Python layer over the C++ core: derived critical constants,
integral-plane classification, regularized orbit integration, rotation
numbers and torus families, homoclinic and torus-knot certification.
"""

from twocenters._core import (
    SystemParams,
    TwocentersError,
    certify_knot,
    classify,
    collision_momenta,
    critical_orbits,
    hamiltonian,
    lyapunov_orbit,
    make_params,
    molecule,
    orbit,
    rotation_number,
    solve_family,
    solve_roots,
    verify_homoclinic,
)

__all__ = [
    "SystemParams",
    "TwocentersError",
    "certify_knot",
    "classify",
    "collision_momenta",
    "critical_orbits",
    "hamiltonian",
    "lyapunov_orbit",
    "make_params",
    "molecule",
    "orbit",
    "rotation_number",
    "solve_family",
    "solve_roots",
    "verify_homoclinic",
]
