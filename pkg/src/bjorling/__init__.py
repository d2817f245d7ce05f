"""Closed-form and numeric Björling minimal surfaces for plane conics.

Jacobi elliptic kernel, surface evaluators, finite-difference verification
and mesh export.  See ``bjorling --help`` for the command line.
"""

from .elliptic import (
    POLE_EPSILON,
    JacobiTriple,
    Modulus,
    complete_integrals,
    integral_cn_squared,
    jacobi_am,
    jacobi_complex,
    jacobi_epsilon,
    jacobi_real,
)
from .errors import (
    BjorlingError,
    BranchProximityError,
    DegenerateImmersionError,
    DomainError,
    EmptyMeshError,
    ExportError,
    PoleProximityError,
    QuadratureError,
    SingularityError,
)
from .mesh import GridSpec, Mesh, export_csv, export_obj, export_ply, sample_curve, sample_grid
from .surfaces import (
    SURFACE_NAMES,
    SurfaceModel,
    build_surface,
    catalan_surface,
    dual_curve,
    elliptic_catenoid,
    hyperbola_bjorling,
    naive_elliptic_catenoid,
)

__version__ = "0.1.0"
