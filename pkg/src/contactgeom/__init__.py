"""Contact angle, Kähler angle and curvature identities for surfaces in odd spheres."""

__version__ = "0.1.0"

from .ambient import complex_structure, hermitian_product, project_contact, real_inner, reeb  # noqa: E402
from .estimators import ContactAngleTransformer, SurfaceVerifier  # noqa: E402
from .frames import frame_at, frame_field  # noqa: E402
from .geometry import SurfaceSampling  # noqa: E402
from .identities import verify  # noqa: E402
from .surface import (  # noqa: E402
    Immersion,
    builtin_clifford_torus,
    builtin_generalized_clifford_torus,
    builtin_legendrian_torus,
    get_builtin,
)

__all__ = [
    "ContactAngleTransformer",
    "Immersion",
    "SurfaceSampling",
    "SurfaceVerifier",
    "builtin_clifford_torus",
    "builtin_generalized_clifford_torus",
    "builtin_legendrian_torus",
    "complex_structure",
    "frame_at",
    "frame_field",
    "get_builtin",
    "hermitian_product",
    "project_contact",
    "real_inner",
    "reeb",
    "verify",
]
