"""Complex-linear algebra of C^{n+1} and the contact structure of the unit sphere.

Vectors are numpy complex arrays whose *last* axis holds the n+1 components;
leading axes are broadcast, so every function here works equally on a single
point of shape ``(n+1,)`` and on a whole grid of shape ``(N, N, n+1)``.
"""

from __future__ import annotations

import numpy as np

from .exceptions import DimensionError

SPHERE_TOL = 1e-12
SUPPORTED_N = (1, 2)


def as_vector(z) -> np.ndarray:
    """Coerce to a complex array with the component axis last."""
    arr = np.asarray(z, dtype=complex)
    if arr.ndim == 0:
        raise DimensionError("an ambient vector needs at least one component")
    return arr


def _check_pair(z, w):
    z, w = as_vector(z), as_vector(w)
    if z.shape[-1] != w.shape[-1]:
        raise DimensionError(
            f"dimension mismatch: {z.shape[-1]} vs {w.shape[-1]} components"
        )
    return z, w


def check_dimension(n: int) -> int:
    if n not in SUPPORTED_N:
        raise DimensionError(f"sphere dimension n must be 1 or 2, got {n}")
    return n


def hermitian_product(z, w):
    """``(z, w) = sum_j z^j conj(w^j)``."""
    z, w = _check_pair(z, w)
    return np.sum(z * np.conj(w), axis=-1)


def real_inner(z, w):
    """Euclidean inner product of C^{n+1} = R^{2n+2}: the real part of the Hermitian one."""
    return np.real(hermitian_product(z, w))


def norm(z):
    return np.sqrt(real_inner(z, z))


def reeb(p):
    """Reeb field ``xi(p) = i p``."""
    return 1j * as_vector(p)


def complex_structure(x):
    return 1j * as_vector(x)


def project_contact(p, x):
    """Orthogonal projection of ``x`` onto the contact plane at ``p``.

    Removes the radial and Reeb components; the result is orthogonal to both
    ``p`` and ``i p``.
    """
    p, x = _check_pair(p, x)
    xi = reeb(p)
    return (
        x
        - real_inner(x, p)[..., None] * p
        - real_inner(x, xi)[..., None] * xi
    )


def project_sphere(p, x):
    """Tangential part of ``x`` at the sphere point ``p``."""
    p, x = _check_pair(p, x)
    return x - real_inner(x, p)[..., None] * p


def sphere_deviation(p):
    """``|real_inner(p, p) - 1|``; zero on the unit sphere."""
    return np.abs(real_inner(p, p) - 1.0)


def is_on_sphere(p, tol: float = SPHERE_TOL) -> bool:
    return bool(np.all(sphere_deviation(p) <= tol))


def complex_cross(a, b):
    """Complex cross product in C^3.

    ``conj(a x b)`` is Hermitian-orthogonal to both ``a`` and ``b``; for a
    Hermitian-orthonormal pair it is a unit vector.
    """
    a, b = _check_pair(a, b)
    if a.shape[-1] != 3:
        raise DimensionError("complex cross product is defined only in C^3")
    return np.stack(
        [
            a[..., 1] * b[..., 2] - a[..., 2] * b[..., 1],
            a[..., 2] * b[..., 0] - a[..., 0] * b[..., 2],
            a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0],
        ],
        axis=-1,
    )
