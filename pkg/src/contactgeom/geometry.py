"""Finite-difference differential geometry on parameter grids.

First derivatives of the immersion are exact (analytic or dual-number); every
second-order quantity is a 5-point, 4th-order central difference of a
first-order field.  Undefined samples are NaN and poison every stencil window
that touches them, so undefined cells propagate rather than being imputed.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .ambient import project_sphere, real_inner
from .frames import FrameField, build_frames
from .surface import Immersion, MetricTensor, ParameterGrid, metric_from_derivatives, parameter_grid

MIN_GRID = 8
TAN_GUARD = 1e-6


# -- stencils ----------------------------------------------------------------

def _shift(a, k, axis, periodic):
    """``out[i] = a[i + k]`` along ``axis``; NaN beyond a non-periodic edge."""
    if periodic:
        return np.roll(a, -k, axis=axis)
    out = np.full_like(a, np.nan)
    src = [slice(None)] * a.ndim
    dst = [slice(None)] * a.ndim
    n = a.shape[axis]
    if k >= 0:
        src[axis], dst[axis] = slice(k, n), slice(0, n - k)
    else:
        src[axis], dst[axis] = slice(0, n + k), slice(-k, n)
    out[tuple(dst)] = a[tuple(src)]
    return out


def partial(values, axis: int, h: float, periodic: bool = True):
    """4th-order central first derivative along grid ``axis`` (0 = u1, 1 = u2)."""
    s = lambda k: _shift(values, k, axis, periodic)  # noqa: E731
    return (s(-2) - 8.0 * s(-1) + 8.0 * s(1) - s(2)) / (12.0 * h)


def second_partial(values, axis: int, h: float, periodic: bool = True):
    """4th-order central second derivative along ``axis``."""
    s = lambda k: _shift(values, k, axis, periodic)  # noqa: E731
    return (-s(-2) + 16.0 * s(-1) - 30.0 * values + 16.0 * s(1) - s(2)) / (12.0 * h * h)


# -- grid containers ---------------------------------------------------------

@dataclass
class ScalarGrid:
    """Scalar samples on an ``N x N`` parameter grid; NaN marks undefined."""

    values: np.ndarray
    spacing: tuple
    periodic: tuple = (True, True)

    @property
    def resolution(self) -> int:
        return self.values.shape[0]

    @property
    def defined_count(self) -> int:
        return int(np.count_nonzero(~np.isnan(self.values)))

    def d(self, axis: int):
        return partial(self.values, axis, self.spacing[axis], self.periodic[axis])


@dataclass
class OneFormGrid:
    """A 1-form evaluated on the frame vectors ``e1`` and ``e2`` at every cell."""

    on_e1: np.ndarray
    on_e2: np.ndarray

    @property
    def norm_sq(self):
        return self.on_e1**2 + self.on_e2**2

    def compose_j(self, j_sign: float = 1.0) -> "OneFormGrid":
        """``(form o J)`` with ``J e1 = j_sign e2`` and ``J e2 = -j_sign e1``."""
        return OneFormGrid(j_sign * self.on_e2, -j_sign * self.on_e1)


@dataclass
class SecondFundamentalForm:
    """``h[..., lam, j, a] = <D_{e_a} e_j, e_lam>`` over normal directions ``lam``."""

    h: np.ndarray
    normals: tuple

    def symmetrized(self) -> np.ndarray:
        return 0.5 * (self.h + np.swapaxes(self.h, -1, -2))

    @property
    def asymmetry(self):
        return np.abs(self.h[..., 0, 1] - self.h[..., 1, 0])

    @property
    def traces(self):
        return self.h[..., 0, 0] + self.h[..., 1, 1]

    def gauss_terms(self):
        """``sum_lam (h11 h22 - h12^2)`` with the symmetrized form."""
        s = self.symmetrized()
        return np.sum(s[..., 0, 0] * s[..., 1, 1] - s[..., 0, 1] ** 2, axis=-1)


def _check_size(size):
    if size < MIN_GRID:
        raise ValueError(f"grid resolution must be at least {MIN_GRID}, got {size}")


def orthonormal_coordinate_frame(metric: MetricTensor) -> np.ndarray:
    """Coordinates of the Gram-Schmidt frame of ``(d/du1, d/du2)``.

    Returns ``coords[..., a, i]`` as used by :class:`FrameField`.
    """
    g11, g12 = np.asarray(metric.g11, float), np.asarray(metric.g12, float)
    s1 = np.sqrt(g11)
    s2 = np.sqrt(metric.det / g11)
    coords = np.zeros(np.broadcast(g11, g12, metric.g22).shape + (2, 2))
    coords[..., 0, 0] = 1.0 / s1
    coords[..., 1, 0] = -g12 / (g11 * s2)
    coords[..., 1, 1] = 1.0 / s2
    return coords


def _apply_coords(coords, du1, du2, a):
    c1, c2 = coords[..., a, 0], coords[..., a, 1]
    if np.ndim(du1) > np.ndim(c1):
        c1, c2 = c1[..., None], c2[..., None]
    return c1 * du1 + c2 * du2


# -- scalar operators --------------------------------------------------------

def scalar_gradient(field: ScalarGrid, metric: MetricTensor, coords=None):
    """Differential of ``field`` on the frame, and ``|grad field|^2``.

    Without ``coords`` the frame is the Gram-Schmidt frame of the coordinate
    directions.
    """
    _check_size(field.resolution)
    if coords is None:
        coords = orthonormal_coordinate_frame(metric)
    d1, d2 = field.d(0), field.d(1)
    form = OneFormGrid(_apply_coords(coords, d1, d2, 0), _apply_coords(coords, d1, d2, 1))
    return form, form.norm_sq


def laplace_beltrami(field: ScalarGrid, metric: MetricTensor) -> ScalarGrid:
    """``(1/sqrt g) d_i (sqrt g g^{ij} d_j f)`` in divergence form."""
    _check_size(field.resolution)
    h, p = field.spacing, field.periodic
    i11, i12, i22 = metric.inverse()
    root = np.sqrt(metric.det)
    f1, f2 = field.d(0), field.d(1)
    flux1 = root * (i11 * f1 + i12 * f2)
    flux2 = root * (i12 * f1 + i22 * f2)
    div = partial(flux1, 0, h[0], p[0]) + partial(flux2, 1, h[1], p[1])
    return ScalarGrid(div / root, field.spacing, field.periodic)


def gaussian_curvature_intrinsic(metric: MetricTensor, spacing, periodic=(True, True)) -> ScalarGrid:
    """Brioschi formula from the metric alone (coordinates ``u = u1``, ``v = u2``)."""
    E, F, G = (np.asarray(x, float) for x in (metric.g11, metric.g12, metric.g22))
    _check_size(E.shape[0])
    (hu, hv), (pu, pv) = spacing, periodic
    Eu, Ev = partial(E, 0, hu, pu), partial(E, 1, hv, pv)
    Fu, Fv = partial(F, 0, hu, pu), partial(F, 1, hv, pv)
    Gu, Gv = partial(G, 0, hu, pu), partial(G, 1, hv, pv)
    Evv = second_partial(E, 1, hv, pv)
    Guu = second_partial(G, 0, hu, pu)
    Fuv = partial(Fu, 1, hv, pv)

    a11 = -0.5 * Evv + Fuv - 0.5 * Guu
    first = (
        a11 * (E * G - F * F)
        - 0.5 * Eu * (G * (Fv - 0.5 * Gu) - F * 0.5 * Gv)
        + (Fu - 0.5 * Ev) * ((Fv - 0.5 * Gu) * F - E * 0.5 * Gv)
    )
    second = (
        -0.5 * Ev * (0.5 * Ev * G - F * 0.5 * Gu)
        + 0.5 * Gu * (0.5 * Ev * F - E * 0.5 * Gu)
    )
    det = E * G - F * F
    bad = ~(det > 0)
    with np.errstate(divide="ignore", invalid="ignore"):
        K = np.where(bad, np.nan, (first - second) / det**2)
    return ScalarGrid(K, tuple(spacing), tuple(periodic))


# -- sampled surface ---------------------------------------------------------

class SurfaceSampling:
    """An immersion sampled on a grid together with its frames.

    Grid-derived quantities (angles, metric, finite-difference fields) are
    computed once and cached.
    """

    def __init__(self, imm: Immersion, size: int = 64):
        _check_size(size)
        self.immersion = imm
        self.size = size
        self.grid: ParameterGrid = parameter_grid(imm, size)
        u1, u2 = self.grid.u1, self.grid.u2
        self.position = imm(u1, u2)
        self.d1, self.d2 = imm.derivatives(u1, u2)
        self.frames: FrameField = build_frames(self.position, self.d1, self.d2, imm.n)
        self.metric: MetricTensor = metric_from_derivatives(self.d1, self.d2)

    @property
    def n(self):
        return self.immersion.n

    @property
    def spacing(self):
        return self.grid.spacing

    @property
    def periodic(self):
        return self.grid.periodic

    def scalar(self, values) -> ScalarGrid:
        return ScalarGrid(np.asarray(values, float), self.spacing, self.periodic)

    def d(self, values, axis):
        return partial(values, axis, self.spacing[axis], self.periodic[axis])

    def directional(self, values, a: int):
        """``X(values)`` for ``X = e_{a+1}``; ``values`` may carry trailing axes."""
        return _apply_coords(self.frames.coords, self.d(values, 0), self.d(values, 1), a)

    def covariant(self, vectors, a: int):
        """Sphere covariant derivative ``D_{e_{a+1}}`` of an ambient vector field."""
        return project_sphere(self.position, self.directional(vectors, a))

    def one_form(self, values) -> OneFormGrid:
        return OneFormGrid(self.directional(values, 0), self.directional(values, 1))

    @cached_property
    def beta(self) -> ScalarGrid:
        return self.scalar(self.frames.beta)

    @cached_property
    def alpha(self) -> ScalarGrid:
        return self.scalar(self.frames.alpha)

    @cached_property
    def curvature(self) -> ScalarGrid:
        return gaussian_curvature_intrinsic(self.metric, self.spacing, self.periodic)

    @cached_property
    def dbeta(self) -> OneFormGrid:
        return self.one_form(self.frames.beta)

    @cached_property
    def dalpha(self) -> OneFormGrid:
        return self.one_form(self.frames.alpha)

    @cached_property
    def laplacian_beta(self) -> ScalarGrid:
        return laplace_beltrami(self.beta, self.metric)

    @cached_property
    def w12(self) -> OneFormGrid:
        return connection_form_w12(self)

    @cached_property
    def theta21(self) -> OneFormGrid:
        return darboux_connection_theta21(self)

    @cached_property
    def second_fundamental_form(self) -> SecondFundamentalForm:
        return second_fundamental_form(self)


def directional_derivative(field: ScalarGrid, sampling: SurfaceSampling, direction: str = "e1") -> ScalarGrid:
    """``df(e1)`` or ``df(e2)`` on the sampling's frame."""
    a = {"e1": 0, "e2": 1}[direction]
    return ScalarGrid(sampling.directional(field.values, a), field.spacing, field.periodic)


def sphere_covariant_derivative(sampling: SurfaceSampling, vectors, direction):
    """Covariant derivative in the round sphere of an ambient vector field.

    ``direction`` is ``"e1"``, ``"e2"`` or a tangent vector field sampled on the
    grid; the latter is expanded in the coordinate basis through the metric.
    """
    if isinstance(direction, str):
        return sampling.covariant(vectors, {"e1": 0, "e2": 1}[direction])
    X = np.asarray(direction, complex)
    i11, i12, i22 = sampling.metric.inverse()
    p1, p2 = real_inner(X, sampling.d1), real_inner(X, sampling.d2)
    c1, c2 = i11 * p1 + i12 * p2, i12 * p1 + i22 * p2
    deriv = c1[..., None] * sampling.d(vectors, 0) + c2[..., None] * sampling.d(vectors, 1)
    return project_sphere(sampling.position, deriv)


def connection_form(sampling: SurfaceSampling, j: int, k: int, frame: str = "darboux") -> OneFormGrid:
    """``<D e_j, e_k>`` (1-based indices) on the Darboux or unitary frame."""
    vecs = sampling.frames.darboux if frame == "darboux" else sampling.frames.unitary
    src, dst = vecs[j - 1], vecs[k - 1]
    return OneFormGrid(
        real_inner(sampling.covariant(src, 0), dst),
        real_inner(sampling.covariant(src, 1), dst),
    )


def connection_form_w12(sampling: SurfaceSampling) -> OneFormGrid:
    """``w_1^2 = <D f1, f2>`` on the unitary frame (undefined for n = 1)."""
    if sampling.n < 2:
        nan = np.full(sampling.grid.shape, np.nan)
        return OneFormGrid(nan, nan.copy())
    return connection_form(sampling, 1, 2, frame="unitary")


def second_fundamental_form(sampling: SurfaceSampling) -> SecondFundamentalForm:
    darboux = sampling.frames.darboux
    normals = darboux[2:]
    derivs = [[sampling.covariant(ej, a) for a in (0, 1)] for ej in darboux[:2]]
    h = np.empty(sampling.grid.shape + (len(normals), 2, 2))
    for lam, el in enumerate(normals):
        for j in (0, 1):
            for a in (0, 1):
                h[..., lam, j, a] = real_inner(derivs[j][a], el)
    labels = tuple(f"e{k}" for k in range(3, len(darboux) + 1))
    return SecondFundamentalForm(h, labels)


def mean_curvature_norm(sampling: SurfaceSampling) -> ScalarGrid:
    """Euclidean norm over normals of the traces ``h11 + h22``."""
    traces = sampling.second_fundamental_form.traces
    return sampling.scalar(np.sqrt(np.sum(traces**2, axis=-1)))


def darboux_connection_theta21(sampling: SurfaceSampling) -> OneFormGrid:
    """``theta_2^1 = <D e2, e1>``; undefined within ``TAN_GUARD`` of beta = pi/2."""
    form = connection_form(sampling, 2, 1)
    near = sampling.frames.beta > np.pi / 2 - TAN_GUARD
    return OneFormGrid(np.where(near, np.nan, form.on_e1), np.where(near, np.nan, form.on_e2))
