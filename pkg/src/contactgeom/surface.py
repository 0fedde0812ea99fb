"""Immersions of a parameter square into the unit sphere of C^{n+1}.

The three built-in tori carry hand-differentiated derivatives; they are the
high-precision reference that finite-difference and DSL paths are checked
against.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .ambient import check_dimension, real_inner, sphere_deviation
from .exceptions import DegeneratePointError, DimensionError

TWO_PI = 2.0 * np.pi
IMMERSION_FLOOR = 1e-8
TANGENCY_TOL = 1e-10
FULL_DOMAIN = ((0.0, TWO_PI), (0.0, TWO_PI))


@dataclass
class Immersion:
    """A map ``(u1, u2) -> S^{2n+1}`` together with its first partials.

    ``evaluator(u1, u2)`` and ``derivative_evaluator(u1, u2)`` accept arrays of
    any (equal) shape and return complex arrays with a trailing component
    axis of length ``n + 1``; the latter returns the pair ``(df/du1, df/du2)``.
    """

    evaluator: Callable
    derivative_evaluator: Callable
    n: int
    label: str = "surface"
    periodic: bool | tuple = True
    domain: tuple = FULL_DOMAIN
    tolerance: float = 1e-12
    warnings: list = field(default_factory=list)
    components: tuple | None = None  # DSL expression trees, when built from text

    def __post_init__(self):
        check_dimension(self.n)

    @property
    def axis_periodic(self) -> tuple:
        """Periodicity per parameter axis ``(u1, u2)``."""
        p = self.periodic
        return (bool(p), bool(p)) if isinstance(p, bool) else tuple(bool(x) for x in p)

    def __call__(self, u1, u2):
        return self.evaluator(np.asarray(u1, float), np.asarray(u2, float))

    def derivatives(self, u1, u2):
        return self.derivative_evaluator(np.asarray(u1, float), np.asarray(u2, float))

    def swapped(self) -> "Immersion":
        """Reparametrize by ``(u1, u2) -> (u2, u1)``."""
        ev, dev = self.evaluator, self.derivative_evaluator

        def evaluator(u1, u2):
            return ev(u2, u1)

        def derivative_evaluator(u1, u2):
            d1, d2 = dev(u2, u1)
            return d2, d1

        return Immersion(
            evaluator,
            derivative_evaluator,
            n=self.n,
            label=f"{self.label} (swapped)",
            periodic=self.axis_periodic[::-1],
            domain=(self.domain[1], self.domain[0]),
            tolerance=self.tolerance,
        )


@dataclass(frozen=True)
class MetricTensor:
    """Induced first fundamental form; entries may be arrays over a grid."""

    g11: np.ndarray
    g12: np.ndarray
    g22: np.ndarray

    @property
    def det(self):
        return self.g11 * self.g22 - self.g12 * self.g12

    def inverse(self):
        d = self.det
        return self.g22 / d, -self.g12 / d, self.g11 / d

    def as_matrix(self) -> np.ndarray:
        return np.array([[self.g11, self.g12], [self.g12, self.g22]], dtype=float)


def _require_n2(n, name):
    if n != 2:
        raise DimensionError(f"{name} lives in S^5; requested n={n}")


def _expi(x):
    return np.exp(1j * x)


def builtin_legendrian_torus(n: int = 2) -> Immersion:
    """``(sqrt3/3) (e^{iu1}, e^{iu2}, e^{-i(u1+u2)})``: a Legendrian minimal torus."""
    _require_n2(n, "legendrian-torus")
    c = np.sqrt(3.0) / 3.0

    def evaluator(u1, u2):
        return c * np.stack([_expi(u1), _expi(u2), _expi(-(u1 + u2))], axis=-1)

    def derivative_evaluator(u1, u2):
        zero = np.zeros(np.broadcast(u1, u2).shape, complex)
        e1, e2, e3 = _expi(u1), _expi(u2), _expi(-(u1 + u2))
        d1 = c * np.stack([1j * e1 + zero, zero, -1j * e3 + zero], axis=-1)
        d2 = c * np.stack([zero, 1j * e2 + zero, -1j * e3 + zero], axis=-1)
        return d1, d2

    return Immersion(evaluator, derivative_evaluator, n=2, label="legendrian-torus")


def builtin_generalized_clifford_torus(n: int = 2) -> Immersion:
    """``(sqrt3/3) (e^{iu1}, e^{iu2}, e^{i(u2-u1)})``."""
    _require_n2(n, "generalized-clifford")
    c = np.sqrt(3.0) / 3.0

    def evaluator(u1, u2):
        return c * np.stack([_expi(u1), _expi(u2), _expi(u2 - u1)], axis=-1)

    def derivative_evaluator(u1, u2):
        zero = np.zeros(np.broadcast(u1, u2).shape, complex)
        e1, e2, e3 = _expi(u1), _expi(u2), _expi(u2 - u1)
        d1 = c * np.stack([1j * e1 + zero, zero, -1j * e3 + zero], axis=-1)
        d2 = c * np.stack([zero, 1j * e2 + zero, 1j * e3 + zero], axis=-1)
        return d1, d2

    return Immersion(evaluator, derivative_evaluator, n=2, label="generalized-clifford")


def builtin_clifford_torus(n: int = 2) -> Immersion:
    """``(sqrt2/2) (e^{iu1}, e^{iu2}, 0)``."""
    _require_n2(n, "clifford")
    c = np.sqrt(2.0) / 2.0

    def evaluator(u1, u2):
        zero = np.zeros(np.broadcast(u1, u2).shape, complex)
        return c * np.stack([_expi(u1) + zero, _expi(u2) + zero, zero], axis=-1)

    def derivative_evaluator(u1, u2):
        zero = np.zeros(np.broadcast(u1, u2).shape, complex)
        d1 = c * np.stack([1j * _expi(u1) + zero, zero, zero], axis=-1)
        d2 = c * np.stack([zero, 1j * _expi(u2) + zero, zero], axis=-1)
        return d1, d2

    return Immersion(evaluator, derivative_evaluator, n=2, label="clifford")


BUILTINS = {
    "legendrian-torus": builtin_legendrian_torus,
    "generalized-clifford": builtin_generalized_clifford_torus,
    "clifford": builtin_clifford_torus,
}


def get_builtin(name: str) -> Immersion:
    try:
        return BUILTINS[name]()
    except KeyError:
        raise KeyError(
            f"unknown built-in surface {name!r}; choose from {sorted(BUILTINS)}"
        ) from None


# Control surfaces used by the test-suite and examples; not CLI built-ins.

def product_torus(radius_angle: float, n: int = 2) -> Immersion:
    """``(cos r e^{iu1}, sin r e^{iu2}, 0)``; minimal only for ``r = pi/4``."""
    check_dimension(n)
    a, b = np.cos(radius_angle), np.sin(radius_angle)

    def evaluator(u1, u2):
        zero = np.zeros(np.broadcast(u1, u2).shape, complex)
        comps = [a * _expi(u1) + zero, b * _expi(u2) + zero] + [zero] * (n - 1)
        return np.stack(comps, axis=-1)

    def derivative_evaluator(u1, u2):
        zero = np.zeros(np.broadcast(u1, u2).shape, complex)
        d1 = [1j * a * _expi(u1) + zero, zero] + [zero] * (n - 1)
        d2 = [zero, 1j * b * _expi(u2) + zero] + [zero] * (n - 1)
        return np.stack(d1, axis=-1), np.stack(d2, axis=-1)

    return Immersion(
        evaluator, derivative_evaluator, n=n, label=f"product-torus(r={radius_angle:g})"
    )


def great_sphere_strip(lo: float = 0.2, hi: float = 1.2) -> Immersion:
    """Totally geodesic 2-sphere ``(cos u1 e^{iu2}, sin u1, 0)`` on a latitude strip.

    Curved (K = 1), minimal, non-Legendrian for ``u1 > 0``, with contact angle
    ``beta = u1`` and Kähler angle 0.
    """

    def evaluator(u1, u2):
        zero = np.zeros(np.broadcast(u1, u2).shape, complex)
        return np.stack(
            [np.cos(u1) * _expi(u2) + zero, np.sin(u1) + zero, zero], axis=-1
        )

    def derivative_evaluator(u1, u2):
        zero = np.zeros(np.broadcast(u1, u2).shape, complex)
        d1 = np.stack([-np.sin(u1) * _expi(u2) + zero, np.cos(u1) + zero, zero], axis=-1)
        d2 = np.stack([1j * np.cos(u1) * _expi(u2) + zero, zero, zero], axis=-1)
        return d1, d2

    return Immersion(
        evaluator,
        derivative_evaluator,
        n=2,
        label="great-sphere-strip",
        periodic=(False, True),
        domain=((lo, hi), (0.0, TWO_PI)),
    )


def metric_from_derivatives(d1, d2) -> MetricTensor:
    return MetricTensor(real_inner(d1, d1), real_inner(d1, d2), real_inner(d2, d2))


def induced_metric(imm: Immersion, u) -> MetricTensor:
    """First fundamental form at a single parameter point.

    Raises
    ------
    DegeneratePointError
        If ``det g <= IMMERSION_FLOOR``.
    """
    d1, d2 = imm.derivatives(u[0], u[1])
    metric = metric_from_derivatives(d1, d2)
    if not metric.det > IMMERSION_FLOOR:
        raise DegeneratePointError(u, metric.det)
    return metric


@dataclass
class ParameterGrid:
    """Sample points of the parameter domain; axis 0 is u1, axis 1 is u2."""

    u1: np.ndarray
    u2: np.ndarray
    spacing: tuple
    periodic: tuple

    @property
    def shape(self):
        return self.u1.shape


def parameter_grid(imm: Immersion, size: int) -> ParameterGrid:
    """Uniform ``size x size`` grid over the immersion's domain.

    Periodic axes exclude the right endpoint; non-periodic ones include it.
    """
    axes, spacing = [], []
    for (lo, hi), periodic in zip(imm.domain, imm.axis_periodic):
        if periodic:
            h = (hi - lo) / size
            axes.append(lo + h * np.arange(size))
        else:
            h = (hi - lo) / (size - 1)
            axes.append(np.linspace(lo, hi, size))
        spacing.append(h)
    u1, u2 = np.meshgrid(axes[0], axes[1], indexing="ij")
    return ParameterGrid(u1, u2, tuple(spacing), imm.axis_periodic)


@dataclass
class ValidationReport:
    """Worst violations of the immersion checks over a grid."""

    size: int
    sphere_max: float
    sphere_at: tuple
    tangency_max: float
    tangency_at: tuple
    det_min: float
    det_at: tuple
    sphere_tol: float
    tangency_tol: float = TANGENCY_TOL
    floor: float = IMMERSION_FLOOR

    @property
    def sphere_ok(self) -> bool:
        return self.sphere_max <= self.sphere_tol

    @property
    def tangency_ok(self) -> bool:
        return self.tangency_max <= self.tangency_tol

    @property
    def nondegenerate_ok(self) -> bool:
        return self.det_min > self.floor

    @property
    def passed(self) -> bool:
        return self.sphere_ok and self.tangency_ok and self.nondegenerate_ok

    def failures(self) -> list:
        out = []
        if not self.sphere_ok:
            out.append(
                f"sphere membership violated: |<f,f>-1| = {self.sphere_max:.3e} at u={self.sphere_at}"
            )
        if not self.tangency_ok:
            out.append(
                f"derivatives not tangent to sphere: {self.tangency_max:.3e} at u={self.tangency_at}"
            )
        if not self.nondegenerate_ok:
            out.append(f"degenerate metric: det(g) = {self.det_min:.3e} at u={self.det_at}")
        return out


def validate_immersion(imm: Immersion, size: int = 64, tol: float | None = None) -> ValidationReport:
    """Check sphere membership, tangency and nondegeneracy over a grid.

    Failures are reported, never raised.
    """
    grid = parameter_grid(imm, size)
    f = imm(grid.u1, grid.u2)
    d1, d2 = imm.derivatives(grid.u1, grid.u2)
    sphere = sphere_deviation(f)
    tangency = np.maximum(np.abs(real_inner(d1, f)), np.abs(real_inner(d2, f)))
    det = metric_from_derivatives(d1, d2).det

    def where(arr, pick):
        idx = np.unravel_index(pick(arr), arr.shape)
        return (float(grid.u1[idx]), float(grid.u2[idx]))

    return ValidationReport(
        size=size,
        sphere_max=float(np.max(sphere)),
        sphere_at=where(sphere, np.argmax),
        tangency_max=float(np.max(tangency)),
        tangency_at=where(tangency, np.argmax),
        det_min=float(np.min(det)),
        det_at=where(det, np.argmin),
        sphere_tol=imm.tolerance if tol is None else tol,
    )
