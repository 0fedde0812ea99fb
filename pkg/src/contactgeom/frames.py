"""Contact-adapted frames along an immersed surface.

At each point the tangent plane gets an orthonormal pair ``(e1, e2)`` with
``e1`` in the contact distribution.  From it come the contact angle ``beta``
(``cos beta = <xi, e2>``), the unit contact projection ``v`` of ``e2``, the
Kähler angle ``alpha`` (``cos alpha = <i e1, v>``), a unitary frame ``f`` of
the contact distribution, and the Darboux frame ``e1 .. e_{2n+1}``.

Everything is vectorized: the builders accept derivative arrays of any
leading shape, so a whole parameter grid is processed at once.

Sign conventions (the geometry leaves them open):

* ``e2`` is the unit tangent projection of ``xi``, so ``cos beta >= 0``.
* ``e1`` is chosen so that ``cos alpha >= 0``.  When ``|cos alpha|`` is below
  ``COS_ALPHA_TIE`` or ``alpha`` is undefined, ``e1`` is the normalized
  ``<df/du2, xi> df/du1 - <df/du1, xi> df/du2``, which varies smoothly with
  the point.
* At Legendrian points ``e1`` is the normalized ``df/du1`` and ``(e1, e2)`` is
  positively oriented with respect to ``(d/du1, d/du2)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ambient import complex_cross, real_inner
from .exceptions import DegenerateFrameError, DegeneratePointError, LegendrianAmbiguityError
from .surface import IMMERSION_FLOOR, Immersion, metric_from_derivatives

SIN_BETA_FLOOR = 1e-7
ALPHA_FLOOR = 1e-7
LEGENDRIAN_TOL = 1e-9
COS_ALPHA_TIE = 1e-9

ADAPTED, FALLBACK_ZERO, FALLBACK_PI, DEGENERATE = 0, 1, 2, 3
MODE_NAMES = {ADAPTED: "adapted", FALLBACK_ZERO: "fallback-0", FALLBACK_PI: "fallback-pi", DEGENERATE: "degenerate"}


def _unit(x):
    return x / np.sqrt(real_inner(x, x))[..., None]


def _col(s):
    return np.asarray(s)[..., None]


@dataclass
class FrameField:
    """Frames over an array of parameter points (leading shape ``S``).

    Vector fields have shape ``S + (n+1,)``; angles have shape ``S`` with NaN
    marking undefined values.  ``coords[..., a, i]`` expands ``e_{a+1}`` in the
    coordinate basis ``df/du_{i+1}``.
    """

    n: int
    position: np.ndarray
    d1: np.ndarray
    d2: np.ndarray
    e1: np.ndarray
    e2: np.ndarray
    beta: np.ndarray
    alpha: np.ndarray
    v: np.ndarray
    darboux: tuple
    unitary: tuple
    coords: np.ndarray
    legendrian: np.ndarray
    mode: np.ndarray
    alpha_frame: np.ndarray

    @property
    def reeb(self):
        return 1j * self.position

    @property
    def alpha_defined(self):
        return ~np.isnan(self.alpha)

    @property
    def degenerate(self):
        return self.mode == DEGENERATE


@dataclass
class FrameSample:
    """Frames at one parameter point."""

    u: tuple
    n: int
    position: np.ndarray
    e1: np.ndarray
    e2: np.ndarray
    beta: float
    alpha: float | None
    v: np.ndarray | None
    darboux: tuple
    unitary: tuple
    legendrian: bool
    mode: str
    alpha_frame: float

    @property
    def reeb(self):
        return 1j * self.position


def build_frames(position, d1, d2, n: int) -> FrameField:
    """Construct all frames from positions and first derivatives."""
    position = np.asarray(position, complex)
    d1, d2 = np.asarray(d1, complex), np.asarray(d2, complex)
    xi = 1j * position
    metric = metric_from_derivatives(d1, d2)
    det = metric.det
    bad = ~(det > IMMERSION_FLOOR)

    with np.errstate(divide="ignore", invalid="ignore"):
        h11, h12, h22 = metric.inverse()
        c1, c2 = real_inner(d1, xi), real_inner(d2, xi)
        # Tangential part of xi; its length is cos(beta).
        t1 = h11 * c1 + h12 * c2
        t2 = h12 * c1 + h22 * c2
        xi_tan = _col(t1) * d1 + _col(t2) * d2
        cos_raw = np.sqrt(np.maximum(real_inner(xi_tan, xi_tan), 0.0))
        legendrian = (cos_raw < LEGENDRIAN_TOL) & ~bad

        e1_generic = _unit(_col(c2) * d1 - _col(c1) * d2)
        e2_generic = xi_tan / _col(cos_raw)
        e1_leg = _unit(d1)
        e2_leg = _unit(d2 - _col(real_inner(d2, e1_leg)) * e1_leg)
        e1 = np.where(legendrian[..., None], e1_leg, e1_generic)
        e2 = np.where(legendrian[..., None], e2_leg, e2_generic)

        cos_b = np.clip(real_inner(xi, e2), -1.0, 1.0)
        perp = e2 - _col(cos_b) * xi
        sin_b = np.sqrt(real_inner(perp, perp))
        beta = np.arctan2(sin_b, cos_b)
        v_ok = (sin_b >= SIN_BETA_FLOOR) & ~bad
        v = np.where(v_ok[..., None], perp / _col(sin_b), np.nan)

        cos_a = np.where(v_ok, real_inner(1j * e1, v), np.nan)
        flip = v_ok & (cos_a < -COS_ALPHA_TIE) & ~legendrian
        e1 = np.where(flip[..., None], -e1, e1)
        cos_a = np.where(flip, -cos_a, cos_a)
        ie1_perp = v - _col(cos_a) * (1j * e1)
        alpha = np.where(v_ok, np.arctan2(np.sqrt(real_inner(ie1_perp, ie1_perp)), cos_a), np.nan)

        mode = np.full(np.shape(beta), ADAPTED, dtype=int)
        mode[~v_ok | (alpha <= ALPHA_FLOOR)] = FALLBACK_ZERO
        mode[v_ok & (alpha >= np.pi - ALPHA_FLOOR)] = FALLBACK_PI
        mode[bad] = DEGENERATE
        alpha_frame = np.where(mode == ADAPTED, alpha, np.where(mode == FALLBACK_PI, np.pi, 0.0))

        # Contact projection of e2 used by the frames; at fallback points where
        # v is undefined it is taken as i e1 (the alpha = 0 convention).
        v_frame = np.where(v_ok[..., None], v, 1j * e1)
        normal_last = -_col(cos_b) * v_frame + _col(sin_b) * xi

        if n == 2:
            ha = _col(alpha_frame / 2.0)
            ch, sh = np.cos(ha), np.sin(ha)
            f1a = (e1 - 1j * v_frame) / (2.0 * ch)
            f2a = (e1 + 1j * v_frame) / (2.0 * sh)
            comp = np.conj(complex_cross(position, e1))
            is_zero = (mode == FALLBACK_ZERO)[..., None]
            is_pi = (mode == FALLBACK_PI)[..., None]
            f1 = np.where(is_zero, e1, np.where(is_pi, comp, f1a))
            f2 = np.where(is_zero, comp, np.where(is_pi, e1, f2a))
            f3, f4 = 1j * f1, 1j * f2
            e3a = sh * f1 - ch * f2
            e4a = sh * f3 + ch * f4
            e3 = np.where(is_zero, f2, e3a)
            e4 = np.where(is_zero, f4, e4a)
            darboux = (e1, e2, e3, e4, normal_last)
            unitary = (f1, f2, f3, f4, xi)
        else:
            darboux = (e1, e2, normal_last)
            unitary = (e1, 1j * e1, xi)

        coords = np.empty(np.shape(beta) + (2, 2))
        for a, ea in enumerate((e1, e2)):
            p1, p2 = real_inner(ea, d1), real_inner(ea, d2)
            coords[..., a, 0] = h11 * p1 + h12 * p2
            coords[..., a, 1] = h12 * p1 + h22 * p2

    nan_vec = np.full_like(e1, np.nan)
    darboux = tuple(np.where(bad[..., None], nan_vec, x) for x in darboux)
    unitary = tuple(np.where(bad[..., None], nan_vec, x) for x in unitary)
    return FrameField(
        n=n,
        position=position,
        d1=d1,
        d2=d2,
        e1=darboux[0],
        e2=darboux[1],
        beta=np.where(bad, np.nan, beta),
        alpha=np.where(bad, np.nan, alpha),
        v=np.where(bad[..., None], np.nan, v),
        darboux=darboux,
        unitary=unitary,
        coords=np.where(bad[..., None, None], np.nan, coords),
        legendrian=legendrian,
        mode=mode,
        alpha_frame=np.where(bad, np.nan, alpha_frame),
    )


def frame_field(imm: Immersion, u1, u2, strict: bool = False) -> FrameField:
    u1, u2 = np.asarray(u1, float), np.asarray(u2, float)
    field = build_frames(imm(u1, u2), *imm.derivatives(u1, u2), imm.n)
    if strict and np.any(field.legendrian):
        idx = np.unravel_index(np.argmax(field.legendrian), np.shape(field.legendrian))
        raise LegendrianAmbiguityError((np.broadcast_to(u1, field.beta.shape)[idx],
                                        np.broadcast_to(u2, field.beta.shape)[idx]))
    return field


def frame_at(imm: Immersion, u, strict: bool = False) -> FrameSample:
    """All frames and angles at the parameter point ``u``."""
    field = frame_field(imm, u[0], u[1], strict=strict)
    if field.mode == DEGENERATE:
        d1, d2 = field.d1, field.d2
        raise DegeneratePointError(u, metric_from_derivatives(d1, d2).det)
    alpha = float(field.alpha)
    return FrameSample(
        u=(float(u[0]), float(u[1])),
        n=imm.n,
        position=field.position,
        e1=field.e1,
        e2=field.e2,
        beta=float(field.beta),
        alpha=None if np.isnan(alpha) else alpha,
        v=None if np.isnan(alpha) else field.v,
        darboux=field.darboux,
        unitary=field.unitary,
        legendrian=bool(field.legendrian),
        mode=MODE_NAMES[int(field.mode)],
        alpha_frame=float(field.alpha_frame),
    )


def tangent_contact_frame(imm: Immersion, u, strict: bool = False):
    """The oriented tangent pair ``(e1, e2)`` with ``e1`` in the contact plane."""
    s = frame_at(imm, u, strict=strict)
    return s.e1, s.e2


def contact_angle(sample: FrameSample) -> float:
    """``arccos <xi, e2>``, evaluated as ``atan2(|e2 - cos(b) xi|, cos b)``.

    Equivalent to the clamped arccos but keeps full precision near 0.
    """
    cos_b = float(np.clip(real_inner(sample.reeb, sample.e2), -1.0, 1.0))
    perp = sample.e2 - cos_b * sample.reeb
    return float(np.arctan2(np.sqrt(real_inner(perp, perp)), cos_b))


def kahler_angle(sample: FrameSample) -> float | None:
    """``arccos <i e1, v>`` (via atan2), or ``None`` where the contact projection of e2 vanishes."""
    cos_b = real_inner(sample.reeb, sample.e2)
    perp = sample.e2 - cos_b * sample.reeb
    sin_b = float(np.sqrt(real_inner(perp, perp)))
    if sin_b < SIN_BETA_FLOOR:
        return None
    v = perp / sin_b
    cos_a = real_inner(1j * sample.e1, v)
    rest = v - cos_a * 1j * sample.e1
    return float(np.arctan2(np.sqrt(real_inner(rest, rest)), cos_a))


def darboux_frame(sample: FrameSample) -> tuple:
    frame = sample.darboux
    if any(np.any(np.isnan(x)) for x in frame):
        raise DegenerateFrameError(sample.u, "frame contains undefined vectors")
    return frame


def gram_deviation(vectors) -> np.ndarray:
    """``max |<v_a, v_b> - delta_ab|`` over the last-axis vectors (vectorized)."""
    k = len(vectors)
    out = 0.0
    for a in range(k):
        for b in range(a, k):
            target = 1.0 if a == b else 0.0
            out = np.maximum(out, np.abs(real_inner(vectors[a], vectors[b]) - target))
    return out


def restriction_table(n: int, alpha, beta):
    """Expected ``w^j(e_a)`` as an array indexed ``[..., j, a]``."""
    alpha, beta = np.asarray(alpha, float), np.asarray(beta, float)
    shape = np.broadcast(alpha, beta).shape
    table = np.zeros(shape + (2 * n + 1, 2))
    if n == 2:
        ch, sh = np.cos(alpha / 2), np.sin(alpha / 2)
        table[..., 0, 0] = ch
        table[..., 1, 0] = sh
        table[..., 2, 1] = ch * np.sin(beta)
        table[..., 3, 1] = -sh * np.sin(beta)
        table[..., 4, 1] = np.cos(beta)
    else:
        table[..., 0, 0] = 1.0
        table[..., 1, 1] = np.cos(alpha) * np.sin(beta)
        table[..., 2, 1] = np.cos(beta)
    return table


def coframe_values(field) -> np.ndarray:
    """Measured ``w^j(e_a) = <e_a, f_j>`` indexed ``[..., j, a]``."""
    cols = []
    for fj in field.unitary:
        cols.append(np.stack([real_inner(field.e1, fj), real_inner(field.e2, fj)], axis=-1))
    return np.stack(cols, axis=-2)


def coframe_restriction_check(sample) -> float:
    """Largest deviation of the coframe on ``(e1, e2)`` from its closed form."""
    if isinstance(sample, FrameSample):
        if any(np.any(np.isnan(x)) for x in sample.unitary):
            raise DegenerateFrameError(sample.u, "unitary frame undefined")
    measured = coframe_values(sample)
    expected = restriction_table(sample.n, sample.alpha_frame, sample.beta)
    return float(np.nanmax(np.abs(measured - expected)))
