import numpy as np
import pytest

import oracles
from contactgeom.ambient import hermitian_product, real_inner
from contactgeom.dsl import immersion_from_dsl
from contactgeom.exceptions import DegeneratePointError, LegendrianAmbiguityError
from contactgeom.frames import (
    ADAPTED,
    FALLBACK_ZERO,
    coframe_restriction_check,
    coframe_values,
    contact_angle,
    darboux_frame,
    frame_at,
    frame_field,
    gram_deviation,
    kahler_angle,
    restriction_table,
)
from contactgeom.surface import Immersion, get_builtin

GENERIC = immersion_from_dsl(
    "cos(u1)*exp(i*u2), sin(u1)*cos(u2)*exp(0.7i*u1), sin(u1)*sin(u2)*exp(1.3i*u2)",
    periodic=False,
    domain=((0.3, 1.2), (0.3, 1.2)),
)
GENERIC_S3 = immersion_from_dsl(
    "cos(u1)*exp(i*u2), sin(u1)*exp(0.7i*u1 + 0.4i*u2)",
    periodic=False,
    domain=((0.3, 1.2), (0.3, 1.2)),
)
U = np.random.default_rng(11).uniform(0.3, 1.2, size=(2, 300))
GRID = np.meshgrid(*(2 * [np.linspace(0, 2 * np.pi, 32, endpoint=False)]), indexing="ij")
SURFACES = {"generic": (GENERIC, U), "generic-s3": (GENERIC_S3, U)}
SURFACES.update({name: (get_builtin(name), GRID) for name in oracles.TORI})


@pytest.mark.parametrize("name", sorted(SURFACES))
def test_darboux_orthonormal_and_tangent_to_sphere(name):
    imm, (u1, u2) = SURFACES[name]
    f = frame_field(imm, u1, u2)
    assert gram_deviation(f.darboux).max() <= 1e-9
    for e in f.darboux:
        assert np.abs(real_inner(e, f.position)).max() <= 1e-9
    # e1 in the contact plane
    assert np.abs(real_inner(f.e1, f.reeb)).max() <= 1e-9


@pytest.mark.parametrize("name", sorted(SURFACES))
def test_unitary_frame(name):
    imm, (u1, u2) = SURFACES[name]
    f = frame_field(imm, u1, u2)
    n = imm.n
    fs = f.unitary[:n]
    for j in range(n):
        np.testing.assert_allclose(f.unitary[n + j], 1j * fs[j], atol=1e-15)
        for k in range(n):
            target = 1.0 if j == k else 0.0
            assert np.abs(hermitian_product(fs[j], fs[k]) - target).max() <= 1e-9
        assert np.abs(hermitian_product(fs[j], f.position)).max() <= 1e-9
    np.testing.assert_allclose(f.unitary[-1], f.reeb)


@pytest.mark.parametrize("name", sorted(SURFACES))
def test_coframe_table(name):
    imm, (u1, u2) = SURFACES[name]
    f = frame_field(imm, u1, u2)
    expected = restriction_table(imm.n, f.alpha_frame, f.beta)
    assert np.nanmax(np.abs(coframe_values(f) - expected)) <= 1e-9


@pytest.mark.parametrize("name", sorted(SURFACES))
def test_frames_span_tangent_plane(name):
    # e1 may be flipped by the sign rule, so only the span is fixed
    imm, (u1, u2) = SURFACES[name]
    f = frame_field(imm, u1, u2)
    assert np.all(np.abs(np.linalg.det(f.coords)) > 1e-3)
    for e in (f.e1, f.e2):
        recon = (f.coords[..., 0, 0, None] if e is f.e1 else f.coords[..., 1, 0, None]) * f.d1
        recon = recon + (f.coords[..., 0, 1, None] if e is f.e1 else f.coords[..., 1, 1, None]) * f.d2
        np.testing.assert_allclose(recon, e, atol=1e-12)


@pytest.mark.parametrize("imm", [GENERIC, GENERIC_S3], ids=["s5", "s3"])
def test_angles_match_brute_force(imm):
    for u in U.T[:25]:
        s = frame_at(imm, tuple(u))
        beta, alpha = oracles.angles(imm, u)
        assert s.beta == pytest.approx(beta, abs=1e-9)
        assert s.alpha == pytest.approx(alpha, abs=1e-8)
        assert contact_angle(s) == pytest.approx(s.beta, abs=1e-12)
        assert kahler_angle(s) == pytest.approx(s.alpha, abs=1e-12)


def test_generic_surface_is_adapted():
    f = frame_field(GENERIC, *U)
    assert np.all(f.mode == ADAPTED)
    assert np.all(np.cos(f.alpha) >= 0)


def test_n1_kahler_angle_is_zero():
    f = frame_field(GENERIC_S3, *U)
    np.testing.assert_allclose(f.alpha, 0.0, atol=1e-7)


def test_swap_invariance():
    sw = GENERIC.swapped()
    a = frame_field(GENERIC, U[0], U[1])
    b = frame_field(sw, U[1], U[0])
    np.testing.assert_allclose(a.beta, b.beta, atol=1e-12)
    np.testing.assert_allclose(np.cos(a.alpha) ** 2, np.cos(b.alpha) ** 2, atol=1e-12)


def test_clifford_uses_fallback_frame():
    s = frame_at(get_builtin("clifford"), (0.4, 1.1))
    assert s.alpha is None and s.mode == "fallback-0"
    f1, f2, f3, f4, xi = s.unitary
    e1, e2, e3, e4, e5 = darboux_frame(s)
    np.testing.assert_allclose(f1, e1)
    np.testing.assert_allclose(e3, f2)
    np.testing.assert_allclose(e4, 1j * f2)
    assert coframe_restriction_check(s) <= 1e-12


def test_legendrian_choice_and_strict_mode():
    imm = get_builtin("legendrian-torus")
    s = frame_at(imm, (0.5, 0.9))
    assert s.legendrian
    d1, _ = imm.derivatives(0.5, 0.9)
    np.testing.assert_allclose(s.e1, d1 / np.sqrt(real_inner(d1, d1)))
    with pytest.raises(LegendrianAmbiguityError):
        frame_at(imm, (0.5, 0.9), strict=True)


def test_degenerate_point_raises():
    imm = Immersion(
        lambda a, b: np.stack([np.exp(1j * np.asarray(a)), 0 * np.asarray(b) + 0j], -1),
        lambda a, b: (np.stack([1j * np.exp(1j * np.asarray(a)), 0j * np.asarray(b)], -1),
                      np.zeros(np.shape(a) + (2,), complex)),
        n=1,
    )
    with pytest.raises(DegeneratePointError):
        frame_at(imm, (0.0, 0.0))
    f = frame_field(imm, np.zeros(3), np.zeros(3))
    assert np.all(f.degenerate) and np.all(np.isnan(f.beta))


def test_fallback_mode_constant_on_clifford_grid():
    f = frame_field(get_builtin("clifford"), *GRID)
    assert np.all(f.mode == FALLBACK_ZERO)
    assert np.all(np.isnan(f.alpha))
