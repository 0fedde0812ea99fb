"""Acceptance suite: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -v`` (the lines are repeated in the
terminal summary) or directly with ``python tests/test_acceptance.py``.
"""

import sys
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

import oracles  # noqa: E402
from conftest import TRANSCRIPTIONS, sampled  # noqa: E402
from corpus import corpus  # noqa: E402
from contactgeom.dsl import evaluate_dual, load_surface, parse_expression  # noqa: E402
from contactgeom.frames import coframe_values, frame_field, gram_deviation, restriction_table  # noqa: E402
from contactgeom.geometry import (  # noqa: E402
    SurfaceSampling,
    connection_form_w12,
    gaussian_curvature_intrinsic,
    mean_curvature_norm,
    partial,
)
from contactgeom.identities import (  # noqa: E402
    constant_angle_curvature,
    residual_gauss_curvature_beta_form,
    residual_gauss_curvature_full,
    residual_laplacian,
    residual_theorem2_w12,
    residual_theta21,
    verify,
)
from contactgeom.surface import MetricTensor, get_builtin, product_torus  # noqa: E402

RESULTS = []
BETA = {
    "clifford": 0.0,
    "generalized-clifford": np.arccos(2 * np.sqrt(2) / 3),
    "legendrian-torus": np.pi / 2,
}


def record(label, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] {label}: {detail}"
    RESULTS.append(line)
    print(line)
    assert ok, line


def test_c1_contact_angles():
    worst, start = {}, time.perf_counter()
    for name, beta in BETA.items():
        s = SurfaceSampling(get_builtin(name), 32)
        worst[name] = float(np.abs(s.frames.beta - beta).max())
    elapsed = time.perf_counter() - start
    ok = max(worst.values()) <= 1e-9 and elapsed < 1.0
    detail = ", ".join(f"{k} max|d beta|={v:.1e}" for k, v in worst.items())
    record("C1 contact angles on 32x32", ok, f"{detail}; {elapsed * 1e3:.0f} ms")


def test_c2_kahler_angles():
    errs = {}
    for name in ("generalized-clifford", "legendrian-torus"):
        a = sampled(name).frames.alpha
        errs[name] = float(np.nanmax(np.abs(a - np.pi / 2))) if not np.isnan(a).any() else np.inf
    clifford_undefined = bool(np.isnan(sampled("clifford").frames.alpha).all())
    # brute-force oracle at a few cells
    oracle_err = 0.0
    for name in ("generalized-clifford", "legendrian-torus"):
        s = sampled(name)
        for i, j in [(0, 0), (7, 33), (50, 12)]:
            _, a = oracles.angles(s.immersion, (s.grid.u1[i, j], s.grid.u2[i, j]))
            oracle_err = max(oracle_err, abs(a - s.frames.alpha[i, j]))
    ok = max(errs.values()) <= 1e-8 and clifford_undefined and oracle_err <= 1e-8
    record("C2 Kahler angles", ok,
           ", ".join(f"{k} max|d alpha|={v:.1e}" for k, v in errs.items())
           + f", clifford undefined everywhere={clifford_undefined}, oracle gap={oracle_err:.1e}")


def test_c3_minimality():
    H = {name: float(mean_curvature_norm(sampled(name)).values.max()) for name in BETA}
    control = float(mean_curvature_norm(SurfaceSampling(product_torus(0.5), 64)).values.max())
    ok = max(H.values()) < 1e-6 and control > 1e-2
    record("C3 minimality", ok,
           ", ".join(f"{k} max|H|={v:.1e}" for k, v in H.items()) + f", control |H|={control:.2f}")


def _sphere_strip_error(n):
    u1 = np.linspace(np.pi / 4, 3 * np.pi / 4, n)
    u2 = 2 * np.pi / n * np.arange(n)
    U1, _ = np.meshgrid(u1, u2, indexing="ij")
    g = MetricTensor(np.ones_like(U1), np.zeros_like(U1), np.sin(U1) ** 2)
    K = gaussian_curvature_intrinsic(g, (u1[1] - u1[0], u2[1]), (False, True)).values
    return float(np.nanmax(np.abs(K - 1)))


def test_c4_intrinsic_flatness():
    K = {name: float(np.abs(sampled(name).curvature.values).max()) for name in BETA}
    e32, e64 = _sphere_strip_error(32), _sphere_strip_error(64)
    ok = max(K.values()) <= 1e-9 and e64 < 1e-3 and e32 / e64 >= 8
    record("C4 intrinsic curvature", ok,
           ", ".join(f"{k} max|K|={v:.1e}" for k, v in K.items())
           + f", sphere strip err N=64 {e64:.1e}, reduction {e32 / e64:.1f}x")


def test_c5a_full_curvature_generalized_clifford():
    r = residual_gauss_curvature_full(sampled("generalized-clifford"))
    record("C5a full curvature formula, generalized Clifford N=64", r.max_abs < 1e-4, f"max_abs={r.max_abs:.3e}")


def test_c5b_beta_curvature_generalized_clifford():
    r = residual_gauss_curvature_beta_form(sampled("generalized-clifford"))
    record("C5b curvature through beta, generalized Clifford N=64", r.max_abs < 1e-4, f"max_abs={r.max_abs:.3e}")


def test_c5c_laplacian_generalized_clifford():
    r = residual_laplacian(sampled("generalized-clifford"))
    record("C5c Laplacian of beta, generalized Clifford N=64", r.max_abs < 1e-4, f"max_abs={r.max_abs:.3e}")


def test_c5d_theta21_generalized_clifford():
    r = residual_theta21(sampled("generalized-clifford"))
    record("C5d theta21 connection, generalized Clifford N=64", r.max_abs < 1e-4, f"max_abs={r.max_abs:.3e}")


def test_c5e_full_curvature_legendrian():
    r = residual_gauss_curvature_full(sampled("legendrian-torus"))
    record("C5e full curvature formula, Legendrian torus N=64", r.max_abs < 1e-4, f"max_abs={r.max_abs:.3e}")


def test_c5f_w12_norm_generalized_clifford():
    w = connection_form_w12(sampled("generalized-clifford")).norm_sq
    err = float(np.abs(w - 0.9).max())
    record("C5f |w_1^2|^2 = 9/10 on generalized Clifford", err <= 1e-4,
           f"measured {w.mean():.6f} (max deviation from 0.9: {err:.3e})")


def test_c6_constant_angle_curvature():
    value = constant_angle_curvature(np.arccos(2 * np.sqrt(2) / 3), np.pi / 2)
    measured = float(np.abs(sampled("generalized-clifford").curvature.values).max())
    record("C6 constant-angle curvature", value == 0.0 and measured <= 1e-9,
           f"formula={value!r}, measured max|K|={measured:.1e}")


def test_c7_theorem2_clifford():
    r = residual_theorem2_w12(sampled("clifford"))
    ok = not r.vacuous and r.max_abs < 1e-8
    record("C7 w_1^2 = 0 on Clifford", ok, f"max_abs={r.max_abs!r} over {r.evaluated} cells")


def _nan_gap(a, b):
    a, b = np.asarray(a, float), np.asarray(b, float)
    if not np.array_equal(np.isnan(a), np.isnan(b)):
        return np.inf
    d = np.abs(a - b)[~np.isnan(a)]
    return float(d.max()) if d.size else 0.0


def test_c8_dsl_equivalence():
    gaps = {}
    for name, path in TRANSCRIPTIONS.items():
        ref, dsl = sampled(name), SurfaceSampling(load_surface(path), 64)
        gap = max(
            _nan_gap(ref.frames.beta, dsl.frames.beta),
            _nan_gap(ref.frames.alpha, dsl.frames.alpha),
            _nan_gap(ref.curvature.values, dsl.curvature.values),
        )
        for a, b in zip(verify(ref), verify(dsl)):
            same_counts = a.evaluated == b.evaluated and a.skipped == b.skipped and a.passed == b.passed
            gap = max(gap, _nan_gap(a.residual, b.residual), 0.0 if same_counts else np.inf)
        gaps[name] = gap
    record("C8 DSL transcriptions", max(gaps.values()) <= 1e-10,
           ", ".join(f"{k} gap={v:.1e}" for k, v in gaps.items()))


def _fd_order():
    errs = []
    for n in (32, 64):
        u = 2 * np.pi / n * np.arange(n)
        f = np.exp(np.sin(u))
        errs.append(np.abs(partial(f, 0, u[1]) - np.cos(u) * f).max())
    stencil = np.log2(errs[0] / errs[1])
    from contactgeom.identities import residual_gauss_equation

    r32 = residual_gauss_equation(sampled("legendrian-torus", 32)).max_abs
    r64 = residual_gauss_equation(sampled("legendrian-torus", 64)).max_abs
    return float(stencil), float(np.log2(r32 / r64))


def _corpus_gap():
    rng = np.random.default_rng(7)
    points, h, worst = rng.uniform(0.2, 1.3, size=(4, 2)), 1e-5, 0.0
    for text in corpus():
        tree = parse_expression(text)
        f = lambda a, b: complex(evaluate_dual(tree, (a, b)).value)  # noqa: E731
        for u1, u2 in points:
            d = evaluate_dual(tree, (u1, u2))
            fd = ((f(u1 + h, u2) - f(u1 - h, u2)) / (2 * h), (f(u1, u2 + h) - f(u1, u2 - h)) / (2 * h))
            for exact, approx in zip((complex(d.d_u1), complex(d.d_u2)), fd):
                worst = max(worst, abs(exact - approx) / max(1.0, abs(exact)))
    return worst


def test_c9_property_suites():
    ortho = table = 0.0
    for name in BETA:
        fr = sampled(name).frames
        ortho = max(ortho, float(gram_deviation(fr.darboux).max()))
        table = max(table, float(np.nanmax(np.abs(coframe_values(fr) - restriction_table(2, fr.alpha_frame, fr.beta)))))
    transcribed = load_surface(Path(__file__).parent / "data" / "generalized_clifford.surf")
    fr = frame_field(transcribed, *np.random.default_rng(1).uniform(0, 6, (2, 100)))
    ortho = max(ortho, float(gram_deviation(fr.darboux).max()))
    dual_gap = _corpus_gap()
    stencil, pipeline = _fd_order()
    ok = ortho <= 1e-9 and table <= 1e-9 and dual_gap <= 1e-8 and min(stencil, pipeline) >= 3.5
    record("C9 property suites", ok,
           f"orthonormality {ortho:.1e}, coframe table {table:.1e}, dual vs FD {dual_gap:.1e} (50 expressions), "
           f"FD order {stencil:.2f} (stencil) / {pipeline:.2f} (curvature pipeline)")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
