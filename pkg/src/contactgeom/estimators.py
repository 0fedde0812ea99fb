"""scikit-learn style front ends.

:class:`ContactAngleTransformer` maps parameter points to ``(beta, alpha)``
features and can sit inside a :class:`sklearn.pipeline.Pipeline`.
:class:`SurfaceVerifier` samples a surface on a grid and evaluates the
curvature/Laplacian identities during ``fit``.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_grid_size, check_identities, check_parameter_points, resolve_surface
from .frames import frame_field
from .geometry import SurfaceSampling, mean_curvature_norm
from .identities import IDENTITIES, verify
from .surface import validate_immersion


class ContactAngleTransformer(TransformerMixin, BaseEstimator):
    """Contact and Kähler angles at parameter points of a surface.

    Parameters
    ----------
    surface : str, path or Immersion
        Built-in name (``clifford``, ``generalized-clifford``,
        ``legendrian-torus``), a surface file, or an immersion object.
    strict : bool
        Raise at Legendrian points instead of choosing ``e1 = df/du1``.
    degrees : bool
        Report angles in degrees.

    ``transform`` returns an ``(m, 2)`` array ``[beta, alpha]``; ``alpha`` is
    NaN where it is undefined (``sin beta ~ 0``).
    """

    def __init__(self, surface="clifford", strict=False, degrees=False):
        self.surface = surface
        self.strict = strict
        self.degrees = degrees

    def fit(self, X=None, y=None):
        if X is not None:
            check_parameter_points(X)
        self.immersion_ = resolve_surface(self.surface)
        self.n_ = self.immersion_.n
        self.n_features_in_ = 2
        return self

    def transform(self, X):
        check_is_fitted(self, "immersion_")
        U = check_parameter_points(X)
        field = frame_field(self.immersion_, U[:, 0], U[:, 1], strict=self.strict)
        out = np.column_stack([field.beta, field.alpha])
        return np.degrees(out) if self.degrees else out

    def get_feature_names_out(self, input_features=None):
        return np.array(["beta", "alpha"], dtype=object)


class SurfaceVerifier(BaseEstimator):
    """Grid geometry and identity residuals of a surface.

    Fitted attributes
    -----------------
    validation_ : ValidationReport
    sampling_ : SurfaceSampling
    reports_ : list of ResidualReport
    beta_, alpha_, curvature_, mean_curvature_ : ndarray of shape (N, N)
    """

    def __init__(self, surface="generalized-clifford", grid_size=64, identities=None, tolerance=None):
        self.surface = surface
        self.grid_size = grid_size
        self.identities = identities
        self.tolerance = tolerance

    def fit(self, X=None, y=None):
        size = check_grid_size(self.grid_size)
        names = check_identities(self.identities, IDENTITIES)
        imm = resolve_surface(self.surface)
        self.validation_ = validate_immersion(imm, size)
        self.sampling_ = SurfaceSampling(imm, size)
        self.reports_ = verify(self.sampling_, identities=names, tolerance=self.tolerance)
        self.beta_ = self.sampling_.frames.beta
        self.alpha_ = self.sampling_.frames.alpha
        self.curvature_ = self.sampling_.curvature.values
        self.mean_curvature_ = mean_curvature_norm(self.sampling_).values
        return self

    @property
    def passed_(self) -> bool:
        check_is_fitted(self, "reports_")
        return all(r.passed for r in self.reports_)

    def score(self, X=None, y=None) -> float:
        """Fraction of evaluated (non-vacuous) identities within tolerance."""
        check_is_fitted(self, "reports_")
        live = [r for r in self.reports_ if not r.vacuous]
        if not live:
            return 1.0
        return sum(r.passed for r in live) / len(live)
