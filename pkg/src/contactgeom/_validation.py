"""Input validation shared by the estimators and the CLI."""

from __future__ import annotations

from pathlib import Path

import numpy as np
from sklearn.utils.validation import check_array

from .surface import BUILTINS, Immersion, get_builtin

GRID_MIN, GRID_MAX = 8, 4096


def check_grid_size(size) -> int:
    if isinstance(size, bool) or int(size) != size:
        raise ValueError(f"grid size must be an integer, got {size!r}")
    size = int(size)
    if not GRID_MIN <= size <= GRID_MAX:
        raise ValueError(f"grid size must lie in [{GRID_MIN}, {GRID_MAX}], got {size}")
    return size


def check_parameter_points(X) -> np.ndarray:
    """``(m, 2)`` float array of parameter points ``(u1, u2)``."""
    X = check_array(X, dtype=np.float64, ensure_2d=True)
    if X.shape[1] != 2:
        raise ValueError(f"expected parameter points with 2 columns (u1, u2), got {X.shape[1]}")
    return X


def resolve_surface(surface) -> Immersion:
    """Built-in name, path to a surface file, or an :class:`Immersion`."""
    if isinstance(surface, Immersion):
        return surface
    if isinstance(surface, (str, Path)):
        if str(surface) in BUILTINS:
            return get_builtin(str(surface))
        path = Path(surface)
        if path.is_file():
            from .dsl import load_surface

            return load_surface(path)
        raise ValueError(
            f"unknown surface {str(surface)!r}: not a built-in ({', '.join(sorted(BUILTINS))}) "
            "and not an existing file"
        )
    raise TypeError(f"cannot interpret {type(surface).__name__} as a surface")


def check_identities(identities, available) -> list:
    if identities is None:
        return list(available)
    if isinstance(identities, str):
        identities = [s.strip() for s in identities.split(",") if s.strip()]
    unknown = [name for name in identities if name not in available]
    if unknown:
        raise ValueError(f"unknown identities {unknown}; choose from {sorted(available)}")
    return list(identities)
