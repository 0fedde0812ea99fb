"""Surface-definition language: parse text into an :class:`Immersion`."""

from __future__ import annotations

from pathlib import Path

import numpy as np

from ..surface import Immersion, validate_immersion
from .dual import DSLEvaluationError, DualScalar
from .parser import (
    ComponentCountError,
    DSLError,
    DSLSyntaxError,
    SurfaceDefinition,
    UnknownIdentifierError,
    evaluate_dual,
    parse_expression,
    parse_surface,
    parse_surface_file,
    serialize,
    serialize_surface,
)

DSL_TOLERANCE = 1e-10
VALIDATION_GRID = 16

__all__ = [
    "ComponentCountError",
    "DSLError",
    "DSLEvaluationError",
    "DSLSyntaxError",
    "DualScalar",
    "SurfaceDefinition",
    "UnknownIdentifierError",
    "evaluate_dual",
    "immersion_from_dsl",
    "load_surface",
    "parse_expression",
    "parse_surface",
    "parse_surface_file",
    "serialize",
    "serialize_surface",
]


def _broadcast(x, shape):
    return np.broadcast_to(np.asarray(x, dtype=complex), shape)


def immersion_from_dsl(
    text: str,
    n: int | None = None,
    label: str = "dsl",
    domain=None,
    periodic: bool | None = None,
) -> Immersion:
    """Build an immersion whose derivatives come from dual-number evaluation.

    The result is validated on a coarse grid; problems are attached as
    ``immersion.warnings`` rather than raised.
    """
    definition = parse_surface_file(text, n)
    components = definition.components

    def evaluate(u1, u2):
        shape = np.broadcast(u1, u2).shape
        return [evaluate_dual(c, (u1, u2)) for c in components], shape

    def evaluator(u1, u2):
        duals, shape = evaluate(u1, u2)
        return np.stack([_broadcast(d.value, shape) for d in duals], axis=-1)

    def derivative_evaluator(u1, u2):
        duals, shape = evaluate(u1, u2)
        d1 = np.stack([_broadcast(d.d_u1, shape) for d in duals], axis=-1)
        d2 = np.stack([_broadcast(d.d_u2, shape) for d in duals], axis=-1)
        return d1, d2

    kwargs = {}
    if domain is not None:
        kwargs["domain"] = domain
    imm = Immersion(
        evaluator,
        derivative_evaluator,
        n=len(components) - 1,
        label=label,
        periodic=definition.periodic if periodic is None else periodic,
        tolerance=DSL_TOLERANCE,
        components=components,
        **kwargs,
    )
    try:
        report = validate_immersion(imm, VALIDATION_GRID)
    except DSLEvaluationError as exc:
        imm.warnings.append(f"evaluation failed on the validation grid: {exc}")
    else:
        imm.warnings.extend(report.failures())
    return imm


def load_surface(path, n: int | None = None) -> Immersion:
    path = Path(path)
    return immersion_from_dsl(path.read_text(encoding="utf-8"), n=n, label=path.stem)
