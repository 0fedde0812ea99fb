"""Forward-mode dual numbers over the two surface parameters."""

from __future__ import annotations

import numpy as np


class DSLEvaluationError(ArithmeticError):
    """Evaluation hit a point where the value or its derivative is undefined."""


def _any(mask) -> bool:
    return bool(np.any(mask))


class DualScalar:
    """``value + d_u1 e1 + d_u2 e2`` with ``e_i e_j = 0``.

    Components are complex scalars or numpy arrays of one common shape.
    """

    __slots__ = ("value", "d_u1", "d_u2")

    def __init__(self, value, d_u1=0.0, d_u2=0.0):
        self.value = value
        self.d_u1 = d_u1
        self.d_u2 = d_u2

    @classmethod
    def constant(cls, c) -> "DualScalar":
        return cls(complex(c), 0.0, 0.0)

    @classmethod
    def lift(cls, other) -> "DualScalar":
        return other if isinstance(other, DualScalar) else cls.constant(other)

    def __repr__(self):
        return f"DualScalar({self.value!r}, d_u1={self.d_u1!r}, d_u2={self.d_u2!r})"

    def __neg__(self):
        return DualScalar(-self.value, -self.d_u1, -self.d_u2)

    def __add__(self, other):
        o = DualScalar.lift(other)
        return DualScalar(self.value + o.value, self.d_u1 + o.d_u1, self.d_u2 + o.d_u2)

    __radd__ = __add__

    def __sub__(self, other):
        o = DualScalar.lift(other)
        return DualScalar(self.value - o.value, self.d_u1 - o.d_u1, self.d_u2 - o.d_u2)

    def __rsub__(self, other):
        return DualScalar.lift(other) - self

    def __mul__(self, other):
        o = DualScalar.lift(other)
        return DualScalar(
            self.value * o.value,
            self.value * o.d_u1 + self.d_u1 * o.value,
            self.value * o.d_u2 + self.d_u2 * o.value,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = DualScalar.lift(other)
        if _any(o.value == 0):
            raise DSLEvaluationError("division by zero")
        q = self.value / o.value
        return DualScalar(q, (self.d_u1 - q * o.d_u1) / o.value, (self.d_u2 - q * o.d_u2) / o.value)

    def __rtruediv__(self, other):
        return DualScalar.lift(other) / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise TypeError("only integer exponents are supported")
        if k < 0:
            return DualScalar.constant(1.0) / (self ** (-k))
        if k == 0:
            return DualScalar.constant(1.0)
        lower = self.value ** (k - 1)
        return DualScalar(lower * self.value, k * lower * self.d_u1, k * lower * self.d_u2)

    def _chain(self, value, slope):
        return DualScalar(value, slope * self.d_u1, slope * self.d_u2)


def exp(x: DualScalar) -> DualScalar:
    v = np.exp(x.value)
    return x._chain(v, v)


def sin(x: DualScalar) -> DualScalar:
    return x._chain(np.sin(x.value), np.cos(x.value))


def cos(x: DualScalar) -> DualScalar:
    return x._chain(np.cos(x.value), -np.sin(x.value))


def sqrt(x: DualScalar) -> DualScalar:
    """Principal branch; the derivative is undefined at 0."""
    if _any(x.value == 0):
        raise DSLEvaluationError("sqrt evaluated at 0: derivative undefined")
    r = np.sqrt(np.asarray(x.value, dtype=complex))
    if np.ndim(r) == 0:
        r = complex(r)
    return x._chain(r, 0.5 / r)


def conj(x: DualScalar) -> DualScalar:
    # Parameters are real, so d(conj f)/du = conj(df/du).
    return DualScalar(np.conj(x.value), np.conj(x.d_u1), np.conj(x.d_u2))


FUNCTIONS = {"exp": exp, "sin": sin, "cos": cos, "sqrt": sqrt, "conj": conj}
