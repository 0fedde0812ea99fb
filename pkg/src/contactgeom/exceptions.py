"""Exception hierarchy for contactgeom."""


class ContactGeomError(Exception):
    """Base class for all package errors."""


class DimensionError(ContactGeomError, ValueError):
    """Vectors of incompatible length, or an unsupported sphere dimension."""


class DegeneratePointError(ContactGeomError, ValueError):
    """The induced metric is degenerate at a queried parameter point."""

    def __init__(self, u, det):
        self.u = tuple(float(x) for x in u)
        self.det = float(det)
        super().__init__(
            f"degenerate induced metric at u={self.u}: det(g)={self.det:.3e}"
        )


class LegendrianAmbiguityError(ContactGeomError):
    """Tangent plane lies in the contact distribution and strict mode was requested."""

    def __init__(self, u):
        self.u = tuple(float(x) for x in u)
        super().__init__(
            f"tangent plane lies in the contact distribution at u={self.u}; "
            "e1 is not determined"
        )


class DegenerateFrameError(ContactGeomError):
    """Neither the adapted frame nor its fallback could be built."""

    def __init__(self, u, reason=""):
        self.u = tuple(float(x) for x in u)
        super().__init__(f"degenerate frame at u={self.u}: {reason}")
