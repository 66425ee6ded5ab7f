"""Exception hierarchy.

Every error raised deliberately by the package derives from
:class:`CoexistError` so callers (and the CLI) can catch them in one place.
"""


class CoexistError(Exception):
    """Base class for all package errors."""


class NonHermitian(CoexistError, ValueError):
    def __init__(self, deviation: float):
        self.deviation = float(deviation)
        super().__init__(f"matrix is not Hermitian (|M - M*| = {self.deviation:.3e})")


class DimensionMismatch(CoexistError, ValueError):
    pass


class ShapeMismatch(CoexistError, ValueError):
    pass


class NotAnEffect(CoexistError, ValueError):
    def __init__(self, eigenvalue: float, message: str | None = None):
        self.eigenvalue = float(eigenvalue)
        super().__init__(message or f"not an effect: eigenvalue {self.eigenvalue!r} outside [0, 1]")


class NotAProjection(CoexistError, ValueError):
    pass


class RankViolation(CoexistError, ValueError):
    pass


class NegativeRadicand(CoexistError, ValueError):
    def __init__(self, radicand: float):
        self.radicand = float(radicand)
        super().__init__(f"negative radicand {self.radicand:.3e} in c-function (invalid effects?)")


class PreconditionViolated(CoexistError, ValueError):
    pass


class DegenerateAngle(CoexistError, ArithmeticError):
    """An angle eigenvalue landed at 0 or pi inside the non-commutative part.

    This means the kernel tolerance and the angle tolerance disagree, i.e. the
    decomposition is numerically inconsistent.
    """


class NotInAlgebra(CoexistError, ValueError):
    def __init__(self, violation: float, where: str = ""):
        self.violation = float(violation)
        self.where = where
        msg = f"operator is not in the two-projection algebra (violation {self.violation:.3e}"
        msg += f" at {where})" if where else ")"
        super().__init__(msg)


class InvalidRange(CoexistError, ValueError):
    pass
