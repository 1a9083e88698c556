"""Exception hierarchy shared by every module of the package."""


class HymcgError(Exception):
    """Base class for all library errors."""


class InvalidTopologicalType(HymcgError, ValueError):
    pass


class HyperellipticError(HymcgError, ValueError):
    """Inconsistent involution data on a surface.

    ``violations`` lists the names of every constraint that failed, so a
    caller can see all problems even though only one class is raised.
    """

    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = tuple(violations)


class FixedLocusMismatch(HyperellipticError):
    pass


class PairingViolation(HyperellipticError):
    pass


class InvalidGenus(HymcgError, ValueError):
    pass


class InvalidWord(HymcgError, ValueError):
    pass


class RangeError(HymcgError, ValueError):
    pass


class InvalidModulus(HymcgError, ValueError):
    pass


class UnsupportedModulus(HymcgError, ValueError):
    pass


class ClosureTooLarge(HymcgError, RuntimeError):
    def __init__(self, message, partial_count):
        super().__init__(message)
        self.partial_count = partial_count


class InvalidFamily(HymcgError, ValueError):
    pass


class NoEssentialCurves(HymcgError, ValueError):
    pass


class ComplexTooLarge(HymcgError, RuntimeError):
    pass


class InvalidCurve(HymcgError, ValueError):
    pass
