"""Exception hierarchy shared by every ybx module."""


class YBXError(Exception):
    """Base class for all library errors."""


class DivisionByZero(YBXError, ZeroDivisionError):
    pass


class UnsupportedField(YBXError):
    pass


class NotASquare(YBXError, ValueError):
    pass


class SamplingExhausted(YBXError):
    pass


class DegenerateDenominator(YBXError, ZeroDivisionError):
    pass


class SingularInput(YBXError, ZeroDivisionError):
    """A denominator of a map or Lax formula vanished at the given input.

    ``where`` names the offending denominator so reports can say which one.
    """

    def __init__(self, where):
        super().__init__(f"singular input: {where} = 0")
        self.where = where


class ZeroRho(SingularInput):
    def __init__(self, where="rho"):
        super().__init__(where)


class BadArity(YBXError, TypeError):
    pass


class ParamsOffCurve(YBXError, ValueError):
    pass


class NotRankOne(YBXError, ValueError):
    pass


class ZeroVector(YBXError, ValueError):
    pass


class InsufficientSpectralPoints(YBXError):
    pass


class SingularVandermonde(YBXError, ZeroDivisionError):
    pass


class ProportionalityFailure(YBXError, AssertionError):
    def __init__(self, lam, lhs, rhs):
        super().__init__(f"Lax products not proportional at lambda={lam}")
        self.lam, self.lhs, self.rhs = lam, lhs, rhs


class MuSquareFailure(YBXError, AssertionError):
    def __init__(self, lam, lhs, rhs):
        super().__init__(f"mu^2 rho(p) rho(q) != rho(x) rho(y) at lambda={lam}")
        self.lam, self.lhs, self.rhs = lam, lhs, rhs


class UnknownProperty(YBXError, KeyError):
    pass


class UsageError(YBXError, ValueError):
    """Bad command line, manifest or spec string."""
