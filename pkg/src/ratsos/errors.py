"""Exception hierarchy shared by all modules."""


class RatSOSError(Exception):
    """Base class for every error raised by this package."""


# number fields
class NotSquarefree(RatSOSError, ValueError):
    pass


class Reducible(RatSOSError, ValueError):
    def __init__(self, message, factor=None):
        super().__init__(message)
        self.factor = factor


class IrreducibilityUncertified(RatSOSError):
    pass


class DivisionByZero(RatSOSError, ZeroDivisionError):
    pass


class FieldMismatch(RatSOSError, TypeError):
    pass


class NoRealEmbeddings(RatSOSError, ValueError):
    pass


class PrecisionExhausted(RatSOSError, ArithmeticError):
    pass


# polynomials
class DomainMismatch(RatSOSError, TypeError):
    pass


class NotDivisible(RatSOSError, ArithmeticError):
    pass


class NotLinear(RatSOSError, ValueError):
    pass


class ZeroPivotCoefficient(RatSOSError, ValueError):
    pass


# certificates
class NotSymmetric(RatSOSError, ValueError):
    pass


class NotPSDInput(RatSOSError, ValueError):
    pass


class IdentityInvalid(RatSOSError, ValueError):
    pass


# descent
class NonPositive(RatSOSError, ValueError):
    pass


class NotTotallyReal(RatSOSError, ValueError):
    pass


class InvalidInputCertificate(RatSOSError, ValueError):
    pass


class TargetNotRational(RatSOSError, ValueError):
    pass


class RationalityFailure(RatSOSError, ValueError):
    pass


# counterexamples
class OddDegree(RatSOSError, ValueError):
    pass


class DegreeTooSmall(RatSOSError, ValueError):
    pass


class TooFewVariables(RatSOSError, ValueError):
    pass


class RamifiedPrime(RatSOSError, ValueError):
    pass


class TauHasFixedPoint(RatSOSError, ValueError):
    pass


class NotInvolution(RatSOSError, ValueError):
    pass


class GeneralPositionUnverified(RatSOSError):
    pass


class BudgetExhausted(RatSOSError):
    pass


# denominators
class NotFoundWithinBound(RatSOSError):
    pass


class NotTotallyImaginary(RatSOSError, ValueError):
    pass


class IsotropicInvalid(RatSOSError, ValueError):
    pass


class EvidenceMissing(RatSOSError):
    pass
