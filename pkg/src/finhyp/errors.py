"""Exception hierarchy shared by all finhyp modules."""


class FinHypError(Exception):
    """Base class for all errors raised by this package."""


class LengthMismatch(FinHypError):
    """Parameter lists have different lengths or are empty."""


class NotDisjointModZ(FinHypError):
    """Some upper and lower parameter coincide modulo Z."""


class NotCoprime(FinHypError):
    """A multiplier is not coprime to the relevant modulus."""


class DoesNotSplit(FinHypError):
    """Multiplication by p does not permute the parameters modulo Z."""


class DivisionByZero(FinHypError):
    """Inversion of an exact zero."""


class ConductorMismatch(FinHypError):
    """Incompatible cyclotomic conductors with no common promotion."""


class NotDivisor(FinHypError):
    """Expected one conductor to divide the other."""


class NotPrime(FinHypError):
    """A prime was required."""


class FieldTooLarge(FinHypError):
    """Requested finite field exceeds the configured size bound."""


class NotSubfield(FinHypError):
    """Requested base is not a subfield (degree does not divide)."""


class ZeroElement(FinHypError):
    """A nonzero field element was required."""


class NotUnit(FinHypError):
    """An invertible algebra element was required."""


class InternalInconsistency(FinHypError):
    """An identity the implementation guarantees failed to hold exactly."""


class AssumptionFails(FinHypError):
    """q-1 is not divisible by all parameter denominators."""


class ZeroArgument(FinHypError):
    """The hypergeometric argument t must be a unit."""


class BadPrime(FinHypError):
    """The prime divides a parameter denominator."""


class ExponentNotIntegral(FinHypError):
    """A pi-exponent that must be an integer multiple of p-1 is not."""


class NotPAdicInteger(FinHypError):
    """Argument has a denominator divisible by p."""


class ConductorNotDividing(FinHypError):
    """Cyclotomic conductor does not divide p-1, so no Teichmuller embedding."""


class BoundExceeded(FinHypError):
    """A configured resource bound (field size, precision cost) was exceeded."""
