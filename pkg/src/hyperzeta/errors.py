"""Exception hierarchy shared by all hyperzeta modules."""


class HyperzetaError(Exception):
    """Base class for all package errors."""


class DivisionByZero(HyperzetaError):
    pass


class CtxMismatch(HyperzetaError):
    pass


class ZeroPolynomial(HyperzetaError):
    pass


class NoSolution(HyperzetaError):
    pass


class InsufficientModulus(HyperzetaError):
    pass


class TooLarge(HyperzetaError):
    pass


class GuardExceeded(HyperzetaError):
    pass


class NotCoprime(HyperzetaError):
    pass


class GenusBound(HyperzetaError):
    pass


class BadWeight(HyperzetaError):
    pass


class GenericityFailure(HyperzetaError):
    pass


class DataMismatch(HyperzetaError):
    pass


class TupleInvalid(HyperzetaError):
    pass


class CharacteristicTooSmall(HyperzetaError):
    pass


class NotTorsion(HyperzetaError):
    pass


class NotFound(HyperzetaError):
    pass


class PrimitiveFormFailure(HyperzetaError):
    pass


class NotZeroDimensional(HyperzetaError):
    pass


class InvalidArgs(HyperzetaError):
    pass


class NotNormalized(HyperzetaError):
    pass


class BackendFailure(HyperzetaError):
    pass


class InvariantViolation(HyperzetaError):
    pass


class DictionaryMiss(HyperzetaError):
    pass
