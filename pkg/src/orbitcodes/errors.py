"""Exception hierarchy shared by all modules."""


class OrbitCodesError(Exception):
    """Base class; ``exit_code`` is what the CLI returns when this escapes."""

    exit_code = 2


class NonPrime(OrbitCodesError, ValueError):
    pass


class Reducible(OrbitCodesError, ValueError):
    pass


class NotPrimitive(OrbitCodesError, ValueError):
    pass


class InvalidModulus(OrbitCodesError, ValueError):
    pass


class InvalidInput(OrbitCodesError, ValueError):
    """Malformed command-line or file input."""


class DivisionByZero(OrbitCodesError, ZeroDivisionError):
    pass


class LogOfZero(OrbitCodesError, ValueError):
    pass


class OrderOfZero(OrbitCodesError, ValueError):
    pass


class InvalidSubfieldDegree(OrbitCodesError, ValueError):
    pass


class WrongLength(OrbitCodesError, ValueError):
    pass


class FieldMismatch(OrbitCodesError, ValueError):
    pass


class EmptyGenerators(OrbitCodesError, ValueError):
    pass


class ZeroScalar(OrbitCodesError, ValueError):
    pass


class ZeroSpace(OrbitCodesError, ValueError):
    pass


class NotNormalized(OrbitCodesError, ValueError):
    pass


class NonDirect(OrbitCodesError, ValueError):
    pass


class DimensionMismatch(OrbitCodesError, ValueError):
    pass


class RankLoss(OrbitCodesError, ValueError):
    pass


class NotPartialSpread(OrbitCodesError, ValueError):
    pass


class UnsupportedParameters(OrbitCodesError, ValueError):
    pass


class SearchSpaceTooLarge(OrbitCodesError, ValueError):
    exit_code = 4

    def __init__(self, count: int, cap: int):
        super().__init__(f"search space has {count} subspaces, cap is {cap}")
        self.count = count
        self.cap = cap


class InternalInconsistency(OrbitCodesError, RuntimeError):
    exit_code = 5
