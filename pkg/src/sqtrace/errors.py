"""Exception hierarchy shared by every module."""


class SqTraceError(Exception):
    """Base class for all errors raised by this package."""


class NotHermitian(SqTraceError):
    pass


class NoConvergence(SqTraceError):
    pass


class DomainViolation(SqTraceError):
    """A spectrum left the domain of the function being applied."""


class DimensionMismatch(SqTraceError):
    pass


class LengthMismatch(DimensionMismatch):
    pass


class NotMajorized(SqTraceError):
    pass


class UnknownName(SqTraceError):
    pass


class ParameterOutOfRange(SqTraceError):
    pass


class BadWeights(SqTraceError):
    pass


class NotIsometry(SqTraceError):
    pass


class NotIsometryFamily(SqTraceError):
    pass


class NotOrthonormal(SqTraceError):
    pass


class BadDims(SqTraceError):
    pass


class ConfigError(SqTraceError):
    pass


class InvalidMap(SqTraceError):
    """Kraus operators that are not unital or projections that do not resolve I."""


class InvalidState(SqTraceError):
    pass
