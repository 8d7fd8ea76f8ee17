"""Exception hierarchy. Every error the library raises derives from CPCenterError."""


class CPCenterError(Exception):
    pass


class EmptyInstance(CPCenterError):
    pass


class NonFiniteCoordinate(CPCenterError):
    pass


class UnsupportedEdgeWeightType(CPCenterError):
    pass


class DimensionMismatch(CPCenterError):
    pass


class MalformedRow(CPCenterError):
    pass


class IncompleteCurve(CPCenterError):
    pass


class SchemaMismatch(CPCenterError):
    pass


class RadiusDecrease(CPCenterError):
    pass


class InfeasibleRow(CPCenterError):
    pass


class InstanceTooSmall(CPCenterError):
    pass


class ArgumentOutOfRange(CPCenterError):
    pass


class BudgetExceeded(CPCenterError):
    pass


class UnsupportedP(CPCenterError):
    pass


class ModeMismatch(CPCenterError):
    pass


class POutOfRange(CPCenterError):
    pass


class NonPositiveUB(CPCenterError):
    pass
