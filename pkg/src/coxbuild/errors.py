"""Exceptions shared across the package."""


class CoxbuildError(Exception):
    pass


class InvalidMatrixError(CoxbuildError, ValueError):
    pass


class NotReducedError(CoxbuildError, ValueError):
    pass


class ResourceLimitError(CoxbuildError, RuntimeError):
    """Raised when an enumeration would exceed its configured element cap."""


class UnknownChamberError(CoxbuildError, KeyError):
    pass


class LiftError(CoxbuildError, ValueError):
    pass


class GateIndependenceError(CoxbuildError, AssertionError):
    """The gate chamber of a component depended on the chamber it was computed from."""
