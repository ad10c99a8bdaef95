"""Exception types raised across the package."""


class BestProxError(Exception):
    """Base class for all package errors."""


class NormPointMismatch(BestProxError, TypeError):
    """A norm was applied to a point of the wrong variant."""

    def __init__(self, norm, point):
        super().__init__(f"norm/point mismatch: {norm} cannot evaluate {type(point).__name__}")
        self.norm = norm
        self.point = point


class CatalogError(BestProxError, KeyError):
    def __init__(self, kind, name, valid):
        self.valid = sorted(valid)
        msg = f"unknown {kind} {name!r}; valid names: {', '.join(self.valid)}"
        super().__init__(msg)
        self.msg = msg

    def __str__(self):
        return self.msg


class UnestimableRegion(BestProxError, ValueError):
    """Region has neither a boundary parametrization nor a bounding box."""


class DomainError(BestProxError, ValueError):
    pass


class PreconditionError(BestProxError, ValueError):
    pass


class MapIntegrityError(BestProxError, RuntimeError):
    """An iterate left both sides of the domain."""


class BudgetError(BestProxError, RuntimeError):
    """Iteration budget exhausted before convergence; carries the trace."""

    def __init__(self, msg, trace=None):
        super().__init__(msg)
        self.trace = trace
