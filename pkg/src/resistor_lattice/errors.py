"""Exception types raised across the package."""


class LatticeError(Exception):
    """Base class for all package errors."""


class NotAdjacent(LatticeError, ValueError):
    """Two sites that were expected to be nearest neighbours are not."""


class DomainError(LatticeError, ValueError):
    pass


class ConvergenceFailure(LatticeError, RuntimeError):
    pass


class InvalidEdit(LatticeError, ValueError):
    """Malformed edit set: no-op edit, negative conductance or duplicate bond."""


class SingularB(LatticeError, ArithmeticError):
    """The Woodbury matrix B is numerically singular.

    This happens when the removed bonds cut off islands or isolated sites.
    ``report`` carries the graph-component analysis when available.
    """

    def __init__(self, condition_estimate, report=None):
        self.condition_estimate = condition_estimate
        self.report = report
        msg = f"matrix B is singular (reciprocal condition {condition_estimate:.3e})"
        if report is not None:
            msg += f"; {report.summary()}"
        super().__init__(msg)


class AugmentationImpossible(LatticeError):
    pass


class DisconnectedNetwork(LatticeError, ValueError):
    """A finite network has more than one connected component."""

    def __init__(self, components):
        self.components = components
        sizes = ", ".join(str(len(c)) for c in components)
        super().__init__(f"network has {len(components)} components (sizes {sizes})")


class WindowTooSmall(LatticeError, ValueError):
    pass


class WindowMissing(LatticeError, ValueError):
    pass


class ScenarioError(LatticeError, ValueError):
    """Parse or validation error in a scenario or network file."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
