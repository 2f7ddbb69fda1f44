"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of an operation."""


class ToleranceUnreachable(RuntimeError):
    """The requested tolerance would need more terms than the configured cap."""


class DivergenceDetected(ArithmeticError):
    """Endpoint analysis shows the requested integral is infinite."""


class IndexMismatch(ValueError):
    """Sequence start index does not match the kernel offset."""


class NonConvergence(RuntimeError):
    """Raised only on request; integrators normally flag non-convergence instead."""
