"""Exception hierarchy.

Every failure the library signals deliberately derives from ``ExtensionError``
so callers (the CLI in particular) can tell mathematical failures apart from
programming errors.
"""


class ExtensionError(Exception):
    """Base class for all library errors."""


class DimensionMismatch(ExtensionError, ValueError):
    pass


class ConjugationInvalid(ExtensionError, ValueError):
    pass


class RankCollapse(ExtensionError):
    pass


class NotOrthogonal(ExtensionError):
    pass


class DegenerateDomain(ExtensionError, ValueError):
    pass


class NotAGraph(ExtensionError):
    """A nonzero vector of the form (0, y) lies in the subspace."""

    def __init__(self, message, sigma_min=None):
        super().__init__(message)
        self.sigma_min = sigma_min


class WrongDimension(ExtensionError, ValueError):
    pass


class NotSkewSymmetric(ExtensionError):
    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class NotIsometric(ExtensionError):
    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class InternalInvariantViolation(ExtensionError):
    """An identity that holds for every valid input failed; indicates a bug."""


class OddDimension(ExtensionError, ValueError):
    pass


class NotInvariant(ExtensionError, ValueError):
    pass


class Exhausted(ExtensionError):
    """The retry budget was spent without finding a valid extension.

    ``diagnostics`` holds the best residuals seen across attempts.
    """

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = dict(diagnostics or {})


class Infeasible(ExtensionError):
    def __init__(self, message, residual, solution=None):
        super().__init__(message)
        self.residual = residual
        self.solution = solution


class GeneratorFailure(ExtensionError):
    pass
