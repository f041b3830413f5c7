"""Exception hierarchy shared by every evaluator in the package."""


class HumbertError(Exception):
    """Base class for all numerical failures raised by this package."""


class DomainError(HumbertError, ValueError):
    """Arguments violate the validity region of the requested method."""


class PoleError(HumbertError, ValueError):
    """A Gamma-function or parameter pole makes the result undefined."""


class ParameterPole(PoleError):
    """A lower series parameter sits on a nonpositive integer."""


class BranchCutError(DomainError):
    """The argument lies on a branch cut and no branch was chosen."""


class NoConvergence(HumbertError, ArithmeticError):
    """A series or quadrature exhausted its budget before meeting tolerance."""


class SingularEndpoint(DomainError):
    """Endpoint exponents with nonpositive real part (non-integrable)."""


class DivergentTail(HumbertError, ArithmeticError):
    """Sampled magnitudes do not decay as the declared decay class requires."""


class SlowDecay(NoConvergence):
    """Contour integrand decays too slowly for the symmetric truncation."""


class NoApplicableMethod(DomainError):
    """Every method's validity predicate fails at the requested point."""


class EmptyOverlap(HumbertError, ValueError):
    """A cross-validation grid has no point shared by two methods."""


class BelowNoiseFloor(HumbertError):
    """Errors reach reference precision before a slope can be measured."""
