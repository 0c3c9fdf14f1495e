"""Exception types raised across the package."""


class ClasspairError(Exception):
    """Base class for all errors raised by this package."""


class SingularCurve(ClasspairError, ValueError):
    """Curve discriminant vanishes."""


class NotOnCurve(ClasspairError, ValueError):
    """Point fails the exact on-curve identity."""


class InfinitePoint(ClasspairError, ValueError):
    """Operation requires an affine point."""


class NonPositiveDiscriminant(ClasspairError, ValueError):
    """Family value t gives a discriminant that is not negative."""


class IterationOverflow(ClasspairError, RuntimeError):
    """Height iteration would exceed the coordinate digit cap before reaching tol."""


class DependentPoints(ClasspairError, ValueError):
    """Gram determinant interval contains zero; points not certifiably independent."""


class DegenerateGram(ClasspairError, ValueError):
    """No positive certified lower bound on the smallest Gram eigenvalue."""


class HypothesisFailed(ClasspairError, ValueError):
    """A counting bound was requested outside its hypothesis range."""


class InvalidDiscriminant(ClasspairError, ValueError):
    """-D is not congruent to 0 or 1 mod 4, or D is not positive."""


class NotPositiveDefinite(ClasspairError, ValueError):
    """Quadratic form is not positive definite."""


class NotFundamental(ClasspairError, ValueError):
    """-D0 is not a fundamental discriminant."""


class DegeneratePair(ClasspairError, ValueError):
    """Point pair has alpha = 0; the paired form would have zero leading coefficient."""


class ParityViolation(ClasspairError, ValueError):
    """Twist point has odd v while -D is odd."""


class InvalidEll(ClasspairError, ValueError):
    """Supplied middle-coefficient parameter is not a valid residue."""


class PairingConsistencyError(ClasspairError, RuntimeError):
    """Internal certification of the paired form failed; should never fire on valid input."""


class DomainError(ClasspairError, ValueError):
    """Argument outside the domain of the formula."""


class FactorizationTimeout(ClasspairError, RuntimeError):
    """Integer could not be factored within the configured effort bound."""


class DependentAtThisSize(ClasspairError, ValueError):
    """Family curve candidates are not certifiably independent for these parameters."""


class CatalogError(ClasspairError, ValueError):
    """Curve catalog file is malformed or fails validation."""
