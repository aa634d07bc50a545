"""Exception types shared across the package."""


class LissvarError(Exception):
    """Base class for all library errors."""


class RankDeficient(LissvarError):
    """A matrix does not have the full rank required by the operation."""


class TooManyColumns(LissvarError):
    """Circuit enumeration guard exceeded (subset enumeration would blow up)."""


class NotFullDimensional(LissvarError):
    """A polytope operation needs a full-dimensional input."""


class ZeroCoordinate(LissvarError):
    """A torus point had a zero coordinate."""


class Inconclusive(LissvarError):
    """Randomized trials disagreed; the numeric result is not trustworthy."""


class DimensionGuard(LissvarError):
    """An operation was called above its practical size guard."""


class NotHypersurface(LissvarError):
    """The kernel of the exponent matrix is not one-dimensional."""


class RootExtractionFailed(LissvarError):
    """det(M_g) was not an exact k-th power for the expected k."""


class InvalidGraph(LissvarError):
    """Graph construction input is not a simple loop-free graph."""


class Disconnected(LissvarError):
    """The graph must be connected for incidence-matrix reductions."""


class TooLarge(LissvarError):
    """Brute-force graph automorphism search guard exceeded."""


class OutOfDomain(LissvarError):
    """A point left the open box (-1, 1)^n where the objective is defined."""


class InfeasibleSlice(LissvarError):
    """The affine slice {Ax = omega} misses the open box (-1, 1)^n entirely."""


class NotUnivariate(LissvarError):
    """Exact discriminants are only computed for one-parameter families."""


class NonIntegerShift(LissvarError):
    """Exact discriminants need integer phase shifts (Gaussian-rational units)."""


class DegenerateJacobian(LissvarError):
    """The toric Jacobian determinant vanishes identically for this model."""
