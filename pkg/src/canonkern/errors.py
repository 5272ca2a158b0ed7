"""Exception hierarchy shared by all canonkern modules."""


class CanonKernError(Exception):
    """Base class for every error raised by this package."""


class Unclassifiable(CanonKernError):
    pass


class NoRoot(CanonKernError):
    pass


class BranchAmbiguity(CanonKernError):
    pass


class UnsupportedFamily(CanonKernError, ValueError):
    pass


class Singular(CanonKernError, ValueError):
    """Parameter lies on the singular set of a kernel (theta in {0, pi}, nu = 0, ...)."""


class ZeroDenominator(CanonKernError, ZeroDivisionError):
    pass


class DegenerateStationaryPoint(CanonKernError):
    pass


class ConvergenceFailure(CanonKernError):
    pass


class SeriesDivergence(CanonKernError):
    pass


class Underflow(CanonKernError):
    pass


class MaxSubdivisions(CanonKernError):
    pass


class NonFinite(CanonKernError):
    pass


class ExtrapolationUnstable(CanonKernError):
    pass


class NoStationaryPoint(CanonKernError):
    pass


class DegenerateHessian(CanonKernError):
    pass


class ConcomitantTooLarge(CanonKernError):
    pass


class ConfigError(CanonKernError):
    pass
