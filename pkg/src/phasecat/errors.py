"""Exception types raised across the package."""


class PhaseCatError(Exception):
    """Base class for all library errors."""


class NotSymplecticError(PhaseCatError, ValueError):
    pass


class SingularCayley(PhaseCatError, ValueError):
    """``S + I`` is (numerically) singular; the Cayley transform does not exist.

    Perturb ``S`` by an infinitesimal rotation to move the eigenvalue
    away from -1, or use a composition identity instead of the
    reflection-symbol expansion.
    """


class DegenerateOverlap(PhaseCatError, ValueError):
    pass


class ImaginaryResidueExceeded(PhaseCatError, ArithmeticError):
    """A Wigner sum that should be real has a large imaginary part."""


class VanishingNorm(PhaseCatError, ValueError):
    pass


class TruncationInsufficient(PhaseCatError, RuntimeError):
    pass


class DeconvolutionIllPosed(PhaseCatError, ValueError):
    pass


class GridError(PhaseCatError, ValueError):
    """Grid too narrow or too coarse for the requested evaluation."""


class ConfigError(PhaseCatError, ValueError):
    pass
