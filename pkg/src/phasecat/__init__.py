"""Phase-space tools for Gaussian cat states.

Closed-form Wigner functions of superposed and mixed Gaussian states, their
evolution under linear open-system dynamics, Kerr fractional revivals, a
semiclassical swarm for the kicked harmonic oscillator and brute-force
oracles that check all of it.
"""

__version__ = "0.1.0"

from .cat import (FringeClass, InterferenceTerm, NormalForm, PureCat, cat_wigner, classify_fringes,
                  envelope, interference_matrices, interference_term, normal_form, oscillation_phase)
from .errors import (ConfigError, DeconvolutionIllPosed, DegenerateOverlap, GridError,
                     ImaginaryResidueExceeded, NotSymplecticError, PhaseCatError, SingularCayley,
                     TruncationInsufficient, VanishingNorm)
from .kerr import (GaussianMixed, KerrCoefficients, LinearOp, ThermalState, binary_kerr_state,
                   binary_kerr_wigner, chi_thermal, conditional_cat, cross_term_symbol, fringe_fwhm,
                   fringe_width, fringe_widths, kerr_cat, kerr_coefficients, thermal_wigner)
from .lindblad import (LindbladChannel, channel_matrices, check_signature_preservation,
                       damped_oscillator, evolve_covariance, evolve_state, evolve_term)
from .states import (ComplexGaussianTerm, GaussianPure, GaussianSumState, WignerGrid, chi_pure,
                     cross_wigner, eval_state, gaussian_integral, purity, sample_grid, vacuum,
                     wigner_pure)
from .symplectic import (cayley, diagonalize_sst, euler_decompose, is_symplectic, random_symplectic,
                         rotation, signature, squeeze, sympmat, wedge, williamson)
