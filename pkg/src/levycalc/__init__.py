"""Levy triples, random-integral transforms and their numerical verification."""

__version__ = "0.1.0"

from .classifier import ClassReport, classify_completely_s, classify_order, inclusion_chain_check
from .errors import (DifferentiationUnstable, GridTooCoarse, InvalidMeasure, LevyCalcError,
                     LogMomentDiverges, MalformedDocument, NonFinite, QuadratureFailure,
                     UnsupportedSeed)
from .exponents import LevyExponent, a_operator, d_operator, exponent, exponent_transform, kernel_cf
from .measures import (Discrete, ITransformed, JTransformed, LevyTriple, SpectralFunction,
                       StableMixture, SumMeasure, conv_power, convolve, cofactor_exponent_check,
                       dilate, spectral_function, validate_measure)
from .simulator import empirical_cf, sample_integral_exact, sample_integral_rs
from .special import (g_char_fn, g_moment, g_partial_moment, incomplete_gamma, sample_g,
                      tau_cdf)
from .transforms import (general_transform, i_transform, j_alpha, partial_integral_triple,
                         stable_mixture_j)
