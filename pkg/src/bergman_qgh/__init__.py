"""Toeplitz algebras on weighted Bergman spaces of the ball and their
quantum-metric approximation of C(S^{2d-1})."""

from .bergman import BergmanWeight, basis_coeff, kernel, kernel_series_check, monomial_norm_sq
from .errors import InputError, InvariantViolation, SymbolParseError
from .harmonic import harmonic_extension, pi_of, splitting_sigma
from .intervals import Interval
from .multiindex import MultiIndex, count_up_to_degree, index_of, multi_of
from .symbols import PolynomialSymbol, lipschitz_constant, sup_norm_on_sphere
from .toeplitz import ToeplitzMatrix, build, commutator_decay, matrix_element, norm_interval, u_conjugation_difference

__version__ = "0.1.0"

__all__ = [
    "BergmanWeight",
    "basis_coeff",
    "kernel",
    "kernel_series_check",
    "monomial_norm_sq",
    "InputError",
    "InvariantViolation",
    "SymbolParseError",
    "harmonic_extension",
    "pi_of",
    "splitting_sigma",
    "Interval",
    "MultiIndex",
    "count_up_to_degree",
    "index_of",
    "multi_of",
    "PolynomialSymbol",
    "lipschitz_constant",
    "sup_norm_on_sphere",
    "ToeplitzMatrix",
    "build",
    "commutator_decay",
    "matrix_element",
    "norm_interval",
    "u_conjugation_difference",
]
