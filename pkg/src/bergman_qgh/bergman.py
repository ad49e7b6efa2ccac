"""Weighted Bergman spaces on the unit ball of C^d.

For a weight ``alpha >= d`` the probability measure is

    dV_alpha = Gamma(alpha+1) / (Gamma(alpha-d+1) pi^d) * (1 - |z|^2)^(alpha-d) dV,

and monomials are orthogonal with

    ||z^m||^2 = m! Gamma(alpha+1) / Gamma(|m| + alpha + 1).

Integer ``alpha`` gives exact rationals ``m! alpha! / (|m| + alpha)!``; real
``alpha`` goes through log-Gamma.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import InputError
from .multiindex import MultiIndex, multi_indices_up_to

__all__ = [
    "BergmanWeight",
    "monomial_norm_sq",
    "monomial_norm_sq_float",
    "log_monomial_norm_sq",
    "basis_coeff",
    "kernel",
    "kernel_series_check",
    "KernelCheck",
]


@dataclass(frozen=True)
class BergmanWeight:
    """Weight parameter of H_alpha; ``alpha = n`` recovers the integer family."""

    d: int
    alpha: float | int | Fraction

    def __post_init__(self):
        if isinstance(self.d, bool) or not isinstance(self.d, int) or self.d < 1:
            raise InputError(f"dimension d must be a positive integer, got {self.d!r}")
        try:
            a = float(self.alpha)
        except (TypeError, ValueError):
            raise InputError(f"alpha must be a real number, got {self.alpha!r}") from None
        if not math.isfinite(a) or a < self.d:
            raise InputError(f"alpha must satisfy alpha >= d = {self.d}, got {self.alpha!r}")
        if a.is_integer() and not isinstance(self.alpha, int):
            object.__setattr__(self, "alpha", int(a))

    @property
    def is_integer(self) -> bool:
        return isinstance(self.alpha, int)

    @property
    def normalization(self) -> float:
        """``c_alpha`` in front of ``(1 - |z|^2)^(alpha - d) dV``."""
        a = float(self.alpha)
        return math.exp(math.lgamma(a + 1) - math.lgamma(a - self.d + 1)) / math.pi ** self.d

    @property
    def lip_exponent(self) -> float:
        """Exponent ``s = alpha + 2`` in the Lip-norm weights ``(i + j)**s``."""
        return self.alpha + 2


def _check(w: BergmanWeight, m) -> MultiIndex:
    m = m if isinstance(m, MultiIndex) else MultiIndex(m)
    if len(m) != w.d:
        raise InputError(f"multi-index {tuple(m)} does not have dimension {w.d}")
    return m


@lru_cache(maxsize=None)
def _lgamma(x: float) -> float:
    return math.lgamma(x)


def log_monomial_norm_sq(w: BergmanWeight, m) -> float:
    """``log ||z^m||^2`` via log-Gamma (any real alpha)."""
    m = _check(w, m)
    a = float(w.alpha)
    return sum(_lgamma(k + 1.0) for k in m) + _lgamma(a + 1) - _lgamma(m.degree + a + 1)


def monomial_norm_sq_float(w: BergmanWeight, m) -> float:
    return math.exp(log_monomial_norm_sq(w, m))


@lru_cache(maxsize=None)
def _exact_norm_sq(m: MultiIndex, alpha: int) -> Fraction:
    return Fraction(m.factorial * math.factorial(alpha), math.factorial(m.degree + alpha))


def monomial_norm_sq(w: BergmanWeight, m) -> Fraction | float:
    """``int |z^m|^2 dV_alpha``; a :class:`Fraction` for integer alpha."""
    m = _check(w, m)
    if w.is_integer:
        return _exact_norm_sq(m, w.alpha)
    return monomial_norm_sq_float(w, m)


def basis_coeff(w: BergmanWeight, k) -> float:
    """Coefficient ``beta_k`` with ``e_k = beta_k z^k`` orthonormal."""
    return math.exp(-0.5 * log_monomial_norm_sq(w, k))


def _inner(z, v) -> complex:
    return complex(np.sum(np.asarray(z, dtype=complex) * np.conj(np.asarray(v, dtype=complex))))


def kernel(w: BergmanWeight, z, v) -> complex:
    """Reproducing kernel ``(1 - <z, v>)^(-(alpha+1))``, principal branch."""
    z = np.asarray(z, dtype=complex)
    v = np.asarray(v, dtype=complex)
    if z.shape != (w.d,) or v.shape != (w.d,):
        raise InputError(f"points must have {w.d} complex coordinates")
    t = 1 - _inner(z, v)
    if abs(t) == 0:
        raise InputError("kernel singularity: <z, v> = 1")
    return cmath.exp(-(float(w.alpha) + 1) * cmath.log(t))


@dataclass(frozen=True)
class KernelCheck:
    partial_sum: complex
    closed_form: complex
    gap: float


def kernel_series_check(w: BergmanWeight, z, v, D: int) -> KernelCheck:
    """Compare ``sum_{|k| <= D} e_k(z) conj(e_k(v))`` with the closed-form kernel."""
    z = np.asarray(z, dtype=complex)
    v = np.asarray(v, dtype=complex)
    if z.shape != (w.d,) or v.shape != (w.d,):
        raise InputError(f"points must have {w.d} complex coordinates")
    if np.linalg.norm(z) >= 1 or np.linalg.norm(v) >= 1:
        raise InputError("points must lie strictly inside the unit ball")
    if D < 0:
        raise InputError("degree cutoff must be >= 0")
    vc = np.conj(v)
    total = 0j
    for k in multi_indices_up_to(D, w.d):
        mono = complex(np.prod(z ** np.array(k)) * np.prod(vc ** np.array(k)))
        total += mono / monomial_norm_sq_float(w, k)
    closed = kernel(w, z, v)
    return KernelCheck(partial_sum=total, closed_form=closed, gap=abs(total - closed))
