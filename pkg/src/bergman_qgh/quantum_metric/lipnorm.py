"""Lip-norms on the compacts and on the Toeplitz algebra.

``L~(K) = sup_{i,j} (i + j)**s |K_ij|`` with ``s = alpha + 2`` on real-symmetric
finitely supported ``K`` (indices in the graded-lex enumeration), and
``L(T_{sigma(f)} + K) = L~(K) + Lip(f|_S)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from numbers import Real

import numpy as np

from ..bergman import BergmanWeight
from ..errors import InputError
from ..harmonic import splitting_sigma
from ..intervals import Interval
from ..multiindex import count_up_to_degree
from ..sphere import SphereSampler
from ..symbols import PolynomialSymbol, lipschitz_constant
from ..toeplitz import spectral_norm
from .zeta import gamma

__all__ = [
    "LipCompactOperator",
    "LipElement",
    "lip_compact_norm",
    "lip_norm",
    "lemma_bound_check",
    "LemmaCheckResult",
]


class LipCompactOperator:
    """Finitely supported real-symmetric matrix with 1-based indices."""

    def __init__(self, entries: dict, s):
        clean = {}
        for (i, j), v in dict(entries).items():
            if isinstance(i, bool) or isinstance(j, bool) or not (isinstance(i, int) and isinstance(j, int)):
                raise InputError(f"indices must be integers, got {(i, j)!r}")
            if i < 1 or j < 1:
                raise InputError(f"indices are 1-based, got {(i, j)}")
            if isinstance(v, complex) or not isinstance(v, Real):
                if isinstance(v, complex) and v.imag == 0:
                    v = v.real
                else:
                    raise InputError(f"entry ({i},{j}) must be real, got {v!r}")
            if v != 0:
                clean[(i, j)] = v
        for (i, j), v in clean.items():
            if clean.get((j, i), 0) != v:
                raise InputError(f"operator is not symmetric at ({i},{j})")
        self.entries = clean
        self.s = s

    @classmethod
    def zero(cls, s) -> "LipCompactOperator":
        return cls({}, s)

    @classmethod
    def from_dense(cls, A, s, tol: float = 0.0) -> "LipCompactOperator":
        A = np.asarray(A)
        if np.iscomplexobj(A):
            if np.any(np.abs(A.imag) > tol):
                raise InputError("compact part must have real entries")
            A = A.real
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise InputError("compact part must be a square matrix")
        idx = np.argwhere(A != 0)
        return cls({(int(i) + 1, int(j) + 1): float(A[i, j]) for i, j in idx}, s)

    @property
    def size(self) -> int:
        """Smallest ``n`` with support inside the top-left ``n x n`` block."""
        return max((max(i, j) for i, j in self.entries), default=0)

    def to_dense(self, M: int | None = None) -> np.ndarray:
        M = self.size if M is None else M
        if self.size > M:
            raise InputError(f"compact part of size {self.size} does not fit a {M}x{M} truncation")
        out = np.zeros((M, M))
        for (i, j), v in self.entries.items():
            out[i - 1, j - 1] = float(v)
        return out

    def scale(self, c) -> "LipCompactOperator":
        return LipCompactOperator({k: v * c for k, v in self.entries.items()}, self.s)

    def __add__(self, other: "LipCompactOperator") -> "LipCompactOperator":
        if other.s != self.s:
            raise InputError("weight exponents differ")
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out.get(k, 0) + v
        return LipCompactOperator(out, self.s)

    def __repr__(self):
        return f"LipCompactOperator(s={self.s}, nnz={len(self.entries)})"


def lip_compact_norm(K: LipCompactOperator):
    """``max (i + j)**s |K_ij|`` (exact when entries are rational and ``s`` an integer)."""
    best = 0
    for (i, j), v in K.entries.items():
        val = (i + j) ** K.s * abs(v)
        if val > best:
            best = val
    return best


@dataclass(frozen=True)
class LipElement:
    """``T = T_{sigma(f)} + K`` in the truncation of degree ``cutoff``."""

    f: PolynomialSymbol
    K: LipCompactOperator
    weight: BergmanWeight
    cutoff: int

    def __post_init__(self):
        if self.f.d != self.weight.d:
            raise InputError("boundary symbol and weight have different dimensions")
        if not self.f.is_hermitian():
            raise InputError("boundary symbol must be real-valued")
        if self.K.size > self.M:
            raise InputError(f"compact part does not fit the degree-{self.cutoff} truncation")

    @classmethod
    def sigma(cls, f: PolynomialSymbol, weight: BergmanWeight, cutoff: int) -> "LipElement":
        return cls(f, LipCompactOperator.zero(weight.lip_exponent), weight, cutoff)

    @classmethod
    def compact(cls, K: LipCompactOperator, weight: BergmanWeight, cutoff: int) -> "LipElement":
        return cls(PolynomialSymbol.zero(weight.d), K, weight, cutoff)

    @property
    def M(self) -> int:
        return count_up_to_degree(self.cutoff, self.weight.d)

    @cached_property
    def matrix(self) -> np.ndarray:
        """Materialized truncation ``sigma(f) + K`` (Hermitian)."""
        return splitting_sigma(self.f, self.weight, self.cutoff).entries + self.K.to_dense(self.M)


def lip_norm(T: LipElement, sampler: SphereSampler | None = None) -> Interval:
    """``L~(K) + Lip(f)`` with the Lipschitz constant's lower and upper estimates."""
    sampler = sampler or SphereSampler(T.weight.d, 2000, seed=0)
    lk = float(lip_compact_norm(T.K))
    lf = lipschitz_constant(T.f, sampler)
    return Interval(lk + lf.lo, lk + lf.hi)


@dataclass(frozen=True)
class LemmaCheckResult:
    alpha: float
    trials: int
    support_size: int
    max_ratio: float  # max ||K|| over trials, each with L~(K) = 1
    max_row_sum: float
    gamma: Interval
    weight_sum_bound: float  # sum_i (i+1)**-s over the support
    violations: int
    passed: bool

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "trials": self.trials,
            "support": self.support_size,
            "max_ratio": self.max_ratio,
            "max_row_sum": self.max_row_sum,
            "gamma_lo": self.gamma.lo,
            "gamma_hi": self.gamma.hi,
            "weight_sum_bound": self.weight_sum_bound,
            "violations": self.violations,
            "pass": self.passed,
        }


def lemma_bound_check(alpha, trials: int = 1000, seed: int = 0, support_size: int = 20,
                      rel_tol: float = 1e-12) -> LemmaCheckResult:
    """Random check of ``||K|| <= gamma(alpha) L~(K)`` through the Schur-test chain.

    Each trial draws a random support pattern in the top-left block and entries
    ``kappa_ij (i + j)**-s`` with ``kappa`` uniform in [-1, 1], symmetrizes,
    normalizes to ``L~ = 1`` and checks, term by term,

        ||K|| <= max_j sum_i |K_ij| <= sum_i (i + 1)**-s <= gamma(alpha).

    ``rel_tol`` only absorbs floating-point rounding in the eigen-solve.
    """
    if trials < 1:
        raise InputError("trials must be >= 1")
    if support_size < 1:
        raise InputError("support size must be >= 1")
    a = float(alpha)
    if a < 1:
        raise InputError("alpha must be >= 1")
    s = a + 2
    g = gamma(alpha, tol=min(1e-12, 1e-6 * 2.0 ** -s))
    idx = np.arange(1, support_size + 1)
    weights = (idx[:, None] + idx[None, :]).astype(float) ** -s
    weight_sum = float(np.sum((idx + 1.0) ** -s))
    upper = np.triu(np.ones((support_size, support_size), dtype=bool))

    violations = 0
    max_ratio = 0.0
    max_row = 0.0
    for child in np.random.SeedSequence(seed).spawn(trials):
        rng = np.random.default_rng(child)
        density = rng.uniform(0.05, 1.0)
        mask = upper & (rng.random((support_size, support_size)) < density)
        if not mask.any():
            mask[0, 0] = True
        kappa = np.where(mask, rng.uniform(-1.0, 1.0, (support_size, support_size)), 0.0)
        kappa = np.triu(kappa) + np.triu(kappa, 1).T
        K = kappa * weights
        lt = np.max(np.abs(K) / weights)
        if lt == 0:
            continue
        K /= lt
        norm = spectral_norm(K)
        row = float(np.abs(K).sum(axis=1).max())
        entrywise_ok = bool(np.all(np.abs(K) <= weights * (1 + rel_tol)))
        chain_ok = (norm <= row * (1 + rel_tol) and row <= weight_sum * (1 + rel_tol)
                    and weight_sum <= g.hi and norm <= g.hi)
        if not (entrywise_ok and chain_ok):
            violations += 1
        max_ratio = max(max_ratio, norm)
        max_row = max(max_row, row)
    return LemmaCheckResult(
        alpha=a,
        trials=trials,
        support_size=support_size,
        max_ratio=max_ratio,
        max_row_sum=max_row,
        gamma=g,
        weight_sum_bound=weight_sum,
        violations=violations,
        passed=violations == 0 and max_ratio <= g.hi,
    )
