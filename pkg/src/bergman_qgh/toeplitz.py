"""Truncated Toeplitz matrices ``<T_phi e_k, e_l>`` for polynomial symbols.

Because monomials are orthogonal for every radial weight,

    <T_phi e_k, e_l> = sum_{(a,b)} c_{a,b} [k + a = l + b] beta_k beta_l ||z^{k+a}||^2,

so every entry of the compression ``P_D T_phi P_D`` is exact: no projection
tail enters.  For integer weights each term is ``c * sqrt(rational)`` and the
exact mode keeps entries as :class:`~bergman_qgh.exact.Surd`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .bergman import BergmanWeight, log_monomial_norm_sq, monomial_norm_sq
from .errors import InputError, InvariantViolation
from .exact import Surd
from .intervals import Interval
from .multiindex import MultiIndex, count_up_to_degree, multi_indices_up_to
from .sphere import SphereSampler
from .symbols import PolynomialSymbol, sup_norm_on_sphere

__all__ = [
    "ToeplitzMatrix",
    "DecayPoint",
    "matrix_element",
    "matrix_element_exact",
    "build",
    "spectral_norm",
    "schur_bound",
    "norm_interval",
    "commutator_decay",
    "u_conjugation_difference",
]


def _check_dims(w: BergmanWeight, phi: PolynomialSymbol):
    if phi.d != w.d:
        raise InputError(f"symbol dimension {phi.d} does not match weight dimension {w.d}")


def _as_mi(k, d) -> MultiIndex:
    k = k if isinstance(k, MultiIndex) else MultiIndex(k)
    if len(k) != d:
        raise InputError(f"multi-index {tuple(k)} does not have dimension {d}")
    return k


def matrix_element(w: BergmanWeight, phi: PolynomialSymbol, k, l) -> complex:
    """``<T_phi e_k, e_l>`` in floating point (log-Gamma path)."""
    _check_dims(w, phi)
    k, l = _as_mi(k, w.d), _as_mi(l, w.d)
    total = 0j
    for (a, b), c in phi.terms.items():
        if k + a != l + b:
            continue
        log_mag = log_monomial_norm_sq(w, k + a) - 0.5 * (log_monomial_norm_sq(w, k) + log_monomial_norm_sq(w, l))
        total += complex(c) * math.exp(log_mag)
    return total


def matrix_element_exact(w: BergmanWeight, phi: PolynomialSymbol, k, l) -> Surd:
    """``<T_phi e_k, e_l>`` as an exact sum of rational multiples of square roots."""
    _check_dims(w, phi)
    if not w.is_integer:
        raise InputError("exact matrix elements need an integer weight alpha")
    if not phi.exact:
        raise InputError("exact matrix elements need a symbol with rational coefficients")
    k, l = _as_mi(k, w.d), _as_mi(l, w.d)
    total = Surd()
    for (a, b), c in phi.terms.items():
        if k + a != l + b:
            continue
        top = monomial_norm_sq(w, k + a)
        radicand = top * top / (monomial_norm_sq(w, k) * monomial_norm_sq(w, l))
        total = total + Surd.sqrt_of(radicand, c)
    return total


@dataclass(frozen=True)
class ToeplitzMatrix:
    """Compression of ``T_phi`` to polynomials of degree ``<= cutoff``.

    ``entries[r, c] = <T e_{c+1}, e_{r+1}>`` in the global enumeration.
    """

    weight: BergmanWeight
    symbol: PolynomialSymbol
    cutoff: int
    entries: np.ndarray
    exact_entries: dict | None = field(default=None, compare=False, repr=False)

    @property
    def M(self) -> int:
        return self.entries.shape[0]

    @property
    def basis(self) -> tuple[MultiIndex, ...]:
        return multi_indices_up_to(self.cutoff, self.weight.d)

    def is_hermitian(self, tol: float = 1e-12) -> bool:
        return bool(np.allclose(self.entries, self.entries.conj().T, atol=tol, rtol=0))

    def to_dict(self) -> dict:
        out = {
            "M": self.M,
            "re": self.entries.real.tolist(),
            "im": self.entries.imag.tolist(),
        }
        if self.exact_entries is not None:
            out["exact"] = [
                {"row": r + 1, "col": c + 1, "value": str(v)}
                for (r, c), v in sorted(self.exact_entries.items())
            ]
        return out


def build(w: BergmanWeight, phi: PolynomialSymbol, D: int, exact: bool = False) -> ToeplitzMatrix:
    """Assemble the ``M x M`` truncation, ``M = count_up_to_degree(D, d)``."""
    _check_dims(w, phi)
    if isinstance(D, bool) or not isinstance(D, int) or D < 0:
        raise InputError(f"degree cutoff must be a non-negative integer, got {D!r}")
    if exact and not w.is_integer:
        raise InputError("exact mode needs an integer weight alpha")
    basis = multi_indices_up_to(D, w.d)
    pos = {k: i for i, k in enumerate(basis)}
    M = len(basis)
    entries = np.zeros((M, M), dtype=complex)
    exact_entries: dict | None = {} if exact else None
    if exact:
        phi = phi.to_exact()
    logn = [log_monomial_norm_sq(w, k) for k in basis]
    for col, k in enumerate(basis):
        for (a, b), c in phi.terms.items():
            l = (k + a).try_sub(b)
            if l is None or l.degree > D:
                continue
            row = pos[l]
            top = k + a
            if exact:
                nt = monomial_norm_sq(w, top)
                val = Surd.sqrt_of(nt * nt / (monomial_norm_sq(w, k) * monomial_norm_sq(w, l)), c)
                prev = exact_entries.get((row, col))
                val = val if prev is None else prev + val
                if val:
                    exact_entries[(row, col)] = val
                else:
                    exact_entries.pop((row, col), None)
            else:
                entries[row, col] += complex(c) * math.exp(log_monomial_norm_sq(w, top) - 0.5 * (logn[col] + logn[row]))
    if exact:
        for (r, c), v in exact_entries.items():
            entries[r, c] = complex(v)
    entries.setflags(write=False)
    return ToeplitzMatrix(weight=w, symbol=phi, cutoff=D, entries=entries, exact_entries=exact_entries)


def spectral_norm(A: np.ndarray) -> float:
    A = np.asarray(A)
    if A.size == 0:
        return 0.0
    if np.allclose(A, A.conj().T, atol=1e-14, rtol=0):
        return float(np.max(np.abs(np.linalg.eigvalsh((A + A.conj().T) / 2))))
    return float(np.linalg.norm(A, 2))


def schur_bound(A: np.ndarray) -> float:
    """``sqrt(max row sum * max column sum)`` of ``|A|``; the row sum for symmetric ``A``."""
    A = np.abs(np.asarray(A))
    if A.size == 0:
        return 0.0
    return float(math.sqrt(A.sum(axis=1).max() * A.sum(axis=0).max()))


def norm_interval(T) -> Interval:
    """Enclosure of the operator norm of the full (untruncated) operator.

    For a :class:`ToeplitzMatrix` the truncated spectral norm is a lower bound
    and ``sup |phi|`` over the closed ball an upper bound.  A plain finite
    matrix (or anything with ``to_dense``) is its own operator, so its
    spectral norm is exact; the Schur row-sum bound is checked against it.
    """
    if isinstance(T, ToeplitzMatrix):
        lo = spectral_norm(T.entries)
        hi = T.symbol.coefficient_bound()
        if T.weight.d == 1 and T.symbol.laplacian().is_zero and not T.symbol.is_zero:
            # harmonic symbols peak on the circle, where the sample mesh is exact
            hi = min(hi, sup_norm_on_sphere(T.symbol, SphereSampler(1, 4096, seed=0)).hi)
        if lo > hi * (1 + 1e-12):
            raise InvariantViolation(f"truncated norm {lo} exceeds symbol sup bound {hi}")
        return Interval(lo, max(lo, hi))
    A = T.to_dense() if hasattr(T, "to_dense") else np.asarray(T)
    lo = spectral_norm(A)
    schur = schur_bound(A)
    if lo > schur * (1 + 1e-12) + 1e-300:
        raise InvariantViolation(f"spectral norm {lo} exceeds Schur bound {schur}")
    return Interval(lo, lo)


@dataclass(frozen=True)
class DecayPoint:
    degree: int
    max_abs: float
    exact: str | None = None

    def to_dict(self) -> dict:
        return {"degree": self.degree, "max_abs": self.max_abs, "exact": self.exact}


def _sparse_matmul(A: dict, B: dict) -> dict:
    by_row: dict[int, list] = {}
    for (j, c), v in B.items():
        by_row.setdefault(j, []).append((c, v))
    out: dict = {}
    for (r, j), v in A.items():
        for c, u in by_row.get(j, ()):
            key = (r, c)
            out[key] = out[key] + v * u if key in out else v * u
    return out


def _degree_blocks(d: int, top: int):
    return [(m, count_up_to_degree(m - 1, d), count_up_to_degree(m, d)) for m in range(top + 1)]


def _per_degree_max_dense(C: np.ndarray, blocks, ncols: int) -> list[DecayPoint]:
    A = np.abs(C[:, :ncols])
    return [DecayPoint(m, float(A[lo:hi].max()) if hi > lo else 0.0) for m, lo, hi in blocks]


def _per_degree_max_exact(C: dict, blocks, ncols: int) -> list[DecayPoint]:
    best: dict[int, tuple[float, Surd]] = {}
    row_degree = {}
    for m, lo, hi in blocks:
        for r in range(lo, hi):
            row_degree[r] = m
    for (r, c), v in C.items():
        if r not in row_degree or c >= ncols:
            continue
        m = row_degree[r]
        mag = abs(complex(v))
        if mag > best.get(m, (0.0, None))[0]:
            best[m] = (mag, v)
    out = []
    for m, _, _ in blocks:
        mag, v = best.get(m, (0.0, Surd()))
        out.append(DecayPoint(m, mag, str(_abs_if_rational(v))))
    return out


def _abs_if_rational(s: Surd):
    q = s.rational_value()
    if q is not None and q.is_real:
        return abs(q.re)
    return s


def commutator_decay(w: BergmanWeight, phi: PolynomialSymbol, psi: PolynomialSymbol, D: int,
                     exact: bool = False) -> list[DecayPoint]:
    """Per-degree max ``|[T_phi, T_psi]|`` entry, away from the truncation edge.

    Rows and columns are limited to degree ``<= D - deg(phi) - deg(psi)`` so
    that the product of compressions equals the compression of the product.
    """
    _check_dims(w, phi)
    _check_dims(w, psi)
    inner = D - max(phi.degree, 0) - max(psi.degree, 0)
    if inner < 0:
        raise InputError(f"cutoff D={D} too small for symbols of degree {phi.degree} and {psi.degree}")
    A = build(w, phi, D, exact=exact)
    B = build(w, psi, D, exact=exact)
    keep = count_up_to_degree(inner, w.d)
    blocks = _degree_blocks(w.d, inner)
    if exact:
        C = dict(_sparse_matmul(A.exact_entries, B.exact_entries))
        for key, v in _sparse_matmul(B.exact_entries, A.exact_entries).items():
            C[key] = C[key] - v if key in C else -v
        return _per_degree_max_exact(C, blocks, keep)
    C = A.entries @ B.entries - B.entries @ A.entries
    return _per_degree_max_dense(C, blocks, keep)


def u_conjugation_difference(phi: PolynomialSymbol, n, d_weight=None, D: int = 50) -> list[DecayPoint]:
    """Per-degree max ``|U* T_{phi,d} U - T_{phi,n}|`` entry.

    ``U`` identifies ``e_{k,n}`` with ``e_{k,d}``, so the difference is the
    entrywise difference of the two Toeplitz matrices.  ``d_weight`` defaults
    to the unweighted Bergman space ``alpha = d``.
    """
    d = phi.d
    base = d if d_weight is None else d_weight
    if float(n) <= float(base):
        raise InputError(f"need n > d_weight, got n={n}, d_weight={base}")
    W0 = BergmanWeight(d, base)
    W1 = BergmanWeight(d, n)
    diff = build(W0, phi, D).entries - build(W1, phi, D).entries
    return _per_degree_max_dense(diff, _degree_blocks(d, D), diff.shape[1])
