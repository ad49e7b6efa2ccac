"""Polynomial symbols in z and z-bar on C^d.

A :class:`PolynomialSymbol` is a finite sum ``sum c_{a,b} z^a zbar^b``.  It is
used for Toeplitz symbols on the closed ball, for boundary data on the sphere
and for harmonic extensions.  Coefficients are exact Gaussian rationals
whenever every input coefficient is rational; a single float coefficient
switches the whole object to complex floating point (``exact=False``).
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Iterable, Mapping

import numpy as np

from .errors import InputError, InvariantViolation
from .exact import GaussianRational, as_fraction, format_fraction
from .intervals import Interval
from .multiindex import MultiIndex, index_of
from .sphere import SphereSampler

__all__ = ["PolynomialSymbol", "sup_norm_on_sphere", "lipschitz_constant"]

_FLOAT_HERMITIAN_TOL = 1e-12


def _is_exact_scalar(c) -> bool:
    return isinstance(c, (int, Fraction, GaussianRational)) and not isinstance(c, bool)


def _coerce(c, exact: bool):
    if exact:
        return GaussianRational.coerce(c)
    return complex(c)


class PolynomialSymbol:
    """Immutable polynomial in ``z_1..z_d`` and their conjugates."""

    __slots__ = ("d", "terms", "exact", "_hash")

    def __init__(self, d: int, terms: Mapping | Iterable = (), exact: bool | None = None):
        if isinstance(d, bool) or not isinstance(d, int) or d < 1:
            raise InputError(f"dimension d must be a positive integer, got {d!r}")
        items = list(terms.items()) if isinstance(terms, Mapping) else list(terms)
        if exact is None:
            exact = all(_is_exact_scalar(c) for _, c in items)
        acc: dict[tuple[MultiIndex, MultiIndex], object] = {}
        for (a, b), c in items:
            a = a if isinstance(a, MultiIndex) else MultiIndex(a)
            b = b if isinstance(b, MultiIndex) else MultiIndex(b)
            if len(a) != d or len(b) != d:
                raise InputError(f"term exponents {tuple(a)}, {tuple(b)} do not have dimension {d}")
            if exact and not _is_exact_scalar(c):
                c = GaussianRational(as_fraction(complex(c).real), as_fraction(complex(c).imag))
            c = _coerce(c, exact)
            key = (a, b)
            acc[key] = acc[key] + c if key in acc else c
        self.d = d
        self.exact = bool(exact)
        self.terms = {k: v for k, v in acc.items() if v != 0}
        self._hash = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, d: int) -> "PolynomialSymbol":
        return cls(d, {})

    @classmethod
    def constant(cls, d: int, c=1) -> "PolynomialSymbol":
        z = MultiIndex.zero(d)
        return cls(d, {(z, z): c})

    @classmethod
    def monomial(cls, a, b, c=1) -> "PolynomialSymbol":
        a, b = MultiIndex(a), MultiIndex(b)
        return cls(len(a), {(a, b): c})

    @classmethod
    def z(cls, i: int, d: int) -> "PolynomialSymbol":
        """The coordinate ``z_i`` (1-based)."""
        return cls.monomial(MultiIndex.unit(i - 1, d), MultiIndex.zero(d))

    @classmethod
    def zbar(cls, i: int, d: int) -> "PolynomialSymbol":
        return cls.monomial(MultiIndex.zero(d), MultiIndex.unit(i - 1, d))

    @classmethod
    def norm_sq(cls, d: int) -> "PolynomialSymbol":
        """``|z|^2 = sum_i z_i zbar_i``."""
        return cls(d, {(MultiIndex.unit(i, d), MultiIndex.unit(i, d)): 1 for i in range(d)})

    # -- structure ----------------------------------------------------------

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (index_of(kv[0][0]), index_of(kv[0][1])))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        """Total degree ``max |a| + |b|``; ``-1`` for the zero polynomial."""
        return max((a.degree + b.degree for a, b in self.terms), default=-1)

    def homogeneous_components(self) -> dict[int, "PolynomialSymbol"]:
        parts: dict[int, dict] = {}
        for (a, b), c in self.terms.items():
            parts.setdefault(a.degree + b.degree, {})[(a, b)] = c
        return {m: PolynomialSymbol(self.d, t, exact=self.exact) for m, t in sorted(parts.items())}

    def is_hermitian(self, tol: float = _FLOAT_HERMITIAN_TOL) -> bool:
        """True when ``c_{a,b} = conj(c_{b,a})``, i.e. the polynomial is real-valued."""
        for (a, b), c in self.terms.items():
            other = self.terms.get((b, a), 0)
            if self.exact:
                if GaussianRational.coerce(other) != c.conjugate():
                    return False
            else:
                scale = max(1.0, abs(c))
                if abs(complex(other) - complex(c).conjugate()) > tol * scale:
                    return False
        return True

    is_real_valued = is_hermitian

    def to_exact(self) -> "PolynomialSymbol":
        """Same polynomial with float coefficients replaced by their exact binary rationals."""
        if self.exact:
            return self
        return PolynomialSymbol(self.d, {k: GaussianRational(as_fraction(v.real), as_fraction(v.imag))
                                         for k, v in self.terms.items()}, exact=True)

    def to_float(self) -> "PolynomialSymbol":
        if not self.exact:
            return self
        return PolynomialSymbol(self.d, {k: complex(v) for k, v in self.terms.items()}, exact=False)

    def coefficient(self, a, b):
        zero = GaussianRational(0) if self.exact else 0j
        return self.terms.get((MultiIndex(a), MultiIndex(b)), zero)

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "PolynomialSymbol"):
        if not isinstance(other, PolynomialSymbol):
            raise TypeError("expected PolynomialSymbol")
        if other.d != self.d:
            raise InputError(f"dimension mismatch: {self.d} vs {other.d}")

    def _lift(self, other):
        if isinstance(other, PolynomialSymbol):
            self._check(other)
            return other
        return PolynomialSymbol.constant(self.d, other)

    def __add__(self, other):
        other = self._lift(other)
        exact = self.exact and other.exact
        return PolynomialSymbol(self.d, list(self.terms.items()) + list(other.terms.items()), exact=exact)

    __radd__ = __add__

    def __neg__(self):
        return PolynomialSymbol(self.d, {k: -v for k, v in self.terms.items()}, exact=self.exact)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, c) -> "PolynomialSymbol":
        exact = self.exact and _is_exact_scalar(c)
        cc = _coerce(c, exact)
        return PolynomialSymbol(self.d, {k: _coerce(v, exact) * cc for k, v in self.terms.items()},
                                exact=exact)

    def __mul__(self, other):
        if not isinstance(other, PolynomialSymbol):
            return self.scale(other)
        self._check(other)
        exact = self.exact and other.exact
        out = []
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                out.append(((a1 + a2, b1 + b2), _coerce(c1, exact) * _coerce(c2, exact)))
        return PolynomialSymbol(self.d, out, exact=exact)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise InputError("only non-negative integer powers")
        out = PolynomialSymbol.constant(self.d, 1)
        for _ in range(n):
            out = out * self
        return out

    def conjugate(self) -> "PolynomialSymbol":
        return PolynomialSymbol(self.d, {(b, a): v.conjugate() for (a, b), v in self.terms.items()},
                                exact=self.exact)

    def real_part(self) -> "PolynomialSymbol":
        return (self + self.conjugate()).scale(Fraction(1, 2) if self.exact else 0.5)

    def laplacian(self) -> "PolynomialSymbol":
        """Euclidean Laplacian on R^{2d}, ``4 sum_i d^2/dz_i dzbar_i``."""
        out = []
        for (a, b), c in self.terms.items():
            for i in range(self.d):
                if a[i] and b[i]:
                    e = MultiIndex.unit(i, self.d)
                    out.append(((a - e, b - e), c * (4 * a[i] * b[i])))
        return PolynomialSymbol(self.d, out, exact=self.exact)

    def lipschitz_bound(self) -> float:
        """Certified gradient bound on the closed ball: ``sum |c| (|a| + |b|)``."""
        return float(sum(abs(complex(c)) * (a.degree + b.degree) for (a, b), c in self.terms.items()))

    def coefficient_bound(self) -> float:
        """Certified sup bound on the closed ball: ``sum |c|``."""
        return float(sum(abs(complex(c)) for c in self.terms.values()))

    # -- evaluation ---------------------------------------------------------

    def evaluate(self, z):
        """Value at one point (shape ``(d,)``) or at many (shape ``(n, d)``)."""
        arr = np.asarray(z, dtype=complex)
        single = arr.ndim == 1
        pts = np.atleast_2d(arr)
        if pts.shape[1] != self.d:
            raise InputError(f"points must have {self.d} complex coordinates")
        out = np.zeros(pts.shape[0], dtype=complex)
        zc = pts.conj()
        for (a, b), c in self.terms.items():
            term = np.full(pts.shape[0], complex(c))
            for i in range(self.d):
                if a[i]:
                    term = term * pts[:, i] ** a[i]
                if b[i]:
                    term = term * zc[:, i] ** b[i]
            out += term
        return complex(out[0]) if single else out

    def evaluate_exact(self, z) -> GaussianRational:
        """Exact value at a point with Gaussian-rational coordinates."""
        if not self.exact:
            raise InputError("exact evaluation needs an exact symbol")
        z = [GaussianRational.coerce(x) for x in z]
        if len(z) != self.d:
            raise InputError(f"point must have {self.d} coordinates")
        zc = [x.conjugate() for x in z]
        total = GaussianRational(0)
        for (a, b), c in self.terms.items():
            t = c
            for i in range(self.d):
                for _ in range(a[i]):
                    t = t * z[i]
                for _ in range(b[i]):
                    t = t * zc[i]
            total = total + t
        return total

    __call__ = evaluate

    # -- comparison / serialization ----------------------------------------

    def __eq__(self, other):
        if not isinstance(other, PolynomialSymbol):
            return NotImplemented
        if self.d != other.d or self.terms.keys() != other.terms.keys():
            return False
        return all(complex(self.terms[k]) == complex(other.terms[k]) if not (self.exact and other.exact)
                   else self.terms[k] == other.terms[k] for k in self.terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.d, frozenset((k, complex(v)) for k, v in self.terms.items())))
        return self._hash

    def to_dict(self) -> dict:
        terms = []
        for (a, b), c in self.sorted_terms():
            if self.exact:
                re, im = format_fraction(c.re), format_fraction(c.im)
            else:
                re, im = float(c.real), float(c.imag)
            terms.append({"a": list(a), "b": list(b), "re": re, "im": im})
        return {"d": self.d, "terms": terms}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, data: dict) -> "PolynomialSymbol":
        try:
            d = data["d"]
            raw = data["terms"]
        except (KeyError, TypeError) as exc:
            raise InputError(f"symbol JSON missing field: {exc}") from None
        items = []
        exact = True
        for t in raw:
            re, im = t.get("re", 0), t.get("im", 0)
            vals = []
            for v in (re, im):
                if isinstance(v, str):
                    vals.append(as_fraction(v))
                elif isinstance(v, int):
                    vals.append(Fraction(v))
                else:
                    exact = False
                    vals.append(float(v))
            items.append(((MultiIndex(t["a"]), MultiIndex(t["b"])), vals))
        if exact:
            pairs = [(k, GaussianRational(re, im)) for k, (re, im) in items]
        else:
            pairs = [(k, complex(float(re), float(im))) for k, (re, im) in items]
        return cls(d, pairs, exact=exact)

    @classmethod
    def from_json(cls, text: str) -> "PolynomialSymbol":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid symbol JSON: {exc}") from None
        return cls.from_dict(data)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (a, b), c in self.sorted_terms():
            factors = []
            for i, e in enumerate(a, start=1):
                if e:
                    factors.append(f"z{i}" + (f"^{e}" if e > 1 else ""))
            for i, e in enumerate(b, start=1):
                if e:
                    factors.append(f"zb{i}" + (f"^{e}" if e > 1 else ""))
            coeff = str(c) if self.exact else repr(complex(c))
            if self.exact and c.im == 0:
                coeff = f"({coeff})" if "/" in coeff or coeff.startswith("-") else coeff
            parts.append("*".join([coeff] + factors))
        return " + ".join(parts)

    def __repr__(self):
        return f"PolynomialSymbol(d={self.d}, {self})"


def _sphere_representative(p: PolynomialSymbol) -> PolynomialSymbol:
    """The harmonic polynomial agreeing with ``p`` on the sphere."""
    from .harmonic import harmonic_projection

    return harmonic_projection(p)


def _certified_lipschitz(p: PolynomialSymbol, rep: PolynomialSymbol) -> float:
    # both polynomials agree on the sphere, so either coefficient bound is valid
    return min(p.lipschitz_bound(), rep.lipschitz_bound())


def sup_norm_on_sphere(p: PolynomialSymbol, sampler: SphereSampler) -> Interval:
    """Enclosure ``[lo, hi]`` of ``max |p|`` over S^{2d-1}.

    ``lo`` is the sample maximum, ``hi = lo + Lip * mesh``; the upper end is
    certified when the sampler's mesh is (for d = 1 it is exact).
    """
    if sampler.d != p.d:
        raise InputError(f"sampler dimension {sampler.d} does not match symbol dimension {p.d}")
    if len(sampler) == 0:
        raise InputError("empty sample set")
    if p.is_zero:
        return Interval(0.0, 0.0)
    rep = _sphere_representative(p)
    if rep.is_zero:
        return Interval(0.0, 0.0)
    lo = float(np.max(np.abs(rep.evaluate(sampler.points))))
    hi = lo + _certified_lipschitz(p, rep) * sampler.mesh
    return Interval(lo, hi)


def lipschitz_constant(p: PolynomialSymbol, sampler: SphereSampler, max_points: int = 2500) -> Interval:
    """Enclosure of the chordal Lipschitz seminorm of ``p`` restricted to S^{2d-1}.

    ``lo`` maximizes ``|p(x) - p(y)| / |x - y|`` over all pairs among the first
    ``max_points`` samples; ``hi`` is the coefficient bound of ``p`` or of its
    harmonic representative, whichever is smaller.
    """
    if sampler.d != p.d:
        raise InputError(f"sampler dimension {sampler.d} does not match symbol dimension {p.d}")
    if not p.is_hermitian():
        raise InputError("Lipschitz constant requires a real-valued symbol")
    rep = _sphere_representative(p)
    if rep.degree <= 0:
        return Interval(0.0, 0.0)
    pts = sampler.points[:max_points]
    x = sampler.real_points[:max_points]
    vals = rep.evaluate(pts).real
    lo = 0.0
    n = len(pts)
    chunk = max(1, 2_000_000 // max(n, 1))
    for start in range(0, n, chunk):
        stop = min(n, start + chunk)
        dv = np.abs(vals[start:stop, None] - vals[None, :])
        dx = np.linalg.norm(x[start:stop, None, :] - x[None, :, :], axis=2)
        mask = dx > 1e-9
        if np.any(mask):
            lo = max(lo, float(np.max(dv[mask] / dx[mask])))
    hi = _certified_lipschitz(p, rep)
    if lo > hi:
        if lo - hi > 1e-9 * max(1.0, hi):
            raise InvariantViolation(f"sampled Lipschitz ratio {lo} exceeds certified bound {hi}")
        hi = lo
    return Interval(lo, hi)
