"""Harmonic extension of polynomial boundary data (the Dirichlet problem on the ball).

Every polynomial ``p`` of degree ``m`` splits as ``p = h + |z|^2 q`` with ``h``
harmonic of degree ``m`` and ``q`` of degree ``m - 2``.  On the sphere
``p = h + q``, so recursing on ``q`` gives the harmonic polynomial that agrees
with ``p`` on S^{2d-1}.  For homogeneous ``p`` of degree ``m`` in ``n = 2d``
real variables the split is explicit:

    h = sum_j c_j |z|^{2j} Lap^j p,   c_0 = 1,
    c_j = -c_{j-1} / (2j (n + 2m - 2j - 2)),

which is the closed-form solution of ``Lap(|z|^2 q) = Lap(p)``.  All
arithmetic is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError, InvariantViolation
from .exact import GaussianRational
from .multiindex import MultiIndex
from .symbols import PolynomialSymbol

__all__ = [
    "DirichletSolution",
    "harmonic_projection",
    "harmonic_extension",
    "reduce_mod_sphere",
    "splitting_sigma",
    "pi_of",
]


def _split_homogeneous(p: PolynomialSymbol, m: int) -> tuple[PolynomialSymbol, PolynomialSymbol]:
    """``(h, q)`` with ``p = h + |z|^2 q``, ``h`` harmonic; ``p`` homogeneous of degree ``m``."""
    d = p.d
    n = 2 * d
    r2 = PolynomialSymbol.norm_sq(d)
    h = p
    q = PolynomialSymbol.zero(d)
    coeff = Fraction(1)
    lap = p
    r2_pow = PolynomialSymbol.constant(d, 1)  # |z|^{2(j-1)}
    j = 0
    while True:
        j += 1
        lap = lap.laplacian()
        if lap.is_zero:
            break
        coeff = -coeff / (2 * j * (n + 2 * m - 2 * j - 2))
        term = r2_pow * lap.scale(coeff)
        q = q - term
        r2_pow = r2_pow * r2
        h = h + r2 * term
    return h, q


def harmonic_projection(p: PolynomialSymbol) -> PolynomialSymbol:
    """The harmonic polynomial equal to ``p`` on the unit sphere (complex ``p`` allowed)."""
    p = p.to_exact()
    result = PolynomialSymbol.zero(p.d)
    pending = p.homogeneous_components()
    while pending:
        m = max(pending)
        comp = pending.pop(m)
        if comp.is_zero:
            continue
        h, q = _split_homogeneous(comp, m)
        result = result + h
        if not q.is_zero:
            if m - 2 in pending:
                pending[m - 2] = pending[m - 2] + q
            else:
                pending[m - 2] = q
    return result


def reduce_mod_sphere(p: PolynomialSymbol) -> tuple[PolynomialSymbol, PolynomialSymbol]:
    """Divide by ``|z|^2 - 1``: returns ``(quotient, remainder)`` with no ``z_1 zbar_1`` in the remainder."""
    p = p.to_exact()
    d = p.d
    e1 = MultiIndex.unit(0, d)
    rest = PolynomialSymbol.constant(d, 1) - sum(
        (PolynomialSymbol.monomial(MultiIndex.unit(i, d), MultiIndex.unit(i, d)) for i in range(1, d)),
        PolynomialSymbol.zero(d),
    )
    quotient: list = []
    remainder: list = []
    work = dict(p.terms)
    while work:
        (a, b), c = work.popitem()
        if a[0] and b[0]:
            ra, rb = a - e1, b - e1
            quotient.append(((ra, rb), c))
            for (ta, tb), tc in rest.terms.items():
                key = (ra + ta, rb + tb)
                val = work.get(key, GaussianRational(0)) + c * tc
                if val:
                    work[key] = val
                else:
                    work.pop(key, None)
        else:
            remainder.append(((a, b), c))
    return PolynomialSymbol(d, quotient, exact=True), PolynomialSymbol(d, remainder, exact=True)


@dataclass(frozen=True)
class DirichletSolution:
    boundary: PolynomialSymbol
    extension: PolynomialSymbol
    residual_degree: int  # degree of boundary - extension (a multiple of |z|^2 - 1); -1 if equal

    @property
    def laplacian_zero(self) -> bool:
        return self.extension.laplacian().is_zero

    def boundary_residual(self, sampler) -> float:
        """Max ``|extension - boundary|`` over the sampler's points."""
        diff = self.extension.evaluate(sampler.points) - self.boundary.evaluate(sampler.points)
        return float(abs(diff).max())


def harmonic_extension(f: PolynomialSymbol) -> DirichletSolution:
    """Solve the Dirichlet problem with real polynomial boundary data ``f``."""
    if not isinstance(f, PolynomialSymbol):
        raise InputError("boundary data must be a polynomial symbol")
    if not f.is_hermitian():
        raise InputError("boundary data must be real-valued (Hermitian-symmetric coefficients)")
    h = harmonic_projection(f)
    if not h.laplacian().is_zero:
        raise InvariantViolation("harmonic extension is not harmonic")
    diff = f.to_exact() - h
    return DirichletSolution(boundary=f, extension=h, residual_degree=diff.degree)


def splitting_sigma(f: PolynomialSymbol, weight, D: int):
    """``sigma(f) = T_{f~}``: the Toeplitz matrix of the harmonic extension, truncated at degree ``D``."""
    from .toeplitz import build

    return build(weight, harmonic_extension(f).extension, D)


def pi_of(T) -> PolynomialSymbol:
    """Symbol map: the boundary function of ``T = T_{sigma(f)} + K`` is ``f``."""
    return T.f
