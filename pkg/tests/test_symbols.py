from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bergman_qgh.errors import InputError
from bergman_qgh.exact import GaussianRational
from bergman_qgh.sphere import SphereSampler
from bergman_qgh.symbols import PolynomialSymbol as P
from bergman_qgh.symbols import lipschitz_constant, sup_norm_on_sphere

import oracles


def z(i=1, d=1):
    return P.z(i, d)


def zb(i=1, d=1):
    return P.zbar(i, d)


def test_multiply_examples():
    p = z(1, 2) * zb(1, 2)
    assert p.terms == {((1, 0), (1, 0)): 1}
    q = z(1, 2) + zb(1, 2)
    assert (q + q.scale(-1)).is_zero
    assert (q * q) == z(1, 2) ** 2 + (z(1, 2) * zb(1, 2)).scale(2) + zb(1, 2) ** 2


def test_conjugate_examples():
    assert z().conjugate() == zb()
    assert P.constant(2, Fraction(3, 7)).conjugate() == P.constant(2, Fraction(3, 7))
    i = GaussianRational(0, 1)
    p = (z(1, 2) * zb(2, 2)).scale(i)
    assert p.conjugate() == (z(2, 2) * zb(1, 2)).scale(-i)


def test_evaluate_examples():
    assert abs((z() * zb()).evaluate([0.6 + 0.8j]) - 1) < 1e-15
    assert P.constant(3).evaluate([0.1j, 0.7, 2]) == 1
    assert (z() + zb()).evaluate([0.5]) == 1.0


def test_laplacian_examples():
    assert (z() ** 3).laplacian().is_zero
    assert (z() * zb()).laplacian() == P.constant(1, 4)
    for d in (1, 2, 3):
        assert P.norm_sq(d).laplacian() == P.constant(d, 4 * d)


def test_sup_norm_examples():
    s1 = SphereSampler(1, 200)
    assert sup_norm_on_sphere(P.constant(1), s1).lo == 1 == sup_norm_on_sphere(P.constant(1), s1).hi
    iv = sup_norm_on_sphere(z() * zb(), s1)
    assert abs(iv.lo - 1) < 1e-12 and abs(iv.hi - 1) < 1e-12
    iv = sup_norm_on_sphere(z() + zb(), SphereSampler(1, 10_000))
    assert abs(iv.lo - 2) < 1e-6 and iv.hi - iv.lo <= 1e-2 and iv.lo <= 2 <= iv.hi


def test_lipschitz_examples():
    s = SphereSampler(1, 500)
    assert lipschitz_constant(P.constant(1, 5), s).hi == 0
    dense = lipschitz_constant(z() + zb(), SphereSampler(1, 2000))
    oracle = oracles.circle_lipschitz(lambda w: 2 * w.real)
    assert abs(dense.lo - oracle) < 1e-3 and dense.lo <= dense.hi
    s3 = lipschitz_constant(z(1, 2) * zb(1, 2), SphereSampler(2, 2000))
    assert 0.97 < s3.lo <= 1 + 1e-12 <= s3.hi + 1e-12
    with pytest.raises(InputError):
        lipschitz_constant(z(), s)


def test_lipschitz_lo_monotone_in_samples():
    p = z(1, 2) * zb(2, 2) + z(2, 2) * zb(1, 2) + z(1, 2) ** 2 + zb(1, 2) ** 2
    los = [lipschitz_constant(p, SphereSampler(2, n, seed=3)).lo for n in (50, 200, 800)]
    assert los == sorted(los)


def test_json_round_trip():
    p = (z(1, 2) ** 2 * zb(2, 2)).scale(Fraction(1, 2)) + P.constant(2, GaussianRational(0, -3))
    assert P.from_json(p.to_json()) == p
    f = p.to_float()
    assert P.from_json(f.to_json()) == f
    assert '"re":"1/2"' in p.to_json()


def test_dimension_mismatch():
    with pytest.raises(InputError):
        z(1, 1) + z(1, 2)


rationals = st.fractions(min_value=-3, max_value=3, max_denominator=7)
gauss = st.builds(GaussianRational, rationals, rationals)


@st.composite
def symbols(draw, d=2, max_deg=3):
    n = draw(st.integers(1, 4))
    terms = []
    for _ in range(n):
        a = draw(st.lists(st.integers(0, max_deg), min_size=d, max_size=d))
        b = draw(st.lists(st.integers(0, max_deg), min_size=d, max_size=d))
        terms.append(((a, b), draw(gauss)))
    return P(d, terms)


@settings(max_examples=60, deadline=None)
@given(symbols(), symbols(), st.lists(gauss, min_size=2, max_size=2))
def test_multiply_evaluation_faithful_exact(p, q, pt):
    assert (p * q).evaluate_exact(pt) == p.evaluate_exact(pt) * q.evaluate_exact(pt)


@settings(max_examples=60, deadline=None)
@given(symbols(), symbols())
def test_laplacian_linear(p, q):
    assert (p + q).laplacian() == p.laplacian() + q.laplacian()
    assert (p.scale(3)).laplacian() == p.laplacian().scale(3)


@pytest.mark.parametrize("a", [(0, 0), (2, 1), (0, 3)])
def test_laplacian_kills_holomorphic(a):
    assert P.monomial(a, (0, 0)).laplacian().is_zero
    assert P.monomial((0, 0), a).laplacian().is_zero


@settings(max_examples=40, deadline=None)
@given(symbols())
def test_hermitian_iff_real(p):
    pts = np.random.default_rng(1).standard_normal((100, 2)) + 1j * np.random.default_rng(2).standard_normal((100, 2))
    assert p.real_part().is_hermitian()
    assert np.max(np.abs(p.real_part().evaluate(pts).imag)) < 1e-9 * (1 + np.max(np.abs(p.evaluate(pts))))
    if not p.is_hermitian():
        assert np.max(np.abs(p.evaluate(pts).imag)) > 1e-12
