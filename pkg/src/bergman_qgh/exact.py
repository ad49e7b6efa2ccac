"""Exact scalar types: Gaussian rationals and sums of rational multiples of square roots.

Toeplitz matrix elements for integer weights are of the form ``c * sqrt(r)``
with ``c`` a Gaussian rational and ``r`` a positive rational.  :class:`Surd`
keeps such sums exact, so products of banded matrices (commutators) can be
compared against closed forms without rounding.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

__all__ = ["GaussianRational", "Surd", "as_fraction", "squarefree_split", "format_fraction"]


def as_fraction(x) -> Fraction:
    """Exact conversion of int, Fraction, decimal string or float (binary value)."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError(f"non-finite value {x!r}")
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot convert {type(x).__name__} to Fraction")


def format_fraction(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class GaussianRational:
    """``re + i*im`` with both parts :class:`fractions.Fraction`."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = as_fraction(re)
        self.im = as_fraction(im)

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, complex):
            return cls(x.real, x.imag)
        return cls(x)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    @property
    def is_real(self) -> bool:
        return self.im == 0

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __abs__(self) -> float:
        return math.sqrt(self.abs2())

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, (GaussianRational, int, Fraction)):
            o = GaussianRational.coerce(other)
            return self.re == o.re and self.im == o.im
        if isinstance(other, (float, complex)):
            return complex(self) == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __add__(self, other):
        if isinstance(other, (float, complex)):
            return complex(self) + other
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (float, complex)):
            return complex(self) * other
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (float, complex)):
            return complex(self) / other
        o = GaussianRational.coerce(other)
        n = o.abs2()
        if n == 0:
            raise ZeroDivisionError("division by zero")
        num = self * o.conjugate()
        return GaussianRational(num.re / n, num.im / n)

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) / self

    def __repr__(self):
        return f"GaussianRational({format_fraction(self.re)}, {format_fraction(self.im)})"

    def __str__(self):
        if self.im == 0:
            return format_fraction(self.re)
        if self.re == 0:
            return f"{format_fraction(self.im)}*i"
        sign = "+" if self.im > 0 else "-"
        return f"({format_fraction(self.re)} {sign} {format_fraction(abs(self.im))}*i)"


@lru_cache(maxsize=65536)
def squarefree_split(n: int) -> tuple[int, int]:
    """Return ``(t, s)`` with ``n = t**2 * s`` and ``s`` squarefree."""
    if n <= 0:
        raise ValueError("squarefree_split needs a positive integer")
    r = math.isqrt(n)
    if r * r == n:
        return r, 1
    from sympy import factorint

    t, s = 1, 1
    for p, e in factorint(n).items():
        t *= p ** (e // 2)
        if e % 2:
            s *= p
    return t, s


class Surd:
    """Finite sum ``sum_r c_r * sqrt(r)`` over squarefree integers ``r``."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for r, c in (terms or {}).items():
            c = GaussianRational.coerce(c)
            if c:
                clean[r] = c
        self.terms = clean

    @classmethod
    def sqrt_of(cls, q, coeff=1) -> "Surd":
        """``coeff * sqrt(q)`` for a nonnegative rational ``q``."""
        q = as_fraction(q)
        if q < 0:
            raise ValueError("square root of a negative rational")
        if q == 0:
            return cls()
        # sqrt(p/q) = sqrt(p*q)/q
        t, s = squarefree_split(q.numerator * q.denominator)
        return cls({s: GaussianRational.coerce(coeff) * Fraction(t, q.denominator)})

    @classmethod
    def rational(cls, c) -> "Surd":
        return cls({1: c})

    def rational_value(self):
        """The value as a :class:`GaussianRational` if it has no irrational part, else ``None``."""
        if not self.terms:
            return GaussianRational(0)
        if set(self.terms) == {1}:
            return self.terms[1]
        return None

    def __bool__(self):
        return bool(self.terms)

    def __complex__(self):
        return sum((complex(c) * math.sqrt(r) for r, c in self.terms.items()), 0j)

    def __abs__(self):
        return abs(complex(self))

    def conjugate(self) -> "Surd":
        return Surd({r: c.conjugate() for r, c in self.terms.items()})

    def __neg__(self):
        return Surd({r: -c for r, c in self.terms.items()})

    def __add__(self, other):
        if not isinstance(other, Surd):
            if isinstance(other, (float, complex)):
                return complex(self) + other
            other = Surd.rational(other)
        out = dict(self.terms)
        for r, c in other.terms.items():
            out[r] = out[r] + c if r in out else c
        return Surd(out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Surd):
            if isinstance(other, (float, complex)):
                return complex(self) * other
            other = Surd.rational(other)
        out: dict[int, GaussianRational] = {}
        for r1, c1 in self.terms.items():
            for r2, c2 in other.terms.items():
                g = math.gcd(r1, r2)
                # sqrt(r1*r2) = g*sqrt(r1*r2/g^2), and r1*r2/g^2 is squarefree
                r = (r1 // g) * (r2 // g)
                c = c1 * c2 * g
                out[r] = out[r] + c if r in out else c
        return Surd(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, Surd):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self == Surd.rational(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"Surd({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for r in sorted(self.terms):
            c = self.terms[r]
            parts.append(str(c) if r == 1 else f"{c}*sqrt({r})")
        return " + ".join(parts)
