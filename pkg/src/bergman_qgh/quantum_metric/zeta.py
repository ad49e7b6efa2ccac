"""Certified enclosures of ``gamma(alpha) = zeta(alpha + 2) - 1``.

The tail of ``sum_{m >= 2} m**-s`` after ``M`` terms lies between
``int_{M+1}^inf x**-s dx`` and ``int_M^inf x**-s dx``; the partial sum is
accumulated in interval arithmetic so rounding cannot escape the enclosure.
"""

from __future__ import annotations

import math
from fractions import Fraction

from mpmath import iv

from ..errors import InputError
from ..intervals import Interval

__all__ = ["gamma", "qgh_upper_bound"]

_PREC_BITS = 113


def _iv_real(x):
    if isinstance(x, Fraction):
        return iv.mpf(x.numerator) / iv.mpf(x.denominator)
    if isinstance(x, int):
        return iv.mpf(x)
    return iv.mpf(float(x))


def _to_float_interval(x) -> Interval:
    lo = math.nextafter(float(x.a), -math.inf)
    hi = math.nextafter(float(x.b), math.inf)
    return Interval(lo, hi)


def gamma(alpha, tol: float = 1e-12) -> Interval:
    """Interval of width ``<= tol`` containing ``zeta(alpha + 2) - 1``."""
    if not tol > 0:
        raise InputError(f"tolerance must be positive, got {tol!r}")
    try:
        a = float(alpha)
    except (TypeError, ValueError):
        raise InputError(f"alpha must be a real number, got {alpha!r}") from None
    if not math.isfinite(a) or a < 1:
        raise InputError(f"alpha must be >= 1, got {alpha!r}")
    s_float = a + 2
    # tail bracket width is below M**-s; leave half the budget for rounding
    M = max(2, math.ceil((tol / 2) ** (-1 / s_float)))
    old = iv.prec
    iv.prec = _PREC_BITS
    try:
        s = _iv_real(alpha) + 2
        partial = iv.mpf(0)
        for m in range(2, M + 1):
            partial += iv.mpf(m) ** (-s)
        tail_lo = iv.mpf(M + 1) ** (1 - s) / (s - 1)
        tail_hi = iv.mpf(M) ** (1 - s) / (s - 1)
        enclosure = iv.mpf([(partial + tail_lo).a, (partial + tail_hi).b])
    finally:
        iv.prec = old
    out = _to_float_interval(enclosure)
    if out.width > tol:
        # float conversion can add a couple of ulps; only matters for tol near machine precision
        raise InputError(f"tolerance {tol} is below double-precision resolution of {out.mid}")
    return out


def qgh_upper_bound(alpha, tol: float = 1e-12, d: int = 1) -> Interval:
    """``2 * gamma(alpha)``: the bridge bound on the quantum Gromov-Hausdorff distance."""
    if float(alpha) < d:
        raise InputError(f"alpha must satisfy alpha >= d = {d}, got {alpha!r}")
    g = gamma(alpha, tol / 2)
    return Interval(g.lo * 2, g.hi * 2)
