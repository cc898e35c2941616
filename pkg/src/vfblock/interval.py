"""Interval arithmetic on double endpoints with outward rounding.

Intervals are plain ``(lo, hi)`` tuples; every operation widens its result by
one ulp per rounding step, so enclosures stay sound for certificates.  Trig
enclosures additionally pad endpoint evaluations by an absolute slop that
dominates libm's error.
"""

from __future__ import annotations

import math
from fractions import Fraction

_INF = math.inf
_TRIG_SLOP = 1e-12     # absolute pad on libm sin/cos results
_ARG_SLOP = 1e-9       # pad when locating trig extrema inside an argument range

PI = (math.nextafter(math.pi, -_INF), math.nextafter(math.pi, _INF))
TWO_PI = (math.nextafter(2 * math.pi, -_INF), math.nextafter(2 * math.pi, _INF))


def down(x: float) -> float:
    return math.nextafter(x, -_INF)


def up(x: float) -> float:
    return math.nextafter(x, _INF)


def make(x) -> tuple[float, float]:
    """Enclose an exact number (int, Fraction or float) in a float interval."""
    if isinstance(x, float):
        return (x, x)
    f = float(x)
    exact = Fraction(f)
    lo = f if exact <= x else down(f)
    hi = f if exact >= x else up(f)
    return (lo, hi)


def add(a, b):
    return (down(a[0] + b[0]), up(a[1] + b[1]))


def sub(a, b):
    return (down(a[0] - b[1]), up(a[1] - b[0]))


def neg(a):
    return (-a[1], -a[0])


def mul(a, b):
    p1 = a[0] * b[0]
    p2 = a[0] * b[1]
    p3 = a[1] * b[0]
    p4 = a[1] * b[1]
    return (down(min(p1, p2, p3, p4)), up(max(p1, p2, p3, p4)))


def sqr(a):
    lo, hi = a
    if lo >= 0.0:
        return (down(lo * lo), up(hi * hi))
    if hi <= 0.0:
        return (down(hi * hi), up(lo * lo))
    m = max(-lo, hi)
    return (0.0, up(m * m))


def pow_int(a, n: int):
    """a**n by repeated outward-rounded multiplication; sign-aware for even n."""
    if n == 0:
        return (1.0, 1.0)
    if n == 1:
        return a
    if n % 2 == 0 and a[0] < 0.0 <= a[1]:
        m = max(-a[0], a[1])
        hi = 1.0
        for _ in range(n):
            hi = up(hi * m)
        return (0.0, hi)
    r = a
    for _ in range(n - 1):
        r = mul(r, a)
    return r


def contains_zero(a) -> bool:
    return a[0] <= 0.0 <= a[1]


def abs_upper(a) -> float:
    return max(-a[0], a[1], 0.0)


def _has_point_cong(lo: float, hi: float, base: float, period: float) -> bool:
    # is there an integer k with lo <= base + k*period <= hi, up to slop?
    k_min = math.ceil((lo - base - _ARG_SLOP) / period)
    k_max = math.floor((hi - base + _ARG_SLOP) / period)
    return k_min <= k_max


def sin_iv(a):
    lo, hi = a
    if hi - lo >= 2 * math.pi - 2 * _ARG_SLOP:
        return (-1.0, 1.0)
    v0, v1 = math.sin(lo), math.sin(hi)
    s_lo = min(v0, v1) - _TRIG_SLOP
    s_hi = max(v0, v1) + _TRIG_SLOP
    if _has_point_cong(lo, hi, math.pi / 2, 2 * math.pi):
        s_hi = 1.0
    if _has_point_cong(lo, hi, -math.pi / 2, 2 * math.pi):
        s_lo = -1.0
    return (max(s_lo, -1.0), min(s_hi, 1.0))


def cos_iv(a):
    lo, hi = a
    if hi - lo >= 2 * math.pi - 2 * _ARG_SLOP:
        return (-1.0, 1.0)
    v0, v1 = math.cos(lo), math.cos(hi)
    c_lo = min(v0, v1) - _TRIG_SLOP
    c_hi = max(v0, v1) + _TRIG_SLOP
    if _has_point_cong(lo, hi, 0.0, 2 * math.pi):
        c_hi = 1.0
    if _has_point_cong(lo, hi, math.pi, 2 * math.pi):
        c_lo = -1.0
    return (max(c_lo, -1.0), min(c_hi, 1.0))


def sqrt_lower(x: float) -> float:
    """A certified lower bound for sqrt(x), x >= 0."""
    if x <= 0.0:
        return 0.0
    r = down(math.sqrt(down(x)))
    return max(r, 0.0)
