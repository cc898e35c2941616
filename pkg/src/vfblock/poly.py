"""Exact bivariate polynomials over Q with sparse monomial maps.

Poly2 is the coefficient-level workhorse: brackets, translations and
divisibility tests all happen here, exactly.  Float and interval evaluation
forms are cached per instance for the numeric paths.
"""

from __future__ import annotations

import math
from fractions import Fraction

from . import interval as iv
from . import upoly
from .errors import InsufficientPower


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


class Poly2:
    """Polynomial in x, y; monomial map (i, j) -> nonzero Fraction."""

    __slots__ = ("_m", "_float_terms", "_ival_terms", "_hash")

    def __init__(self, monomials=None):
        m = {}
        if monomials:
            for (i, j), c in monomials.items():
                c = _frac(c)
                if c != 0:
                    if i < 0 or j < 0:
                        raise ValueError("negative exponent")
                    m[(int(i), int(j))] = c
        self._m = m
        self._float_terms = None
        self._ival_terms = None
        self._hash = None

    # construction -------------------------------------------------------

    @classmethod
    def zero(cls) -> "Poly2":
        return cls()

    @classmethod
    def const(cls, c) -> "Poly2":
        return cls({(0, 0): _frac(c)})

    @classmethod
    def variable(cls, name: str) -> "Poly2":
        if name == "x":
            return cls({(1, 0): Fraction(1)})
        if name == "y":
            return cls({(0, 1): Fraction(1)})
        raise ValueError(name)

    def monomials(self):
        return dict(self._m)

    # ring structure -----------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        m = dict(self._m)
        for k, c in other._m.items():
            s = m.get(k, Fraction(0)) + c
            if s == 0:
                m.pop(k, None)
            else:
                m[k] = s
        return Poly2(m)

    __radd__ = __add__

    def __neg__(self):
        return Poly2({k: -c for k, c in self._m.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _frac(other)
            if c == 0:
                return Poly2()
            return Poly2({k: v * c for k, v in self._m.items()})
        other = self._coerce(other)
        m: dict[tuple[int, int], Fraction] = {}
        for (i1, j1), c1 in self._m.items():
            for (i2, j2), c2 in other._m.items():
                k = (i1 + i2, j1 + j2)
                s = m.get(k, Fraction(0)) + c1 * c2
                if s == 0:
                    m.pop(k, None)
                else:
                    m[k] = s
        return Poly2(m)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        out = Poly2.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    @staticmethod
    def _coerce(other) -> "Poly2":
        if isinstance(other, Poly2):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly2.const(other)
        raise TypeError(f"cannot coerce {other!r}")

    def __eq__(self, other):
        return isinstance(other, Poly2) and self._m == other._m

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._m.items()))
        return self._hash

    def is_zero(self) -> bool:
        return not self._m

    # structure ----------------------------------------------------------

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self._m:
            return -1
        return max(i + j for i, j in self._m)

    @property
    def min_total_degree(self) -> int:
        """Lowest total degree of a stored monomial; -1 for the zero polynomial."""
        if not self._m:
            return -1
        return min(i + j for i, j in self._m)

    def min_y_exponent(self) -> int:
        if not self._m:
            return -1
        return min(j for _, j in self._m)

    def dx(self) -> "Poly2":
        return Poly2({(i - 1, j): c * i for (i, j), c in self._m.items() if i > 0})

    def dy(self) -> "Poly2":
        return Poly2({(i, j - 1): c * j for (i, j), c in self._m.items() if j > 0})

    def translate(self, ax, ay) -> "Poly2":
        """Substitute x -> x + ax, y -> y + ay exactly."""
        ax, ay = _frac(ax), _frac(ay)
        m: dict[tuple[int, int], Fraction] = {}
        for (i, j), c in self._m.items():
            for p in range(i + 1):
                cx = c * math.comb(i, p) * ax ** (i - p)
                if cx == 0:
                    continue
                for q in range(j + 1):
                    cc = cx * math.comb(j, q) * ay ** (j - q)
                    if cc == 0:
                        continue
                    k = (p, q)
                    s = m.get(k, Fraction(0)) + cc
                    if s == 0:
                        m.pop(k, None)
                    else:
                        m[k] = s
        return Poly2(m)

    def divide_y_power(self, l: int) -> "Poly2":
        """Exact quotient by y**l; raises InsufficientPower if not divisible."""
        if l < 0:
            raise ValueError("negative power")
        for (i, j) in self._m:
            if j < l:
                raise InsufficientPower(f"monomial x^{i} y^{j} has y-exponent < {l}")
        return Poly2({(i, j - l): c for (i, j), c in self._m.items()})

    def substitute_y(self, value) -> list[Fraction]:
        """Univariate polynomial in x obtained by fixing y = value (exact)."""
        value = _frac(value)
        out: dict[int, Fraction] = {}
        for (i, j), c in self._m.items():
            cc = c * value ** j
            if cc:
                out[i] = out.get(i, Fraction(0)) + cc
        coeffs = [Fraction(0)] * (max(out) + 1 if out else 0)
        for i, c in out.items():
            coeffs[i] = c
        return upoly.trim(coeffs)

    # evaluation ---------------------------------------------------------

    def eval_exact(self, x, y) -> Fraction:
        x, y = _frac(x), _frac(y)
        total = Fraction(0)
        for (i, j), c in self._m.items():
            total += c * x ** i * y ** j
        return total

    def _floats(self):
        if self._float_terms is None:
            self._float_terms = [(i, j, float(c)) for (i, j), c in sorted(self._m.items())]
        return self._float_terms

    def eval_float(self, x: float, y: float) -> float:
        total = 0.0
        for i, j, c in self._floats():
            total += c * x ** i * y ** j
        return total

    def _ivals(self):
        if self._ival_terms is None:
            self._ival_terms = [(i, j, iv.make(c)) for (i, j), c in sorted(self._m.items())]
        return self._ival_terms

    def eval_interval(self, ix, iy):
        """Sound enclosure of the range over the box ix x iy."""
        terms = self._ivals()
        if not terms:
            return (0.0, 0.0)
        max_i = max(t[0] for t in terms)
        max_j = max(t[1] for t in terms)
        xp = [(1.0, 1.0)]
        for _ in range(max_i):
            xp.append(iv.mul(xp[-1], ix))
        if max_i >= 2:
            for n in range(2, max_i + 1):
                if n % 2 == 0:
                    xp[n] = iv.pow_int(ix, n)
        yp = [(1.0, 1.0)]
        for _ in range(max_j):
            yp.append(iv.mul(yp[-1], iy))
        if max_j >= 2:
            for n in range(2, max_j + 1):
                if n % 2 == 0:
                    yp[n] = iv.pow_int(iy, n)
        total = (0.0, 0.0)
        for i, j, c in terms:
            total = iv.add(total, iv.mul(c, iv.mul(xp[i], yp[j])))
        return total

    # serialization ------------------------------------------------------

    def to_json(self) -> list[dict]:
        return [
            {"i": i, "j": j, "c": _frac_str(c)}
            for (i, j), c in sorted(self._m.items())
        ]

    @classmethod
    def from_json(cls, data) -> "Poly2":
        return cls({(t["i"], t["j"]): Fraction(t["c"]) for t in data})

    def __repr__(self):
        if not self._m:
            return "Poly2(0)"
        parts = []
        for (i, j), c in sorted(self._m.items()):
            mono = "".join(s for s in (f"x^{i}" if i else "", f"y^{j}" if j else "") if s)
            parts.append(f"{c}{'*' + mono if mono else ''}")
        return "Poly2(" + " + ".join(parts) + ")"


def _frac_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


X = Poly2.variable("x")
Y = Poly2.variable("y")
ONE = Poly2.const(1)


def restrict_to_circle(p: Poly2, cx, cy, r) -> list[Fraction]:
    """Numerator of p restricted to the circle |q - c| = r, in the half-angle
    parameter s; identically zero iff p vanishes on the whole circle.

    Uses x = cx + r(1-s^2)/(1+s^2), y = cy + 2rs/(1+s^2), cleared by (1+s^2)^deg.
    """
    cx, cy, r = _frac(cx), _frac(cy), _frac(r)
    d = max(p.degree, 0)
    one_s2 = [Fraction(1), Fraction(0), Fraction(1)]          # 1 + s^2
    ax = upoly.add(scale_u(one_s2, cx), [r, Fraction(0), -r])  # cx(1+s^2) + r(1-s^2)
    ay = upoly.add(scale_u(one_s2, cy), [Fraction(0), 2 * r])  # cy(1+s^2) + 2rs
    out: list[Fraction] = []
    for (i, j), c in p.monomials().items():
        term = [c]
        for _ in range(i):
            term = upoly.mul(term, ax)
        for _ in range(j):
            term = upoly.mul(term, ay)
        for _ in range(d - i - j):
            term = upoly.mul(term, one_s2)
        out = upoly.add(out, term)
    return out


def scale_u(p, c):
    return upoly.scale(p, _frac(c))


def restrict_to_segment(p: Poly2, a, b) -> list[Fraction]:
    """p along the segment a -> b as a univariate polynomial in t over [0, 1]."""
    ax, ay = _frac(a[0]), _frac(a[1])
    bx, by = _frac(b[0]), _frac(b[1])
    xt = [ax, bx - ax]
    yt = [ay, by - ay]
    out: list[Fraction] = []
    for (i, j), c in p.monomials().items():
        term = [c]
        for _ in range(i):
            term = upoly.mul(term, xt)
        for _ in range(j):
            term = upoly.mul(term, yt)
        out = upoly.add(out, term)
    return out
