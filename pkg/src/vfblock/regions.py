"""Regions with oriented boundaries and exact box/region geometry.

Conventions: outer boundary components run counterclockwise, inner ones
clockwise, so the region always lies to the left of its boundary.  All region
parameters are exact rationals; the box predicates used by the subdivision
machinery are decided in exact arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import interval as iv
from .errors import UnsupportedRegion
from .poly import _frac, _frac_str

DISK = "disk"
ANNULUS = "annulus"
RECT = "rect"
TORUS_FULL = "torus"


@dataclass(frozen=True)
class Region:
    kind: str
    center: tuple[Fraction, Fraction] | None = None
    r: Fraction | None = None
    r_in: Fraction | None = None
    r_out: Fraction | None = None
    corners: tuple[Fraction, Fraction, Fraction, Fraction] | None = None

    def __post_init__(self):
        if self.kind == DISK:
            if self.r is None or self.r <= 0:
                raise ValueError("disk needs a positive radius")
        elif self.kind == ANNULUS:
            if self.r_in is None or self.r_out is None or not 0 < self.r_in < self.r_out:
                raise ValueError("annulus needs 0 < r_in < r_out")
        elif self.kind == RECT:
            x0, y0, x1, y1 = self.corners
            if not (x0 < x1 and y0 < y1):
                raise ValueError("rectangle is degenerate")
        elif self.kind != TORUS_FULL:
            raise ValueError(f"unknown region kind {self.kind!r}")

    # geometry -------------------------------------------------------------

    def bounding_box(self):
        if self.kind == DISK:
            cx, cy = self.center
            return (cx - self.r, cy - self.r, cx + self.r, cy + self.r)
        if self.kind == ANNULUS:
            cx, cy = self.center
            return (cx - self.r_out, cy - self.r_out, cx + self.r_out, cy + self.r_out)
        if self.kind == RECT:
            return self.corners
        return (Fraction(0), Fraction(0), Fraction(1), Fraction(1))

    def contains_point_open(self, point) -> bool:
        x, y = _frac(point[0]), _frac(point[1])
        if self.kind == DISK:
            cx, cy = self.center
            return (x - cx) ** 2 + (y - cy) ** 2 < self.r ** 2
        if self.kind == ANNULUS:
            cx, cy = self.center
            d = (x - cx) ** 2 + (y - cy) ** 2
            return self.r_in ** 2 < d < self.r_out ** 2
        if self.kind == RECT:
            x0, y0, x1, y1 = self.corners
            return x0 < x < x1 and y0 < y < y1
        return True

    def contains_point_closed(self, point) -> bool:
        x, y = _frac(point[0]), _frac(point[1])
        if self.kind == DISK:
            cx, cy = self.center
            return (x - cx) ** 2 + (y - cy) ** 2 <= self.r ** 2
        if self.kind == ANNULUS:
            cx, cy = self.center
            d = (x - cx) ** 2 + (y - cy) ** 2
            return self.r_in ** 2 <= d <= self.r_out ** 2
        if self.kind == RECT:
            x0, y0, x1, y1 = self.corners
            return x0 <= x <= x1 and y0 <= y <= y1
        return True

    def boundary_curves(self) -> list:
        if self.kind == DISK:
            return [Circle(self.center, self.r, ccw=True)]
        if self.kind == ANNULUS:
            return [
                Circle(self.center, self.r_out, ccw=True),
                Circle(self.center, self.r_in, ccw=False),
            ]
        if self.kind == RECT:
            return [RectLoop(self.corners)]
        return []

    def to_json(self) -> dict:
        if self.kind == DISK:
            return {"type": "disk", "center": [_frac_str(c) for c in self.center],
                    "r": _frac_str(self.r)}
        if self.kind == ANNULUS:
            return {"type": "annulus", "center": [_frac_str(c) for c in self.center],
                    "r_in": _frac_str(self.r_in), "r_out": _frac_str(self.r_out)}
        if self.kind == RECT:
            x0, y0, x1, y1 = self.corners
            return {"type": "rect",
                    "corners": [[_frac_str(x0), _frac_str(y0)],
                                [_frac_str(x1), _frac_str(y1)]]}
        return {"type": "torus"}

    @classmethod
    def from_json(cls, data) -> "Region":
        t = data["type"]
        if t == "disk":
            return disk(tuple(Fraction(c) for c in data["center"]), Fraction(data["r"]))
        if t == "annulus":
            return annulus(tuple(Fraction(c) for c in data["center"]),
                           Fraction(data["r_in"]), Fraction(data["r_out"]))
        if t == "rect":
            (x0, y0), (x1, y1) = data["corners"]
            return rectangle(Fraction(x0), Fraction(y0), Fraction(x1), Fraction(y1))
        if t == "torus":
            return torus_full()
        raise ValueError(f"unknown region type {t!r}")


def disk(center, r) -> Region:
    return Region(DISK, (_frac(center[0]), _frac(center[1])), r=_frac(r))


def annulus(center, r_in, r_out) -> Region:
    return Region(ANNULUS, (_frac(center[0]), _frac(center[1])),
                  r_in=_frac(r_in), r_out=_frac(r_out))


def rectangle(x0, y0, x1, y1) -> Region:
    return Region(RECT, corners=(_frac(x0), _frac(y0), _frac(x1), _frac(y1)))


def torus_full() -> Region:
    return Region(TORUS_FULL)


# exact box predicates ------------------------------------------------------

def box_min_dist_sq(box, c) -> Fraction:
    x0, y0, x1, y1 = box
    cx, cy = c
    dx = max(x0 - cx, cx - x1, Fraction(0))
    dy = max(y0 - cy, cy - y1, Fraction(0))
    return dx * dx + dy * dy


def box_max_dist_sq(box, c) -> Fraction:
    x0, y0, x1, y1 = box
    cx, cy = c
    dx = max(abs(x0 - cx), abs(x1 - cx))
    dy = max(abs(y0 - cy), abs(y1 - cy))
    return dx * dx + dy * dy


def box_intersects_closure(region: Region, box) -> bool:
    if region.kind == DISK:
        return box_min_dist_sq(box, region.center) <= region.r ** 2
    if region.kind == ANNULUS:
        return (box_min_dist_sq(box, region.center) <= region.r_out ** 2
                and box_max_dist_sq(box, region.center) >= region.r_in ** 2)
    if region.kind == RECT:
        x0, y0, x1, y1 = region.corners
        bx0, by0, bx1, by1 = box
        return bx0 <= x1 and x0 <= bx1 and by0 <= y1 and y0 <= by1
    return True


def box_clears_boundary(region: Region, box, collar: Fraction) -> bool:
    """Is the box inside the region, at distance >= collar from its frontier?"""
    if region.kind == DISK:
        if region.r <= collar:
            return False
        return box_max_dist_sq(box, region.center) <= (region.r - collar) ** 2
    if region.kind == ANNULUS:
        if region.r_out - region.r_in <= 2 * collar:
            return False
        return (box_max_dist_sq(box, region.center) <= (region.r_out - collar) ** 2
                and box_min_dist_sq(box, region.center) >= (region.r_in + collar) ** 2)
    if region.kind == RECT:
        x0, y0, x1, y1 = region.corners
        bx0, by0, bx1, by1 = box
        return (bx0 >= x0 + collar and bx1 <= x1 - collar
                and by0 >= y0 + collar and by1 <= y1 - collar)
    return True  # the torus has no frontier


# boundary curves -------------------------------------------------------------


class Circle:
    """Circle parametrized over t in [0, 1); ccw=False reverses orientation."""

    def __init__(self, center, r, ccw: bool):
        self.center = (_frac(center[0]), _frac(center[1]))
        self.r = _frac(r)
        self.ccw = ccw
        self._cf = (float(self.center[0]), float(self.center[1]))
        self._rf = float(self.r)

    def point(self, t: float) -> tuple[float, float]:
        theta = 2.0 * math.pi * t * (1.0 if self.ccw else -1.0)
        return (self._cf[0] + self._rf * math.cos(theta),
                self._cf[1] + self._rf * math.sin(theta))

    def box_of(self, t0: float, t1: float):
        sign = 1.0 if self.ccw else -1.0
        a = iv.mul(iv.TWO_PI, (min(sign * t0, sign * t1), max(sign * t0, sign * t1)))
        rr = iv.make(self.r)
        ix = iv.add(iv.make(self.center[0]), iv.mul(rr, iv.cos_iv(a)))
        iy = iv.add(iv.make(self.center[1]), iv.mul(rr, iv.sin_iv(a)))
        return ix, iy

    def length_upper(self) -> float:
        return iv.up(2.0 * math.pi * self._rf * (1.0 + 1e-12))

    def bounding_box(self):
        cx, cy = self.center
        return (cx - self.r, cy - self.r, cx + self.r, cy + self.r)

    def exact_point(self, s: Fraction) -> tuple[Fraction, Fraction]:
        """Rational point from the half-angle parameter s."""
        cx, cy = self.center
        d = 1 + s * s
        return (cx + self.r * (1 - s * s) / d, cy + self.r * 2 * s / d)


class RectLoop:
    """Counterclockwise rectangle boundary, arc-length parametrized on [0, 1)."""

    def __init__(self, corners):
        self.corners = tuple(_frac(c) for c in corners)
        x0, y0, x1, y1 = self.corners
        self.vertices = [(x0, y0), (x1, y0), (x1, y1), (x0, y1)]
        lengths = [x1 - x0, y1 - y0, x1 - x0, y1 - y0]
        total = sum(lengths)
        self.breaks = []
        acc = Fraction(0)
        for L in lengths:
            acc += L
            self.breaks.append(acc / total)
        self.perimeter = total

    def _locate(self, t: float):
        t = t % 1.0
        prev = 0.0
        for e, b in enumerate(self.breaks):
            bf = float(b)
            if t <= bf or e == 3:
                span = bf - prev
                local = 0.0 if span == 0 else (t - prev) / span
                return e, min(max(local, 0.0), 1.0)
            prev = bf
        raise AssertionError

    def point(self, t: float) -> tuple[float, float]:
        e, local = self._locate(t)
        a = self.vertices[e]
        b = self.vertices[(e + 1) % 4]
        ax, ay, bx, by = float(a[0]), float(a[1]), float(b[0]), float(b[1])
        return (ax + (bx - ax) * local, ay + (by - ay) * local)

    def box_of(self, t0: float, t1: float):
        p0 = self.point(t0)
        p1 = self.point(t1)
        mid = self.point(0.5 * (t0 + t1))
        xs = (p0[0], p1[0], mid[0])
        ys = (p0[1], p1[1], mid[1])
        # the parameter break points inside [t0, t1] are also extremes
        for b in self.breaks:
            bf = float(b)
            if t0 < bf < t1:
                pb = self.point(bf)
                xs += (pb[0],)
                ys += (pb[1],)
        return ((iv.down(min(xs)), iv.up(max(xs))), (iv.down(min(ys)), iv.up(max(ys))))

    def length_upper(self) -> float:
        return iv.up(float(self.perimeter))

    def bounding_box(self):
        return self.corners

    def edges(self):
        return [(self.vertices[i], self.vertices[(i + 1) % 4]) for i in range(4)]


def require_planar_boundary(region: Region, op: str):
    if region.kind == TORUS_FULL:
        raise UnsupportedRegion(
            f"{op} needs a boundary; the full torus has none "
            "(use disk sub-regions in the fundamental domain)"
        )
