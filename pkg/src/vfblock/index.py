"""Certified Poincare-Hopf indices via boundary winding numbers.

The winding certificate: with |X| >= margin on a curve and L a Lipschitz bound
for X along it, sampling finer than margin/L keeps every continuous angular
variation between consecutive samples strictly under pi/2, so the discrete
angle sum equals the continuous one and rounds to the exact integer degree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import interval as iv
from .certify import Block, min_norm_on_boundary
from .config import DEFAULTS
from .errors import CertificationFailed, ContradictionError
from .fields import PlanarField
from .poly import Poly2, _frac, _frac_str, restrict_to_circle, restrict_to_segment
from .regions import ANNULUS, Circle, RectLoop, Region
from . import upoly


@dataclass(frozen=True)
class IndexResult:
    index: int
    boundary_margin: Fraction
    max_step_rotation: float
    samples_per_curve: int
    essential: bool
    certified: bool
    lipschitz_mode: str

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "margin": _frac_str(self.boundary_margin),
            "max_step": self.max_step_rotation,
            "essential": self.essential,
            "certified": self.certified,
        }


def interval_lipschitz(field: PlanarField, bbox) -> float:
    """Upper bound for sup ||DX||_2 over the box via interval Frobenius norms."""
    ix = (iv.make(bbox[0])[0], iv.make(bbox[2])[1])
    iy = (iv.make(bbox[1])[0], iv.make(bbox[3])[1])
    total = 0.0
    for comp in field.jacobian():
        total += iv.abs_upper(comp.eval_interval(ix, iy)) ** 2
    return iv.up(math.sqrt(total)) + 1e-300


def sampled_lipschitz(evalf, curve, n: int = 2048) -> float:
    """Finite-difference Lipschitz estimate along a curve, with a safety factor."""
    best = 0.0
    prev_p = curve.point(0.0)
    prev_v = evalf(*prev_p)
    for i in range(1, n + 1):
        p = curve.point(i / n)
        v = evalf(*p)
        dp = math.hypot(p[0] - prev_p[0], p[1] - prev_p[1])
        dv = math.hypot(v[0] - prev_v[0], v[1] - prev_v[1])
        if dp > 0:
            best = max(best, dv / dp)
        prev_p, prev_v = p, v
    return best * DEFAULTS.sampled_lipschitz_safety + 1e-300


@dataclass(frozen=True)
class WindingStats:
    winding: int
    samples: int
    max_step: float
    residual: float
    lipschitz_mode: str


def winding_stats(field_or_eval, curve, margin, *, samples=None, start_offset=0.0,
                  budget=None, lipschitz=None) -> WindingStats:
    if budget is None:
        budget = DEFAULTS.winding_budget
    margin_f = float(margin)
    if margin_f <= 0:
        raise CertificationFailed("winding needs a positive boundary margin")
    if isinstance(field_or_eval, PlanarField):
        evalf = field_or_eval.eval_float
        mode = "interval"
        if lipschitz is None:
            lipschitz = interval_lipschitz(field_or_eval, curve.bounding_box())
    else:
        evalf = field_or_eval
        mode = "sampled"
        if lipschitz is None:
            lipschitz = sampled_lipschitz(evalf, curve)
    if samples is None:
        need = DEFAULTS.lipschitz_safety * lipschitz * curve.length_upper() / margin_f
        samples = max(16, int(math.ceil(need)))
    if samples > budget:
        raise CertificationFailed(
            f"winding needs {samples} samples, over the budget {budget}"
        )
    total = 0.0
    max_step = 0.0
    first = evalf(*curve.point(start_offset))
    prev = first
    for i in range(1, samples + 1):
        t = start_offset + i / samples
        cur = first if i == samples else evalf(*curve.point(t))
        cross = prev[0] * cur[1] - prev[1] * cur[0]
        dot = prev[0] * cur[0] + prev[1] * cur[1]
        step = math.atan2(cross, dot)
        if abs(step) >= math.pi / 2:
            raise CertificationFailed(
                f"angular step {step:.3f} rad exceeds pi/2 at sample {i}"
            )
        max_step = max(max_step, abs(step))
        total += step
        prev = cur
    turns = total / (2.0 * math.pi)
    winding = round(turns)
    residual = abs(turns - winding)
    if residual >= 0.25:
        raise CertificationFailed(f"rounding residual {residual:.3f} >= 0.25")
    return WindingStats(winding, samples, max_step, residual, mode)


def winding_number(field_or_eval, curve, margin, **kwargs) -> int:
    """Degree of X/|X| along the oriented curve (certified integer)."""
    return winding_stats(field_or_eval, curve, margin, **kwargs).winding


def region_index(field_or_eval, region: Region, margin, *, lipschitz=None,
                 certified=True) -> IndexResult:
    """Sum of winding numbers over the region's oriented boundary components."""
    total = 0
    max_step = 0.0
    samples = 0
    mode = "interval"
    for curve in region.boundary_curves():
        st = winding_stats(field_or_eval, curve, margin, lipschitz=lipschitz)
        total += st.winding
        max_step = max(max_step, st.max_step)
        samples = max(samples, st.samples)
        mode = st.lipschitz_mode
    return IndexResult(total, _frac(margin), max_step, samples,
                       essential=total != 0,
                       certified=certified and mode == "interval",
                       lipschitz_mode=mode)


def block_index(block: Block) -> IndexResult:
    """Poincare-Hopf index of the block, with its essentiality flag."""
    return region_index(block.field, block.region, block.boundary_margin)


def perturbation_bound(block: Block) -> Fraction:
    """A sup-distance delta such that any field within delta of X on cl(U) has
    no boundary zeros and the same index (straight-line homotopy argument)."""
    return block.boundary_margin


@dataclass(frozen=True)
class HomotopyVerdict:
    status: str  # "invariant" | "degenerate"
    index: int | None = None
    t: Fraction | None = None

    def to_json(self) -> dict:
        out = {"status": self.status}
        if self.index is not None:
            out["index"] = self.index
        if self.t is not None:
            out["t"] = _frac_str(self.t)
        return out


def homotopy_invariance_check(x0: PlanarField, x1: PlanarField, region: Region,
                              steps: int) -> HomotopyVerdict:
    """Certify boundary nonvanishing and a constant index along the straight-line
    homotopy sampled at t = i/steps; degenerate reports are honest failures of
    certification, not counterexamples."""
    if steps < 2:
        raise ValueError("steps must be >= 2")
    indices = []
    for i in range(steps + 1):
        t = Fraction(i, steps)
        xt = x0.scale(1 - t) + x1.scale(t)
        if xt.is_zero():
            return HomotopyVerdict("degenerate", t=t)
        margin = min_norm_on_boundary(xt, region)
        if margin is None:
            return HomotopyVerdict("degenerate", t=t)
        indices.append(region_index(xt, region, margin).index)
    if any(idx != indices[0] for idx in indices):
        raise ContradictionError(
            f"index changed along a certified-nonvanishing homotopy: {indices}"
        )
    return HomotopyVerdict("invariant", index=indices[0])


@dataclass(frozen=True)
class WedgeVerdict:
    status: str  # "equal" | "not_dependent" | "not_isolating"
    index: int | None = None
    witness: tuple | None = None

    def to_json(self) -> dict:
        out = {"status": self.status}
        if self.index is not None:
            out["index"] = self.index
        if self.witness is not None:
            out["witness"] = [_frac_str(_frac(w)) for w in self.witness]
        return out


def _dependent_on_boundary(det: Poly2, region: Region):
    """(True, None) if det vanishes identically on the boundary, else a rational
    witness point where it does not."""
    for curve in region.boundary_curves():
        if isinstance(curve, Circle):
            coeffs = restrict_to_circle(det, curve.center[0], curve.center[1], curve.r)
            if upoly.is_zero(coeffs):
                continue
            for num in range(0, 40):
                for s in {Fraction(num, 3), Fraction(-num, 3), Fraction(num, 7)}:
                    if upoly.evaluate(coeffs, s) != 0:
                        return False, curve.exact_point(s)
            return False, None
        if isinstance(curve, RectLoop):
            for a, b in curve.edges():
                coeffs = restrict_to_segment(det, a, b)
                if upoly.is_zero(coeffs):
                    continue
                for num in range(0, 40):
                    t = Fraction(num, 37)
                    if 0 <= t <= 1 and upoly.evaluate(coeffs, t) != 0:
                        ex = (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))
                        return False, ex
                return False, None
    return True, None


def wedge_check(y_field: PlanarField, yp_field: PlanarField,
                region: Region) -> WedgeVerdict:
    """Certify pointwise linear dependence of the two fields along the boundary
    of an isolating region; their indices must then agree."""
    det = y_field.p * yp_field.q - y_field.q * yp_field.p
    dependent, witness = _dependent_on_boundary(det, region)
    if not dependent:
        return WedgeVerdict("not_dependent", witness=witness)
    m1 = min_norm_on_boundary(y_field, region)
    m2 = min_norm_on_boundary(yp_field, region)
    if m1 is None or m2 is None:
        return WedgeVerdict("not_isolating")
    i1 = region_index(y_field, region, m1).index
    i2 = region_index(yp_field, region, m2).index
    if i1 != i2:
        raise ContradictionError(
            f"boundary-dependent fields with certified margins {m1}, {m2} "
            f"have indices {i1} != {i2}"
        )
    return WedgeVerdict("equal", index=i1)


def make_double_cover_lift(field: PlanarField):
    """Evaluator for the lift of the field under the angle-doubling cover of an
    origin-centered annulus: kappa(r, theta) = (r, 2 theta)."""

    def lifted(u: float, v: float) -> tuple[float, float]:
        phi = math.atan2(v, u)
        rho = math.hypot(u, v)
        theta = 2.0 * phi
        ct, st = math.cos(theta), math.sin(theta)
        wx, wy = field.eval_float(rho * ct, rho * st)
        radial = wx * ct + wy * st
        tangential = -wx * st + wy * ct
        cp, sp = math.cos(phi), math.sin(phi)
        return (radial * cp - 0.5 * tangential * sp,
                radial * sp + 0.5 * tangential * cp)

    return lifted


def lift_double_cover(field: PlanarField, region: Region):
    """Index-doubling check through the annulus double cover; returns the lifted
    evaluator and its (sampled-Lipschitz) index result."""
    if region.kind != ANNULUS or region.center != (Fraction(0), Fraction(0)):
        raise ValueError("double cover lift needs an origin-centered annulus")
    margin = min_norm_on_boundary(field, region)
    if margin is None:
        raise CertificationFailed("field not certified nonvanishing on the annulus boundary")
    base = region_index(field, region, margin)
    lifted = make_double_cover_lift(field)
    lift_margin = math.inf
    for curve in region.boundary_curves():
        for i in range(4096):
            w = lifted(*curve.point(i / 4096))
            lift_margin = min(lift_margin, math.hypot(*w))
    lift_margin *= 0.9
    if lift_margin <= 0:
        raise CertificationFailed("lifted field vanishes on the covering boundary")
    lifted_result = region_index(lifted, region, Fraction(lift_margin),
                                 certified=False)
    if lifted_result.index != 2 * base.index:
        raise ContradictionError(
            f"lifted index {lifted_result.index} != 2 * base index {base.index}"
        )
    return lifted, lifted_result
