"""Scenario files: schema validation, check dispatch, deterministic reports.

A scenario declares named fields, regions, points and algebras, then a list of
checks referencing them by name.  Exit codes are CI-oriented: 0 all pass,
1 any hypothesis/conclusion failure or expectation mismatch, 2 schema or
certification error, 3 inconclusive.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import jsonschema

from .certify import certify_block, components
from .errors import ScenarioSchemaError, VfblockError
from .fields import PlanarField, jet_order
from .index import (block_index, homotopy_invariance_check, lift_double_cover,
                    perturbation_bound, wedge_check)
from .liealg import (algebra_tracks, common_zero_set, solvability,
                     structure_constants, supersolvable_flag)
from .linefield import LineFieldRep, factor_y_power, orientability_check
from .poly import _frac_str
from .regions import Region
from .tracking import (component_order_check, order_invariance_check,
                       tracking_residual, tracks_symbolic, zero_invariance_check)
from .verifier import verify_liealg, verify_main, verify_mainbis

SCENARIO_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "vfblock scenario",
    "type": "object",
    "required": ["name", "checks"],
    "additionalProperties": False,
    "properties": {
        "name": {"type": "string"},
        "surface": {"enum": ["plane", "torus"]},
        "fields": {
            "type": "object",
            "additionalProperties": {
                "type": "object",
                "required": ["P", "Q"],
                "properties": {
                    "P": {"type": "array", "items": {"type": "object"}},
                    "Q": {"type": "array", "items": {"type": "object"}},
                    "k": {"type": "integer", "minimum": 1},
                    "surface": {"enum": ["plane", "torus"]},
                },
            },
        },
        "algebras": {
            "type": "object",
            "additionalProperties": {
                "type": "object",
                "required": ["basis"],
                "properties": {
                    "basis": {"type": "array", "items": {"type": "string"},
                              "minItems": 1},
                },
            },
        },
        "regions": {
            "type": "object",
            "additionalProperties": {
                "type": "object",
                "required": ["type"],
                "properties": {"type": {"enum": ["disk", "annulus", "rect", "torus"]}},
            },
        },
        "points": {
            "type": "object",
            "additionalProperties": {
                "type": "array", "minItems": 2, "maxItems": 2,
                "items": {"type": "string"},
            },
        },
        "tolerances": {
            "type": "object",
            "properties": {
                "tol": {"type": "number", "exclusiveMinimum": 0},
                "resolution": {"type": "string"},
            },
        },
        "seeds": {"type": "object", "additionalProperties": {"type": "integer"}},
        "plot": {
            "type": "object",
            "required": ["field", "region"],
            "properties": {
                "field": {"type": "string"},
                "region": {"type": "string"},
            },
        },
        "checks": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": ["op"],
                "properties": {
                    "op": {"type": "string"},
                    "name": {"type": "string"},
                    "args": {"type": "object"},
                    "expect": {"type": "object"},
                },
            },
        },
    },
}

PASS, FAIL, INCONCLUSIVE, ERROR = "pass", "fail", "inconclusive", "error"
_SEVERITY = {PASS: 0, INCONCLUSIVE: 1, FAIL: 2, ERROR: 3}
_EXIT_CODE = {PASS: 0, INCONCLUSIVE: 3, FAIL: 1, ERROR: 2}


@dataclass
class Scenario:
    name: str
    fields: dict
    regions: dict
    points: dict
    algebras: dict
    tol: float
    resolution: Fraction
    seed: int
    checks: list
    plot: dict | None = None


def parse_scenario(data: dict) -> Scenario:
    try:
        jsonschema.validate(data, SCENARIO_SCHEMA)
    except jsonschema.ValidationError as e:
        path = "$" + "".join(f"[{p!r}]" for p in e.absolute_path)
        raise ScenarioSchemaError(f"schema violation at {path}: {e.message}") from e
    surface = data.get("surface", "plane")
    fields = {}
    for name, fd in data.get("fields", {}).items():
        fd = dict(fd)
        fd.setdefault("surface", surface)
        try:
            fields[name] = PlanarField.from_json(fd)
        except Exception as e:
            raise ScenarioSchemaError(f"field {name!r}: {e}") from e
    regions = {}
    for name, rd in data.get("regions", {}).items():
        try:
            regions[name] = Region.from_json(rd)
        except Exception as e:
            raise ScenarioSchemaError(f"region {name!r}: {e}") from e
    points = {}
    for name, pd in data.get("points", {}).items():
        try:
            points[name] = (Fraction(pd[0]), Fraction(pd[1]))
        except Exception as e:
            raise ScenarioSchemaError(f"point {name!r}: {e}") from e
    algebras = {}
    for name, ad in data.get("algebras", {}).items():
        missing = [b for b in ad["basis"] if b not in fields]
        if missing:
            raise ScenarioSchemaError(f"algebra {name!r} references unknown fields {missing}")
        algebras[name] = [fields[b] for b in ad["basis"]]
    tols = data.get("tolerances", {})
    tol = float(tols.get("tol", 1e-6))
    resolution = Fraction(tols.get("resolution", "1/64"))
    if resolution <= 0:
        raise ScenarioSchemaError("resolution must be positive")
    seed = int(data.get("seeds", {}).get("default", 0))
    return Scenario(data["name"], fields, regions, points, algebras, tol,
                    resolution, seed, list(data["checks"]), data.get("plot"))


class _Ctx:
    def __init__(self, scenario: Scenario, args: dict):
        self.s = scenario
        self.args = args

    def field(self, key, default=None):
        name = self.args.get(key, default)
        if name is None or name not in self.s.fields:
            raise ScenarioSchemaError(f"check argument {key!r} -> unknown field {name!r}")
        return self.s.fields[name]

    def region(self, key, default=None):
        name = self.args.get(key, default)
        if name is None or name not in self.s.regions:
            raise ScenarioSchemaError(f"check argument {key!r} -> unknown region {name!r}")
        return self.s.regions[name]

    def algebra(self, key):
        name = self.args.get(key)
        if name is None or name not in self.s.algebras:
            raise ScenarioSchemaError(f"check argument {key!r} -> unknown algebra {name!r}")
        return self.s.algebras[name]

    def point_list(self, key):
        names = self.args.get(key, [])
        out = []
        for n in names:
            if n not in self.s.points:
                raise ScenarioSchemaError(f"unknown point {n!r}")
            out.append(self.s.points[n])
        return out

    def point_list_single(self, key):
        n = self.args.get(key)
        if n not in self.s.points:
            raise ScenarioSchemaError(f"unknown point {n!r}")
        return self.s.points[n]

    @property
    def tol(self):
        return float(self.args.get("tol", self.s.tol))

    @property
    def resolution(self):
        return Fraction(self.args.get("resolution", self.s.resolution))

    def int_arg(self, key, default):
        return int(self.args.get(key, default))

    def float_arg(self, key, default):
        return float(self.args.get(key, default))


def _op_block_index(ctx: _Ctx):
    block = certify_block(ctx.field("X"), ctx.region("U"), ctx.resolution)
    result = block_index(block)
    comps = components(block.enclosure)
    data = {"index": result.to_json(),
            "boundary_margin": _frac_str(block.boundary_margin),
            "components": [c.to_json() for c in comps]}
    return data, True


def _op_certify_block(ctx: _Ctx):
    block = certify_block(ctx.field("X"), ctx.region("U"), ctx.resolution)
    return {"block": {"boundary_margin": _frac_str(block.boundary_margin),
                      "enclosure_boxes": len(block.enclosure.boxes)}}, True


def _op_jet_order(ctx: _Ctx):
    jo = jet_order(ctx.field("X"), ctx.point_list_single("p"),
                   ctx.int_arg("k", 1))
    return {"jet": jo.to_json()}, not jo.is_flat


def _op_tracks(ctx: _Ctx):
    cert = tracks_symbolic(ctx.field("Y"), ctx.field("X"))
    return {"certificate": cert.to_json()}, cert.verdict


def _op_tracking_residual(ctx: _Ctx):
    r = tracking_residual(ctx.field("Y"), ctx.field("X"), ctx.region("U"),
                          ctx.int_arg("n_samples", 1000), seed=ctx.s.seed)
    return {"residual": r}, None


def _op_wedge(ctx: _Ctx):
    verdict = wedge_check(ctx.field("Y"), ctx.field("Yp"), ctx.region("U"))
    return {"wedge": verdict.to_json()}, verdict.status == "equal"


def _op_homotopy(ctx: _Ctx):
    verdict = homotopy_invariance_check(ctx.field("X0"), ctx.field("X1"),
                                        ctx.region("U"), ctx.int_arg("steps", 10))
    return {"homotopy": verdict.to_json()}, verdict.status == "invariant"


def _op_perturbation_bound(ctx: _Ctx):
    block = certify_block(ctx.field("X"), ctx.region("U"), ctx.resolution,
                          tol=Fraction(1, 200))
    delta = perturbation_bound(block)
    return {"delta": _frac_str(delta), "delta_float": float(delta)}, True


def _op_double_cover(ctx: _Ctx):
    field = ctx.field("X")
    region = ctx.region("A")
    block = certify_block(field, region, ctx.resolution)
    base = block_index(block)
    _, lifted = lift_double_cover(field, region)
    return {"base_index": base.to_json(), "lifted_index": lifted.to_json()}, \
        lifted.index == 2 * base.index


def _op_orientability_of_field(ctx: _Ctx):
    field = ctx.field("X")

    def rep(x, y):
        vx, vy = field.eval_float(x, y)
        import math
        n = math.hypot(vx, vy)
        if n == 0:
            raise VfblockError("field vanishes on the core circle")
        return (vx / n, vy / n)

    lam = LineFieldRep(rep)
    result = orientability_check(lam, ctx.region("A"),
                                 ctx.int_arg("n_samples", 128))
    return {"orientable": result}, None


def _op_zero_invariance(ctx: _Ctx):
    x_field, y_field = ctx.field("X"), ctx.field("Y")
    block = certify_block(x_field, ctx.region("U"), ctx.resolution)
    rep = zero_invariance_check(x_field, y_field, block,
                                t_max=ctx.float_arg("t_max", 1.0),
                                n_points=ctx.int_arg("n_points", 8),
                                tol=ctx.float_arg("tol", 1e-8))
    return {"invariance": rep.to_json()}, rep.verdict


def _op_order_invariance(ctx: _Ctx):
    rep = order_invariance_check(ctx.field("X"), ctx.field("Y"),
                                 ctx.point_list_single("p"),
                                 ctx.float_arg("t", 1.0), ctx.int_arg("k", 1))
    return {"order_invariance": rep.to_json()}, rep.verdict


def _op_component_orders(ctx: _Ctx):
    rep = component_order_check(ctx.field("X"), ctx.point_list("points"),
                                ctx.int_arg("k", 1))
    return {"component_orders": rep.to_json()}, rep.verdict


def _op_factor_y_power(ctx: _Ctx):
    g1, g2 = factor_y_power(ctx.field("F"), ctx.int_arg("l", 1))
    return {"g": {"P": g1.to_json(), "Q": g2.to_json()}}, True


def _op_structure_constants(ctx: _Ctx):
    g = structure_constants(ctx.algebra("g"))
    data = {"algebra": g.to_json(), "antisymmetry": g.antisymmetry_holds(),
            "jacobi": g.jacobi_holds()}
    return data, g.closed


def _op_solvability(ctx: _Ctx):
    g = structure_constants(ctx.algebra("g"))
    r = solvability(g)
    return {"solvability": r.to_json()}, None


def _op_supersolvable(ctx: _Ctx):
    g = structure_constants(ctx.algebra("g"))
    if solvability(g).status == "not_solvable":
        return {"flag": {"status": "not_solvable"}}, None
    r = supersolvable_flag(g, ctx.tol)
    return {"flag": r.to_json()}, None


def _op_algebra_tracks(ctx: _Ctx):
    g = structure_constants(ctx.algebra("g"))
    r = algebra_tracks(g, ctx.field("X"))
    return {"algebra_tracking": r.to_json()}, r.verdict


def _op_common_zero_set(ctx: _Ctx):
    g = structure_constants(ctx.algebra("g"))
    enc = common_zero_set(g, ctx.region("U"), ctx.resolution)
    return {"common_zeros": enc.to_json()}, None


def _theorem_outcome(report):
    status = report.overall["status"]
    data = {"report": report.to_json()}
    if status == "Pass":
        return data, True
    if status == "Inconclusive":
        return data, "inconclusive"
    return data, False


def _op_verify_main(ctx: _Ctx):
    report = verify_main(ctx.field("X"), ctx.field("Y"), ctx.region("U"),
                         k=ctx.int_arg("k", 1), resolution=ctx.resolution,
                         tol=ctx.tol, known_zeros=ctx.point_list("known_zeros"))
    return _theorem_outcome(report)


def _op_verify_mainbis(ctx: _Ctx):
    report = verify_mainbis(ctx.field("X"), ctx.field("Y"), ctx.region("U"),
                            k=ctx.int_arg("k", 1), resolution=ctx.resolution,
                            tol=ctx.tol, known_zeros=ctx.point_list("known_zeros"))
    return _theorem_outcome(report)


def _op_verify_liealg(ctx: _Ctx):
    report = verify_liealg(ctx.algebra("g"), ctx.field("X"), ctx.region("U"),
                           k=ctx.int_arg("k", 1), resolution=ctx.resolution,
                           known_zeros=ctx.point_list("known_zeros"))
    return _theorem_outcome(report)


CHECK_OPS = {
    "certify_block": _op_certify_block,
    "block_index": _op_block_index,
    "jet_order": _op_jet_order,
    "tracks": _op_tracks,
    "tracking_residual": _op_tracking_residual,
    "wedge": _op_wedge,
    "homotopy": _op_homotopy,
    "perturbation_bound": _op_perturbation_bound,
    "double_cover": _op_double_cover,
    "orientability_of_field": _op_orientability_of_field,
    "zero_invariance": _op_zero_invariance,
    "order_invariance": _op_order_invariance,
    "component_orders": _op_component_orders,
    "factor_y_power": _op_factor_y_power,
    "structure_constants": _op_structure_constants,
    "solvability": _op_solvability,
    "supersolvable": _op_supersolvable,
    "algebra_tracks": _op_algebra_tracks,
    "common_zero_set": _op_common_zero_set,
    "verify_main": _op_verify_main,
    "verify_mainbis": _op_verify_mainbis,
    "verify_liealg": _op_verify_liealg,
}


def _match_expectation(expect: dict, data: dict) -> bool:
    """Shallow dotted-path comparison against the check's data."""
    for path, wanted in expect.items():
        node = data
        for part in path.split("."):
            if not isinstance(node, dict) or part not in node:
                return False
            node = node[part]
        if isinstance(wanted, float):
            if not isinstance(node, (int, float)) or abs(node - wanted) > 1e-9:
                return False
        elif node != wanted:
            return False
    return True


@dataclass
class CheckOutcome:
    name: str
    op: str
    verdict: str
    data: dict = dc_field(default_factory=dict)
    expected_ok: bool | None = None

    def to_json(self) -> dict:
        out = {"name": self.name, "op": self.op, "verdict": self.verdict,
               "data": self.data}
        if self.expected_ok is not None:
            out["expectation_matched"] = self.expected_ok
        return out

    @property
    def severity(self) -> int:
        worst = _SEVERITY[self.verdict]
        if self.expected_ok is False:
            worst = max(worst, _SEVERITY[FAIL])
        return worst


@dataclass
class ScenarioReport:
    name: str
    checks: list

    @property
    def exit_code(self) -> int:
        if not self.checks:
            return 0
        worst = max(c.severity for c in self.checks)
        for verdict, sev in _SEVERITY.items():
            if sev == worst:
                return _EXIT_CODE[verdict]
        return 2

    def to_json(self) -> dict:
        return {"scenario": self.name,
                "checks": [c.to_json() for c in self.checks],
                "exit_code": self.exit_code}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2) + "\n"


def run_scenario(source) -> ScenarioReport:
    """Execute a scenario from a path, JSON string or dict."""
    if isinstance(source, dict):
        data = source
    else:
        try:
            text = open(source, "r", encoding="utf-8").read() \
                if not str(source).lstrip().startswith("{") else str(source)
            data = json.loads(text)
        except OSError as e:
            raise ScenarioSchemaError(f"cannot read scenario: {e}") from e
        except json.JSONDecodeError as e:
            raise ScenarioSchemaError(
                f"malformed JSON at line {e.lineno}, column {e.colno}: {e.msg}"
            ) from e
    scenario = parse_scenario(data)
    outcomes = []
    for i, check in enumerate(scenario.checks):
        op = check["op"]
        name = check.get("name", f"{op}#{i}")
        handler = CHECK_OPS.get(op)
        if handler is None:
            raise ScenarioSchemaError(
                f"unknown op {op!r}; known: {sorted(CHECK_OPS)}")
        ctx = _Ctx(scenario, check.get("args", {}))
        try:
            data_out, ok = handler(ctx)
        except ScenarioSchemaError:
            raise
        except VfblockError as e:
            outcomes.append(CheckOutcome(name, op, ERROR,
                                         {"error": type(e).__name__,
                                          "message": str(e)}))
            continue
        if ok is True or ok is None:
            verdict = PASS
        elif ok == "inconclusive":
            verdict = INCONCLUSIVE
        else:
            verdict = FAIL
        expected_ok = None
        if "expect" in check:
            expected_ok = _match_expectation(check["expect"], data_out)
        outcomes.append(CheckOutcome(name, op, verdict, data_out, expected_ok))
    return ScenarioReport(scenario.name, outcomes)
