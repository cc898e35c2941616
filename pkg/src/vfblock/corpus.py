"""Randomized scenario corpus: tracking pairs with symbolic certificates.

Scenarios are built so the main theorem's hypotheses hold by construction:
X is a nondegenerate linear field, R a linear symmetry commuting with X, g a
random polynomial, and Y = R + g*X.  The bracket [R, X] vanishes and
[gX, X] = -(X . grad g) X is parallel to X, so tracking always certifies
symbolically.  The harness then demands that no run ever reports
ConclusionFailed with every hypothesis certified.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .fields import plane_field
from .poly import Poly2, X, Y
from .regions import disk
from .verifier import TheoremReport, verify_main


def random_poly(rng: random.Random, degree: int = 2, span: int = 3) -> Poly2:
    terms = {}
    for i in range(degree + 1):
        for j in range(degree + 1 - i):
            if rng.random() < 0.6:
                num = rng.randint(-span, span)
                den = rng.choice((1, 1, 2))
                if num:
                    terms[(i, j)] = Fraction(num, den)
    return Poly2(terms)


def _commuting_pair(rng: random.Random):
    """A nondegenerate linear X plus a random linear R with [R, X] = 0."""
    kind = rng.choice(("diagonal", "conformal"))
    if kind == "diagonal":
        a = rng.choice((1, 2, 3))
        d = rng.choice((1, 2, 3))
        x_field = plane_field(a * X, d * Y)
        # diagonal fields commute with each other
        ra = rng.randint(-2, 2)
        rd = rng.randint(-2, 2)
        r_field = plane_field(ra * X, rd * Y)
    else:
        # X = E + mu * rot; anything in span{E, rot} commutes with it
        mu = Fraction(rng.randint(-2, 2))
        x_field = plane_field(X - mu * Y, mu * X + Y)
        ra = Fraction(rng.randint(-2, 2))
        rb = Fraction(rng.randint(-2, 2))
        r_field = plane_field(ra * X - rb * Y, rb * X + ra * Y)
    return x_field, r_field


def random_tracking_scenario(rng: random.Random):
    """(X, Y, U, known_zeros) with Y = R + g*X tracking X by construction."""
    x_field, r_field = _commuting_pair(rng)
    g = random_poly(rng, degree=rng.choice((1, 2)))
    y_field = r_field + x_field.times_scalar_poly(g)
    return x_field, y_field, disk((0, 0), 1), ((0, 0),)


@dataclass
class FalsificationSummary:
    runs: int
    passes: int
    hypothesis_failures: int
    inconclusive: int
    conclusion_failures: int
    failures: list

    def to_json(self) -> dict:
        return {
            "runs": self.runs,
            "passes": self.passes,
            "hypothesis_failures": self.hypothesis_failures,
            "inconclusive": self.inconclusive,
            "conclusion_failures": self.conclusion_failures,
        }


def falsification_run(count: int = 200, seed: int = 0,
                      resolution=Fraction(1, 16)) -> FalsificationSummary:
    """Run `count` randomized tracking scenarios through the MAIN verifier and
    tally outcomes; any ConclusionFailed is collected with full diagnostics."""
    rng = random.Random(seed)
    passes = hyp_fail = inconclusive = concl_fail = 0
    failures = []
    for _ in range(count):
        x_field, y_field, region, zeros = random_tracking_scenario(rng)
        report: TheoremReport = verify_main(
            x_field, y_field, region, k=1, resolution=resolution,
            known_zeros=zeros)
        status = report.overall["status"]
        if status == "Pass":
            passes += 1
        elif status == "HypothesisFailed":
            hyp_fail += 1
        elif status == "Inconclusive":
            inconclusive += 1
        else:
            concl_fail += 1
            failures.append({
                "x": x_field.to_json(),
                "y": y_field.to_json(),
                "report": report.to_json(),
            })
    return FalsificationSummary(count, passes, hyp_fail, inconclusive,
                                concl_fail, failures)
