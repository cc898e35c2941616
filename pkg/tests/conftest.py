"""Shared fields and regions for the suite."""

from fractions import Fraction

import pytest

from vfblock.fields import plane_field, torus_field
from vfblock.poly import Poly2, X, Y
from vfblock.regions import annulus, disk
from vfblock.trig import TrigPoly2


@pytest.fixture(scope="session")
def euler():
    return plane_field(X, Y)


@pytest.fixture(scope="session")
def rotation():
    return plane_field(-Y, X)


@pytest.fixture(scope="session")
def saddle():
    return plane_field(X, -Y)


@pytest.fixture(scope="session")
def dipole():
    return plane_field(X ** 2 - Y ** 2, 2 * X * Y)


@pytest.fixture(scope="session")
def circle_field():
    # (1 - x^2 - y^2) * (-y, x): vanishes on the unit circle and at the origin
    rho = 1 - X ** 2 - Y ** 2
    return plane_field(rho * (-Y), rho * X)


@pytest.fixture(scope="session")
def saddle_pair_field():
    # zeros at (+-1, 0), each of index +1
    return plane_field(X ** 2 - 1, X * Y)


@pytest.fixture(scope="session")
def const_east():
    return plane_field(Poly2.const(1), Poly2.zero())


@pytest.fixture(scope="session")
def torus_sin():
    return torus_field(TrigPoly2.term(1, 0, "sc", 1), TrigPoly2.term(0, 1, "cs", 1))


@pytest.fixture(scope="session")
def unit_disk():
    return disk((0, 0), 1)


@pytest.fixture(scope="session")
def std_annulus():
    return annulus((0, 0), Fraction(1, 2), Fraction(3, 2))
