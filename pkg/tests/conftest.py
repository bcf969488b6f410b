from fractions import Fraction

import pytest

from cocycle_forge import (
    AbelianRepresentative,
    CocycleLift,
    cartan_cocycle,
    killing_form,
    sl2,
    standard_r_matrix,
)
from cocycle_forge.enveloping import PBWAlgebra
from cocycle_forge.homotopy import EulerianHomotopy

Q = Fraction


@pytest.fixture(scope="session")
def sl2_algebra():
    return sl2()


@pytest.fixture(scope="session")
def sl2_killing(sl2_algebra):
    return killing_form(sl2_algebra)


@pytest.fixture(scope="session")
def sl2_cartan(sl2_algebra, sl2_killing):
    return cartan_cocycle(sl2_algebra, sl2_killing)


@pytest.fixture(scope="session")
def sl2_pbw(sl2_algebra):
    return PBWAlgebra(sl2_algebra)


@pytest.fixture(scope="session")
def sl2_homotopy(sl2_pbw):
    return EulerianHomotopy(sl2_pbw)


@pytest.fixture(scope="session")
def sl2_lift(sl2_algebra, sl2_cartan, sl2_homotopy):
    return CocycleLift(sl2_algebra, sl2_cartan, sl2_homotopy)


@pytest.fixture(scope="session")
def sl2_representative(sl2_lift, sl2_algebra, sl2_killing):
    return AbelianRepresentative(sl2_lift, standard_r_matrix(sl2_algebra, sl2_killing))
