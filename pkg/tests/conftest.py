from fractions import Fraction

import pytest

from heckemu.local import LocalCharacter, LocalPlace, TableCharacter, UnitRing, unit_group
from heckemu.scalars import AmbientField


def make_star(place: LocalPlace, z, e: int = 0, table=None) -> LocalCharacter:
    """lambda* on a field place from a unit table and the stored value lambda(varpi)."""
    ring = UnitRing(place, e)
    if table is None:
        table = {ring.one(): z.field.one()}
    return LocalCharacter(place, (TableCharacter(ring, table, z),), -1)


def residual_tables(place: LocalPlace, field: AmbientField, e: int = 1):
    """Every unit table of exact conductor e with values in the field."""
    pres = unit_group(place, e)
    kernel = pres.ring.kernel_of_reduction()
    for exps in pres.all_exponents(field.N):
        table = pres.table(exps, field)
        if e and all(table[lab] == 1 for lab in kernel):
            continue
        yield table


@pytest.fixture(scope="session")
def q60():
    return AmbientField.of(60)


@pytest.fixture(scope="session")
def inert3():
    return LocalPlace(3, "inert")


@pytest.fixture
def third():
    return Fraction(1, 3)
