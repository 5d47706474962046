from fractions import Fraction

import pytest

from heckemu.local import LocalPlace
from heckemu.mu import mu_local
from heckemu.scalars import AmbientField, prime_above
from heckemu.verify import (OK, Entry, _dual_star, build_battery, check_duality, check_trichotomy, pe4_case,
                            restriction_kind)

from conftest import make_star


@pytest.fixture(scope="module")
def battery():
    return build_battery("quick")


def test_battery_is_deterministic(battery):
    again = build_battery.__wrapped__("quick")
    assert [e.label for e in again.generic] == [e.label for e in battery.generic]
    assert battery.summary() == {"size": "quick", "generic": 357, "self_dual": 110,
                                 "residually_self_dual": 277, "split_self_dual": 70}


def test_self_dual_entries_are_residually_self_dual(battery):
    residual = {e.label for e in battery.residual}
    assert {e.label for e in battery.self_dual} <= residual


def test_duality_on_ramified_characters(battery):
    res = check_duality(battery)
    assert res.status == OK and res.checked > 0


def test_trichotomy_on_ramified_characters(battery):
    res = check_trichotomy(battery)
    assert res.status == OK
    cases = res.notes[0]
    assert all(cases[f"case_{k}"] > 0 for k in (1, 2, 3))


def test_unramified_counterexample():
    """An unramified self-dual character at an inert place with mu > 1/(p-1).

    lambda*(varpi) = -1 at l = 2, p = 3: lambda(varpi) = -1/2 and
    mu = ord_3(-3/2) = 1.  The bound and the case (1) sign split both need
    ramification; see the decision log.
    """
    field = AmbientField.of(36)
    plan = prime_above(field, 3)
    place = LocalPlace(2, "inert")
    chi = make_star(place, -field.one() / 2)
    assert restriction_kind(chi, plan) == "sd"
    assert mu_local(chi, plan) == 1 > Fraction(1, 2)
    assert mu_local(_dual_star(chi), plan) == 1
    assert pe4_case(Entry("counterexample", chi, 3, plan))[0] == 1
