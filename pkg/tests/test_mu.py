from fractions import Fraction

import pytest

from heckemu.family import validate_family
from heckemu.local import DomainError, LocalPlace
from heckemu.mu import (CASE_II, NOT_RSD, PLAIN_SUM, RSD_NOT_SD, SELF_DUAL, SELF_DUAL_PLUS, classify,
                        global_root_number, mu_family, mu_local, unit_mu)
from heckemu.samples import SAMPLES
from heckemu.scalars import INFINITY, AmbientField, prime_above

from conftest import make_star, residual_tables


@pytest.fixture(scope="module")
def families():
    return {k: validate_family(build()) for k, build in SAMPLES.items()}


def test_mu_local_trivial_is_infinite():
    f = AmbientField.of(60)
    place = LocalPlace(3, "inert")
    # stored lambda(varpi) = 1 with lambda* = lambda |.|^-1/2: lambda itself is trivial
    assert mu_local(make_star(place, f.one()), prime_above(f, 5)) == INFINITY


def test_mu_local_order_five():
    f = AmbientField.of(60)
    place = LocalPlace(3, "inert")
    assert mu_local(make_star(place, f.zeta(12)), prime_above(f, 5)) == Fraction(1, 4)


def test_mu_local_order_seven():
    f = AmbientField.of(420)
    place = LocalPlace(3, "inert")
    assert mu_local(make_star(place, f.zeta(60)), prime_above(f, 5)) == 0


def test_mu_local_sees_the_unit_table():
    f = AmbientField.of(60)
    place = LocalPlace(3, "inert")
    t = next(iter(residual_tables(place, f)))
    chi = make_star(place, f.one(), 1, t)
    plan = prime_above(f, 5)
    assert mu_local(chi, plan) == unit_mu(chi, plan) == min(plan.ordp(v - 1) for v in t.values())


def test_mu_local_refuses_split_places():
    from heckemu.local import char_build
    f = AmbientField.of(60)
    chi = char_build(LocalPlace(5, "split"), (0, 0), ({0: 1}, {0: 1}), (f.one(), f.one()))
    with pytest.raises(DomainError):
        mu_local(chi, prime_above(f, 5))


def test_classification_of_samples(families):
    kinds = {k: classify(fam).kind for k, fam in families.items()}
    assert kinds == {"a": SELF_DUAL, "b": SELF_DUAL, "c": RSD_NOT_SD, "d": NOT_RSD}


def test_not_rsd_has_an_inert_witness(families):
    witness = classify(families["d"]).witness
    assert witness is not None and witness["inert_prime"] % 4 == 3


def test_root_numbers(families):
    assert classify(families["a"]).global_root_number == 1
    assert classify(families["b"]).global_root_number == -1
    assert global_root_number(families["a"]) == 1


def test_inert_sign_classes(families):
    cls = classify(families["a"])
    assert {cls.delta_plus, cls.delta_minus} == {0, 1}


def test_mu_family_branches(families):
    a = mu_family(families["a"])
    assert (a.branch, a.mu_family) == (SELF_DUAL_PLUS, 0)
    b = mu_family(families["b"])
    assert b.mu_family == INFINITY
    d = mu_family(families["d"])
    assert (d.branch, d.mu_family) == (PLAIN_SUM, 0)


def test_case_two_reports_both_candidates(families):
    c = mu_family(families["c"])
    assert c.branch == CASE_II
    assert (c.mu1, c.mu2) == (Fraction(5, 4), Fraction(1))
    assert c.mu_family == min(c.mu1, c.mu2) == 1
    doc = c.to_json()
    assert doc["mu_local_by_place"] == {"2": "0", "19": "1/4"}
    assert doc["classification"]["residual_root_number"] == -1
