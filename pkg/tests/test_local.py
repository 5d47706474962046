from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heckemu.local import (CharacterError, DomainError, LocalPlace, char_build, char_dual, char_eval,
                           char_inverse, character_from_json, character_product, character_to_json,
                           kv_norm_trace, mod_ell_power, psi_eval, unit_group, vl)
from heckemu.scalars import AmbientField, FieldTooSmall

from conftest import make_star, residual_tables


def test_vl():
    assert vl(Fraction(18, 5), 3) == 2
    assert vl(Fraction(5, 27), 3) == -3
    assert mod_ell_power(Fraction(1, 2), 3, 2) == 5


def test_psi_on_integers_is_one():
    f = AmbientField.of(36)
    assert psi_eval(f, 3, 7) == 1


def test_psi_values():
    f = AmbientField.of(36)
    assert psi_eval(f, 3, Fraction(1, 3)) == f.zeta(12)
    assert psi_eval(f, 3, Fraction(1, 3) + Fraction(2, 9)) == f.zeta(20)


def test_psi_is_additive():
    f = AmbientField.of(36)
    a, b = Fraction(4, 9), Fraction(7, 3)
    assert psi_eval(f, 3, a + b) == psi_eval(f, 3, a) * psi_eval(f, 3, b)


def test_psi_reads_rationals_l_adically():
    f = AmbientField.of(36)
    assert psi_eval(f, 3, Fraction(1, 5)) == 1
    # 1/15 = 2/3 + (a 3-adic integer)
    assert psi_eval(f, 3, Fraction(1, 15)) == f.zeta(24)


def test_psi_needs_a_big_enough_field():
    with pytest.raises((FieldTooSmall, DomainError)):
        psi_eval(AmbientField.of(12), 3, Fraction(1, 9))


def test_norm_trace():
    split = LocalPlace(5, "split")
    assert kv_norm_trace(split, split.element(2, 3)) == (6, 5)
    inert = LocalPlace(3, "inert", (0, 1))
    assert kv_norm_trace(inert, inert.element(2, 5)) == (29, 4)


def test_inert_needs_irreducible_poly():
    with pytest.raises(DomainError):
        LocalPlace(5, "inert", (0, 1))


def test_trivial_character(q60, inert3):
    chi = char_build(inert3, 0, {(0, 0): 1}, q60.one())
    assert chi.is_trivial()
    assert char_eval(chi, inert3.element(4, 7)) == 1


def test_half_twist_on_trivial_character(q60, inert3):
    chi = char_build(inert3, 0, {(0, 0): 1}, q60.one(), half_twist=2)
    # |3|_{K_v} = 1/9
    assert char_eval(chi, 3) == Fraction(1, 9)
    assert char_eval(chi, inert3.element(1, 1)) == 1


def test_order_eight_residual_character_on_f9(inert3):
    f = AmbientField.of(24)
    ring = unit_group(inert3, 1).ring
    assert len(ring.labels()) == 8
    # 1 + eta generates F_9^x (eta^2 = -1): send it to zeta_8
    g, images, x = (1, 1), {}, ring.one()
    for k in range(8):
        images[x] = f.zeta(3 * k)
        x = ring.mul(x, g)
    assert len(images) == 8
    chi = char_build(inert3, 1, images, f.one())
    assert chi.conductor == 1
    assert char_eval(chi, inert3.element(1, 1)) == f.zeta(3)


def test_multiplicativity_failure_names_a_pair(q60, inert3):
    ring = unit_group(inert3, 1).ring
    table = {lab: q60.one() for lab in ring.labels()}
    table[ring.labels()[1]] = -q60.one()
    with pytest.raises(CharacterError) as info:
        char_build(inert3, 1, table, q60.one())
    assert info.value.witness is not None


def test_non_minimal_conductor_rejected(q60, inert3):
    ring = unit_group(inert3, 1).ring
    with pytest.raises(CharacterError, match="conductor not minimal"):
        char_build(inert3, 1, {lab: 1 for lab in ring.labels()}, q60.one())


def test_evaluation_at_zero(q60, inert3):
    chi = make_star(inert3, q60.one())
    with pytest.raises(DomainError):
        char_eval(chi, 0)


def test_lambda1_at_three(q60, inert3):
    lam1 = make_star(inert3, -q60.one() / 3)
    assert lam1(3) == -1


def _inert_characters():
    f = AmbientField.of(60)
    place = LocalPlace(3, "inert")
    out = []
    for z in (f.one(), -f.one() / 3, f.zeta(12), f.zeta(5) / 3):
        out.append(make_star(place, z))
        for table in list(residual_tables(place, f))[:6]:
            out.append(make_star(place, z, 1, table))
    return out


CHARS = _inert_characters()
PLACE = CHARS[0].place
units = st.tuples(st.integers(-40, 40), st.integers(-40, 40)).filter(lambda t: t != (0, 0))
elements = st.tuples(units, st.integers(-3, 3)).map(
    lambda t: PLACE.element(t[0][0], t[0][1]) * PLACE.element(Fraction(3) ** t[1]))


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(CHARS), elements, elements)
def test_characters_are_multiplicative(chi, x, y):
    assert chi(x * y) == chi(x) * chi(y)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(CHARS), elements)
def test_dual_is_an_involution(chi, x):
    dd = char_dual(char_dual(chi))
    assert dd.conductor == chi.conductor
    assert dd(x) == chi(x)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(CHARS), elements)
def test_dual_formula(chi, x):
    # lambda^vee(x) = lambda(conj(x))^-1 |x|
    lam = chi.unstar()
    dual = char_dual(lam)
    assert dual.conductor == lam.conductor
    assert dual(x) == char_eval(lam, x.conj()).inverse() * Fraction(x.abs_value())


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(CHARS), elements)
def test_inverse_and_product(chi, x):
    prod = character_product(chi, char_inverse(chi))
    assert prod.conductor == 0
    assert prod(x) == 1


def test_json_round_trip(q60):
    for chi in CHARS[:8]:
        back = character_from_json(character_to_json(chi), chi.field)
        for x in (PLACE.element(1, 2), PLACE.element(3), PLACE.element(Fraction(1, 3), 1)):
            assert back(x) == chi(x)


def test_split_character_components():
    f = AmbientField.of(60)
    place = LocalPlace(5, "split")
    chi = char_build(place, (1, 0), ({1: 1, 2: f.zeta(15), 3: f.zeta(45), 4: -1}, {0: 1}),
                     (f.one(), f.zeta(12)))
    assert chi.conductor == (1, 0)
    assert chi(place.element(2, 5)) == f.zeta(15) * f.zeta(12)
