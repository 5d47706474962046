from fractions import Fraction

import pytest
import sympy

from heckemu.epsilon import gauss_sum
from heckemu.local import DomainError, LocalPlace, char_build, components
from heckemu.scalars import AmbientField
from heckemu.whittaker import (FOURIER_TRANSFORM, GOOD, INDICATOR_OF_O, INDICATOR_OF_UNITS, NSPLIT, S0, SPLIT1,
                               PlaceRole, PoleError, SchwartzDescriptor, a_beta_closed, a_beta_oracle,
                               a_prime_closed, local_L, tate_zeta_oracle, w_star)

from conftest import make_star, residual_tables

F = Fraction


@pytest.fixture(scope="module")
def setting():
    f = AmbientField.of(60)
    place = LocalPlace(3, "inert")
    tables = [t for t in residual_tables(place, f) if all(t[(a, 0)] == 1 for a in (1, 2))]
    return f, place, place.canonical_theta(), tables


def test_lambda1_unramified(setting):
    f, place, theta, _ = setting
    lam1 = make_star(place, -f.one() / 3)
    values = {b: a_beta_oracle(lam1, theta, b) for b in (F(1, 9), F(1, 3), F(1), F(3), F(9), F(27))}
    # frozen from the oracle: zero at odd order, 4/3 at even order
    assert values == {F(1, 9): 0, F(1, 3): 0, F(1): F(4, 3), F(3): 0, F(9): F(4, 3), F(27): 0}
    for b, v in values.items():
        assert a_beta_closed(lam1, b, theta) == v


def test_lambda1_conductor_one(setting):
    """lambda*(varpi) = -1 with a residual character trivial on F_3^x: the constant terms of the closed form."""
    f, place, theta, tables = setting
    for t in tables:
        chi = make_star(place, -f.one() / 3, 1, t)
        assert a_beta_oracle(chi, theta, F(3)) == F(-4, 3)
        assert a_beta_oracle(chi, theta, F(1)) == 0
        assert a_beta_closed(chi, F(3), theta) == F(-4, 3)
        assert a_beta_closed(chi, F(1), theta) == 0


def test_deep_negative_order_vanishes(setting):
    f, place, theta, tables = setting
    for chi in (make_star(place, f.zeta(12) / 3), make_star(place, f.zeta(5) / 3, 1, tables[0])):
        for b in (F(1, 9), F(2, 27), F(5, 81)):
            assert a_beta_oracle(chi, theta, b) == 0
            assert a_beta_closed(chi, b, theta) == 0


def test_linear_coefficient_at_even_order(setting):
    """At ord beta = 2, A is a cubic in t = lambda*(varpi) + 1 with t-coefficient -1/q - (1 + 1/q)."""
    f, place, theta, tables = setting
    t = sympy.Symbol("t")
    for evaluate in (lambda c: a_beta_oracle(c, theta, F(9)), lambda c: a_beta_closed(c, F(9), theta),
                     lambda c: a_prime_closed(c, F(9))):
        points = []
        for w in (-1, 1, 2, -2, 3):
            chi = make_star(place, f.rational(F(w, 3)), 1, tables[0])
            points.append((w + 1, sympy.Rational(str(evaluate(chi).to_rational()))))
        poly = sympy.Poly(sympy.interpolate(points, t), t)
        assert poly.coeff_monomial(t) == sympy.Rational(-1, 3) - (1 + sympy.Rational(1, 3))


def test_closed_form_matches_oracle_on_roots_of_unity(setting):
    f, place, theta, tables = setting
    for z in (f.zeta(k) for k in (0, 5, 12, 20, 30)):
        for t in [None] + tables:
            chi = make_star(place, z / 3, 1 if t else 0, t)
            for b in (F(1, 3), F(2), F(4, 3), F(5, 9), F(7, 1), F(81), F(18)):
                assert a_beta_closed(chi, b, theta) == a_beta_oracle(chi, theta, b)


def test_closed_form_refuses_outside_its_domain(setting):
    f, place, theta, _ = setting
    t = next(iter(residual_tables(place, f, 2)))
    with pytest.raises(DomainError):
        a_beta_closed(make_star(place, f.one(), 2, t), F(3), theta)
    ram = LocalPlace(3, "ramified")
    with pytest.raises(DomainError):
        a_beta_closed(make_star(ram, f.one()), F(3))


def test_oracle_needs_trace_zero(setting):
    f, place, _, _ = setting
    with pytest.raises(DomainError):
        a_beta_oracle(make_star(place, f.one()), place.element(1, 1), F(3))


def test_w_star_good_inert(setting):
    f, place, _, _ = setting
    chi = make_star(place, -f.one() / 3)
    good = PlaceRole(GOOD)
    assert w_star(good, chi, F(9)) == 1
    assert w_star(good, chi, F(3)) == 0
    assert w_star(good, chi, F(1, 3)) == 0
    assert w_star(PlaceRole(GOOD, c_exponent=1), chi, F(3)) == 1


def test_w_star_s0_and_nsplit(setting):
    f, place, theta, _ = setting
    chi = make_star(place, -f.one() / 3)
    assert w_star(PlaceRole(S0), chi, F(2, 5)) == 1
    assert w_star(PlaceRole(S0), chi, F(2, 3)) == 0
    assert w_star(PlaceRole(NSPLIT), chi, F(9), theta) == a_beta_oracle(chi, theta, F(9))


def test_w_star_split1_ramified(q60):
    place = LocalPlace(5, "split")
    z = q60.zeta(12)
    chi = char_build(place, (1, 0), ({1: 1, 2: q60.zeta(15), 3: q60.zeta(45), 4: -1}, {0: 1}), (z, q60.one()))
    lam_w, lam_wbar = components(chi)
    for beta in (F(2), F(3, 7), F(4)):
        assert w_star(PlaceRole(SPLIT1), chi, beta) == lam_wbar.inverse()(beta) * chi(beta)
    # lambda_wbar unramified: the test function is 1_O
    assert w_star(PlaceRole(SPLIT1), chi, F(5)) == chi(F(5))
    assert w_star(PlaceRole(SPLIT1), chi, F(1, 5)) == 0


def test_w_star_role_mismatch(setting):
    f, place, _, _ = setting
    with pytest.raises(DomainError):
        w_star(PlaceRole(SPLIT1), make_star(place, f.one()), F(1))


def test_local_L(setting, q60):
    f, place, _, tables = setting
    assert local_L(make_star(place, -f.one() / 3)) == F(1, 2)
    assert local_L(make_star(place, f.one(), 1, tables[0])) == 1
    with pytest.raises(PoleError):
        local_L(make_star(place, f.one() / 3))


@pytest.fixture(scope="module")
def split3():
    f = AmbientField.of(60)
    place = LocalPlace(3, "split")
    quad = char_build(place, (1, 1), ({1: 1, 2: -1}, {1: 1, 2: -1}), (f.one(), f.one()))
    minus = char_build(place, (0, 0), ({0: 1}, {0: 1}), (-f.one(), -f.one()))
    trivial = char_build(place, (0, 0), ({0: 1}, {0: 1}), (f.one(), f.one()))
    return components(quad)[0], components(minus)[0], components(trivial)[0]


def test_tate_zeta_matches_L(split3):
    _, minus, _ = split3
    assert tate_zeta_oracle(SchwartzDescriptor(INDICATOR_OF_O, 3), minus) == F(1, 2) == local_L(minus)


def test_tate_zeta_unit_shell(split3):
    _, minus, _ = split3
    # vol(Z_l^x) = 1 in the measure used here
    assert tate_zeta_oracle(SchwartzDescriptor(INDICATOR_OF_UNITS, 3), minus) == 1


def test_tate_zeta_fourier_transform_gives_gauss_sum(split3):
    quad, _, _ = split3
    value = tate_zeta_oracle(SchwartzDescriptor(FOURIER_TRANSFORM, 3, quad), quad.inverse())
    assert value == gauss_sum(quad)


def test_tate_zeta_pole(split3):
    _, _, trivial = split3
    with pytest.raises(PoleError):
        tate_zeta_oracle(SchwartzDescriptor(INDICATOR_OF_O, 3), trivial)
