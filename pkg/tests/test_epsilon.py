from fractions import Fraction

import pytest

from heckemu.epsilon import (NORMALIZATION_TAG, gamma_ratio, gauss_sum, hilbert_symbol, local_epsilon,
                             root_ratio, sign_mod_mp, tau)
from heckemu.local import DomainError, LocalPlace, char_build, char_dual, char_eval, components
from heckemu.scalars import AmbientField, prime_above
from heckemu.whittaker import a_beta_oracle

from conftest import make_star, residual_tables


@pytest.fixture(scope="module")
def quadratic3():
    f = AmbientField.of(60)
    place = LocalPlace(3, "split")
    chi = char_build(place, (1, 1), ({1: 1, 2: -1}, {1: 1, 2: -1}), (f.one(), f.one()))
    return components(chi)[0]


def test_gauss_sum_of_unramified_is_one(q60):
    place = LocalPlace(5, "split")
    chi = char_build(place, (0, 0), ({0: 1}, {0: 1}), (q60.one(), q60.one()))
    assert gauss_sum(components(chi)[0]) == 1


def test_gauss_sum_quadratic_mod_3(quadratic3, q60):
    assert gauss_sum(quadratic3) == (q60.zeta(20) - q60.zeta(40)) / 3


def test_gauss_sum_norm(quadratic3):
    # G(chi) G(chi^-1) chi(-1) = |l^e| = 1/3
    g = gauss_sum(quadratic3) * gauss_sum(quadratic3.inverse()) * quadratic3(-1)
    assert g == Fraction(1, 3)


def test_epsilon_unramified_inert(q60, inert3):
    for z in (q60.one(), -q60.one() / 3, q60.zeta(12) / 3):
        eps = local_epsilon(make_star(inert3, z))
        assert eps.value == 1
        assert eps.normalization_tag == NORMALIZATION_TAG


def test_root_ratio_inert_signs(q60, inert3):
    theta = inert3.canonical_theta()
    assert root_ratio(make_star(inert3, -q60.one() / 3), theta) == 1
    self_dual = [t for t in residual_tables(inert3, q60)
                 if all(char_eval(make_star(inert3, q60.one(), 1, t), inert3.element(a)) == 1 for a in (1, 2))]
    assert len(self_dual) == 3
    for t in self_dual:
        assert root_ratio(make_star(inert3, -q60.one() / 3, 1, t), theta) == -1


def test_root_ratio_split_self_dual(q60):
    place = LocalPlace(5, "split")
    z = q60.zeta(12)
    chi = char_build(place, (1, 1), ({1: 1, 2: q60.zeta(15), 3: q60.zeta(45), 4: -1},
                                     {1: 1, 2: q60.zeta(45), 3: q60.zeta(15), 4: -1}), (z, z.inverse()))
    assert root_ratio(chi, place.canonical_theta()) == 1


def test_root_ratio_needs_trace_zero(q60, inert3):
    with pytest.raises(DomainError):
        root_ratio(make_star(inert3, q60.one()), inert3.element(1, 1))


def test_gamma_ratio(q60, inert3):
    assert gamma_ratio(make_star(inert3, -q60.one() / 3)) == 1
    t = next(iter(residual_tables(inert3, q60)))
    assert gamma_ratio(make_star(inert3, q60.zeta(12) / 3, 1, t)) == 1
    # w = lambda*(varpi) = i, q = 9: (1 - 1/(3i)) / (1 - i/3)
    g = gamma_ratio(make_star(inert3, q60.zeta(15) / 3))
    i = q60.zeta(15)
    assert g == (1 - (3 * i).inverse()) / (1 - i / 3)


def test_hilbert_symbol():
    assert hilbert_symbol(-1, -1, 2) == -1
    assert hilbert_symbol(2, 3, 3) == -1
    assert hilbert_symbol(5, 7, 3) == 1
    assert hilbert_symbol(3, 3, 3) == hilbert_symbol(3, -1, 3)


def test_tau_inert():
    place = LocalPlace(3, "inert")
    assert tau(place, 3) == -1
    assert tau(place, Fraction(1, 2)) == 1
    assert tau(place, 9) == 1


def test_sign_mod_mp(q60):
    plan = prime_above(q60, 5)
    assert sign_mod_mp(q60.one(), plan) == 1
    assert sign_mod_mp(-q60.one(), plan) == -1
    assert sign_mod_mp(q60.zeta(12), plan) == 1
    assert sign_mod_mp(q60.zeta(3), plan) is None


def test_functional_equation_on_ramified_inert(q60, inert3):
    """A(dual*) lambda*(2 beta theta) = eps A(lambda*) on a handful of conductor-1 characters."""
    theta = inert3.canonical_theta()
    for t in list(residual_tables(inert3, q60))[:4]:
        for z in (q60.one(), q60.zeta(12), -q60.one() / 3):
            chi = make_star(inert3, z, 1, t)
            dual = char_dual(chi.unstar()).star()
            eps = local_epsilon(chi).value
            for beta in (Fraction(1, 3), Fraction(2), Fraction(5, 9), Fraction(9)):
                lhs = a_beta_oracle(dual, theta, beta) * chi(theta * (2 * beta))
                assert lhs == eps * a_beta_oracle(chi, theta, beta)
