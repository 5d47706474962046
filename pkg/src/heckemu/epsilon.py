"""Gauss sums, local epsilon factors at s = 1/2 and root-number ratios.

The epsilon normalization is the one that makes the functional equation

    A_beta(lambda^vee*, theta) * lambda*(2 beta theta) = eps * A_beta(lambda*, theta)

hold for ramified characters, with A_beta the brute-force kernel.  Concretely
eps is the reciprocal of Tate's epsilon(1/2, lambda*, psi_K) taken with the
self-dual measure of psi_K.  For a field place with conductor e >= 1 and
m = e + d (d the conductor exponent of psi_K),

    eps = q^(-e/2) * sum_{u in (O/pi^e)^x} lambda*(u pi^-m) psi_K(-u pi^-m)

and for unramified lambda* it is lambda*(pi)^-d.  Split places multiply the
two factors of Q_l^x.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .local import (
    INERT, RAMIFIED, SPLIT, ComponentCharacter, DomainError, LocalCharacter, LocalElement, LocalPlace,
    char_eval, components, mod_ell_power, psi_eval, vl,
)
from .scalars import CycScalar, PrimePlan, sqrt_prime

NORMALIZATION_TAG = "tate-psi_K-selfdual-measure"


@dataclass(frozen=True)
class EpsilonValue:
    value: CycScalar
    normalization_tag: str = NORMALIZATION_TAG


def gauss_sum(chi_w: ComponentCharacter) -> CycScalar:
    """G(chi_w) = l^-e sum_{u mod l^e} chi_w(u l^-e) psi(u l^-e); 1 when e = 0."""
    field = chi_w.field
    e = chi_w.conductor
    if e == 0:
        return field.one()
    ell = chi_w.ell
    scale = Fraction(1, ell ** e)
    total = field.zero()
    for u in range(1, ell ** e):
        if u % ell:
            x = u * scale
            total = total + chi_w(x) * psi_eval(field, ell, x)
    return total * scale


def _pi_power(place: LocalPlace, m: int) -> LocalElement:
    pi = place.uniformizer()
    out = place.element(1)
    step = pi if m >= 0 else pi.inverse()
    for _ in range(abs(m)):
        out = out * step
    return out


def _q_half_power(place: LocalPlace, field, e: int) -> CycScalar:
    """q_K^(-e/2)."""
    ell = place.ell
    if place.ext_type == INERT:
        return field.rational(Fraction(1, ell ** e))
    value = field.rational(Fraction(1, ell ** (e // 2)))
    if e % 2:
        value = value / sqrt_prime(field, ell)
    return value


def _component_epsilon(chi: ComponentCharacter) -> CycScalar:
    e = chi.conductor
    field = chi.field
    if e == 0:
        return field.one()
    ell = chi.ell
    scale = Fraction(1, ell ** e)
    total = field.zero()
    for u in range(1, ell ** e):
        if u % ell:
            x = u * scale
            total = total + chi(x) * psi_eval(field, ell, -x)
    value = total * Fraction(1, ell ** (e // 2))
    if e % 2:
        value = value / sqrt_prime(field, ell)
    return value


def local_epsilon(chi_star: LocalCharacter) -> EpsilonValue:
    """The epsilon factor of lambda* at its place (see the module docstring)."""
    place = chi_star.place
    field = chi_star.field
    if place.ext_type == SPLIT:
        w, wbar = components(chi_star)
        return EpsilonValue(_component_epsilon(w) * _component_epsilon(wbar))
    e = chi_star.conductor
    d = place.psi_K_conductor
    if e == 0:
        z = char_eval(chi_star, place.uniformizer())
        return EpsilonValue(z.inverse() ** d if d else field.one())
    m = e + d
    ring = chi_star.parts[0].ring
    scale = _pi_power(place, -m)
    total = field.zero()
    for lab in ring.labels():
        x = ring.element(lab) * scale
        total = total + char_eval(chi_star, x) * psi_eval(field, place.ell, -x.trace())
    return EpsilonValue(total * _q_half_power(place, field, e))


def gamma_ratio(chi_star: LocalCharacter) -> CycScalar:
    """L(1/2, lambda*) / L(1/2, lambda*^-1) at a field place; 1 when lambda* is ramified.

    The exact functional equation of the kernel carries this factor next to
    epsilon.  For unramified lambda* with w = lambda*(varpi) and residue field
    of size q it is (1 - w^-1 q^-1/2) / (1 - w q^-1/2), which is 1 iff w = +-1.
    """
    place = chi_star.place
    if place.ext_type == SPLIT:
        raise DomainError("gamma_ratio needs a field place")
    field = chi_star.field
    if chi_star.conductor:
        return field.one()
    w = char_eval(chi_star, place.uniformizer())
    root_q = field.rational(place.ell) if place.ext_type == INERT else sqrt_prime(field, place.ell)
    den = field.one() - w / root_q
    if den.is_zero():
        raise DomainError("L(1/2, lambda*) has a pole")
    return (field.one() - w.inverse() / root_q) / den


def root_ratio(chi_star: LocalCharacter, theta: LocalElement) -> CycScalar:
    """eps(1/2, lambda*, psi_K) / lambda*(2 theta)."""
    if theta.is_zero():
        raise DomainError("theta must be nonzero")
    if theta.place.ext_type == SPLIT:
        if theta.x + theta.y != 0:
            raise DomainError("theta must be purely imaginary (trace zero)")
    elif theta.trace() != 0:
        raise DomainError("theta must be purely imaginary (trace zero)")
    return local_epsilon(chi_star).value / char_eval(chi_star, theta * 2)


# -- the quadratic character of K_v / Q_l ----------------------------------------

def _unit_part(x: Fraction, ell: int) -> tuple[int, Fraction]:
    o = vl(x, ell)
    return o, x / Fraction(ell) ** o


def _legendre(u: Fraction, ell: int) -> int:
    r = mod_ell_power(u, ell, 1)
    return 1 if pow(r, (ell - 1) // 2, ell) == 1 else -1


def hilbert_symbol(a, b, ell: int) -> int:
    """(a, b)_l for nonzero rationals a, b."""
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise DomainError("Hilbert symbol of zero")
    alpha, u = _unit_part(a, ell)
    beta, v = _unit_part(b, ell)
    if ell != 2:
        sign = -1 if (alpha * beta * (ell - 1) // 2) % 2 else 1
        return sign * _legendre(u, ell) ** (beta % 2) * _legendre(v, ell) ** (alpha % 2)
    u8 = mod_ell_power(u, 2, 3)
    v8 = mod_ell_power(v, 2, 3)

    def eps(t):
        return (t - 1) // 2 % 2

    def omega(t):
        return (t * t - 1) // 8 % 2

    exponent = eps(u8) * eps(v8) + alpha * omega(v8) + beta * omega(u8)
    return -1 if exponent % 2 else 1


def tau(place: LocalPlace, beta) -> int:
    """The quadratic character of K_v / Q_l at a nonzero rational."""
    beta = Fraction(beta)
    if beta == 0:
        raise DomainError("tau at zero")
    if place.ext_type == SPLIT:
        return 1
    if place.ext_type == INERT:
        return -1 if vl(beta, place.ell) % 2 else 1
    return hilbert_symbol(beta, place.discriminant(), place.ell)


def tau_of_base(place: LocalPlace, field, beta) -> CycScalar:
    return field.rational(tau(place, beta))


# -- reports ------------------------------------------------------------------------

def sign_mod_mp(x: CycScalar, plan: PrimePlan) -> Optional[int]:
    """+1 or -1 when x is congruent to it mod m_p, else None."""
    if plan.congruent(x, x.field.one()):
        return 1
    if plan.congruent(x, -x.field.one()):
        return -1
    return None


def epsilon_row(chi_star: LocalCharacter, theta: LocalElement, plan: Optional[PrimePlan] = None) -> dict:
    place = chi_star.place
    eps = local_epsilon(chi_star).value
    ratio = eps / char_eval(chi_star, theta * 2)
    row = {
        "place": place.ell,
        "ext_type": place.ext_type,
        "e": list(p.conductor for p in chi_star.parts) if place.ext_type == SPLIT else chi_star.conductor,
        "c": place.psi_K_conductor,
        "epsilon": eps.to_json(),
        "ratio": ratio.to_json(),
        "normalization_tag": NORMALIZATION_TAG,
    }
    if plan is not None:
        row["ratio_mod_mp"] = sign_mod_mp(ratio, plan)
    return row
