"""Local and family mu-invariants and the self-duality classification.

mu_local(lambda_v) is inf ord_p(lambda_v(x) - 1) over x in K_v^x; it is a
finite minimum over the unit table and the uniformizer value.  The family
invariant dispatches on the classification:

    not residually self-dual      sum of mu_local over nsplit places
    self-dual                     the same sum for the + part (the - part is
                                  identically zero)
    residually, not self-dual     cases (i)(a), (i)(b), (ii) below, with
                                  mu1 and mu2 in case (ii)
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Optional

from .epsilon import local_epsilon, root_ratio, sign_mod_mp, tau
from .family import Family, SpecError
from .local import INERT, RAMIFIED, SPLIT, DomainError, LocalCharacter, LocalElement, char_eval, vl
from .quadratic import kronecker, prime_factors
from .scalars import INFINITY, CycScalar, PrimePlan
from .whittaker import NSPLIT, S0, kernel_oracle

NOT_RSD = "not_residually_self_dual"
SELF_DUAL = "self_dual"
RSD_NOT_SD = "residually_self_dual_not_self_dual"

PLAIN_SUM = "plain_sum"
SELF_DUAL_PLUS = "self_dual_plus"
CASE_IA = "(i)(a)"
CASE_IB = "(i)(b)"
CASE_II = "(ii)"
CASE_IIA = "(ii)(a)"
CASE_IIB = "(ii)(b)"

DELTA_MISMATCH = "delta_mismatch"


def _ord(plan: PrimePlan, x: CycScalar):
    return plan.ordp(x)


def mu_local(chi: LocalCharacter, plan: PrimePlan):
    """min ord_p(lambda_v(x) - 1) over the unit table and the uniformizer.

    ``chi`` is lambda_v* (any half twist); lambda_v = chi |.|^(1/2) agrees with
    the stored table on units, and its uniformizer value picks up the twist.
    Returns INFINITY exactly when lambda_v is trivial.
    """
    if chi.place.ext_type == SPLIT:
        raise DomainError("mu_local needs a field place")
    part = chi.parts[0]
    lam = chi.unstar()
    values = list(part.table.values()) + [char_eval(lam, chi.place.uniformizer())]
    best = INFINITY
    for v in values:
        best = min(best, _ord(plan, v - 1))
    return max(Fraction(0), best) if best != INFINITY else INFINITY


def unit_mu(chi: LocalCharacter, plan: PrimePlan):
    """inf over units x of ord_p(lambda_v(x) - 1)."""
    best = INFINITY
    for v in chi.parts[0].table.values():
        best = min(best, _ord(plan, v - 1))
    return best


def _value_at_ell(chi_star: LocalCharacter) -> CycScalar:
    return char_eval(chi_star, Fraction(chi_star.place.ell))


# -- classification ----------------------------------------------------------------

@dataclass
class Classification:
    kind: str
    k: int
    residues_tested: int
    modulus_tested: int
    local_checks: dict                  # place -> {"exact": bool, "mod_mp": bool}
    witness: Optional[dict] = None
    global_root_number: Optional[int] = None
    residual_root_number: Optional[int] = None
    delta_plus: Optional[int] = None
    delta_minus: Optional[int] = None

    def to_json(self) -> dict:
        doc = {
            "kind": self.kind,
            "k": self.k,
            "residues_tested": self.residues_tested,
            "modulus_tested": self.modulus_tested,
            "local_checks": {str(k): v for k, v in self.local_checks.items()},
            "witness": self.witness,
        }
        for key in ("global_root_number", "residual_root_number", "delta_plus", "delta_minus"):
            value = getattr(self, key)
            if value is not None:
                doc[key] = value
        return doc


def _chi_d(d: int, a: int) -> int:
    """The quadratic character of K/Q at a positive integer prime to d."""
    out = 1
    for q in prime_factors(a):
        k = 0
        m = a
        while m % q == 0:
            m //= q
            k += 1
        out *= kronecker(d, q) ** k
    return out


def _eta(fam: Family, a: int) -> CycScalar:
    """lambda*|_Q times tau at a positive integer prime to the modulus and d."""
    K = fam.K
    return fam.chi_f(K.elem(a)).inverse() * (Fraction(a) ** (1 - fam.k) * _chi_d(K.disc, a))


def _base_point(data, u) -> LocalElement:
    place = data.place
    u = Fraction(u)
    if place.ext_type == SPLIT:
        return place.element(u, u)
    return place.element(u)


def _local_restriction_checks(fam: Family) -> dict:
    """Does lambda*_v agree with tau_v on Q_l^x, exactly and modulo m_p?"""
    out = {}
    for ell, data in fam.places.items():
        if ell == fam.p:
            continue
        depth = 3 if ell == 2 else 2
        points = [ell] + [u for u in range(1, ell ** depth) if u % ell]
        exact = True
        mod = True
        for u in points:
            value = char_eval(data.chi_star, _base_point(data, u))
            t = tau(data.place, u)
            if value != t:
                exact = False
                if not fam.plan.congruent(value, fam.field.rational(t)):
                    mod = False
                    break
        out[ell] = {"exact": exact, "mod_mp": mod}
    return out


def _primes(bound: int):
    for q in range(2, bound + 1):
        if all(q % r for r in range(2, math.isqrt(q) + 1)):
            yield q


def global_root_number(fam: Family) -> CycScalar:
    """prod over nonsplit places of S of eps(1/2, lambda*_v) / lambda*_v(2 theta).

    Unramified places outside S contribute 1, so this is the full product.
    """
    value = fam.field.one()
    for data in fam.field_places():
        value = value * root_ratio(data.chi_star, data.theta)
    return value


def classify(fam: Family) -> Classification:
    K = fam.K
    A = fam.modulus.A
    M = A * abs(K.disc) // math.gcd(A, abs(K.disc))
    L = M * fam.p // math.gcd(M, fam.p)
    exact = fam.k == 1
    rsd = True
    tested = 0
    failure = None
    for a in range(1, L + 1):
        if math.gcd(a, L) != 1:
            continue
        tested += 1
        value = _eta(fam, a)
        if exact and value != 1:
            exact = False
        if not fam.plan.congruent(value, fam.field.one()):
            rsd = False
            failure = a
            break
    checks = _local_restriction_checks(fam)
    if exact:
        kind = SELF_DUAL
    elif rsd:
        kind = RSD_NOT_SD
    else:
        kind = NOT_RSD
    result = Classification(kind, fam.k, tested, L, checks)
    if kind == NOT_RSD:
        result.witness = _inert_witness(fam, failure)
        return result
    if kind == RSD_NOT_SD and fam.p == 2:
        raise DomainError("unsupported: residual root numbers need p odd")
    ell_data = fam.places[fam.ell]
    if kind == SELF_DUAL:
        eps = global_root_number(fam)
        sign = 1 if eps == 1 else (-1 if eps == -1 else None)
        if sign is None:
            raise DomainError("self-dual family with global root number not +-1")
        result.global_root_number = sign
        reference = sign
    else:
        sign = sign_mod_mp(global_root_number(fam), fam.plan)
        if sign is None:
            raise DomainError("residual root number is not +-1 mod m_p")
        result.residual_root_number = sign
        reference = sign
    if ell_data.place.ext_type == INERT:
        # the sign of a twist with conductor parity delta at l is
        # reference * (-1)^(delta - e_l), since the l-ratio is (-1)^(e + c)
        e_l = ell_data.chi_star.conductor
        plus = 0 if reference * (-1) ** e_l == 1 else 1
        given = fam.spec.delta_plus
        if given is not None and given != plus:
            raise SpecError(DELTA_MISMATCH, f"delta_plus = {given} but the conductor parity rule gives {plus}")
        result.delta_plus = plus
        result.delta_minus = 1 - plus
    return result


def _inert_witness(fam: Family, failure: Optional[int]) -> dict:
    """An inert good prime with lambda*(l) not congruent to -1."""
    for q in _primes(max(200, fam.spec.mu1_prime_bound)):
        if q in fam.places or fam.K.split_type(q) != INERT:
            continue
        value = fam.lambda_star_good(q)
        if not fam.plan.congruent(value, -fam.field.one()):
            return {"inert_prime": q, "lambda_star": value.to_json(), "failed_residue": failure}
    return {"inert_prime": None, "failed_residue": failure}


# -- family mu ------------------------------------------------------------------------

@dataclass
class MuReport:
    classification: Classification
    mu_local_by_place: dict
    branch: str
    mu_family: object = None
    mu_plus: object = None
    mu_minus: object = None
    mu1: object = None
    mu1_witness: Optional[dict] = None
    mu2: object = None
    mu2_witness: Optional[dict] = None
    epsilon_v_bits: dict = dc_field(default_factory=dict)
    unit_mu: dict = dc_field(default_factory=dict)
    uniformizer_gap: dict = dc_field(default_factory=dict)
    flags: list = dc_field(default_factory=list)

    def target(self, sign: Optional[str] = None):
        """The predicted minimal valuation for the whole family or one sign class."""
        if sign == "+":
            return self.mu_plus
        if sign == "-":
            return self.mu_minus
        return self.mu_family

    def to_json(self) -> dict:
        def q(v):
            if v is None:
                return None
            return "inf" if v == INFINITY else str(Fraction(v))
        return {
            "classification": self.classification.to_json(),
            "mu_local_by_place": {str(k): q(v) for k, v in self.mu_local_by_place.items()},
            "branch": self.branch,
            "mu_family": q(self.mu_family),
            "mu_plus": q(self.mu_plus),
            "mu_minus": q(self.mu_minus),
            "mu1": q(self.mu1),
            "mu1_witness": self.mu1_witness,
            "mu2": q(self.mu2),
            "mu2_witness": self.mu2_witness,
            "epsilon_v_bits": {str(k): v for k, v in self.epsilon_v_bits.items()},
            "unit_mu": {str(k): q(v) for k, v in self.unit_mu.items()},
            "uniformizer_gap": {str(k): q(v) for k, v in self.uniformizer_gap.items()},
            "flags": list(self.flags),
        }


def local_beta_grid(chi_star: LocalCharacter, theta: LocalElement, extra: int = 2) -> list[Fraction]:
    """beta = l^n u over the orders where A_beta can be nonzero and units mod a fixed power.

    The unit residues run mod l^(e_Q + 1) (mod 8 at l = 2), where e_Q is the
    conductor of the restriction to Q_l^x; n runs from the support bound of
    the kernel up to ``extra`` past the conductor.
    """
    place = chi_star.place
    ell = place.ell
    r = 2 if place.ext_type == RAMIFIED else 1
    e = chi_star.conductor
    d = place.psi_K_conductor
    c_ord = -(theta * 2).ord() if not theta.is_zero() else 0
    e_q = -(-e // r)
    lo = -(-(-(e + d) + c_ord) // r) - 1
    hi = e_q + extra
    k = max(e_q + 1, 3 if ell == 2 else 1)
    units = [u for u in range(1, ell ** k) if u % ell]
    out = []
    for n in range(lo, hi + 1):
        scale = Fraction(ell) ** n
        out.extend(u * scale for u in units)
    return out


def _sum(values):
    total = Fraction(0)
    for v in values:
        if v == INFINITY:
            return INFINITY
        total += v
    return total


def mu_family(fam: Family, classification: Optional[Classification] = None) -> MuReport:
    cls = classification or classify(fam)
    plan = fam.plan
    nsplit = fam.nsplit_places()
    mus = {d.ell: mu_local(d.chi_star, plan) for d in nsplit}
    total = _sum(mus.values())
    report = MuReport(cls, mus, PLAIN_SUM)
    if cls.kind == NOT_RSD:
        report.mu_family = total
        return report
    ell_inert = fam.places[fam.ell].place.ext_type == INERT
    if cls.kind == SELF_DUAL:
        report.branch = SELF_DUAL_PLUS
        if ell_inert:
            report.mu_plus, report.mu_minus = total, INFINITY
            report.mu_family = total
        elif cls.global_root_number == 1:
            report.mu_family = report.mu_plus = total
        else:
            report.mu_family = report.mu_minus = INFINITY
            report.flags.append("root number -1: every coefficient vanishes")
        return report
    # residually self-dual, not self-dual
    bits = {}
    hit_a = False
    for d in nsplit:
        if d.place.ext_type != INERT or mus[d.ell] in (0, INFINITY):
            bits[d.ell] = 0
            continue
        a_v = unit_mu(d.chi_star, plan)
        b_v = _ord(plan, _value_at_ell(d.chi_star) + 1)
        report.unit_mu[d.ell] = a_v
        report.uniformizer_gap[d.ell] = b_v
        if a_v == b_v:
            hit_a = True
        bits[d.ell] = 1 if a_v > b_v else 0
    report.epsilon_v_bits = bits
    if hit_a:
        report.branch = CASE_IA
        report.mu_family = total
        if ell_inert:
            report.mu_plus = report.mu_minus = total
        return report
    parity = 1
    for b in bits.values():
        parity *= (-1) ** b
    rbar = cls.residual_root_number
    if not ell_inert:
        if rbar == parity:
            report.branch = CASE_IB
            report.mu_family = total
            return report
        report.branch = CASE_II
        _fill_mu12(fam, report, mus, bits)
        report.mu_family = min(report.mu1, report.mu2)
        return report
    # inert twist prime: compare with (-1)^delta * ratio_l * parity
    ratio_l = sign_mod_mp(root_ratio(fam.places[fam.ell].chi_star, fam.places[fam.ell].theta), plan)
    _fill_mu12(fam, report, mus, bits)
    low = min(report.mu1, report.mu2)
    if rbar == (-1) ** cls.delta_plus * ratio_l * parity:
        report.branch = CASE_IIA
        report.mu_plus, report.mu_minus = total, low
    else:
        report.branch = CASE_IIB
        report.mu_minus, report.mu_plus = total, low
        report.flags.append("case (ii)(b) read symmetrically to (ii)(a) with the signs swapped")
    report.mu_family = min(report.mu_plus, report.mu_minus)
    return report


def _fill_mu12(fam: Family, report: MuReport, mus: dict, bits: dict) -> None:
    plan = fam.plan
    inert_sum = _sum(v for ell, v in mus.items() if fam.places[ell].place.ext_type == INERT)
    best, where = INFINITY, None
    for q in _primes(fam.spec.mu1_prime_bound):
        if q == fam.p or fam.K.split_type(q) != INERT:
            continue
        if q in fam.places:
            data = fam.places[q]
            if data.chi_star.conductor:
                continue
            value = _value_at_ell(data.chi_star)
        else:
            value = fam.lambda_star_good(q)
        o = _ord(plan, value + 1)
        if o < best:
            best, where = o, q
    report.mu1 = _sum([inert_sum, best])
    report.mu1_witness = {"inert_prime": where, "prime_bound": fam.spec.mu1_prime_bound}
    best2, witness = INFINITY, None
    for d in fam.nsplit_places():
        rest = _sum(v for ell, v in mus.items() if ell != d.ell)
        ratio = sign_mod_mp(root_ratio(d.chi_star, d.theta), plan)
        wanted = ratio * (-1) ** (bits.get(d.ell, 0) + 1)
        oracle = kernel_oracle(d.chi_star, d.theta)
        local_best, local_beta = INFINITY, None
        for beta in local_beta_grid(d.chi_star, d.theta):
            if tau(d.place, beta) != wanted:
                continue
            o = _ord(plan, oracle(beta))
            if o < local_best:
                local_best, local_beta = o, beta
        candidate = _sum([rest, local_best])
        if candidate < best2:
            best2 = candidate
            witness = {"place": d.ell, "beta": str(local_beta), "tau": wanted}
    report.mu2 = best2
    report.mu2_witness = witness
