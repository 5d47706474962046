"""The lemma suite: exact checks of the local identities over a generated battery.

The battery is a deterministic list of local characters lambda* at inert,
ramified and split places over Q_l for l in {2, 3, 5, 7}, conductor at most 2,
each paired with a prime p != l.  Characters are stored as lambda with half
twist -1, the same convention the family assembler uses, so mu_local reads
the right data.  Every check stops at its first discrepancy and records the
character, the beta and both sides of the identity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional

from .epsilon import NORMALIZATION_TAG, gamma_ratio, local_epsilon, sign_mod_mp, tau
from .local import (
    INERT, RAMIFIED, SPLIT, DomainError, LocalCharacter, LocalElement, LocalPlace, TableCharacter, char_dual, char_eval,
    character_to_json, unit_group,
)
from .family import Family
from .mu import NOT_RSD, SELF_DUAL, Classification, classify, local_beta_grid, mu_local, unit_mu
from .scalars import INFINITY, AmbientField, CycScalar, PrimePlan, prime_above, root_of_unity, sqrt_prime
from .search import vanishing_audit
from .whittaker import KernelOracle, TruncationError, a_beta_closed

ELLS = (2, 3, 5, 7)
PRIMES = (3, 5, 7)
OK = "ok"
FAIL = "fail"
SKIPPED = "skipped"

SIZES = {"quick": 1, "standard": 2, "full": 4}


@dataclass
class Entry:
    """One battery character: lambda* at a place, with the prime p it is read at."""

    label: str
    chi: LocalCharacter
    p: int
    plan: PrimePlan
    theta_override: Optional[LocalElement] = None

    @property
    def place(self) -> LocalPlace:
        return self.chi.place

    @property
    def theta(self) -> LocalElement:
        return self.theta_override if self.theta_override is not None else self.place.canonical_theta()

    def datum(self, **extra) -> dict:
        doc = {"label": self.label, "ell": self.place.ell, "ext_type": self.place.ext_type, "p": self.p,
               "N": self.chi.field.N, "character": character_to_json(self.chi)}
        doc.update({k: _json(v) for k, v in extra.items()})
        return doc


def _json(v):
    if isinstance(v, CycScalar):
        return v.to_json()
    if v == INFINITY:
        return "inf"
    if isinstance(v, Fraction):
        return str(v)
    return v


@dataclass
class CheckResult:
    name: str
    checked: int = 0
    failure: Optional[dict] = None
    status: str = OK
    notes: list = dc_field(default_factory=list)

    def fail(self, datum: dict) -> None:
        self.failure = datum
        self.status = FAIL

    def to_json(self) -> dict:
        return {"name": self.name, "checked": self.checked, "status": self.status,
                "failure": self.failure, "notes": list(self.notes)}


# -- ambient fields ----------------------------------------------------------------

def _ambient_n(place: LocalPlace, e: int, p: int, depth: int) -> int:
    n = 4 * place.ell ** depth
    return math.lcm(n, 9 if p == 3 else p)


def _psi_depth(place: LocalPlace, e: int) -> int:
    r = 2 if place.ext_type == RAMIFIED else 1
    return max(1, -(-(e + place.psi_K_conductor) // r))


@lru_cache(maxsize=None)
def _plan(n: int, p: int) -> PrimePlan:
    return prime_above(AmbientField.of(n), p)


def _probe(chi: LocalCharacter) -> bool:
    """Whether the field carries every psi value the checks will ask for."""
    try:
        local_epsilon(chi)
        oracle = KernelOracle(chi, chi.place.canonical_theta())
        grid = local_beta_grid(chi, chi.place.canonical_theta())
        oracle(grid[0])
        dual = _dual_star(chi)
        local_epsilon(dual)
        KernelOracle(dual, chi.place.canonical_theta())(grid[0])
    except DomainError as exc:
        if "psi needs" in str(exc):
            return False
        raise
    return True


@lru_cache(maxsize=None)
def _config_field(ell: int, ext: str, e: int, p: int) -> int:
    """The smallest psi depth that passes the probe on a sample character."""
    place = LocalPlace(ell, ext)
    depth = _psi_depth(place, e)
    for _ in range(6):
        n = _ambient_n(place, e, p, depth)
        field = AmbientField.of(n)
        tables = _unit_tables(ell, ext, e, n)
        if not tables:
            return n
        chi = LocalCharacter(place, (TableCharacter(unit_group(place, e).ring, tables[-1][1], field.one()),), -1)
        if _probe(chi):
            return n
        depth += 1
    raise DomainError(f"could not size the field for l={ell} {ext} e={e}")


# -- characters --------------------------------------------------------------------

@lru_cache(maxsize=None)
def _unit_tables(ell: int, ext: str, e: int, n: int) -> tuple:
    """Unit tables of exact conductor e with values in Q(zeta_n), in enumeration order."""
    place = LocalPlace(ell, ext)
    field = AmbientField.of(n)
    pres = unit_group(place, e)
    kernel = pres.ring.kernel_of_reduction()
    out = []
    for exps in pres.all_exponents(n):
        table = pres.table(exps, field)
        if e >= 1 and all(table[lab] == 1 for lab in kernel):
            continue
        out.append((exps, table))
    return tuple(out)


def _abs_half(place: LocalPlace, field: AmbientField) -> CycScalar:
    """|varpi|^(1/2) for the place's uniformizer."""
    if place.ext_type == INERT:
        return field.rational(Fraction(1, place.ell))
    return sqrt_prime(field, place.ell).inverse()


def _uniformizer_values(place: LocalPlace, field: AmbientField, p: int) -> list[tuple[str, CycScalar]]:
    """Stored values lambda(varpi): a few chosen so lambda*(varpi) is a sign, i or a p-power root."""
    n = field.N
    zp = root_of_unity(field, n // p)
    star = [("1", field.one()), ("-1", -field.one()), ("i", root_of_unity(field, n // 4)),
            ("-i", -root_of_unity(field, n // 4)), (f"z{p}", zp), (f"-z{p}", -zp)]
    if p == 3:
        star.append(("-z9", -root_of_unity(field, n // 9)))
    half = _abs_half(place, field)
    out = [(f"star={name}", v * half) for name, v in star]
    out += [("raw=1", field.one()), (f"raw=z{p}", zp)]
    return out


def _configs():
    for ell in ELLS:
        for ext in (INERT, RAMIFIED):
            for e in (0, 1, 2):
                if ext == INERT and ell >= 5 and e == 2:
                    continue
                for p in PRIMES:
                    if p != ell:
                        yield ell, ext, e, p


def _restriction_points(place: LocalPlace) -> list[Fraction]:
    depth = 3 if place.ell == 2 else 2
    return [Fraction(place.ell)] + [Fraction(u) for u in range(1, place.ell ** depth) if u % place.ell]


def _base_element(place: LocalPlace, u: Fraction):
    return place.element(u, u) if place.ext_type == SPLIT else place.element(u)


def restriction_kind(chi: LocalCharacter, plan: PrimePlan) -> Optional[str]:
    """'sd' if lambda*|Q_l^x = tau exactly, 'rsd' if only mod m_p, else None."""
    exact = True
    for u in _restriction_points(chi.place):
        value = char_eval(chi, _base_element(chi.place, u))
        t = tau(chi.place, u)
        if value == t:
            continue
        exact = False
        if not plan.congruent(value, chi.field.rational(t)):
            return None
    return "sd" if exact else "rsd"


def base_unramified(chi: LocalCharacter) -> bool:
    """Whether lambda restricted to Q_l^x is unramified."""
    return all(char_eval(chi, _base_element(chi.place, u)) == 1
               for u in _restriction_points(chi.place)[1:])


@dataclass
class Battery:
    generic: list
    self_dual: list
    residual: list
    split_self_dual: list
    size: str

    def summary(self) -> dict:
        return {"size": self.size, "generic": len(self.generic), "self_dual": len(self.self_dual),
                "residually_self_dual": len(self.residual), "split_self_dual": len(self.split_self_dual)}


def _stride(items: list, cap: int) -> list:
    if len(items) <= cap:
        return list(items)
    step = len(items) / cap
    return [items[int(i * step)] for i in range(cap)]


@lru_cache(maxsize=None)
def build_battery(size: str = "standard") -> Battery:
    """The deterministic battery.

    ``size`` caps how many unit tables per configuration and uniformizer value
    enter the generic list; the (residually) self-dual lists are exhaustive.
    """
    if size not in SIZES:
        raise DomainError(f"unknown battery size {size!r}")
    cap = SIZES[size]
    generic, sd, rsd, split_sd = [], [], [], []
    for ell, ext, e, p in _configs():
        place = LocalPlace(ell, ext)
        n = _config_field(ell, ext, e, p)
        field = AmbientField.of(n)
        plan = _plan(n, p)
        tables = _unit_tables(ell, ext, e, n)
        for zname, z in _uniformizer_values(place, field, p):
            chosen = _stride(list(range(len(tables))), cap)
            for idx, (exps, table) in enumerate(tables):
                chi = LocalCharacter(place, (TableCharacter(unit_group(place, e).ring, table, z),), -1)
                label = f"l={ell} {ext} e={e} p={p} {zname} units={list(exps)}"
                entry = Entry(label, chi, p, plan)
                if idx in chosen and not (e == 0 and zname == "raw=1"):
                    generic.append(entry)
                kind = restriction_kind(chi, plan)
                if kind == "sd":
                    sd.append(entry)
                if kind is not None:
                    rsd.append(entry)
    for ell in ELLS:
        split_sd.extend(_split_self_dual(ell))
    return Battery(generic, sd, rsd, split_sd, size)


def _split_self_dual(ell: int) -> list:
    """(lambda_w, lambda_w^-1) pairs at a split place, built directly as lambda*."""
    place = LocalPlace(ell, SPLIT)
    out = []
    for e in (0, 1, 2):
        p = next(q for q in PRIMES if q != ell)
        n = math.lcm(4 * ell ** max(1, e), 9 if p == 3 else p)
        field = AmbientField.of(n)
        plan = _plan(n, p)
        pres = unit_group(place, e, base=True)
        kernel = pres.ring.kernel_of_reduction()
        tables = []
        for exps in pres.all_exponents(n):
            table = pres.table(exps, field)
            if e >= 1 and all(table[lab] == 1 for lab in kernel):
                continue
            tables.append((exps, table))
        for exps, table in tables:
            z = root_of_unity(field, n // 4)
            inv = {lab: v.conjugate() for lab, v in table.items()}
            parts = (TableCharacter(pres.ring, table, z), TableCharacter(pres.ring, inv, z.conjugate()))
            chi = LocalCharacter(place, parts, 0)
            out.append(Entry(f"l={ell} split e={e} units={list(exps)}", chi, p, plan))
    return out


# -- the checks --------------------------------------------------------------------

def _dual_star(chi: LocalCharacter) -> LocalCharacter:
    """(lambda^vee)* from lambda*."""
    return chi.memo("dual_star", lambda: char_dual(chi.unstar()).star())


def _oracle(chi: LocalCharacter, theta: LocalElement) -> KernelOracle:
    return chi.memo(("oracle", theta), lambda: KernelOracle(chi, theta))


def _grid_values(entry: Entry) -> list[tuple[Fraction, CycScalar]]:
    """(beta, A_beta) over the certified grid; the oracle asserts its truncation."""
    chi, theta = entry.chi, entry.theta
    oracle = _oracle(chi, theta)
    return chi.memo(("grid_values", theta), lambda: [(b, oracle(b, check=True))
                                                     for b in local_beta_grid(chi, theta)])


def _ratio(entry: Entry) -> CycScalar:
    chi, theta = entry.chi, entry.theta
    return chi.memo(("ratio", theta), lambda: local_epsilon(chi).value / char_eval(chi, theta * 2))


def check_truncation(battery: Battery) -> CheckResult:
    """Every kernel evaluation on the grid passes the shell truncation certificate."""
    res = CheckResult("pe00_truncation")
    for entry in battery.generic:
        try:
            res.checked += len(_grid_values(entry))
        except TruncationError as exc:
            res.fail(entry.datum(error=str(exc)))
            return res
    return res


def check_min_equals_mu(entries: list, name: str = "pe01_min_equals_mu") -> CheckResult:
    """min over the grid of ord_p A_beta equals mu_local."""
    res = CheckResult(name)
    for entry in entries:
        values = _grid_values(entry)
        low = min(entry.plan.ordp(a) for _, a in values)
        mu = mu_local(entry.chi, entry.plan)
        res.checked += 1
        if low != mu:
            res.fail(entry.datum(grid_min=low, mu_local=mu))
            return res
    return res


def check_functional_equation(entries: list, per_character: int = 6, literal: bool = False) -> CheckResult:
    """A_beta((lambda^vee)*) lambda*(2 beta theta) = eps g A_beta(lambda*) exactly.

    g is the local L-factor ratio (``gamma_ratio``), 1 for ramified lambda*.
    With ``literal`` set, g is dropped and only characters where it equals 1
    are used, which is the identity as quoted for ramified places.
    """
    res = CheckResult("pe1_functional_equation_literal" if literal else "pe1_functional_equation")
    skipped = 0
    for entry in entries:
        chi = entry.chi
        g = gamma_ratio(chi)
        if literal and g != 1:
            skipped += 1
            continue
        dual_oracle = _oracle(_dual_star(chi), entry.theta)
        eps = local_epsilon(chi).value
        factor = eps if literal else eps * g
        for beta, a in _stride(_grid_values(entry), per_character):
            lhs = dual_oracle(beta) * char_eval(chi, entry.theta * (2 * beta))
            rhs = factor * a
            res.checked += 1
            if lhs != rhs:
                res.fail(entry.datum(beta=beta, lhs=lhs, rhs=rhs, epsilon=eps, gamma_ratio=g))
                return res
    if literal:
        res.notes.append({"unramified_with_nontrivial_L_ratio": skipped})
    return res


def _ratio_sign(entry: Entry, exact: bool) -> Optional[int]:
    """The ratio as +-1 (exactly, or mod m_p), or None."""
    ratio = _ratio(entry)
    if exact:
        return 1 if ratio == 1 else (-1 if ratio == -1 else None)
    return sign_mod_mp(ratio, entry.plan)


def check_nonvanishing_sign(battery: Battery) -> CheckResult:
    """A_beta != 0 forces eps = tau(beta) lambda*(2 theta); the mod m_p version for residual duality."""
    res = CheckResult("pe2_nonvanishing_sign")
    exact_labels = {entry.label for entry in battery.self_dual}
    parts = [(1, entry) for entry in battery.self_dual]
    parts += [(2, entry) for entry in battery.residual if entry.label not in exact_labels]
    for part, entry in parts:
        sign = _ratio_sign(entry, part == 1)
        for beta, a in _grid_values(entry):
            if a.is_zero() or (part == 2 and entry.plan.ordp(a) > 0):
                continue
            res.checked += 1
            if sign != tau(entry.place, beta):
                res.fail(entry.datum(part=part, beta=beta, ratio=_ratio(entry), tau=tau(entry.place, beta)))
                return res
    return res


def check_sign_table(battery: Battery) -> CheckResult:
    """Self-dual ratio eps / lambda*(2 theta): +1 split, (-1)^(e+c) inert, a sign when ramified."""
    res = CheckResult("pe3_sign_table")
    counts = {SPLIT: 0, INERT: 0, RAMIFIED: 0}
    for entry in list(battery.split_self_dual) + list(battery.self_dual):
        place = entry.place
        ratio = _ratio(entry)
        one = ratio.field.one()
        if place.ext_type == SPLIT:
            expected = one
            ok = ratio == one
        elif place.ext_type == INERT:
            expected = one * (-1) ** (entry.chi.conductor + place.psi_K_conductor)
            ok = ratio == expected
        else:
            expected = "+-1"
            ok = ratio * ratio == one
        res.checked += 1
        counts[place.ext_type] += 1
        if not ok:
            res.fail(entry.datum(ratio=ratio, expected=expected))
            return res
    res.notes.append({k: v for k, v in sorted(counts.items())})
    return res


def check_inert_congruence(battery: Battery) -> CheckResult:
    """Residually self-dual, inert, lambda|Q_l^x unramified: eps = (-1)^(e+c) lambda*(2 theta) mod m_p."""
    res = CheckResult("pe5_inert_congruence")
    for entry in battery.residual:
        place = entry.place
        if place.ext_type != INERT or not base_unramified(entry.chi):
            continue
        ratio = _ratio(entry)
        sign = (-1) ** (entry.chi.conductor + place.psi_K_conductor)
        res.checked += 1
        if not entry.plan.congruent(ratio, ratio.field.rational(sign)):
            res.fail(entry.datum(ratio=ratio, expected=sign))
            return res
    return res


def pe4_case(entry: Entry) -> tuple[int, object, object]:
    """(case number, unit inf, ord_p(lambda*(varpi) + 1))."""
    a = unit_mu(entry.chi, entry.plan)
    b = entry.plan.ordp(char_eval(entry.chi, entry.place.uniformizer()) + 1)
    if b == a:
        return 1, a, b
    return (2 if b > a else 3), a, b


def check_trichotomy(battery: Battery, include_unramified: bool = False) -> CheckResult:
    """Inert, residually self-dual, mu > 0, p > 2: the minimizers' tau-signs follow the three cases.

    By default only ramified characters are used, as in the lemma's proof
    (conductor exactly 1).  ``include_unramified`` takes every character with
    mu > 0, trivial ones included; unramified ones are known to break it.
    """
    res = CheckResult("pe4_trichotomy_all" if include_unramified else "pe4_trichotomy")
    cases = {1: 0, 2: 0, 3: 0}
    unramified = 0
    for entry in battery.residual:
        if entry.place.ext_type != INERT or entry.p == 2:
            continue
        if entry.chi.conductor == 0 and not include_unramified:
            # the unit infimum is infinite: outside the proof's regime
            unramified += 1
            continue
        mu = mu_local(entry.chi, entry.plan)
        if mu == 0 or (mu == INFINITY and not include_unramified):
            continue
        case, a, b = pe4_case(entry)
        values = _grid_values(entry)
        low = min(entry.plan.ordp(v) for _, v in values)
        ratio = _ratio(entry)
        signs = set()
        for beta, v in values:
            if entry.plan.ordp(v) != low:
                continue
            signs.add(sign_mod_mp(ratio * tau(entry.place, beta), entry.plan))
        wanted = {1: {1, -1}, 2: {1}, 3: {-1}}[case]
        ok = signs == wanted if case != 1 else wanted <= signs
        res.checked += 1
        cases[case] += 1
        if not ok:
            res.fail(entry.datum(case=case, unit_inf=a, uniformizer_gap=b, grid_min=low,
                                 minimizer_signs=sorted(s if s is not None else 0 for s in signs)))
            return res
    res.notes.append({f"case_{k}": v for k, v in cases.items()})
    if not include_unramified:
        res.notes.append({"unramified_outside_hypothesis": unramified})
    return res


def check_duality(battery: Battery, include_unramified: bool = False) -> CheckResult:
    """mu_local(lambda) = mu_local(lambda^vee); mu > 0, p > 2 bounds the conductor and mu.

    By default only ramified characters are used, as in the proof;
    ``include_unramified`` takes every generic character.
    """
    res = CheckResult("duality_all" if include_unramified else "duality")
    skipped = 0
    for entry in battery.generic:
        chi = entry.chi
        if chi.conductor == 0 and not include_unramified:
            skipped += 1
            continue
        mu = mu_local(chi, entry.plan)
        mu_dual = mu_local(_dual_star(chi), entry.plan)
        res.checked += 1
        if mu != mu_dual:
            res.fail(entry.datum(mu=mu, mu_dual=mu_dual))
            return res
        if mu != 0 and entry.p > 2:
            if chi.conductor > 1 or mu > Fraction(1, entry.p - 1):
                res.fail(entry.datum(mu=mu, bound=Fraction(1, entry.p - 1), conductor=chi.conductor))
                return res
    if not include_unramified:
        res.notes.append({"unramified_outside_hypothesis": skipped})
    return res


def check_closed_form(ells=ELLS, max_order: int = 12, ord_range=(-3, 6)) -> CheckResult:
    """Brute-force kernel against the closed polynomial formula, inert places, every allowed datum."""
    res = CheckResult("closed_form")
    for ell in ells:
        place = LocalPlace(ell, INERT)
        theta = place.canonical_theta()
        small = unit_group(place, 1)
        base_units = [small.ring.label(place.element(x)) for x in range(1, ell)]
        for order in range(1, max_order + 1):
            n = math.lcm(order, ell, ell + 1, 4)
            field = AmbientField.of(n)
            tables = [(0, {unit_group(place, 0).ring.one(): field.one()})]
            for exps, table in _unit_tables(ell, INERT, 1, n):
                if all(table[lab] == 1 for lab in base_units):
                    tables.append((1, table))
            for k in range(order):
                if math.gcd(k, order) != 1:
                    continue
                z = root_of_unity(field, k * n // order)
                for e, table in tables:
                    chi = LocalCharacter(place, (TableCharacter(unit_group(place, e).ring, table, z),), 0)
                    oracle = KernelOracle(chi, theta)
                    for o in range(ord_range[0], ord_range[1] + 1):
                        for u in range(1, ell * ell):
                            if u % ell == 0:
                                continue
                            beta = Fraction(ell) ** o * u
                            lhs, rhs = oracle(beta), a_beta_closed(chi, beta)
                            res.checked += 1
                            if lhs != rhs:
                                res.fail({"ell": ell, "order": order, "k": k, "conductor": e, "beta": str(beta),
                                          "oracle": lhs.to_json(), "closed": rhs.to_json()})
                                return res
    return res


LOCAL_CHECKS: list[tuple[str, Callable]] = [
    ("pe00_truncation", check_truncation),
    ("pe01_min_equals_mu", lambda b: check_min_equals_mu(b.generic)),
    ("pe1_functional_equation", lambda b: check_functional_equation(b.generic)),
    ("pe1_functional_equation_literal", lambda b: check_functional_equation(b.generic, literal=True)),
    ("pe2_nonvanishing_sign", check_nonvanishing_sign),
    ("pe3_sign_table", check_sign_table),
    ("pe4_trichotomy", check_trichotomy),
    ("pe5_inert_congruence", check_inert_congruence),
    ("duality", check_duality),
]


def family_battery(fam: Family, cls: Classification) -> Battery:
    """The family's own local components, read with the family's theta and prime above p."""
    entries = [Entry(f"{fam.spec.name}: l={d.ell} {d.role.kind}", d.chi_star, fam.p, fam.plan, d.theta)
               for d in fam.field_places()]
    self_dual = entries if cls.kind == SELF_DUAL else []
    residual = entries if cls.kind != NOT_RSD else []
    return Battery(entries, self_dual, residual, [], "family")


def check_vanishing(fam: Family, jobs: int = 1) -> CheckResult:
    """The exact zeros a self-dual family predicts, over its grid."""
    res = CheckResult("prop_sd_vanishing")
    audit = vanishing_audit(fam, jobs=jobs)
    res.checked = audit["checked"]
    res.notes.append({"vanishing_rule": audit["vanishing_rule"], "predicted_zero": audit["predicted_zero"]})
    if audit["anomalies"]:
        res.fail({"family": fam.spec.name, "nonzero": audit["anomalies"][0], "rule": audit["vanishing_rule"]})
    return res


class _Runner:
    """Runs checks in order; after the first failure the rest are reported as skipped."""

    def __init__(self):
        self.failed = False

    def run(self, name: str, thunk: Callable[[], CheckResult]) -> dict:
        if self.failed:
            return CheckResult(name, status=SKIPPED).to_json()
        result = thunk()
        self.failed = result.status == FAIL
        return result.to_json()


def run_suite(families: list, size: str = "quick", jobs: int = 1) -> dict:
    """The full suite: every family's local components and vanishing audit, then the battery.

    ``families`` is a list of validated Family objects.  The report depends on
    neither ``jobs`` nor timing.
    """
    runner = _Runner()
    fam_reports = []
    for fam in families:
        cls = classify(fam)
        battery = family_battery(fam, cls)
        checks = [runner.run(name, lambda c=check, b=battery: c(b)) for name, check in LOCAL_CHECKS]
        if cls.kind == SELF_DUAL:
            checks.append(runner.run("prop_sd_vanishing", lambda f=fam: check_vanishing(f, jobs)))
        fam_reports.append({"name": fam.spec.name, "kind": cls.kind, "N": fam.field.N,
                            "prime_above_p": fam.plan.describe(), "checks": checks})
    battery = build_battery(size)
    local = [runner.run(name, lambda c=check: c(battery)) for name, check in LOCAL_CHECKS]
    return {
        "families": fam_reports,
        "battery": battery.summary(),
        "battery_checks": local,
        "normalization_tag": NORMALIZATION_TAG,
        "status": "anomaly" if runner.failed else OK,
    }


def run_local_suite(size: str = "quick") -> dict:
    return run_suite([], size)
