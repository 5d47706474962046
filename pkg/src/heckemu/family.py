"""Global families: spec ingestion, local components, Fourier coefficients, searches.

A family is an algebraic Hecke character lambda of an imaginary quadratic K of
class number one, given on principal ideals prime to the modulus f by

    lambda((alpha)) = chi_f(alpha) * alpha^a * conj(alpha)^b,

with chi_f a character of (O_K/f)^x.  The idelic components are normalized by
prod_v lambda_v(alpha) = alpha^-a conj(alpha)^-b over finite v, and
lambda_w(u) = chi_f,w(u) on units at primes w | f (chi_f,w is chi_f on the
CRT factor at w).  Each local component is stored as lambda with half twist
-1, i.e. as lambda* = lambda |.|^-1/2.

The beta-th coefficient at the cusp c is

    (-1)^k * 1_{beta > 0} * beta^kappa * prod_v W*_{beta,v}

with the unit constants of the local factors set to 1 (see ``w_star``).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Optional

from .epsilon import local_epsilon, root_ratio, tau
from .local import (
    INERT, RAMIFIED, SPLIT, CharacterError, DomainError, LocalCharacter, LocalElement, LocalPlace,
    TableCharacter, UnitRing, char_eval, minimize_conductor, validate_table, vl,
)
from .quadratic import ArithmeticError_, Modulus, QElement, QuadraticField, prime_factors
from .scalars import INFINITY, AmbientField, CycScalar, PrimePlan, prime_above, root_of_unity
from .whittaker import (
    GOOD, NSPLIT, S0, SPLIT1, SPLIT2, KernelOracle, PlaceRole, TruncationError, kernel_oracle, w_star,
)

SCHEMA = "family-spec/1"

# distinct validation failures
MALFORMED = "malformed"
CLASS_NUMBER = "class_number"
NOT_ORDINARY = "p_not_ordinary"
ELL_IS_P = "ell_equals_p"
NOT_PRIME = "not_prime"
ELL_RAMIFIED = "lambda_ramified_at_ell"
ROLES = "role_inconsistent"
CHARACTER = "character_invalid"
WEIGHTS = "weights_invalid"
CUSPS = "cusp_invalid"
THETA = "theta_invalid"
GRID = "grid_invalid"


class SpecError(ValueError):
    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code
        self.message = message


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % q for q in range(2, math.isqrt(n) + 1))


# -- the spec document ---------------------------------------------------------------

@dataclass(frozen=True)
class GridSpec:
    """beta = m * prod_{v nsplit} l_v^(n_v), n_v in [ord_min, ord_max], 1 <= m <= m_bound prime to nsplit."""
    ord_min: int = -1
    ord_max: int = 2
    m_bound: int = 40
    mod_power: int = 2

    def to_json(self) -> dict:
        return {"ord_min": self.ord_min, "ord_max": self.ord_max, "m_bound": self.m_bound,
                "mod_power": self.mod_power}


@dataclass(frozen=True)
class PlaceSpec:
    ell: int
    role: str
    w: Optional[tuple[int, int]] = None
    unit: Fraction = Fraction(1)

    def to_json(self) -> dict:
        doc = {"ell": self.ell, "role": self.role}
        if self.w is not None:
            doc["w"] = list(self.w)
        if self.unit != 1:
            doc["unit"] = str(self.unit)
        return doc


@dataclass(frozen=True)
class FamilySpec:
    disc: int
    p: int
    ell_twist: int
    infinity_type: tuple[int, int]
    modulus: tuple[int, int]
    char_order: int
    char_values: tuple                      # ((x, y), exponent of zeta_order) pairs
    places: tuple[PlaceSpec, ...]
    cusps: tuple[int, ...] = (1,)
    theta: Optional[tuple[Fraction, Fraction]] = None
    grid: GridSpec = GridSpec()
    delta_plus: Optional[int] = None
    mu1_prime_bound: int = 200
    val_bound: int = 256
    name: str = ""

    @classmethod
    def from_json(cls, doc: dict) -> "FamilySpec":
        try:
            if doc.get("schema") != SCHEMA:
                raise SpecError(MALFORMED, f"schema must be {SCHEMA!r}")
            char = doc["character"]
            places = tuple(
                PlaceSpec(int(pl["ell"]), str(pl["role"]),
                          tuple(int(c) for c in pl["w"]) if pl.get("w") is not None else None,
                          Fraction(pl.get("unit", 1)))
                for pl in doc.get("places", []))
            grid = GridSpec(**{k: int(v) for k, v in doc.get("grid", {}).items()})
            theta = doc.get("theta")
            return cls(
                disc=int(doc["disc"]),
                p=int(doc["p"]),
                ell_twist=int(doc["ell_twist"]),
                infinity_type=(int(doc["infinity_type"][0]), int(doc["infinity_type"][1])),
                modulus=(int(char["modulus"][0]), int(char["modulus"][1])),
                char_order=int(char["order"]),
                char_values=tuple(((int(r[0][0]), int(r[0][1])), int(r[1])) for r in char["values"]),
                places=places,
                cusps=tuple(int(c) for c in doc.get("cusps", [1])),
                theta=None if theta is None else (Fraction(theta[0]), Fraction(theta[1])),
                grid=grid,
                delta_plus=None if doc.get("delta_plus") is None else int(doc["delta_plus"]),
                mu1_prime_bound=int(doc.get("mu1_prime_bound", 200)),
                val_bound=int(doc.get("val_bound", 256)),
                name=str(doc.get("name", "")),
            )
        except SpecError:
            raise
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            raise SpecError(MALFORMED, f"cannot read spec: {exc!r}") from exc

    def to_json(self) -> dict:
        doc = {
            "schema": SCHEMA,
            "name": self.name,
            "disc": self.disc,
            "p": self.p,
            "ell_twist": self.ell_twist,
            "infinity_type": list(self.infinity_type),
            "character": {"modulus": list(self.modulus), "order": self.char_order,
                          "values": [[list(r), k] for r, k in self.char_values]},
            "places": [pl.to_json() for pl in self.places],
            "cusps": list(self.cusps),
            "grid": self.grid.to_json(),
            "mu1_prime_bound": self.mu1_prime_bound,
            "val_bound": self.val_bound,
        }
        if self.theta is not None:
            doc["theta"] = [str(self.theta[0]), str(self.theta[1])]
        if self.delta_plus is not None:
            doc["delta_plus"] = self.delta_plus
        return doc


def load_spec(path: str) -> FamilySpec:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise SpecError(MALFORMED, f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    except OSError as exc:
        raise SpecError(MALFORMED, f"cannot open spec: {exc}") from exc
    if not isinstance(doc, dict):
        raise SpecError(MALFORMED, "spec must be a JSON object")
    return FamilySpec.from_json(doc)


def character_table(K: QuadraticField, f: QElement, order: int, exponent: Callable[[QElement], int]):
    """(modulus, order, values) for chi_f(alpha) = zeta_order^exponent(alpha) on unit residues."""
    mod = Modulus(K, f)
    values = tuple((r, exponent(K.elem(*r)) % order) for r in mod.unit_residues())
    return (int(f.x), int(f.y)), order, values


# -- local data ---------------------------------------------------------------------------

@dataclass
class PlaceData:
    ell: int
    role: PlaceRole
    place: LocalPlace
    chi_star: LocalCharacter
    shift: int = 0                       # eta = omega - shift at ramified places
    generator: Optional[QElement] = None # the prime w (split) or the prime above ell
    theta: Optional[LocalElement] = None

    @property
    def is_field(self) -> bool:
        return self.place.ext_type != SPLIT

    def to_local(self, alpha: QElement) -> LocalElement:
        if self.place.ext_type == SPLIT:
            raise DomainError("split places take rational arguments here")
        return self.place.element(alpha.x + alpha.y * self.shift, alpha.y)


def _eisenstein_shift(K: QuadraticField, ell: int) -> int:
    """Least r with (omega - r) Eisenstein at a ramified ell."""
    for r in range(ell * ell):
        a = 2 * r - K.t
        b = r * r - K.t * r + K.n
        if a % ell == 0 and b % ell == 0 and b % (ell * ell):
            return r
    raise SpecError(ROLES, f"no Eisenstein shift at {ell}")


def _lcm(*xs: int) -> int:
    out = 1
    for x in xs:
        out = out * x // math.gcd(out, x)
    return out


class Family:
    """A validated family; see ``validate_family``."""

    def __init__(self, spec: FamilySpec, psi_extra: Optional[dict] = None):
        self.spec = spec
        self._validate_scalars()
        K = self.K = QuadraticField(spec.disc)
        self.p = spec.p
        self.ell = spec.ell_twist
        a, b = spec.infinity_type
        self.a, self.b = a, b
        self.k = a + b
        self.kappa = -b
        self.f = K.elem(*spec.modulus)
        try:
            self.modulus = Modulus(K, self.f)
        except ArithmeticError_ as exc:
            raise SpecError(CHARACTER, str(exc)) from exc
        self.order = spec.char_order
        self._table = self._read_table()
        self.roles = self._assign_roles()
        self.theta_global = self._theta()
        self._psi_extra = dict(psi_extra or {})
        self.field = AmbientField.of(self._ambient_modulus())
        self.plan: PrimePlan = prime_above(self.field, self.p, spec.val_bound)
        self._zeta_cache: dict = {}
        self._check_units()
        self.places: dict[int, PlaceData] = {ell: self._place_data(ell, role) for ell, role in self.roles.items()}
        self._check_twist_prime()
        self._check_cusps()
        self._good_cache: dict = {}
        self._lambda_good_cache: dict = {}
        self._ordp_cache: dict = {}

    # -- validation pieces ---------------------------------------------------------

    def _validate_scalars(self) -> None:
        spec = self.spec
        if spec.disc not in (-3, -4, -7, -8, -11, -19, -43, -67, -163):
            raise SpecError(CLASS_NUMBER, f"disc {spec.disc} is not a class-number-one imaginary quadratic field")
        if not _is_prime(spec.p):
            raise SpecError(NOT_PRIME, f"p = {spec.p} is not prime")
        if not _is_prime(spec.ell_twist):
            raise SpecError(NOT_PRIME, f"ell = {spec.ell_twist} is not prime")
        K = QuadraticField(spec.disc)
        if K.split_type(spec.p) != SPLIT:
            raise SpecError(NOT_ORDINARY, f"p not ordinary: {spec.p} is {K.split_type(spec.p)} in K")
        if spec.ell_twist == spec.p:
            raise SpecError(ELL_IS_P, "the twist prime must differ from p")
        if K.split_type(spec.ell_twist) == RAMIFIED:
            raise SpecError(ELL_RAMIFIED, f"{spec.ell_twist} ramifies in K")
        a, b = spec.infinity_type
        if a + b < 1 or b > 0:
            raise SpecError(WEIGHTS, f"infinity type {spec.infinity_type} is not k*Sigma + kappa*(1-c), k >= 1, kappa >= 0")
        if spec.char_order < 1:
            raise SpecError(CHARACTER, "character order must be positive")
        g = spec.grid
        if g.ord_min > g.ord_max or g.m_bound < 1 or g.mod_power < 0:
            raise SpecError(GRID, f"bad grid {g}")

    def _read_table(self) -> dict:
        K, mod, m = self.K, self.modulus, self.order
        table = {}
        for r, k in self.spec.char_values:
            alpha = K.elem(*r)
            if not mod.is_unit(alpha):
                raise SpecError(CHARACTER, f"{r} is not a unit modulo f")
            key = mod.reduce(alpha)
            if key in table and table[key] != k % m:
                raise SpecError(CHARACTER, f"two values given for the residue {key}")
            table[key] = k % m
        units = mod.unit_residues()
        missing = [u for u in units if u not in table]
        if missing:
            raise SpecError(CHARACTER, f"character table misses the residue {missing[0]}")
        one = mod.reduce(K.one())
        if table[one] != 0:
            raise SpecError(CHARACTER, "character value at 1 is not 1")
        for g in units:
            for u in units:
                gu = mod.reduce(K.elem(*g) * K.elem(*u))
                if table[gu] != (table[g] + table[u]) % m:
                    raise SpecError(CHARACTER, f"character is not multiplicative at ({g}, {u})")
            if len(units) > 64:
                break
        return table

    def _assign_roles(self) -> dict:
        K, spec = self.K, self.spec
        roles: dict[int, PlaceRole] = {}
        for pl in spec.places:
            if not _is_prime(pl.ell):
                raise SpecError(NOT_PRIME, f"place {pl.ell} is not prime")
            if pl.ell in roles:
                raise SpecError(ROLES, f"place {pl.ell} listed twice")
            try:
                role = PlaceRole(pl.role, unit=pl.unit, divides_p=(pl.ell == spec.p))
            except DomainError as exc:
                raise SpecError(ROLES, str(exc)) from exc
            typ = K.split_type(pl.ell)
            if role.kind in (SPLIT1, SPLIT2) and typ != SPLIT:
                raise SpecError(ROLES, f"{pl.role} at {pl.ell}, which is {typ}")
            if role.kind == NSPLIT and typ == SPLIT:
                raise SpecError(ROLES, f"nsplit at {pl.ell}, which splits")
            if role.kind == GOOD:
                raise SpecError(ROLES, f"good places are implicit; remove {pl.ell}")
            if role.kind == S0 and pl.ell != spec.ell_twist:
                raise SpecError(ROLES, f"S0 must be the twist prime {spec.ell_twist}, not {pl.ell}")
            if pl.unit != 1 and role.kind != NSPLIT:
                raise SpecError(ROLES, "unit constants live at nsplit places")
            roles[pl.ell] = role
        if spec.p not in roles:
            roles[spec.p] = PlaceRole(SPLIT1, divides_p=True)
        elif roles[spec.p].kind != SPLIT1:
            raise SpecError(ROLES, f"p = {spec.p} must have role split1")
        if spec.ell_twist not in roles:
            roles[spec.ell_twist] = PlaceRole(S0)
        elif roles[spec.ell_twist].kind != S0:
            raise SpecError(ROLES, f"the twist prime {spec.ell_twist} must have role S0")
        for q in K.ramified_primes():
            if q not in roles or roles[q].kind != NSPLIT:
                raise SpecError(ROLES, f"ramified prime {q} must be an nsplit place")
        for _, _, q in self.modulus.primes:
            if q not in roles:
                raise SpecError(ROLES, f"{q} divides the modulus but is not in S")
        return dict(sorted(roles.items()))

    def _theta(self) -> QElement:
        K = self.K
        if self.spec.theta is None:
            return K.elem(Fraction(-K.t, 2), 1)
        theta = K.elem(*self.spec.theta)
        if theta.is_zero() or theta.trace() != 0 or theta.y <= 0:
            raise SpecError(THETA, "theta must be nonzero, purely imaginary, with positive imaginary part")
        ratio = (theta * 2) / K.sqrt_disc()
        if vl(ratio.norm(), self.spec.p) != 0:
            raise SpecError(THETA, "2 theta / sqrt(d) must be prime to p")
        return theta

    def _psi_exponent(self, ell: int) -> int:
        K = self.K
        typ = K.split_type(ell)
        e = 0
        for pi, ex, q in self.modulus.primes:
            if q == ell:
                e = max(e, ex)
        r = 2 if typ == RAMIFIED else 1
        d = 0
        if typ == RAMIFIED:
            shift = _eisenstein_shift(K, ell)
            d = LocalPlace(ell, RAMIFIED, (2 * shift - K.t, shift * shift - K.t * shift + K.n)).psi_K_conductor
        return max(1, -(-(e + d) // r)) + self._psi_extra.get(ell, 0)

    def _ambient_modulus(self) -> int:
        K = self.K
        parts = [K.embedding_modulus(), self.order]
        for ell, role in self.roles.items():
            typ = K.split_type(ell)
            if typ == SPLIT:
                continue
            parts.append(ell ** self._psi_exponent(ell))
            if typ == RAMIFIED:
                parts.append(4 * ell)
        return _lcm(*parts)

    def _check_units(self) -> None:
        for u in self.K.units:
            value = self.chi_f(u) * self._embed_power(u)
            if value != 1:
                raise SpecError(CHARACTER, f"lambda is not well defined: chi_f(u) u^a ubar^b != 1 at u = {u}")

    def _check_twist_prime(self) -> None:
        data = self.places[self.ell]
        chi = data.chi_star
        if data.place.ext_type == SPLIT:
            ramified = any(p.conductor for p in chi.parts) and any(
                char_eval(chi, Fraction(u)) != 1 for u in range(1, self.ell ** 2) if u % self.ell)
        else:
            ramified = any(char_eval(chi, data.place.element(u)) != 1
                           for u in range(1, self.ell ** 2) if u % self.ell)
        if ramified:
            raise SpecError(ELL_RAMIFIED, f"lambda is ramified on Q_{self.ell}^x")

    def _check_cusps(self) -> None:
        for c in self.spec.cusps:
            if c < 1 or not self.K.is_norm(c):
                raise SpecError(CUSPS, f"cusp {c} is not the norm of an integral ideal")
            bad = [q for q in self.roles if c % q == 0]
            if bad:
                raise SpecError(CUSPS, f"cusp {c} is not prime to S (divisible by {bad[0]})")

    # -- the finite character ---------------------------------------------------------

    def zeta(self, k: int) -> CycScalar:
        k %= self.order
        got = self._zeta_cache.get(k)
        if got is None:
            got = root_of_unity(self.field, k * (self.field.N // self.order))
            self._zeta_cache[k] = got
        return got

    def chi_f_exponent(self, alpha: QElement) -> int:
        if not self.modulus.is_unit(alpha):
            raise DomainError(f"{alpha} is not prime to the modulus")
        return self._table[self.modulus.reduce(alpha)]

    def chi_f(self, alpha: QElement) -> CycScalar:
        return self.zeta(self.chi_f_exponent(alpha))

    def _component(self, index: Optional[int], alpha: QElement) -> CycScalar:
        """chi_f,w(alpha) for the index-th prime power of f; 1 when index is None."""
        if index is None:
            return self.field.one()
        E = self._idempotent(index)
        return self.chi_f(E * alpha + (1 - E))

    @lru_cache(maxsize=None)
    def _idempotent(self, index: int) -> QElement:
        return self.modulus.idempotent(index)

    def _prime_index(self, pi: QElement) -> Optional[int]:
        for j, (c, _, _) in enumerate(self.modulus.primes):
            if c.divides(pi) and pi.divides(c):
                return j
        return None

    def _embed_power(self, alpha: QElement) -> CycScalar:
        """alpha^a conj(alpha)^b in the ambient field."""
        K = self.K
        x = K.embed(alpha, self.field)
        y = K.embed(alpha.conj(), self.field)
        return _scalar_power(x, self.a) * _scalar_power(y, self.b)

    def _lambda_at_generator(self, pi: QElement, own: Iterable[int]) -> CycScalar:
        """lambda_v(pi) = pi^-a pibar^-b prod_{w' | f, w' not over v} chi_f,w'(pi)^-1."""
        own = set(own)
        value = self._embed_power(pi).inverse()
        for j in range(len(self.modulus.primes)):
            if j not in own:
                value = value * self._component(j, pi).inverse()
        return value

    # -- local components -----------------------------------------------------------

    def _place_data(self, ell: int, role: PlaceRole) -> PlaceData:
        K = self.K
        typ = K.split_type(ell)
        field = self.field
        if typ == SPLIT:
            spec_pl = next((pl for pl in self.spec.places if pl.ell == ell), None)
            if spec_pl is not None and spec_pl.w is not None:
                pi_w = K.elem(*spec_pl.w)
                if pi_w.norm() != ell:
                    raise SpecError(ROLES, f"w = {spec_pl.w} does not generate a prime above {ell}")
            else:
                pi_w = K.prime_generator(ell)
            pi_wb = pi_w.conj()
            iw, iwb = self._prime_index(pi_w), self._prime_index(pi_wb)
            parts = []
            place = LocalPlace(ell, SPLIT)
            for gen, other, idx, idx_other in ((pi_w, pi_wb, iw, iwb), (pi_wb, pi_w, iwb, iw)):
                e = self.modulus.primes[idx][1] if idx is not None else 0
                ring = UnitRing(place, e, base=True)
                table = {lab: self._component(idx, K.elem(lab[0])) for lab in ring.labels()} if e else {
                    ring.one(): field.one()}
                z = self._lambda_at_generator(gen, [idx] if idx is not None else [])
                if idx is not None:
                    z = z * self._component(idx, other)
                part = minimize_conductor(ring, table, z)
                self._validate_part(part, ell)
                parts.append(part)
            chi = LocalCharacter(place, tuple(parts), -1)
            return PlaceData(ell, role, place, chi, 0, pi_w, None)
        if typ == INERT:
            shift = 0
            poly = (-K.t, K.n)
        else:
            shift = _eisenstein_shift(K, ell)
            poly = (2 * shift - K.t, shift * shift - K.t * shift + K.n)
        place = LocalPlace(ell, typ, poly)
        pi = K.prime_generator(ell)
        idx = self._prime_index(pi)
        e = self.modulus.primes[idx][1] if idx is not None else 0
        data = PlaceData(ell, role, place, None, shift, pi, None)   # type: ignore[arg-type]
        ring = UnitRing(place, e)
        if e:
            table = {lab: self._component(idx, K.elem(lab[0] - lab[1] * shift, lab[1])) for lab in ring.labels()}
        else:
            table = {ring.one(): field.one()}
        z_pi = self._lambda_at_generator(pi, [idx] if idx is not None else [])
        unit = place.uniformizer() / data.to_local(pi)
        z = z_pi * table[ring.label(unit)]
        part = minimize_conductor(ring, table, z)
        self._validate_part(part, ell)
        data.chi_star = LocalCharacter(place, (part,), -1)
        data.theta = data.to_local(self.theta_global)
        return data

    def _validate_part(self, part: TableCharacter, ell: int) -> None:
        try:
            validate_table(part.ring, part.table, self.field)
        except CharacterError as exc:
            raise SpecError(CHARACTER, f"local component at {ell}: {exc}") from exc

    # -- evaluation ------------------------------------------------------------------

    def lambda_star_good(self, ell: int) -> CycScalar:
        """lambda*_v(l) at a place outside S: chi_f(l)^-1 l^(1-k)."""
        got = self._lambda_good_cache.get(ell)
        if got is None:
            got = self.chi_f(self.K.elem(ell)).inverse() * (Fraction(ell) ** (1 - self.k))
            self._lambda_good_cache[ell] = got
        return got

    def lambda_star_at(self, ell: int) -> CycScalar:
        """lambda*_v at the uniformizer l of Q_l, for any place."""
        if ell in self.places:
            data = self.places[ell]
            x = Fraction(ell)
            return char_eval(data.chi_star, x)
        return self.lambda_star_good(ell)

    def check_product_formula(self, alpha: QElement) -> bool:
        """prod over finite v of lambda_v(alpha), times alpha^a alphabar^b, equals 1."""
        K = self.K
        value = self._embed_power(alpha)
        primes = set(prime_factors(int((alpha * (alpha.x.denominator * alpha.y.denominator) ** 2).norm())))
        primes |= {q for _, _, q in self.modulus.primes}
        primes |= {q for q in prime_factors(alpha.x.denominator * alpha.y.denominator)}
        for q in sorted(primes):
            if q in self.places:
                data = self.places[q]
                lam = data.chi_star.unstar()
                if data.place.ext_type == SPLIT:
                    x = _split_image(K, data.generator, alpha, q, 12)
                    value = value * char_eval(lam, x)
                else:
                    value = value * char_eval(lam, data.to_local(alpha))
            else:
                lam_l = self.lambda_star_good(q) / q       # lambda_v(l) = lambda*(l) / l
                if K.split_type(q) == SPLIT:
                    pi = K.prime_generator(q)
                    o1 = K.prime_power_order(alpha, pi)
                    o2 = K.prime_power_order(alpha, pi.conj())
                    # lambda_v unramified: lambda_w(pi) = lambda(p_w)^-1
                    value = value * _scalar_power(self._ideal_value(pi), -o1) * _scalar_power(
                        self._ideal_value(pi.conj()), -o2)
                else:
                    o = K.prime_power_order(alpha, K.prime_generator(q))
                    value = value * _scalar_power(lam_l, o)
        return value == 1

    def _ideal_value(self, pi: QElement) -> CycScalar:
        """lambda((pi)) = chi_f(pi) pi^a pibar^b for pi prime to f."""
        return self.chi_f(pi) * self._embed_power(pi)

    def nsplit_places(self) -> list[PlaceData]:
        return [d for d in self.places.values() if d.role.kind == NSPLIT]

    def field_places(self) -> list[PlaceData]:
        return [d for d in self.places.values() if d.is_field]

    # -- coefficients ---------------------------------------------------------------------

    def good_factor(self, ell: int, n: int) -> CycScalar:
        if n < 0:
            return self.field.zero()
        key = (ell, n)
        got = self._good_cache.get(key)
        if got is None:
            z = self.lambda_star_good(ell)
            total = self.field.zero()
            power = self.field.one()
            for _ in range(n + 1):
                total = total + power
                power = power * z
            got = total
            self._good_cache[key] = got
        return got

    def local_factor(self, ell: int, beta: Fraction) -> CycScalar:
        data = self.places[ell]
        return w_star(data.role, data.chi_star, beta, data.theta, (self.k, self.kappa))

    def ordp(self, x: CycScalar):
        got = self._ordp_cache.get(x)
        if got is None:
            got = self.plan.ordp(x)
            self._ordp_cache[x] = got
        return got


def _scalar_power(x: CycScalar, k: int) -> CycScalar:
    if k >= 0:
        return x ** k
    return x.inverse() ** (-k)


def _split_image(K: QuadraticField, pi_w: QElement, alpha: QElement, ell: int, precision: int) -> LocalElement:
    """(iota_w(alpha), iota_wbar(alpha)) as rationals exact modulo l^precision."""
    place = LocalPlace(ell, SPLIT)
    # root of x^2 - t x + n with pi_w -> 0 mod l
    rho = None
    for r0 in range(ell):
        if (r0 * r0 - K.t * r0 + K.n) % ell == 0 and (int(pi_w.x) + int(pi_w.y) * r0) % ell == 0:
            rho = r0
    if rho is None:
        raise DomainError("no embedding matches w")
    from .quadratic import hensel_root
    mod = ell ** precision
    rho = hensel_root(K.t, K.n, ell, precision, rho)
    rho_bar = (K.t - rho) % mod
    return place.element(alpha.x + alpha.y * rho, alpha.x + alpha.y * rho_bar)


def validate_family(spec: FamilySpec) -> Family:
    """Check every hypothesis and derive the local components; raises SpecError."""
    extra: dict = {}
    for _ in range(6):
        fam = Family(spec, extra)
        bump = _probe(fam)
        if bump is None:
            return fam
        extra[bump] = extra.get(bump, 0) + 1
    raise SpecError(GRID, "could not size the ambient field for the requested grid")


def _probe(fam: Family) -> Optional[int]:
    """Run every local computation the grid will need once; return a place needing a bigger psi field."""
    g = fam.spec.grid
    for data in fam.field_places():
        try:
            local_epsilon(data.chi_star)
            if data.role.kind == NSPLIT:
                oracle = kernel_oracle(data.chi_star, data.theta)
                for n in range(g.ord_min - 1, g.ord_max + 2):
                    oracle(Fraction(data.ell) ** n)
        except DomainError as exc:
            if "psi needs" in str(exc):
                return data.ell
            raise SpecError(GRID, f"local computation failed at {data.ell}: {exc}") from exc
    return None


# -- coefficient reports ----------------------------------------------------------------

@dataclass
class CoefficientReport:
    beta: Fraction
    cusp: int
    local_factors: dict          # place -> CycScalar (S places and good places in supp(beta c))
    factor_ordp: dict
    prefactor: CycScalar         # (-1)^k beta^kappa
    product: CycScalar
    ordp: object

    def to_json(self) -> dict:
        return {
            "beta": str(self.beta),
            "cusp": self.cusp,
            "local_factors": {str(k): v.to_json() for k, v in self.local_factors.items()},
            "factor_ordp": {str(k): _ord_json(v) for k, v in self.factor_ordp.items()},
            "prefactor": self.prefactor.to_json(),
            "product": self.product.to_json(),
            "ordp": _ord_json(self.ordp),
        }


def _ord_json(v):
    if v == INFINITY:
        return "inf"
    return str(Fraction(v))


def fourier_coefficient(fam: Family, beta, cusp: int = 1, with_product: bool = True) -> CoefficientReport:
    """The beta-th coefficient at the cusp c as a finite product of local factors."""
    beta = Fraction(beta)
    field = fam.field
    if cusp not in fam.spec.cusps:
        raise DomainError(f"cusp {cusp} is not in the spec's list")
    if beta <= 0:
        zero = field.zero()
        return CoefficientReport(beta, cusp, {}, {}, zero, zero, INFINITY)
    factors: dict = {}
    for ell in fam.places:
        factors[ell] = fam.local_factor(ell, beta)
    bc = beta * cusp
    support = set(prime_factors(bc.numerator)) | set(prime_factors(bc.denominator))
    for ell in sorted(support - set(fam.places)):
        factors[ell] = fam.good_factor(ell, vl(bc, ell))
    sign = -1 if fam.k % 2 else 1
    prefactor = field.rational(sign * beta ** fam.kappa)
    ords = {ell: fam.ordp(v) for ell, v in factors.items()}
    if any(v.is_zero() for v in factors.values()):
        total_ord = INFINITY
    else:
        total_ord = sum((Fraction(v) for v in ords.values()), Fraction(0)) + vl(beta, fam.p) * fam.kappa
    if with_product:
        product = prefactor
        for v in factors.values():
            product = product * v
    else:
        product = field.zero() if total_ord == INFINITY else prefactor
    return CoefficientReport(beta, cusp, factors, ords, prefactor, product, total_ord)


def beta_grid(fam: Family, grid: Optional[GridSpec] = None) -> list[Fraction]:
    """Positive rationals m * prod_{nsplit} l^n in a fixed order."""
    g = grid or fam.spec.grid
    nsplit = [d.ell for d in fam.nsplit_places()]
    ms = [m for m in range(1, g.m_bound + 1) if all(m % q for q in nsplit)]
    exps = [[]]
    for _ in nsplit:
        exps = [e + [n] for e in exps for n in range(g.ord_min, g.ord_max + 1)]
    out = []
    for e in exps:
        scale = Fraction(1)
        for q, n in zip(nsplit, e):
            scale *= Fraction(q) ** n
        out.extend(m * scale for m in ms)
    return sorted(set(out))
