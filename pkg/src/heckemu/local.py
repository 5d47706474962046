"""Local places of Q, the quadratic algebra K_v, additive and multiplicative characters.

A field place K_v = Q_l[eta] uses a monic integral quadratic eta^2 + a*eta + b whose
root generates the ring of integers: irreducible mod l when inert, Eisenstein when
ramified.  Split places are Q_l x Q_l and carry a pair of characters of Q_l^x.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence, Union

from .scalars import AmbientField, CycScalar, FieldMismatch, root_of_unity, sqrt_prime

SPLIT, INERT, RAMIFIED = "split", "inert", "ramified"
EXT_TYPES = (SPLIT, INERT, RAMIFIED)

Rational = Union[int, Fraction]


class DomainError(ValueError):
    pass


class CharacterError(ValueError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


def vl(x: Rational, ell: int):
    """ell-adic valuation of a rational; +inf at 0."""
    x = Fraction(x)
    if x == 0:
        return math.inf
    v = 0
    n, d = x.numerator, x.denominator
    while n % ell == 0:
        n //= ell
        v += 1
    while d % ell == 0:
        d //= ell
        v -= 1
    return v


def mod_ell_power(x: Rational, ell: int, k: int) -> int:
    """Residue in [0, ell^k) of an ell-integral rational."""
    x = Fraction(x)
    m = ell ** k
    if k == 0:
        return 0
    if x.denominator % ell == 0:
        raise DomainError(f"{x} is not {ell}-integral")
    return x.numerator * pow(x.denominator, -1, m) % m


def least_irreducible_quadratic(ell: int) -> tuple[int, int]:
    """(a, b) with x^2 + a x + b irreducible mod ell, lexicographically least."""
    for a in range(ell):
        for b in range(ell):
            if all((t * t + a * t + b) % ell for t in range(ell)):
                return a, b
    raise AssertionError("no irreducible quadratic")


def least_nonresidue(ell: int) -> int:
    for n in range(2, ell):
        if pow(n, (ell - 1) // 2, ell) == ell - 1:
            return n
    raise DomainError(f"no nonresidue mod {ell}")


class LocalPlace:
    """A finite place l of Q with the type of K_v / Q_l.

    ``poly`` = (a, b) describes eta^2 + a*eta + b for field places.  For split
    places ``root`` optionally records a square root datum used by callers that
    embed a global field; local computations never need it.
    """

    psi_conductor = 0

    def __init__(self, ell: int, ext_type: str, poly: Optional[tuple[int, int]] = None):
        if ext_type not in EXT_TYPES:
            raise DomainError(f"unknown extension type {ext_type!r}")
        self.ell = ell
        self.ext_type = ext_type
        if ext_type == INERT:
            if poly is None:
                poly = least_irreducible_quadratic(ell)
            a, b = poly
            if any((t * t + a * t + b) % ell == 0 for t in range(ell)):
                raise DomainError(f"x^2+{a}x+{b} is not irreducible mod {ell}")
        elif ext_type == RAMIFIED:
            if poly is None:
                poly = (0, -ell) if ell != 2 else (2, 2)
            a, b = poly
            if a % ell or b % ell or b % (ell * ell) == 0:
                raise DomainError(f"x^2+{a}x+{b} is not Eisenstein at {ell}")
        self.poly = tuple(poly) if poly is not None else None

    def __repr__(self):
        return f"LocalPlace({self.ell}, {self.ext_type!r}, {self.poly})"

    def __eq__(self, other):
        return isinstance(other, LocalPlace) and (self.ell, self.ext_type, self.poly) == (
            other.ell, other.ext_type, other.poly)

    def __hash__(self):
        return hash((self.ell, self.ext_type, self.poly))

    @property
    def is_field(self) -> bool:
        return self.ext_type != SPLIT

    @property
    def residue_size(self) -> int:
        """q_K: size of the residue field of K_v (of each factor when split)."""
        return self.ell ** 2 if self.ext_type == INERT else self.ell

    @property
    def psi_K_conductor(self) -> int:
        """Exponent d with psi o tr trivial on pi^-d O_K but not beyond (the different)."""
        if self.ext_type != RAMIFIED:
            return 0
        a, _ = self.poly
        # different is generated by 2*eta + a
        return self.element(a, 2).ord()

    def element(self, x: Rational, y: Rational = 0) -> "LocalElement":
        return LocalElement(self, Fraction(x), Fraction(y))

    def discriminant(self) -> int:
        if self.poly is None:
            return 1
        a, b = self.poly
        return a * a - 4 * b

    def canonical_theta(self) -> "LocalElement":
        """Purely imaginary theta with {1, theta + a} an O_F-basis of O_K."""
        if self.ext_type == SPLIT:
            return LocalElement(self, Fraction(1), Fraction(-1))
        a, _ = self.poly
        return LocalElement(self, Fraction(a, 2), Fraction(1))

    def uniformizer(self) -> "LocalElement":
        if self.ext_type == RAMIFIED:
            return self.element(0, 1)
        return self.element(self.ell, 0)


class LocalElement:
    """x + y*eta for field places, (x_w, x_wbar) for split places."""

    __slots__ = ("place", "x", "y")

    def __init__(self, place: LocalPlace, x: Fraction, y: Fraction):
        self.place = place
        self.x = x
        self.y = y

    def __repr__(self):
        if self.place.ext_type == SPLIT:
            return f"({self.x}, {self.y})"
        return f"({self.x} + {self.y}*eta)"

    def __eq__(self, other):
        return isinstance(other, LocalElement) and self.place == other.place and (self.x, self.y) == (other.x, other.y)

    def __hash__(self):
        return hash((self.x, self.y))

    def _lift(self, other) -> "LocalElement":
        if isinstance(other, LocalElement):
            return other
        q = Fraction(other)
        return LocalElement(self.place, q, q if self.place.ext_type == SPLIT else Fraction(0))

    def __add__(self, other):
        o = self._lift(other)
        return LocalElement(self.place, self.x + o.x, self.y + o.y)

    __radd__ = __add__

    def __neg__(self):
        return LocalElement(self.place, -self.x, -self.y)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if self.place.ext_type == SPLIT:
            return LocalElement(self.place, self.x * o.x, self.y * o.y)
        a, b = self.place.poly
        return LocalElement(
            self.place,
            self.x * o.x - b * self.y * o.y,
            self.x * o.y + self.y * o.x - a * self.y * o.y,
        )

    __rmul__ = __mul__

    def conj(self) -> "LocalElement":
        if self.place.ext_type == SPLIT:
            return LocalElement(self.place, self.y, self.x)
        a, _ = self.place.poly
        return LocalElement(self.place, self.x - a * self.y, -self.y)

    def norm(self) -> Fraction:
        if self.place.ext_type == SPLIT:
            return self.x * self.y
        a, b = self.place.poly
        return self.x * self.x - a * self.x * self.y + b * self.y * self.y

    def trace(self) -> Fraction:
        if self.place.ext_type == SPLIT:
            return self.x + self.y
        a, _ = self.place.poly
        return 2 * self.x - a * self.y

    def is_zero(self) -> bool:
        if self.place.ext_type == SPLIT:
            return self.x == 0 or self.y == 0
        return self.x == 0 and self.y == 0

    def inverse(self) -> "LocalElement":
        if self.is_zero():
            raise DomainError("zero is not invertible")
        if self.place.ext_type == SPLIT:
            return LocalElement(self.place, 1 / self.x, 1 / self.y)
        n = self.norm()
        c = self.conj()
        return LocalElement(self.place, c.x / n, c.y / n)

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def ord(self):
        """pi_K-adic order (a pair for split places)."""
        ell = self.place.ell
        t = self.place.ext_type
        if t == SPLIT:
            return (vl(self.x, ell), vl(self.y, ell))
        if t == INERT:
            return min(vl(self.x, ell), vl(self.y, ell))
        return vl(self.norm(), ell)

    def abs_value(self) -> Fraction:
        """|x|_{K_v} (normalized absolute value of K_v)."""
        o = self.ord()
        ell = self.place.ell
        if self.place.ext_type == SPLIT:
            return Fraction(1, ell) ** (o[0] + o[1])
        return Fraction(1, self.place.residue_size) ** o


def kv_norm_trace(place: LocalPlace, x: LocalElement) -> tuple[Fraction, Fraction]:
    return x.norm(), x.trace()


# -- additive character ----------------------------------------------------

def psi_eval(field: AmbientField, ell: int, x: Rational) -> CycScalar:
    """Standard additive character of Q_l: exp(2 pi i {x}_l)."""
    x = Fraction(x)
    m = 0
    d = x.denominator
    while d % ell == 0:
        d //= ell
        m += 1
    if m == 0:
        return field.one()
    modulus = ell ** m
    if field.N % modulus:
        raise DomainError(f"psi needs zeta_{modulus} but N={field.N}")
    k = (x.numerator * pow(d, -1, modulus)) % modulus
    return root_of_unity(field, k * (field.N // modulus))


def psi_K_eval(field: AmbientField, place: LocalPlace, x: LocalElement) -> CycScalar:
    return psi_eval(field, place.ell, x.trace())


# -- unit residues -----------------------------------------------------------

class UnitRing:
    """(O/pi^e)^x for a field place, or (Z_l/l^e)^x when ``base`` is true."""

    def __init__(self, place: LocalPlace, e: int, base: bool = False):
        self.place = place
        self.e = e
        self.base = base
        ell = place.ell
        if base:
            self.mods = (ell ** e, 1)
        elif place.ext_type == INERT:
            self.mods = (ell ** e, ell ** e)
        else:
            self.mods = (ell ** (-(-e // 2)), ell ** (e // 2))
        self._labels = None

    def label(self, u: LocalElement | Rational) -> tuple[int, int]:
        ell = self.place.ell
        if self.base:
            x = Fraction(u)
            return (mod_ell_power(x, ell, self.e) if self.e else 0, 0)
        mx, my = self.mods
        kx = self._exp(mx)
        ky = self._exp(my)
        return (mod_ell_power(u.x, ell, kx) if kx else 0, mod_ell_power(u.y, ell, ky) if ky else 0)

    def _exp(self, m: int) -> int:
        k = 0
        while m > 1:
            m //= self.place.ell
            k += 1
        return k

    def is_unit_label(self, lab: tuple[int, int]) -> bool:
        ell = self.place.ell
        x, y = lab
        if self.e == 0:
            return True
        if self.base or self.place.ext_type == RAMIFIED:
            return x % ell != 0
        return x % ell != 0 or y % ell != 0

    def labels(self) -> list[tuple[int, int]]:
        if self._labels is None:
            mx, my = self.mods
            self._labels = [(x, y) for x in range(mx) for y in range(my) if self.is_unit_label((x, y))]
        return self._labels

    def mul(self, s: tuple[int, int], t: tuple[int, int]) -> tuple[int, int]:
        mx, my = self.mods
        if self.base:
            return (s[0] * t[0] % mx, 0)
        u = self.place.element(s[0], s[1]) * self.place.element(t[0], t[1])
        return self.label(u)

    def element(self, lab: tuple[int, int]):
        if self.base:
            return Fraction(lab[0])
        return self.place.element(lab[0], lab[1])

    def one(self) -> tuple[int, int]:
        return (1 % self.mods[0], 0)

    def generators(self) -> list[tuple[int, int]]:
        return _generators(self)

    def kernel_of_reduction(self) -> list[tuple[int, int]]:
        """Units congruent to 1 mod pi^(e-1)."""
        if self.e == 0:
            return []
        smaller = UnitRing(self.place, self.e - 1, self.base)
        one = smaller.one()
        return [lab for lab in self.labels() if smaller.label(self.element(lab)) == one]


def _generators(ring: UnitRing) -> list[tuple[int, int]]:
    labels = ring.labels()
    one = ring.one()
    span = {one}
    gens = []
    for lab in labels:
        if lab in span:
            continue
        gens.append(lab)
        frontier = list(span)
        span = set(span)
        while frontier:
            nxt = []
            for s in frontier:
                for g in gens:
                    t = ring.mul(s, g)
                    if t not in span:
                        span.add(t)
                        nxt.append(t)
            frontier = nxt
        if len(span) == len(labels):
            break
    return gens


# -- multiplicative characters ------------------------------------------------

class TableCharacter:
    """A character of Q_l^x or K_v^x (v a field place) given by finite data.

    value(x) = uniformizer_value^ord(x) * table[x pi^-ord(x) mod pi^e]
    """

    def __init__(self, ring: UnitRing, table: dict, uniformizer_value: CycScalar):
        self.ring = ring
        self.table = dict(table)
        self.uniformizer_value = uniformizer_value
        self.field = uniformizer_value.field
        self._inverse_table = None

    @property
    def conductor(self) -> int:
        return self.ring.e

    def unit_value(self, u) -> CycScalar:
        return self.table[self.ring.label(u)]

    def inverse_table(self) -> dict:
        if self._inverse_table is None:
            self._inverse_table = {k: _invert_unit_value(v) for k, v in self.table.items()}
        return self._inverse_table

    def is_unramified(self) -> bool:
        return self.ring.e == 0


def _invert_unit_value(v: CycScalar) -> CycScalar:
    c = v.conjugate()
    if (v * c) == 1:
        return c
    return v.inverse()


def validate_table(ring: UnitRing, table: dict, field: AmbientField) -> None:
    labels = ring.labels()
    missing = [lab for lab in labels if lab not in table]
    if missing:
        raise CharacterError(f"unit table misses residues, e.g. {missing[0]}", missing[0])
    for lab in table:
        if lab not in set(labels):
            raise CharacterError(f"{lab} is not a unit residue mod pi^{ring.e}", lab)
        if table[lab].field is not field:
            raise FieldMismatch("table values live in different fields")
    if table[ring.one()] != 1:
        raise CharacterError("table value at 1 is not 1", (ring.one(), ring.one()))
    for g in ring.generators():
        tg = table[g]
        for u in labels:
            if table[ring.mul(g, u)] != tg * table[u]:
                raise CharacterError(f"table is not multiplicative at ({g}, {u})", (g, u))
    if ring.e >= 1:
        if all(table[lab] == 1 for lab in ring.kernel_of_reduction()):
            raise CharacterError(
                f"conductor not minimal: character factors through modulus pi^{ring.e - 1}", ring.e - 1)


class LocalCharacter:
    """lambda on K_v^x, times |.|_{K_v}^(half_twist/2).

    For a field place ``parts`` is a single TableCharacter on O_K; for a split
    place it is the pair (lambda_w, lambda_wbar) of characters of Q_l^x.
    """

    def __init__(self, place: LocalPlace, parts: tuple, half_twist: int = 0):
        self.place = place
        self.parts = tuple(parts)
        self.half_twist = half_twist
        self.field = self.parts[0].field
        self._memo = {}
        for part in self.parts:
            if part.field is not self.field:
                raise FieldMismatch("character components in different fields")

    def __repr__(self):
        return (f"LocalCharacter(l={self.place.ell}, {self.place.ext_type}, cond={self.conductor}, "
                f"s2={self.half_twist})")

    @property
    def conductor(self):
        if self.place.ext_type == SPLIT:
            return tuple(p.conductor for p in self.parts)
        return self.parts[0].conductor

    @property
    def unit_table(self) -> dict:
        return self.parts[0].table

    @property
    def uniformizer_value(self):
        if self.place.ext_type == SPLIT:
            return tuple(p.uniformizer_value for p in self.parts)
        return self.parts[0].uniformizer_value

    def memo(self, key, compute):
        """Cache derived data (inverse character, restricted conductor, ...) on the instance."""
        if key not in self._memo:
            self._memo[key] = compute()
        return self._memo[key]

    def with_half_twist(self, s2: int) -> "LocalCharacter":
        return LocalCharacter(self.place, self.parts, s2)

    def star(self) -> "LocalCharacter":
        """lambda* = lambda |.|^(-1/2)."""
        return self.with_half_twist(self.half_twist - 1)

    def unstar(self) -> "LocalCharacter":
        return self.with_half_twist(self.half_twist + 1)

    def _abs_power(self, total_ord: int) -> CycScalar:
        """|x|_{K_v}^(s2/2) for an element of total order ``total_ord``."""
        s = self.half_twist * total_ord
        if s == 0:
            return self.field.one()
        ell = self.place.ell
        if self.place.ext_type == INERT:
            return self.field.rational(Fraction(1, ell) ** s)
        if s % 2 == 0:
            return self.field.rational(Fraction(1, ell) ** (s // 2))
        root = sqrt_prime(self.field, ell)
        return self.field.rational(Fraction(1, ell) ** ((s + 1) // 2)) * root

    def __call__(self, x) -> CycScalar:
        return char_eval(self, x)

    def restriction_values(self):
        """Values of lambda on Q_l^x: (value at l, {unit residue mod l^k: value})."""
        return restriction_to_base(self)

    def is_trivial(self) -> bool:
        return all(p.uniformizer_value == 1 and all(v == 1 for v in p.table.values()) for p in self.parts) \
            and self.half_twist == 0


def char_build(place: LocalPlace, e, unit_table, uniformizer_value, half_twist: int = 0) -> LocalCharacter:
    """Validated character.  For split places pass pairs for e, unit_table and uniformizer_value."""
    if place.ext_type == SPLIT:
        parts = []
        for k in range(2):
            ring = UnitRing(place, e[k], base=True)
            table = _normalize_table(ring, unit_table[k], uniformizer_value[k].field)
            validate_table(ring, table, uniformizer_value[k].field)
            parts.append(TableCharacter(ring, table, uniformizer_value[k]))
        return LocalCharacter(place, tuple(parts), half_twist)
    ring = UnitRing(place, e)
    table = _normalize_table(ring, unit_table, uniformizer_value.field)
    validate_table(ring, table, uniformizer_value.field)
    return LocalCharacter(place, (TableCharacter(ring, table, uniformizer_value),), half_twist)


def _normalize_table(ring: UnitRing, table, field: AmbientField) -> dict:
    if callable(table):
        return {lab: table(lab) for lab in ring.labels()}
    out = {}
    for k, v in dict(table).items():
        if isinstance(k, int):
            k = (k % ring.mods[0], 0)
        out[tuple(k)] = v if isinstance(v, CycScalar) else field.rational(v)
    return out


def trivial_character(place: LocalPlace, field: AmbientField) -> LocalCharacter:
    one = field.one()
    if place.ext_type == SPLIT:
        return char_build(place, (0, 0), ({(0, 0): one}, {(0, 0): one}), (one, one))
    return char_build(place, 0, {(0, 0): one}, one)


def _field_unit_split(place: LocalPlace, x: LocalElement) -> tuple[int, LocalElement]:
    o = x.ord()
    if o == 0:
        return 0, x
    if place.ext_type == INERT:
        s = Fraction(place.ell) ** (-o)
        return o, LocalElement(place, x.x * s, x.y * s)
    pi_inv = place.uniformizer().inverse()
    u = x
    step = pi_inv if o > 0 else place.uniformizer()
    for _ in range(abs(o)):
        u = u * step
    return o, u


def char_eval(chi: LocalCharacter, x) -> CycScalar:
    place = chi.place
    if place.ext_type == SPLIT:
        if not isinstance(x, LocalElement):
            x = LocalElement(place, Fraction(x), Fraction(x))
        if x.is_zero():
            raise DomainError("character evaluated at 0")
        o1 = vl(x.x, place.ell)
        o2 = vl(x.y, place.ell)
        v = _base_eval(chi.parts[0], x.x, o1) * _base_eval(chi.parts[1], x.y, o2)
        return v * chi._abs_power(o1 + o2)
    if not isinstance(x, LocalElement):
        x = place.element(x)
    if x.is_zero():
        raise DomainError("character evaluated at 0")
    part = chi.parts[0]
    o, u = _field_unit_split(place, x)
    v = part.table[part.ring.label(u)] * _zpow(part.uniformizer_value, o)
    return v * chi._abs_power(o)


def _base_eval(part: TableCharacter, x: Fraction, o: int) -> CycScalar:
    u = x / Fraction(part.ring.place.ell) ** o
    return part.table[part.ring.label(u)] * _zpow(part.uniformizer_value, o)


def _zpow(z: CycScalar, o: int) -> CycScalar:
    if o >= 0:
        return z ** o
    c = z.conjugate()
    n = z * c
    if n.is_rational():
        # z = r * (root of unity) and friends: 1/z = conj(z) / |z|^2
        return (c * (1 / n.to_rational())) ** (-o)
    return z.inverse() ** (-o)


def char_dual(chi: LocalCharacter) -> LocalCharacter:
    """lambda^vee(x) = lambda(conj(x)^-1) |x|_{K_v}."""
    place = chi.place
    s2 = 2 - chi.half_twist
    if place.ext_type == SPLIT:
        w, wbar = chi.parts
        return LocalCharacter(place, (_inverse_part(wbar), _inverse_part(w)), s2)
    part = chi.parts[0]
    ring = part.ring
    table = {lab: _invert_unit_value(part.table[ring.label(ring.element(lab).conj())]) for lab in ring.labels()}
    pi = place.uniformizer()
    w = pi.conj() / pi
    z = _zpow(part.uniformizer_value, -1) * _invert_unit_value(part.table[ring.label(w)])
    return LocalCharacter(place, (TableCharacter(ring, table, z),), s2)


def _inverse_part(part: TableCharacter) -> TableCharacter:
    return TableCharacter(part.ring, part.inverse_table(), _zpow(part.uniformizer_value, -1))


def char_inverse(chi: LocalCharacter) -> LocalCharacter:
    return chi.memo("inverse", lambda: LocalCharacter(
        chi.place, tuple(_inverse_part(p) for p in chi.parts), -chi.half_twist))


def character_product(chi: LocalCharacter, other: LocalCharacter) -> LocalCharacter:
    """Pointwise product (the conductor is recomputed minimally)."""
    if chi.place != other.place:
        raise DomainError("characters on different places")
    parts = []
    for a, b in zip(chi.parts, other.parts):
        e = max(a.ring.e, b.ring.e)
        ring = UnitRing(a.ring.place, e, a.ring.base)
        table = {lab: a.table[a.ring.label(ring.element(lab))] * b.table[b.ring.label(ring.element(lab))]
                 for lab in ring.labels()}
        parts.append(minimize_conductor(ring, table, a.uniformizer_value * b.uniformizer_value))
    return LocalCharacter(chi.place, tuple(parts), chi.half_twist + other.half_twist)


def minimize_conductor(ring: UnitRing, table: dict, z: CycScalar) -> TableCharacter:
    while ring.e >= 1 and all(table[lab] == 1 for lab in ring.kernel_of_reduction()):
        smaller = UnitRing(ring.place, ring.e - 1, ring.base)
        table = {smaller.label(ring.element(lab)): v for lab, v in table.items()}
        ring = smaller
    return TableCharacter(ring, table, z)


def restriction_to_base(chi: LocalCharacter):
    """lambda restricted to Q_l^x: returns (value at l, table on (Z/l^k)^x, k)."""
    place = chi.place
    if place.ext_type == SPLIT:
        k = max(p.conductor for p in chi.parts)
    else:
        k = -(-chi.conductor // (2 if place.ext_type == RAMIFIED else 1))
    base = UnitRing(place, k, base=True)
    if k == 0:
        table = {base.one(): chi.field.one()}
    else:
        table = {lab: char_eval(chi, _base_lift(place, lab[0])) for lab in base.labels()}
    return char_eval(chi, _base_lift(place, place.ell)), table, k


def _base_lift(place: LocalPlace, r: Rational) -> LocalElement:
    r = Fraction(r)
    if place.ext_type == SPLIT:
        return LocalElement(place, r, r)
    return place.element(r)


# -- JSON ------------------------------------------------------------------------

def character_from_json(doc: dict, field: AmbientField) -> LocalCharacter:
    ell = int(doc["ell"])
    ext = doc["ext_type"]
    poly = tuple(doc["poly"]) if doc.get("poly") is not None else None
    place = LocalPlace(ell, ext, poly)
    s2 = int(doc.get("half_twist", 0))

    def scalar(data):
        return CycScalar.from_json(field, data)

    if ext == SPLIT:
        conds = tuple(int(c) for c in doc["conductor"])
        tables = tuple({_label(lab): scalar(val) for lab, val in t} for t in doc["unit_table"])
        zs = tuple(scalar(v) for v in doc["uniformizer_value"])
        return char_build(place, conds, tables, zs, s2)
    table = {_label(lab): scalar(val) for lab, val in doc["unit_table"]}
    return char_build(place, int(doc["conductor"]), table, scalar(doc["uniformizer_value"]), s2)


def _label(lab) -> tuple[int, int]:
    if isinstance(lab, int):
        return (lab, 0)
    if isinstance(lab, str):
        parts = [int(s) for s in lab.split(",")]
        return (parts[0], parts[1] if len(parts) > 1 else 0)
    return (int(lab[0]), int(lab[1]) if len(lab) > 1 else 0)


def character_to_json(chi: LocalCharacter) -> dict:
    place = chi.place
    doc = {"ell": place.ell, "ext_type": place.ext_type, "poly": list(place.poly) if place.poly else None,
           "half_twist": chi.half_twist, "N": chi.field.N}
    if place.ext_type == SPLIT:
        doc["conductor"] = [p.conductor for p in chi.parts]
        doc["unit_table"] = [[[f"{a},{b}", v.to_json()] for (a, b), v in sorted(p.table.items())] for p in chi.parts]
        doc["uniformizer_value"] = [p.uniformizer_value.to_json() for p in chi.parts]
    else:
        part = chi.parts[0]
        doc["conductor"] = part.conductor
        doc["unit_table"] = [[f"{a},{b}", v.to_json()] for (a, b), v in sorted(part.table.items())]
        doc["uniformizer_value"] = part.uniformizer_value.to_json()
    return doc


# -- character construction helpers ---------------------------------------------

def character_from_generator_images(place: LocalPlace, e: int, images: dict, z: CycScalar,
                                    half_twist: int = 0, base: bool = False) -> TableCharacter:
    """Extend generator images to a full table by walking the group; no validation."""
    ring = UnitRing(place, e, base)
    one = z.field.one()
    table = {ring.one(): one}
    frontier = [ring.one()]
    gens = list(images)
    while frontier:
        nxt = []
        for s in frontier:
            for g in gens:
                t = ring.mul(s, g)
                if t not in table:
                    table[t] = table[s] * images[g]
                    nxt.append(t)
        frontier = nxt
    return TableCharacter(ring, table, z)


class UnitGroupPresentation:
    """Words for every unit residue in a fixed generating set, plus the relation lattice."""

    def __init__(self, ring: UnitRing):
        self.ring = ring
        self.gens = ring.generators()
        k = len(self.gens)
        one = ring.one()
        self.words = {one: (0,) * k}
        self.relations = []
        frontier = [one]
        while frontier:
            nxt = []
            for s in frontier:
                ws = self.words[s]
                for i, g in enumerate(self.gens):
                    t = ring.mul(s, g)
                    wt = tuple(w + (1 if j == i else 0) for j, w in enumerate(ws))
                    if t in self.words:
                        rel = tuple(a - b for a, b in zip(wt, self.words[t]))
                        if any(rel):
                            self.relations.append(rel)
                    else:
                        self.words[t] = wt
                        nxt.append(t)
            frontier = nxt
        self.order = len(self.words)
        self.exponent = self._exponent()

    def _exponent(self) -> int:
        ex = 1
        for g in self.gens:
            n, x = 1, g
            while x != self.ring.one():
                x = self.ring.mul(x, g)
                n += 1
            ex = ex * n // math.gcd(ex, n)
        return ex

    def admissible(self, exps: Sequence[int]) -> bool:
        """Whether g_i -> zeta_exponent^exps[i] respects every relation."""
        return all(sum(a * r for a, r in zip(exps, rel)) % self.exponent == 0 for rel in self.relations)

    def table(self, exps: Sequence[int], field: AmbientField) -> dict:
        """Table of g_i -> zeta_exponent^exps[i]; the values must lie in the field."""
        num = field.N * Fraction(1, self.exponent)
        images = [num * a for a in exps]
        if any(x.denominator != 1 for x in images):
            raise DomainError(f"field Q(zeta_{field.N}) lacks the values of this character")
        return {lab: root_of_unity(field, int(sum(x * w for x, w in zip(images, word))))
                for lab, word in self.words.items()}

    def all_exponents(self, N: Optional[int] = None):
        """Every admissible exponent tuple, i.e. every character of the group.

        With N given, only characters with values in Q(zeta_N) are produced.
        """
        step = 1 if N is None else self.exponent // math.gcd(self.exponent, N)
        for exps in itertools.product(range(0, self.exponent, step), repeat=len(self.gens)):
            if self.admissible(exps):
                yield exps


@lru_cache(maxsize=None)
def unit_group(place: LocalPlace, e: int, base: bool = False) -> UnitGroupPresentation:
    return UnitGroupPresentation(UnitRing(place, e, base))


def primitive_characters(place: LocalPlace, e: int, z: CycScalar, half_twist: int = 0):
    """All characters of a field place with conductor exactly e and uniformizer value z."""
    field = z.field
    pres = unit_group(place, e)
    kernel = pres.ring.kernel_of_reduction()
    for exps in pres.all_exponents(field.N):
        table = pres.table(exps, field)
        if e >= 1 and all(table[lab] == 1 for lab in kernel):
            continue
        yield LocalCharacter(place, (TableCharacter(pres.ring, table, z),), half_twist)


class ComponentCharacter:
    """One factor lambda_w of a split-place character, viewed on Q_l^x.

    The half twist of the parent is distributed to the factor: the value at x
    is lambda_w(x) |x|_l^(s2/2).
    """

    def __init__(self, chi: LocalCharacter, index: int):
        if chi.place.ext_type != SPLIT:
            raise DomainError("components exist only at split places")
        self.parent = chi
        self.index = index
        self.part = chi.parts[index]
        self.ell = chi.place.ell
        self.field = chi.field
        self.half_twist = chi.half_twist

    @property
    def conductor(self) -> int:
        return self.part.conductor

    @property
    def uniformizer_value(self) -> CycScalar:
        return self.part.uniformizer_value

    def __call__(self, x: Rational) -> CycScalar:
        x = Fraction(x)
        if x == 0:
            raise DomainError("character evaluated at 0")
        o = vl(x, self.ell)
        value = _base_eval(self.part, x, o)
        s = self.half_twist * o
        if s == 0:
            return value
        ell = self.ell
        if s % 2 == 0:
            return value * Fraction(1, ell) ** (s // 2)
        return value * (Fraction(1, ell) ** ((s + 1) // 2)) * sqrt_prime(self.field, ell)

    def inverse(self) -> "ComponentCharacter":
        return ComponentCharacter(char_inverse(self.parent), self.index)


def components(chi: LocalCharacter) -> tuple[ComponentCharacter, ComponentCharacter]:
    """(lambda_w, lambda_wbar) of a split-place character."""
    return ComponentCharacter(chi, 0), ComponentCharacter(chi, 1)
