"""Exact arithmetic in a single cyclotomic field Q(zeta_N) with valuations above p.

Elements are stored as an integer numerator vector in the power basis
1, zeta, ..., zeta^(phi(N)-1) over a positive common denominator.  The
power basis is an integral basis of Z[zeta_N], which is what makes the
valuation code below work without any lattice bookkeeping at runtime.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import sympy
from flint import fmpq_poly, fmpz_poly

INFINITY = math.inf


class FieldMismatch(ValueError):
    pass


class FieldTooSmall(ValueError):
    pass


class ValuationBoundExceeded(ArithmeticError):
    pass


def totient(n: int) -> int:
    return int(sympy.totient(n))


def cyclotomic_coefficients(n: int) -> list[int]:
    """Coefficients of the n-th cyclotomic polynomial, constant term first."""
    x = sympy.Symbol("x")
    poly = sympy.Poly(sympy.cyclotomic_poly(n, x), x)
    return [int(c) for c in reversed(poly.all_coeffs())]


class AmbientField:
    """Q(zeta_N); one instance per N (use ``AmbientField.of``)."""

    _cache: dict[int, "AmbientField"] = {}

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("root-of-unity order must be positive")
        self.N = n
        self.degree = totient(n)
        self.defining_polynomial = cyclotomic_coefficients(n)
        self.modulus = fmpz_poly(self.defining_polynomial)
        self._powers: dict[int, fmpz_poly] = {}
        self._zero = None
        self._one = None
        self.cache: dict = {}

    @classmethod
    def of(cls, n: int) -> "AmbientField":
        f = cls._cache.get(n)
        if f is None:
            f = cls(n)
            cls._cache[n] = f
        return f

    def __repr__(self):
        return f"AmbientField({self.N})"

    def __reduce__(self):
        return (AmbientField.of, (self.N,))

    def power_poly(self, k: int) -> fmpz_poly:
        """zeta^k reduced into the power basis."""
        k %= self.N
        poly = self._powers.get(k)
        if poly is None:
            poly = fmpz_poly([0] * k + [1]) % self.modulus
            self._powers[k] = poly
        return poly

    def power_vector(self, k: int) -> tuple[int, ...]:
        return _padded(self.power_poly(k), self.degree)

    def zero(self) -> "CycScalar":
        if self._zero is None:
            self._zero = CycScalar(self, fmpz_poly(), 1)
        return self._zero

    def one(self) -> "CycScalar":
        if self._one is None:
            self._one = CycScalar(self, fmpz_poly([1]), 1)
        return self._one

    def rational(self, q) -> "CycScalar":
        q = Fraction(q)
        return CycScalar(self, fmpz_poly([q.numerator]), q.denominator)

    def zeta(self, k: int = 1) -> "CycScalar":
        return root_of_unity(self, k)

    def from_coefficients(self, coeffs: Sequence) -> "CycScalar":
        fr = [Fraction(c) for c in coeffs]
        if len(fr) > self.degree:
            raise ValueError("too many coefficients for this field")
        den = 1
        for c in fr:
            den = den * c.denominator // math.gcd(den, c.denominator)
        return CycScalar(self, fmpz_poly([int(c * den) for c in fr]), den)

    def from_power_sum(self, terms: Iterable[tuple[int, int]]) -> "CycScalar":
        """Sum of c * zeta^k over (k, c) pairs with integer c."""
        acc = [0] * self.N
        for k, c in terms:
            acc[k % self.N] += int(c)
        return CycScalar(self, fmpz_poly(acc) % self.modulus, 1)


def _padded(poly: fmpz_poly, d: int) -> tuple[int, ...]:
    cs = [int(c) for c in poly.coeffs()]
    return tuple(cs + [0] * (d - len(cs)))


class CycScalar:
    """An element of Q(zeta_N): ``poly`` (integer coefficients, degree < phi(N)) over ``den`` > 0."""

    __slots__ = ("field", "poly", "den", "_nums", "_hash")

    def __init__(self, field: AmbientField, poly, den: int = 1):
        if not isinstance(poly, fmpz_poly):
            poly = fmpz_poly(list(poly))
        if den < 0:
            poly = -poly
            den = -den
        if den != 1:
            g = math.gcd(int(poly.content()), den) if not poly.is_zero() else den
            if g > 1:
                poly = poly // g
                den //= g
        self.field = field
        self.poly = poly
        self.den = den
        self._nums = None
        self._hash = None

    @property
    def nums(self) -> tuple[int, ...]:
        """Integer numerator vector in the power basis, length phi(N)."""
        if self._nums is None:
            self._nums = _padded(self.poly, self.field.degree)
        return self._nums

    # -- coercion helpers ------------------------------------------------
    def _coerce(self, other) -> "CycScalar":
        if isinstance(other, CycScalar):
            if other.field is not self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.rational(other)
        return NotImplemented

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(a, self.den) for a in self.nums)

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def is_rational(self) -> bool:
        return self.poly.degree() <= 0

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not a rational scalar")
        return Fraction(int(self.poly[0]), self.den)

    # -- ring operations ---------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return CycScalar(self.field, self.poly + o.poly, self.den)
        return CycScalar(self.field, self.poly * o.den + o.poly * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return CycScalar(self.field, -self.poly, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return CycScalar(self.field, self.poly * q.numerator, self.den * q.denominator)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return CycScalar(self.field, (self.poly * o.poly) % self.field.modulus, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            if q == 0:
                raise ZeroDivisionError("division by zero scalar")
            return self * (1 / q)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field.rational(other)
        if not isinstance(other, CycScalar):
            return NotImplemented
        return self.field is other.field and self.den == other.den and self.poly == other.poly

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field.N, self.nums, self.den))
        return self._hash

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coefficients):
            if c:
                terms.append(f"{c}" if i == 0 else f"{c}*z^{i}")
        return f"<{' + '.join(terms) or '0'} in Q(zeta_{self.field.N})>"

    def __reduce__(self):
        return (_rebuild_scalar, (self.field.N, self.nums, self.den))

    # -- Galois action, norm, inverse -------------------------------------
    def galois(self, a: int) -> "CycScalar":
        """Image under zeta -> zeta^a (a prime to N)."""
        n = self.field.N
        if math.gcd(a, n) != 1:
            raise ValueError("Galois exponent must be prime to N")
        acc = [0] * n
        for i, c in enumerate(self.nums):
            if c:
                acc[(a * i) % n] += c
        return CycScalar(self.field, fmpz_poly(acc) % self.field.modulus, self.den)

    def conjugate(self) -> "CycScalar":
        return self.galois(-1)

    def norm(self) -> Fraction:
        prod = self.field.one()
        for a in range(1, self.field.N + 1):
            if math.gcd(a, self.field.N) == 1:
                prod = prod * self.galois(a)
        return prod.to_rational()

    def inverse(self) -> "CycScalar":
        """Inverse through the extended gcd with the cyclotomic polynomial over Q."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational():
            return self.field.rational(1 / self.to_rational())
        a = fmpq_poly(self.poly)
        g, s, _ = a.xgcd(fmpq_poly(self.field.modulus))
        s = s * self.den / g[0]
        return CycScalar(self.field, s.numer(), int(s.denom()))

    def inverse_by_norm(self) -> "CycScalar":
        """Inverse as (product of the other conjugates) / norm; slow, kept as a cross-check."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        others = self.field.one()
        for a in range(2, self.field.N + 1):
            if math.gcd(a, self.field.N) == 1:
                others = others * self.galois(a)
        nrm = (self * others).to_rational()
        return others * (1 / nrm)

    def complex_value(self) -> complex:
        """Value under zeta_N -> exp(2 pi i / N) (floating point, diagnostics only)."""
        z = cmath.exp(2j * cmath.pi / self.field.N)
        return sum(complex(c) * z ** i for i, c in enumerate(self.coefficients))

    def to_json(self) -> list[str]:
        return [f"{c.numerator}/{c.denominator}" for c in self.coefficients]

    @classmethod
    def from_json(cls, field: AmbientField, data: Sequence[str]) -> "CycScalar":
        return field.from_coefficients([Fraction(s) for s in data])


def _rebuild_scalar(n: int, nums: tuple, den: int) -> CycScalar:
    return CycScalar(AmbientField.of(n), fmpz_poly(list(nums)), den)


def _mul_vectors(field: AmbientField, a: Sequence[int], b: Sequence[int]) -> tuple:
    return _padded((fmpz_poly(list(a)) * fmpz_poly(list(b))) % field.modulus, field.degree)


def root_of_unity(field: AmbientField, k: int) -> CycScalar:
    return CycScalar(field, field.power_poly(k), 1)


def sqrt_prime(field: AmbientField, ell: int) -> CycScalar:
    """The positive square root of the prime ell inside Q(zeta_N); needs 4*ell | N."""
    key = ("sqrt", ell)
    cached = field.cache.get(key)
    if cached is None:
        cached = field.cache[key] = _sqrt_prime(field, ell)
    return cached


def _sqrt_prime(field: AmbientField, ell: int) -> CycScalar:
    if field.N % (4 * ell):
        raise FieldTooSmall(f"sqrt({ell}) needs 4*{ell} | N, got N={field.N}")
    if ell == 2:
        z8 = field.N // 8
        root = root_of_unity(field, z8) + root_of_unity(field, -z8)
    else:
        step = field.N // ell
        terms = [(a * step, sympy.legendre_symbol(a, ell)) for a in range(1, ell)]
        root = field.from_power_sum(terms)
        if ell % 4 == 3:
            root = root * root_of_unity(field, -field.N // 4)
    if root.complex_value().real < 0:
        root = -root
    return root


# -- primes above p ------------------------------------------------------

def _factor_mod_p(n: int, p: int) -> list[tuple[tuple[int, ...], int]]:
    """Monic irreducible factors of Phi_n mod p as (coefficients low->high, multiplicity)."""
    x = sympy.Symbol("x")
    poly = sympy.Poly(sympy.cyclotomic_poly(n, x), x, modulus=p)
    _, factors = poly.factor_list()
    out = []
    for f, mult in factors:
        coeffs = [int(c) % p for c in reversed(f.all_coeffs())]
        lead = coeffs[-1]
        inv = pow(lead, -1, p)
        coeffs = [(c * inv) % p for c in coeffs]
        out.append((tuple(coeffs), mult))
    return out


def _lex_key(coeffs: tuple[int, ...]):
    # degree first, then coefficients from the top down, residues in [0, p)
    return (len(coeffs), tuple(reversed(coeffs)))


class PrimePlan:
    """A prime ideal P = (p, h(zeta)) of Z[zeta_N] fixing ord_p and m_p.

    ``ordp`` returns the valuation normalized so that ord_p(p) = 1.
    """

    def __init__(self, field: AmbientField, p: int, val_bound: int = 256):
        if not sympy.isprime(p):
            raise ValueError(f"{p} is not prime")
        self.field = field
        self.p = p
        self.val_bound = val_bound
        n = field.N
        a = 0
        m = n
        while m % p == 0:
            m //= p
            a += 1
        self.p_exponent = a
        self.ramification_index = totient(p ** a)
        factors = _factor_mod_p(n, p)
        factors.sort(key=lambda fm: _lex_key(fm[0]))
        self.factor = factors[0][0]
        self.residue_degree = len(self.factor) - 1
        self.ideal_generators = (p, self.factor)
        self._others = [f for f, _ in factors[1:]]
        self._beta = self._build_divider()

    def __reduce__(self):
        return (_rebuild_plan, (self.field.N, self.p, self.val_bound))

    def _poly_at_zeta(self, coeffs: Sequence[int]) -> fmpz_poly:
        return self.field.from_power_sum(enumerate(coeffs)).poly

    def _build_divider(self) -> fmpz_poly:
        """An integral beta with v_P(beta) = e - 1 and v_Q(beta) >= e at the other Q above p."""
        f = self.field
        e = self.ramification_index
        beta = fmpz_poly([1])
        for other in self._others:
            h = self._poly_at_zeta(other)
            for _ in range(e):
                beta = (beta * h) % f.modulus
        if e > 1:
            pi = (root_of_unity(f, f.N // self.p ** self.p_exponent) - 1).poly
            for _ in range(e - 1):
                beta = (beta * pi) % f.modulus
        return beta

    def valuation_integral(self, nums) -> int:
        """v_P of a nonzero element of Z[zeta] given by its integer power-basis vector."""
        poly = nums if isinstance(nums, fmpz_poly) else fmpz_poly(list(nums))
        p = self.p
        e = self.ramification_index
        modulus = self.field.modulus
        v = 0
        while int(poly.content()) % p == 0:
            poly = poly // p
            v += e
            if v > self.val_bound:
                raise ValuationBoundExceeded("increase valuation bound")
        while True:
            y = (poly * self._beta) % modulus
            if int(y.content()) % p:
                return v
            poly = y // p
            v += 1
            if v > self.val_bound:
                raise ValuationBoundExceeded("increase valuation bound")

    def ordp(self, x: CycScalar):
        if x.field is not self.field:
            raise FieldMismatch(f"{x.field} vs {self.field}")
        if x.is_zero():
            return INFINITY
        v = self.valuation_integral(x.poly)
        d = x.den
        k = 0
        while d % self.p == 0:
            d //= self.p
            k += 1
        return Fraction(v, self.ramification_index) - k

    def is_unit_mod_mp(self, x: CycScalar) -> bool:
        return self.ordp(x) == 0

    def congruent(self, x: CycScalar, y: CycScalar) -> bool:
        """x == y mod m_p, for p-integral x and y."""
        return self.ordp(x - y) > 0

    def describe(self) -> dict:
        return {
            "p": self.p,
            "N": self.field.N,
            "factor_mod_p": list(self.factor),
            "ramification_index": self.ramification_index,
            "residue_degree": self.residue_degree,
        }

    # -- lattice view of P^k (independent membership test) -----------------
    def ideal_power_basis(self, k: int) -> list[list[int]]:
        """Hermite basis (rows) of P^k as a sublattice of Z^phi(N)."""
        return _ideal_power_hnf(self.field.N, self.p, self.factor, k)

    def in_ideal_power(self, nums: Sequence[int], k: int) -> bool:
        basis = self.ideal_power_basis(k)
        vec = list(nums)
        for row in basis:
            piv = next(i for i, c in enumerate(row) if c)
            q, r = divmod(vec[piv], row[piv])
            if q:
                vec = [a - q * b for a, b in zip(vec, row)]
        return not any(vec)


def _rebuild_plan(n, p, bound):
    return prime_above(AmbientField.of(n), p, bound)


@lru_cache(maxsize=None)
def _prime_plan_cached(n: int, p: int, bound: int) -> PrimePlan:
    return PrimePlan(AmbientField.of(n), p, bound)


def prime_above(field: AmbientField, p: int, val_bound: int = 256) -> PrimePlan:
    return _prime_plan_cached(field.N, p, val_bound)


def _hnf_rows(rows: list[list[int]], dim: int, modulus: int) -> list[list[int]]:
    """Row-style Hermite form of the lattice spanned by ``rows`` and modulus * Z^dim."""
    rows = [[a % modulus for a in r] for r in rows]
    rows = [r for r in rows if any(r)]
    basis: list[list[int]] = []
    for col in range(dim):
        rows.append([modulus if i == col else 0 for i in range(dim)])
        pivot_rows = [r for r in rows if r[col] != 0]
        rest = [r for r in rows if r[col] == 0]
        while len(pivot_rows) > 1:
            pivot_rows.sort(key=lambda r: abs(r[col]))
            piv = pivot_rows[0]
            new = [piv]
            for r in pivot_rows[1:]:
                q = r[col] // piv[col]
                r = [a - q * b for a, b in zip(r, piv)]
                (new if r[col] else rest).append(r)
            pivot_rows = new
        if pivot_rows:
            piv = pivot_rows[0]
            if piv[col] < 0:
                piv = [-a for a in piv]
            basis.append(piv)
        rows = [[a % modulus for a in r] for r in rest]
        rows = [r for r in rows if any(r)]
    return basis


@lru_cache(maxsize=None)
def _ideal_power_hnf(n: int, p: int, factor: tuple, k: int) -> list[list[int]]:
    field = AmbientField.of(n)
    d = field.degree
    e = totient(p ** _p_part(n, p))
    modulus = p ** (-(-k // e))
    h = field.from_power_sum(enumerate(factor)).nums
    gens = [field.rational(p).nums, h]
    current = [field.one().nums]
    for _ in range(k):
        products = []
        for b in current:
            for g in gens:
                prod = _mul_vectors(field, b, g)
                for j in range(d):
                    products.append(list(_mul_vectors(field, prod, field.power_vector(j))))
        current = [tuple(r) for r in _hnf_rows(products, d, modulus)]
    return [list(r) for r in _hnf_rows([list(c) for c in current], d, modulus)]


def _p_part(n: int, p: int) -> int:
    a = 0
    while n % p == 0:
        n //= p
        a += 1
    return a
