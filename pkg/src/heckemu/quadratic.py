"""Imaginary quadratic fields of class number one, their primes and residue rings.

Elements are x + y*omega with omega^2 = t*omega - n, where omega = sqrt(d)/2
for d = 0 mod 4 and (1 + sqrt(d))/2 otherwise.  Every ideal is principal, so
ideals are handled through a chosen generator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterator, Optional

from .local import INERT, RAMIFIED, SPLIT, LocalElement, LocalPlace, mod_ell_power
from .scalars import AmbientField, CycScalar, root_of_unity, sqrt_prime

CLASS_NUMBER_ONE = (-3, -4, -7, -8, -11, -19, -43, -67, -163)


class ArithmeticError_(ValueError):
    pass


@dataclass(frozen=True)
class QElement:
    K: "QuadraticField"
    x: Fraction
    y: Fraction

    def _lift(self, other) -> "QElement":
        if isinstance(other, QElement):
            return other
        return QElement(self.K, Fraction(other), Fraction(0))

    def __add__(self, other):
        o = self._lift(other)
        return QElement(self.K, self.x + o.x, self.y + o.y)

    __radd__ = __add__

    def __neg__(self):
        return QElement(self.K, -self.x, -self.y)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        t, n = self.K.t, self.K.n
        yy = self.y * o.y
        return QElement(self.K, self.x * o.x - n * yy, self.x * o.y + self.y * o.x + t * yy)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = self.K.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conj(self) -> "QElement":
        return QElement(self.K, self.x + self.K.t * self.y, -self.y)

    def norm(self) -> Fraction:
        return self.x * self.x + self.K.t * self.x * self.y + self.K.n * self.y * self.y

    def trace(self) -> Fraction:
        return 2 * self.x + self.K.t * self.y

    def inverse(self) -> "QElement":
        nm = self.norm()
        if nm == 0:
            raise ArithmeticError_("zero is not invertible")
        c = self.conj()
        return QElement(self.K, c.x / nm, c.y / nm)

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0

    def is_integral(self) -> bool:
        return self.x.denominator == 1 and self.y.denominator == 1

    def divides(self, other: "QElement") -> bool:
        return (other / self).is_integral()

    def key(self) -> tuple[int, int]:
        if not self.is_integral():
            raise ArithmeticError_(f"{self} is not integral")
        return int(self.x), int(self.y)

    def __repr__(self):
        return f"({self.x} + {self.y}*w)"


def kronecker(d: int, ell: int) -> int:
    """The Kronecker symbol (d / ell) for a prime ell."""
    if d % ell == 0:
        return 0
    if ell == 2:
        return 1 if d % 8 in (1, 7) else -1
    return 1 if pow(d % ell, (ell - 1) // 2, ell) == 1 else -1


class QuadraticField:
    def __init__(self, disc: int):
        if disc not in CLASS_NUMBER_ONE:
            raise ArithmeticError_(f"discriminant {disc} is not that of a class-number-one imaginary quadratic field")
        self.disc = disc
        if disc % 4 == 0:
            self.t, self.n = 0, -disc // 4
        else:
            self.t, self.n = 1, (1 - disc) // 4

    def __repr__(self):
        return f"QuadraticField({self.disc})"

    def __eq__(self, other):
        return isinstance(other, QuadraticField) and other.disc == self.disc

    def __hash__(self):
        return hash(("K", self.disc))

    def elem(self, x, y=0) -> QElement:
        return QElement(self, Fraction(x), Fraction(y))

    def one(self) -> QElement:
        return self.elem(1)

    @property
    def omega(self) -> QElement:
        return self.elem(0, 1)

    def sqrt_disc(self) -> QElement:
        """2*omega - t, a square root of d."""
        return self.elem(-self.t, 2)

    @cached_property
    def units(self) -> tuple[QElement, ...]:
        found = []
        for y in range(-2, 3):
            for x in range(-2, 3):
                a = self.elem(x, y)
                if a.norm() == 1:
                    found.append(a)
        return tuple(sorted(found, key=lambda a: (a.x, a.y)))

    def split_type(self, ell: int) -> str:
        k = kronecker(self.disc, ell)
        return RAMIFIED if k == 0 else (SPLIT if k == 1 else INERT)

    def ramified_primes(self) -> list[int]:
        return [q for q in _prime_factors(abs(self.disc))]

    def elements_of_norm(self, m: int) -> Iterator[QElement]:
        """All integral elements of norm m, in a fixed order."""
        bound = int(math.isqrt(4 * m)) + 2
        for y in range(-bound, bound + 1):
            for x in range(-bound - abs(y), bound + abs(y) + 1):
                a = self.elem(x, y)
                if a.norm() == m:
                    yield a

    def prime_generator(self, ell: int) -> QElement:
        """A generator of one prime above ell (ell itself when inert)."""
        return self._prime_generator(ell)

    @lru_cache(maxsize=None)
    def _prime_generator(self, ell: int) -> QElement:
        if self.split_type(ell) == INERT:
            return self.elem(ell)
        for a in sorted(self.elements_of_norm(ell), key=lambda a: (abs(a.x) + abs(a.y), -a.x, -a.y)):
            return a
        raise ArithmeticError_(f"no element of norm {ell}")

    @lru_cache(maxsize=None)
    def is_norm(self, m: int) -> bool:
        return next(iter(self.elements_of_norm(m)), None) is not None

    def valuation(self, alpha: QElement, pi: QElement) -> int:
        """Order of alpha at the prime ideal (pi); alpha integral and nonzero."""
        if alpha.is_zero():
            raise ArithmeticError_("valuation of zero")
        v = 0
        while pi.divides(alpha):
            alpha = alpha / pi
            v += 1
        return v

    def prime_power_order(self, alpha: QElement, pi: QElement) -> int:
        """Order at (pi) of any nonzero element (denominators allowed)."""
        ell = _prime_factors(int(pi.norm()))[0]
        d = alpha.x.denominator * alpha.y.denominator
        k = 0
        while d % ell == 0:
            d //= ell
            k += 1
        scale = ell ** k
        ord_ell = 2 if self.split_type(ell) == RAMIFIED else 1
        return self.valuation(alpha * scale, pi) - k * ord_ell

    # -- complex embedding into the ambient cyclotomic field ----------------------

    def embedding_modulus(self) -> int:
        """N must be a multiple of this for K to embed."""
        return 4 * abs(self.disc) if self.disc not in (-3, -4) else (12 if self.disc == -3 else 4)

    def embed(self, alpha: QElement, field: AmbientField) -> CycScalar:
        """alpha under omega -> the root with positive imaginary part."""
        i = root_of_unity(field, field.N // 4)
        if self.disc == -4:
            root = i * 2
        elif self.disc == -8:
            root = i * sqrt_prime(field, 2) * 2
        else:
            root = i * sqrt_prime(field, -self.disc)
        omega = (root + self.t) * Fraction(1, 2)
        return omega * alpha.y + alpha.x


def _prime_factors(m: int) -> list[int]:
    out = []
    q = 2
    while q * q <= m:
        if m % q == 0:
            out.append(q)
            while m % q == 0:
                m //= q
        q += 1
    if m > 1:
        out.append(m)
    return out


def prime_factors(m: int) -> list[int]:
    return _prime_factors(abs(m))


class Modulus:
    """The residue ring O_K / (f) for a nonzero integral f."""

    def __init__(self, K: QuadraticField, f: QElement):
        if f.is_zero() or not f.is_integral():
            raise ArithmeticError_("modulus must be a nonzero integral element")
        self.K = K
        self.f = f
        fx, fy = int(f.x), int(f.y)
        r1 = (fx, fy)
        g = f * K.omega
        r2 = (int(g.x), int(g.y))
        a1, b1 = r1
        a2, b2 = r2
        gcd, u, v = _xgcd(a1, a2)
        if gcd == 0:
            raise ArithmeticError_("degenerate modulus")
        self.A = abs(gcd)
        s = 1 if gcd > 0 else -1
        self.B = s * (u * b1 + v * b2)
        c = (a2 // gcd) * b1 - (a1 // gcd) * b2
        self.C = abs(c)
        if self.A * self.C != int(f.norm()):
            raise ArithmeticError_("lattice index does not match the norm")
        self.primes = self._factor()

    def _factor(self) -> list[tuple[QElement, int, int]]:
        """(generator, exponent, rational prime) for each prime dividing (f)."""
        K = self.K
        out = []
        for ell in prime_factors(int(self.f.norm())):
            typ = K.split_type(ell)
            pi = K.prime_generator(ell)
            cands = [pi] if typ != SPLIT else [pi, pi.conj()]
            for c in cands:
                e = K.valuation(self.f, c)
                if e:
                    out.append((c, e, ell))
        return out

    @property
    def size(self) -> int:
        return self.A * self.C

    def reduce(self, alpha: QElement) -> tuple[int, int]:
        if not alpha.is_integral():
            raise ArithmeticError_(f"residue of non-integral {alpha}")
        x, y = int(alpha.x), int(alpha.y)
        k = x // self.A
        x -= k * self.A
        y -= k * self.B
        return x, y % self.C

    def residues(self) -> list[tuple[int, int]]:
        return [(x, y) for x in range(self.A) for y in range(self.C)]

    def is_unit(self, alpha: QElement) -> bool:
        return all(not pi.divides(alpha) for pi, _, _ in self.primes)

    def unit_residues(self) -> list[tuple[int, int]]:
        K = self.K
        return [r for r in self.residues() if self.is_unit(K.elem(*r))]

    def idempotent(self, index: int) -> QElement:
        """E with E = 1 mod pi_i^e_i and E = 0 mod the other prime powers of f."""
        K = self.K
        pi, e, _ = self.primes[index]
        part = pi ** e
        rest = self.f / part
        sub = Modulus(K, part)
        for r in Modulus(K, part).residues():
            cand = rest * K.elem(*r)
            if sub.reduce(cand) == sub.reduce(K.one()):
                return cand
        raise ArithmeticError_("prime powers of the modulus are not coprime")


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def hensel_root(t: int, n: int, ell: int, k: int, pick: int) -> int:
    """A root of x^2 - t x + n mod ell^k lifting the residue ``pick`` (a simple root mod ell)."""
    r = pick % ell
    mod = ell
    for _ in range(1, k):
        mod *= ell
        f = r * r - t * r + n
        df = 2 * r - t
        r = (r - f * pow(df, -1, mod)) % mod
    return r
