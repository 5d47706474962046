"""Builders for the shipped sample families over Q(i) with p = 5.

The base is the weight-one character lambda0((alpha)) = alpha / u(alpha),
where u(alpha) is the unit with alpha = u mod (2 + 2i).  Samples a, b and d
twist it by a finite-order character; sample c uses alpha^5 in place of
alpha, so it has weight five.  The JSON files under specs/ are the output of
``write_samples``.
"""

from __future__ import annotations

import json
import os
from dataclasses import replace as _replace

from .family import FamilySpec, GridSpec, PlaceSpec, character_table
from .quadratic import Modulus, QElement, QuadraticField

K = QuadraticField(-4)
BASE_MODULUS = K.elem(2, 2)


_BASE = Modulus(K, BASE_MODULUS)
_UNIT_RESIDUES = {_BASE.reduce(u): j for j, u in enumerate((K.one(), K.elem(0, 1), K.elem(-1), K.elem(0, -1)))}


def _unit_exponent(alpha: QElement) -> int:
    """j with alpha = i^j mod (2 + 2i)."""
    try:
        return _UNIT_RESIDUES[_BASE.reduce(alpha)]
    except KeyError:
        raise ValueError(f"{alpha} is not a unit mod 2 + 2i") from None


def _legendre_exponent(a: int, q: int) -> int:
    return 0 if pow(a % q, (q - 1) // 2, q) == 1 else 1


def _discrete_log(a: int, g: int, q: int) -> int:
    x, k = 1, 0
    while x != a % q:
        x = x * g % q
        k += 1
        if k > q:
            raise ValueError("not in the group")
    return k


def _spec(name, f, order, exponent, places, ell_twist, cusps, grid, theta=None):
    modulus, order, values = character_table(K, f, order, exponent)
    return FamilySpec(disc=-4, p=5, ell_twist=ell_twist, infinity_type=(1, 0), modulus=modulus,
                      char_order=order, char_values=values, places=tuple(places), cusps=tuple(cusps),
                      theta=theta, grid=grid, name=name)


def sample_a() -> FamilySpec:
    """lambda0 itself, twist prime 3 (inert); self-dual with root number +1."""
    return _spec("self-dual-plus", BASE_MODULUS, 4, lambda a: -_unit_exponent(a),
                 [PlaceSpec(2, "nsplit"), PlaceSpec(3, "S0"), PlaceSpec(5, "split1")],
                 3, [1, 13], GridSpec(-1, 3, 200, 2))


def sample_b() -> FamilySpec:
    """lambda0 times the quadratic character mod 13 composed with the norm."""
    f = BASE_MODULUS * 13
    return _spec("self-dual-minus", f, 4,
                 lambda a: -_unit_exponent(a) + 2 * _legendre_exponent(int(a.norm()), 13),
                 [PlaceSpec(2, "nsplit"), PlaceSpec(13, "split1"), PlaceSpec(17, "S0"), PlaceSpec(5, "split1")],
                 17, [1, 29], GridSpec(-1, 3, 200, 2))


def _inert_log(q: int) -> dict:
    """Discrete logarithm on (Z[i]/q)^x for an inert q, to the least generator."""
    def mul(a, b):
        return ((a[0] * b[0] - a[1] * b[1]) % q, (a[0] * b[1] + a[1] * b[0]) % q)
    order = q * q - 1
    for g in ((x, y) for y in range(q) for x in range(q)):
        if g == (0, 0):
            continue
        seen, cur = {}, (1, 0)
        for k in range(order):
            if cur in seen:
                break
            seen[cur] = k
            cur = mul(cur, g)
        if len(seen) == order:
            return seen
    raise ValueError("no generator")


def sample_c(ell_twist: int = 13) -> FamilySpec:
    """Weight five: chi_f(alpha) alpha^5 times an order-5 anticyclotomic character at 19.

    lambda*|_Q is a^-4 times tau, which is 1 mod 5 but not 1: residually
    self-dual and not self-dual.  19 = -1 mod 5 is inert, so the twist has
    positive local mu there.
    """
    log = _inert_log(19)

    def exponent(a: QElement) -> int:
        return -5 * _unit_exponent(a) + 4 * log[(int(a.x) % 19, int(a.y) % 19)]

    places = [PlaceSpec(2, "nsplit"), PlaceSpec(19, "nsplit"), PlaceSpec(ell_twist, "S0"), PlaceSpec(5, "split1")]
    spec = _spec("residually-self-dual", BASE_MODULUS * 19, 20, exponent, places, ell_twist, [1, 17],
                 GridSpec(-1, 2, 60, 2))
    return _replace(spec, infinity_type=(5, 0))


def sample_c_norm() -> FamilySpec:
    """lambda0 times an order-5 character mod 11 composed with the norm (11 inert)."""
    f = BASE_MODULUS * 11
    return _spec("residually-self-dual-norm-twist", f, 20,
                 lambda a: -5 * _unit_exponent(a) + 4 * _discrete_log(int(a.norm()) % 11, 2, 11),
                 [PlaceSpec(2, "nsplit"), PlaceSpec(11, "nsplit"), PlaceSpec(13, "S0"), PlaceSpec(5, "split1")],
                 13, [1, 17], GridSpec(-1, 2, 60, 2))


def sample_d() -> FamilySpec:
    """lambda0 times an order-7 character of (O/p29)^x; not residually self-dual."""
    pi29 = K.elem(5, 2)
    f = BASE_MODULUS * pi29

    def exponent(a: QElement) -> int:
        # (O/(5+2i)) = Z/29 via i -> -5/2 mod 29; 2 generates (Z/29)^x
        i_image = (-5 * pow(2, -1, 29)) % 29
        r = (int(a.x) + int(a.y) * i_image) % 29
        return -7 * _unit_exponent(a) + 4 * _discrete_log(r, 2, 29)

    return _spec("not-residually-self-dual", f, 28, exponent,
                 [PlaceSpec(2, "nsplit"), PlaceSpec(29, "split1", w=(5, -2)), PlaceSpec(3, "S0"),
                  PlaceSpec(5, "split1")],
                 3, [1, 13], GridSpec(-1, 2, 80, 2))


SAMPLES = {"a": sample_a, "b": sample_b, "c": sample_c, "d": sample_d}
FILENAMES = {"a": "self_dual_plus.json", "b": "self_dual_minus.json",
             "c": "residually_self_dual.json", "d": "not_residually_self_dual.json"}


def write_samples(directory: str) -> list[str]:
    os.makedirs(directory, exist_ok=True)
    paths = []
    for key, build in SAMPLES.items():
        path = os.path.join(directory, FILENAMES[key])
        with open(path, "w") as fh:
            json.dump(build().to_json(), fh, indent=1, sort_keys=True)
            fh.write("\n")
        paths.append(path)
    return paths
