"""Grid maps over (beta, cusp): minimal-valuation search and the vanishing audit.

Rows are computed in grid order, optionally by a pool of forked workers that
inherit the validated family; the merged result is identical for any number
of workers.
"""

from __future__ import annotations

import multiprocessing
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .family import Family, GridSpec, beta_grid, fourier_coefficient
from .local import INERT, DomainError, mod_ell_power, vl
from .mu import NOT_RSD, SELF_DUAL, MuReport, classify, mu_family
from .scalars import INFINITY

_WORKER_FAMILY: Optional[Family] = None


@dataclass(frozen=True)
class Row:
    beta: Fraction
    cusp: int
    ordp: object

    @property
    def is_zero(self) -> bool:
        return self.ordp == INFINITY

    def to_json(self) -> dict:
        return {"beta": str(self.beta), "cusp": self.cusp,
                "ordp": "inf" if self.ordp == INFINITY else str(Fraction(self.ordp))}


def _row(fam: Family, beta: Fraction, cusp: int) -> Row:
    return Row(beta, cusp, fourier_coefficient(fam, beta, cusp, with_product=False).ordp)


def _worker_rows(tasks):
    fam = _WORKER_FAMILY
    return [_row(fam, b, c) for b, c in tasks]


def grid_rows(fam: Family, betas, jobs: int = 1) -> list[Row]:
    """ordp of the coefficient at every (beta, cusp), in the order given."""
    tasks = [(b, c) for b in betas for c in fam.spec.cusps]
    if jobs <= 1 or len(tasks) < 2:
        return [_row(fam, b, c) for b, c in tasks]
    global _WORKER_FAMILY
    _WORKER_FAMILY = fam
    jobs = min(jobs, len(tasks))
    size = -(-len(tasks) // jobs)
    chunks = [tasks[i:i + size] for i in range(0, len(tasks), size)]
    ctx = multiprocessing.get_context("fork")
    try:
        with ctx.Pool(jobs) as pool:
            parts = pool.map(_worker_rows, chunks)
    finally:
        _WORKER_FAMILY = None
    return [row for part in parts for row in part]


def _class_parity(fam: Family, report: MuReport, sign: Optional[str]) -> Optional[int]:
    """The l-adic order parity fixed by the sign class (inert twist prime only)."""
    cls = report.classification
    if sign is None or cls.delta_plus is None:
        return None
    return cls.delta_plus if sign == "+" else cls.delta_minus


def _ord_json(v):
    return "inf" if v == INFINITY else str(Fraction(v))


def min_valuation_search(fam: Family, residue: int, mod_power: Optional[int] = None,
                         grid: Optional[GridSpec] = None, sign: Optional[str] = None,
                         report: Optional[MuReport] = None, jobs: int = 1) -> dict:
    """Look for beta = residue mod l^r on the grid whose coefficient has ordp equal to the family mu.

    For an inert twist prime and a (residually) self-dual family the search
    runs in one sign class; ``sign`` defaults to '+'.  Returns a witness or
    an exhaustion report, plus every grid beta whose ordp falls below the
    target (there should be none).
    """
    g = grid or fam.spec.grid
    r = g.mod_power if mod_power is None else mod_power
    if r < 0 or r > g.mod_power:
        raise DomainError(f"residue power {r} is beyond the grid bound {g.mod_power}")
    report = report or mu_family(fam)
    ell = fam.ell
    inert = fam.places[ell].place.ext_type == INERT
    if sign is None and inert and report.classification.kind != NOT_RSD:
        sign = "+"
    if sign not in (None, "+", "-"):
        raise DomainError(f"unknown sign class {sign!r}")
    target = report.target(sign)
    if target is None:
        raise DomainError(f"the classification {report.classification.kind} has no {sign} class here")
    parity = _class_parity(fam, report, sign)
    modulus = ell ** r
    u = residue % modulus
    betas = []
    for beta in beta_grid(fam, g):
        o = vl(beta, ell)
        if o < 0:
            continue
        if r and mod_ell_power(beta, ell, r) != u:
            continue
        if parity is not None and o % 2 != parity:
            continue
        betas.append(beta)
    if not betas:
        raise DomainError(f"no grid beta is {u} mod {ell}^{r} in the requested class")
    rows = grid_rows(fam, betas, jobs)
    witness = next((row for row in rows if row.ordp == target), None)
    below = [row for row in rows if target != INFINITY and row.ordp < target]
    finite = [row.ordp for row in rows if row.ordp != INFINITY]
    return {
        "residue": u,
        "mod_power": r,
        "twist_prime": ell,
        "sign": sign,
        "parity": parity,
        "target_mu": _ord_json(target),
        "witness": witness.to_json() if witness else None,
        "checked": len(rows),
        "min_ordp_seen": _ord_json(min(finite)) if finite else "inf",
        "all_zero": not finite,
        "below_target": [row.to_json() for row in below],
        "grid": g.to_json(),
        "status": "anomaly" if below or (witness is None and target != INFINITY) else "ok",
    }


def class_residues(ell: int, r: int, parity: Optional[int]) -> list[int]:
    """Residues mod l^r of the class; with a parity, those of elements of exact order parity."""
    if parity is None:
        return list(range(ell ** r))
    if parity >= r:
        return [0]
    return [u for u in range(1, ell ** r) if vl(Fraction(u), ell) == parity]


def search_all_residues(fam: Family, mod_power: Optional[int] = None, grid: Optional[GridSpec] = None,
                        sign: Optional[str] = None, jobs: int = 1) -> list[dict]:
    g = grid or fam.spec.grid
    r = g.mod_power if mod_power is None else mod_power
    report = mu_family(fam)
    if sign is None and report.classification.delta_plus is not None:
        sign = "+"
    parity = _class_parity(fam, report, sign)
    return [min_valuation_search(fam, u, r, g, sign, report, jobs) for u in class_residues(fam.ell, r, parity)]


def vanishing_audit(fam: Family, grid: Optional[GridSpec] = None, jobs: int = 1) -> dict:
    """Exact zeros predicted for self-dual families.

    Root number -1 with a split twist prime: every coefficient vanishes.
    Inert twist prime: every beta whose l-adic order has the minus parity
    gives zero.  Any nonzero coefficient there is an anomaly.
    """
    cls = classify(fam)
    if cls.kind != SELF_DUAL:
        raise DomainError(f"the vanishing audit needs a self-dual family, got {cls.kind}")
    g = grid or fam.spec.grid
    ell = fam.ell
    inert = fam.places[ell].place.ext_type == INERT
    betas = beta_grid(fam, g)
    rows = grid_rows(fam, betas, jobs)
    if inert:
        predicted = [row for row in rows if vl(row.beta, ell) % 2 == cls.delta_minus]
        other = [row for row in rows if vl(row.beta, ell) % 2 != cls.delta_minus]
        rule = f"ord_{ell}(beta) = {cls.delta_minus} mod 2"
    elif cls.global_root_number == -1:
        predicted, other = rows, []
        rule = "all beta (root number -1, split twist prime)"
    else:
        predicted, other = [], rows
        rule = "none (root number +1, split twist prime)"
    anomalies = [row for row in predicted if not row.is_zero]
    nonzero = next((row for row in other if not row.is_zero), None)
    return {
        "twist_prime": ell,
        "twist_prime_type": fam.places[ell].place.ext_type,
        "global_root_number": cls.global_root_number,
        "delta_minus": cls.delta_minus,
        "vanishing_rule": rule,
        "checked": len(rows),
        "predicted_zero": len(predicted),
        "anomalies": [row.to_json() for row in anomalies],
        "nonzero_example": nonzero.to_json() if nonzero else None,
        "grid": g.to_json(),
        "status": "anomaly" if anomalies else "ok",
    }
