"""Command line front end.  Every subcommand reads family specs and writes one JSON report.

Exit codes: 0 success, 1 anomaly (a verification or search found something
the theory rules out), 2 bad input (malformed or inconsistent spec, unknown
flag, a request outside the supported domain).
"""

from __future__ import annotations

import json
import sys
from dataclasses import replace
from fractions import Fraction
from typing import Optional

import click

from .epsilon import NORMALIZATION_TAG, epsilon_row, sign_mod_mp
from .family import Family, FamilySpec, SpecError, fourier_coefficient, load_spec, validate_family
from .local import DomainError
from .mu import classify, global_root_number, mu_family
from .samples import SAMPLES
from .search import min_valuation_search, search_all_residues, vanishing_audit
from .verify import SIZES, run_suite

EXIT_OK = 0
EXIT_ANOMALY = 1
EXIT_INPUT = 2


def _emit(doc: dict, out: Optional[str]) -> None:
    text = json.dumps(doc, sort_keys=True, indent=1) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _apply_overrides(spec: FamilySpec, ord_min, ord_max, mod_power, val_bound) -> FamilySpec:
    grid = spec.grid
    if ord_min is not None:
        grid = replace(grid, ord_min=ord_min)
    if ord_max is not None:
        grid = replace(grid, ord_max=ord_max)
    if mod_power is not None:
        grid = replace(grid, mod_power=mod_power)
    if grid.ord_min > grid.ord_max:
        raise SpecError("grid", f"grid ord_min {grid.ord_min} exceeds ord_max {grid.ord_max}")
    spec = replace(spec, grid=grid)
    if val_bound is not None:
        if val_bound < 1:
            raise SpecError("malformed", "--val-bound must be positive")
        spec = replace(spec, val_bound=val_bound)
    return spec


def _family(opts: dict) -> Family:
    spec = load_spec(opts["spec_path"])
    spec = _apply_overrides(spec, opts["grid_ord_min"], opts["grid_ord_max"], opts.get("mod_power"),
                            opts["val_bound"])
    return validate_family(spec)


def _envelope(command: str, fam: Family, result: dict) -> dict:
    return {
        "command": command,
        "spec": fam.spec.name,
        "ambient_N": fam.field.N,
        "prime_above_p": fam.plan.describe(),
        "normalization_tag": NORMALIZATION_TAG,
        "result": result,
    }


def _run(command: str, out: Optional[str], body) -> None:
    """Run ``body`` (returning (report, status)), write the report and exit with the right code."""
    try:
        doc, anomaly = body()
    except SpecError as exc:
        doc = {"command": command, "error": exc.code, "message": exc.message}
        _emit(doc, out)
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_INPUT)
    except DomainError as exc:
        doc = {"command": command, "error": "domain", "message": str(exc)}
        _emit(doc, out)
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_INPUT)
    _emit(doc, out)
    sys.exit(EXIT_ANOMALY if anomaly else EXIT_OK)


def common_options(func):
    """--spec, --out, grid overrides, --jobs and --val-bound."""
    options = [
        click.option("--spec", "spec_path", required=True, type=click.Path(dir_okay=False),
                     help="Family spec (JSON)."),
        click.option("--out", "out", type=click.Path(dir_okay=False), default=None,
                     help="Write the report here instead of stdout."),
        click.option("--grid-ord-min", type=int, default=None, help="Override the grid's least l-order."),
        click.option("--grid-ord-max", type=int, default=None, help="Override the grid's largest l-order."),
        click.option("--jobs", type=click.IntRange(min=1), default=1, show_default=True,
                     help="Worker processes for grid maps."),
        click.option("--val-bound", type=int, default=None, help="Valuation power bound for ord_p."),
    ]
    for option in reversed(options):
        func = option(func)
    return func


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
def main():
    """mu-invariants and local lemma checks for anticyclotomic Hecke character families."""


@main.command("classify")
@common_options
def classify_cmd(**opts):
    """Self-dual, residually self-dual, or neither (with an inert witness)."""
    def body():
        fam = _family(opts)
        return _envelope("classify", fam, classify(fam).to_json()), False
    _run("classify", opts["out"], body)


@main.command("mu")
@common_options
def mu_cmd(**opts):
    """The family mu-invariant with every intermediate."""
    def body():
        fam = _family(opts)
        return _envelope("mu", fam, mu_family(fam).to_json()), False
    _run("mu", opts["out"], body)


@main.command("epsilon")
@common_options
def epsilon_cmd(**opts):
    """Local epsilon factors and root-number ratios at every nonsplit place."""
    def body():
        fam = _family(opts)
        rows = [epsilon_row(d.chi_star, d.theta, fam.plan) for d in fam.field_places()]
        total = global_root_number(fam)
        result = {"places": rows, "global_ratio": total.to_json(),
                  "global_ratio_mod_mp": sign_mod_mp(total, fam.plan)}
        return _envelope("epsilon", fam, result), False
    _run("epsilon", opts["out"], body)


@main.command("coeff")
@common_options
@click.option("--beta", required=True, help="A positive rational, e.g. 7 or 5/3.")
@click.option("--cusp", type=int, default=1, show_default=True)
def coeff_cmd(beta, cusp, **opts):
    """One Fourier coefficient with its local factors."""
    def body():
        try:
            b = Fraction(beta)
        except (ValueError, ZeroDivisionError):
            raise SpecError("malformed", f"--beta must be a rational, got {beta!r}") from None
        fam = _family(opts)
        return _envelope("coeff", fam, fourier_coefficient(fam, b, cusp).to_json()), False
    _run("coeff", opts["out"], body)


@main.command("search")
@common_options
@click.option("--residue", type=int, default=None, help="beta residue mod l^r; all residues when omitted.")
@click.option("--mod-power", type=int, default=None, help="r in l^r (defaults to the grid's).")
@click.option("--sign", type=click.Choice(["+", "-"]), default=None, help="Sign class for an inert twist prime.")
def search_cmd(residue, mod_power, sign, **opts):
    """Minimal-valuation search over the grid."""
    def body():
        opts["mod_power"] = mod_power
        fam = _family(opts)
        if residue is None:
            rows = search_all_residues(fam, mod_power, sign=sign, jobs=opts["jobs"])
        else:
            rows = [min_valuation_search(fam, residue, mod_power, sign=sign, jobs=opts["jobs"])]
        anomaly = any(r["status"] != "ok" for r in rows)
        return _envelope("search", fam, {"searches": rows, "status": "anomaly" if anomaly else "ok"}), anomaly
    _run("search", opts["out"], body)


@main.command("audit")
@common_options
def audit_cmd(**opts):
    """Exact-zero audit for a self-dual family."""
    def body():
        fam = _family(opts)
        report = vanishing_audit(fam, jobs=opts["jobs"])
        return _envelope("audit", fam, report), report["status"] != "ok"
    _run("audit", opts["out"], body)


@main.command("verify")
@click.option("--spec", "spec_paths", multiple=True, type=click.Path(dir_okay=False),
              help="Family specs to include (repeatable); the built-in samples when omitted.")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--grid-ord-min", type=int, default=None)
@click.option("--grid-ord-max", type=int, default=None)
@click.option("--jobs", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--val-bound", type=int, default=None)
@click.option("--battery", type=click.Choice(sorted(SIZES)), default="quick", show_default=True,
              help="How much of the generated local battery to use.")
def verify_cmd(spec_paths, out, grid_ord_min, grid_ord_max, jobs, val_bound, battery):
    """The lemma suite on the given families and the generated local battery."""
    def body():
        specs = [load_spec(p) for p in spec_paths] if spec_paths else [SAMPLES[k]() for k in sorted(SAMPLES)]
        fams = [validate_family(_apply_overrides(s, grid_ord_min, grid_ord_max, None, val_bound)) for s in specs]
        report = run_suite(fams, battery, jobs)
        doc = {"command": "verify", "normalization_tag": NORMALIZATION_TAG, "result": report}
        return doc, report["status"] != "ok"
    _run("verify", out, body)


if __name__ == "__main__":
    main()
