import json
from dataclasses import replace
from fractions import Fraction

import pytest

from heckemu.family import (ELL_IS_P, NOT_ORDINARY, FamilySpec, GridSpec, SpecError, beta_grid,
                            fourier_coefficient, load_spec, validate_family)
from heckemu.local import DomainError
from heckemu.samples import FILENAMES, SAMPLES, sample_a
from heckemu.scalars import INFINITY
from heckemu.search import class_residues, min_valuation_search, search_all_residues, vanishing_audit

SPECS = __import__("pathlib").Path(__file__).resolve().parent.parent / "specs"


@pytest.fixture(scope="module")
def fam_a():
    return validate_family(sample_a())


@pytest.fixture(scope="module")
def fam_d():
    return validate_family(SAMPLES["d"]())


def test_shipped_specs_match_builders():
    for key, build in SAMPLES.items():
        assert load_spec(str(SPECS / FILENAMES[key])) == build()


def test_spec_json_round_trip():
    spec = sample_a()
    assert FamilySpec.from_json(json.loads(json.dumps(spec.to_json()))) == spec


def test_valid_self_dual_family(fam_a):
    assert fam_a.ell == 3 and fam_a.spec.p == 5


def test_p_not_ordinary():
    with pytest.raises(SpecError) as info:
        validate_family(replace(sample_a(), p=7))
    assert info.value.code == NOT_ORDINARY


def test_twist_prime_equals_p():
    with pytest.raises(SpecError) as info:
        validate_family(replace(sample_a(), ell_twist=5))
    assert info.value.code == ELL_IS_P


def test_malformed_json(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(SpecError):
        load_spec(str(path))


def test_nonpositive_beta(fam_a):
    report = fourier_coefficient(fam_a, 0)
    assert report.ordp == INFINITY and report.product.is_zero()


def test_non_integral_at_a_good_place(fam_a):
    assert fourier_coefficient(fam_a, Fraction(1, 7)).product.is_zero()


def test_coefficient_is_the_product_of_its_factors(fam_a):
    for beta in (Fraction(1), Fraction(2), Fraction(9, 7) * 7, Fraction(13, 3), Fraction(26)):
        report = fourier_coefficient(fam_a, beta)
        product = report.prefactor
        for v in report.local_factors.values():
            product = product * v
        assert product == report.product
        assert report.ordp == fam_a.ordp(report.product)


def test_unit_beta_valuation_is_the_local_sum(fam_d):
    # beta = 1: every good factor is 1 and the kernels sit at their unit values
    report = fourier_coefficient(fam_d, 1)
    assert report.ordp == sum(report.factor_ordp.values())


def test_cusp_must_be_listed(fam_a):
    with pytest.raises(DomainError):
        fourier_coefficient(fam_a, 1, cusp=2)


def test_beta_grid_is_sorted_and_positive(fam_a):
    grid = beta_grid(fam_a, GridSpec(-1, 1, 10, 1))
    assert grid == sorted(grid) and all(b > 0 for b in grid)


def test_search_power_beyond_grid(fam_d):
    with pytest.raises(DomainError):
        min_valuation_search(fam_d, 1, mod_power=3)


def test_search_finds_a_witness(fam_d):
    row = min_valuation_search(fam_d, 4, 2, grid=GridSpec(-1, 2, 20, 2))
    assert row["status"] == "ok" and row["witness"]["ordp"] == row["target_mu"] == "0"
    assert row["below_target"] == []


def test_class_residues():
    assert class_residues(3, 2, None) == list(range(9))
    assert class_residues(3, 2, 1) == [3, 6]
    assert class_residues(3, 2, 0) == [1, 2, 4, 5, 7, 8]


def test_audit_root_number_minus_one():
    fam = validate_family(SAMPLES["b"]())
    report = vanishing_audit(fam, GridSpec(-1, 1, 20, 2))
    assert report["status"] == "ok" and report["predicted_zero"] == report["checked"]


def test_audit_root_number_plus_one(fam_a):
    report = vanishing_audit(fam_a, GridSpec(-1, 2, 20, 2))
    assert report["status"] == "ok"
    assert report["predicted_zero"] > 0
    assert report["nonzero_example"] is not None


def test_audit_needs_self_dual(fam_d):
    with pytest.raises(DomainError):
        vanishing_audit(fam_d)


def test_search_all_residues_in_sign_class(fam_a):
    rows = search_all_residues(fam_a, 1, GridSpec(-1, 2, 20, 1))
    assert all(r["status"] == "ok" for r in rows)
    assert {r["parity"] for r in rows} == {0}


def test_parallel_grid_maps_agree(fam_d):
    g = GridSpec(-1, 1, 15, 1)
    assert min_valuation_search(fam_d, 1, 1, g, jobs=1) == min_valuation_search(fam_d, 1, 1, g, jobs=3)
