"""The ten acceptance criteria, each at its stated tolerance and time limit.

Every test prints one line: the criterion, PASS or FAIL, what was counted
and how long it took.  Local checks run on the standard battery.
"""

import random
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from heckemu.family import validate_family
from heckemu.mu import mu_family
from heckemu.samples import SAMPLES
from heckemu.scalars import AmbientField, prime_above, root_of_unity
from heckemu.search import search_all_residues, vanishing_audit
from heckemu.verify import (OK, build_battery, check_closed_form, check_duality, check_functional_equation,
                            check_inert_congruence, check_min_equals_mu, check_nonvanishing_sign,
                            check_sign_table, check_trichotomy)


@pytest.fixture(scope="module")
def battery(capsys_module):
    start = time.perf_counter()
    bat = build_battery("standard")
    report(capsys_module, "battery", True, f"{bat.summary()}", time.perf_counter() - start, None)
    return bat


@pytest.fixture(scope="module")
def capsys_module(request):
    return request.config.pluginmanager.getplugin("capturemanager")


def report(capture, name, ok, detail, elapsed, limit):
    limit_text = f" (limit {limit} s)" if limit else ""
    line = f"{name}: {'PASS' if ok else 'FAIL'}  {detail}  [{elapsed:.1f} s{limit_text}]"
    with capture.global_and_fixture_disabled():
        sys.stdout.write("\n" + line + "\n")
        sys.stdout.flush()


def timed(thunk):
    start = time.perf_counter()
    out = thunk()
    return out, time.perf_counter() - start


def summarize(results):
    parts = []
    for r in results:
        text = f"{r.name} {r.status} n={r.checked}"
        if r.notes:
            text += f" notes={r.notes}"
        if r.failure:
            text += f" first failure: {r.failure['label']}"
        parts.append(text)
    return "; ".join(parts)


def test_criterion_1_closed_form(capsys_module):
    res, elapsed = timed(check_closed_form)
    ok = res.status == OK and elapsed < 60
    report(capsys_module, "criterion 1 closed form = oracle", ok, summarize([res]), elapsed, 60)
    assert res.status == OK, res.failure
    assert elapsed < 60


def test_criterion_2_min_equals_mu(battery, capsys_module):
    entries = battery.generic
    assert all(e.chi.conductor <= 2 and e.place.ell <= 7 and e.p in (3, 5, 7) and e.p != e.place.ell
               for e in entries)
    res, elapsed = timed(lambda: check_min_equals_mu(entries))
    ok = res.status == OK and res.checked >= 50 and elapsed < 120
    report(capsys_module, "criterion 2 grid minimum = mu_local", ok, summarize([res]), elapsed, 120)
    assert res.status == OK, res.failure
    assert res.checked >= 50 and elapsed < 120


def test_criterion_3_functional_equation(battery, capsys_module):
    ramified = [e for e in battery.generic if e.chi.conductor >= 1]

    def run():
        literal = check_functional_equation(ramified, literal=True)
        corrected = check_functional_equation(battery.generic)
        return literal, corrected

    (literal, corrected), elapsed = timed(run)
    places = {e.place.ext_type for e in ramified}
    ok = (literal.status == corrected.status == OK and literal.checked >= 100 and "ramified" in places
          and elapsed < 120)
    report(capsys_module, "criterion 3 functional equation", ok, summarize([literal, corrected]), elapsed, 120)
    assert literal.status == OK, literal.failure
    assert literal.notes == [{"unramified_with_nontrivial_L_ratio": 0}]
    assert corrected.status == OK, corrected.failure
    assert literal.checked >= 100 and "ramified" in places
    assert elapsed < 120


def test_criterion_4_sign_table(battery, capsys_module):
    res, elapsed = timed(lambda: check_sign_table(battery))
    ok = res.status == OK and elapsed < 30
    report(capsys_module, "criterion 4 self-dual sign table", ok, summarize([res]), elapsed, 30)
    assert res.status == OK, res.failure
    assert elapsed < 30


def test_criterion_5_residual_congruences(battery, capsys_module):
    """pe5 and pe2(2) on every residually self-dual character; the trichotomy on every instance with mu > 0."""
    def run():
        return [check_inert_congruence(battery), check_nonvanishing_sign(battery),
                check_trichotomy(battery, include_unramified=True)]

    results, elapsed = timed(run)
    ok = all(r.status == OK for r in results) and elapsed < 120
    ramified = check_trichotomy(battery)
    report(capsys_module, "criterion 5 residual congruences and trichotomy", ok,
           summarize(results) + f" | ramified only: {summarize([ramified])}", elapsed, 120)
    for r in results:
        assert r.status == OK, (r.name, r.failure)
    assert elapsed < 120


def test_criterion_6_duality(battery, capsys_module):
    """mu_local(chi) = mu_local(chi dual) and the 1/(p-1) bound, on every generated character."""
    res, elapsed = timed(lambda: check_duality(battery, include_unramified=True))
    ok = res.status == OK and elapsed < 10
    ramified = check_duality(battery)
    report(capsys_module, "criterion 6 duality and bound", ok,
           summarize([res]) + f" | ramified only: {summarize([ramified])}", elapsed, 10)
    assert res.status == OK, res.failure
    assert elapsed < 10


def test_criterion_7_exact_vanishing(capsys_module):
    def run():
        minus = validate_family(SAMPLES["b"]())
        plus = validate_family(SAMPLES["a"]())
        return minus, vanishing_audit(minus), plus, vanishing_audit(plus)

    (minus, split_audit, plus, inert_audit), elapsed = timed(run)
    distinct = split_audit["checked"] // len(minus.spec.cusps)
    ok = (split_audit["status"] == inert_audit["status"] == OK and split_audit["twist_prime_type"] == "split"
          and split_audit["global_root_number"] == -1 and split_audit["predicted_zero"] == split_audit["checked"]
          and distinct >= 500 and inert_audit["twist_prime_type"] == "inert"
          and inert_audit["predicted_zero"] > 0 and elapsed < 60)
    detail = (f"split l={split_audit['twist_prime']} root number -1: {split_audit['predicted_zero']} zeros of "
              f"{split_audit['checked']} ({distinct} beta); inert l={inert_audit['twist_prime']}: "
              f"{inert_audit['predicted_zero']} zeros on the minus class ({inert_audit['vanishing_rule']})")
    report(capsys_module, "criterion 7 exact vanishing", ok, detail, elapsed, 60)
    assert split_audit["status"] == OK and not split_audit["anomalies"]
    assert split_audit["predicted_zero"] == split_audit["checked"] and distinct >= 500
    assert inert_audit["status"] == OK and not inert_audit["anomalies"] and inert_audit["predicted_zero"] > 0
    assert elapsed < 60


def test_criterion_8_minimal_valuation_search(capsys_module):
    def run():
        fam = validate_family(SAMPLES["d"]())
        return mu_family(fam), search_all_residues(fam, 2)

    (mu, rows), elapsed = timed(run)
    target = str(mu.mu_family)
    found = [r for r in rows if r["witness"] and r["witness"]["ordp"] == target]
    below = [b for r in rows for b in r["below_target"]]
    residues = sorted(r["residue"] for r in rows)
    ok = residues == list(range(9)) and len(found) == 9 and not below and elapsed < 120
    detail = f"mu = {target}; witnesses for {len(found)}/9 residues mod 9; {len(below)} grid beta below mu"
    report(capsys_module, "criterion 8 minimal valuation search", ok, detail, elapsed, 120)
    assert residues == list(range(9))
    assert len(found) == 9 and not below
    assert elapsed < 120


def test_criterion_9_valuations(capsys_module):
    rng = random.Random(20240917)

    def random_element(field):
        coeffs = [rng.randint(-12, 12) for _ in range(field.degree)]
        coeffs[rng.randrange(field.degree)] = rng.choice([-1, 1]) * rng.randint(1, 12)
        x = field.from_coefficients(coeffs)
        return x * Fraction(rng.choice([1, 1, 3, 5, 7, 15, 25, 49]), rng.choice([1, 1, 2, 3, 5, 7]))

    def run():
        planes = [(AmbientField.of(n), p) for n, p in ((12, 3), (20, 5), (28, 7), (15, 5), (36, 3), (60, 5))]
        plans = [(f, prime_above(f, p)) for f, p in planes]
        bad = []
        for k in range(10_000):
            field, plan = plans[k % len(plans)]
            x, y = random_element(field), random_element(field)
            if plan.ordp(x * y) != plan.ordp(x) + plan.ordp(y):
                bad.append((field.N, plan.p, x, y))
        f3 = AmbientField.of(3)
        anchors = [prime_above(f3, 3).ordp(f3.zeta(1) - 1) == Fraction(1, 2)]
        for p in (3, 5, 7):
            f = AmbientField.of(p)
            anchors.append(prime_above(f, p).ordp(1 - root_of_unity(f, 1)) == Fraction(1, p - 1))
        return bad, anchors

    (bad, anchors), elapsed = timed(run)
    ok = not bad and all(anchors) and elapsed < 30
    detail = f"additivity on 10000 pairs: {len(bad)} failures; anchors {anchors}"
    report(capsys_module, "criterion 9 valuation engine", ok, detail, elapsed, 30)
    assert not bad, bad[:3]
    assert all(anchors)
    assert elapsed < 30


def test_criterion_10_determinism(tmp_path, capsys_module):
    def verify(name, jobs):
        out = tmp_path / name
        proc = subprocess.run([sys.executable, "-m", "heckemu.cli", "verify", "--jobs", str(jobs),
                               "--out", str(out)], capture_output=True, text=True)
        return proc.returncode, out.read_bytes()

    def run():
        return verify("first.json", 1), verify("second.json", 1), verify("parallel.json", 8)

    (first, second, parallel), elapsed = timed(run)
    codes = [first[0], second[0], parallel[0]]
    same = first[1] == second[1] == parallel[1]
    ok = same and codes == [0, 0, 0]
    detail = f"exit codes {codes}; reports byte-identical: {same} ({len(first[1])} bytes)"
    report(capsys_module, "criterion 10 determinism", ok, detail, elapsed, None)
    assert first[1] == second[1], "two runs differ"
    assert first[1] == parallel[1], "--jobs 1 and --jobs 8 differ"
    assert codes == [0, 0, 0]
