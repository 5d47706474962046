import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from heckemu.cli import main
from heckemu.epsilon import NORMALIZATION_TAG

SPECS = Path(__file__).resolve().parent.parent / "specs"
SD_PLUS = str(SPECS / "self_dual_plus.json")
NOT_RSD = str(SPECS / "not_residually_self_dual.json")


def _runner():
    try:
        return CliRunner(mix_stderr=False)
    except TypeError:   # click >= 8.2 always keeps the streams apart
        return CliRunner()


def run(*args):
    result = _runner().invoke(main, list(args))
    return result.exit_code, result.stdout


def test_classify_self_dual():
    code, out = run("classify", "--spec", SD_PLUS)
    doc = json.loads(out)
    assert code == 0
    assert doc["result"]["kind"] == "self_dual"
    assert doc["normalization_tag"] == NORMALIZATION_TAG
    assert doc["ambient_N"] > 0 and doc["prime_above_p"]


def test_mu_report():
    code, out = run("mu", "--spec", NOT_RSD)
    assert code == 0
    assert json.loads(out)["result"]["mu_family"] == "0"


def test_epsilon_report():
    code, out = run("epsilon", "--spec", SD_PLUS)
    doc = json.loads(out)["result"]
    assert code == 0 and doc["global_ratio_mod_mp"] == 1 and doc["places"]


def test_coeff_report():
    code, out = run("coeff", "--spec", SD_PLUS, "--beta", "13/3", "--cusp", "13")
    assert code == 0
    assert json.loads(out)["result"]["beta"] == "13/3"


def test_search_one_residue(tmp_path):
    out = tmp_path / "search.json"
    code, _ = run("search", "--spec", NOT_RSD, "--residue", "5", "--mod-power", "1", "--grid-ord-max", "1",
                  "--out", str(out))
    assert code == 0
    rows = json.loads(out.read_text())["result"]["searches"]
    assert rows[0]["witness"] is not None


def test_audit_rejects_non_self_dual():
    code, out = run("audit", "--spec", NOT_RSD)
    assert code == 2 and json.loads(out)["error"] == "domain"


def test_malformed_spec(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"disc": -4,')
    code, out = run("classify", "--spec", str(bad))
    assert code == 2
    assert json.loads(out)["error"] == "malformed"


def test_inconsistent_spec(tmp_path):
    doc = json.loads(Path(SD_PLUS).read_text())
    doc["p"] = 7
    path = tmp_path / "p7.json"
    path.write_text(json.dumps(doc))
    code, out = run("classify", "--spec", str(path))
    assert code == 2 and json.loads(out)["error"] == "p_not_ordinary"


@pytest.mark.parametrize("args", [["classify", "--spec", SD_PLUS, "--bogus"],
                                  ["classify", "--spec", SD_PLUS, "--grid-ord-min", "3", "--grid-ord-max", "1"],
                                  ["classify", "--spec", SD_PLUS, "--val-bound", "0"],
                                  ["coeff", "--spec", SD_PLUS, "--beta", "x"]])
def test_bad_invocations_exit_2(args):
    assert run(*args)[0] == 2
