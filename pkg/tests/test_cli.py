import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from qring.axioms import reverify
from qring.cli import main, render, run
from qring.gallery import builtin
from qring.rings import Polynomial

GOLDEN = Path(__file__).parent / "golden"


def cli(*args, env=None):
    full_env = dict(os.environ, **(env or {}))
    p = subprocess.run([sys.executable, "-m", "qring", *args], capture_output=True, text=True, env=full_env)
    return p.returncode, p.stdout, p.stderr


def json_of(*args):
    doc, code, _ = run([*args, "--json"])
    return doc, code


@pytest.mark.parametrize("golden, args", [
    ("enumerate_zmod6.json", ["enumerate", "--ring", "zmod:6"]),
    ("classify_zmod_trivial_12_3.json", ["classify", "--builtin", "zmod_trivial_12_3"]),
    ("quotfield_z_standard.json", ["quotfield", "--builtin", "z_standard"]),
    ("check_z_padic_2.json", ["check", "--builtin", "z_padic_2"]),
])
def test_golden_reports(golden, args):
    code, out, _ = cli(*args, "--json")
    assert code == 0
    assert out == (GOLDEN / golden).read_text(encoding="utf-8")


def test_json_is_identical_across_worker_counts():
    outs = {cli("classify", "--builtin", "z_padic_3", "--json", env={"QRING_WORKERS": w})[1] for w in ("1", "2", "4")}
    assert len(outs) == 1


def test_json_report_roundtrips():
    doc, _ = json_of("classify", "--builtin", "z_padic_3")
    assert json.loads(json.dumps(doc, ensure_ascii=False)) == doc


def test_check_padic_passes_on_window():
    doc, code = json_of("check", "--builtin", "z_padic_2")
    assert code == 0
    assert {r["status"] for r in doc["axioms"]["results"].values()} == {"pass-on-window"}


def test_check_sec3_fails_qr5_with_verifiable_witness():
    doc, code = json_of("check", "--builtin", "sec3", "--window", "poly:2")
    assert code == 1 and doc["failures"] == ["QR5"]
    R = Polynomial(["X", "Y"])
    rel = builtin("sec3").relation
    for section in ("axioms", "lemmas"):
        results = doc[section]["results"] if section == "axioms" else doc[section]
        for name, r in results.items():
            if r["status"] == "fail" and "witness" in r:
                wit = tuple(R.from_json(v) for v in r["witness"])
                assert reverify(rel, name, wit), name


def test_classify_outputs():
    doc, code = json_of("classify", "--builtin", "z_standard")
    assert code == 0
    c = doc["classification"]
    assert c["branch"] == "ordered" and c["cone_window"] == list(range(21))
    doc, code = json_of("classify", "--builtin", "z_padic_3")
    assert code == 0
    assert doc["classification"]["group"] == {"kind": "free_rank_one"}
    assert doc["roundtrip"]["ok"]


def test_classify_sec3_is_rejected():
    doc, code = json_of("classify", "--builtin", "sec3", "--window", "poly:2")
    assert code == 1 and doc["status"] == "rejected"
    assert doc["axioms"]["results"]["QR5"]["status"] == "fail"


def test_quotfield_samples_and_rejection():
    doc, code = json_of("quotfield", "--builtin", "z_padic_2")
    assert code == 0
    assert "3/1 ⊴ 1/2" in [s["text"] for s in doc["samples"]]
    doc, code = json_of("quotfield", "--builtin", "z_standard")
    assert "1/2 ⊴ 3/4" in [s["text"] for s in doc["samples"]]
    doc, code = json_of("quotfield", "--builtin", "zmod_trivial_12_3")
    assert code == 1 and "quotient" in doc["message"]


@pytest.mark.parametrize("n, count", [(2, 1), (4, 1), (6, 2)])
def test_enumerate_counts(n, count):
    doc, code = json_of("enumerate", "--ring", f"zmod:{n}")
    assert code == 0 and doc["count"] == count and doc["cross_check"]["ok"]
    assert doc["candidates"] == [3, 13, 75, 541, 4683][n - 2]


def test_enumerate_zmod2_is_zero_below_one():
    doc, _ = json_of("enumerate", "--ring", "zmod:2")
    assert doc["quasiorders"][0]["matrix"] == [[1, 1], [0, 1]]


def test_counterexample_command():
    code, out, _ = cli("counterexample", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["status"] == "reproduced"
    rep = doc["reproduction"]
    assert rep["witness"] == ["X", "X^2", "Y"]
    assert all(rep["witness_facts"].values()) and rep["zero_below_minus_one"]


@pytest.mark.parametrize("args", [
    ["check"],
    ["check", "--builtin", "nope"],
    ["check", "--builtin", "z_standard", "--window", "0:5"],
    ["enumerate", "--ring", "zmod:x"],
    ["enumerate", "--ring", "zmod:6", "--max-n", "9"],
    ["frobnicate"],
    ["check", "--bogus"],
])
def test_usage_errors_exit_2(args):
    assert main(args) == 2


def test_structure_file_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"ring": {"kind": "integers"}, "relation": {"kind": "order", "order": {"kind": "standard"}},
                               "window": {"kind": "elements", "elements": [0, 1, 2]}}))
    code, out, err = cli("check", str(bad), "--json")
    assert code == 2 and json.loads(out)["error"]["kind"] == "invalid-window"
    bad.write_text('{"ring": {"kind": "integers", "x": 1}, "relation": {"kind": "counterexample_sec3"}}')
    code, out, err = cli("check", str(bad))
    assert code == 2 and "ring" in err and "unknown key" in err


def test_structure_file_check(tmp_path):
    f = tmp_path / "z6.json"
    f.write_text(json.dumps({"ring": {"kind": "modular", "n": 6},
                             "relation": {"kind": "trivial_at_prime", "generators": [2]}}))
    code, out, _ = cli("check", str(f))
    assert code == 0 and "result: pass" in out


def test_text_rendering_mentions_every_axiom():
    doc, _ = json_of("check", "--builtin", "zmod_trivial_6_2")
    text = render(doc)
    for name in ("reflexive", "QR1", "QR5", "support_prime"):
        assert name in text
    assert text.endswith("result: pass")


def test_timing_is_opt_in():
    doc, _ = json_of("check", "--builtin", "z_standard")
    assert "timing" not in doc
    doc, _, _ = run(["check", "--builtin", "z_standard", "--timing"])
    assert doc["timing"]["seconds"] >= 0
