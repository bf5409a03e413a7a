import json
import subprocess
import sys
from pathlib import Path

import pytest

from picf.cli import main, run

GOLDEN = Path(__file__).parent / "golden"

INVOCATIONS = {
    "picf_2_period_3.json": ["picf", "2", "--period", "3"],
    "pell_41.json": ["pell", "41"],
    "family_M2_3_-1.json": ["family", "M2", "3", "-1"],
}


def _doc(argv):
    code, text = run(argv)
    assert code == 0
    return json.loads(text)


def test_picf_two_period_three():
    doc = _doc(["picf", "2", "--period", "3"])
    rows = {tuple(r["point"]): r for r in doc["outputs"]["expansions"]}
    for pt, sign in [((2, -2, 3, 3), 1), ((1, 3, -2, 3), 1)]:
        for q, sg in ((pt, sign), (tuple(-c for c in pt), -sign)):
            r = rows[q]
            assert r["certificate"]["verdict"] == "converges"
            assert r["value"]["m"] == 2 and r["value"]["b"] == str(sg) and r["sign"] == sg
    assert doc["verified"] is True


def test_pell_41():
    assert _doc(["pell", "41"])["outputs"]["fundamental"] == {"x": 32, "y": 5, "norm": -1}


def test_family_m2_three_minus_one():
    doc = _doc(["family", "M2", "3", "-1"])
    summary = doc["outputs"]["convergent_check"]["summary"]
    assert "fundamental NOT at 1st convergent" in summary
    assert "fundamental at 0th" in summary
    assert doc["errata"] == []


def test_family_erratum_is_reported_not_failed():
    doc = _doc(["family", "M2", "2", "1"])
    (err,) = doc["errata"]
    assert "(9, 4) = eps^2" in err["erratum_candidate"]
    assert doc["verified"] is True


@pytest.mark.parametrize("name", sorted(INVOCATIONS))
def test_golden_bytes(name):
    argv = INVOCATIONS[name]
    expected = (GOLDEN / name).read_text(encoding="utf-8")
    outs = {run(argv + extra)[1] for extra in ([], [], ["--jobs", "1"], ["--jobs", "4"])}
    assert outs == {expected}


def test_golden_bytes_through_subprocess():
    for name, argv in INVOCATIONS.items():
        for jobs in ("1", "3"):
            proc = subprocess.run(
                [sys.executable, "-m", "picf", *argv, "--jobs", jobs], capture_output=True, check=True
            )
            assert proc.stdout == (GOLDEN / name).read_bytes()


def test_variety_parallel_settings_agree():
    outs = {run(["variety", "5", "3", "--brute", "12", "--jobs", j])[1] for j in ("1", "2", "4")}
    (text,) = outs
    doc = json.loads(text)
    assert doc["outputs"]["brute_force"]["equal"] is True
    assert [2, 4, 4, 4] in doc["outputs"]["closed_form"]


def test_text_rendering():
    code, text = run(["pell", "41", "--text"])
    assert code == 0 and "x: 32" in text and text.endswith("\n")


def test_timing_is_opt_in():
    assert "timing_seconds" not in _doc(["expand", "13"])
    assert "timing_seconds" in _doc(["expand", "13", "--timing"])


@pytest.mark.parametrize(
    "argv",
    [["pell", "9"], ["expand", "16"], ["family", "M2", "1", "-1"], ["family", "M2", "0", "3"], ["tower", "0"]],
)
def test_invalid_input_exit_one(argv, capsys):
    assert main(argv) == 1
    err = json.loads(capsys.readouterr().err)
    assert err["command"] == argv[0] and err["error"]


def test_bad_flags_exit_one():
    with pytest.raises(SystemExit) as exc:
        run(["picf", "2", "--period", "5"])
    assert exc.value.code == 1


def test_verification_failure_exit_two():
    # 200 iterations are not enough for the slowest level-4 embeddings
    code, text = run(["tower", "4"])
    assert code == 2 and json.loads(text)["verified"] is False
    code, _ = run(["tower", "4", "--iters", "400"])
    assert code == 0


def test_tower_output():
    doc = _doc(["tower", "2"])
    tr = doc["outputs"]["triple"]
    assert [tr[k]["text"] for k in ("x1", "x2", "x3")] == ["3 - X", "1 + X", "3 - 2*X"]
    for e in doc["outputs"]["numeric"]["embeddings"]:
        assert e["limit"]["precision_bits"] == 256 and e["ok"]
