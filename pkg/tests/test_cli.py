import json
import subprocess
import sys

import pytest

from trisquare.cli import main


def run(capsys, *argv):
    rc = main(list(argv))
    return rc, capsys.readouterr().out


def test_search_jsonl(capsys):
    rc, out = run(capsys, "search", "--q", "8", "--k", "3", "--bound", "11000")
    lines = [json.loads(x) for x in out.splitlines()]
    assert rc == 0
    assert {"n": "10837", "q": 8, "square_digits": [[0, 1], [1, 7], [8, 7]]} in lines


def test_verify(capsys):
    rc, out = run(capsys, "verify", "--q", "5", "--bound", "1000")
    rep = json.loads(out)
    assert rc == 0 and rep["passes"] and rep["found_exceptional"] == [1, 4, 8, 9, 12, 16, 23, 24, 56, 177]


def test_pipeline(capsys, tmp_path):
    csv = tmp_path / "s.csv"
    rc, out = run(capsys, "pipeline", "--q", "5", "--m-from", "5", "--m-to", "5", "--nmax", "50", "--L", "300", "--csv", str(csv))
    recs = [json.loads(x) for x in out.splitlines()]
    assert rc == 0 and recs and all(isinstance(r["Y"], str) for r in recs)
    assert csv.read_text().startswith("q,Y,t,M,N,m,n,family")


def test_classify(capsys):
    rc, out = run(capsys, "classify", "--y", "1815", "--q", "7")
    d = json.loads(out)
    assert d["status"] == "OK" and d["family"] == "SPORADIC_KNOWN"
    # negative M borrows from the next digit, so this one is not three-digit as written
    rc, out = run(capsys, "classify", "--y", "430683365", "--q", "311")
    assert json.loads(out)["status"] == "NOT_THREE_DIGIT"
    rc, out = run(capsys, "classify", "--y", "45454", "--q", "23")
    assert json.loads(out)["status"] == "C_NONSQUARE"


def test_pade(capsys):
    _, out = run(capsys, "pade", "print", "--n1", "1", "--n2", "1")
    assert json.loads(out) == {"n1": 1, "n2": 1, "P": ["2", "3/2"], "Q": ["2", "1/2"]}
    _, out = run(capsys, "pade", "bound", "--m", "12", "--n", "110")
    d = json.loads(out)
    assert int(d["q_max"]) < 7 and d["refined"] is False


def test_gap_witness(capsys, tmp_path):
    sol = {"q": 5, "Y": "56", "t": 1, "M": 2, "N": 1, "m": 1, "n": 5}
    _, out = run(capsys, "gap", "witness", "--solution", json.dumps(sol))
    d = json.loads(out)
    assert d["verdict"] == "SMALL_M" and d["witness"]["kappa"] == "4" and d["recomposes"]
    f = tmp_path / "s.json"
    f.write_text(json.dumps({"q": 5, "Y": "3126", "t": 1, "M": 2, "N": 1, "m": 5, "n": 10}))
    _, out = run(capsys, "gap", "witness", "--solution", "@" + str(f))
    assert json.loads(out)["reason"] == "FAMILY_F1"


def test_sieve(capsys):
    _, out = run(capsys, "sieve", "run", "--q", "5", "--m", "5", "--L", "300", "--survivors-only")
    arr = json.loads(out)
    assert len(arr) == 15 and {a["status"] for a in arr} == {"SURVIVOR", "UNAVOIDABLE"}


def test_rn_and_mordell(capsys):
    _, out = run(capsys, "rn", "solve", "--c", "-312499", "--N", "4", "--q", "5", "--nmax", "50")
    assert json.loads(out) == [{"Y": "1", "n": 7}, {"Y": "156249", "n": 14}]
    _, out = run(capsys, "mordell", "scan", "--k", "6875", "--vmax", "1000")
    assert {"U": "1400", "V": "125"} in json.loads(out)


def test_config_file(capsys, tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"q": 5, "k": 3, "bound": 200}))
    _, out = run(capsys, "--config", str(cfg), "search")
    assert {json.loads(x)["n"] for x in out.splitlines()} >= {"56", "177"}


def test_missing_option():
    with pytest.raises(SystemExit):
        main(["search", "--q", "5"])


def test_error_exit_code(capsys):
    assert main(["classify", "--y", "10", "--q", "5"]) == 2


def test_console_script():
    out = subprocess.run(
        [sys.executable, "-m", "trisquare.cli", "pade", "bound", "--m", "4", "--n", "30"],
        capture_output=True, text=True, check=True,
    )
    assert json.loads(out.stdout)["q_max"] == "242"
