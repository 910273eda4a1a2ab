import json

import pytest

from picard.cli import main


def test_analyze_single_prime_json(capsys):
    code = main(["analyze", "--curve", "[1,0,14,72,-41]", "--prime", "5", "--json"])
    assert code == 0
    data = json.loads(capsys.readouterr().out)
    rep = data["reports"][0]
    assert rep["p"] == 5 and rep["f_p"] == 0 and rep["type"] == "b"
    assert rep["exceptional"] is True


def test_analyze_global_human(capsys):
    code = main(["analyze", "--curve", "[1,0,0,0,-1]"])
    assert code == 0
    out = capsys.readouterr().out
    assert "f_2 in [2, 28]" in out
    assert "f_3 in [4, 21]" in out


def test_analyze_with_witness_file(tmp_path, capsys):
    wfile = tmp_path / "w.json"
    wfile.write_text(json.dumps({
        "p": 3, "m": 8, "curve": [1, 0, 0, 0, -1],
        "charts": [{"x_scale": 3, "x_center": [0], "y_scale": 0,
                    "y_poly": [[-1]], "y_codim": 4}],
    }))
    code = main(["analyze", "--curve", "[1,0,0,0,-1]", "--prime", "3",
                 "--witness", str(wfile), "--json"])
    assert code == 0
    data = json.loads(capsys.readouterr().out)
    assert data["reports"][0]["f_p"] == 6


def test_analyze_normalizes_input(capsys):
    code = main(["analyze", "--curve", "[3,1,0,0,-54]", "--prime", "3", "--json"])
    assert code == 0
    data = json.loads(capsys.readouterr().out)
    assert data["curve"] == "[1,1,0,0,-1458]"


def test_analyze_inseparable_exit_1(capsys):
    # (x-1)^2(x^2+1) = x^4 - 2x^3 + 2x^2 - 2x + 1
    code = main(["analyze", "--curve", "[1,-2,2,-2,1]"])
    assert code == 1


def test_usage_error_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["analyze"])  # missing --curve
    assert exc.value.code == 2
    code = main(["analyze", "--curve", "[1,2]"])
    assert code == 2


def test_search_cli_and_verify_examples(tmp_path, capsys):
    out = tmp_path / "r.jsonl"
    code = main(["search", "--set", "2,3", "--height", "2", "--out", str(out)])
    assert code == 0
    assert out.exists() and out.read_text().strip()
    code = main(["verify-examples"])
    assert code == 0
    text = capsys.readouterr().out
    assert "FAIL" not in text and "PASS" in text


def test_analyze_rejects_degenerate_inputs(capsys):
    # leading coefficient zero: not a quartic
    assert main(["analyze", "--curve", "[0,1,2,3,4]"]) == 2
    # composite --prime
    assert main(["analyze", "--curve", "[1,0,0,0,-1]", "--prime", "4"]) == 2
    capsys.readouterr()
