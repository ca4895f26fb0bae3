import json

import pytest

import glcode


def run(capsys, *argv):
    code = glcode.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_params_json(capsys):
    code, out, _ = run(capsys, "params", "--n", "2", "--q", "2")
    assert code == 0
    assert json.loads(out) == {
        "n": 2,
        "q": 2,
        "length": 6,
        "dimension": 4,
        "min_distance": 2,
        "singleton_defect": 1,
        "griesmer_defect": 1,
    }
    code, out, _ = run(capsys, "params", "--n", "3", "--q", "2")
    assert (json.loads(out)["length"], json.loads(out)["min_distance"]) == (168, 80)


@pytest.mark.parametrize("argv", [["params", "--n", "1", "--q", "2"], ["params", "--n", "2", "--q", "6"]])
def test_params_usage_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert out == ""
    assert "glcode: error" in err


def test_table_csv(capsys):
    code, out, _ = run(capsys, "table", "--n-max", "2", "--q", "2,3")
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == "n,q,length,dimension,min_distance,singleton_defect,griesmer_defect"
    assert lines[1] == "2,2,6,4,2,1,1"
    assert lines[2] == "2,3,48,4,30,15,2"


def test_table_rejects_empty_orders(capsys):
    with pytest.raises(SystemExit) as exc:
        glcode.main(["table", "--n-max", "2", "--q", ","])
    assert exc.value.code == 2


def test_big_numbers_stay_decimal(capsys):
    code, out, _ = run(capsys, "table", "--n-max", "6", "--q", "9")
    assert code == 0
    assert "e+" not in out and "E+" not in out


def test_gen_matrix(capsys):
    code, out, _ = run(capsys, "gen-matrix", "--n", "2", "--q", "2")
    rows = out.splitlines()
    assert code == 0
    assert len(rows) == 4
    assert all(len(row.split(" ")) == 6 for row in rows)


def test_weights_csv(capsys):
    code, out, _ = run(capsys, "weights", "--n", "2", "--q", "2")
    assert code == 0
    assert out.splitlines() == ["weight,count", "0,1", "2,6", "4,9"]


def test_sections_csv(capsys):
    code, out, _ = run(capsys, "sections", "--n", "3", "--q", "2")
    assert code == 0
    assert out.splitlines() == [
        "k,f_k_formula,f_k_bruteforce,match",
        "1,72,72,True",
        "2,88,88,True",
        "3,80,80,True",
    ]


def test_sections_census(capsys):
    code, out, _ = run(capsys, "sections", "--n", "2", "--q", "2", "--census", "--format", "json")
    assert code == 0
    rows = json.loads(out)
    assert len(rows) == 15 * 2
    assert all(row["match"] for row in rows)


def test_bruhat_json(capsys):
    code, out, _ = run(capsys, "bruhat", "--q", "2", "--matrix", "0,1;1,0")
    assert code == 0
    assert json.loads(out) == {"w": [2, 1], "L": "1,0;0,1", "U": "1,0;0,1"}


def test_bruhat_singular_is_usage_error(capsys):
    code, _, err = run(capsys, "bruhat", "--q", "3", "--matrix", "1,2;2,1")
    assert code == 2
    assert "invertible" in err


def test_verify_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "--n", "2", "--q", "2", "--level", "full")
    assert code == 0
    assert "codeword set matches the printed binary [6,4,2] list" in out
    code, _, err = run(capsys, "verify", "--n", "5", "--q", "9")
    assert code == 3
    assert "infeasible" in err


@pytest.mark.slow
def test_verify_prints_big_cell_finding(capsys):
    code, out, _ = run(capsys, "verify", "--n", "3", "--q", "2", "--level", "full")
    assert code == 0
    assert "INFO" in out and "104 vs 72" in out


def test_output_is_deterministic(capsys):
    first = run(capsys, "weights", "--n", "2", "--q", "3", "--workers", "1")[1]
    second = run(capsys, "weights", "--n", "2", "--q", "3", "--workers", "4")[1]
    assert first == second


def test_out_path_and_poly(tmp_path, capsys):
    target = tmp_path / "nested" / "params.json"
    code, out, _ = run(capsys, "params", "--n", "2", "--q", "4", "--poly", "1,1,1", "--out", str(target))
    assert code == 0
    assert out == ""
    assert json.loads(target.read_text())["min_distance"] == 132
    code, _, err = run(capsys, "gen-matrix", "--n", "2", "--q", "4", "--poly", "1,0,1")
    assert code == 2
    assert "reducible" in err
