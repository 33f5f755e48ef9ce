import json

import pytest

from powertriples.cli import main
from powertriples.report import strip_timestamp


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_valid(capsys):
    code, out, _ = run(capsys, "verify", "--k", "3", "--tuple", "2,171,25326")
    assert code == 0
    assert "7,37,163" in out


def test_verify_quartic_json(capsys):
    code, out, _ = run(capsys, "verify", "--k", "4", "--tuple", "1352,9539880,9768370", "--format", "json")
    assert code == 0
    assert json.loads(out)["valid"] is True


def test_verify_invalid(capsys):
    code, out, _ = run(capsys, "verify", "--k", "3", "--tuple", "2,171,25327")
    assert code == 1
    assert "not a perfect power" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "--k", "3", "--tuple", "2,x"],
        ["verify", "--k", "3", "--tuple", "5,3"],
        ["verify", "--k", "3"],
        ["pair", "--a", "1", "--k", "3"],
        ["cf", "--n", "8", "--k", "3"],
        ["cf", "--n", "2", "--k", "3", "--max-p", "10**9"],
        ["bounds", "--k", "2", "--r", "5"],
        ["search", "--k", "3", "--first-max", "5", "--c-max", "100", "--format", "json", "--threads", "0"],
        ["replay", "--case", "k5"],
        ["nonsense"],
    ],
)
def test_usage_errors(capsys, argv):
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    out, err = capsys.readouterr()
    assert code == 2
    assert out == ""
    assert "usage" in err


def test_undecided_exit(capsys):
    code, out, err = run(capsys, "bounds", "--k", "3", "--r", "7972", "--max-bits", "16")
    assert code == 3
    assert out == "" and "undecided" in err
    # the cap does not leak into later calls in the same process
    code, out, _ = run(capsys, "bounds", "--k", "3", "--r", "7972")
    assert code == 0 and "k=3 tail closed: False" in out


def test_pair(capsys):
    code, out, _ = run(capsys, "pair", "--a", "2", "--k", "3", "--format", "json")
    assert code == 0
    assert json.loads(out) == {"a": "2", "k": 3, "ak": "8", "b": "91", "r": "9"}


def test_cf_terms_and_max_p(capsys):
    code, out, _ = run(capsys, "cf", "--n", "2", "--k", "3", "--terms", "6", "--format", "json")
    assert code == 0
    assert json.loads(out)["quotients"] == ["1", "3", "1", "5", "1", "1"]
    code, out, _ = run(capsys, "cf", "--n", "2", "--k", "2", "--max-p", "100", "--format", "json")
    d = json.loads(out)
    assert int(d["convergents"][-1][0]) > 100
    assert all(int(p) <= 100 for p, _ in d["convergents"][:-1])


def test_search_csv(capsys):
    code, out, _ = run(capsys, "search", "--k", "3", "--first-max", "2", "--c-max", "30000", "--format", "csv")
    assert code == 0
    assert "2,171,25326,7,37,163" in out.splitlines()


def test_out_file_matches_stdout(capsys, tmp_path):
    target = tmp_path / "report.json"
    code, out, _ = run(capsys, "replay", "--case", "k4", "--out", str(target))
    assert code == 0
    assert target.read_text() == out


def test_replay_k3_census(capsys, tmp_path):
    code, out, _ = run(capsys, "replay", "--case", "k3", "--format", "json")
    assert code == 0
    d = json.loads(out)
    assert d["closed"] and d["census"]["k3_candidates"] == 1892


def test_replay_threads_identical(capsys):
    _, one, _ = run(capsys, "replay", "--case", "primes", "--prime-cap", "200", "--threads", "1")
    _, two, _ = run(capsys, "replay", "--case", "primes", "--prime-cap", "200", "--threads", "2")
    assert strip_timestamp(json.loads(one)) == strip_timestamp(json.loads(two))


def test_bounds_text(capsys):
    code, out, _ = run(capsys, "bounds", "--k", "4", "--r", "35")
    assert code == 0
    assert "height bound on a^2 t: 102206281" in out
    assert "k=4 tail closed: True" in out
