import json
import subprocess
import sys
from fractions import Fraction

import pytest

from ramexp.cli import main
from ramexp.reports import loads

HYBRID = '{"family": "power", "s": 3, "overrides": [{"p": 2, "mode": "all_ones"}]}'


@pytest.fixture
def spec_file(tmp_path):
    def make(text, name="spec.json"):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return make


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("argv, expected", [(["--q", "6", "--a", "1"], "1"), (["--q", "1", "--a", "7"], "1")])
def test_sum(argv, expected, capsys):
    code, out, _ = run(["sum", *argv], capsys)
    assert code == 0 and out.strip() == expected


def test_sum_oracle(capsys):
    code, out, _ = run(["sum", "--q", "4", "--a", "2", "--oracle"], capsys)
    assert code == 0 and out.split("\n")[:3] == ["-2", "oracle -2", "MATCH"]


def test_sum_oracle_capacity(capsys):
    code, _, err = run(["sum", "--q", "20000", "--a", "2", "--oracle"], capsys)
    assert code == 3 and "capacity" in err


def test_eval_local_hybrid(spec_file, capsys):
    code, out, _ = run(["eval", "--spec", spec_file(HYBRID), "--method", "local", "--a", "6", "--Q", "10000"], capsys)
    rep = loads(out)["report"]
    assert code == 0 and rep["product"] == 0 and rep["finite_factor"] == 0


def test_eval_euler(spec_file, capsys):
    f = spec_file('{"family": "power", "s": 2}')
    code, out, _ = run(["eval", "--spec", f, "--method", "euler", "--p-max", "100000"], capsys)
    assert code == 0 and abs(json.loads(out)["report"]["value"] - 0.607927) < 1e-5


def test_eval_direct_trivial(spec_file, capsys):
    f = spec_file('{"family": "totient_reciprocal"}')
    code, out, _ = run(["eval", "--spec", f, "--Q", "1"], capsys)
    assert code == 0 and loads(out)["report"]["checkpoints"] == [[1, Fraction(1)]]


def test_eval_a_list_sorted_and_csv(spec_file, tmp_path, capsys):
    f = spec_file('{"family": "power", "s": 2}')
    out_path = tmp_path / "r.csv"
    code, _, _ = run(
        ["eval", "--spec", f, "--a-list", "12,1,6", "--Q", "100", "--checkpoints", "--output", "csv",
         "--out", str(out_path)],
        capsys,
    )
    lines = out_path.read_text().splitlines()
    assert code == 0 and lines[0] == "a,Q,value"
    assert [ln.split(",")[0] for ln in lines[1:]] == ["1", "1", "6", "6", "12", "12"]


def test_eval_factored_and_coprime_split(spec_file, capsys):
    f = spec_file('{"family": "power", "s": 2}')
    code, out, _ = run(["eval", "--spec", f, "--method", "factored", "--primes", "2,3", "--a", "6", "--Q", "100000"],
                       capsys)
    assert code == 0 and json.loads(out)["report"]["within_bound"]
    code, out, _ = run(["eval", "--spec", f, "--method", "coprime-split", "--primes", "2", "--Q", "1000",
                        "--p-max", "100"], capsys)
    assert code == 0 and loads(out)["report"]["s_factor"] == Fraction(3, 4)


def test_classify(spec_file, capsys):
    cases = {'{"family": "totient_reciprocal"}': ("C3", [2]), '{"family": "power", "s": 1}': ("C1", []),
             HYBRID: ("C2", [2])}
    for text, (case, F) in cases.items():
        code, out, _ = run(["classify", "--spec", spec_file(text), "--Q", "10000"], capsys)
        rep = json.loads(out)["report"]
        assert code == 0 and rep["case"] == case and rep["fixed_points"]["F_of_G"] == F
    code, out, _ = run(["classify", "--spec", spec_file(HYBRID)], capsys)
    assert json.loads(out)["report"]["membership"] == "in_cloud_certain"


@pytest.mark.parametrize(
    "text, needle",
    [
        ('{"family": "power",\n "s": 2,,}', "line 2"),
        ('{"family": "power", "s": 2, "overrides": [{"p": 4, "mode": "all_ones"}]}', "overrides[0].p"),
    ],
)
def test_schema_errors_exit_2(spec_file, capsys, text, needle):
    code, _, err = run(["eval", "--spec", spec_file(text)], capsys)
    assert code == 2 and needle in err


def test_usage_and_capacity_exit_codes(spec_file, capsys):
    f = spec_file('{"family": "power", "s": 2}')
    assert run(["eval", "--spec", f, "--method", "factored"], capsys)[0] == 2
    assert run(["bogus"], capsys)[0] == 2
    assert run(["eval", "--spec", f, "--Q", "0"], capsys)[0] == 2
    assert run(["eval", "--spec", "/nonexistent.json"], capsys)[0] == 2
    assert run(["eval", "--spec", f, "--Q", "100000", "--mode", "exact"], capsys)[0] == 3


def test_verify_suites(capsys):
    code, out, _ = run(["verify", "--suite", "holder", "--max", "64"], capsys)
    assert code == 0 and "PASS, 4096 cases" in out
    code, out, _ = run(["verify", "--suite", "main-lemma", "--pmax", "7", "--amax", "200"], capsys)
    assert code == 0 and "PASS" in out
    code, out, _ = run(["verify", "--suite", "main-theorem", "--smooth", "--n-specs", "5", "--amax", "50"], capsys)
    assert code == 0 and "PASS" in out


def test_module_entry_point_is_deterministic(spec_file):
    f = spec_file('{"family": "power", "s": 2}')
    cmd = [sys.executable, "-m", "ramexp", "eval", "--spec", f, "--Q", "20000", "--method", "factored",
           "--primes", "2,3", "--a", "12"]
    a = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    assert a == b and json.loads(a)["report"]["mode"] == "float"
