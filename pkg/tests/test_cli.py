"""
Tests for the command line front end: exit codes, goldens and record output.
"""

import json
import os

import pytest

from controller import Controller, RunConfig, parse_assignment
from main import main
from operads.errors import ArityError, OperadError

from conftest import FIXTURES, GOLDEN


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def golden(name):
    with open(os.path.join(GOLDEN, name), encoding='utf-8') as handle:
        return handle.read()


@pytest.mark.parametrize("argv, name", [
    (("dim", "--preset", "almost-poisson", "--arity", "4"), "dim_almost_poisson_4.txt"),
    (("ideal-rank", "--preset", "almost-poisson", "--arity", "3"), "ideal_rank_almost_poisson_3.txt"),
    (("grdim", "--preset", "almost-poisson", "--arity", "3"), "grdim_almost_poisson_3.txt"),
    (("classify", "--preset", "almost-poisson", "--arity", "3"), "classify_almost_poisson_3.txt"),
])
def test_golden_output(capsys, argv, name):
    code, out, err = run(capsys, *argv)
    assert code == 0
    assert out == golden(name)


def test_identical_invocations_are_identical(capsys):
    first = run(capsys, "grdim", "--preset", "ap-family", "--set", "t=0", "--set", "v=1", "--arity", "4")
    second = run(capsys, "grdim", "--preset", "ap-family", "--set", "t=0", "--set", "v=1", "--arity", "4")
    assert first == second
    weight_two = first[1].splitlines()[4].split()
    assert weight_two[0] == "2"
    assert int(weight_two[3]) < 15


def test_file_input(capsys):
    code, out, _ = run(capsys, "dim", "--file", os.path.join(FIXTURES, "livernet_loday.op"), "--set", "t=1/2")
    assert code == 0
    assert out == "dim = 24\n"


def test_member(capsys):
    jacobi = "b(b(1,2),3) + b(b(2,3),1) + b(b(3,1),2)"
    code, out, _ = run(capsys, "member", "--preset", "poisson", "--element", jacobi)
    assert code == 0
    assert out.splitlines()[0] == "member = yes"
    code, out, _ = run(capsys, "member", "--preset", "almost-poisson", "--element", jacobi)
    assert code == 1
    assert out == "member = no\n"


def test_records_are_json_lines(capsys):
    code, out, _ = run(capsys, "classify", "--preset", "kokoris", "--arity", "3", "--format", "records")
    assert code == 0
    records = [json.loads(line) for line in out.splitlines()]
    assert [r['dim'] for r in records] == [1, 2, 7]
    assert all(r['kind'] == 'classify' for r in records)


def test_parse_command(capsys):
    code, out, _ = run(capsys, "parse", os.path.join(FIXTURES, "almost_poisson.op"))
    assert code == 0
    assert out.startswith("operad almost_poisson {")
    code, out, _ = run(capsys, "parse", os.path.join(FIXTURES, "maps.op"), "--format", "records")
    assert code == 0
    assert [json.loads(line)['name'] for line in out.splitlines()] == ['depolarize', 'polarize']


def test_map_check(capsys):
    code, out, _ = run(capsys, "map-check", "--map", "kokoris-depolarization", "--arity", "3")
    assert code == 0
    assert out.splitlines()[0] == "map kokoris-depolarization: almost_poisson -> kokoris"
    assert out.splitlines()[-1] == "PASS"
    maps = os.path.join(FIXTURES, "maps.op")
    code, out, _ = run(capsys, "map-check", "--file", maps, "--map", "depolarize", "--inverse", "polarize",
                       "--arity", "3")
    assert code == 0


def test_verify_single(capsys):
    code, out, _ = run(capsys, "verify", "kokoris-remark")
    assert code == 0
    assert out.startswith("== kokoris-remark: PASS")


@pytest.mark.parametrize("argv, message", [
    (("dim", "--preset", "lie"), "unknown preset"),
    (("dim", "--preset", "almost-poisson", "--arity", "5"), "--allow-big"),
    (("dim", "--preset", "almost-poisson", "--arity", "6", "--allow-big"), "exceeds"),
    (("dim", "--preset", "almost-poisson", "--set", "t=1"), "no parameter 't'"),
    (("dim", "--preset", "ap-family", "--set", "t"), "NAME=RATIONAL"),
    (("verify", "nothing"), "unknown verification"),
    (("dim",), "--preset"),
])
def test_usage_errors(capsys, argv, message):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert out == ""
    assert message in err


def test_parse_error_location(capsys, tmp_path):
    source = tmp_path / "bad.op"
    source.write_text("operad bad {\n    gen m : 2 symmetric;\n    rel r : m(m(1,2),4) = 0;\n}\n")
    code, _, err = run(capsys, "dim", "--file", str(source))
    assert code == 2
    assert "line 3" in err


def test_argparse_errors_exit_two(capsys):
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "dim", "--preset", "a", "--file", "b")[0] == 2


def test_run_config_validation():
    with pytest.raises(ArityError):
        RunConfig(command='dim', arity=5)
    assert RunConfig(command='dim', arity=5, allow_big=True).arity == 5
    assert parse_assignment("t = -3/4") == ('t', parse_assignment("t=-3/4")[1])
    with pytest.raises(OperadError):
        parse_assignment("=1")


def test_controller_never_raises():
    response = Controller(RunConfig(command='dim', file='/nonexistent/file.op')).process()
    assert response['error'].startswith("cannot read")
    assert not response['passed']


@pytest.mark.slow
def test_parallel_verify_matches_sequential(capsys):
    sequential = run(capsys, "verify", "all")
    parallel = run(capsys, "verify", "all", "--jobs", "2")
    assert sequential[0] == parallel[0] == 0
    assert sequential[1] == parallel[1]
    assert sequential[1].rstrip().endswith("9/9 verifications passed")


@pytest.mark.slow
def test_almost_poisson_arity_five(capsys):
    code, out, _ = run(capsys, "dim", "--preset", "almost-poisson", "--arity", "5", "--allow-big")
    assert code == 0
    assert out == "dim = 266\n"
