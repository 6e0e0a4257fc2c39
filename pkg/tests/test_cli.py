import json

import numpy as np
import pytest
from click.testing import CliRunner
from pytest import approx

from equilateral.cli import cli
from equilateral.constructions import construct_linf_canonical


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def run(runner, tmp_path):
    """Invoke the CLI with an output file and return (exit_code, parsed or raw output)."""
    def invoke(*args, parse=True):
        output = tmp_path / "out.txt"
        if output.exists():
            output.unlink()
        result = runner.invoke(cli, [*args, "-o", str(output)])
        text = output.read_text() if output.exists() else None
        if parse and text is not None:
            return result.exit_code, json.loads(text)
        return result.exit_code, text
    return invoke


def write_json(path, document):
    path.write_text(json.dumps(document))
    return str(path)


def test_construct_five_point_family(run):
    code, document = run("construct", "--family", "prop17", "--p", "1", "--d", "4")
    assert code == 0
    assert len(document["points"]) == 5
    assert document["common_distance"] == 4.0
    assert document["space"] == {"type": "lp", "p": 1, "d": 4}
    assert document["metadata"]["extendable_once"] is False


@pytest.mark.parametrize("args", [
    ("--family", "petty", "--p", "2", "--d", "2"),
    ("--family", "linf", "--d", "3"),
    ("--family", "lp-basis", "--p", "1.5", "--d", "3"),
    ("--family", "lp-basis", "--p", "3", "--d", "5", "--sign", "minus"),
    ("--family", "prop17", "--p", "1.2", "--d", "6"),
    ("--family", "prop20", "--p", "1.45"),
])
def test_construct_then_verify(run, tmp_path, args):
    code, document = run("construct", *args)
    assert code == 0
    path = write_json(tmp_path / "construction.json", document)
    code, report = run("verify", "--space", path, "--points", path)
    assert code == 0
    assert report["certificate"]["lambda"] == approx(document["common_distance"], abs=1e-10)
    assert report["certificate"]["max_deviation"] <= 1e-10


@pytest.mark.slow
@pytest.mark.parametrize("args", [
    ("--family", "fixed-linf", "--d", "3", "--oracle", "lp:4"),
    ("--family", "fixed-lp", "--p", "2", "--d", "3", "--eps", "0.1"),
])
def test_construct_fixed_families_then_verify(run, tmp_path, args):
    code, document = run("construct", *args)
    assert code == 0
    path = write_json(tmp_path / "construction.json", document)
    code, report = run("verify", "--space", path, "--points", path)
    assert code == 0


def test_construct_output_is_byte_stable(run):
    args = ("construct", "--family", "prop20", "--p", "1.6")
    _, first = run(*args, parse=False)
    _, second = run(*args, parse=False)
    assert first == second
    assert first.endswith("\n")


def test_construct_rejects_bad_parameters(run):
    code, document = run("construct", "--family", "prop17", "--p", "1.4")
    assert code == 2
    assert document is None
    code, _ = run("construct", "--family", "lp-basis", "--p", "abc", "--d", "3")
    assert code == 2


def test_verify_canonical_linf_set_is_maximal(run, tmp_path):
    space = write_json(tmp_path / "linf4.json", {"type": "lp", "p": "inf", "d": 4})
    points = write_json(tmp_path / "canonical4.json", construct_linf_canonical(4).tolist())
    code, report = run("verify", "--space", space, "--points", points, "--maximal")
    assert code == 0
    assert report["verdict"]["status"] == "proven_maximal"
    assert report["verdict"]["method"] == "combinatorial"
    assert report["verdict"]["heuristic"] is False


def test_verify_reports_extension(run, tmp_path):
    space = write_json(tmp_path / "lp.json", {"type": "lp", "p": 1.5, "d": 3})
    points = write_json(tmp_path / "basis.json", np.eye(3).tolist())
    code, report = run("verify", "--space", space, "--points", points, "--maximal", "--hint", "basis")
    assert code == 1
    assert report["verdict"]["status"] == "extension_found"
    assert len(report["verdict"]["witnesses"]) == 2


def test_verify_refuses_five_point_hint_above_the_boundary(run, tmp_path):
    p = 1.5
    lam = (2 ** (p + 1) - 3) ** (1 / p)
    points = [[1, 1, 1, 0, 0], [1, -1, -1, 0, 0], [-1, 1, -1, 0, 0], [-1, -1, 1, 0, 0], [0, 0, 0, lam, 0]]
    space = write_json(tmp_path / "lp.json", {"type": "lp", "p": p, "d": 5})
    points = write_json(tmp_path / "five.json", points)
    code, _ = run("verify", "--space", space, "--points", points, "--maximal", "--hint", "prop17")
    assert code == 2


def test_verify_rejects_non_equilateral_points(run, tmp_path):
    space = write_json(tmp_path / "l2.json", {"type": "lp", "p": 2, "d": 2})
    points = write_json(tmp_path / "points.json", {"points": [[0, 0], [1, 0], [0, 2]]})
    code, report = run("verify", "--space", space, "--points", points)
    assert code == 1
    assert report is None


def test_verify_invalid_input(run, tmp_path):
    points = write_json(tmp_path / "points.json", [[0, 0], [1, 0]])
    bad_space = write_json(tmp_path / "bad.json", {"type": "hilbert", "d": 2})
    assert run("verify", "--space", bad_space, "--points", points)[0] == 2

    space = write_json(tmp_path / "l2.json", {"type": "lp", "p": 2, "d": 3})
    assert run("verify", "--space", space, "--points", points)[0] == 2

    malformed = tmp_path / "malformed.json"
    malformed.write_text("[[0, 0], [1,")
    assert run("verify", "--space", space, "--points", str(malformed))[0] == 2


def test_verify_missing_file(run, tmp_path):
    space = write_json(tmp_path / "l2.json", {"type": "lp", "p": 2, "d": 2})
    code, _ = run("verify", "--space", space, "--points", str(tmp_path / "missing.json"))
    assert code == 3


def test_extend(run, tmp_path):
    points = construct_linf_canonical(3)[:3]
    path = write_json(tmp_path / "points.json", points.tolist())
    code, document = run("extend", "--points", path, "--lambda", "2")
    assert code == 0
    witness = np.array(document["point"])
    assert np.all(np.max(np.abs(points - witness), axis=1) == 2.0)


def test_extend_rejects_too_many_points(run, tmp_path):
    path = write_json(tmp_path / "points.json", construct_linf_canonical(3).tolist())
    assert run("extend", "--points", path, "--lambda", "2")[0] == 2


def test_hadamard_rows(run):
    code, text = run("hadamard", "--order", "12", parse=False)
    assert code == 0
    rows = [[int(value) for value in line.split()] for line in text.splitlines()]
    matrix = np.array(rows)
    assert matrix.shape == (12, 12)
    np.testing.assert_array_equal(matrix @ matrix.T, 12 * np.eye(12))


def test_hadamard_simplex(run):
    code, text = run("hadamard", "--order", "8", "--simplex", parse=False)
    assert code == 0
    vertices = np.array([[int(value) for value in line.split()] for line in text.splitlines()])
    assert vertices.shape == (8, 7)
    assert set(np.unique(vertices)) == {-1, 1}
    gaps = np.abs(vertices[:, None, :] - vertices[None, :, :]).sum(axis=-1)
    assert set(gaps[~np.eye(8, dtype=bool)]) == {8}


def test_hadamard_rejects_bad_order(run):
    assert run("hadamard", "--order", "6", parse=False)[0] == 2


def test_table(run):
    code, text = run("table", "--p-min", "1", "--p-max", "1.93", "--steps", "8", parse=False)
    assert code == 0
    lines = text.splitlines()
    assert lines[0] == "p,regime,k1,k2,C,d0,cond12,cond13,cond14"
    rows = [line.split(",") for line in lines[1:]]
    assert [int(row[4]) for row in rows] == [5, 5, 5, 8, 8, 12, 16, 48]
    assert [int(row[5]) for row in rows] == [4, 4, 4, 6, 6, 10, 14, 46]
    assert rows[0][2] == "" and rows[0][6] == ""


def test_table_needs_a_range_or_exponents(runner):
    result = runner.invoke(cli, ["table", "--p-min", "1"])
    assert result.exit_code == 2


def test_nonpositive_tolerance_is_rejected(runner):
    result = runner.invoke(cli, ["--tolerance", "0", "hadamard", "--order", "4"])
    assert result.exit_code == 2
