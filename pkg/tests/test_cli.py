from __future__ import annotations

import csv
import io
import json
import math
import subprocess
import sys

import pytest

from perfpoly import symmetry as sy
from perfpoly.cli import EXIT_DEGENERATE, EXIT_MISMATCH, EXIT_OK, EXIT_PARSE, RunConfig, render, run


def call(*argv: str) -> tuple[int, str, str]:
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def rows(*argv: str) -> list[dict]:
    code, out, _ = call(*argv, "--format", "json")
    assert code == EXIT_OK
    return json.loads(out)


@pytest.mark.parametrize(
    "spec, verdict",
    [("dodeca", "Perfect"), ("polygon:3", "AlmostPerfectOnly"), ("cube:4", "NotAlmostPerfect")],
)
def test_classify_verdicts(spec, verdict):
    (row,) = rows("classify", spec)
    assert row["verdict"] == verdict
    assert set(row) >= {"name", "dim", "n_vertices", "d_full", "d_centered", "exactness"}


def test_classify_keeps_input_order():
    names = [r["name"] for r in rows("classify", "icosa", "cube:3", "polygon:5")]
    assert len(names) == 3 and names[1].startswith("cube")


@pytest.mark.parametrize("n_max", [2, 3, 4])
def test_theorem1_table_matches(n_max):
    code, out, err = call("theorem1", "--n-max", str(n_max))
    assert code == EXIT_OK, err
    assert "False" not in out


def test_theorem1_rejects_out_of_range():
    assert call("theorem1", "--n-max", "9")[0] == EXIT_PARSE


def test_gosset_flags_disagreement():
    # the truncated 4-simplex computes as AlmostPerfectOnly (see test_quadrics)
    code, out, err = call("gosset", "--format", "json")
    assert code == EXIT_MISMATCH
    by_name = {r["name"]: r for r in json.loads(out)}
    bad = [name for name, r in by_name.items() if not r["match"]]
    assert len(bad) == 1 and "trunc" in bad[0] and "trunc" in err
    assert sorted(r["n_vertices"] for r in by_name.values()) == [6, 10, 16, 27, 56, 240]


def test_mvee_box_semiaxes():
    (row,) = rows("mvee", "box:1,2")
    assert all(math.isclose(a, b, rel_tol=1e-5) for a, b in zip(row["semiaxes"], [math.sqrt(2), 2 * math.sqrt(2)]))
    assert row["coincides"] is False


def test_distance_spheres_icosahedron():
    assert [r["size"] for r in rows("distance-spheres", "icosa", "0")] == [1, 5, 5, 1]


def test_family_orthoplex():
    (row,) = rows("family", "orthoplex:3")
    assert row["parameters"] == 4
    assert "x" in row["family"]


def test_orbit_from_generator_file(tmp_path):
    path = tmp_path / "flips.gen"
    path.write_text(sy.format_generator_text(sy.diagonal_flips(3)))
    out = rows("orbit", str(path), "1,1,sqrt(2)")
    assert len(out) == 8
    assert {"-sqrt(2)", "sqrt(2)"} == {r["vertex"][2] for r in out}


def test_orbit_cap_is_degenerate(tmp_path):
    path = tmp_path / "flips.gen"
    path.write_text(sy.format_generator_text(sy.diagonal_flips(3)))
    assert call("orbit", str(path), "1,1,1", "--orbit-cap", "3")[0] == EXIT_DEGENERATE


def test_cube_search():
    out = rows("cube-search", "dodeca", "icosa")
    assert out[0]["found"] and out[0]["condition2"]
    assert not out[1]["found"]


@pytest.mark.parametrize(
    "argv",
    [
        ["classify", "polygon:x"],
        ["classify", "nonsense"],
        ["classify", "box:1,sqrt(7)"],
        ["frobnicate"],
        ["classify", "cube:3", "--tol", "-1"],
        ["classify", "cube:3", "--format", "xml"],
        ["orbit", "/nonexistent/file", "1,0"],
        ["distance-spheres", "icosa", "12"],
    ],
)
def test_parse_errors_exit_2(argv):
    assert call(*argv)[0] == EXIT_PARSE


@pytest.mark.parametrize(
    "body",
    [
        "0 0\n1 1\n-1 -1\n",  # collinear
        "0 0\n1 0\n0 1\n3 3\n",  # spans but lies on no circle
        "1 0 0\n0 1 0\n-1 0 0\n0 -1 0\n",  # flat in R^3
    ],
)
def test_degenerate_input_exit_3(tmp_path, body):
    path = tmp_path / "pts.txt"
    n = len(body.split("\n")[0].split())
    path.write_text(f"dim {n} exact\n{body}")
    code, _, err = call("classify", f"file:{path}")
    assert code == EXIT_DEGENERATE, err


@pytest.mark.parametrize("spec", ["box:1,0", "polygon:2", "file:/nonexistent"])
def test_invalid_parameters_exit_2(spec):
    assert call("classify", spec)[0] == EXIT_PARSE


def test_mvee_degenerate_exit_3(tmp_path):
    path = tmp_path / "line.txt"
    path.write_text("dim 2 float\n0 0\n1 1\n2 2\n")
    assert call("mvee", f"file:{path}")[0] == EXIT_DEGENERATE


@pytest.mark.parametrize("fmt", ["json", "csv", "markdown"])
def test_output_is_deterministic(fmt):
    argv = ["classify", "polygon:7", "cell24", "prism:polygon:8:sqrt(2)", "--format", fmt]
    assert call(*argv)[1] == call(*argv)[1]


def test_csv_is_rfc4180():
    code, out, _ = call("family", "orthoplex:3", "--format", "csv")
    assert code == EXIT_OK and out.endswith("\r\n")
    (header, record) = list(csv.reader(io.StringIO(out)))
    assert header == ["name", "parameters", "family"] and record[1] == "4"


def test_render_serializes_field_and_float_values():
    from perfpoly.numberfield import parse

    text = render([{"a": parse("1/2 + sqrt(5)/2"), "b": 0.1}], "csv")
    assert text == "a,b\r\n1/2 + sqrt(5)/2,0.10000000000000001\r\n"


def test_markdown_table_shape():
    code, out, _ = call("classify", "icosa")
    lines = out.strip().splitlines()
    assert code == EXIT_OK and len(lines) == 3 and lines[1].startswith("|---")


def test_runconfig_validation():
    with pytest.raises(ValueError):
        RunConfig("classify", orbit_cap=0)
    with pytest.raises(ValueError):
        RunConfig("classify", eps=0)


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "perfpoly.cli", "classify", "polygon:5", "--format", "json"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)[0]["verdict"] == "Perfect"
