"""Command line: example invocations, exit codes and determinism."""

import math

import pytest

from bjorling.cli import main
from bjorling.mesh import read_obj


def run(capsys, *argv):
    rc = main(list(argv))
    out, err = capsys.readouterr()
    return rc, out, err


def test_surface_to_obj(tmp_path, capsys):
    path = tmp_path / "ec.obj"
    rc, out, _ = run(capsys, "surface", "elliptical-catenoid", "--a", "2", "--b", "1", "--out", str(path))
    assert rc == 0 and "4096 vertices" in out
    v, f = read_obj(path)
    assert v.shape == (4096, 3) and f.shape == (63 * 63, 4)
    assert f.min() == 0 and f.max() == 4095


def test_surface_to_ply_with_curvature(tmp_path, capsys):
    path = tmp_path / "eh.ply"
    rc, _, _ = run(capsys, "surface", "elliptical-helicoid", "--grid", "-1,1,-0.5,0.5,8,6",
                   "--with-curvature", "--out", str(path))
    assert rc == 0
    head = path.read_text().split("end_header")[0]
    assert "element vertex 48" in head and "property float quality" in head


def test_surface_to_stdout(capsys):
    rc, out, _ = run(capsys, "surface", "catalan", "--grid", "-1,1,-1,1,3,3")
    assert rc == 0
    lines = out.splitlines()
    assert sum(line.startswith("v ") for line in lines) == 9
    assert sum(line.startswith("f ") for line in lines) == 4


def test_curve_csv(capsys):
    rc, out, _ = run(capsys, "curve", "catalan", "--axis", "real", "--range", "-1,1", "--n", "3")
    assert rc == 0
    rows = [r.split(",") for r in out.splitlines()]
    assert rows[0] == ["t", "x", "y", "z"]
    assert [float(r[0]) for r in rows[1:]] == [-1.0, 0.0, 1.0]
    assert float(rows[3][1]) == pytest.approx(2 * math.sinh(1.0))


def test_curve_to_file(tmp_path, capsys):
    path = tmp_path / "dual.csv"
    rc, _, _ = run(capsys, "curve", "circle", "--axis", "imaginary", "--range=-1,1", "--n", "5",
                   "--out", str(path))
    assert rc == 0
    rows = path.read_text().splitlines()
    assert len(rows) == 6
    t, x, y, _ = map(float, rows[1].split(","))
    assert math.hypot(x, y) == pytest.approx(math.cosh(t), abs=1e-8)


def test_verify_catalan(capsys):
    rc, out, _ = run(capsys, "verify", "catalan", "--format", "kv")
    assert rc == 0
    kv = dict(line.split("=", 1) for line in out.splitlines())
    assert float(kv["max_abs_H"]) < 1e-3
    assert kv["result"] == "pass" and kv["sharp_edge"] == "false"


def test_verify_tolerance_failure(capsys):
    rc, out, _ = run(capsys, "verify", "catalan", "--tol", "1e-12")
    assert rc == 1 and "result=fail" in out


def test_naive_mesh_fails_verification(tmp_path, capsys):
    path = tmp_path / "naive.obj"
    rc, _, _ = run(capsys, "surface", "elliptical-catenoid", "--naive", "--grid",
                   "-3.14159,3.14159,-1.2,1.2,41,41", "--out", str(path))
    assert rc == 0
    rc, out, _ = run(capsys, "verify", "--mesh", str(path))
    assert rc == 1 and "SHARP EDGE" in out


def test_compare_table(capsys):
    rc, out, _ = run(capsys, "compare", "parabola")
    assert rc == 0
    rows = [line.split() for line in out.splitlines()[2:]]
    assert len(rows) == 3
    for _, dre, dim in rows:
        assert abs(float(dim)) < 1e-8 and abs(float(dre)) > 0.1


@pytest.mark.parametrize("argv", [
    [],
    ["surface"],
    ["surface", "enneper"],
    ["surface", "catalan", "--grid", "1,2,3"],
    ["curve", "catalan", "--range", "0"],
    ["curve", "catalan", "--n", "ten"],
    ["verify"],
    ["surface", "hyperbola", "--naive"],
    ["surface", "elliptical-catenoid", "--a", "1", "--b", "2"],
])
def test_usage_errors_exit_2(argv, capsys):
    assert main(argv) == 2


def test_output_is_byte_deterministic(tmp_path, capsys):
    outs = []
    for i in range(2):
        path = tmp_path / f"m{i}.ply"
        main(["surface", "hyperbola", "--grid", "-1,1,-0.5,0.5,9,9", "--with-curvature", "--out", str(path)])
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
    capsys.readouterr()
    a = run(capsys, "curve", "elliptical-catenoid", "--axis", "imaginary")[1]
    b = run(capsys, "curve", "elliptical-catenoid", "--axis", "imaginary")[1]
    assert a == b
