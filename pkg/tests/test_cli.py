import re
import subprocess
import sys

import pytest

from hyperdiff.cli import invariant_checks, main

SCI = re.compile(r"^-?\d\.\d{16}e[+-]\d{2,3}$|^inf$")


def run(argv, capsys):
    status = main(argv)
    out = capsys.readouterr()
    return status, out.out, out.err


def assert_csv_format(path):
    lines = path.read_text().splitlines()
    assert lines and not SCI.match(lines[0].split(",")[-1])
    for line in lines[1:]:
        for cell in line.split(","):
            assert SCI.match(cell) or cell.isdigit() or cell.isalpha(), cell


def test_check_passes(capsys):
    status, out, _ = run(["check"], capsys)
    assert status == 0
    assert "0 failed" in out
    assert "FAIL" not in out


def test_invariant_names():
    names = [name for name, _, _ in invariant_checks()]
    for key in ("identity stress", "symmetry", "det(F)", "fiber-swap", "exponent cap", "round trip"):
        assert any(key in n for n in names)


def test_sweep(tmp_path, capsys):
    status, out, _ = run(["sweep", "--out", str(tmp_path)], capsys)
    assert status == 0
    assert "stress optimum: eps_s = 1e-08" in out
    assert "(eps_s, eps_c) = (1e-06, 1e-04)" in out
    for name in ("fvu_stress.csv", "fvu_tangent.csv"):
        assert_csv_format(tmp_path / name)


def test_sweep_single_path(tmp_path, capsys):
    status, out, _ = run(["sweep", "--path", "shear", "--out", str(tmp_path)], capsys)
    assert status == 0
    assert (tmp_path / "fvu_stress.csv").read_text().count("shear") == 16


def test_element_simple_shear(tmp_path, capsys):
    status, out, _ = run(["element", "--program", "simple-shear", "--out", str(tmp_path)], capsys)
    assert status == 0
    err = float(out.splitlines()[1].split()[3])
    assert err <= 1e-3
    assert_csv_format(tmp_path / "element_shear.csv")


def test_inflate(tmp_path, capsys):
    status, out, _ = run(["inflate", "--out", str(tmp_path)], capsys)
    assert status == 0
    for name in ("inflation.csv", "transmural.csv"):
        assert_csv_format(tmp_path / name)


def test_byte_identical(tmp_path, capsys):
    for cmd in (["sweep"], ["element"], ["inflate"]):
        a, b = tmp_path / "a", tmp_path / "b"
        assert run(cmd + ["--out", str(a)], capsys)[0] == 0
        assert run(cmd + ["--out", str(b)], capsys)[0] == 0
        for f in a.iterdir():
            assert f.read_bytes() == (b / f.name).read_bytes()


def test_material_file(tmp_path, capsys):
    mat = tmp_path / "soft.txt"
    mat.write_text("material = neo-hookean\nc10 = 4e4\n")
    status, out, _ = run(["element", "--program", "tension", "--material", str(mat), "--out", str(tmp_path)], capsys)
    assert status == 0


def test_geometry_file(tmp_path, capsys):
    geo = tmp_path / "geo.txt"
    geo.write_text("inner_radius = 0.3\nouter_radius = 0.4\n")
    status, out, _ = run(["inflate", "--geometry", str(geo), "--pressure", "10", "--out", str(tmp_path)], capsys)
    assert status == 0


@pytest.mark.parametrize(
    "argv",
    [
        ["check", "--eps-s", "2.0"],
        ["sweep", "--eps-c", "0"],
        ["element", "--material", "/nonexistent/material.txt"],
        ["inflate", "--pressure", "-5"],
    ],
)
def test_config_errors(argv, capsys, tmp_path):
    status, _, err = run(argv + ["--out", str(tmp_path)], capsys)
    assert status == 2
    assert argv[0] in err


def test_sweep_needs_oracle(tmp_path, capsys):
    mat = tmp_path / "hz.txt"
    mat.write_text("material = holzapfel\n")
    status, _, err = run(["sweep", "--material", str(mat), "--out", str(tmp_path)], capsys)
    assert status == 2


def test_module_error(tmp_path, capsys):
    status, _, err = run(["inflate", "--pressure", "1e305", "--out", str(tmp_path)], capsys)
    assert status == 1
    assert "inflate" in err


def test_console_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "hyperdiff.cli", "check"], capture_output=True, text=True, cwd=tmp_path
    )
    assert proc.returncode == 0, proc.stderr
