import csv
import io
import json

import numpy as np
import pytest
from click.testing import CliRunner

from contactgeom.cli import cli, frame_columns
from contactgeom.frames import gram_deviation


@pytest.fixture
def run():
    runner = CliRunner()

    def invoke(*args):
        return runner.invoke(cli, list(args))

    return invoke


def rows(text):
    return list(csv.DictReader(line for line in io.StringIO(text) if not line.startswith("#")))


def test_list_surfaces(run):
    res = run("list-surfaces")
    assert res.exit_code == 0
    names = [line.split("\t")[0] for line in res.output.splitlines()]
    assert names == ["legendrian-torus", "generalized-clifford", "clifford"]


@pytest.mark.parametrize("name,beta", [
    ("clifford", 0.0),
    ("generalized-clifford", 0.339836909454122),
    ("legendrian-torus", np.pi / 2),
])
def test_angles_csv(run, name, beta):
    res = run("angles", "--surface", name, "--grid", "16")
    assert res.exit_code == 0
    table = rows(res.output)
    assert len(table) == 256
    np.testing.assert_allclose([float(r["beta_rad"]) for r in table], beta, atol=1e-11)
    assert "# summary,beta," in res.output
    if name == "clifford":
        assert all(r["alpha_rad"] == "" for r in table)


def test_angles_json_degrees(run):
    res = run("angles", "--surface", "legendrian-torus", "--grid", "8", "--format", "json", "--degrees")
    data = json.loads(res.output)
    assert data["schema"] == "1" and data["unit"] == "deg"
    assert data["config"]["grid"] == 8 and "version" in data
    assert data["cells"][0]["beta"] == pytest.approx(90.0)


def test_csv_is_byte_stable(run, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run("angles", "--surface", "generalized-clifford", "--grid", "8", "--out", str(a)).exit_code == 0
    assert run("angles", "--surface", "generalized-clifford", "--grid", "8", "--out", str(b)).exit_code == 0
    assert a.read_bytes() == b.read_bytes()
    first = rows(a.read_text())[1]["beta_rad"]
    assert first == "3.39836909454e-01"


def test_verify_exit_codes(run):
    res = run("verify", "--surface", "clifford", "--grid", "16", "--identities", "laplacian")
    assert res.exit_code == 0
    assert "vacuous" in res.output
    res = run("verify", "--surface", "generalized-clifford", "--grid", "32", "--format", "json")
    assert res.exit_code == 1
    data = json.loads(res.stdout)
    failed = {r["identity"] for r in data["reports"] if not r["passed"]}
    assert failed == {"gauss-curvature-full", "laplacian"}
    res = run("verify", "--surface", "legendrian-torus", "--grid", "32", "--identities", "gauss-curvature-full")
    assert res.exit_code == 0


def test_configuration_errors(run):
    assert run("verify", "--surface", "clifford", "--grid", "4").exit_code == 2
    res = run("angles", "--surface", "nowhere", "--grid", "8")
    assert res.exit_code == 2 and "unknown surface" in res.output
    assert run("verify", "--surface", "clifford", "--identities", "bogus").exit_code == 2
    assert run("angles", "--surface", "clifford", "--format", "xml").exit_code == 2


def test_invalid_immersion(run, data_dir):
    res = run("angles", "--surface", str(data_dir / "degenerate.surf"), "--grid", "8")
    assert res.exit_code == 3
    assert "det" in res.output


def test_surface_file(run, data_dir):
    res = run("angles", "--surface", str(data_dir / "generalized_clifford.surf"), "--grid", "8")
    assert res.exit_code == 0
    np.testing.assert_allclose([float(r["beta_rad"]) for r in rows(res.output)], 0.339836909454122, atol=1e-11)


def test_export_frames_round_trip(run, tmp_path):
    out = tmp_path / "frames.csv"
    res = run("export-frames", "--surface", "clifford", "--grid", "8", "--out", str(out))
    assert res.exit_code == 0
    table = rows(out.read_text())
    assert len(table) == 64
    assert list(table[0]) == frame_columns(2)
    vecs = []
    for k in range(1, 6):
        comps = [
            np.array([float(r[f"e{k}_{c}_re"]) + 1j * float(r[f"e{k}_{c}_im"]) for r in table])
            for c in range(1, 4)
        ]
        vecs.append(np.stack(comps, axis=-1))
    assert gram_deviation(vecs).max() <= 1e-9


def test_export_frames_legendrian_flag(run):
    res = run("export-frames", "--surface", "legendrian-torus", "--grid", "8", "--format", "json")
    data = json.loads(res.output)
    assert len(data["rows"]) == 64
    assert all(r["legendrian"] is True for r in data["rows"])
