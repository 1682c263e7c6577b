import json
import math

import numpy as np

from lorcat.cli import main
from lorcat.meshing import parse_obj


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestCount:
    def test_timelike_elliptic_roots_in_json(self, capsys):
        code, out, _ = run(
            capsys,
            "count", "--pair-class", "elliptic",
            "--z1", "-10", "--r1", "1", "--z2", "10", "--r2", "1",
        )
        assert code == 0
        doc = json.loads(out)
        sols = doc["cells"]["TE"]["solution_set"]["solutions"]
        roots = [s["profile"]["a"] for s in sols if s["subfamily"] == "2a"]
        assert any(abs(a - 0.285) < 1e-3 for a in roots)
        assert any(abs(a - 0.706) < 1e-3 for a in roots)
        assert doc["tolerances"]["residual_tol"] == 1e-9

    def test_hyperbolic_catenary_pair(self, capsys):
        code, out, _ = run(
            capsys,
            "count", "--pair-class", "hyperbolic-i",
            "--x1", "-1", "--r1", "2", "--x2", "1", "--r2", "2",
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["cells"]["HI"]["solution_set"]["raw_count"] == 2

    def test_zero_radius_reports_field_path(self, capsys):
        code, _, err = run(
            capsys,
            "count", "--pair-class", "elliptic",
            "--z1", "0", "--r1", "0", "--z2", "1", "--r2", "1",
        )
        assert code == 2
        assert "circle1.r" in err

    def test_pair_file_round_trip(self, capsys, tmp_path):
        descriptor = {
            "class": "hyperbolic-ii",
            "circle1": {"x": -1.0, "r": 2.0, "side": -1},
            "circle2": {"x": 1.0, "r": 2.0, "side": 1},
        }
        path = tmp_path / "pair.json"
        path.write_text(json.dumps(descriptor))
        code, out, _ = run(capsys, "count", "--pair-file", str(path))
        assert code == 0
        doc = json.loads(out)
        assert doc["pair"] == descriptor
        assert doc["cells"]["HIIt"]["solution_set"]["raw_count"] == 1

    def test_byte_identical_reruns(self, capsys):
        args = (
            "count", "--pair-class", "elliptic",
            "--z1", "-2", "--r1", "1", "--z2", "2", "--r2", "1",
        )
        _, out1, _ = run(capsys, *args)
        _, out2, _ = run(capsys, *args)
        assert out1 == out2


class TestConstants:
    def test_values(self, capsys):
        code, out, _ = run(capsys, "constants")
        assert code == 0
        doc = json.loads(out)["constants"]
        assert abs(doc["c1_catenary"] - 1.3255) < 1e-3
        assert abs(doc["h_star_2a"] - 7.790) < 5e-3
        assert doc["onset_1b"] == math.pi
        assert doc["residuals"]["h_star_1a"] < 1e-10


class TestSweep:
    def test_flat_band(self, capsys, tmp_path):
        out_csv = tmp_path / "s.csv"
        code, out, _ = run(
            capsys,
            "sweep", "--cell", "TE", "--r", "1",
            "--h-lo", "0.1", "--h-hi", "1.0", "--steps", "10",
            "--out", str(out_csv),
        )
        assert code == 0
        rows = out_csv.read_text().splitlines()[1:]
        assert len(rows) == 10
        assert all(int(r.split(",")[2]) == 1 for r in rows)

    def test_long_sweep_non_decreasing(self, capsys, tmp_path):
        out_csv = tmp_path / "s.csv"
        code, _, _ = run(
            capsys,
            "sweep", "--cell", "TE", "--r", "1",
            "--h-lo", "1", "--h-hi", "30", "--steps", "291",
            "--out", str(out_csv),
        )
        assert code == 0
        counts = [int(r.split(",")[2]) for r in out_csv.read_text().splitlines()[1:]]
        assert all(a <= b for a, b in zip(counts, counts[1:]))

    def test_single_step_usage_error(self, capsys, tmp_path):
        code, _, err = run(
            capsys,
            "sweep", "--cell", "TE", "--r", "1",
            "--h-lo", "0.1", "--h-hi", "1.0", "--steps", "1",
            "--out", str(tmp_path / "s.csv"),
        )
        assert code == 2
        assert "steps" in err


class TestMesh:
    def test_catenary_pair_two_files(self, capsys, tmp_path):
        code, out, _ = run(
            capsys,
            "mesh", "--pair-class", "hyperbolic-i",
            "--x1", "-1", "--r1", "2", "--x2", "1", "--r2", "2",
            "--out", str(tmp_path),
        )
        assert code == 0
        files = sorted(p.name for p in tmp_path.glob("*.obj"))
        assert files == ["HI_0.obj", "HI_1.obj"]
        assert "max_residual" in out

    def test_empty_cell_notice(self, capsys, tmp_path):
        code, out, _ = run(
            capsys,
            "mesh", "--pair-class", "elliptic",
            "--z1", "-1", "--r1", "1", "--z2", "1", "--r2", "1",
            "--cell", "SE", "--out", str(tmp_path),
        )
        assert code == 0
        assert "no catenoid" in out
        assert list(tmp_path.glob("*.obj")) == []

    def test_explicit_spec(self, capsys, tmp_path):
        code, out, _ = run(
            capsys,
            "mesh", "--rotation", "elliptic", "--causal", "spacelike",
            "--family", "sinh", "--a", "1", "--b", "0",
            "--out", str(tmp_path),
        )
        assert code == 0
        (path,) = tmp_path.glob("*.obj")
        _, _, header = parse_obj(path)
        assert float(header["max_residual"]) < 1e-9

    def test_reflected_type_ii_mesh_traces_input_circles(self, capsys, tmp_path):
        # positive branch on the left forces a reflected solve frame; the
        # exported mesh must still span the circles the user described
        code, _, _ = run(
            capsys,
            "mesh", "--pair-class", "hyperbolic-ii",
            "--x1", "-1", "--r1", "2", "--side1", "1",
            "--x2", "1", "--r2", "2", "--side2", "-1",
            "--out", str(tmp_path),
        )
        assert code == 0
        (path,) = tmp_path.glob("HIIt_*.obj")
        verts, _, header = parse_obj(path)
        assert header.get("map") == "x-reflected"
        for plane, side in ((-1.0, 1), (1.0, -1)):
            rows = np.isclose(verts[:, 0], plane, atol=1e-9)
            assert rows.any()
            y, z = verts[rows, 1], verts[rows, 2]
            assert np.allclose(np.sqrt(z * z - y * y), 2.0, atol=1e-8)
            assert np.all(np.sign(z) == side)


class TestVerify:
    def test_table_profile_passes(self, capsys):
        code, out, _ = run(
            capsys,
            "verify", "--rotation", "hyperbolic-ii", "--causal", "timelike",
            "--family", "sinh", "--a", "0.5", "--b", "0",
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["verdict"] == "PASS"
        assert doc["max_residual"] < 1e-9
        assert doc["discriminant_sign_matches"]

    def test_inadmissible_cell(self, capsys):
        code, _, err = run(
            capsys,
            "verify", "--rotation", "hyperbolic-i", "--causal", "spacelike",
            "--family", "cosh", "--a", "1",
        )
        assert code == 2
        assert "inadmissible" in err

    def test_euclidean_catenary_fails(self, capsys):
        code, out, _ = run(
            capsys,
            "verify", "--rotation", "elliptic", "--causal", "spacelike",
            "--family", "euclidean-cosh", "--a", "1", "--b", "0",
        )
        assert code == 1
        doc = json.loads(out)
        assert doc["verdict"] == "FAIL"
        assert doc["max_residual"] > 1e-3

    def test_obj_cross_check(self, capsys, tmp_path):
        code, _, _ = run(
            capsys,
            "mesh", "--rotation", "elliptic", "--causal", "spacelike",
            "--family", "sinh", "--a", "1", "--b", "0",
            "--s-lo", "0.1", "--s-hi", "2.0", "--ns", "10", "--nt", "10",
            "--out", str(tmp_path),
        )
        assert code == 0
        (path,) = tmp_path.glob("*.obj")
        code, out, _ = run(
            capsys,
            "verify", "--rotation", "elliptic", "--causal", "spacelike",
            "--family", "sinh", "--a", "1", "--b", "0",
            "--s-lo", "0.1", "--s-hi", "2.0", "--ns", "10", "--nt", "10",
            "--obj", str(path),
        )
        assert code == 0
        assert json.loads(out)["obj_max_deviation"] < 1e-7


class TestReport:
    def test_outputs_figures_and_csv(self, capsys, tmp_path):
        code, out, _ = run(
            capsys,
            "report", "--cell", "TE", "--r", "1",
            "--h-lo", "0.5", "--h-hi", "8", "--steps", "16",
            "--out", str(tmp_path),
        )
        assert code == 0
        assert (tmp_path / "sweep_TE.csv").exists()
        assert (tmp_path / "counts_TE.png").stat().st_size > 0
        assert (tmp_path / "profiles_TE.png").stat().st_size > 0
