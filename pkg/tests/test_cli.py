"""CLI contract: subcommands, JSON schemas, exit codes, determinism."""

import csv
import json
import math
import subprocess
import sys

import pytest

from kswitness.cli import main
from kswitness.kssets import bundled_data_dir


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def oracle_file(tmp_path):
    def write(spec, name="oracle.json"):
        path = tmp_path / name
        path.write_text(json.dumps(spec))
        return str(path)
    return write


class TestCheckSet:
    def test_uncolorable_set_exits_10(self, capsys):
        path = bundled_data_dir() / "cabello18.json"
        code, out, _ = run_cli(capsys, "check-set", str(path))
        report = json.loads(out)
        assert code == 10
        assert report["coloring"]["colorable"] is False
        assert report["bases"] == {"count": 9, "source": "supplied"}
        assert report["graph"] == {"vertices": 18, "edges": 63}

    def test_colorable_set_exits_0_with_assignment(self, capsys):
        path = bundled_data_dir() / "single_basis3.json"
        code, out, _ = run_cli(capsys, "check-set", str(path))
        report = json.loads(out)
        assert code == 0
        assert report["coloring"]["colorable"] is True
        assert sum(report["coloring"]["assignment"]) == 1

    def test_malformed_json_exits_2(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{oops")
        code, _, err = run_cli(capsys, "check-set", str(bad))
        assert code == 2
        assert "error" in err

    def test_missing_file_exits_2(self, capsys):
        code, _, _ = run_cli(capsys, "check-set", "/does/not/exist.json")
        assert code == 2


class TestWitnessCommand:
    def test_four_segment_certificate(self, capsys, oracle_file):
        path = oracle_file({"kind": "four_segment"})
        code, out, _ = run_cli(capsys, "witness", path, "--seed", "3")
        report = json.loads(out)
        assert code == 0
        assert report["outcome"] == "violating_basis"
        assert report["triad_sum"] != 1
        # re-verify the emitted triad in-process
        from kswitness.valuation import build_oracle
        oracle = build_oracle({"kind": "four_segment"})
        vecs = report["triad"]
        assert sum(oracle.evaluate(v) for v in vecs) == report["triad_sum"]

    def test_step_meridian_certificate(self, capsys, oracle_file):
        path = oracle_file({"kind": "step_meridian", "theta_star": 1.5707963267948966})
        code, out, _ = run_cli(capsys, "witness", path, "--seed", "1")
        assert code == 0
        assert json.loads(out)["outcome"] == "violating_basis"

    def test_step_meridian_at_zero_certificate(self, capsys, oracle_file):
        # theta_star = 0 picks the variant that is well defined there
        path = oracle_file({"kind": "step_meridian", "theta_star": 0.0})
        code, out, _ = run_cli(capsys, "witness", path, "--seed", "1")
        assert code == 0
        assert json.loads(out)["outcome"] == "violating_basis"

    def test_tiny_budget_exits_11(self, capsys, oracle_file):
        path = oracle_file({"kind": "polar_cap", "cap_latitude": 0.9})
        code, out, _ = run_cli(capsys, "witness", path, "--seed", "1", "--budget", "2")
        assert code == 11
        assert json.loads(out)["outcome"] == "not_found"

    def test_bad_spec_exits_2(self, capsys, oracle_file):
        path = oracle_file({"kind": "warp_core"})
        code, _, err = run_cli(capsys, "witness", path)
        assert code == 2 and "oracle" in err

    def test_byte_identical_reports(self, oracle_file):
        path = oracle_file({"kind": "step_meridian", "theta_star": 0.7,
                            "rotation_seed": 5})
        cmd = [sys.executable, "-m", "kswitness", "witness", path, "--seed", "11"]
        first = subprocess.run(cmd, capture_output=True)
        second = subprocess.run(cmd, capture_output=True)
        assert first.returncode == 0
        assert first.stdout == second.stdout


class TestGeom:
    def test_delta_phi_quarter_turn(self, capsys):
        theta_p = math.pi / 4
        theta_q = math.atan(0.5 * math.tan(theta_p))
        code, out, _ = run_cli(capsys, "geom", "delta-phi",
                               "--theta-p", repr(theta_p), "--theta-q", repr(theta_q))
        assert code == 0
        assert out.strip() == "0.785398163397"

    def test_descend_hits_equator_at_quarter_turn(self, capsys):
        code, out, _ = run_cli(capsys, "geom", "descend",
                               "--theta-p", repr(math.pi / 4),
                               "--phi", repr(math.pi / 2))
        assert code == 0
        assert out.strip() == "0.000000000000"

    def test_away_from_equator_exits_2(self, capsys):
        code, _, err = run_cli(capsys, "geom", "delta-phi",
                               "--theta-p", "0.5235987756", "--theta-q", "0.7853981634")
        assert code == 2 and "descend" in err

    def test_chain_output(self, capsys):
        code, out, _ = run_cli(capsys, "geom", "chain", "--theta-p", repr(math.pi / 4),
                               "--theta-q", repr(math.atan(0.5)))
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0].startswith("r ") and lines[1].startswith("q ")
        r_theta, r_phi = (float(x) for x in lines[0].split()[1:])
        assert r_phi == pytest.approx(math.pi / 4, abs=1e-9)

    def test_crossings_output(self, capsys):
        code, out, _ = run_cli(capsys, "geom", "crossings", "--theta-p", "0.7")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0].split()[1:] == ["0.000000000000", "1.000000000000", "0.000000000000"]


class TestPlot:
    def test_four_segment_grid_is_half_zeros(self, capsys, tmp_path):
        out_path = tmp_path / "grid.csv"
        code, _, _ = run_cli(capsys, "plot", "--figure", "four-segment",
                             "--out", str(out_path), "--format", "csv", "--grid", "32")
        assert code == 0
        rows = list(csv.DictReader(out_path.open()))
        assert len(rows) == 32 * 64
        zeros = sum(1 for r in rows if r["value"] == "0")
        assert zeros == len(rows) // 2  # exactly half, by the grid symmetry

    def test_descent_circle_rows_satisfy_identity(self, capsys, tmp_path):
        out_path = tmp_path / "curve.csv"
        theta_p = 0.9
        code, _, _ = run_cli(capsys, "plot", "--figure", "descent-circle",
                             "--theta-p", str(theta_p), "--out", str(out_path))
        assert code == 0
        for row in csv.DictReader(out_path.open()):
            phi, theta = float(row["phi"]), float(row["theta"])
            expected = math.atan(math.tan(theta_p) * math.cos(phi))
            assert abs(theta - expected) < 1e-9

    def test_oracle_grid(self, capsys, tmp_path, oracle_file):
        spec = oracle_file({"kind": "polar_cap", "cap_latitude": 0.8})
        out_path = tmp_path / "cap.csv"
        code, _, _ = run_cli(capsys, "plot", "--oracle", spec, "--out", str(out_path),
                             "--grid", "16")
        assert code == 0
        rows = list(csv.DictReader(out_path.open()))
        ones = sum(1 for r in rows if r["value"] == "1")
        # cap area fraction = 1 - sin(0.8)
        assert abs(ones / len(rows) - (1 - math.sin(0.8))) < 0.05

    def test_svg_output(self, capsys, tmp_path):
        out_path = tmp_path / "fig.svg"
        code, _, _ = run_cli(capsys, "plot", "--figure", "four-segment",
                             "--out", str(out_path), "--format", "svg", "--grid", "16")
        assert code == 0
        text = out_path.read_text()
        assert text.startswith("<svg") and "<rect" in text

    def test_unwritable_path_exits_3(self, capsys):
        code, _, _ = run_cli(capsys, "plot", "--figure", "four-segment",
                             "--out", "/nonexistent-dir/x.csv")
        assert code == 3

    def test_figure_and_oracle_conflict(self, capsys, tmp_path, oracle_file):
        spec = oracle_file({"kind": "four_segment"})
        code, _, _ = run_cli(capsys, "plot", "--figure", "four-segment",
                             "--oracle", spec, "--out", str(tmp_path / "x.csv"))
        assert code == 2

    def test_unknown_figure_exits_2(self, capsys, tmp_path):
        code = main(["plot", "--figure", "pentagram", "--out", str(tmp_path / "x.csv")])
        capsys.readouterr()
        assert code == 2
