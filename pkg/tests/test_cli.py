"""End-to-end CLI behavior: pinned outputs, files, exit codes."""

import json
import subprocess
import sys

import pytest

from treepoly.cli import run


@pytest.fixture()
def capture(capsys):
    def invoke(*argv):
        code = run(list(argv))
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return invoke


class TestDensity:
    def test_worked_example_output(self, capture):
        code, out, err = capture("density", "--tree", "((*,*),((*,*),*))", "--n", "4")
        assert code == 0
        assert out == "Comb_4: 2/5  Bal_4: 3/5\n"

    def test_decimal_rendering(self, capture):
        code, out, _ = capture("density", "--tree", "((*,*),((*,*),*))", "--n", "4",
                               "--decimal", "3")
        assert code == 0
        assert out == "Comb_4: 0.400  Bal_4: 0.600\n"

    def test_shape_from_file(self, capture, tmp_path):
        path = tmp_path / "shape.txt"
        path.write_text("((*,*),((*,*),*))\n")
        code, out, _ = capture("density", "--file", str(path), "--n", "4")
        assert code == 0 and out.startswith("Comb_4: 2/5")

    def test_json_export(self, capture, tmp_path):
        target = tmp_path / "row.json"
        code, _, _ = capture("density", "--tree", "(*,(*,(*,*)))", "--n", "3",
                             "--json", str(target))
        assert code == 0
        payload = json.loads(target.read_text())
        assert payload == {"n": 3, "probs": ["1"]}

    def test_parse_error_exit_code(self, capture):
        code, _, err = capture("density", "--tree", "((*,*)", "--n", "4")
        assert code == 1
        assert "position" in err


class TestModel:
    def test_beta_pinned_output(self, capture):
        code, out, _ = capture("model", "beta", "--n", "4", "--beta", "0")
        assert code == 0
        assert out == "Comb_4: 2/3  Bal_4: 1/3\n"

    def test_beta_endpoints(self, capture):
        _, out, _ = capture("model", "beta", "--n", "5", "--beta", "inf")
        assert out == "Comb_5: 4/21  Gir_5: 1/7  Bal_5: 2/3\n"
        _, out, _ = capture("model", "beta", "--n", "5", "--beta", "-2")
        assert out == "Comb_5: 1  Gir_5: 0  Bal_5: 0\n"

    def test_negative_fraction_beta(self, capture):
        code, out, _ = capture("model", "beta", "--n", "4", "--beta", "-3/2")
        assert code == 0
        assert out == "Comb_4: 4/5  Bal_4: 1/5\n"

    def test_rule_with_derivation(self, capture):
        code, out, _ = capture("model", "rule", "--n", "4", "--beta", "1", "--lower")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "level 4: q(1)=8/25  q(2)=9/25  q(3)=8/25"
        assert lines[1] == "level 3: q(1)=1/2  q(2)=1/2"

    def test_multinomial_inline(self, capture):
        code, out, _ = capture("model", "multinomial", "--skeleton", "(*,*)",
                               "--weights", "0,1/2,1/2", "--n", "5")
        assert code == 0
        values = dict(part.split(": ") for part in out.strip().split("  "))
        assert values["Bal_5"] == "5/8"

    def test_multinomial_params_file(self, capture, tmp_path):
        params = tmp_path / "params.json"
        params.write_text(json.dumps(
            {"skeleton": "(*,*)", "weights": ["0", "1/2", "1/2"]}))
        code, out, _ = capture("model", "multinomial", "--params", str(params),
                               "--n", "5")
        assert code == 0 and "Bal_5: 5/8" in out

    def test_out_of_domain_beta(self, capture):
        code, _, err = capture("model", "beta", "--n", "4", "--beta", "-9/4")
        assert code == 1 and "beta" in err


class TestEnumerateProjectHull:
    def test_enumerate_count_and_listing(self, capture):
        code, out, _ = capture("enumerate", "--n", "6", "--count")
        assert code == 0 and out == "6\n"
        code, out, _ = capture("enumerate", "--n", "4")
        assert out == "(*,(*,(*,*)))\n((*,*),(*,*))\n"

    def test_enumerate_to_file(self, capture, tmp_path):
        target = tmp_path / "shapes.txt"
        code, _, _ = capture("enumerate", "--n", "5", "--out", str(target))
        assert code == 0
        assert target.read_text().splitlines() == [
            "(*,(*,(*,(*,*))))", "(*,((*,*),(*,*)))", "((*,*),(*,(*,*)))"]

    def test_project_point_mass(self, capture):
        code, out, _ = capture("project", "--m", "5", "--n", "4", "--probs", "0,0,1")
        assert code == 0
        assert out == "Comb_4: 2/5  Bal_4: 3/5\n"

    def test_project_from_file(self, capture, tmp_path):
        dist = tmp_path / "dist.json"
        dist.write_text(json.dumps({"n": 5, "probs": ["0", "0", "1"]}))
        code, out, _ = capture("project", "--m", "5", "--n", "4", "--file", str(dist))
        assert code == 0 and out.startswith("Comb_4: 2/5")

    def test_project_dimension_mismatch(self, capture):
        code, _, err = capture("project", "--m", "5", "--n", "4", "--probs", "1,0")
        assert code == 1

    def test_hull_json(self, capture, tmp_path):
        target = tmp_path / "hull.json"
        code, out, _ = capture("hull", "--n", "5", "--m", "7", "--json", str(target))
        assert code == 0
        assert out.startswith("7 vertices among 11 columns")
        payload = json.loads(target.read_text())
        assert payload["dim"] == 3
        assert len(payload["vertices"]) == 7
        assert len(payload["points"]) == len(payload["provenance"]) == 11


class TestVerifyAndFigure:
    def test_verify_subset_passes(self, capture, tmp_path):
        report = tmp_path / "report.jsonl"
        code, out, _ = capture("verify", "--claims",
                               "balanced-limit-densities,comb5-minimizer",
                               "--report", str(report))
        assert code == 0
        assert out.splitlines()[0].startswith("PASS  balanced-limit-densities")
        lines = report.read_text().strip().splitlines()
        assert [json.loads(line)["status"] for line in lines] == ["pass", "pass"]

    def test_verify_unknown_claim(self, capture):
        code, _, err = capture("verify", "--claims", "nope")
        assert code == 1 and "unknown claims" in err

    def test_figure_emission(self, capture, tmp_path):
        code, out, _ = capture("figure", "fig4", "--out", str(tmp_path))
        assert code == 0
        assert (tmp_path / "fig4_points.csv").exists()
        assert (tmp_path / "fig4_hull.csv").exists()


class TestProcessLevel:
    def test_usage_error_exit_two(self):
        proc = subprocess.run([sys.executable, "-m", "treepoly.cli", "nonsense"],
                              capture_output=True, text=True)
        assert proc.returncode == 2

    def test_installed_entry_point_runs(self):
        proc = subprocess.run(
            [sys.executable, "-m", "treepoly.cli", "density",
             "--tree", "((*,*),((*,*),*))", "--n", "4"],
            capture_output=True, text=True)
        assert proc.returncode == 0
        assert proc.stdout == "Comb_4: 2/5  Bal_4: 3/5\n"

    def test_byte_identical_across_thread_counts(self):
        runs = []
        for threads in ("1", "3"):
            proc = subprocess.run(
                [sys.executable, "-m", "treepoly.cli", "hull", "--n", "4",
                 "--m", "7", "--threads", threads],
                capture_output=True, text=True)
            assert proc.returncode == 0
            runs.append(proc.stdout)
        assert runs[0] == runs[1]
