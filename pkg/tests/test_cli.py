import json
from pathlib import Path

import numpy as np
import pytest

from distal_beam.cli import main
from distal_beam.scenario import ScenarioError, load_scenario, parse_scenario

SCENARIOS = Path(__file__).resolve().parent.parent / "scenarios"


def read_csv(path):
    lines = path.read_text(encoding="utf-8").strip().split("\n")
    header = lines[0].split(",")
    rows = [line.split(",") for line in lines[1:]]
    return header, rows


def table1_scenario(**overrides):
    data = json.loads((SCENARIOS / "table1.json").read_text())
    for dotted, value in overrides.items():
        node = data
        parts = dotted.split(".")
        for key in parts[:-1]:
            node = node[key]
        node[parts[-1]] = value
    return data


class TestScenarioParsing:
    def test_valid_files(self):
        for name in ("straight.json", "table1.json", "oracle_refinement.json"):
            scn = load_scenario(SCENARIOS / name)
            assert scn.beam.length > 0

    @pytest.mark.parametrize(
        "override,field",
        [
            ({"beam.offset": -0.1}, "beam.offset"),
            ({"beam.offset": 2.0}, "beam.offset"),
            ({"beam.modes": 1}, "beam.modes"),
            ({"beam.grid_n": 100}, "beam.grid_n"),
            ({"schema_version": 99}, "schema_version"),
            ({"sweep.alphas": []}, "sweep.alphas"),
            ({"sweep.direction_index": 7}, "sweep.direction_index"),
        ],
    )
    def test_field_errors(self, override, field):
        with pytest.raises(ScenarioError) as exc:
            parse_scenario(table1_scenario(**override))
        assert exc.value.field_path == field

    def test_targets_and_coeffs_exclusive(self):
        data = table1_scenario()
        data["shape"]["coeffs"] = [0.0] * 6
        with pytest.raises(ScenarioError) as exc:
            parse_scenario(data)
        assert exc.value.field_path == "shape"

    def test_explicit_coeffs(self):
        data = table1_scenario()
        del data["shape"]["targets"]
        data["shape"]["coeffs"] = [0.1, 0, 0, 0.2, 0, 0]
        scn = parse_scenario(data)
        assert scn.coeffs == (0.1, 0, 0, 0.2, 0, 0)


class TestShapeCommand:
    def test_straight_outputs(self, tmp_path):
        rc = main(["shape", "--config", str(SCENARIOS / "straight.json"), "--out", str(tmp_path)])
        assert rc == 0
        for name in ("rod_reference.csv", "rod_parallel.csv", "rod_convergent.csv",
                     "report.csv", "shape.svg"):
            assert (tmp_path / name).exists()
        header, rows = read_csv(tmp_path / "rod_parallel.csv")
        assert header == ["s", "theta", "x", "y"]
        assert all(float(r[3]) == 0.1 for r in rows)  # straight parallel rod at y = a0

    def test_byte_stable(self, tmp_path):
        out1, out2 = tmp_path / "a", tmp_path / "b"
        for out in (out1, out2):
            assert main(["shape", "--config", str(SCENARIOS / "straight.json"), "--out", str(out)]) == 0
        for name in ("rod_reference.csv", "report.csv", "shape.svg"):
            assert (out1 / name).read_bytes() == (out2 / name).read_bytes()

    def test_table1_report(self, tmp_path):
        rc = main(["shape", "--config", str(SCENARIOS / "table1.json"), "--out", str(tmp_path),
                   "--grid-n", "2049"])
        assert rc == 0
        header, rows = read_csv(tmp_path / "report.csv")
        row = dict(zip(header, map(float, rows[0])))
        assert row["L1"] == pytest.approx(1.00, abs=5e-3)
        assert row["L2"] == pytest.approx(0.92, abs=5e-3)
        assert row["theta_L"] == pytest.approx(0.52, abs=5e-3)

    def test_bad_config_exit_code(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps(table1_scenario(**{"beam.offset": -1.0})))
        rc = main(["shape", "--config", str(bad), "--out", str(tmp_path / "out")])
        assert rc == 2

    def test_missing_config(self, tmp_path):
        rc = main(["shape", "--config", str(tmp_path / "nope.json"), "--out", str(tmp_path)])
        assert rc == 2


class TestSweepCommand:
    def test_invariance_pattern(self, tmp_path):
        rc = main(["sweep", "--config", str(SCENARIOS / "table1.json"), "--out", str(tmp_path),
                   "--grid-n", "2049"])
        assert rc == 0
        header, rows = read_csv(tmp_path / "invariants.csv")
        assert header[-1] == "status"
        values = [dict(zip(header[:-1], map(float, r[:-1]))) for r in rows]
        for v in values:
            assert round(v["L1"], 2) == 1.00
            assert round(v["L2"], 2) == 0.92
            assert round(v["theta_L"], 2) == 0.52
        assert (tmp_path / "sweep.svg").exists()
        assert len(list((tmp_path / "frames").iterdir())) == len(rows)

    def test_tip_collinearity(self, tmp_path):
        rc = main(["sweep", "--config", str(SCENARIOS / "table1.json"), "--out", str(tmp_path),
                   "--grid-n", "2049"])
        assert rc == 0
        tips = []
        for frame in sorted((tmp_path / "frames").iterdir()):
            _, rows = read_csv(frame)
            tips.append((float(rows[-1][2]), float(rows[-1][3])))
        base = np.array(tips[0]) / np.hypot(*tips[0])
        for tip in tips[1:]:
            perp = abs(tip[0] * base[1] - tip[1] * base[0])
            assert perp <= 1e-2

    def test_single_alpha_matches_shape_report(self, tmp_path):
        data = table1_scenario(**{"sweep.alphas": [0.0]})
        cfg_path = tmp_path / "scn.json"
        cfg_path.write_text(json.dumps(data))
        out_sweep, out_shape = tmp_path / "sweep", tmp_path / "shape"
        assert main(["sweep", "--config", str(cfg_path), "--out", str(out_sweep)]) == 0
        assert main(["shape", "--config", str(cfg_path), "--out", str(out_shape)]) == 0
        _, sweep_rows = read_csv(out_sweep / "invariants.csv")
        _, shape_rows = read_csv(out_shape / "report.csv")
        assert sweep_rows[0][:7] == shape_rows[0][:7]

    def test_self_intersecting_alpha_flagged(self, tmp_path):
        data = table1_scenario(**{"sweep.alphas": [0.0, 500.0]})
        cfg_path = tmp_path / "scn.json"
        cfg_path.write_text(json.dumps(data))
        assert main(["sweep", "--config", str(cfg_path), "--out", str(tmp_path / "out")]) == 0
        _, rows = read_csv(tmp_path / "out" / "invariants.csv")
        assert rows[0][-1] == "ok"
        assert rows[1][-1] == "self-intersect"

    def test_all_failing_exit_code(self, tmp_path):
        data = table1_scenario(**{"sweep.alphas": [500.0]})
        cfg_path = tmp_path / "scn.json"
        cfg_path.write_text(json.dumps(data))
        assert main(["sweep", "--config", str(cfg_path), "--out", str(tmp_path / "out")]) == 3


class TestOracleCommand:
    def test_straight_errors_small(self, tmp_path):
        rc = main(["oracle", "--config", str(SCENARIOS / "straight.json"), "--out", str(tmp_path)])
        assert rc == 0
        header, rows = read_csv(tmp_path / "oracle.csv")
        row = dict(zip(header, map(float, rows[0])))
        assert row["n_disks"] == 41
        for key in ("tip_angle_err", "tip_ratio_err", "l1_err", "l2_err", "lc_err"):
            assert row[key] <= 2e-4

    def test_refinement_order(self, tmp_path):
        rc = main(["oracle", "--config", str(SCENARIOS / "oracle_refinement.json"),
                   "--out", str(tmp_path)])
        assert rc == 0
        header, rows = read_csv(tmp_path / "convergence.csv")
        for r in rows:
            row = dict(zip(header, r))
            for key in ("order_tip_ratio", "order_lc"):
                value = float(row[key])
                assert value >= np.log2(3.5)  # error ratio >= 3.5x per doubling

    def test_projection_invariance(self, tmp_path):
        rc = main(["oracle", "--config", str(SCENARIOS / "oracle_refinement.json"),
                   "--out", str(tmp_path)])
        assert rc == 0
        header, rows = read_csv(tmp_path / "projection.csv")
        for r in rows:
            row = dict(zip(header[:-1], map(float, r[:-1])))
            assert row["tip_angle_change"] <= 1e-3
            assert row["tip_perp_deviation"] <= 1e-2
