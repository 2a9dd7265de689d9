import json

import numpy as np
import pytest

from sparkle.cli import main
from sparkle.io import (
    bundled_config_path,
    load_config,
    read_signal_csv,
    scenario_digest,
    scenario_from_dict,
    scenario_to_dict,
    write_signal_csv,
)

TINY_CONFIG = {
    "center_frequency": 3.0e9,
    "sweep_time": 2.0e-4,
    "bandwidth": 4.0e6,
    "lpf_cutoff": 5.0e5,
    "sampling_rate": 1.2e6,
    "sweep_direction": "up",
    "snr_db": 15.0,
    "seed": 7,
    "targets": [{"range": 2000.0, "amplitude_magnitude": 1.0, "amplitude_phase": 0.0}],
    "interferers": [
        {"slope_multiple": 3.0, "center_time": 1.0e-4,
         "amplitude_magnitude": 4.0, "amplitude_phase": 0.0}
    ],
    "solver": {"tau": 0.08, "mu0": 0.05, "k_mu": 1.15, "max_iters": 120, "delta": 1e-5},
    "rpca": {"mu": 0.3, "max_iters": 60, "delta": 1e-6},
}


@pytest.fixture
def tiny_config(tmp_path):
    path = tmp_path / "tiny.json"
    path.write_text(json.dumps(TINY_CONFIG))
    return path


class TestSignalCsv:
    def test_roundtrip_is_exact(self, tmp_path):
        rng = np.random.default_rng(0)
        samples = rng.standard_normal(50) + 1j * rng.standard_normal(50)
        samples[0] = 0.1 + 1e-300j
        samples[1] = -1 / 3
        path = tmp_path / "sig.csv"
        write_signal_csv(path, samples)
        np.testing.assert_array_equal(read_signal_csv(path), samples)

    def test_header_is_optional(self, tmp_path):
        path = tmp_path / "bare.csv"
        path.write_text("1.5,-2.0\n0,3\n")
        np.testing.assert_array_equal(
            read_signal_csv(path), [1.5 - 2.0j, 3j]
        )

    def test_empty_file_rejected(self, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text("re,im\n")
        with pytest.raises(ValueError, match="empty signal"):
            read_signal_csv(path)

    def test_malformed_line_rejected(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("1.0,2.0\n3.0\n")
        with pytest.raises(ValueError, match="line 2"):
            read_signal_csv(path)


class TestConfigs:
    @pytest.mark.parametrize("name", ["point_targets", "point_targets_scaled"])
    def test_bundled_configs_load(self, name):
        cfg = load_config(name)
        assert cfg.scenario.sweep_time == pytest.approx(400e-6)
        assert len(cfg.scenario.targets) == 3
        assert len(cfg.scenario.interferers) == 4
        assert cfg.solver["tau"] > 0
        assert bundled_config_path(name).exists()

    def test_bundled_sample_counts(self):
        assert load_config("point_targets").scenario.n_samples == 4800
        assert load_config("point_targets_scaled").scenario.n_samples == 1200

    def test_scenario_dict_roundtrip(self):
        scn = load_config("point_targets").scenario
        again = scenario_from_dict(scenario_to_dict(scn))
        assert again == scn
        assert scenario_digest(again) == scenario_digest(scn)

    def test_invalid_scenario_rejected(self, tmp_path):
        bad = dict(TINY_CONFIG)
        bad["targets"] = [{"range": 25_000.0}]
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(bad))
        with pytest.raises(ValueError, match="cutoff"):
            load_config(path)

    def test_missing_config_raises(self):
        with pytest.raises(FileNotFoundError):
            load_config("no_such_config")


class TestCliSimulate:
    def test_writes_all_components(self, tiny_config, tmp_path):
        out = tmp_path / "sim"
        assert main(["simulate", "--config", str(tiny_config), "--output", str(out)]) == 0
        n = 240
        for fname in ("reference.csv", "interference.csv", "noise.csv", "measurement.csv"):
            assert read_signal_csv(out / fname).size == n
        resolved = json.loads((out / "scenario_resolved.json").read_text())
        assert resolved["n_samples"] == n
        assert resolved["slope_hz_per_s"] == pytest.approx(2e10)
        assert 0 < resolved["contaminated_fraction"] < 1
        assert resolved["beat_frequencies_hz"][0] == pytest.approx(266_666.67, rel=1e-6)
        # components must satisfy y = x + i + n sample by sample
        x = read_signal_csv(out / "reference.csv")
        i = read_signal_csv(out / "interference.csv")
        nn = read_signal_csv(out / "noise.csv")
        y = read_signal_csv(out / "measurement.csv")
        np.testing.assert_array_equal(y, x + i + nn)

    def test_empty_targets_give_zero_reference(self, tmp_path):
        cfg = dict(TINY_CONFIG, targets=[])
        path = tmp_path / "notargets.json"
        path.write_text(json.dumps(cfg))
        out = tmp_path / "sim"
        assert main(["simulate", "--config", str(path), "--output", str(out)]) == 0
        assert np.all(read_signal_csv(out / "reference.csv") == 0)

    def test_repeated_simulation_is_byte_identical(self, tiny_config, tmp_path):
        outs = []
        for tag in ("a", "b"):
            out = tmp_path / f"sim_{tag}"
            main(["simulate", "--config", str(tiny_config), "--output", str(out)])
            outs.append(b"".join(
                (out / f).read_bytes()
                for f in ("reference.csv", "interference.csv", "noise.csv",
                          "measurement.csv", "scenario_resolved.json")
            ))
        assert outs[0] == outs[1]

    def test_invalid_config_fails_cleanly(self, tmp_path, capsys):
        bad = dict(TINY_CONFIG)
        bad["targets"] = [{"range": 25_000.0}]
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(bad))
        assert main(["simulate", "--config", str(path), "--output", str(tmp_path / "o")]) == 2
        assert "cutoff" in capsys.readouterr().err


class TestCliMitigateEvaluate:
    @pytest.fixture
    def simulated(self, tiny_config, tmp_path):
        out = tmp_path / "sim"
        main(["simulate", "--config", str(tiny_config), "--output", str(out)])
        return out

    def test_mitigate_sparkle_outputs(self, tiny_config, simulated, tmp_path):
        out = tmp_path / "mit"
        rc = main([
            "mitigate", "--input", str(simulated / "measurement.csv"),
            "--method", "sparkle", "--config", str(tiny_config),
            "--reference", str(simulated / "reference.csv"),
            "--output", str(out),
        ])
        assert rc == 0
        recovered = read_signal_csv(out / "recovered.csv")
        interference = read_signal_csv(out / "interference_est.csv")
        assert recovered.size == interference.size == 240
        report = json.loads((out / "report.json").read_text())
        assert report["method"] == "sparkle"
        assert report["iterations"] >= 1
        assert "sinr_db" in report and "rho_abs" in report and "sinr0_db" in report
        trace_lines = (out / "trace.csv").read_text().strip().splitlines()
        assert trace_lines[0] == "iteration,rel_error,beta,mu"
        assert len(trace_lines) == report["iterations"] + 1

    def test_report_sinr_matches_evaluate_recomputation(self, tiny_config, simulated, tmp_path):
        out = tmp_path / "mit"
        main([
            "mitigate", "--input", str(simulated / "measurement.csv"),
            "--method", "sparkle", "--config", str(tiny_config),
            "--reference", str(simulated / "reference.csv"),
            "--output", str(out),
        ])
        report = json.loads((out / "report.json").read_text())
        eval_path = tmp_path / "eval.json"
        main([
            "evaluate", "--reference", str(simulated / "reference.csv"),
            "--input", str(out / "recovered.csv"), "--output", str(eval_path),
        ])
        evaluated = json.loads(eval_path.read_text())
        assert abs(evaluated["sinr_db"] - report["sinr_db"]) < 1e-9
        assert abs(evaluated["rho_abs"] - report["rho_abs"]) < 1e-12

    def test_mitigate_rpca_runs(self, tiny_config, simulated, tmp_path):
        out = tmp_path / "mit_rpca"
        rc = main([
            "mitigate", "--input", str(simulated / "measurement.csv"),
            "--method", "rpca", "--config", str(tiny_config),
            "--output", str(out),
        ])
        assert rc == 0
        report = json.loads((out / "report.json").read_text())
        assert report["method"] == "rpca"
        trace_lines = (out / "trace.csv").read_text().strip().splitlines()
        assert trace_lines[1].split(",")[2] == "nan"  # no beta schedule in rpca

    def test_mitigate_auto_params(self, simulated, tmp_path):
        out = tmp_path / "mit_auto"
        rc = main([
            "mitigate", "--input", str(simulated / "measurement.csv"),
            "--auto-params", "--snr-db", "15", "--output", str(out),
        ])
        assert rc == 0
        assert read_signal_csv(out / "recovered.csv").size == 240

    def test_evaluate_exact_match_sentinel(self, simulated, tmp_path):
        eval_path = tmp_path / "eval.json"
        rc = main([
            "evaluate", "--reference", str(simulated / "reference.csv"),
            "--input", str(simulated / "reference.csv"), "--output", str(eval_path),
        ])
        assert rc == 0
        payload = json.loads(eval_path.read_text())
        assert payload["sinr_db"] == "+inf"
        assert payload["rho_abs"] == pytest.approx(1.0)

    def test_empty_input_fails_cleanly(self, tmp_path, capsys):
        empty = tmp_path / "empty.csv"
        empty.write_text("re,im\n")
        rc = main(["mitigate", "--input", str(empty), "--output", str(tmp_path / "o")])
        assert rc == 2
        assert "empty signal" in capsys.readouterr().err

    def test_unknown_method_rejected_by_parser(self, tmp_path):
        with pytest.raises(SystemExit):
            main(["mitigate", "--input", "x.csv", "--method", "anc",
                  "--output", str(tmp_path)])


class TestCliBatch:
    def test_montecarlo_table_well_formed(self, tiny_config, tmp_path):
        out = tmp_path / "mc.csv"
        rc = main([
            "montecarlo", "--config", str(tiny_config), "--runs", "1",
            "--sinr0", "-10", "--methods", "sparkle", "--output", str(out),
        ])
        assert rc == 0
        lines = out.read_text().strip().splitlines()
        assert lines[0].startswith("sinr0_db,method,runs,mean_sinr_db")
        assert len(lines) == 2
        assert lines[1].split(",")[1] == "sparkle"

    def test_duration_sweep_empty_list(self, tiny_config, tmp_path):
        out = tmp_path / "sweep.csv"
        rc = main([
            "duration-sweep", "--config", str(tiny_config), "--durations",
            "--output", str(out),
        ])
        assert rc == 0
        lines = out.read_text().strip().splitlines()
        assert len(lines) == 1  # header only

    def test_range_profile_peak(self, tiny_config, tmp_path):
        sim = tmp_path / "sim"
        main(["simulate", "--config", str(tiny_config), "--output", str(sim)])
        out = tmp_path / "profile.csv"
        rc = main([
            "range-profile", "--input", str(sim / "reference.csv"),
            "--config", str(tiny_config), "--output", str(out),
        ])
        assert rc == 0
        rows = [line.split(",") for line in out.read_text().strip().splitlines()[1:]]
        ranges = np.array([float(r[0]) for r in rows])
        mags = np.array([float(r[1]) for r in rows])
        assert abs(ranges[int(np.argmax(mags))] - 2000.0) <= ranges[1] - ranges[0]
