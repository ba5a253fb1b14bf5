"""Command-line contract: exit codes, report schema, determinism, config."""

import json
import time

import pytest

from zaklab import cli
from zaklab import grids as G


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv, "--json")
    return code, json.loads(out)


class TestAdmissibleCommand:
    def test_classical_corner_exits_zero(self, capsys):
        code, out = run(capsys, "admissible", "--k", "0", "--l", "-1/2",
                        "--p", "2", "--b", "11/20", "--b1", "11/20")
        assert code == 0
        assert "admissible" in out

    def test_boundary_b_rejected(self, capsys):
        code, out = run(capsys, "admissible", "--k", "0", "--l", "-1/2",
                        "--p", "2", "--b", "1/2", "--b1", "1/2")
        assert code == 1
        assert "rejected" in out and "1/p" in out

    def test_boundary_optimal_point_not_admissible(self, capsys):
        code, out = run(capsys, "admissible", "--k", "-1/12", "--l", "-7/12",
                        "--p", "12/7", "--b", "3/4", "--b1", "3/4")
        assert code == 1
        assert "k-l < 2(1-b1)" in out and "2k > 1/p-b1" in out

    def test_decimal_literal_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as info:
            cli.main(["admissible", "--k", "0", "--l", "-0.5", "--p", "2",
                      "--b", "11/20", "--b1", "11/20"])
        assert info.value.code == 2

    def test_json_report_schema(self, capsys):
        code, doc = run_json(capsys, "admissible", "--k", "0", "--l", "-1/2",
                             "--p", "2", "--b", "11/20", "--b1", "11/20")
        assert code == 0
        assert set(doc) == {"command", "config", "payload", "timing_s", "version"}
        assert doc["payload"]["admissible"] is True
        assert doc["config"]["b"] == "11/20"


class TestOptimizeCommand:
    def test_global_optimum_values(self, capsys):
        code, doc = run_json(capsys, "optimize")
        assert code == 0
        pl = doc["payload"]
        assert (pl["p_star"], pl["l_star"], pl["k_inf"]) == ("12/7", "-7/12", "-1/12")
        assert pl["ceiling_b1"] == "3/4"
        assert (pl["sigma"], pl["lambda"]) == ("-1/6", "-2/3")
        assert pl["bounds_coincide"] is True

    def test_minimal_k_mode(self, capsys):
        code, doc = run_json(capsys, "optimize", "--l", "-1/2", "--fixed-p", "2")
        assert code == 0
        assert doc["payload"]["k_inf"] == "0"
        assert doc["payload"]["attained"] is True

    def test_payload_deterministic(self, capsys):
        _, doc1 = run_json(capsys, "optimize")
        _, doc2 = run_json(capsys, "optimize")
        assert json.dumps(doc1["payload"], sort_keys=True) == json.dumps(
            doc2["payload"], sort_keys=True
        )


class TestWindowAndScaling:
    def test_window_reports_ceiling(self, capsys):
        code, doc = run_json(capsys, "window", "--k", "0", "--l", "-1/2", "--p", "2")
        assert code == 0
        assert doc["payload"]["diagonal"]["ceiling_b1"] == "3/4"
        assert doc["payload"]["diagonal"]["nonempty"] is True

    def test_scaling_triple(self, capsys):
        code, doc = run_json(capsys, "scaling", "--k", "0", "--l", "-2/3",
                             "--p", "3/2")
        assert code == 0
        assert doc["payload"] == {"sigma": "-1/6", "lambda": "-5/6"}


class TestKernelScanCommand:
    def test_quick_tier_completes_fast(self, capsys):
        t0 = time.time()
        code, out = run(capsys, "kernel-scan", "--k", "0", "--l", "-1/2",
                        "--p", "2", "--tier", "quick")
        elapsed = time.time() - t0
        assert elapsed < 60.0
        # quick tier is a smoke tier: inconclusive exits 2 with guidance
        assert code in (0, 2)
        if code == 2:
            assert "raise the tier" in out

    def test_violate_flag_diverges(self, capsys):
        code, doc = run_json(capsys, "kernel-scan", "--k", "0", "--l", "-1/2",
                             "--p", "2", "--tier", "quick", "--family", "S",
                             "--sign", "minus", "--violate", "l")
        diag = doc["payload"]["diagnostics"]["S/minus"]
        assert diag["verdict"] == "diverging"
        assert code == 1

    def test_rejects_empty_window(self, capsys):
        code = cli.main(["kernel-scan", "--k", "0", "--l", "-2/3", "--p", "3/2",
                         "--tier", "quick"])
        assert code == 1


class TestTrilinearCommand:
    def test_no_violations_exit_zero(self, capsys):
        code, doc = run_json(capsys, "trilinear-test", "--tier", "quick",
                             "--grid", "32", "--trials", "10")
        assert code == 0
        assert doc["payload"]["violations"] == []
        assert doc["payload"]["worst_ratio"] <= 1.0 + 1e-6


class TestSimulateCommand:
    def test_plane_wave_preset_matches_closed_form(self, capsys, tmp_path):
        csv_path = tmp_path / "series.csv"
        code, doc = run_json(capsys, "simulate", "--preset", "plane-wave",
                             "--csv-out", str(csv_path))
        assert code == 0
        assert doc["payload"]["plane_wave_error"] < 1e-8
        assert doc["payload"]["mass_drift"] < 1e-8
        header = csv_path.read_text().splitlines()[0]
        assert header.startswith("t,")

    def test_snapshot_round_trips(self, capsys, tmp_path):
        snap = tmp_path / "final.grid"
        code, _ = run_json(capsys, "simulate", "--preset", "gaussian",
                           "--t-final", "0.1", "--n", "128",
                           "--snapshot-out", str(snap))
        assert code == 0
        gf = G.load_grid(snap)
        assert gf.dims == 1 and gf.shape == (128,)

    def test_trace_jsonl_per_sample(self, capsys, tmp_path):
        trace = tmp_path / "trace.jsonl"
        code, _ = run_json(capsys, "simulate", "--preset", "gaussian",
                           "--t-final", "0.1", "--n", "128",
                           "--trace-out", str(trace))
        assert code == 0
        rows = [json.loads(line) for line in trace.read_text().splitlines()]
        assert len(rows) >= 2
        assert {"t", "mass", "sup_u", "truncated"} <= set(rows[0])
        assert rows[0]["t"] == 0.0


class TestLipschitzCommand:
    def test_ratio_table_and_determinism(self, capsys):
        args = ["lipschitz", "--k", "0", "--l", "-1/2", "--p", "2",
                "--seeds", "2", "--n", "128", "--t-final", "0.1"]
        code1, doc1 = run_json(capsys, *args)
        code2, doc2 = run_json(capsys, *args)
        assert code1 == code2 == 0
        assert json.dumps(doc1["payload"], sort_keys=True) == json.dumps(
            doc2["payload"], sort_keys=True
        )
        assert set(doc1["payload"]["ratios"]) == {"1", "2"}


class TestLifespanCommand:
    def test_slope_report(self, capsys):
        code, doc = run_json(capsys, "lifespan", "--mu", "1,2", "--n", "256",
                             "--dt", "0.0002")
        assert code == 0
        assert doc["payload"]["reference_slope"] == -2.0
        assert doc["payload"]["slope"] is not None


class TestConfigFile:
    def test_key_value_defaults_and_flag_override(self, capsys, tmp_path):
        conf = tmp_path / "run.conf"
        conf.write_text("l = -1/2\nfixed_p = 2\n")
        code, doc = run_json(capsys, "--config", str(conf), "optimize")
        assert code == 0
        assert doc["payload"]["k_inf"] == "0"
        # explicit flag wins over the file
        code, doc = run_json(capsys, "--config", str(conf), "optimize",
                             "--l", "-7/12", "--fixed-p", "12/7")
        assert doc["payload"]["k_inf"] == "-1/12"

    def test_json_config(self, capsys, tmp_path):
        conf = tmp_path / "run.json"
        conf.write_text(json.dumps({"l": "-1/2", "fixed_p": "2"}))
        code, doc = run_json(capsys, "--config", str(conf), "optimize")
        assert code == 0
        assert doc["payload"]["k_inf"] == "0"

    def test_jsonl_output(self, capsys, tmp_path):
        out = tmp_path / "reports.jsonl"
        run(capsys, "optimize", "--jsonl-out", str(out))
        run(capsys, "optimize", "--jsonl-out", str(out))
        lines = out.read_text().splitlines()
        assert len(lines) == 2
        docs = [json.loads(line) for line in lines]
        assert docs[0]["payload"] == docs[1]["payload"]
