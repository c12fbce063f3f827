import math

import numpy as np
import pytest

from gadentropy import cli
from gadentropy.sweep import (
    CSV_COLUMNS,
    ConfigError,
    SweepConfig,
    emit_csv,
    emit_summary,
    fig2_config,
    fig3_config,
    load_config,
    run_property_suite,
    run_sweep,
)

SMALL = dict(shots=500, n_bootstrap=5, seed=99, r_grid=(0.0, 0.5, 1.0))


class TestConfig:
    def test_fig2_defaults(self):
        cfg = fig2_config()
        assert cfg.p_values == (0.9, 0.75, 0.6)
        assert cfg.alpha_or_coherence == (1.0,)
        assert len(cfg.r_grid) == 21

    def test_fig3_defaults(self):
        cfg = fig3_config()
        assert cfg.p_values == (0.9,)
        assert cfg.alpha_or_coherence == (0.8, 0.6, 0.4)

    def test_bad_scenario_rejected(self):
        with pytest.raises(ConfigError):
            SweepConfig(scenario="fig9")

    def test_bad_r_grid_rejected(self):
        with pytest.raises(ConfigError):
            SweepConfig(r_grid=(0.0, 1.5))

    def test_degrees_units(self):
        cfg = SweepConfig(alpha_or_coherence=(9.22,), units="degrees")
        assert cfg.alphas()[0] == pytest.approx(math.radians(9.22), abs=1e-15)

    def test_load_config_file(self, tmp_path):
        path = tmp_path / "sweep.cfg"
        path.write_text(
            "# custom run\n"
            "scenario = custom\n"
            "p_values = 0.9, 0.75\n"
            "alpha_deg = 0, 9.22\n"
            "r_points = 5\n"
            "shots = 2000\n"
            "n_bootstrap = 10\n"
            "seed = 17\n"
            "out = run.csv\n"
        )
        cfg = load_config(str(path))
        assert cfg.p_values == (0.9, 0.75)
        assert cfg.units == "degrees"
        assert len(cfg.r_grid) == 5
        assert cfg.shots == 2000
        assert cfg.seed == 17
        assert cfg.output_path == "run.csv"

    def test_load_config_rejects_unknown_key(self, tmp_path):
        path = tmp_path / "bad.cfg"
        path.write_text("wibble = 3\n")
        with pytest.raises(ConfigError):
            load_config(str(path))

    def test_load_config_rejects_conflicting_units(self, tmp_path):
        path = tmp_path / "bad.cfg"
        path.write_text("alpha_deg = 0\ncoherence = 1\n")
        with pytest.raises(ConfigError):
            load_config(str(path))


class TestRunSweep:
    def test_row_count_and_order(self):
        rows = run_sweep(fig2_config(**SMALL))
        assert len(rows) == 9  # 3 p-values x 3 r-values
        keys = [(r.p, r.alpha_deg, r.r) for r in rows]
        assert keys == sorted(keys, key=lambda k: (-k[0], k[1], k[2]))

    def test_r_zero_rows_are_zero(self):
        rows = run_sweep(fig2_config(**SMALL))
        for row in rows:
            if row.r == 0.0:
                assert row.sigma_total == pytest.approx(0.0, abs=1e-10)
                assert row.sigma_pop == pytest.approx(0.0, abs=1e-10)
                assert row.sigma_coh == pytest.approx(0.0, abs=1e-10)

    def test_fig2_anchor_row(self):
        rows = run_sweep(fig2_config(**SMALL))
        anchor = [r for r in rows if r.p == 0.9 and r.r == 1.0][0]
        assert anchor.sigma_total == pytest.approx(1.203973, abs=1e-6)
        assert anchor.sigma_pop == pytest.approx(0.510826, abs=1e-6)
        assert anchor.sigma_coh == pytest.approx(0.693147, abs=1e-6)

    def test_additivity_of_analytic_columns(self):
        rows = run_sweep(fig3_config(**SMALL))
        for row in rows:
            assert row.sigma_total == pytest.approx(
                row.sigma_pop + row.sigma_coh, abs=1e-10
            )

    def test_fig3_population_identical_across_coherences(self):
        rows = run_sweep(fig3_config(**SMALL))
        by_r = {}
        for row in rows:
            by_r.setdefault(row.r, []).append(row.sigma_pop)
        for values in by_r.values():
            assert len(values) == 3
            assert max(values) - min(values) < 1e-12

    def test_fig3_smaller_coherence_smaller_sigma_coh(self):
        rows = run_sweep(fig3_config(**SMALL))
        at_r1 = sorted(
            (r for r in rows if r.r == 1.0), key=lambda r: r.coherence_initial
        )
        values = [r.sigma_coh for r in at_r1]
        assert values == sorted(values)

    def test_p1_rows_flagged_indeterminate(self):
        cfg = SweepConfig(
            scenario="custom", p_values=(1.0,), alpha_or_coherence=(1.0,),
            units="coherence", **SMALL,
        )
        rows = run_sweep(cfg)
        assert all(row.indeterminate == 1 for row in rows)
        assert all(math.isnan(row.sigma_total) for row in rows)

    def test_difference_protocol_matches_direct(self):
        # sigma_coh column is the direct value; the difference route
        # (total - pop) must agree on the analytic columns.
        rows = run_sweep(fig2_config(**SMALL))
        for row in rows:
            assert row.sigma_total - row.sigma_pop == pytest.approx(
                row.sigma_coh, abs=1e-10
            )

    def test_tomography_close_to_analytic_at_high_shots(self):
        cfg = fig2_config(shots=100_000, n_bootstrap=10, seed=5, r_grid=(0.5,))
        rows = run_sweep(cfg)
        for row in rows:
            assert abs(row.sigma_total_tomo - row.sigma_total) < 0.02
            assert abs(row.sigma_pop_tomo - row.sigma_pop) < 0.02


class TestEmit:
    def test_csv_layout(self, tmp_path):
        rows = run_sweep(fig2_config(**SMALL))
        out = tmp_path / "fig2.csv"
        emit_csv(rows, str(out))
        lines = out.read_text().splitlines()
        assert lines[0] == ",".join(CSV_COLUMNS)
        assert len(lines) == 1 + len(rows)

    def test_empty_rows_rejected_and_no_file(self, tmp_path):
        out = tmp_path / "never.csv"
        with pytest.raises(IOError):
            emit_csv([], str(out))
        assert not out.exists()

    def test_metadata_sidecar(self, tmp_path):
        cfg = fig2_config(**SMALL)
        rows = run_sweep(cfg)
        out = tmp_path / "fig2.csv"
        emit_csv(rows, str(out), cfg)
        meta = (tmp_path / "fig2.csv.meta.json").read_text()
        assert "rng_algorithm" in meta
        assert "bootstrap" in meta

    def test_byte_identical_reruns(self, tmp_path):
        cfg = fig2_config(**SMALL)
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        emit_csv(run_sweep(cfg), str(a))
        emit_csv(run_sweep(cfg), str(b))
        assert a.read_bytes() == b.read_bytes()

    def test_summary_reports(self):
        rows = run_sweep(fig2_config(**SMALL))
        text = emit_summary(rows)
        assert "additivity" in text
        assert "tomography" in text


class TestPropertySuite:
    def test_fresh_build_all_pass(self):
        report = run_property_suite(seed=2024)
        assert report.passed, report.render()

    def test_report_has_one_line_per_invariant(self):
        report = run_property_suite(seed=2024)
        assert len(report.results) >= 7
        rendered = report.render()
        assert rendered.count("[PASS]") == len(report.results)


class TestCli:
    def test_fig2_writes_csv(self, tmp_path, capsys):
        out = tmp_path / "f2.csv"
        code = cli.main([
            "fig2", "--shots", "200", "--bootstrap", "3", "--seed", "1",
            "--r-points", "3", "--out", str(out),
        ])
        assert code == 0
        assert out.exists()
        assert "wrote 9 rows" in capsys.readouterr().out

    def test_fig3_writes_csv(self, tmp_path):
        out = tmp_path / "f3.csv"
        code = cli.main([
            "fig3", "--shots", "200", "--bootstrap", "3", "--seed", "1",
            "--r-points", "3", "--out", str(out),
        ])
        assert code == 0
        lines = out.read_text().splitlines()
        assert len(lines) == 1 + 9  # 1 p x 3 coherences x 3 r

    def test_sweep_with_config(self, tmp_path):
        cfg = tmp_path / "run.cfg"
        out = tmp_path / "run.csv"
        cfg.write_text(
            "scenario = custom\np_values = 0.8\ncoherence = 1\n"
            f"r_points = 3\nshots = 100\nn_bootstrap = 3\nout = {out}\n"
        )
        assert cli.main(["sweep", "--config", str(cfg)]) == 0
        assert out.exists()

    def test_missing_config_is_io_error(self, tmp_path):
        code = cli.main(["sweep", "--config", str(tmp_path / "absent.cfg")])
        assert code == cli.EXIT_IO

    def test_bad_config_is_usage_error(self, tmp_path):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("scenario = nonsense\n")
        assert cli.main(["sweep", "--config", str(cfg)]) == cli.EXIT_USAGE

    def test_unwritable_output_is_io_error(self, tmp_path):
        code = cli.main([
            "fig2", "--shots", "100", "--bootstrap", "3", "--r-points", "2",
            "--out", str(tmp_path / "no/such/dir/out.csv"),
        ])
        assert code == cli.EXIT_IO

    def test_check_passes(self, capsys):
        assert cli.main(["check"]) == 0
        assert "ALL PASS" in capsys.readouterr().out
