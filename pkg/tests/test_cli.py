import numpy as np
import pytest

from greedycs.cli import main
from greedycs.io import read_vector_csv, write_matrix_csv, write_vector_csv
from greedycs.model import gen_gaussian_matrix, gen_sparse_gaussian_signal, measure


@pytest.fixture
def problem(tmp_path):
    phi = gen_gaussian_matrix(30, 64, seed=5)
    x, supp = gen_sparse_gaussian_signal(64, 3, seed=6)
    y = measure(phi, x)
    mat_path = tmp_path / "phi.csv"
    y_path = tmp_path / "y.csv"
    write_matrix_csv(mat_path, phi.matrix)
    write_vector_csv(y_path, y)
    return mat_path, y_path, x


class TestRecover:
    def test_recovers_and_writes_estimate(self, problem, tmp_path, capsys):
        mat_path, y_path, x = problem
        out = tmp_path / "estimate.csv"
        code = main([
            "recover", "--matrix", str(mat_path), "--measurements",
            str(y_path), "--sparsity", "3", "--out", str(out),
        ])
        assert code == 0
        np.testing.assert_allclose(read_vector_csv(out), x, atol=1e-8)
        assert "residual norm" in capsys.readouterr().out

    def test_komp_algorithm_flag(self, problem, tmp_path):
        mat_path, y_path, x = problem
        out = tmp_path / "estimate.csv"
        code = main([
            "recover", "--matrix", str(mat_path), "--measurements",
            str(y_path), "--sparsity", "3", "--algorithm", "komp(2)",
            "--out", str(out),
        ])
        assert code == 0
        np.testing.assert_allclose(read_vector_csv(out), x, atol=1e-8)

    def test_error_line_and_nonzero_exit(self, problem, tmp_path, capsys):
        mat_path, y_path, _ = problem
        code = main([
            "recover", "--matrix", str(mat_path), "--measurements",
            str(y_path), "--sparsity", "3", "--algorithm", "komp(99)",
            "--out", str(tmp_path / "e.csv"),
        ])
        assert code != 0
        assert capsys.readouterr().err.startswith("error: UnstableWidth:")


class TestRip:
    def test_exact_report_to_stdout(self, tmp_path, capsys):
        q, _ = np.linalg.qr(np.random.default_rng(1).standard_normal((8, 5)))
        mat_path = tmp_path / "q.csv"
        write_matrix_csv(mat_path, q)
        code = main(["rip", "--matrix", str(mat_path), "--order", "2"])
        assert code == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "order,delta,method,subsets"
        order, delta, method, subsets = lines[1].split(",")
        assert order == "2" and method == "exact_enumeration"
        assert float(delta) <= 1e-9
        assert subsets == "10"

    def test_sampled_mode(self, tmp_path, capsys):
        phi = gen_gaussian_matrix(10, 20, seed=2)
        mat_path = tmp_path / "phi.csv"
        write_matrix_csv(mat_path, phi.matrix)
        code = main([
            "rip", "--matrix", str(mat_path), "--order", "3",
            "--samples", "50", "--seed", "4",
        ])
        assert code == 0
        assert "monte_carlo_lower_bound" in capsys.readouterr().out


class TestBounds:
    def test_table_and_crossover(self, tmp_path):
        out = tmp_path / "table.csv"
        code = main([
            "bounds", "--model", "power_law", "--delta2", "0.00015",
            "--beta", "0.3", "--T", "100", "--kmax", "12",
            "--out", str(out),
        ])
        assert code == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "K,constant,comparison_value,defined,crossover"
        cross = {
            int(l.split(",")[0]): l.split(",")[4] == "true" for l in lines[1:]
        }
        assert cross[8] is False and cross[9] is True

    def test_svg_option(self, tmp_path):
        svg = tmp_path / "fig.svg"
        code = main([
            "bounds", "--delta2", "0.00015", "--beta", "0.3", "--T", "100",
            "--kmax", "12", "--out", str(tmp_path / "t.csv"),
            "--svg", str(svg),
        ])
        assert code == 0
        assert svg.read_text().startswith("<?xml")


class TestBenchAndPlot:
    def test_bench_run_then_plot(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.txt"
        cfg.write_text(
            "experiment = recovery_sweep\n"
            "t_values = 4\n"
            "trials = 2\n"
            "algorithms = omp\n"
            "master_seed = 9\n"
        )
        out_dir = tmp_path / "run"
        code = main([
            "bench", "recovery", "--config", str(cfg), "--out", str(out_dir),
        ])
        assert code == 0
        assert (out_dir / "records.csv").exists()
        assert (out_dir / "config_resolved.txt").exists()
        capsys.readouterr()
        svg = tmp_path / "p.svg"
        code = main([
            "plot", "--csv", str(out_dir / "summary.csv"),
            "--metric", "success_probability", "--out", str(svg),
        ])
        assert code == 0
        assert svg.exists()

    def test_bench_config_experiment_mismatch(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.txt"
        cfg.write_text("experiment = decay_sweep\n")
        code = main([
            "bench", "recovery", "--config", str(cfg),
            "--out", str(tmp_path / "r"),
        ])
        assert code != 0
        assert "error:" in capsys.readouterr().err

    def test_plot_runtime_metric_from_timing_summary(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.txt"
        cfg.write_text(
            "experiment = recovery_sweep\nt_values = 4\ntrials = 2\n"
            "algorithms = omp\n"
        )
        out_dir = tmp_path / "run"
        assert main([
            "bench", "recovery", "--config", str(cfg), "--out", str(out_dir),
        ]) == 0
        capsys.readouterr()
        svg = tmp_path / "rt.svg"
        assert main([
            "plot", "--csv", str(out_dir / "timing_summary.csv"),
            "--metric", "mean_runtime", "--out", str(svg),
        ]) == 0
        assert svg.exists()

    def test_plot_missing_metric_column(self, tmp_path, capsys):
        csv = tmp_path / "s.csv"
        csv.write_text("algorithm,t\nomp,4\n")
        assert main([
            "plot", "--csv", str(csv), "--metric", "success_probability",
            "--out", str(tmp_path / "x.svg"),
        ]) != 0
        assert "error:" in capsys.readouterr().err
