import json
import math
import subprocess
import sys

import pytest

from renyi_clt.harness import (
    ConfigError,
    ExperimentConfig,
    cmd_coeffs,
    cmd_locallimit,
    cmd_monotonicity,
    cmd_verify,
    load_config,
    main,
    richardson,
)

FAST_GRID = {"grid_points": 2**14, "grid_extent": 12.0}


def write_config(tmp_path, name="cfg.json", **overrides):
    data = {"distribution": "uniform", "r_values": [2], "n_values": [8, 16]}
    data.update(FAST_GRID)
    data.update(overrides)
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return path


def read_rows(path):
    lines = path.read_text().splitlines()
    header = lines[0].split(",")
    return header, [dict(zip(header, ln.split(","))) for ln in lines[1:]]


# -- config validation --------------------------------------------------------


def test_unknown_keys_rejected(tmp_path):
    path = write_config(tmp_path, extra_knob=1)
    with pytest.raises(ConfigError, match="unknown config keys"):
        load_config(str(path))


def test_bad_r_values():
    with pytest.raises(ConfigError):
        ExperimentConfig({"distribution": "uniform", "r_values": [0.5]})
    with pytest.raises(ConfigError):
        ExperimentConfig({"distribution": "uniform", "r_values": ["infinite"]})
    with pytest.raises(ConfigError):
        ExperimentConfig({"distribution": "uniform", "r_values": []})


def test_bad_n_values():
    with pytest.raises(ConfigError, match="ascending"):
        ExperimentConfig({"distribution": "uniform", "n_values": [8, 8]})
    with pytest.raises(ConfigError):
        ExperimentConfig({"distribution": "uniform", "n_values": [0]})


def test_bad_moment_order():
    with pytest.raises(ConfigError):
        ExperimentConfig({"distribution": "uniform", "moment_order": 9})


def test_bad_distribution_params():
    cfg = ExperimentConfig({"distribution": "gamma"})
    with pytest.raises(ConfigError):
        cfg.build_spec()


def test_exit_code_config_error(tmp_path, capsys):
    path = write_config(tmp_path, extra_knob=1)
    assert main(["coeffs", "--config", str(path)]) == 2
    assert "config error" in capsys.readouterr().err


def test_exit_code_missing_config(capsys):
    assert main(["coeffs", "--config", "/nonexistent.json"]) == 2


def test_exit_code_numerical_failure(tmp_path, capsys):
    # n = 1 is below n_min for the uniform law
    path = write_config(tmp_path, n_values=[1, 2])
    assert main(["verify", "--config", str(path), "--out", str(tmp_path / "o.csv")]) == 3
    assert "numerical failure" in capsys.readouterr().err


# -- coeffs -------------------------------------------------------------------


def test_coeffs_uniform(tmp_path):
    cfg = ExperimentConfig(
        {"distribution": "uniform", "r_values": [2, "inf"], "moment_order": 8}
    )
    header, rows = cmd_coeffs(cfg)
    assert header[:3] == ["r", "b", "B1"]
    r2 = rows[0]
    assert float(r2[1]) == pytest.approx(3 / 40)
    assert r2[-1] == "eventually_decreasing"
    assert r2[-2] == "none"  # r0 undefined for gamma_3 = 0
    inf_row = rows[1]
    assert inf_row[0] == "inf"
    assert float(inf_row[1]) == pytest.approx(0.15)
    assert float(inf_row[5]) == pytest.approx(-0.3)  # A_tilde


def test_coeffs_gamma_alpha1(tmp_path):
    # gamma_3 = 2, gamma_4 = 6 > (2/3) gamma_3^2: B1 > 0 for every r, no r0
    cfg = ExperimentConfig(
        {"distribution": "gamma", "alpha": 1, "r_values": [2, 5], "moment_order": 6}
    )
    _, rows = cmd_coeffs(cfg)
    for row in rows:
        assert row[-2] == "none"
        assert float(row[2]) > 0  # B1
        assert row[-1] == "eventually_increasing"


def test_coeffs_gaussian_all_zero():
    cfg = ExperimentConfig(
        {"distribution": "gaussian", "r_values": [2, 3, "inf"], "moment_order": 8}
    )
    _, rows = cmd_coeffs(cfg)
    for row in rows:
        assert float(row[1]) == 0.0
        assert float(row[2]) == 0.0
        assert row[-1] == "indeterminate"


def test_coeffs_needs_order4():
    cfg = ExperimentConfig({"distribution": "uniform", "moment_order": 3})
    with pytest.raises(ConfigError):
        cmd_coeffs(cfg)


# -- verify -------------------------------------------------------------------


def test_verify_gaussian_residuals(tmp_path):
    cfg = ExperimentConfig(
        {
            "distribution": "gaussian",
            "r_values": [2, 1, "inf"],
            "n_values": [2, 4],
            "moment_order": 6,
            **FAST_GRID,
        }
    )
    header, rows = cmd_verify(cfg)
    assert header[0] == "n"
    for row in rows:
        assert abs(row[4]) < 1e-7  # residual


def test_verify_requires_order_for_special_r():
    with pytest.raises(ConfigError, match="inf"):
        cmd_verify(
            ExperimentConfig(
                {
                    "distribution": "uniform",
                    "r_values": ["inf"],
                    "n_values": [8],
                    "moment_order": 4,
                }
            )
        )
    with pytest.raises(ConfigError, match="r = 1"):
        cmd_verify(
            ExperimentConfig(
                {
                    "distribution": "uniform",
                    "r_values": [1],
                    "n_values": [8],
                    "moment_order": 3,
                }
            )
        )


def test_verify_scaled_residual_coherence(grid_for):
    # with s = 4 the single-term prediction carries the o(n^-1) claim:
    # |residual| * n is non-increasing over the top octave
    cfg = ExperimentConfig(
        {
            "distribution": "uniform",
            "r_values": [2],
            "n_values": [32, 64, 128, 256],
            "moment_order": 4,
        }
    )
    _, rows = cmd_verify(cfg)
    scaled = [abs(row[5]) for row in rows]
    assert scaled[-1] <= scaled[-2] <= scaled[-3]


def test_second_order_coefficient_against_measurements(grid_for):
    # b_2 has no closed form here; the series pipeline produces it from
    # a_1, a_2, and the measured entropies confirm it at desk scale:
    # n^2 (h_2(Z_n) - h_2(Z) - b_1/n) -> b_2
    import renyi_clt as rc

    cums = rc.standard_cumulants("uniform", order=8)
    coeffs = rc.entropy_expansion(8, 2.0, cums)
    b1, b2 = coeffs.b[0], coeffs.b[1]
    h_gauss = rc.gaussian_renyi_entropy(2)
    est = {
        n: n * n * (rc.renyi_entropy(grid_for("uniform", n), 2) - h_gauss - b1 / n)
        for n in (128, 256)
    }
    assert richardson(est[128], est[256]) == pytest.approx(b2, rel=1e-2)


def test_irrational_shape_float_pipeline():
    # sqrt(alpha) irrational: cumulants degrade to floats and every layer
    # downstream (corrections, coefficients, verdicts) still works
    import renyi_clt as rc

    cums = rc.standard_cumulants("gamma", order=6, alpha=2.5)
    assert isinstance(cums.gamma(3), float)
    assert cums.gamma(3) == pytest.approx(2 / math.sqrt(2.5), rel=1e-14)
    assert cums.gamma(4) == pytest.approx(6 / 2.5, rel=1e-14)
    assert float(rc.b_coefficient(2, cums)) == pytest.approx(-0.15, rel=1e-13)
    assert rc.monotonicity_prediction(2, cums) == rc.INCREASING
    mass = rc.gauss_power_mass(2.0)
    assert rc.a_coefficient(1, 2.0, cums) * mass == pytest.approx(
        rc.a1_closed_form(2.0, cums), rel=1e-10
    )
    cfg = ExperimentConfig(
        {
            "distribution": "gamma",
            "alpha": 2.5,
            "r_values": [2],
            "n_values": [8, 16],
            "moment_order": 6,
            **FAST_GRID,
        }
    )
    _, rows = cmd_verify(cfg)
    for row in rows:
        assert abs(row[4]) < 1e-3  # residual beyond second order only


def test_laplace_coeffs_and_verify():
    # gamma_4 = 3 for the two-sided exponential: b(2) = -3/16, N_2 increasing
    cfg = ExperimentConfig(
        {
            "distribution": "two_sided_exponential",
            "r_values": [2],
            "n_values": [8, 16],
            "moment_order": 6,
            **FAST_GRID,
        }
    )
    _, rows = cmd_coeffs(cfg)
    assert float(rows[0][1]) == pytest.approx(-3 / 16)
    assert rows[0][-1] == "eventually_increasing"
    _, vrows = cmd_verify(cfg)
    for row in vrows:
        assert abs(row[4]) < 1e-3


def test_asymmetric_mixture_verify():
    cfg = ExperimentConfig(
        {
            "distribution": "gaussian_mixture",
            "weights": [0.25, 0.75],
            "means": [1.5, -0.5],
            "sigmas": [0.5, 0.5],
            "r_values": [2, "inf"],
            "n_values": [16, 32],
            "moment_order": 6,
            **FAST_GRID,
        }
    )
    _, rows = cmd_verify(cfg)
    for row in rows:
        assert abs(row[4]) < 1e-3
    # residual shrinks with n for each r
    assert abs(rows[2][4]) < abs(rows[0][4])
    assert abs(rows[3][4]) < abs(rows[1][4])


def test_locallimit_slope_via_command():
    cfg = ExperimentConfig(
        {
            "distribution": "uniform",
            "n_values": [16, 32, 64],
            "moment_order": 4,
            **FAST_GRID,
        }
    )
    _, rows = cmd_locallimit(cfg)
    assert rows[0][2] <= -0.9  # fitted slope, theory -1 (here ~ -2, symmetric)


def test_verify_uniform_rate(tmp_path):
    cfg = ExperimentConfig(
        {
            "distribution": "uniform",
            "r_values": [2],
            "n_values": [64, 128],
            "moment_order": 6,
        }
    )
    _, rows = cmd_verify(cfg)
    h_gauss = 0.5 * math.log(2 * math.pi) + math.log(2.0) / 2
    ests = [n * (row[2] - h_gauss) for n, row in zip((64, 128), rows)]
    assert richardson(*ests) == pytest.approx(3 / 40, rel=0.05)


# -- monotonicity -------------------------------------------------------------


def test_monotonicity_requires_consecutive():
    cfg = ExperimentConfig(
        {"distribution": "uniform", "r_values": [2], "n_values": [8, 10, 12]}
    )
    with pytest.raises(ConfigError, match="consecutive"):
        cmd_monotonicity(cfg)


def test_monotonicity_uniform_short_run():
    cfg = ExperimentConfig(
        {
            "distribution": "uniform",
            "r_values": [2],
            "n_values": list(range(8, 21)),
            "moment_order": 6,
            **FAST_GRID,
        }
    )
    header, rows = cmd_monotonicity(cfg)
    assert rows[0][header.index("predicted_verdict")] == "eventually_decreasing"
    assert rows[0][header.index("empirical_verdict")] == "eventually_decreasing"
    assert rows[0][header.index("match")] == "yes"
    signs = [r[header.index("sign")] for r in rows if r[header.index("sign")] is not None]
    assert all(s == -1 for s in signs)


def test_monotonicity_gamma_increasing():
    cfg = ExperimentConfig(
        {
            "distribution": "gamma",
            "alpha": 4,
            "r_values": [2],
            "n_values": list(range(8, 16)),
            "moment_order": 6,
            **FAST_GRID,
        }
    )
    header, rows = cmd_monotonicity(cfg)
    assert rows[0][header.index("predicted_verdict")] == "eventually_increasing"
    assert rows[0][header.index("match")] == "yes"
    signs = [r[header.index("sign")] for r in rows if r[header.index("sign")] is not None]
    assert all(s == 1 for s in signs)


def test_monotonicity_gaussian_indeterminate():
    cfg = ExperimentConfig(
        {
            "distribution": "gaussian",
            "r_values": [2],
            "n_values": [4, 5, 6, 7],
            "moment_order": 6,
            **FAST_GRID,
        }
    )
    header, rows = cmd_monotonicity(cfg)
    assert rows[0][header.index("empirical_verdict")] == "indeterminate"
    assert rows[0][header.index("predicted_verdict")] == "indeterminate"


# -- locallimit ----------------------------------------------------------------


def test_locallimit_gaussian_tiny_errors():
    cfg = ExperimentConfig(
        {
            "distribution": "gaussian",
            "n_values": [2, 4, 8],
            "moment_order": 4,
            **FAST_GRID,
        }
    )
    _, rows = cmd_locallimit(cfg)
    for row in rows:
        assert row[1] < 1e-7


def test_locallimit_rejects_large_order():
    cfg = ExperimentConfig(
        {"distribution": "uniform", "n_values": [8], "moment_order": 7}
    )
    with pytest.raises(ConfigError, match="<= 6"):
        cmd_locallimit(cfg)


def test_locallimit_uniform_decreasing():
    cfg = ExperimentConfig(
        {
            "distribution": "uniform",
            "n_values": [16, 32, 64],
            "moment_order": 2,
            **FAST_GRID,
        }
    )
    _, rows = cmd_locallimit(cfg)
    errs = [row[1] for row in rows]
    assert errs[2] < errs[1] < errs[0]


# -- CLI end-to-end ------------------------------------------------------------


def test_cli_writes_csv_and_is_deterministic(tmp_path):
    path = write_config(
        tmp_path, r_values=[2, 1, "inf"], n_values=[4, 8], moment_order=6
    )
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["verify", "--config", str(path), "--out", str(out1)]) == 0
    assert main(["verify", "--config", str(path), "--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    header, rows = read_rows(out1)
    assert header == [
        "n", "r", "h_r_numeric", "h_r_predicted", "residual",
        "scaled_residual", "N_r_numeric", "N_r_predicted",
    ]
    assert [row["r"] for row in rows[:3]] == ["2", "1", "inf"]
    assert len(rows) == 6


def test_cli_stdout_when_no_out(tmp_path, capsys):
    path = write_config(tmp_path, r_values=[2], n_values=[])
    assert main(["coeffs", "--config", str(path)]) == 0
    out = capsys.readouterr().out
    assert out.startswith("r,b,B1")


def test_cli_dump_density(tmp_path):
    path = write_config(tmp_path, n_values=[4])
    dump = tmp_path / "dumps"
    assert (
        main(
            [
                "verify",
                "--config",
                str(path),
                "--out",
                str(tmp_path / "v.csv"),
                "--dump-density",
                str(dump),
            ]
        )
        == 0
    )
    files = sorted(dump.iterdir())
    assert [f.name for f in files] == ["density_uniform_n4.csv"]
    assert files[0].read_text().splitlines()[0] == "x,p_n"


def test_cli_help_mentions_config_keys():
    proc = subprocess.run(
        [sys.executable, "-m", "renyi_clt.harness", "verify", "--help"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    for key in ("distribution", "r_values", "n_values", "moment_order",
                "grid_points", "grid_extent"):
        assert key in proc.stdout


def test_config_out_key_used(tmp_path):
    out = tmp_path / "from_config.csv"
    path = write_config(tmp_path, n_values=[], out=str(out))
    assert main(["coeffs", "--config", str(path)]) == 0
    assert out.exists()


def test_grid_distribution_via_file(tmp_path):
    import numpy as np

    x = np.linspace(-12, 12, 8001)
    p = np.exp(-0.5 * x * x) / math.sqrt(2 * math.pi)
    lines = ["x,p_n"] + [f"{xi},{pi}" for xi, pi in zip(x, p)]
    density_file = tmp_path / "density.csv"
    density_file.write_text("\n".join(lines))
    cfg = ExperimentConfig(
        {
            "distribution": "grid",
            "density_file": str(density_file),
            "r_values": [2],
            "n_values": [2],
            "moment_order": 4,
            **FAST_GRID,
        }
    )
    _, rows = cmd_verify(cfg)
    assert abs(rows[0][4]) < 1e-5  # near-Gaussian tabulation, tiny residual
