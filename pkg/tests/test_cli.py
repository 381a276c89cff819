"""Config parsing, subcommand artifacts, exit codes, and determinism."""

import json
import math

import pytest

from fractspec.cli import main, parse_config, ConfigError

KOCH_CFG = {
    "generatrix": [[0, 0], [1 / 3, 0], [0.5, math.sqrt(3) / 6], [2 / 3, 0], [1, 0]]
}
SQUARE_HUMP_CFG = {"contractors": [0.25, 0.25, 0.25, 0.25, 0.5]}
A = math.sqrt(2) - 1
P2_CFG = {"contractors": [A, A * A, A * A, A]}


def write_cfg(tmp_path, cfg, name="job.json"):
    path = tmp_path / name
    path.write_text(json.dumps(cfg), encoding="utf-8")
    return str(path)


# ---------------------------------------------------------------- parse_config

def test_parse_config_contractors_uniform_weights():
    config = parse_config('{"contractors":[0.25,0.25,0.25,0.25,0.5]}')
    assert config.system.n == 5
    assert config.system.uniform_weights
    assert config.generatrix is None


def test_parse_config_generatrix_koch():
    config = parse_config(
        '{"generatrix":[[0,0],[0.333333,0],[0.5,0.288675],[0.666667,0],[1,0]]}'
    )
    assert config.generatrix is not None
    for a in config.system.contractors:
        assert a == pytest.approx(1 / 3, abs=1e-5)


def test_parse_config_rejections():
    with pytest.raises(ConfigError):
        parse_config("not json")
    with pytest.raises(ConfigError):
        parse_config("[1, 2]")
    with pytest.raises(ValueError):
        parse_config('{"contractors":[0.5],"weights":[1.0]}')  # N < 2
    with pytest.raises(ConfigError):
        parse_config('{"contractors":[0.5,0.4],"generatrix":[[0,0],[1,0]]}')
    with pytest.raises(ConfigError):
        parse_config("{}")
    with pytest.raises(ConfigError, match=r"\$\.bogus"):
        parse_config('{"contractors":[0.5,0.4],"bogus":1}')
    with pytest.raises(ConfigError, match=r"\$\.solver\.bad"):
        parse_config('{"contractors":[0.5,0.4],"solver":{"bad":1}}')
    with pytest.raises(ConfigError):
        parse_config('{"generatrix":[[0,0],[0.5,0.5],[1,0]],"weights":[0.5,0.5]}')


# ----------------------------------------------------------------- subcommands

def test_dims_report(tmp_path, capsys):
    cfg = write_cfg(tmp_path, P2_CFG)
    assert main(["dims", "--config", cfg, "--out", str(tmp_path)]) == 0
    printed = capsys.readouterr().out
    assert "d_min = 1.0898297760180462" in printed
    assert "D_1 = 1.0485862684765266" in printed
    text = (tmp_path / "dims.csv").read_text()
    assert text.startswith("key,value\n")
    assert "dim_H," in text


def test_spectrum_artifacts(tmp_path):
    cfg = write_cfg(tmp_path, SQUARE_HUMP_CFG)
    rc = main([
        "spectrum", "--config", cfg, "--out", str(tmp_path),
        "--grid", "32", "--shrink", "--invert",
    ])
    assert rc == 0
    header = (tmp_path / "spectrum.csv").read_text().splitlines()[0]
    assert header == "Lambda,Omega,alpha,f,lambda_1,lambda_2,lambda_3,lambda_4,lambda_5"
    assert (tmp_path / "spectrum_shrunk.csv").is_file()
    assert (tmp_path / "spectrum_inverted.csv").is_file()
    annotations = (tmp_path / "spectrum_annotations.txt").read_text()
    assert "D_0 = " in annotations and "Omega_min = " in annotations


def test_renyi_csv(tmp_path):
    cfg = write_cfg(tmp_path, P2_CFG)
    assert main(["renyi", "--config", cfg, "--out", str(tmp_path),
                 "--q-range=0:2:1"]) == 0
    lines = (tmp_path / "renyi.csv").read_text().splitlines()
    assert lines[0] == "q,D_q"
    assert len(lines) == 4
    d1 = float(lines[2].split(",")[1])
    assert d1 == pytest.approx(1.048585, abs=1e-5)


def test_curve_svg_and_csv(tmp_path):
    cfg = write_cfg(tmp_path, KOCH_CFG)
    assert main(["curve", "--config", cfg, "--out", str(tmp_path),
                 "--depth", "3", "--svg"]) == 0
    lines = (tmp_path / "curve.csv").read_text().splitlines()
    assert lines[0] == "x,y"
    assert len(lines) == 4 ** 3 + 2  # header + 65 vertices
    svg = (tmp_path / "curve.svg").read_text()
    assert svg.count("<polyline") == 1
    assert "viewBox=" in svg


def test_expand_with_schedule(tmp_path, capsys):
    cfg = write_cfg(tmp_path, KOCH_CFG)
    assert main(["expand", "--config", cfg, "--out", str(tmp_path),
                 "--depth", "2", "--schedule", "1,1"]) == 0
    printed = capsys.readouterr().out
    assert "cumulative_expansion = 9.0" in printed


def test_expand_rejects_both_schedule_flags(tmp_path):
    cfg = write_cfg(tmp_path, KOCH_CFG)
    rc = main(["expand", "--config", cfg, "--out", str(tmp_path),
               "--depth", "2", "--schedule", "1,1", "--target-c", "0.33"])
    assert rc == 2


def test_census_square_hump(tmp_path):
    cfg = write_cfg(tmp_path, SQUARE_HUMP_CFG)
    assert main(["census", "--config", cfg, "--out", str(tmp_path),
                 "--depth", "2"]) == 0
    rows = [line.split(",") for line in
            (tmp_path / "census.csv").read_text().splitlines()[1:]]
    assert [int(r[1]) for r in rows] == [16, 8, 1]
    assert float(rows[0][0]) == pytest.approx(1 / 16, rel=1e-12)


def test_estimate_csv(tmp_path, capsys):
    cfg = write_cfg(tmp_path, KOCH_CFG)
    assert main(["estimate", "--config", cfg, "--out", str(tmp_path),
                 "--depth", "5", "--epsilon", "0.45"]) == 0
    printed = capsys.readouterr().out
    slope = float(printed.splitlines()[0].split(" = ")[1])
    assert slope == pytest.approx(math.log(4) / math.log(3), abs=0.05)
    lines = (tmp_path / "estimate.csv").read_text().splitlines()
    assert lines[0] == "k,epsilon,delta,area,log_delta,log_area"
    assert len(lines) == 4  # header + k = 3, 4, 5


def test_hessian_verdict(tmp_path, capsys):
    cfg = write_cfg(tmp_path, SQUARE_HUMP_CFG)
    assert main(["hessian", "--config", cfg, "--out", str(tmp_path),
                 "--grid", "5", "--lambda-range=-3:3"]) == 0
    assert "maximum_at_all_sampled_Lambda = True" in capsys.readouterr().out
    header = (tmp_path / "hessian.csv").read_text().splitlines()[0]
    assert header.startswith("Lambda,is_maximum,minor_2")


# ------------------------------------------------------------------ exit codes

def test_exit_code_validation_errors(tmp_path):
    assert main(["dims", "--config", str(tmp_path / "missing.json")]) == 2
    cfg = write_cfg(tmp_path, {"contractors": [0.5]})
    assert main(["dims", "--config", cfg]) == 2
    koch = write_cfg(tmp_path, KOCH_CFG, "koch.json")
    assert main(["curve", "--config", koch, "--out", str(tmp_path),
                 "--depth", "0"]) == 2


def test_exit_code_numerical_failure(tmp_path):
    cfg = write_cfg(tmp_path, {**KOCH_CFG, "solver": {"cell_cap": 10}})
    rc = main(["estimate", "--config", cfg, "--out", str(tmp_path),
               "--depth", "5", "--epsilon", "0.45"])
    assert rc == 3


def test_solver_overrides_and_flag_precedence(tmp_path, capsys):
    cfg = write_cfg(tmp_path, {**KOCH_CFG, "solver": {"depth": 2, "schedule": "1,1,1"}})
    assert main(["expand", "--config", cfg, "--out", str(tmp_path)]) == 0
    assert "cumulative_expansion = 9.0" in capsys.readouterr().out
    # The command-line depth wins over the config depth.
    assert main(["expand", "--config", cfg, "--out", str(tmp_path),
                 "--depth", "3"]) == 0
    assert "cumulative_expansion = 27.0" in capsys.readouterr().out


def test_deterministic_output(tmp_path):
    cfg = write_cfg(tmp_path, SQUARE_HUMP_CFG)
    out1, out2 = tmp_path / "a", tmp_path / "b"
    for out in (out1, out2):
        assert main(["spectrum", "--config", cfg, "--out", str(out),
                     "--grid", "64"]) == 0
    assert (out1 / "spectrum.csv").read_bytes() == (out2 / "spectrum.csv").read_bytes()
