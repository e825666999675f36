import json

import numpy as np
import pytest

from qlb import checks
from qlb.checks import CheckResult
from qlb.cli import main
from qlb.config import ConfigError, parse_config
from qlb.lattice import read_snapshot

MINIMAL = """\
m = 1
alpha = 1
beta = 0
h = 0.0625
T = 1
initial = gaussian(amp=0.5, width=0.5)
"""


def write(tmp_path, text, name="run.cfg"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


class TestParseConfig:
    def test_minimal_defaults(self):
        cfg = parse_config(MINIMAL)
        assert cfg.params.alpha == 1.0 and cfg.preset == "thirring"
        assert cfg.steps == 16
        assert cfg.sampling == "cell-average(4)"
        assert cfg.K == 10.0 and cfg.quadrature_order == 6
        assert cfg.h_list == (0.0625, 0.03125, 0.015625, 0.0078125)
        assert cfg.snapshot_times == (0.0, 1.0)
        assert cfg.seed == 0

    def test_gross_neveu_preset(self):
        cfg = parse_config(MINIMAL.replace("alpha = 1", "alpha = 0").replace("beta = 0", "beta = 0.25"))
        assert cfg.preset == "gross-neveu"

    def test_comments_and_blank_lines(self):
        cfg = parse_config("# header\n\n" + MINIMAL.replace("m = 1", "m = 2   # mass"))
        assert cfg.params.m == 2.0

    def test_negative_h_names_line(self):
        with pytest.raises(ConfigError, match=r"line 4: h must be positive"):
            parse_config(MINIMAL.replace("h = 0.0625", "h = -1"))

    def test_unknown_key(self):
        with pytest.raises(ConfigError, match=r"line 7: unknown key 'colour'"):
            parse_config(MINIMAL + "colour = red\n")

    def test_missing_key(self):
        with pytest.raises(ConfigError, match="missing required key.*initial"):
            parse_config("\n".join(MINIMAL.splitlines()[:-1]))

    def test_bad_type(self):
        with pytest.raises(ConfigError, match=r"line 1: m must be a real number"):
            parse_config(MINIMAL.replace("m = 1", "m = heavy"))

    def test_duplicate(self):
        with pytest.raises(ConfigError, match="duplicate key 'T'"):
            parse_config(MINIMAL + "T = 2\n")

    def test_h_must_divide_t(self):
        with pytest.raises(ConfigError, match="does not divide"):
            parse_config(MINIMAL.replace("h = 0.0625", "h = 0.3"))

    def test_malformed_line(self):
        with pytest.raises(ConfigError, match="line 7"):
            parse_config(MINIMAL + "just words\n")

    def test_bad_initial_names_line(self):
        with pytest.raises(ConfigError, match="line 6"):
            parse_config(MINIMAL.replace("gaussian(amp=0.5, width=0.5)", "blob()"))

    def test_optional_values(self):
        cfg = parse_config(
            MINIMAL
            + "h_list = 0.25, 0.125\nsnapshot_times = 0.5\nseed = 42\nstudy = both\npair = plane-wave\n"
            + "sampling = point\nconvention = potential\napex = 0.5\n"
        )
        assert cfg.h_list == (0.25, 0.125)
        assert cfg.snapshot_times == (0.5,)
        assert (cfg.seed, cfg.study, cfg.pair, cfg.apex) == (42, "both", "plane-wave", 0.5)

    @pytest.mark.parametrize(
        "extra",
        ["h_list = 0.1, 0.2", "snapshot_times = 0.01", "study = nope", "K = 0", "seed = -1", "sampling = spline", "levels = 1"],
    )
    def test_option_validation(self, extra):
        with pytest.raises(ConfigError):
            parse_config(MINIMAL + extra + "\n")


class TestCli:
    def test_simulate_streaming_box_translates(self, tmp_path, capsys):
        cfg = MINIMAL.replace("m = 1", "m = 0").replace("alpha = 1", "alpha = 0")
        cfg = cfg.replace("gaussian(amp=0.5, width=0.5)", "box(a=0, b=1, u=1, v=0.5j)")
        out = tmp_path / "out"
        assert main(["simulate", "--config", write(tmp_path, cfg), "--out", str(out)]) == 0
        first = read_snapshot(out / "snapshot_k000000.csv")
        last = read_snapshot(out / "snapshot_k000016.csv")
        lo, hi = first.grid.n_min, first.grid.n_max
        u, _ = last.window(lo + 16, hi + 16)
        _, v = last.window(lo - 16, hi - 16)
        np.testing.assert_array_equal(u, first.u)
        np.testing.assert_array_equal(v, first.v)
        trace = (out / "charge.csv").read_text().splitlines()
        assert trace[0] == "k,t,charge,relative_drift"
        assert len(trace) == 18

    def test_simulate_deterministic(self, tmp_path):
        path = write(tmp_path, MINIMAL)
        main(["simulate", "--config", path, "--out", str(tmp_path / "a")])
        main(["simulate", "--config", path, "--out", str(tmp_path / "b")])
        for name in ("charge.csv", "snapshot_k000016.csv"):
            assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()

    def test_preset_echo(self, tmp_path, capsys):
        cfg = MINIMAL.replace("alpha = 1", "alpha = 0").replace("beta = 0", "beta = 0.25")
        main(["simulate", "--config", write(tmp_path, cfg), "--out", str(tmp_path)])
        assert "preset: gross-neveu" in capsys.readouterr().out

    def test_refine_decreasing(self, tmp_path):
        cfg = MINIMAL.replace("h = 0.0625", "h = 0.0625\nlevels = 4")
        assert main(["refine", "--config", write(tmp_path, cfg), "--out", str(tmp_path)]) == 0
        rows = [l for l in (tmp_path / "self_convergence.csv").read_text().splitlines() if not l.startswith("#")]
        assert rows[0] == "h,steps,error,observed_order"
        errors = [float(r.split(",")[2]) for r in rows[1:]]
        assert len(errors) == 3 and all(b < a for a, b in zip(errors, errors[1:]))

    def test_refine_consistency(self, tmp_path):
        cfg = MINIMAL.replace("T = 1", "T = 0.5") + "study = consistency\nh_list = 0.0625, 0.03125, 0.015625\n"
        assert main(["refine", "--config", write(tmp_path, cfg), "--out", str(tmp_path)]) == 0
        text = (tmp_path / "consistency.csv").read_text()
        assert "# pair=manufactured-gaussian(scheme)" in text

    def test_stability_writes_traces(self, tmp_path, capsys):
        cfg = MINIMAL.replace("h_list", "") + "h_list = 0.0625, 0.03125\n"
        code = main(["stability", "--config", write(tmp_path, cfg), "--out", str(tmp_path)])
        assert code == 0
        header = (tmp_path / "trace_0.csv").read_text().splitlines()
        assert "k,t,L0,L0_tilde,Lg,D0,D0_tilde,L1,Q1,D1,F1,Lambda,rho" in header
        assert "spread" in capsys.readouterr().out

    def test_check_deterministic(self, tmp_path, capsys):
        path = write(tmp_path, MINIMAL + "samples = 2000\ntrials = 20\n")
        assert main(["check", "--config", path, "--out", str(tmp_path), "--seed", "99"]) == 0
        first = capsys.readouterr().out
        assert main(["check", "--config", path, "--out", str(tmp_path), "--seed", "99"]) == 0
        assert capsys.readouterr().out == first
        for name in checks.PROPERTIES:
            assert f"PASS {name}" in first

    def test_check_failure_serialized(self, tmp_path, monkeypatch, capsys):
        def broken(rng, seed, config):
            return CheckResult("determinant-bound", False, -1.0, "", {"seed": seed, "state": {"u": [1.0, 0.0]}})

        monkeypatch.setitem(checks.PROPERTIES, "determinant-bound", broken)
        path = write(tmp_path, MINIMAL + "samples = 100\ntrials = 2\n")
        assert main(["check", "--config", path, "--out", str(tmp_path), "--seed", "5"]) == 1
        case = json.loads((tmp_path / "check_failure.json").read_text())
        assert case["property"] == "determinant-bound" and case["seed"] == 5
        assert "FAIL determinant-bound" in capsys.readouterr().out

    def test_missing_config(self, tmp_path, capsys):
        assert main(["check", "--config", str(tmp_path / "nope.cfg")]) == 2
        assert "qlb:" in capsys.readouterr().err

    def test_bad_config_exit(self, tmp_path, capsys):
        assert main(["simulate", "--config", write(tmp_path, MINIMAL + "zzz = 1\n")]) == 2
        assert "unknown key" in capsys.readouterr().err

    def test_seed_range(self, tmp_path):
        assert main(["check", "--config", write(tmp_path, MINIMAL), "--seed", str(2**64)]) == 2
