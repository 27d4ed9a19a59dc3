import json
from pathlib import Path

import pytest

from ldpc_forge.alist import read_alist, write_alist
from ldpc_forge.becsim import exact_fer
from ldpc_forge.cli import main


@pytest.fixture
def four_cycle_file(tmp_path, four_cycle):
    path = tmp_path / "four.alist"
    path.write_text(write_alist(four_cycle))
    return path


def manifest_core(path: Path) -> dict:
    data = json.loads(path.read_text())
    data.pop("environment")
    return data


class TestAnalyze:
    def test_four_cycle_profile(self, tmp_path, four_cycle_file, capsys):
        rc = main(["analyze", "--in", str(four_cycle_file), "--d-cap", "3",
                   "--out", str(tmp_path / "run")])
        assert rc == 0
        assert json.loads(capsys.readouterr().out) == {"d_stp": 2, "m_s": 1}
        profile = json.loads((tmp_path / "run" / "profile.json").read_text())
        assert profile["min_sets"] == [[1, 2]]

    def test_budget_exit_code(self, tmp_path, four_cycle_file):
        rc = main(["analyze", "--in", str(four_cycle_file), "--budget-enum", "1",
                   "--out", str(tmp_path / "run")])
        assert rc == 4

    def test_parse_exit_code(self, tmp_path):
        bad = tmp_path / "bad.alist"
        bad.write_text("2 2\nbroken\n")
        rc = main(["analyze", "--in", str(bad), "--out", str(tmp_path / "run")])
        assert rc == 3


class TestGen:
    def test_regular_writes_alist(self, tmp_path):
        out = tmp_path / "run"
        rc = main(["gen", "--regular", "16", "3", "6", "--seed", "5", "--out", str(out)])
        assert rc == 0
        g = read_alist((out / "code.alist").read_text())
        assert (g.n_vars, g.n_checks) == (16, 8)

    def test_usage_exit_code(self, tmp_path):
        rc = main(["gen", "--regular", "63", "3", "6", "--out", str(tmp_path / "run")])
        assert rc == 2

    def test_irregular(self, tmp_path):
        out = tmp_path / "run"
        rc = main(["gen", "--n", "72", "--lambda", "2:0.4187,3:0.1626,6:0.4187",
                   "--rho", "6:1.0", "--seed", "1", "--out", str(out)])
        assert rc == 0
        g = read_alist((out / "code.alist").read_text())
        assert len(g.edges) == 216

    def test_reproducible_outputs(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        for out in (a, b):
            assert main(["gen", "--regular", "16", "3", "6", "--seed", "9",
                         "--out", str(out)]) == 0
        assert (a / "code.alist").read_bytes() == (b / "code.alist").read_bytes()
        assert manifest_core(a / "manifest.json") == manifest_core(b / "manifest.json")


class TestSuppress:
    def test_four_cycle_expectation_one(self, tmp_path, four_cycle_file, capsys):
        rc = main(["suppress", "--in", str(four_cycle_file), "--K", "2",
                   "--out", str(tmp_path / "run")])
        assert rc == 0
        out = json.loads(capsys.readouterr().out)
        assert out["first_order_expectation"] == "1"

    def test_contract_violation_exit_code(self, tmp_path, four_cycle_file):
        rc = main(["suppress", "--in", str(four_cycle_file), "--K", "2",
                   "--set", "1", "--out", str(tmp_path / "run")])
        assert rc == 5

    def test_k_grid_emits_fit_csv(self, tmp_path, four_cycle_file):
        out = tmp_path / "run"
        rc = main(["suppress", "--in", str(four_cycle_file), "--K", "2",
                   "--k-grid", "2,4,8", "--out", str(out)])
        assert rc == 0
        lines = (out / "fit.csv").read_text().splitlines()
        assert lines[0] == "set,K,expectation"
        assert len(lines) == 4
        assert all(line.endswith("1.0") for line in lines[1:])  # cycle law


class TestSeedEnvVar:
    def test_env_seed_is_default(self, tmp_path, monkeypatch):
        monkeypatch.setenv("LDPC_FORGE_SEED", "9")
        a = tmp_path / "a"
        assert main(["gen", "--regular", "16", "3", "6", "--out", str(a)]) == 0
        monkeypatch.delenv("LDPC_FORGE_SEED")
        b = tmp_path / "b"
        assert main(["gen", "--regular", "16", "3", "6", "--seed", "9",
                     "--out", str(b)]) == 0
        assert (a / "code.alist").read_bytes() == (b / "code.alist").read_bytes()


class TestSimulate:
    def test_matches_exact_fer_on_three_var_code(self, tmp_path, path_graph):
        src = tmp_path / "path.alist"
        src.write_text(write_alist(path_graph))
        out = tmp_path / "run"
        rc = main(["simulate", "--in", str(src), "--eps", "0.4",
                   "--min-frame-errors", "300", "--max-frames", "60000",
                   "--seed", "3", "--out", str(out)])
        assert rc == 0
        header, row = (out / "curves.csv").read_text().splitlines()
        fields = dict(zip(header.split(","), row.split(",")))
        p_true = exact_fer(path_graph, 0.4)
        assert float(fields["fer"]) == pytest.approx(p_true, rel=0.15)
        assert float(fields["fer_ci_lo"]) <= p_true <= float(fields["fer_ci_hi"])

    def test_missing_eps_is_usage_error(self, tmp_path, four_cycle_file):
        rc = main(["simulate", "--in", str(four_cycle_file),
                   "--out", str(tmp_path / "run")])
        assert rc == 2


class TestLiftCmd:
    def test_lift_writes_spec_and_alist(self, tmp_path, four_cycle_file):
        out = tmp_path / "run"
        rc = main(["lift", "--in", str(four_cycle_file), "--K", "3", "--seed", "2",
                   "--out", str(out)])
        assert rc == 0
        spec = json.loads((out / "spec.json").read_text())
        assert spec["K"] == 3
        assert len(spec["shifts"]) == 4
        g = read_alist((out / "lifted.alist").read_text())
        assert (g.n_vars, g.n_checks) == (6, 6)

    def test_emitted_alist_reparses_identically(self, tmp_path, four_cycle_file):
        out = tmp_path / "run"
        main(["lift", "--in", str(four_cycle_file), "--K", "2", "--seed", "4",
              "--out", str(out)])
        text = (out / "lifted.alist").read_text()
        assert write_alist(read_alist(text)) == text


class TestAnnealCmd:
    def test_small_run_and_reproducibility(self, tmp_path):
        src = tmp_path / "code.alist"
        main(["gen", "--regular", "16", "3", "6", "--seed", "7", "--out", str(tmp_path)])
        (tmp_path / "code.alist").rename(src)  # no-op, keeps the name explicit
        outs = []
        for name in ("r1", "r2"):
            out = tmp_path / name
            rc = main(["anneal", "--in", str(src), "--d-target", "4",
                       "--budget-trials", "4000", "--seed", "11", "--out", str(out)])
            assert rc == 0
            outs.append(out)
        assert ((outs[0] / "annealed.alist").read_bytes()
                == (outs[1] / "annealed.alist").read_bytes())
        assert (manifest_core(outs[0] / "manifest.json")
                == manifest_core(outs[1] / "manifest.json"))


class TestPipelineCmd:
    def test_degenerate_run_has_complete_manifest(self, tmp_path):
        out = tmp_path / "run"
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({
            "base": {"kind": "regular", "n": 12, "dv": 3, "dc": 6},
            "K": 1, "d_u": 1,
            "da_anneal": {"max_trials": 0, "per_d_attempt_cap": 0, "d_target": 2},
            "seq_anneal": {"max_trials": 0, "per_d_attempt_cap": 0, "d_target": 2},
        }))
        rc = main(["pipeline", "--config", str(cfg), "--seed", "5", "--out", str(out)])
        assert rc == 0
        manifest = json.loads((out / "manifest.json").read_text())
        assert manifest["stages"]["da_ca"]["report"]["swaps_accepted"] == 0
        base = read_alist((out / "base.alist").read_text())
        lifted = read_alist((out / "lifted.alist").read_text())
        assert base.same_code(lifted)

    def test_cli_flags_override_config(self, tmp_path):
        out = tmp_path / "run"
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({
            "base": {"kind": "regular", "n": 12, "dv": 3, "dc": 6},
            "K": 1, "d_u": 2,
        }))
        rc = main(["pipeline", "--config", str(cfg), "--K", "2", "--d-target", "3",
                   "--budget-trials", "2000", "--seed", "6", "--out", str(out)])
        assert rc == 0
        manifest = json.loads((out / "manifest.json").read_text())
        assert manifest["config"]["K"] == 2  # flag beat the file
        assert manifest["config"]["d_u"] == 2  # file beat the default
