"""End-to-end CLI behavior: exit codes, artifacts, strict config handling."""

import json

import numpy as np
import pytest

from maxdirac1d import cli
from maxdirac1d.cone_solver import SolverAbort
from maxdirac1d.initial_data import GridSpec


def write_config(tmp_path, payload, name="config.json"):
    p = tmp_path / name
    p.write_text(payload if isinstance(payload, str) else json.dumps(payload))
    return str(p)


SIM_CONFIG = {
    "dim": 2,
    "M": 1.0,
    "eps": 0.1,
    "potential_mode": "constrained",
    "grid": {"L": 2.56, "n": 256, "t_max": 0.16},
    "snapshot_times": [0.0, 0.08, 0.16],
}

SWEEP_CONFIG = {
    "dim": 2,
    "M": 0.0,
    "eps_list": [0.1, 0.07],
    "T": 0.05,
    "h_over_eps": 4.0,
    "probes": [[0.04, 0.0]],
    "claims": ["claim1", "claim2"],
}


# ---------------------------------------------------------------------------
# simulate
# ---------------------------------------------------------------------------


def test_simulate_writes_manifest_and_oracle(tmp_path, capsys):
    cfg = write_config(tmp_path, SIM_CONFIG)
    out = tmp_path / "sim"
    rc = cli.main(["simulate", "--config", cfg, "--out", str(out), "--oracle"])
    assert rc == 0
    man = json.loads((out / "manifest.json").read_text())
    assert man["config"] == SIM_CONFIG
    assert len(man["config_hash"]) == 64
    assert man["grid"]["h"] == pytest.approx(0.02)
    assert man["charge_drift"] < 1e-3
    # A_0 agrees with half the cone integral of the density up to O(h^2)
    assert man["oracle_A0_max_deviation"] < 5 * 0.02**2
    for fname in man["files"]:
        assert (out / fname).exists()
    assert any(f.startswith("snapshot") for f in man["files"])
    assert "charge drift" in capsys.readouterr().out


def test_simulate_rejects_snapshot_outside_slab(tmp_path, capsys):
    bad = dict(SIM_CONFIG, snapshot_times=[0.3])
    rc = cli.main(["simulate", "--config", write_config(tmp_path, bad), "--out", str(tmp_path / "o")])
    assert rc == 2
    assert "config error:" in capsys.readouterr().err


def test_simulate_solver_abort_exit_code(tmp_path, capsys, monkeypatch):
    def explode(*a, **k):
        raise SolverAbort("instability detected")

    monkeypatch.setattr(cli, "evolve", explode)
    cfg = write_config(tmp_path, SIM_CONFIG)
    rc = cli.main(["simulate", "--config", cfg, "--out", str(tmp_path / "o")])
    assert rc == 3
    assert "solver abort: instability detected" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# config rejection battery
# ---------------------------------------------------------------------------


@pytest.mark.parametrize(
    "command, payload",
    [
        ("simulate", "{not json"),
        ("simulate", dict(SIM_CONFIG, bogus=1)),
        ("simulate", {k: v for k, v in SIM_CONFIG.items() if k != "dim"}),
        ("simulate", dict(SIM_CONFIG, grid={"L": 2.56, "n": 256, "t_max": 0.205})),
        ("simulate", dict(SIM_CONFIG, grid={"L": 2.0, "n": 200, "t_max": 0.5})),
        ("sweep", dict(SWEEP_CONFIG, M=2.0, T=0.4, claims=["claim2"])),
        ("sweep", dict(SWEEP_CONFIG, potential_mode="constrained", claims=["claim3"])),
        ("sweep", dict(SWEEP_CONFIG, claims=["gauss"])),
        ("sweep", dict(SWEEP_CONFIG, eps_list=[0.07, 0.1])),
        ("verify", {"seed": 1, "suites": ["energy"]}),
        ("verify", {"seed": 1, "suites": ["recompute"]}),
        ("norms", {"eps_list": [1e-3, 1e-2]}),
    ],
)
def test_bad_configs_exit_2(tmp_path, capsys, command, payload):
    cfg = write_config(tmp_path, payload)
    rc = cli.main([command, "--config", cfg, "--out", str(tmp_path / "o")])
    assert rc == 2
    assert capsys.readouterr().err.startswith("config error:")


def test_missing_config_file_exit_2(tmp_path, capsys):
    rc = cli.main(["norms", "--config", str(tmp_path / "nope.json")])
    assert rc == 2
    assert "cannot read" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# sweep
# ---------------------------------------------------------------------------


def test_sweep_passes_and_is_reproducible(tmp_path, capsys):
    cfg = write_config(tmp_path, SWEEP_CONFIG)
    out1, out2 = tmp_path / "s1", tmp_path / "s2"
    assert cli.main(["sweep", "--config", cfg, "--out", str(out1)]) == 0
    stdout = capsys.readouterr().out
    assert "sweep: claim1 pass" in stdout
    assert "sweep: claim2 pass" in stdout
    v1 = json.loads((out1 / "verdicts.json").read_text())
    assert v1["pass"] is True
    assert v1["claims"] == ["claim1", "claim2"]
    assert (out1 / "summary.json").exists()

    assert cli.main(["sweep", "--config", cfg, "--out", str(out2)]) == 0
    assert (out1 / "verdicts.json").read_bytes() == (out2 / "verdicts.json").read_bytes()


def test_sweep_verdict_failure_exit_4(tmp_path, capsys):
    # a shallow epsilon ladder cannot reproduce the asymptotic log slope
    shallow = dict(SWEEP_CONFIG, eps_list=[0.9, 0.8, 0.7], claims=["gauss"])
    cfg = write_config(tmp_path, shallow)
    out = tmp_path / "s"
    rc = cli.main(["sweep", "--config", cfg, "--out", str(out)])
    assert rc == 4
    assert "verdict failure: gauss" in capsys.readouterr().err
    assert json.loads((out / "verdicts.json").read_text())["pass"] is False


def test_sweep_solver_abort_exit_3(tmp_path, capsys, monkeypatch):
    def explode(*a, **k):
        raise SolverAbort("sweep run aborted at eps = 0.1: boom")

    monkeypatch.setattr(cli, "run_sweep", explode)
    cfg = write_config(tmp_path, SWEEP_CONFIG)
    rc = cli.main(["sweep", "--config", cfg, "--out", str(tmp_path / "s")])
    assert rc == 3
    assert "solver abort" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def test_verify_random_suites_pass(tmp_path, capsys):
    cfg = write_config(
        tmp_path,
        {
            "seed": 3,
            "suites": ["energy", "wave", "nullform", "bootstrap"],
            "counts": {"energy": 2, "wave": 2, "nullform": 5},
        },
    )
    out = tmp_path / "v"
    rc = cli.main(["verify", "--config", cfg, "--out", str(out)])
    assert rc == 0
    rep = json.loads((out / "verify_report.json").read_text())
    assert rep["pass"] is True and rep["failures"] == 0
    assert rep["seed"] == 3
    # 2 energy + 2x4 wave + 5 nullform + 2 bootstrap thresholds
    assert len(rep["reports"]) == 17
    assert "worst ratio" in capsys.readouterr().out


def test_verify_seed_flag_overrides_config(tmp_path):
    cfg = write_config(
        tmp_path, {"seed": 3, "suites": ["energy"], "counts": {"energy": 1}}
    )
    out = tmp_path / "v"
    assert cli.main(["verify", "--config", cfg, "--out", str(out), "--seed", "9"]) == 0
    rep = json.loads((out / "verify_report.json").read_text())
    assert rep["seed"] == 9
    assert rep["reports"][0]["name"] == "energy[9,0]"


def test_verify_refinement_suite(tmp_path):
    cfg = write_config(
        tmp_path, {"seed": 0, "suites": ["refinement"], "refinement_factors": [1, 2]}
    )
    out = tmp_path / "v"
    assert cli.main(["verify", "--config", cfg, "--out", str(out)]) == 0
    rep = json.loads((out / "verify_report.json").read_text())
    names = [r["name"] for r in rep["reports"]]
    assert names == [f"nullform_refinement[{i}]" for i in range(3)]
    for r in rep["reports"]:
        assert [row[0] for row in r["rows"]] == [256, 512]
        assert all(row[1] <= row[2] for row in r["rows"])


def test_verify_recompute_round_trip_and_tamper(tmp_path, capsys):
    sweep_cfg = write_config(tmp_path, SWEEP_CONFIG, name="sweep.json")
    campaign = tmp_path / "campaign"
    assert cli.main(["sweep", "--config", sweep_cfg, "--out", str(campaign)]) == 0

    verify_cfg = write_config(
        tmp_path,
        {"seed": 0, "suites": ["recompute"], "recompute_dir": str(campaign)},
        name="verify.json",
    )
    out = tmp_path / "v"
    assert cli.main(["verify", "--config", verify_cfg, "--out", str(out)]) == 0
    rep = json.loads((out / "verify_report.json").read_text())
    assert rep["reports"][0]["identical"] is True

    doc = json.loads((campaign / "verdicts.json").read_text())
    doc["verdicts"]["claim1"][0]["sup"] = 0.123
    (campaign / "verdicts.json").write_text(json.dumps(doc))
    rc = cli.main(["verify", "--config", verify_cfg, "--out", str(tmp_path / "v2")])
    assert rc == 4
    rep2 = json.loads((tmp_path / "v2" / "verify_report.json").read_text())
    assert rep2["reports"][0]["identical"] is False
    capsys.readouterr()


def test_replay_info_parses_seeded_names():
    grid = GridSpec(L=2.56, n=256, t_max=0.24)
    info = cli._replay_info("nullform", "nullform[7,3]", grid)
    assert info["seed"] == 7 and info["index"] == 3
    assert info["grid"]["n"] == 256
    bare = cli._replay_info("energy", "energy", grid)
    assert "seed" not in bare


# ---------------------------------------------------------------------------
# norms
# ---------------------------------------------------------------------------


def test_norms_tables(tmp_path, capsys):
    cfg = write_config(
        tmp_path,
        {"eps_list": [1e-2, 1e-3], "s_values": [-0.5], "L": 2.5, "n": 1024},
    )
    out = tmp_path / "n"
    rc = cli.main(["norms", "--config", cfg, "--out", str(out)])
    assert rc == 0
    lines = (out / "norms.csv").read_text().splitlines()
    assert lines[0].startswith("# config_hash=")
    assert lines[1] == "eps,L1,L2,H-0.5"
    doc = json.loads((out / "norms.json").read_text())
    assert len(doc["norms"]) == 2 and len(doc["differences"]) == 1
    # the singular limit: L2 grows, negative-order differences stay small
    assert doc["norms"][1]["L2"] > doc["norms"][0]["L2"]
    assert doc["differences"][0]["H-0.5"] < doc["differences"][0]["L2"]
    assert (out / "norm_diffs.csv").exists()
    assert "norms:" in capsys.readouterr().out


def test_norms_allows_trailing_zero_eps(tmp_path):
    cfg = write_config(tmp_path, {"eps_list": [1e-2, 0.0], "n": 512})
    assert cli.main(["norms", "--config", cfg, "--out", str(tmp_path / "n")]) == 0
