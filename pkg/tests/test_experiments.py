"""Sweep campaigns: planning, claim checkers, persistence, Gauss pairing."""

import json
import math
import os

import numpy as np
import pytest
from scipy.integrate import quad

from maxdirac1d.experiments import (
    SweepPlan,
    SweepRecord,
    a0_lower_bound,
    check_claim1,
    check_claim2,
    check_claim3,
    config_hash,
    default_plan,
    default_probes,
    gauss_divergence,
    grid_for_eps,
    load_sweep,
    run_sweep,
    write_sweep,
)
from maxdirac1d.initial_data import PotentialMode

COARSE = SweepPlan(dim=2, M=0.0, eps_list=(0.1, 0.07), T=0.05, h_over_eps=4.0)


@pytest.fixture(scope="module")
def coarse_sweep():
    return run_sweep(COARSE)


# ---------------------------------------------------------------------------
# Plans and grid policy.
# ---------------------------------------------------------------------------


def test_default_probes_interior():
    probes = default_probes(0.05)
    assert len(probes) == 6
    for t, x in probes:
        assert abs(x) < t < 0.05
    assert probes[0] == (0.025, 0.0)
    assert probes[1] == pytest.approx((0.025, 0.0125))


def test_default_plan_ladder():
    plan = default_plan()
    assert plan.eps_list == pytest.approx((1e-2, 10**-2.5, 1e-3))
    assert plan.T == 0.05
    assert len(plan.probes) == 6


@pytest.mark.parametrize(
    "kwargs, match",
    [
        (dict(eps_list=()), "must not be empty"),
        (dict(eps_list=(0.1, -0.01)), "positive"),
        (dict(eps_list=(0.01, 0.1)), "strictly decreasing"),
        (dict(eps_list=(0.1,), T=0.0), "horizon"),
        (dict(eps_list=(0.1,), h_over_eps=0.5), "h_over_eps"),
        (dict(eps_list=(0.1,), probes=((0.06, 0.0),)), "probe"),
        (dict(eps_list=(0.1,), probes=((0.02, 0.03),)), "probe"),
    ],
)
def test_plan_validation(kwargs, match):
    base = dict(dim=2, M=0.0, T=0.05)
    base.update(kwargs)
    with pytest.raises(ValueError, match=match):
        SweepPlan(**base)


def test_plan_to_dict_round_trip():
    plan = default_plan(dim=3, M=1.0)
    d = plan.to_dict()
    again = SweepPlan(
        dim=d["dim"],
        M=d["M"],
        eps_list=tuple(d["eps_list"]),
        T=d["T"],
        probes=tuple(tuple(p) for p in d["probes"]),
        h_over_eps=d["h_over_eps"],
    )
    assert again == plan


def test_grid_policy_tracks_eps():
    plan = default_plan()
    for eps in (1e-2, 1e-3):
        g = grid_for_eps(plan, eps)
        assert g.h <= eps / plan.h_over_eps + 1e-18
        assert g.t_max >= plan.T - 1e-12
        assert g.t_max - plan.T < g.h
        assert g.n % 2 == 0
        # support plus horizon plus margin fits inside the slab
        assert g.L >= plan.cutoff.outer + plan.T + 0.05 - 1e-12


# ---------------------------------------------------------------------------
# Closed-form A_0 lower bound.
# ---------------------------------------------------------------------------


@pytest.mark.parametrize(
    "t, x, eps",
    [(0.04, 0.0, 1e-3), (0.025, 0.0125, 1e-2), (0.0375, -0.01, 3e-3)],
)
def test_a0_lower_bound_is_cone_charge_integral(t, x, eps):
    ref = quad(lambda s: math.log((eps + s) / eps), 0.0, x + t)[0] / 8.0
    assert float(a0_lower_bound(t, x, eps)) == pytest.approx(ref, abs=1e-12)


def test_a0_lower_bound_spot_value():
    assert float(a0_lower_bound(0.04, 0.0, 1e-3)) == pytest.approx(
        0.014032056841859576, abs=1e-14
    )


def test_a0_lower_bound_degenerates_at_cone_edge():
    assert float(a0_lower_bound(0.02, -0.02, 1e-3)) == pytest.approx(0.0, abs=1e-15)
    vals = a0_lower_bound(0.04, 0.0, np.array([1e-2, 1e-3, 1e-4]))
    assert (np.diff(vals) > 0).all()


# ---------------------------------------------------------------------------
# Claim checkers on synthetic records.
# ---------------------------------------------------------------------------


def _record(**over):
    base = dict(
        eps=0.1,
        dim=2,
        M=0.0,
        T=0.02,
        mode="zero",
        n=100,
        h=0.01,
        t_max=0.02,
        times=np.array([0.0, 0.01, 0.02]),
        series={},
        probes=((0.04, 0.0),),
        probe_A0=np.array([0.0]),
    )
    base.update(over)
    return SweepRecord(**base)


def test_claim1_verdicts():
    ok = _record(series={"sup_KT_transverse": np.array([0.0, 0.5, 0.9])})
    bad = _record(series={"sup_KT_transverse": np.array([0.0, 0.5, 1.5])})
    flat = _record(dim=1, series={})
    out = check_claim1([ok, bad, flat], 0.02)
    assert out[0]["pass"] and out[0]["sup"] == 0.9
    assert out[0]["largest_T_ok"] == 0.02
    assert not out[1]["pass"] and out[1]["sup"] == 1.5
    # the prefix up to t = 0.01 still satisfies the bound
    assert out[1]["largest_T_ok"] == 0.01
    assert out[2] == {"eps": 0.1, "applicable": False, "pass": True}


def test_claim2_verdicts_and_guard():
    # tol = 1 - 50 h^2 / eps^2 = 0.5 at h = 0.01, eps = 0.1
    ok = _record(T=0.03, series={"claim2_min_ratio": np.array([np.inf, 0.9, 0.7])})
    bad = _record(T=0.03, series={"claim2_min_ratio": np.array([np.inf, 0.9, 0.4])})
    out = check_claim2([ok, bad], 0.03)
    assert out[0]["floor_factor"] == pytest.approx(0.5)
    assert out[0]["min_ratio"] == 0.7 and out[0]["pass"]
    assert out[1]["min_ratio"] == 0.4 and not out[1]["pass"]
    with pytest.raises(ValueError, match="6\\(M\\+1\\)T < 1"):
        check_claim2([_record(M=2.0, series={"claim2_min_ratio": np.array([1.0])})], 0.1)


def _synthetic_ladder(a0_fn, eps=(1e-2, 1e-3, 1e-4), probes=((0.04, 0.0),)):
    return [
        _record(
            eps=e,
            probes=probes,
            probe_A0=np.array([a0_fn(t, x, e) for t, x in probes]),
        )
        for e in eps
    ]


def test_claim3_recovers_linear_slope():
    recs = _synthetic_ladder(lambda t, x, e: 0.01 * math.log(1.0 / e) + 0.001)
    fit = check_claim3(recs)
    assert fit.slopes[0] == pytest.approx(0.01, abs=1e-12)
    assert fit.slope_bounds[0] == pytest.approx(0.04 / 8.0)
    assert fit.lower_ok.all()
    assert fit.monotone.all()
    assert fit.implied_c == pytest.approx(
        (0.01 * math.log(1e4) + 0.001) / math.log(1e4)
    )
    assert fit.passed
    d = fit.to_dict()
    assert d["pass"] is True and d["slopes"][0] == pytest.approx(0.01)


def test_claim3_fails_without_growth():
    fit = check_claim3(_synthetic_ladder(lambda t, x, e: 0.05))
    assert fit.slopes[0] == pytest.approx(0.0, abs=1e-12)
    assert not fit.monotone.all()
    assert not fit.passed


def test_claim3_fails_below_closed_form():
    fit = check_claim3(_synthetic_ladder(lambda t, x, e: 0.5 * a0_lower_bound(t, x, e)))
    assert not fit.lower_ok.all()
    assert not fit.passed


def test_claim3_input_guards():
    with pytest.raises(ValueError, match="empty"):
        check_claim3([])
    with pytest.raises(ValueError, match="zero potential mode"):
        check_claim3([_record(mode="constrained")])
    recs = _synthetic_ladder(lambda t, x, e: 1.0)
    recs[1] = _record(eps=1e-3, probes=((0.03, 0.0),), probe_A0=np.array([1.0]))
    with pytest.raises(ValueError, match="probe set"):
        check_claim3(recs)


# ---------------------------------------------------------------------------
# A real coarse sweep: determinism, verdicts, persistence.
# ---------------------------------------------------------------------------


def test_sweep_is_deterministic(coarse_sweep):
    again = run_sweep(COARSE)
    for a, b in zip(coarse_sweep, again):
        assert np.array_equal(a.probe_A0, b.probe_A0)
        for key in a.series:
            assert np.array_equal(a.series[key], b.series[key])


def test_sweep_jobs_do_not_change_results(coarse_sweep):
    par = run_sweep(COARSE, jobs=2)
    for a, b in zip(coarse_sweep, par):
        assert np.array_equal(a.probe_A0, b.probe_A0)


def test_massless_longitudinal_sweep_passes_claims_1_2(coarse_sweep):
    for v in check_claim1(coarse_sweep, COARSE.T):
        assert v["pass"] and v["sup"] == 0.0
    for v in check_claim2(coarse_sweep, COARSE.T):
        # the cutoff is identically 1 on the floor window, so the measured
        # ratio |psi|^2 / (0.5 f^2) sits exactly at 2
        assert v["pass"] and v["min_ratio"] == pytest.approx(2.0, abs=1e-12)


def test_write_load_round_trip(coarse_sweep, tmp_path):
    summary = write_sweep(coarse_sweep, COARSE, PotentialMode.ZERO, tmp_path)
    names = sorted(os.listdir(tmp_path))
    assert "summary.json" in names
    assert sum(n.startswith("diagnostics_") for n in names) == 2
    assert sum(n.startswith("blowup_probe") for n in names) == 6
    assert summary["config_hash"] == config_hash(summary["config"])

    back, summary2 = load_sweep(tmp_path)
    assert summary2 == summary
    for a, b in zip(coarse_sweep, back):
        assert np.array_equal(a.probe_A0, b.probe_A0)
        for key in a.series:
            # repr round trip keeps every float bit
            assert np.array_equal(a.series[key], b.series[key])
    assert json.dumps(check_claim2(back, COARSE.T)) == json.dumps(
        check_claim2(coarse_sweep, COARSE.T)
    )


def test_load_sweep_detects_tampering(coarse_sweep, tmp_path):
    write_sweep(coarse_sweep, COARSE, PotentialMode.ZERO, tmp_path)
    p = tmp_path / "summary.json"
    doc = json.loads(p.read_text())
    doc["config"]["plan"]["T"] = 0.06
    p.write_text(json.dumps(doc))
    with pytest.raises(ValueError, match="hash mismatch"):
        load_sweep(tmp_path)


# ---------------------------------------------------------------------------
# Gauss pairing.
# ---------------------------------------------------------------------------


def _bump(x):
    x = np.asarray(x)
    return np.where(np.abs(x) < 1.0, np.cos(np.pi * x / 2.0) ** 2, 0.0)


def _node(x):
    x = np.asarray(x)
    return np.where(np.abs(x) < 1.0, np.sin(np.pi * x) ** 2, 0.0)


def test_gauss_pairing_matches_adaptive_quadrature():
    out = gauss_divergence([1e-2], _bump)
    eps = 1e-2
    ref = quad(
        lambda x: math.cos(math.pi * x / 2.0) ** 2 / math.sqrt(eps * eps + x * x),
        -1.0,
        1.0,
        points=[0.0],
        limit=200,
    )[0]
    assert out["pairing"][0] == pytest.approx(ref, rel=1e-10)
    assert math.isnan(out["slope"])


def test_gauss_divergent_slope():
    out = gauss_divergence([1e-2, 3e-3, 1e-3], _bump)
    assert out["expected_slope"] == pytest.approx(2.0)
    assert out["slope"] == pytest.approx(2.0, abs=0.01)
    assert (np.diff(out["pairing"]) > 0).all()


def test_gauss_vanishing_at_origin_converges():
    out = gauss_divergence([1e-2, 3e-3, 1e-3], _node)
    assert out["phi0"] == 0.0
    diffs = np.abs(out["diffs"])
    assert (np.diff(diffs) < 0).all()
    assert diffs[-1] < 1e-3


def test_gauss_input_guards():
    with pytest.raises(ValueError, match="supported inside"):
        gauss_divergence([1e-2], lambda x: np.ones_like(np.asarray(x, dtype=float)))
    with pytest.raises(ValueError, match="nonempty positive"):
        gauss_divergence([], _bump)
    with pytest.raises(ValueError, match="nonempty positive"):
        gauss_divergence([0.1, -0.1], _bump)


# ---------------------------------------------------------------------------
# Config hashing.
# ---------------------------------------------------------------------------


def test_config_hash_canonical():
    assert config_hash({"a": 1, "b": [2, 3]}) == config_hash({"b": [2, 3], "a": 1})
    assert config_hash({"a": 1}) != config_hash({"a": 2})
    assert len(config_hash({})) == 64
