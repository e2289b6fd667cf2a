"""Command-line front end: every run, sweep, and verification reproducible
from one JSON config file.

Subcommands:

* simulate -- one evolution run; writes snapshot CSVs, a diagnostics CSV, and
  a manifest embedding the config hash.  --oracle cross-checks the computed
  A_0 against half the cone integral of the charge density (exact for the
  zero-data wave part) and records the maximum deviation in the manifest.
* sweep -- an epsilon campaign; persists per-run diagnostics and probe data
  and writes the selected verdicts (claim1, claim2, claim3, gauss) to
  verdicts.json in one pass.
* verify -- randomized estimate suites (energy, wave, nullform), the fixed
  nullform refinement study, the bootstrap smallness constants, and
  recomputation of a persisted sweep's verdicts from its files.
* norms -- initial-data norm tables (L^1, L^2, negative-order H^s) per
  epsilon plus successive-difference tables.

Exit codes are a stable contract for CI: 0 pass, 2 config error, 3 solver
abort, 4 verdict failure.

Configs are strict JSON: unknown keys are rejected and the physically
meaningful fields (dim, M, eps or eps_list, T or t_max) have no defaults.
Cross-field constraints (grid divisibility, support margins, claim regime
guards) are re-checked at load time so that a bad config never reaches the
solver.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
import time

import jsonschema
import numpy as np

from .cone_solver import EvolveOptions, SolverAbort, cone_quadrature, evolve, trajectory_to_csv
from .estimates import (
    bootstrap_threshold,
    nullform_refinement,
    run_energy_suite,
    run_nullform_suite,
    run_wave_suite,
)
from .experiments import (
    SweepPlan,
    check_claim1,
    check_claim2,
    check_claim3,
    config_hash,
    gauss_divergence,
    load_sweep,
    run_sweep,
    write_sweep,
)
from .gamma_algebra import modulus_sq
from .initial_data import CutoffSpec, DataFamily, GridSpec, PotentialMode, chi, f_eps, hs_norm, lp_norm, sample_midpoints

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_ABORT = 3
EXIT_VERDICT = 4


class ConfigError(Exception):
    """Raised for anything wrong with a config file: unreadable, bad JSON,
    schema violation, or a failed cross-field constraint."""


# ---------------------------------------------------------------------------
# Config schemas.  Strict throughout: additionalProperties false, and no
# defaults for dim, M, eps/eps_list, T/t_max.
# ---------------------------------------------------------------------------

_GRID_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["L", "n", "t_max"],
    "properties": {
        "L": {"type": "number", "exclusiveMinimum": 0},
        "n": {"type": "integer", "minimum": 4},
        "t_max": {"type": "number", "minimum": 0},
    },
}

_CUTOFF_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["inner", "outer"],
    "properties": {
        "inner": {"type": "number", "exclusiveMinimum": 0},
        "outer": {"type": "number", "exclusiveMinimum": 0},
    },
}

_PROBE_SCHEMA = {
    "type": "array",
    "items": {"type": "number"},
    "minItems": 2,
    "maxItems": 2,
}

SIMULATE_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["dim", "M", "eps", "grid"],
    "properties": {
        "dim": {"enum": [1, 2, 3]},
        "M": {"type": "number", "minimum": 0},
        "eps": {"type": "number", "exclusiveMinimum": 0},
        "potential_mode": {"enum": ["zero", "constrained"]},
        "grid": _GRID_SCHEMA,
        "cutoff": _CUTOFF_SCHEMA,
        "snapshot_times": {"type": "array", "items": {"type": "number"}},
        "record_history": {"type": "boolean"},
        "out": {"type": "string"},
    },
}

SWEEP_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["dim", "M", "eps_list", "T"],
    "properties": {
        "dim": {"enum": [1, 2, 3]},
        "M": {"type": "number", "minimum": 0},
        "eps_list": {
            "type": "array",
            "minItems": 1,
            "items": {"type": "number", "exclusiveMinimum": 0},
        },
        "T": {"type": "number", "exclusiveMinimum": 0},
        "potential_mode": {"enum": ["zero", "constrained"]},
        "probes": {"type": "array", "items": _PROBE_SCHEMA},
        "h_over_eps": {"type": "number", "minimum": 1},
        "cutoff": _CUTOFF_SCHEMA,
        "claims": {
            "type": "array",
            "minItems": 1,
            "uniqueItems": True,
            "items": {"enum": ["claim1", "claim2", "claim3", "gauss"]},
        },
        "jobs": {"type": "integer", "minimum": 1},
        "out": {"type": "string"},
    },
}

VERIFY_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["seed"],
    "properties": {
        "seed": {"type": "integer", "minimum": 0},
        "suites": {
            "type": "array",
            "minItems": 1,
            "uniqueItems": True,
            "items": {
                "enum": ["energy", "wave", "nullform", "refinement", "bootstrap", "recompute"]
            },
        },
        "counts": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "energy": {"type": "integer", "minimum": 1},
                "wave": {"type": "integer", "minimum": 1},
                "nullform": {"type": "integer", "minimum": 1},
            },
        },
        # applies to the three randomized suites; refinement keeps its own base
        "grid": _GRID_SCHEMA,
        "refinement_factors": {
            "type": "array",
            "minItems": 2,
            "items": {"type": "integer", "minimum": 1},
        },
        "bootstrap_masses": {"type": "array", "items": {"type": "number", "minimum": 0}},
        "recompute_dir": {"type": "string"},
        "out": {"type": "string"},
    },
}

NORMS_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["eps_list"],
    "properties": {
        "eps_list": {
            "type": "array",
            "minItems": 1,
            "items": {"type": "number", "minimum": 0},
        },
        # hs_norm is restricted to negative orders
        "s_values": {"type": "array", "items": {"type": "number", "exclusiveMaximum": 0}},
        "L": {"type": "number", "exclusiveMinimum": 0},
        "n": {"type": "integer", "minimum": 4},
        "cutoff": _CUTOFF_SCHEMA,
        "out": {"type": "string"},
    },
}

_SCHEMAS = {
    "simulate": SIMULATE_SCHEMA,
    "sweep": SWEEP_SCHEMA,
    "verify": VERIFY_SCHEMA,
    "norms": NORMS_SCHEMA,
}

_ALL_CLAIMS = ("claim1", "claim2", "claim3", "gauss")
_RANDOM_SUITES = ("energy", "wave", "nullform")


def _cutoff_from(raw: dict) -> CutoffSpec:
    c = raw.get("cutoff")
    if c is None:
        return CutoffSpec()
    return CutoffSpec(inner=c["inner"], outer=c["outer"])


def load_config(path: str, command: str) -> dict:
    """Read, schema-validate, and cross-check a config file.

    Returns a context dict holding the raw config plus the constructed
    domain objects for the subcommand.  Raises ConfigError on any problem.
    """
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path} is not valid JSON: {exc}") from exc
    try:
        jsonschema.validate(raw, _SCHEMAS[command])
    except jsonschema.ValidationError as exc:
        loc = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise ConfigError(f"{path}: {loc}: {exc.message}") from exc

    ctx: dict = {"raw": raw}
    try:
        if command == "simulate":
            cutoff = _cutoff_from(raw)
            ctx["fam"] = DataFamily(
                dim=raw["dim"],
                eps=raw["eps"],
                M=raw["M"],
                potential_mode=PotentialMode(raw.get("potential_mode", "zero")),
                cutoff=cutoff,
            )
            g = raw["grid"]
            grid = GridSpec(L=g["L"], n=g["n"], t_max=g["t_max"])
            grid.ensure_support(cutoff.outer)
            for ts in raw.get("snapshot_times", []):
                if ts < 0 or ts > grid.t_max:
                    raise ValueError(f"snapshot time {ts} outside [0, {grid.t_max}]")
            ctx["grid"] = grid
        elif command == "sweep":
            cutoff = _cutoff_from(raw)
            mode = PotentialMode(raw.get("potential_mode", "zero"))
            plan = SweepPlan(
                dim=raw["dim"],
                M=raw["M"],
                eps_list=tuple(raw["eps_list"]),
                T=raw["T"],
                probes=tuple(tuple(p) for p in raw.get("probes", [])),
                h_over_eps=raw.get("h_over_eps", 16.0),
                cutoff=cutoff,
            )
            claims = raw.get("claims")
            if claims is None:
                claims = list(_ALL_CLAIMS) if mode is PotentialMode.ZERO else ["claim1", "claim2"]
            if "claim2" in claims and 6.0 * (raw["M"] + 1.0) * raw["T"] >= 1.0:
                raise ValueError(
                    f"claim2 regime requires 6(M+1)T < 1, got 6*{raw['M'] + 1}*{raw['T']} = "
                    f"{6.0 * (raw['M'] + 1.0) * raw['T']:g}"
                )
            if "claim3" in claims and mode is not PotentialMode.ZERO:
                raise ValueError("claim3 needs potential_mode 'zero' (vanishing A_0 data)")
            if "gauss" in claims and len(raw["eps_list"]) < 3:
                raise ValueError("gauss verdict needs at least 3 epsilons for slope and diffs")
            ctx["plan"], ctx["mode"], ctx["claims"] = plan, mode, sorted(claims)
        elif command == "verify":
            suites = raw.get("suites")
            if suites is None:
                suites = ["energy", "wave", "nullform", "refinement", "bootstrap"]
            counts = raw.get("counts", {})
            for name in _RANDOM_SUITES:
                if name in suites and name not in counts:
                    raise ValueError(f"suite '{name}' selected but counts.{name} missing")
            if "recompute" in suites and "recompute_dir" not in raw:
                raise ValueError("suite 'recompute' selected but recompute_dir missing")
            if "grid" in raw:
                g = raw["grid"]
                ctx["suite_grid"] = GridSpec(L=g["L"], n=g["n"], t_max=g["t_max"])
            ctx["suites"] = suites
        elif command == "norms":
            eps_list = raw["eps_list"]
            if any(b >= a for a, b in zip(eps_list, eps_list[1:])):
                raise ValueError("eps_list must be strictly decreasing")
            L = raw.get("L", 2.5)
            n = raw.get("n", 4096)
            # one-step slab: only the spatial mesh matters for data norms
            ctx["grid"] = GridSpec(L=L, n=n, t_max=2.0 * L / n)
            ctx["cutoff"] = _cutoff_from(raw)
    except ValueError as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    return ctx


# ---------------------------------------------------------------------------
# Shared output helpers.
# ---------------------------------------------------------------------------


def _out_dir(raw: dict, args, command: str) -> str:
    out = args.out or raw.get("out") or f"{command}_out"
    os.makedirs(out, exist_ok=True)
    return out


def _write_json(path: str, payload: dict) -> None:
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _jsonable(obj):
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


# ---------------------------------------------------------------------------
# simulate
# ---------------------------------------------------------------------------


def _a0_oracle(traj) -> float:
    """Max deviation of the stored A_0 from half the cone integral of the
    charge density, over a few cone vertices inside the slab.

    Both potential-data flavours start from vanishing A_0 data, so the
    Duhamel representation makes the two quantities equal up to quadrature
    error; the deviation is O(h^2)."""
    hist = traj.history
    grid = traj.grid
    dens = []
    for m in range(len(hist.times)):
        row = modulus_sq(traj.fam.dim, hist.u[m], hist.v[m])
        dens.append(row[0] if row.ndim == 2 else row)
    center = grid.n // 2
    worst = 0.0
    for m in sorted({max(1, grid.steps // 2), grid.steps}):
        for j in (center - m // 2, center, center + m // 2):
            measured = float(hist.A[m][0][j])
            oracle = 0.5 * cone_quadrature(dens, grid.h, m, j)
            worst = max(worst, abs(measured - oracle))
    return worst


def cmd_simulate(ctx: dict, args) -> int:
    raw, fam, grid = ctx["raw"], ctx["fam"], ctx["grid"]
    out = _out_dir(raw, args, "simulate")
    chash = config_hash({"command": "simulate", **raw})
    opts = EvolveOptions(
        snapshot_times=tuple(raw.get("snapshot_times", ())),
        record_history=bool(raw.get("record_history", False)) or args.oracle,
    )
    traj = evolve(fam, grid, opts)
    paths = trajectory_to_csv(traj, out, config_hash=chash)
    q = traj.series["charge"]
    drift = float(np.max(np.abs(q - q[0])) / q[0]) if q[0] > 0 else 0.0
    manifest = {
        "config": raw,
        "config_hash": chash,
        "grid": {
            "L": grid.L,
            "n": grid.n,
            "h": grid.h,
            "t_max": grid.t_max,
            "steps": grid.steps,
        },
        "charge_drift": drift,
        "files": sorted(os.path.basename(p) for p in paths),
    }
    if args.oracle:
        manifest["oracle_A0_max_deviation"] = _a0_oracle(traj)
    _write_json(os.path.join(out, "manifest.json"), manifest)
    print(f"simulate: wrote {len(paths) + 1} files to {out}; charge drift {drift:.3e}")
    if args.oracle:
        dev = manifest["oracle_A0_max_deviation"]
        print(f"simulate: oracle max |A0 - (1/2) cone integral| = {dev:.3e}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# sweep
# ---------------------------------------------------------------------------


def _gauss_verdict(eps_list) -> dict:
    """Divergence/convergence pair for the charge pairing.

    The bump profile has phi(0) = 1, so the pairing must grow with log-slope
    within 5% of 2; the node profile has phi(0) = 0, so successive pairing
    differences must shrink."""

    def bump(x):
        x = np.asarray(x, dtype=float)
        return np.where(np.abs(x) < 1.0, np.cos(0.5 * np.pi * x) ** 2, 0.0)

    def node(x):
        x = np.asarray(x, dtype=float)
        return np.where(np.abs(x) < 1.0, np.sin(np.pi * x) ** 2, 0.0)

    div = gauss_divergence(eps_list, bump)
    conv = gauss_divergence(eps_list, node)
    slope_ok = abs(div["slope"] - div["expected_slope"]) <= 0.05 * div["expected_slope"]
    d = np.abs(np.asarray(conv["diffs"]))
    conv_ok = bool(np.all(d[1:] < d[:-1]))
    return {
        "divergent": _jsonable(div),
        "convergent": _jsonable(conv),
        "slope_ok": bool(slope_ok),
        "convergence_ok": conv_ok,
        "pass": bool(slope_ok) and conv_ok,
    }


def _compute_verdicts(records, plan: SweepPlan, claims) -> dict:
    verdicts = {}
    if "claim1" in claims:
        verdicts["claim1"] = check_claim1(records, plan.T)
    if "claim2" in claims:
        verdicts["claim2"] = check_claim2(records, plan.T)
    if "claim3" in claims:
        verdicts["claim3"] = check_claim3(records).to_dict()
    if "gauss" in claims:
        verdicts["gauss"] = _gauss_verdict(plan.eps_list)
    return verdicts


def _verdict_passed(name: str, verdict) -> bool:
    if isinstance(verdict, list):
        return all(entry["pass"] for entry in verdict)
    return bool(verdict["pass"])


def cmd_sweep(ctx: dict, args) -> int:
    raw, plan, mode, claims = ctx["raw"], ctx["plan"], ctx["mode"], ctx["claims"]
    jobs = args.jobs or raw.get("jobs", 1)
    out = _out_dir(raw, args, "sweep")
    results = run_sweep(plan, mode=mode, jobs=jobs)
    summary = write_sweep(results, plan, mode, out)
    verdicts = _compute_verdicts(results, plan, claims)
    ok = all(_verdict_passed(name, v) for name, v in verdicts.items())
    _write_json(
        os.path.join(out, "verdicts.json"),
        {
            "config_hash": summary["config_hash"],
            "claims": claims,
            "verdicts": verdicts,
            "pass": ok,
        },
    )
    for name in claims:
        state = "pass" if _verdict_passed(name, verdicts[name]) else "FAIL"
        print(f"sweep: {name} {state}")
    print(f"sweep: wrote campaign to {out}")
    if not ok:
        failed = [n for n in claims if not _verdict_passed(n, verdicts[n])]
        print(f"sweep: verdict failure: {', '.join(failed)}", file=sys.stderr)
        return EXIT_VERDICT
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

_SUITE_RUNNERS = {
    "energy": run_energy_suite,
    "wave": run_wave_suite,
    "nullform": run_nullform_suite,
}

_NAME_TAG = re.compile(r"\[(\d+),(\d+)\]$")


def _replay_info(suite: str, report_name: str, grid: GridSpec) -> dict:
    m = _NAME_TAG.search(report_name)
    info = {"suite": suite, "grid": {"L": grid.L, "n": grid.n, "t_max": grid.t_max}}
    if m:
        info["seed"] = int(m.group(1))
        info["index"] = int(m.group(2))
    return info


def _recompute_entry(directory: str) -> dict:
    records, summary = load_sweep(directory)
    with open(os.path.join(directory, "verdicts.json")) as fh:
        stored = json.load(fh)
    p = summary["config"]["plan"]
    plan = SweepPlan(
        dim=p["dim"],
        M=p["M"],
        eps_list=tuple(p["eps_list"]),
        T=p["T"],
        probes=tuple(tuple(q) for q in p["probes"]),
        h_over_eps=p["h_over_eps"],
        cutoff=CutoffSpec(*p["cutoff"]),
    )
    fresh = _compute_verdicts(records, plan, stored["claims"])
    identical = json.loads(json.dumps(_jsonable(fresh))) == stored["verdicts"]
    return {
        "name": "recompute",
        "directory": str(directory),
        "identical": identical,
        "pass": identical,
    }


def cmd_verify(ctx: dict, args) -> int:
    raw, suites = ctx["raw"], ctx["suites"]
    seed = args.seed if args.seed is not None else raw["seed"]
    counts = raw.get("counts", {})
    out = _out_dir(raw, args, "verify")
    chash = config_hash({"command": "verify", **raw, "seed": seed})
    reports: list[dict] = []
    failures = 0

    for name in _RANDOM_SUITES:
        if name not in suites:
            continue
        if "suite_grid" in ctx:
            grid = ctx["suite_grid"]
        else:
            grid = GridSpec(L=2.56, n=256, t_max=0.64 if name == "nullform" else 0.24)
        t0 = time.time()
        reps = _SUITE_RUNNERS[name](counts[name], seed, grid)
        elapsed = time.time() - t0
        bad = [r for r in reps if not r.passed]
        failures += len(bad)
        worst = max(r.ratio for r in reps)
        print(
            f"verify: {name} suite: {len(reps)} reports, {len(bad)} failures, "
            f"worst ratio {worst:.4f} ({elapsed:.1f}s)"
        )
        for r in reps:
            entry = r.to_dict()
            if not r.passed:
                entry["replay"] = _replay_info(name, r.name, grid)
                print(f"verify: FAIL {json.dumps(entry, sort_keys=True)}", file=sys.stderr)
            reports.append(entry)

    if "refinement" in suites:
        factors = tuple(raw.get("refinement_factors", (1, 2, 4)))
        for idx in (0, 1, 2):
            rows = nullform_refinement(idx, factors=factors)
            ok = all(ratio <= slack for _, ratio, slack in rows)
            failures += 0 if ok else 1
            reports.append(
                {
                    "name": f"nullform_refinement[{idx}]",
                    "rows": [[int(n), float(r), float(s)] for n, r, s in rows],
                    "pass": ok,
                }
            )
            trend = "  ".join(f"n={n}: {r:.6f} <= {s:.4f}" for n, r, s in rows)
            print(f"verify: refinement[{idx}] {'pass' if ok else 'FAIL'}  {trend}")

    if "bootstrap" in suites:
        for M in raw.get("bootstrap_masses", [0.0, 1.0]):
            C, delta = bootstrap_threshold(M)
            reports.append(
                {
                    "name": f"bootstrap_threshold[M={M:g}]",
                    "C": float(C),
                    "delta": float(delta),
                    "pass": True,
                }
            )
            print(f"verify: bootstrap M={M:g}: C={C:.6f}, delta={delta:.6f}")

    if "recompute" in suites:
        entry = _recompute_entry(raw["recompute_dir"])
        failures += 0 if entry["pass"] else 1
        reports.append(entry)
        print(f"verify: recompute[{raw['recompute_dir']}] {'pass' if entry['pass'] else 'FAIL'}")

    payload = {
        "config_hash": chash,
        "seed": seed,
        "reports": reports,
        "failures": failures,
        "pass": failures == 0,
    }
    _write_json(os.path.join(out, "verify_report.json"), payload)
    print(f"verify: {len(reports)} reports, {failures} failures; report in {out}")
    return EXIT_OK if failures == 0 else EXIT_VERDICT


# ---------------------------------------------------------------------------
# norms
# ---------------------------------------------------------------------------


def cmd_norms(ctx: dict, args) -> int:
    raw, grid, cutoff = ctx["raw"], ctx["grid"], ctx["cutoff"]
    out = _out_dir(raw, args, "norms")
    eps_list = raw["eps_list"]
    s_values = raw.get("s_values", [-0.75, -0.5, -0.25, -0.1])
    chash = config_hash({"command": "norms", **raw})

    # midpoint samples dodge the node x = 0, so eps = 0 is allowed
    samples = [
        sample_midpoints(lambda x: chi(x, cutoff) * f_eps(x, e), grid) for e in eps_list
    ]
    s_cols = [f"H{s:g}" for s in s_values]
    rows = []
    for e, vals in zip(eps_list, samples):
        row = {
            "eps": e,
            "L1": lp_norm(vals, 1, grid, staggered=True),
            "L2": lp_norm(vals, 2, grid, staggered=True),
        }
        for s, col in zip(s_values, s_cols):
            row[col] = hs_norm(vals, s, grid, staggered=True)
        rows.append(row)
    diffs = []
    for k in range(len(eps_list) - 1):
        d = samples[k + 1] - samples[k]
        drow = {
            "eps_hi": eps_list[k],
            "eps_lo": eps_list[k + 1],
            "L2": lp_norm(d, 2, grid, staggered=True),
        }
        for s, col in zip(s_values, s_cols):
            drow[col] = hs_norm(d, s, grid, staggered=True)
        diffs.append(drow)

    import csv as _csv

    npath = os.path.join(out, "norms.csv")
    with open(npath, "w", newline="") as fh:
        fh.write(f"# config_hash={chash}\n")
        w = _csv.writer(fh)
        w.writerow(["eps", "L1", "L2", *s_cols])
        for row in rows:
            w.writerow([repr(float(row[k])) for k in ("eps", "L1", "L2", *s_cols)])
    dpath = os.path.join(out, "norm_diffs.csv")
    with open(dpath, "w", newline="") as fh:
        fh.write(f"# config_hash={chash}\n")
        w = _csv.writer(fh)
        w.writerow(["eps_hi", "eps_lo", "L2", *s_cols])
        for drow in diffs:
            w.writerow([repr(float(drow[k])) for k in ("eps_hi", "eps_lo", "L2", *s_cols)])
    _write_json(
        os.path.join(out, "norms.json"),
        {"config_hash": chash, "config": raw, "norms": rows, "differences": diffs},
    )

    header = "eps".ljust(12) + "L1".rjust(12) + "L2".rjust(12) + "".join(c.rjust(12) for c in s_cols)
    print("norms: " + header)
    for row in rows:
        line = f"{row['eps']:<12.4e}" + "".join(
            f"{row[k]:>12.5f}" for k in ("L1", "L2", *s_cols)
        )
        print("norms: " + line)
    for drow in diffs:
        line = f"{drow['eps_hi']:.1e}->{drow['eps_lo']:.1e}" + "".join(
            f"{drow[k]:>12.5f}" for k in ("L2", *s_cols)
        )
        print("norms: diff " + line)
    print(f"norms: wrote {npath}, {dpath}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# Entry point.
# ---------------------------------------------------------------------------

_DISPATCH = {
    "simulate": cmd_simulate,
    "sweep": cmd_sweep,
    "verify": cmd_verify,
    "norms": cmd_norms,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="maxdirac1d",
        description="Characteristic-grid runs, campaigns, and estimate checks "
        "for the reduced Maxwell-Dirac system.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    specs = {
        "simulate": "run one evolution and write snapshots + diagnostics",
        "sweep": "run an epsilon campaign and write verdicts",
        "verify": "run estimate suites and recompute persisted verdicts",
        "norms": "write initial-data norm tables",
    }
    for name, help_text in specs.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=True, metavar="PATH", help="JSON config file")
        p.add_argument("--out", metavar="DIR", help="output directory (overrides config)")
        if name == "simulate":
            p.add_argument(
                "--oracle",
                action="store_true",
                help="cross-check A_0 against the cone integral of |psi|^2",
            )
        if name == "sweep":
            p.add_argument("--jobs", type=int, metavar="N", help="parallel runs (overrides config)")
        if name == "verify":
            p.add_argument("--seed", type=int, metavar="S", help="suite seed (overrides config)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        ctx = load_config(args.config, args.command)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return _DISPATCH[args.command](ctx, args)
    except SolverAbort as exc:
        print(f"solver abort: {exc}", file=sys.stderr)
        return EXIT_ABORT


if __name__ == "__main__":
    sys.exit(main())
