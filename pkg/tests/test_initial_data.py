"""Data family, cutoff, grids, and the discrete norms."""

import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from maxdirac1d import (
    CutoffSpec,
    DataFamily,
    GridSpec,
    PotentialMode,
    chi,
    f_eps,
    hs_norm,
    lp_norm,
    potential_data,
    spinor_datum,
)
from maxdirac1d.initial_data import field_to_csv, sample_midpoints, sample_nodes, snapshot_to_json


def test_chi_plateau_and_support():
    c = CutoffSpec()
    xs = np.linspace(-3.0, 3.0, 1201)
    vals = chi(xs, c)
    assert np.all(vals[np.abs(xs) <= 1.0] == 1.0)
    assert np.all(vals[np.abs(xs) >= 2.0] == 0.0)
    assert vals.min() >= 0.0 and vals.max() <= 1.0
    right = vals[(xs >= 1.0) & (xs <= 2.0)]
    assert np.all(np.diff(right) <= 1e-15)


def test_chi_scalar_and_custom_cutoff():
    c = CutoffSpec(inner=0.5, outer=3.0)
    assert chi(0.25, c) == 1.0
    assert chi(3.5, c) == 0.0
    assert 0.0 < chi(1.75, c) < 1.0


def test_f_eps_values():
    assert f_eps(0.0, 0.1) == pytest.approx(0.1 ** -0.5)
    assert f_eps(3.0, 0.0) == pytest.approx(3.0 ** -0.5)
    with pytest.raises(ValueError):
        f_eps(0.0, 0.0)
    with pytest.raises(ValueError):
        f_eps(1.0, -0.1)


@given(st.floats(1e-4, 1.0), st.floats(-2.0, 2.0), st.floats(-2.0, 2.0))
@settings(max_examples=60, deadline=None)
def test_f_eps_monotonicity(eps, x1, x2):
    # decreasing in |x|, and smaller eps never decreases the profile
    lo, hi = sorted([abs(x1), abs(x2)])
    assert f_eps(hi, eps) <= f_eps(lo, eps) + 1e-15
    assert f_eps(x1, eps) <= f_eps(x1, 0.5 * eps) + 1e-15


def test_grid_spec_basics():
    grid = GridSpec(L=2.56, n=512, t_max=0.2)
    assert grid.h == pytest.approx(0.01)
    assert grid.steps == 20
    assert grid.nodes().size == 513
    assert grid.midpoints().size == 512
    assert grid.nodes()[256] == 0.0


@pytest.mark.parametrize(
    "kwargs",
    [
        {"L": 2.56, "n": 512, "t_max": 0.205},  # not a whole number of steps
        {"L": 2.56, "n": 511, "t_max": 0.2},  # odd n
        {"L": 2.56, "n": 2, "t_max": 0.0},  # too few cells
        {"L": -1.0, "n": 512, "t_max": 0.0},
        {"L": 2.56, "n": 512, "t_max": -0.1},
    ],
)
def test_grid_spec_rejects(kwargs):
    with pytest.raises(ValueError):
        GridSpec(**kwargs)


def test_ensure_support():
    grid = GridSpec(L=2.2, n=220, t_max=0.5)
    with pytest.raises(ValueError):
        grid.ensure_support(2.0)
    GridSpec(L=2.6, n=260, t_max=0.5).ensure_support(2.0)


def test_data_family_validation():
    with pytest.raises(ValueError):
        DataFamily(dim=4, eps=0.1)
    with pytest.raises(ValueError):
        DataFamily(dim=2, eps=-0.1)
    with pytest.raises(ValueError):
        DataFamily(dim=2, eps=0.1, M=-1.0)
    with pytest.raises(ValueError):
        DataFamily(dim=2, eps=0.0, potential_mode=PotentialMode.CONSTRAINED)
    fam = DataFamily(dim=2, eps=0.1, potential_mode="constrained")
    assert fam.potential_mode is PotentialMode.CONSTRAINED


def test_spinor_datum_shape_and_value():
    grid = GridSpec(L=2.56, n=256, t_max=0.0)
    fam = DataFamily(dim=2, eps=0.1)
    u, v = spinor_datum(fam, grid)
    x = grid.nodes()
    assert u.shape == (1, 257) and v.shape == (1, 257)
    assert np.array_equal(v, np.zeros_like(v))
    assert np.allclose(u[0], chi(x, fam.cutoff) * f_eps(x, 0.1))
    u3, v3 = spinor_datum(DataFamily(dim=3, eps=0.1), grid)
    assert u3.shape == (2, 257)
    assert np.array_equal(u3[1], np.zeros(257))
    assert np.array_equal(v3, np.zeros_like(v3))


def test_potential_data_zero_mode():
    grid = GridSpec(L=2.56, n=256, t_max=0.0)
    a, b = potential_data(DataFamily(dim=2, eps=0.1), grid)
    assert a.shape == (3, 257) and b.shape == (3, 257)
    assert not a.any() and not b.any()


@pytest.mark.parametrize("n", [512, 1024])
def test_constrained_data_discrete_gauss_law(n):
    """On the inner ball the centered difference of the A_1 rate matches the
    charge density at second order."""
    eps = 0.1
    grid = GridSpec(L=2.56, n=n, t_max=0.0)
    fam = DataFamily(dim=1, eps=eps, potential_mode=PotentialMode.CONSTRAINED)
    a, b = potential_data(fam, grid)
    assert not a.any()
    assert not b[0].any()
    x = grid.nodes()
    h = grid.h
    dxb1 = (b[1][2:] - b[1][:-2]) / (2.0 * h)
    rho = f_eps(x, eps) ** 2
    inner = np.abs(x[1:-1]) <= 0.9
    err = np.abs(dxb1 - rho[1:-1])[inner].max()
    assert err <= 200.0 * h * h


def test_constrained_rate_symmetry():
    # on the plateau b_1(x) + b_1(-x) = log(eps^2 + x^2 - x^2) = 2 log eps
    grid = GridSpec(L=2.56, n=512, t_max=0.0)
    fam = DataFamily(dim=2, eps=0.05, potential_mode=PotentialMode.CONSTRAINED)
    _, b = potential_data(fam, grid)
    x = grid.nodes()
    core = np.abs(x) <= 1.0
    vals = b[1][core]
    assert np.allclose(vals + vals[::-1], 2.0 * np.log(0.05), atol=1e-12)
    assert b[1][x == 0.0] == pytest.approx(np.log(0.05))


def test_sampling_helpers():
    grid = GridSpec(L=2.0, n=8, t_max=0.0)
    nodes = sample_nodes(lambda x: x, grid)
    mids = sample_midpoints(lambda x: x, grid)
    assert nodes.size == 9 and mids.size == 8
    assert mids[0] == pytest.approx(-2.0 + 0.25)


def test_lp_norm_exact_on_hats():
    grid = GridSpec(L=2.56, n=512, t_max=0.0)
    x = grid.nodes()
    hat = np.clip(1.5 * (1.0 - np.abs(x - 0.2) / 0.25), 0.0, None)
    # hat area = amp * width; trapezoid is exact for piecewise linear
    assert lp_norm(hat, 1, grid) == pytest.approx(1.5 * 0.25, abs=1e-14)
    with pytest.raises(ValueError):
        lp_norm(hat, 0.5, grid)


def test_hs_norm_limits():
    grid = GridSpec(L=2.5, n=2048, t_max=0.0)
    vals = sample_midpoints(lambda x: np.exp(-8.0 * x * x), grid)
    l2 = lp_norm(vals, 2, grid, staggered=True)
    assert hs_norm(vals, -1e-4, grid, staggered=True) == pytest.approx(l2, rel=1e-3)
    # weight (1 + xi^2)^s decreases with |s|
    assert hs_norm(vals, -0.5, grid, staggered=True) < hs_norm(vals, -0.25, grid, staggered=True)
    with pytest.raises(ValueError):
        hs_norm(vals, 0.5, grid, staggered=True)
    with pytest.raises(ValueError):
        hs_norm(vals[:-1], -0.5, grid, staggered=True)


def test_singular_profile_differences_shrink():
    """The eps -> 0 limit is Cauchy in negative-order norms on midpoint
    samples even though the L^2 norms diverge."""
    grid = GridSpec(L=2.5, n=4096, t_max=0.0)
    eps_list = [1e-2, 1e-3, 1e-4]
    cutoff = CutoffSpec()
    samples = [sample_midpoints(lambda x: chi(x, cutoff) * f_eps(x, e), grid) for e in eps_list]
    l2 = [lp_norm(s, 2, grid, staggered=True) for s in samples]
    assert l2[0] < l2[1] < l2[2]
    d1 = hs_norm(samples[1] - samples[0], -0.5, grid, staggered=True)
    d2 = hs_norm(samples[2] - samples[1], -0.5, grid, staggered=True)
    assert d2 < d1


def test_field_io_roundtrip(tmp_path):
    grid = GridSpec(L=2.0, n=16, t_max=0.0)
    x = grid.nodes()
    path = tmp_path / "field.csv"
    field_to_csv(path, x, {"a": x**2, "b": -x}, config_hash="deadbeef")
    text = path.read_text().splitlines()
    assert text[0] == "# config_hash=deadbeef"
    assert text[1].split(",")[0] == "x"
    data = np.array([[float(v) for v in line.split(",")] for line in text[2:]])
    assert np.array_equal(data[:, 0], x)
    assert np.array_equal(data[:, 1], x**2)

    jpath = tmp_path / "snap.json"
    snapshot_to_json(jpath, grid, 0.1, {"a": x**2})
    payload = json.loads(jpath.read_text())
    assert payload["eps"] == 0.1
    assert len(payload["fields"]["a"]) == x.size
