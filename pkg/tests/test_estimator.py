import math

import numpy as np
import pytest

from irscrb.estimator import (
    AngleGrid,
    McConfig,
    _parabolic_offset,
    build_dictionary,
    ml_estimate,
    ml_statistic,
    run_monte_carlo,
)
from irscrb.geometry import AnglePair
from irscrb.signal_model import SnapshotBatch, effective_manifold, source_samples


def _grid_around(look, half_deg=0.5, step_deg=0.1):
    return AngleGrid.around(look, math.radians(half_deg), math.radians(step_deg))


def test_grid_validation():
    with pytest.raises(ValueError):
        AngleGrid(np.array([]), np.array([0.1]))
    with pytest.raises(ValueError):
        AngleGrid(np.array([0.2, 0.1]), np.array([0.1]))
    with pytest.raises(ValueError):
        AngleGrid(np.array([0.1]), np.array([2.0]))  # elevation beyond pi/2


def test_grid_around_clips_to_region():
    g = AngleGrid.around(AnglePair(0.0, 0.0), 0.2, 0.05)
    assert np.all(g.el_points >= 0.0)
    assert g.el_points[0] == pytest.approx(0.0)
    assert len(g.az_points) == 9
    assert g.size == len(g.az_points) * len(g.el_points)


def test_dictionary_matches_manifold_columns(default_loaded):
    s = default_loaded.scenario
    grid = _grid_around(default_loaded.look)
    d = build_dictionary(grid, s, default_loaded.weights)
    assert d.shape == (s.irs_spec.size, grid.size)
    # spot-check a few grid points against the manifold builder
    for ie, ia in ((0, 0), (3, 7), (len(grid.el_points) - 1, len(grid.az_points) - 1)):
        psi = AnglePair(float(grid.az_points[ia]), float(grid.el_points[ie]))
        col = effective_manifold(s, default_loaded.weights, [psi]).abar[:, 0]
        assert np.allclose(d[:, ie * len(grid.az_points) + ia], col, rtol=1e-10)


def test_noiseless_peak_recovers_grid_point(default_loaded):
    s = default_loaded.scenario
    grid = _grid_around(default_loaded.look)
    true = AnglePair(float(grid.az_points[4]), float(grid.el_points[6]))
    m = effective_manifold(s, default_loaded.weights, [true])
    batch = SnapshotBatch(m.abar @ source_samples(s), source_samples(s), 0)
    d = build_dictionary(grid, s, default_loaded.weights)
    est = ml_estimate(batch, d, grid, refinement="none")
    assert est.az == pytest.approx(true.az, abs=1e-12)
    assert est.el == pytest.approx(true.el, abs=1e-12)


def test_statistic_invariant_to_column_scale(default_loaded):
    s = default_loaded.scenario
    grid = _grid_around(default_loaded.look)
    m = effective_manifold(s, default_loaded.weights, [default_loaded.look])
    batch = SnapshotBatch(m.abar @ source_samples(s), source_samples(s), 0)
    d = build_dictionary(grid, s, default_loaded.weights)
    t1 = ml_statistic(batch, d)
    scales = np.exp(1j * np.linspace(0, 1, d.shape[1])) * 3.7
    t2 = ml_statistic(batch, d * scales[np.newaxis, :])
    assert np.allclose(t1, t2, rtol=1e-10)


def test_parabolic_offset_properties():
    assert _parabolic_offset(1.0, 2.0, 1.0) == pytest.approx(0.0)
    assert _parabolic_offset(1.0, 2.0, 1.5) > 0.0
    assert _parabolic_offset(1.5, 2.0, 1.0) < 0.0
    assert abs(_parabolic_offset(0.0, 1.0, 0.999999)) <= 1.0
    assert _parabolic_offset(1.0, 1.0, 1.0) == 0.0  # flat: keep grid point


def test_refinement_stays_within_one_cell(default_loaded):
    s = default_loaded.scenario
    grid = _grid_around(default_loaded.look)
    # true angle off-grid by 40% of a cell
    step = math.radians(0.1)
    true = AnglePair(default_loaded.look.az + 0.4 * step, default_loaded.look.el)
    m = effective_manifold(s, default_loaded.weights, [true])
    batch = SnapshotBatch(m.abar @ source_samples(s), source_samples(s), 0)
    d = build_dictionary(grid, s, default_loaded.weights)
    coarse = ml_estimate(batch, d, grid, refinement="none")
    refined = ml_estimate(batch, d, grid, refinement="parabolic")
    assert abs(refined.az - coarse.az) <= step
    assert abs(refined.az - true.az) < abs(coarse.az - true.az)


def test_dictionary_grid_mismatch_rejected(default_loaded):
    s = default_loaded.scenario
    grid = _grid_around(default_loaded.look)
    other = _grid_around(default_loaded.look, half_deg=0.3)
    d = build_dictionary(grid, s, default_loaded.weights)
    m = effective_manifold(s, default_loaded.weights, [default_loaded.look])
    batch = SnapshotBatch(m.abar @ source_samples(s), source_samples(s), 0)
    with pytest.raises(ValueError):
        ml_estimate(batch, d, other)


def test_mc_config_validation():
    with pytest.raises(ValueError):
        McConfig(0)
    with pytest.raises(ValueError):
        McConfig(10, refinement="spline")


def test_monte_carlo_deterministic(default_loaded):
    s = default_loaded.scenario
    grid = _grid_around(default_loaded.look)
    cfg = McConfig(trials=8, master_seed=99)
    r1 = run_monte_carlo(s, default_loaded.weights, default_loaded.look, grid, cfg)
    r2 = run_monte_carlo(s, default_loaded.weights, default_loaded.look, grid, cfg)
    assert r1 == r2
    # note: master seeds in the same aligned 8-block (e.g. 99 vs 100) yield
    # the same trial-seed set under XOR, so pick one far away
    r3 = run_monte_carlo(
        s, default_loaded.weights, default_loaded.look, grid, McConfig(trials=8, master_seed=4096)
    )
    assert r1.empirical_rmse_az != r3.empirical_rmse_az
