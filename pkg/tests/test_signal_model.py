import math

import numpy as np
import pytest

from irscrb.geometry import AnglePair
from irscrb.signal_model import (
    RankDeficientWarning,
    Scenario,
    Target,
    beamspace_matrix,
    effective_manifold,
    irs_direction_from_radar,
    irs_to_radar_channel,
    snr_of,
    source_samples,
    synthesize,
)


def test_channel_amplitude_and_rank(default_loaded):
    s = default_loaded.scenario
    f = irs_to_radar_channel(s.radar_array, s.irs_spec, s.irs_frame, s.radar_position, s.wavelength)
    assert f.shape == (50, 360)
    # lambda / (4 pi R) with R = |(-50, 100, 0)| = 111.8034 m
    expected = s.wavelength / (4 * math.pi * math.hypot(50.0, 100.0))
    assert np.abs(f[0, 0]) == pytest.approx(expected, rel=1e-12)
    assert expected == pytest.approx(8.8970e-6, rel=1e-4)
    sv = np.linalg.svd(f, compute_uv=False)
    assert sv[1] < 1e-12 * sv[0]  # line-of-sight channel is rank one


def test_beamspace_rows_are_unit_norm(default_loaded):
    s = default_loaded.scenario
    direction = irs_direction_from_radar(s.radar_array, s.radar_position, s.irs_frame.origin)
    for beams in (1, 3, 7):
        w = beamspace_matrix(s.radar_array, direction, beams, s.wavelength)
        assert w.shape == (beams, 50)
        assert np.allclose(np.linalg.norm(w, axis=1), 1.0)
    with pytest.raises(ValueError):
        beamspace_matrix(s.radar_array, direction, 0, s.wavelength)
    with pytest.raises(ValueError):
        beamspace_matrix(s.radar_array, direction, 51, s.wavelength)


def test_effective_column_norm_at_look(default_loaded):
    # At the design look the alignment gain is exactly L, so the column
    # carries the full coherent link budget amp * sqrt(M_R) * L.
    s = default_loaded.scenario
    m = effective_manifold(s, default_loaded.weights, [default_loaded.look])
    amp = s.wavelength / (4 * math.pi * math.hypot(50.0, 100.0))
    expected = amp * math.sqrt(50.0) * 360.0
    assert np.linalg.norm(m.abar[:, 0]) == pytest.approx(expected, rel=1e-9)


def test_manifold_derivatives_match_finite_differences(default_loaded):
    s = default_loaded.scenario
    w = default_loaded.weights
    psi = AnglePair(default_loaded.look.az + 0.01, default_loaded.look.el + 0.02)
    step = 1e-6
    m = effective_manifold(s, w, [psi])
    for col, (daz, dele) in ((0, (step, 0.0)), (1, (0.0, step))):
        plus = effective_manifold(s, w, [AnglePair(psi.az + daz, psi.el + dele)]).abar[:, 0]
        minus = effective_manifold(s, w, [AnglePair(psi.az - daz, psi.el - dele)]).abar[:, 0]
        fd = (plus - minus) / (2 * step)
        scale = np.max(np.abs(fd))
        assert np.max(np.abs(m.zbar[:, col] - fd)) / scale < 1e-5


def test_gain_orthogonality_at_look(default_loaded):
    # Centered phase reference: at the look direction the derivative columns
    # carry no component along the steering column itself.
    s = default_loaded.scenario
    m = effective_manifold(s, default_loaded.weights, [default_loaded.look])
    a = m.abar[:, 0]
    for col in range(2):
        cos = abs(np.vdot(a, m.zbar[:, col])) / (
            np.linalg.norm(a) * np.linalg.norm(m.zbar[:, col])
        )
        assert cos < 1e-10


def test_synthesize_is_seed_deterministic(default_loaded):
    s = default_loaded.scenario
    m = effective_manifold(s, default_loaded.weights, [default_loaded.look])
    b1 = synthesize(s, m, seed=123)
    b2 = synthesize(s, m, seed=123)
    b3 = synthesize(s, m, seed=124)
    assert np.array_equal(b1.observations, b2.observations)
    assert not np.array_equal(b1.observations, b3.observations)


def test_noise_statistics(default_loaded):
    s = default_loaded.scenario
    m = effective_manifold(s, default_loaded.weights, [default_loaded.look])
    batch = synthesize(s, m, seed=9)
    noise = batch.observations - m.abar @ batch.source_samples
    measured = np.mean(np.abs(noise) ** 2)
    assert measured == pytest.approx(s.noise_variance, rel=0.01)
    # circularity: real/imag parts each carry half the variance
    assert np.var(noise.real) == pytest.approx(s.noise_variance / 2, rel=0.02)
    assert np.var(noise.imag) == pytest.approx(s.noise_variance / 2, rel=0.02)


def test_source_samples_waveforms(default_loaded):
    s = default_loaded.scenario
    x = source_samples(s)
    assert x.shape == (1, s.snapshots)
    assert np.allclose(x, 1.0)
    import dataclasses

    s2 = dataclasses.replace(s, waveform="exponential", waveform_frequency=0.1)
    x2 = source_samples(s2)
    assert np.allclose(np.abs(x2), 1.0)
    assert not np.allclose(x2, x2[0, 0])


def test_snr_matches_definition(default_loaded):
    s = default_loaded.scenario
    m = effective_manifold(s, default_loaded.weights, [default_loaded.look])
    signal = m.abar @ source_samples(s)
    expected = 10 * math.log10(np.mean(np.abs(signal) ** 2) / s.noise_variance)
    assert snr_of(s, m) == pytest.approx(expected)


def test_snr_of_zero_signal(default_loaded):
    import dataclasses

    s = default_loaded.scenario
    silent = dataclasses.replace(
        s, targets=(Target(s.targets[0].position, 0.0),)
    )
    m = effective_manifold(silent, default_loaded.weights, [default_loaded.look])
    assert snr_of(silent, m) == float("-inf")


def test_duplicate_targets_warn(default_loaded):
    s = default_loaded.scenario
    psi = default_loaded.look
    with pytest.warns(RankDeficientWarning):
        effective_manifold(s, default_loaded.weights, [psi, psi])


def test_scenario_validation(default_loaded):
    import dataclasses

    s = default_loaded.scenario
    with pytest.raises(ValueError):
        dataclasses.replace(s, targets=())
    with pytest.raises(ValueError):
        dataclasses.replace(s, noise_variance=0.0)
    with pytest.raises(ValueError):
        dataclasses.replace(s, snapshots=0)
    with pytest.raises(ValueError):
        dataclasses.replace(s, beam_count=51)
    with pytest.raises(ValueError):
        dataclasses.replace(s, waveform="chirp")
