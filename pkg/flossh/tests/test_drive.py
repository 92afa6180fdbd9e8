# 786
# Flossh source: test_drive.py
#   This file is subject to the terms and conditions defined in
#   file 'LICENSE', which is part of this source code package.


import pytest  # noqa
import numpy as np
from fractions import Fraction

from flossh.common import ContractError
from flossh.lattice import ChainGeometry
from flossh.drive import (
    DriveSpec,
    DriveKind,
    commensurate_ratio,
    field_profile,
    field_samples,
    frame_defect,
    hopping_modulations,
    phase_integral,
)


def test_drive_validation():
    with pytest.raises(ContractError, match="c > 0"):
        DriveSpec(DriveKind.GAUSSIAN, 1.0, 10.0)
    with pytest.raises(ContractError, match="omega_env"):
        DriveSpec(DriveKind.BEATING, 1.0, 10.0, omega_env=10.0)
    with pytest.raises(ContractError, match="omega_env"):
        DriveSpec(DriveKind.BEATING, 1.0, 10.0)
    with pytest.raises(ContractError, match="^g "):
        DriveSpec(DriveKind.MONOCHROMATIC, -0.1)
    with pytest.raises(ContractError, match="omega_drive"):
        DriveSpec(DriveKind.MONOCHROMATIC, 1.0, 0.0)
    with pytest.raises(ContractError, match="Unknown drive kind"):
        DriveSpec("laser")
    d = DriveSpec("Gaussian", 2.0, c=4.0)
    assert d.kind == DriveKind.GAUSSIAN
    assert d.gamma == 2.5
    assert d.with_g(3.0).g == 3.0 and d.g == 2.0
    assert str(d) == "gaussian[g=2.0; Ω=10.0; c=4.0]"


def test_base_frequency():
    assert DriveSpec(DriveKind.MONOCHROMATIC).base_frequency == 10.0
    assert DriveSpec(DriveKind.GAUSSIAN, c=5.0).base_frequency == 10.0
    # Ω₊/Ω₋ = 15/5
    assert DriveSpec(DriveKind.BEATING, omega_env=5.0).base_frequency == 5.0
    # Ω₊/Ω₋ = 12/8 = 3/2
    d = DriveSpec(DriveKind.BEATING, omega_env=2.0)
    assert d.base_frequency == 4.0
    assert abs(d.base_period - np.pi / 2) < 1e-15
    assert d.is_periodic
    assert not DriveSpec(DriveKind.GAUSSIAN, c=5.0).is_periodic
    assert not DriveSpec(DriveKind.BEATING, omega_env=np.sqrt(2)).is_periodic


def test_commensurate_ratio():
    assert commensurate_ratio(15.0, 5.0) == Fraction(3)
    assert commensurate_ratio(12.0, 8.0) == Fraction(3, 2)
    assert commensurate_ratio(np.pi, 1.0) is None
    # Phase drift 2π·2e-8 over one period is accepted, 2π·1e-6 is not
    assert commensurate_ratio(10.0 + 1e-7, 10.0 - 1e-7) == Fraction(1)
    assert commensurate_ratio(1.0 + 1e-6, 1.0) is None
    assert commensurate_ratio(1.0 + 1e-6, 1.0, tol=1e-5) == Fraction(1)


def test_field_profile(drives):
    for d in drives:
        assert field_profile(d, 0.0) == 1.0
    mono, gauss, beat = drives
    t = np.linspace(-1, 1, 101)
    assert np.allclose(field_profile(mono, t), np.cos(10 * t))
    assert np.allclose(field_profile(gauss, t), np.exp(-t**2) * np.cos(10 * t))
    assert np.allclose(field_profile(beat, t), np.cos(5 * t) * np.cos(10 * t))


def test_phase_integral(drives):
    # ds/dt = Ω E(t)/E₀ and s(0) = 0
    t = np.linspace(-0.9, 1.3, 23)
    h = 1e-5
    for d in drives:
        assert abs(phase_integral(d, 0.0)) < 1e-15
        ds = (phase_integral(d, t + h) - phase_integral(d, t - h)) / (2 * h)
        assert np.max(np.abs(ds - d.omega_drive * field_profile(d, t))) < 1e-5, d
    shifted = DriveSpec(DriveKind.MONOCHROMATIC, 1.0, phase_offset=0.25)
    assert phase_integral(shifted, 0.0) == 0.25


def test_hopping_modulations(small_chain, drives):
    t = np.linspace(0, 1, 17)
    for d in drives:
        p_v, p_w = hopping_modulations(d, small_chain, t)
        assert np.allclose(np.abs(p_v), 1.0) and np.allclose(np.abs(p_w), 1.0)
    p_v, p_w = hopping_modulations(drives[0], small_chain, 0.3)
    s = np.sin(3.0)
    assert abs(p_v - np.exp(-0.6j * s)) < 1e-15
    assert abs(p_w - np.exp(0.4j * s)) < 1e-15


def test_frame_equivalence(drives):
    for r in (0.0, 0.5):
        geom = ChainGeometry(4, 0.3, 1.0, r)
        for d in drives:
            for t in d.window_start() + np.linspace(0, d.base_period, 11):
                assert frame_defect(geom, d, t) < 1e-6, (d, t)


def test_window_start():
    gauss = DriveSpec(DriveKind.GAUSSIAN, c=5.0)
    period = 2 * np.pi / 10
    assert abs(gauss.window_start() + period / 2) < 1e-15
    shifted = DriveSpec(DriveKind.GAUSSIAN, c=5.0, window_offset=0.25)
    assert abs(shifted.window_start() + period / 4) < 1e-15
    assert DriveSpec(DriveKind.MONOCHROMATIC).window_start() == 0.0


def test_field_samples(drives):
    mono, gauss, _ = drives
    t, e = field_samples(gauss, 101)
    assert abs(t[0] + 3 / gauss.gamma) < 1e-15 and abs(t[-1] - 3 / gauss.gamma) < 1e-15
    assert np.allclose(e, e[::-1])
    t, e = field_samples(mono, 65, periods=2.0)
    assert len(t) == 65 and abs(t[-1] - 2 * mono.base_period) < 1e-15
    with pytest.raises(ContractError):
        field_samples(mono, 1)
