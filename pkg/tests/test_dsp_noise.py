"""Colored-noise generator: determinism and PSD slope oracle."""

import numpy as np
import pytest
from scipy import signal, stats

from hearstream.dsp import colored_noise
from hearstream.errors import ConfigError


def psd_slope_db_per_decade(x):
    """Welch PSD regression oracle: slope of 10*log10(PSD) vs log10(f)."""
    freqs, psd = signal.welch(x, fs=1.0, nperseg=8192)
    band = (freqs >= 1e-3) & (freqs <= 1e-1)
    fit = stats.linregress(np.log10(freqs[band]), 10.0 * np.log10(psd[band]))
    return fit.slope


@pytest.mark.parametrize("kind", ["white", "pink", "brown"])
def test_deterministic_under_seed(kind):
    a = colored_noise(kind, 4096, seed=123)
    b = colored_noise(kind, 4096, seed=123)
    np.testing.assert_array_equal(a, b)
    c = colored_noise(kind, 4096, seed=124)
    assert np.any(a != c)


def test_normalized_moments():
    for kind in ("white", "pink", "brown"):
        x = colored_noise(kind, 1 << 16, seed=9)
        assert abs(x.mean()) < 1e-12
        assert x.std() == pytest.approx(1.0, abs=1e-12)


def test_scaled_white_std_stays_in_configured_range():
    rng = np.random.default_rng(42)
    for _ in range(20):
        scale = rng.uniform(0.0, 0.002)
        x = scale * colored_noise("white", 80000, seed=rng.integers(2**32))
        assert 0.0 <= x.std() < 0.002


def test_white_slope_flat():
    x = colored_noise("white", 1 << 20, seed=0)
    assert abs(psd_slope_db_per_decade(x)) < 1.0


def test_pink_slope():
    x = colored_noise("pink", 1 << 20, seed=1)
    assert psd_slope_db_per_decade(x) == pytest.approx(-10.0, abs=1.5)


def test_brown_slope():
    x = colored_noise("brown", 1 << 20, seed=2)
    assert psd_slope_db_per_decade(x) == pytest.approx(-20.0, abs=2.0)


def test_unknown_kind_rejected():
    with pytest.raises(ConfigError):
        colored_noise("violet", 128, seed=0)
