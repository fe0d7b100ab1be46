import numpy as np
import pytest
from scipy import stats

from tsmotif.errors import ParameterError
from tsmotif.scaling import dfa_alpha
from tsmotif.synth import (
    FbmSpec,
    MrwSpec,
    circulant_gaussian,
    fgn_autocovariance,
    generate_fbm,
    generate_fgn,
    generate_mrw,
    mrw_increments,
)


@pytest.mark.parametrize("h", [0.0, 1.0, -0.2, 1.5])
def test_invalid_hurst(h):
    with pytest.raises(ParameterError):
        FbmSpec(h, 100)
    with pytest.raises(ParameterError):
        MrwSpec(h, 100)


def test_invalid_lengths():
    with pytest.raises(ParameterError):
        FbmSpec(0.5, 1)
    with pytest.raises(ParameterError):
        MrwSpec(0.5, 100, correlation_length=0)
    with pytest.raises(ParameterError):
        MrwSpec(0.5, 100, correlation_length=101)
    with pytest.raises(ParameterError):
        MrwSpec(0.5, 100, intermittency=-0.1)


def test_fgn_autocovariance_brownian_case():
    acov = fgn_autocovariance(0.5, 10)
    assert acov[0] == pytest.approx(1.0)
    np.testing.assert_allclose(acov[1:], 0.0, atol=1e-15)


def test_circulant_sample_covariance_matches_target():
    # empirical covariance over many short draws vs the target covariance
    h, n, reps = 0.75, 32, 20000
    acov = fgn_autocovariance(h, n)
    rng = np.random.default_rng(1)
    draws = np.array([circulant_gaussian(acov, rng) for _ in range(reps)])
    emp = np.cov(draws, rowvar=False)
    for lag in range(6):
        diag = np.diagonal(emp, offset=lag).mean()
        assert diag == pytest.approx(acov[lag], abs=0.03)


def test_fgn_white_noise_lag1():
    x = generate_fgn(FbmSpec(0.5, 10_000, seed=3)).values
    r1 = np.corrcoef(x[:-1], x[1:])[0, 1]
    assert abs(r1) < 0.05


def test_fgn_deterministic():
    a = generate_fgn(FbmSpec(0.3, 5000, seed=11)).values
    b = generate_fgn(FbmSpec(0.3, 5000, seed=11)).values
    c = generate_fgn(FbmSpec(0.3, 5000, seed=12)).values
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)


def test_fgn_skewness_small():
    sk = [stats.skew(generate_fgn(FbmSpec(0.7, 10_000, seed=s)).values) for s in range(20)]
    assert abs(np.mean(sk)) < 0.1


def test_fgn_h08_dfa():
    x = generate_fgn(FbmSpec(0.8, 10_000, seed=5)).values
    assert dfa_alpha(x).alpha == pytest.approx(0.8, abs=0.05)


def test_fbm_is_running_sum():
    spec = FbmSpec(0.35, 4000, seed=9)
    noise = generate_fgn(spec).values
    walk = generate_fbm(spec).values
    assert walk.size == spec.length
    assert walk[0] == noise[0]
    np.testing.assert_allclose(np.diff(walk), noise[1:], rtol=0, atol=1e-12)


def test_fbm_brownian_alpha():
    walk = generate_fbm(FbmSpec(0.5, 10_000, seed=2)).values
    assert dfa_alpha(np.diff(walk)).alpha == pytest.approx(0.5, abs=0.05)


@pytest.mark.parametrize("h", [0.2, 0.5, 0.8])
def test_fbm_mean_alpha_tracks_hurst(h):
    alphas = [dfa_alpha(np.diff(generate_fbm(FbmSpec(h, 10_000, seed=s)).values)).alpha for s in range(10)]
    assert np.mean(alphas) == pytest.approx(h, abs=0.05)


def test_mrw_zero_intermittency_is_fgn():
    inc, omega, _ = mrw_increments(MrwSpec(0.4, 3000, intermittency=0.0, seed=4))
    assert np.array_equal(inc, generate_fgn(FbmSpec(0.4, 3000, seed=4)).values)
    assert np.all(omega == 0)
    walk = generate_mrw(MrwSpec(0.4, 3000, intermittency=0.0, seed=4)).values
    np.testing.assert_allclose(walk, np.cumsum(inc))


def test_mrw_deterministic_and_default_correlation_length():
    spec = MrwSpec(0.6, 2048, seed=8)
    assert spec.correlation_length == 2048
    assert np.array_equal(generate_mrw(spec).values, generate_mrw(spec).values)


def test_mrw_weight_normalization():
    # E[exp(2 omega)] = 1 by construction of the omega mean; averaged over
    # seeds since a single log-correlated draw fluctuates strongly
    means = []
    for s in range(40):
        _, omega, _ = mrw_increments(MrwSpec(0.5, 2**14, intermittency=0.06, correlation_length=256, seed=s))
        means.append(np.mean(np.exp(2 * omega)))
    assert np.mean(means) == pytest.approx(1.0, abs=0.05)


def test_mrw_h06_alpha():
    walk = generate_mrw(MrwSpec(0.6, 10_000, seed=21)).values
    assert dfa_alpha(np.diff(walk)).alpha == pytest.approx(0.6, abs=0.05)


def test_mrw_antipersistent_deviation():
    alphas = [dfa_alpha(np.diff(generate_mrw(MrwSpec(0.2, 10_000, seed=s)).values)).alpha for s in range(10)]
    assert np.mean(alphas) > 0.2 + 0.03
    assert all(a > 0.2 for a in alphas)


def test_mrw_persistent_tracks_hurst():
    alphas = [dfa_alpha(np.diff(generate_mrw(MrwSpec(0.5, 10_000, seed=s)).values)).alpha for s in range(10)]
    assert abs(np.mean(alphas) - 0.5) <= 0.05
