import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from tsmotif.embed import EmbeddingConfig, embed_series
from tsmotif.errors import ParameterError
from tsmotif.series import TimeSeries


def test_node_count_drops_d_times_tau():
    x = np.arange(10_000.0)
    assert embed_series(x, EmbeddingConfig(10, 5)).n == 9950


def test_one_dimensional():
    e = embed_series(TimeSeries([4.0, 7.0, 9.0]), EmbeddingConfig(1, 1))
    assert e.points.tolist() == [[4.0], [7.0]]


def test_two_dimensional():
    e = embed_series([1.0, 2.0, 3.0, 4.0], EmbeddingConfig(2, 1))
    assert e.points.tolist() == [[1.0, 2.0], [2.0, 3.0]]
    assert e.source_length == 4


def test_too_short():
    with pytest.raises(ParameterError):
        embed_series(np.arange(20.0), EmbeddingConfig(10, 2))


def test_bad_config():
    with pytest.raises(ParameterError):
        EmbeddingConfig(0, 1)
    with pytest.raises(ParameterError):
        EmbeddingConfig(3, 0)


@given(length=st.integers(2, 300), d=st.integers(1, 12), tau=st.integers(1, 25))
def test_count_and_columns(length, d, tau):
    x = np.random.default_rng(length).standard_normal(length)
    if length <= d * tau:
        with pytest.raises(ParameterError):
            embed_series(x, EmbeddingConfig(d, tau))
        return
    e = embed_series(x, EmbeddingConfig(d, tau))
    n = length - d * tau
    assert e.points.shape == (n, d)
    for k in range(d):
        np.testing.assert_array_equal(e.points[:, k], x[k * tau:k * tau + n])
