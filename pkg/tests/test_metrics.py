import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from gtcodec.codec import SparseCoefficients, keep_top_k, densify
from gtcodec.errors import EmptyInput, LengthMismatch, ZeroEnergy, ZeroReference
from gtcodec.metrics import energy_retained, mse, psnr, report
from gtcodec.transforms import ALL_KINDS, basis_for, forward, inverse


def test_mse_examples():
    x = np.array([0.1, -0.2, 0.3])
    assert mse(x, x) == 0.0
    assert mse([1, 0], [0, 0]) == 0.5
    assert mse([1, -1], [-1, 1]) == 4.0


def test_mse_errors():
    with pytest.raises(LengthMismatch):
        mse([1, 2], [1])
    with pytest.raises(EmptyInput):
        mse([], [])


def test_psnr_examples():
    assert psnr([0.5, 0.1], [0.5, 0.1]) == math.inf
    assert psnr([1, 0], [0, 0]) == pytest.approx(3.0103, abs=5e-5)
    assert psnr([1, 0], [0, 0]) == pytest.approx(10 * math.log10(2), rel=1e-15)


def test_psnr_zero_reference():
    with pytest.raises(ZeroReference):
        psnr([0, 0], [0, 1])


@settings(max_examples=50, deadline=None)
@given(
    x=arrays(np.float64, 32, elements=st.floats(-1, 1)),
    noise=arrays(np.float64, 32, elements=st.floats(-0.1, 0.1)),
    scale=st.floats(1e-3, 1e3).flatmap(lambda v: st.sampled_from([v, -v])),
)
def test_psnr_scale_invariant(x, noise, scale):
    if np.max(np.abs(x)) < 1e-6 or np.max(np.abs(noise)) < 1e-6:
        return
    assert psnr(scale * x, scale * (x + noise)) == pytest.approx(psnr(x, x + noise), abs=1e-9)


def test_erp_examples():
    full = np.array([3.0, 4.0])
    assert energy_retained(full, SparseCoefficients(2, [1], [4.0])) == pytest.approx(64.0, abs=1e-12)
    assert energy_retained(full, keep_top_k(full, 2)) == 100.0
    assert energy_retained(full, SparseCoefficients(2, [], [])) == 0.0


def test_erp_zero_energy():
    with pytest.raises(ZeroEnergy):
        energy_retained(np.zeros(4), SparseCoefficients(4, [0], [0.0]))


@pytest.mark.parametrize("kind", ALL_KINDS, ids=str)
def test_erp_parseval_bridge(kind, rng):
    B = basis_for(kind, 64)
    for _ in range(10):
        s = rng.standard_normal(64) * np.exp(-np.arange(64) / 20)
        c = forward(B, s)
        kept = keep_top_k(c, 8)
        s_hat = inverse(B, densify(kept))
        signal_domain = 100.0 * np.sum(s_hat**2) / np.sum(s**2)
        assert energy_retained(c, kept) == pytest.approx(signal_domain, rel=1e-9)


def test_erp_monotone_in_k(rng):
    c = rng.standard_normal(32)
    erps = [energy_retained(c, keep_top_k(c, k)) for k in range(1, 33)]
    assert all(a <= b for a, b in zip(erps, erps[1:]))
    assert erps[-1] == 100.0


def test_report():
    r = report([1, 0], [0, 0], [3.0, 4.0], [4.0])
    assert r.mse == 0.5 and r.erp_pct == pytest.approx(64.0)
