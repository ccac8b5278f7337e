import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from wmcompress.codec import ThresholdPolicy, compress_attack, hard_threshold, sparsity
from wmcompress.fixtures import list_fixtures, load_fixture
from wmcompress.metrics import psnr
from wmcompress.pixelio import Image
from wmcompress.transforms import CoefficientPlane, TransformKind, TransformSpec, forward

ALL = [TransformSpec.parse(k) for k in ("DWT2", "DCT2", "FFT2")]
ROUNDING_BOUND_DB = 20 * math.log10(255 / 0.5)

real_planes = arrays(np.float64, (4, 4), elements=st.floats(-500, 500))
thresholds = st.floats(0, 600)


def plane(values, kind=TransformKind.DCT2, levels=None):
    return CoefficientPlane(kind, values, levels)


def test_zero_threshold_is_identity(rng):
    c = plane(rng.normal(size=(8, 8)))
    out = hard_threshold(c, ThresholdPolicy(0, preserve_dc=False))
    np.testing.assert_array_equal(out.values, c.values)


def test_strict_less_than_boundary():
    c = plane([[1.0, -5.0, 3.0]])
    out = hard_threshold(c, ThresholdPolicy(3, preserve_dc=False))
    assert out.values.tolist() == [[0.0, -5.0, 3.0]]


def test_saturating_threshold_keeps_only_dc(rng):
    for kind in (TransformKind.DCT2, TransformKind.FFT2):
        c = plane(rng.normal(size=(4, 4)) + 5, kind)
        out = hard_threshold(c, ThresholdPolicy(1e9))
        assert np.count_nonzero(out.values) == 1
        assert out.values[0, 0] == c.values[0, 0]


def test_saturating_threshold_keeps_deepest_ll_band(rng):
    c = forward(rng.uniform(1, 255, size=(16, 16)), TransformSpec(TransformKind.DWT2, 2))
    out = hard_threshold(c, ThresholdPolicy(1e9)).values.copy()
    np.testing.assert_array_equal(out[:4, :4], c.values[:4, :4])
    out[:4, :4] = 0
    assert not out.any()


def test_complex_magnitude_is_used():
    c = plane([[10 + 0j, 3 + 4j, 1 + 1j]], TransformKind.FFT2)
    out = hard_threshold(c, ThresholdPolicy(5, preserve_dc=False)).values
    assert out.tolist() == [[10 + 0j, 3 + 4j, 0j]]


def test_sparsity_examples():
    assert sparsity(plane(np.zeros((3, 3)))) == 1.0
    assert sparsity(plane(np.ones((3, 3)))) == 0.0
    assert sparsity(plane([[0.0, 1.0], [0.0, 2.0]])) == 0.5


@given(real_planes, thresholds, thresholds, st.booleans())
def test_sparsity_monotone_in_threshold(values, t1, t2, keep_dc):
    lo, hi = sorted((t1, t2))
    c = plane(values)
    s_lo = sparsity(hard_threshold(c, ThresholdPolicy(lo, keep_dc)))
    s_hi = sparsity(hard_threshold(c, ThresholdPolicy(hi, keep_dc)))
    assert s_lo <= s_hi


@given(real_planes, thresholds, st.booleans())
def test_idempotent_and_survivors_unchanged(values, t, keep_dc):
    c = plane(values)
    p = ThresholdPolicy(t, keep_dc)
    once = hard_threshold(c, p)
    np.testing.assert_array_equal(hard_threshold(once, p).values, once.values)
    kept = once.values != 0
    np.testing.assert_array_equal(once.values[kept], c.values[kept])


def test_policy_validation():
    with pytest.raises(ValueError):
        ThresholdPolicy(-1)
    with pytest.raises(ValueError):
        ThresholdPolicy(float("nan"))


@pytest.mark.parametrize("name", list_fixtures())
@pytest.mark.parametrize("spec", ALL, ids=str)
def test_threshold_zero_rounding_bound(backend, name, spec):
    img = load_fixture(name)
    rep = compress_attack(img, spec, ThresholdPolicy(0))
    assert rep.psnr_db >= ROUNDING_BOUND_DB - 0.15
    assert rep.sparsity <= 1.0


@given(st.integers(0, 255), st.sampled_from([50.0, 300.0, 1e6]))
def test_constant_image_is_fixed_point(value, t):
    img = Image(np.full((8, 8), value))
    for spec in ALL:
        rep = compress_attack(img, spec, ThresholdPolicy(t))
        assert rep.output == img
        assert rep.psnr_db == math.inf


def test_default_grid_runs_on_256(camera):
    for t in (50, 100, 150, 200, 250, 300):
        for spec in ALL:
            rep = compress_attack(camera, spec, ThresholdPolicy(t))
            assert 0 <= rep.sparsity <= 1
            assert rep.output.shape == camera.shape
            assert rep.psnr_db == pytest.approx(psnr(camera, rep.output))


def test_dimension_errors_propagate():
    img = Image(np.zeros((12, 12), dtype=np.uint8))
    with pytest.raises(ValueError):
        compress_attack(img, TransformSpec.parse("FFT2"), ThresholdPolicy(1))
    compress_attack(img, TransformSpec.parse("DCT2"), ThresholdPolicy(1))
