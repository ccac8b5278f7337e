import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from wmcompress.pixelio import (
    BadMagicError,
    BadMaxvalError,
    Image,
    MalformedHeaderError,
    NonFiniteError,
    TruncatedDataError,
    ZeroDimensionError,
    from_real,
    load_pgm,
    save_pgm,
    to_real,
)

images = st.tuples(st.integers(1, 12), st.integers(1, 12)).flatmap(
    lambda hw: arrays(np.uint8, hw).map(Image)
)


def test_load_minimal_stream():
    img = load_pgm(b"P5\n2 2\n255\n" + bytes([10, 20, 30, 40]))
    assert (img.width, img.height) == (2, 2)
    assert img.tolist() == [10, 20, 30, 40]


def test_header_comments_and_whitespace():
    data = b"P5 # magic\n# full comment line\n  2\t\n 1 # dims\n255\n" + bytes([7, 9])
    assert load_pgm(data).tolist() == [7, 9]


@pytest.mark.parametrize(
    "data, exc",
    [
        (b"P6\n1 1\n255\n\x00", BadMagicError),
        (b"P2\n1 1\n255\n0", BadMagicError),
        (b"P5\n1 1\n65535\n\x00\x00", BadMaxvalError),
        (b"P5\n1 1\n100\n\x00", BadMaxvalError),
        (b"P5\n3 3\n255\n\x00\x01", TruncatedDataError),
        (b"P5\n1 1\n255", TruncatedDataError),
        (b"P5\n0 4\n255\n", ZeroDimensionError),
        (b"P5\n4 0\n255\n", ZeroDimensionError),
        (b"P5\nx 4\n255\n", MalformedHeaderError),
        (b"P5\n4", MalformedHeaderError),
    ],
)
def test_parse_errors_are_distinct(data, exc):
    with pytest.raises(exc):
        load_pgm(data)


def test_save_smallest_image():
    assert save_pgm(Image.from_list(1, 1, [0])) == b"P5\n1 1\n255\n\x00"


def test_save_row_major():
    img = Image.from_list(2, 2, [10, 20, 30, 40])
    assert save_pgm(img) == b"P5\n2 2\n255\n" + bytes([10, 20, 30, 40])
    wide = Image.from_list(3, 1, [1, 2, 3])
    assert save_pgm(wide) == b"P5\n3 1\n255\n\x01\x02\x03"


@settings(max_examples=50)
@given(images)
def test_round_trips(img):
    data = save_pgm(img)
    assert load_pgm(data) == img
    assert save_pgm(load_pgm(data)) == data
    assert from_real(to_real(img)) == img


def test_to_real_widening():
    img = Image.from_list(2, 1, [0, 255])
    assert to_real(img).tolist() == [[0.0, 255.0]]


@pytest.mark.parametrize(
    "value, expected",
    [(-3.2, 0), (260.7, 255), (127.5, 128), (127.49, 127), (0.5, 1), (-0.5, 0), (254.5, 255)],
)
def test_from_real_rounding_and_clamp(value, expected):
    assert from_real(np.array([[value]])).tolist() == [expected]


def test_from_real_rejects_non_finite():
    with pytest.raises(NonFiniteError):
        from_real(np.array([[1.0, np.nan]]))
    with pytest.raises(NonFiniteError):
        from_real(np.array([[np.inf]]))


@given(arrays(np.float64, (4, 5), elements=st.floats(-0.5, 255.49)))
def test_quantization_error_bound(plane):
    out = to_real(from_real(plane))
    assert np.all(np.abs(out - plane) <= 0.5)
    assert out.min() >= 0 and out.max() <= 255


def test_image_validation_and_immutability():
    with pytest.raises(ValueError):
        Image(np.array([[256]]))
    with pytest.raises(ValueError):
        Image(np.zeros((0, 3)))
    with pytest.raises(ValueError):
        Image.from_list(2, 2, [1, 2, 3])
    img = Image(np.zeros((2, 2), dtype=np.uint8))
    with pytest.raises(ValueError):
        img.pixels[0, 0] = 1
