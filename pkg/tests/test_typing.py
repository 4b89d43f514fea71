"""Tests."""

import numpy as np

from wabc.random import RandomStream
from wabc.typing import FloatArray, IntArray


def test_array_aliases():
    """Test that the array aliases name the dtypes used by the library."""
    assert FloatArray.__args__[1].__args__[0] is np.float64
    assert IntArray.__args__[1].__args__[0] is np.intp


def test_stream_id_is_int_tuple():
    """Test that stream ids are normalized to tuples of int."""
    stream = RandomStream(1, [np.int64(3), 4])
    assert stream.stream_id == (3, 4)
    assert all(type(i) is int for i in stream.stream_id)
