import numpy as np
import pytest

from jacobi_inverse.core import SpectralData, TridiagonalMatrix
from jacobi_inverse.textio import FormatError, format_matrix, format_spectral, parse_matrix, parse_spectral


def test_matrix_roundtrip_is_exact():
    t = TridiagonalMatrix([0.1, -2.0 / 3.0, 1e-300], [np.pi, np.e])
    assert parse_matrix(format_matrix(t)) == t


def test_one_by_one_matrix():
    t = TridiagonalMatrix([4.0], [])
    assert parse_matrix(format_matrix(t)) == t


def test_spectral_roundtrip_with_comments():
    d = SpectralData([0.0, 2.0], [0.6, 0.8])
    text = "# header\n\n" + format_spectral(d)
    assert parse_spectral(text) == d


@pytest.mark.parametrize(
    "text",
    [
        "",
        "x\n1\n",
        "2\n1 2\n",
        "2\n1 2\n3 4\n",
        "2\n1\n3\n",
        "2\n1 2\nz\n",
        "2\n1 2\n3\nextra\n",
    ],
)
def test_malformed_matrix(text):
    with pytest.raises(FormatError):
        parse_matrix(text)


def test_malformed_spectral():
    with pytest.raises(FormatError):
        parse_spectral("2\n0 1\n0.5\n")
