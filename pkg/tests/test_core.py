import numpy as np
import pytest

from jacobi_inverse.core import (
    BidiagonalData,
    Permutation,
    SpectralData,
    TridiagonalMatrix,
    dense_of,
    error_metric,
    validate_spectral,
)
from jacobi_inverse.errors import (
    DimensionMismatch,
    DuplicateOrUnsortedSpectrum,
    NonpositiveNormingConstant,
    NotNormalized,
)


def test_permutation_one_line_and_str():
    p = Permutation.from_one_line((2, 3, 1))
    assert p.map == (1, 2, 0)
    assert str(p) == "2 3 1"
    assert p.one_line() == (2, 3, 1)


def test_permutation_matrix_matches_composition():
    p = Permutation((1, 2, 0))
    q = Permutation((2, 0, 1))
    assert np.array_equal(p.compose(q).matrix(), p.matrix() @ q.matrix())
    assert p.compose(p.inverse()) == Permutation.identity(3)


def test_permutation_matrix_maps_basis():
    p = Permutation((2, 0, 1))
    e0 = np.eye(3)[:, 0]
    assert np.argmax(p.matrix() @ e0) == p(0)


def test_transposed_swaps_positions():
    assert Permutation((0, 1, 2)).transposed(1).map == (0, 2, 1)


def test_rejects_non_permutation():
    with pytest.raises(ValueError):
        Permutation((0, 0, 1))


def test_tridiagonal_shape_checks():
    with pytest.raises(DimensionMismatch):
        TridiagonalMatrix([1.0, 2.0], [1.0, 2.0])
    t = TridiagonalMatrix([1.0], [])
    assert t.n == 1 and t.is_jacobi()


def test_tridiagonal_is_immutable():
    t = TridiagonalMatrix([1.0, 2.0], [3.0])
    with pytest.raises(ValueError):
        t.a[0] = 5.0


def test_dense_reversed_canonical():
    t = TridiagonalMatrix([1.0, 2.0, 3.0], [-4.0, 5.0])
    D = dense_of(t)
    assert np.allclose(D, D.T)
    R = np.eye(3)[::-1]
    assert np.array_equal(t.reversed().dense(), R @ D @ R)
    assert t.canonical().is_jacobi() and not t.is_jacobi()


def test_error_metric():
    t1 = TridiagonalMatrix([1.0, 2.0], [1.0])
    t2 = TridiagonalMatrix([1.5, 2.0], [0.0])
    assert error_metric(t1, t2) == 1.5
    with pytest.raises(DimensionMismatch):
        error_metric(t1, TridiagonalMatrix([1.0], []))


def test_validate_spectral():
    d = SpectralData([0.0, 1.0], [1.0, 1.0 + 1e-10])
    with pytest.raises(NotNormalized):
        validate_spectral(d)
    s = 2**-0.5
    ok = validate_spectral(SpectralData([0.0, 1.0], [s, s * (1 + 1e-10)]))
    assert np.isclose(np.sum(ok.w**2), 1.0, rtol=0, atol=1e-15)
    with pytest.raises(DuplicateOrUnsortedSpectrum):
        validate_spectral(SpectralData([1.0, 0.0], [s, s]))
    with pytest.raises(NonpositiveNormingConstant):
        validate_spectral(SpectralData([0.0, 1.0], [1.0, 0.0]))


def test_bidiagonal_data_checks():
    pi = Permutation((1, 0))
    bd = BidiagonalData(pi, [2.0, 1.0], [0.5])
    assert np.array_equal(bd.base_spectrum(), [1.0, 2.0])
    with pytest.raises(DuplicateOrUnsortedSpectrum):
        BidiagonalData(pi, [1.0, 1.0], [0.5])
    with pytest.raises(DimensionMismatch):
        BidiagonalData(pi, [2.0, 1.0], [0.5, 1.0])
