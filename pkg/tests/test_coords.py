import numpy as np
import pytest

from conftest import jacobi_samples
from jacobi_inverse.coords import (
    apply_transposition,
    beta_to_w,
    build_B,
    build_L,
    initial_permutation,
    reversal_data,
    w_to_beta,
)
from jacobi_inverse.core import BidiagonalData, Permutation, SpectralData
from jacobi_inverse.errors import BoundaryPoint, SingularTransposition
from jacobi_inverse.spectral import norming_constants


def _random_pi(n, g):
    return Permutation(tuple(int(i) for i in g.permutation(n)))


def test_beta_roundtrip():
    g = np.random.default_rng(1)
    for T in jacobi_samples(60, 2, 8, seed=11):
        d = norming_constants(T)
        back = beta_to_w(w_to_beta(d, _random_pi(d.n, g)))
        assert np.array_equal(back.lam, d.lam)
        assert np.allclose(back.w, d.w, rtol=1e-9)


def test_L_conjugates_spectrum_to_B():
    g = np.random.default_rng(2)
    for _ in range(30):
        n = int(g.integers(2, 7))
        lam = np.sort(g.standard_normal(n))
        pi = _random_pi(n, g)
        bd = BidiagonalData(pi, lam[list(pi.map)], g.standard_normal(n - 1))
        L = build_L(bd, 1)
        B = np.linalg.solve(L, np.diag(bd.lambda_pi) @ L)
        assert np.allclose(B, build_B(bd, 1), atol=1e-9)


def test_L_entries():
    bd = BidiagonalData(Permutation.identity(3), [0.0, 1.0, 3.0], [2.0, 5.0])
    L = build_L(bd, 2)
    assert L[1, 0] == pytest.approx(4.0 / 1.0)
    assert L[2, 1] == pytest.approx(25.0 / 2.0)
    assert L[2, 0] == pytest.approx(25.0 / 2.0 * 4.0 / 3.0)
    assert np.array_equal(np.diag(L), np.ones(3))


def test_reversal_weights_match_reversed_matrix():
    for T in jacobi_samples(60, 1, 12, seed=12):
        got = reversal_data(norming_constants(T))
        want = norming_constants(T.reversed())
        assert np.allclose(got.w, want.w, rtol=1e-7, atol=1e-14)


def test_transposition_matches_direct_chart():
    g = np.random.default_rng(3)
    for T in jacobi_samples(40, 2, 8, seed=13):
        d = norming_constants(T)
        pi = _random_pi(d.n, g)
        k = int(g.integers(0, d.n - 1))
        moved = apply_transposition(w_to_beta(d, pi), k)
        direct = w_to_beta(d, pi.transposed(k))
        assert moved.pi == direct.pi
        assert np.allclose(moved.beta, direct.beta, rtol=1e-8)


def test_transposition_errors():
    bd = BidiagonalData(Permutation.identity(3), [0.0, 1.0, 2.0], [0.0, 1.0])
    with pytest.raises(SingularTransposition):
        apply_transposition(bd, 0)
    with pytest.raises(IndexError):
        apply_transposition(bd, 2)
    with pytest.raises(BoundaryPoint):
        beta_to_w(bd)


def test_initial_permutation_sorts_weights():
    d = SpectralData([0.0, 1.0, 2.0], [0.2, 0.9, 0.2])
    assert initial_permutation(d).map == (1, 0, 2)
