"""Bidiagonal coordinates.

For a permutation ``pi`` and the permuted spectrum ``lam_pi``, the
coordinates ``beta`` are the subdiagonal of the lower bidiagonal matrix
``B_pi = L_pi^{-1} diag(lam_pi) L_pi``. They relate to the norming
constants through

    beta_i = w_{i+1} / w_i * prod_{m <= i} (lam_{i+1} - lam_m)
                           / prod_{m <  i} (lam_i - lam_m)

with everything indexed in ``pi`` order (0-based here).

Kernels whose names start with an underscore work on arrays of shape
``(..., n)`` and perform every elementary operation through a
:class:`~jacobi_inverse.arith.ScalarMode`, so they run unchanged in
native precision, under digit emulation, with op counting, or on a batch
of permutations at once.
"""

from __future__ import annotations

import numpy as np

from .arith import as_mode
from .core import BidiagonalData, Permutation, SpectralData
from .errors import (
    BoundaryPoint,
    DimensionMismatch,
    DuplicateOrUnsortedSpectrum,
    InconsistentSigns,
    SingularTransposition,
)


def _w_to_beta(lam, w, ar):
    n = lam.shape[-1]
    if n == 1:
        return np.zeros(lam.shape[:-1] + (0,))
    ratio = ar.div(w[..., 1:], w[..., :-1])
    ratio = ar.mul(ratio, ar.sub(lam[..., 1:], lam[..., :-1]))
    ratio = np.array(ratio, dtype=float, copy=True)
    for m in range(n - 2):
        # factor (lam_{i+1} - lam_m) / (lam_i - lam_m) for every i > m
        num = ar.sub(lam[..., m + 2 :], lam[..., m : m + 1])
        den = ar.sub(lam[..., m + 1 : -1], lam[..., m : m + 1])
        ratio[..., m + 1 :] = ar.mul(ratio[..., m + 1 :], ar.div(num, den))
    return ratio


def _reversal_weights(lam, w, ar):
    """Unnormalized ``1 / (w_i prod_{j != i} |lam_i - lam_j|)``."""
    n = lam.shape[-1]
    prod = np.array(w, dtype=float, copy=True)
    for j in range(n):
        gap = np.abs(ar.sub(lam, lam[..., j : j + 1]))
        gap[..., j] = 1.0
        prod = ar.mul(prod, gap)
    return ar.div(1.0, prod)


def _normalize(v, ar):
    nrm = ar.sqrt(ar.sum(ar.mul(v, v)))
    return ar.div(v, nrm[..., None] if np.ndim(nrm) else nrm)


def _check_distinct(lam):
    if np.unique(lam).size != lam.size:
        raise DuplicateOrUnsortedSpectrum("eigenvalues must be distinct")


def w_to_beta(d: SpectralData, pi: Permutation, mode=None) -> BidiagonalData:
    """Bidiagonal coordinates of the data ``d`` in the chart of ``pi``."""
    if pi.n != d.n:
        raise DimensionMismatch("permutation size does not match the data")
    _check_distinct(d.lam)
    ar = as_mode(mode)
    idx = list(pi.map)
    lam_pi = d.lam[idx]
    beta = _w_to_beta(lam_pi, d.w[idx], ar)
    return BidiagonalData(pi, lam_pi, beta)


def beta_to_w(bd: BidiagonalData) -> SpectralData:
    """Recover ascending ``(lam, w)`` from bidiagonal data.

    The free scale ``w_1`` is fixed by unit normalization, done in the log
    domain so that coordinates spanning many orders of magnitude do not
    overflow.

    Raises
    ------
    BoundaryPoint
        If some ``beta_i`` is zero: the matrix is reducible and has no
        norming constants.
    InconsistentSigns
        If the recovered constants do not share a sign, or the data do not
        come from an ascending base spectrum.
    """
    lam = bd.lambda_pi
    beta = bd.beta
    n = bd.n
    if np.any(beta == 0):
        raise BoundaryPoint("a zero bidiagonal coordinate has no norming constants")
    logw = np.zeros(n)
    sign = np.ones(n)
    for i in range(n - 1):
        # w_{i+1}/w_i = beta_i prod_{m<i}(lam_i - lam_m) / prod_{m<=i}(lam_{i+1} - lam_m)
        up = lam[i] - lam[:i]
        down = lam[i + 1] - lam[: i + 1]
        logw[i + 1] = (
            logw[i]
            + np.log(abs(beta[i]))
            + np.sum(np.log(np.abs(up)))
            - np.sum(np.log(np.abs(down)))
        )
        s = np.sign(beta[i]) * np.prod(np.sign(up)) * np.prod(np.sign(down))
        sign[i + 1] = sign[i] * s
    logw -= logw.max()
    w_pi = sign * np.exp(logw)
    w_pi /= np.linalg.norm(w_pi)
    if np.all(w_pi < 0):
        w_pi = -w_pi
    if not np.all(w_pi > 0):
        raise InconsistentSigns("norming constants of mixed sign: not a Jacobi point of this chart")
    base = bd.base_spectrum()
    if np.any(np.diff(base) <= 0):
        raise InconsistentSigns("permuted spectrum does not come from an ascending base")
    w = np.empty(n)
    w[list(bd.pi.map)] = w_pi
    return SpectralData(base, w)


def build_L(bd: BidiagonalData, k: int) -> np.ndarray:
    """Dense lower unipotent ``L_{pi,k}``.

    Entry ``(i, j)`` for ``i > j`` is
    ``prod_{m=j}^{i-1} beta_m**k / (lam_i - lam_m)``, built leftward along
    each row from the diagonal.
    """
    lam = bd.lambda_pi
    bk = bd.beta**k
    n = bd.n
    L = np.eye(n)
    for i in range(1, n):
        entry = 1.0
        for j in range(i - 1, -1, -1):
            entry = entry * bk[j] / (lam[i] - lam[j])
            L[i, j] = entry
    return L


def build_B(bd: BidiagonalData, k: int = 1) -> np.ndarray:
    """Dense lower bidiagonal ``B_{pi,k}``: diagonal ``lam_pi``, subdiagonal ``beta**k``."""
    return np.diag(bd.lambda_pi) + np.diag(bd.beta**k, -1)


def reversal_data(d: SpectralData, mode=None) -> SpectralData:
    """Inverse data of the index-reversed matrix ``P_rho T P_rho``."""
    ar = as_mode(mode)
    if d.n == 1:
        return SpectralData(d.lam, [1.0])
    wt = _reversal_weights(d.lam, d.w, ar)
    return SpectralData(d.lam, _normalize(wt, ar))


def initial_permutation(d: SpectralData) -> Permutation:
    """Order the norming constants decreasingly; ties keep index order."""
    return Permutation(tuple(int(i) for i in np.argsort(-d.w, kind="stable")))


def apply_transposition(bd: BidiagonalData, k: int, mode=None) -> BidiagonalData:
    """Move to the chart of ``pi o tau_k`` (swap positions ``k`` and ``k+1``, 0-based).

    With ``q = beta_k / (lam_{k+1} - lam_k)`` the coordinates change as
    ``beta_{k-1} *= q``, ``beta_k *= -1/q**2``, ``beta_{k+1} *= -q``.
    """
    ar = as_mode(mode)
    n = bd.n
    if not 0 <= k < n - 1:
        raise IndexError(f"transposition index {k} out of range for n={n}")
    beta = np.array(bd.beta, dtype=float, copy=True)
    lam = np.array(bd.lambda_pi, dtype=float, copy=True)
    if beta[k] == 0:
        raise SingularTransposition(f"beta[{k}] = 0: the chart change is undefined there")
    q = ar.div(beta[k], ar.sub(lam[k + 1], lam[k]))
    if k >= 1:
        beta[k - 1] = ar.mul(q, beta[k - 1])
    beta[k] = -ar.div(beta[k], ar.mul(q, q))
    if k + 1 <= n - 2:
        beta[k + 1] = -ar.mul(q, beta[k + 1])
    lam[k], lam[k + 1] = lam[k + 1], lam[k]
    return BidiagonalData(bd.pi.transposed(k), lam, beta)
