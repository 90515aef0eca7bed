"""Forward problem: spectra and norming constants of tridiagonal matrices."""

from __future__ import annotations

import numpy as np

from .core import SpectralData, TridiagonalMatrix
from .errors import DimensionTooSmall, InterlacingViolation, NotJacobi

_EPS = np.finfo(float).eps
_MAX_BISECTIONS = 256


def _sturm_count(a, b2, x, pivmin):
    """Number of eigenvalues strictly below each entry of ``x``.

    Uses the ratio form ``d_k = p_k(x) / p_{k-1}(x)`` of the characteristic
    polynomial recurrence, which cannot overflow.
    """
    count = np.zeros(x.shape, dtype=int)
    d = a[0] - x
    d = np.where(np.abs(d) < pivmin, -pivmin, d)
    count += d < 0
    for k in range(1, a.size):
        d = (a[k] - x) - b2[k - 1] / d
        d = np.where(np.abs(d) < pivmin, -pivmin, d)
        count += d < 0
    return count


def _bisect_all(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    n = a.size
    if n == 1:
        return a.copy()
    b2 = b * b
    absb = np.abs(b)
    rad = np.concatenate([absb, [0.0]]) + np.concatenate([[0.0], absb])
    lo0 = float(np.min(a - rad))
    hi0 = float(np.max(a + rad))
    scale = max(abs(lo0), abs(hi0), 1e-300)
    span = hi0 - lo0
    lo0 -= 2 * _EPS * scale + 1e-300
    hi0 += 2 * _EPS * scale + 1e-300
    pivmin = max(np.finfo(float).tiny, _EPS * _EPS * max(float(np.max(b2)), 1.0))
    floor = np.finfo(float).tiny / _EPS
    if span == 0.0:
        return np.full(n, a[0])

    idx = np.arange(n)
    lo = np.full(n, lo0)
    hi = np.full(n, hi0)
    for _ in range(_MAX_BISECTIONS):
        width = hi - lo
        tol = 4 * _EPS * np.maximum(np.abs(lo), np.abs(hi)) + floor
        active = width > tol
        if not active.any():
            break
        mid = lo + 0.5 * width
        c = _sturm_count(a, b2, mid, pivmin)
        # eigenvalue idx lies below mid iff more than idx eigenvalues are below mid
        below = c > idx
        hi = np.where(active & below, mid, hi)
        lo = np.where(active & ~below, mid, lo)
    return np.sort(lo + 0.5 * (hi - lo))


def eigenvalues(t: TridiagonalMatrix) -> np.ndarray:
    """All eigenvalues of ``t`` in ascending order (Sturm bisection)."""
    return _bisect_all(np.asarray(t.a, float), np.asarray(t.b, float))


def minor_eigenvalues(t: TridiagonalMatrix) -> np.ndarray:
    """Eigenvalues of the trailing (n-1)x(n-1) principal block."""
    if t.n < 2:
        raise DimensionTooSmall("the trailing minor needs n >= 2")
    return _bisect_all(np.asarray(t.a[1:], float), np.asarray(t.b[1:], float))


def check_interlacing(lam, mu) -> None:
    lam = np.asarray(lam, float)
    mu = np.asarray(mu, float)
    if mu.size != lam.size - 1:
        raise InterlacingViolation(f"need {lam.size - 1} minor eigenvalues, got {mu.size}")
    merged = np.empty(lam.size + mu.size)
    merged[0::2] = lam
    merged[1::2] = mu
    if not np.all(np.diff(merged) > 0):
        raise InterlacingViolation("eigenvalues and minor eigenvalues must strictly interlace")


def mu_to_w(lam, mu) -> np.ndarray:
    """Norming constants from the spectrum and the trailing-minor spectrum.

    ``w_i**2 = prod_j (lam_i - mu_j) / prod_{j != i} (lam_i - lam_j)``,
    accumulated as a running product of paired ratios so that large ``n``
    does not overflow.
    """
    lam = np.asarray(lam, float)
    mu = np.asarray(mu, float)
    check_interlacing(lam, mu)
    n = lam.size
    w2 = np.ones(n)
    for i in range(n):
        others = np.delete(lam, i)
        w2[i] = np.prod((lam[i] - mu) / (lam[i] - others))
    w = np.sqrt(w2)
    return w / np.linalg.norm(w)


def _first_components(a: np.ndarray, b: np.ndarray, lam: np.ndarray) -> np.ndarray:
    """|first coordinate| of the unit eigenvectors for the eigenvalues ``lam``.

    Each eigenvector comes from a twisted factorization of ``T - lam I``:
    the forward and backward pivot sequences meet at the twist index where
    the eigenvector peaks, and the components are propagated outward from
    there. Components that decay away from the peak keep high relative
    accuracy, so first coordinates far below machine epsilon come out right.
    """
    n = a.size
    b2 = b * b
    pivmin = np.finfo(float).tiny / _EPS
    out = np.empty(lam.size)
    for i, x in enumerate(lam):
        diag = a - x
        dp = np.empty(n)
        dm = np.empty(n)
        dp[0] = diag[0]
        for k in range(1, n):
            prev = dp[k - 1] if dp[k - 1] != 0 else pivmin
            dp[k] = diag[k] - b2[k - 1] / prev
        dm[n - 1] = diag[n - 1]
        for k in range(n - 2, -1, -1):
            nxt = dm[k + 1] if dm[k + 1] != 0 else pivmin
            dm[k] = diag[k] - b2[k] / nxt
        gamma = dp + dm - diag
        r = int(np.argmin(np.abs(gamma)))
        v = np.zeros(n)
        v[r] = 1.0
        for k in range(r - 1, -1, -1):
            piv = dp[k] if dp[k] != 0 else pivmin
            v[k] = -b[k] * v[k + 1] / piv
        for k in range(r + 1, n):
            piv = dm[k] if dm[k] != 0 else pivmin
            v[k] = -b[k - 1] * v[k - 1] / piv
        out[i] = abs(v[0]) / np.linalg.norm(v)
    return out


def norming_constants(t: TridiagonalMatrix) -> SpectralData:
    """Eigenvalues and positive norming constants of a Jacobi matrix.

    The norming constants are the first coordinates of the unit
    eigenvectors, taken positive.
    """
    if not t.is_jacobi():
        raise NotJacobi("norming constants need strictly positive off-diagonal entries")
    lam = eigenvalues(t)
    if t.n == 1:
        return SpectralData(lam, [1.0])
    if np.any(np.diff(lam) <= 0):
        raise NotJacobi("computed spectrum is not simple to working precision")
    w = _first_components(np.asarray(t.a, float), np.asarray(t.b, float), lam)
    return SpectralData(lam, w / np.linalg.norm(w))


forward = norming_constants
