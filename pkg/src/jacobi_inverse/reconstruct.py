"""Reconstruction of tridiagonal matrices from inverse data.

Three engines are provided:

``de_boor_golub``
    Stieltjes procedure on the discrete measure ``sum w_j**2 delta(lam_j)``,
    with polynomials stored only by their values at the nodes.
``inverse_bidiagonal``
    Row recursion ``r_{k+1} = r_k B2 - a_k r_k - b_{k-1}**2 r_{k-1}`` for the
    rows of an upper triangular matrix, seeded with ``r_1 = L2^T L0 e_1``;
    works for every real vector of bidiagonal coordinates, including zeros.
``qr_oracle``
    Dense route ``T = R B R^{-1}`` through a QR factorization of ``L_pi``,
    used to cross-check the other two.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.linalg import solve_triangular

from .arith import as_mode
from .coords import (
    _check_distinct,
    build_B,
    build_L,
    initial_permutation,
    reversal_data,
    w_to_beta,
)
from .core import BidiagonalData, SpectralData, TridiagonalMatrix, validate_spectral
from .errors import InverseDataError, NumericalBreakdown
from .tighten import tighten

ALGOS = ("bg", "bi", "bg2", "bi2", "qr")
_RESCALE_ABOVE = 1e100

# Worked by hand: the measure (delta_0 + delta_2)/2 has mean 1 and variance 1,
# so a = (1, 1) and b = (1,).
WORKED_2X2 = (
    SpectralData((0.0, 2.0), (0.5**0.5, 0.5**0.5)),
    TridiagonalMatrix((1.0, 1.0), (1.0,)),
)


def _stieltjes(lam, w, ar, keep=False, steps=None):
    """Returns ``a_1..a_steps``, ``b_1..b_{steps-1}`` and optionally the node values."""
    n = lam.shape[-1]
    steps = n if steps is None else steps
    w2 = ar.mul(w, w)
    a = np.empty(steps)
    b2 = np.empty(steps - 1)
    p = np.ones(n)
    p_prev = None
    nrm_prev = None
    polys = []
    for k in range(steps):
        if keep:
            polys.append(np.array(p, dtype=float))
        u = ar.mul(w2, p)
        nrm = ar.sum(ar.mul(u, p))
        if not (math.isfinite(nrm) and nrm > 0):
            raise NumericalBreakdown(f"norm of p_{k} is {nrm!r}")
        lp = ar.mul(lam, p)
        a[k] = ar.div(ar.sum(ar.mul(u, lp)), nrm)
        if k >= 1:
            b2[k - 1] = ar.div(nrm, nrm_prev)
        if k == steps - 1:
            break
        p_next = ar.sub(lp, ar.mul(a[k], p))
        if k >= 1:
            p_next = ar.sub(p_next, ar.mul(b2[k - 1], p_prev))
        big = float(np.max(np.abs(p_next)))
        if big > _RESCALE_ABOVE and math.isfinite(big):
            # common power-of-two factor: leaves every Stieltjes quotient unchanged
            c = 2.0 ** -math.frexp(big)[1]
            p_next = p_next * c
            p = p * c
            nrm = nrm * c * c
        p_prev, p, nrm_prev = p, p_next, nrm
    b = np.asarray(ar.sqrt(b2), dtype=float)
    return a, b, polys


def stieltjes(lam, w, mode=None) -> TridiagonalMatrix:
    """Stieltjes procedure for nodes ``lam`` and weights ``w**2`` in any order."""
    lam = np.asarray(lam, dtype=float)
    w = np.asarray(w, dtype=float)
    a, b, _ = _stieltjes(lam, w, as_mode(mode))
    return TridiagonalMatrix(a, b)


def de_boor_golub(d: SpectralData, mode=None) -> TridiagonalMatrix:
    """Jacobi matrix with spectrum ``d.lam`` and norming constants ``d.w``."""
    return stieltjes(d.lam, d.w, mode)


def bg_polynomials(d: SpectralData) -> np.ndarray:
    """Node values of the monic orthogonal polynomials ``p_0 .. p_{n-1}`` (one per row)."""
    _, _, polys = _stieltjes(np.asarray(d.lam, float), np.asarray(d.w, float), as_mode(None), keep=True)
    return np.array(polys)


def _compute_r1(lam, beta2, ar):
    n = lam.shape[-1]
    batch = lam.shape[:-1]
    if n == 1:
        return np.ones(batch + (1,))
    # G_i = prod_{m<i} (lam_i - lam_m), then g_i = 1 / G_i
    G = np.array(ar.sub(lam[..., 1:], lam[..., :1]), dtype=float, copy=True)
    for m in range(1, n - 1):
        G[..., m:] = ar.mul(G[..., m:], ar.sub(lam[..., m + 1 :], lam[..., m : m + 1]))
    g = ar.div(1.0, G)
    terms = np.zeros(batch + (n, n))
    terms[..., 0, 0] = 1.0
    diag = np.arange(1, n)
    terms[..., diag, diag] = g
    # term(i, j) = term(i, j+1) * beta_j**2 / (lam_i - lam_j)
    for s in range(1, n):
        rows = np.arange(s, n)
        cols = rows - s
        gap = ar.sub(lam[..., rows], lam[..., cols])
        terms[..., rows, cols] = ar.div(ar.mul(terms[..., rows, cols + 1], beta2[..., cols]), gap)
    # each column is summed from the bottom up
    r1 = np.zeros(batch + (n,))
    for i in range(n - 1, -1, -1):
        r1[..., : i + 1] = ar.add(r1[..., : i + 1], terms[..., i, : i + 1])
    return r1


def _bi_recursion(lam, beta, beta2, r1, ar, strict=True, debug=False, keep_rows=False, steps=None):
    """Row recursion of the inverse bidiagonal algorithm.

    Returns ``(a, b, ok, rows)`` with ``a_1..a_steps`` and
    ``b_1..b_{steps-1}``; ``b`` carries the signs of ``beta``. ``ok`` flags
    batch members whose diagonal pivots stayed positive.
    """
    n = lam.shape[-1]
    steps = n if steps is None else steps
    batch = lam.shape[:-1]
    a = np.empty(batch + (steps,))
    b = np.empty(batch + (steps - 1,))
    ok = np.ones(batch, dtype=bool)
    rows = [np.array(r1, dtype=float)] if keep_rows else None
    prev = None
    cur = r1
    for k in range(steps):
        rkk = cur[..., k]
        good = np.isfinite(rkk) & (rkk > 0)
        if strict and not np.all(good):
            raise NumericalBreakdown(f"pivot r[{k + 1},{k + 1}] = {rkk!r} is not positive")
        ok &= good
        t2 = ar.mul(beta2[..., k:], cur[..., k + 1 :]) if k < n - 1 else None
        if k >= 1:
            ratio = ar.div(rkk, prev[..., k - 1])
            b[..., k - 1] = ar.mul(beta[..., k - 1], ar.sqrt(ratio))
            bsq = ar.mul(beta2[..., k - 1], ratio)
            corr = ar.mul(bsq, prev[..., k])
            num = ar.sub(t2[..., 0], corr) if t2 is not None else -corr
        else:
            bsq = None
            num = t2[..., 0] if t2 is not None else None
        # a_k from annihilating position k of the next row:
        # a_k = lam_k + (beta_k**2 r_{k,k+1} - b_{k-1}**2 r_{k-1,k}) / r_{k,k}
        a[..., k] = lam[..., k] if num is None else ar.add(lam[..., k], ar.div(num, rkk))
        if k == steps - 1:
            break
        t1 = ar.mul(lam[..., k:], cur[..., k:])
        s = np.array(t1[..., 1:], dtype=float, copy=True)
        s[..., :-1] = ar.add(s[..., :-1], t2[..., 1:])
        ak = np.expand_dims(a[..., k], -1)
        nxt_tail = ar.sub(s, ar.mul(ak, cur[..., k + 1 :]))
        if bsq is not None:
            nxt_tail = ar.sub(nxt_tail, ar.mul(np.expand_dims(bsq, -1), prev[..., k + 1 :]))
        nxt = np.zeros(batch + (n,))
        nxt[..., k + 1 :] = nxt_tail
        if debug:
            s_k = t1[..., 0] + t2[..., 0]
            resid = s_k - a[..., k] * rkk - (0.0 if bsq is None else bsq * prev[..., k])
            scale = np.max(np.abs(nxt), axis=-1) + np.abs(s_k)
            if np.any(np.abs(resid) > 1e-10 * scale):
                raise AssertionError(f"row {k + 2} is not upper triangular: residual {resid!r}")
        prev, cur = cur, nxt
        if keep_rows:
            rows.append(np.array(nxt, dtype=float))
    return a, b, ok, rows


def _bi_arrays(bd: BidiagonalData, ar, **kw):
    """Square the coordinates, seed the first row and run the recursion."""
    lam = np.asarray(bd.lambda_pi, dtype=float)
    beta = np.asarray(bd.beta, dtype=float)
    beta2 = np.asarray(ar.mul(beta, beta), dtype=float) if beta.size else beta
    r1 = _compute_r1(lam, beta2, ar)
    return _bi_recursion(lam, beta, beta2, r1, ar, **kw)


def compute_r1(bd: BidiagonalData, mode=None) -> np.ndarray:
    """First row seed ``L_{pi,2}^T L_{pi,0} e_1``."""
    ar = as_mode(mode)
    beta = np.asarray(bd.beta, dtype=float)
    return _compute_r1(np.asarray(bd.lambda_pi, float), np.asarray(ar.mul(beta, beta), float), ar)


def inverse_bidiagonal(
    bd: BidiagonalData, mode=None, signed: bool = False, debug: bool = False
) -> TridiagonalMatrix:
    """The matrix with bidiagonal coordinates ``bd``.

    By default the off-diagonal is returned nonnegative; ``signed=True``
    keeps ``sign(b_i) = sign(beta_i)``.

    Raises
    ------
    NumericalBreakdown
        If a diagonal entry of the row recursion is not strictly positive.
    """
    ar = as_mode(mode)
    a, b, _, _ = _bi_arrays(bd, ar, strict=True, debug=debug)
    t = TridiagonalMatrix(a, b)
    return t if signed else t.canonical()


def bidiagonal_rows(bd: BidiagonalData) -> np.ndarray:
    """The full upper triangular matrix of recursion rows (native precision)."""
    _, _, _, rows = _bi_arrays(bd, as_mode(None), strict=True, keep_rows=True)
    return np.array(rows)


def qr_oracle(bd: BidiagonalData, signed: bool = False) -> TridiagonalMatrix:
    """Dense reconstruction ``R B R^{-1}`` from the QR factorization of ``L_pi``."""
    _check_distinct(bd.lambda_pi)
    n = bd.n
    if n == 1:
        return TridiagonalMatrix(bd.lambda_pi, [])
    L = build_L(bd, 1)
    _, R = np.linalg.qr(L)
    sign = np.sign(np.diag(R))
    R = sign[:, None] * R
    if not np.all(np.diag(R) > 0):
        raise RuntimeError("QR factor with a non-positive diagonal")
    RB = R @ build_B(bd, 1)
    # X R = R B  <=>  R^T X^T = (R B)^T
    X = solve_triangular(R, RB.T, trans="T").T
    off = 0.5 * (np.diag(X, 1) + np.diag(X, -1))
    t = TridiagonalMatrix(np.diag(X).copy(), off)
    return t if signed else t.canonical()


def _bi_prefix(d: SpectralData, ar, steps=None):
    pi0 = initial_permutation(d)
    rep = tighten(w_to_beta(d, pi0, ar), mode=ar)
    a, b, _, _ = _bi_arrays(rep.result, ar, strict=True, steps=steps)
    return a, np.abs(b), rep.sweeps


def _bg_prefix(d: SpectralData, ar, steps=None):
    a, b, _ = _stieltjes(d.lam, d.w, ar, steps=steps)
    return a, b, 0


_ENGINES = {"bg": _bg_prefix, "bi": _bi_prefix}


def splice(forward: TridiagonalMatrix, backward: TridiagonalMatrix) -> TridiagonalMatrix:
    """Top half from ``forward``, bottom half from the reversed matrix ``backward``.

    The forward run owns ``a_1 .. a_ceil(n/2)`` and ``b_1 .. b_floor(n/2)``.
    """
    return _splice(forward.a, forward.b, backward.a, backward.b, forward.n)


def _splice(fa, fb, ra, rb, n):
    ha = (n + 1) // 2
    hb = n // 2
    a = np.concatenate([fa[:ha], ra[: n - ha][::-1]])
    b = np.concatenate([fb[:hb], rb[: n - 1 - hb][::-1]])
    return TridiagonalMatrix(a, b)


def _two_sided(d: SpectralData, engine: str, ar) -> tuple[TridiagonalMatrix, int]:
    # each direction only needs the rows up to the splice point
    n = d.n
    run = _ENGINES[engine]
    steps = min(n, n // 2 + 1)
    try:
        fa, fb, s1 = run(d, ar, steps)
    except NumericalBreakdown as exc:
        raise NumericalBreakdown(str(exc), direction="forward") from exc
    if n == 1:
        return TridiagonalMatrix(fa, fb), s1
    try:
        ra, rb, s2 = run(reversal_data(d, ar), ar, steps)
    except NumericalBreakdown as exc:
        raise NumericalBreakdown(str(exc), direction="reverse") from exc
    return _splice(fa, fb, ra, rb, n), s1 + s2


def two_sided(d: SpectralData, engine: str = "bi", mode=None) -> TridiagonalMatrix:
    """Two-sided reconstruction with engine ``'bg'`` or ``'bi'``.

    Each direction runs only as far as the half it contributes, so a
    breakdown late in a one-sided run does not affect the result.
    """
    if engine not in _ENGINES:
        raise ValueError(f"unknown engine {engine!r}")
    return _two_sided(d, engine, as_mode(mode))[0]


def _prepare(d: SpectralData, ar) -> SpectralData:
    d = validate_spectral(d)
    if ar.native:
        return d
    lam = np.asarray(ar.r(d.lam), dtype=float)
    if np.any(np.diff(lam) <= 0):
        raise InverseDataError(f"eigenvalues collide at {ar.digits} digits")
    return SpectralData(lam, ar.r(d.w))


def run_algo(d: SpectralData, algo: str, mode=None) -> tuple[TridiagonalMatrix, int]:
    """Like :func:`reconstruct_from_w` but also returns the tightening sweep count."""
    if algo not in ALGOS:
        raise ValueError(f"unknown algorithm {algo!r}; choose from {', '.join(ALGOS)}")
    ar = as_mode(mode)
    if algo == "qr" and not ar.native:
        raise ValueError("the qr path runs in native precision only")
    d = _prepare(d, ar)
    if algo in _ENGINES:
        a, b, sweeps = _ENGINES[algo](d, ar)
        return TridiagonalMatrix(a, b), sweeps
    if algo in ("bg2", "bi2"):
        return _two_sided(d, algo[:2], ar)
    rep = tighten(w_to_beta(d, initial_permutation(d)))
    return qr_oracle(rep.result), rep.sweeps


def reconstruct_from_w(d: SpectralData, algo: str = "bi", mode=None) -> TridiagonalMatrix:
    """Jacobi matrix from eigenvalues and norming constants.

    ``algo`` is one of ``bg``, ``bi`` (one-sided), ``bg2``, ``bi2``
    (two-sided) or ``qr`` (dense oracle at the tightened permutation).
    ``mode`` is ``None``/0 for native precision or a digit count.
    """
    return run_algo(d, algo, mode)[0]
