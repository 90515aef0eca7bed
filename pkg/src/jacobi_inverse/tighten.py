"""Search for tight permutations.

A permutation is tight for given inverse data when every
``|q_k| = |beta_k / (lam_{k+1} - lam_k)|`` is at most one. Swapping
positions ``k, k+1`` where ``|q_k| > 1`` replaces ``|q_k|`` by its
reciprocal, and the products ``p_k = prod_{i >= k} |beta_i|`` decrease
lexicographically, so repeated sweeps terminate.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .arith import as_mode
from .coords import apply_transposition
from .core import BidiagonalData
from .errors import NonTermination

TIGHT_TOL = 1e-12


@dataclass(frozen=True)
class TransposeRecord:
    sweep: int
    k: int
    q_before: float
    q_after: float


@dataclass
class TightenReport:
    result: BidiagonalData
    sweeps: int
    transpositions: int
    trace: list[TransposeRecord] = field(default_factory=list)


def q_values(bd: BidiagonalData, mode=None) -> np.ndarray:
    ar = as_mode(mode)
    lam = bd.lambda_pi
    return np.asarray(ar.div(bd.beta, ar.sub(lam[1:], lam[:-1])), dtype=float)


def is_tight(bd: BidiagonalData, tol: float = TIGHT_TOL, mode=None) -> bool:
    if bd.n < 2:
        return True
    return bool(np.max(np.abs(q_values(bd, mode))) <= 1.0 + tol)


def _log_tail_products(beta: np.ndarray) -> np.ndarray:
    """``log p_k = sum_{i >= k} log|beta_i|`` for every k."""
    with np.errstate(divide="ignore"):
        logs = np.log(np.abs(beta))
    return np.cumsum(logs[::-1])[::-1]


def _check_monovariant(before: np.ndarray, after: np.ndarray, k: int) -> None:
    """The first tail product that changes must drop, at position k or earlier."""
    if not (np.all(np.isfinite(before)) and np.all(np.isfinite(after))):
        return  # the ordering argument needs nonzero coordinates
    diff = after - before
    moved = np.abs(diff) > 1e-9 * (1.0 + np.abs(before))
    first = int(np.argmax(moved)) if moved.any() else -1
    if first < 0 or first > k or diff[first] >= 0:
        raise AssertionError(
            f"tail-product monovariant did not decrease at k={k}: {before} -> {after}"
        )


def tighten(
    bd: BidiagonalData,
    max_sweeps: int | None = None,
    mode=None,
    tol: float = TIGHT_TOL,
    debug: bool = False,
    record: bool = False,
) -> TightenReport:
    """Apply tightening transpositions in left-to-right sweeps until none applies.

    The sweep count includes the final sweep that finds nothing to do.
    With ``debug`` the lexicographic monovariant is asserted after each
    step; with ``record`` the report carries a per-step trace.
    """
    ar = as_mode(mode)
    n = bd.n
    if max_sweeps is None:
        max_sweeps = 64 * max(n, 1)
    cur = bd
    q = q_values(cur, ar).copy() if n > 1 else np.zeros(0)
    sweeps = 0
    count = 0
    trace: list[TransposeRecord] = []
    while True:
        if sweeps >= max_sweeps:
            raise NonTermination(f"no tight permutation after {max_sweeps} sweeps")
        sweeps += 1
        changed = False
        for k in range(n - 1):
            if abs(q[k]) <= 1.0 + tol:
                continue
            before = _log_tail_products(cur.beta) if debug else None
            q_old = q[k]
            cur = apply_transposition(cur, k, ar)
            count += 1
            changed = True
            lam, beta = cur.lambda_pi, cur.beta
            for j in (k - 1, k, k + 1):
                if 0 <= j < n - 1:
                    q[j] = ar.div(beta[j], ar.sub(lam[j + 1], lam[j]))
            if debug:
                _check_monovariant(before, _log_tail_products(cur.beta), k)
            if record or debug:
                trace.append(TransposeRecord(sweeps, k, float(q_old), float(q[k])))
        if not changed:
            return TightenReport(cur, sweeps, count, trace)
