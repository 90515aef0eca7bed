"""Domain types shared across the package.

Indices are 0-based in storage. Documentation and the text formats use
the usual 1-based mathematical numbering.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DimensionMismatch,
    DuplicateOrUnsortedSpectrum,
    NonpositiveNormingConstant,
    NotNormalized,
)

NORM_RTOL = 1e-8


def _frozen_vector(x) -> np.ndarray:
    v = np.array(x, dtype=float).reshape(-1)
    v.setflags(write=False)
    return v


@dataclass(frozen=True)
class Permutation:
    """A bijection of ``{0, ..., n-1}`` stored as its one-line image.

    ``P_pi e_i = e_{pi(i)}``, so composition matches matrix products:
    ``compose(p, q)(i) = p(q(i))``.
    """

    map: tuple[int, ...]

    def __post_init__(self):
        m = tuple(int(i) for i in self.map)
        if sorted(m) != list(range(len(m))):
            raise ValueError(f"not a permutation: {m}")
        object.__setattr__(self, "map", m)

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(n)))

    @classmethod
    def from_one_line(cls, images) -> Permutation:
        """Build from 1-based one-line notation, e.g. ``(2, 1)``."""
        return cls(tuple(int(i) - 1 for i in images))

    @property
    def n(self) -> int:
        return len(self.map)

    def __call__(self, i: int) -> int:
        return self.map[i]

    def __len__(self) -> int:
        return len(self.map)

    def compose(self, other: Permutation) -> Permutation:
        if other.n != self.n:
            raise DimensionMismatch("permutations of different size")
        return Permutation(tuple(self.map[j] for j in other.map))

    def inverse(self) -> Permutation:
        inv = [0] * self.n
        for i, j in enumerate(self.map):
            inv[j] = i
        return Permutation(tuple(inv))

    def transposed(self, k: int) -> Permutation:
        """Return ``self o tau_k`` where ``tau_k`` swaps positions k and k+1."""
        m = list(self.map)
        m[k], m[k + 1] = m[k + 1], m[k]
        return Permutation(tuple(m))

    def matrix(self) -> np.ndarray:
        P = np.zeros((self.n, self.n))
        P[list(self.map), list(range(self.n))] = 1.0
        return P

    def one_line(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in self.map)

    def __str__(self) -> str:
        return " ".join(str(i) for i in self.one_line())


@dataclass(frozen=True)
class TridiagonalMatrix:
    """Real symmetric tridiagonal matrix with diagonal ``a`` and off-diagonal ``b``."""

    a: np.ndarray
    b: np.ndarray = field(default_factory=lambda: np.zeros(0))

    def __post_init__(self):
        a = _frozen_vector(self.a)
        b = _frozen_vector(self.b)
        if a.size < 1:
            raise DimensionMismatch("empty matrix")
        if b.size != a.size - 1:
            raise DimensionMismatch(f"need {a.size - 1} off-diagonal entries, got {b.size}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def n(self) -> int:
        return self.a.size

    def is_jacobi(self) -> bool:
        return bool(np.all(self.b > 0))

    def canonical(self) -> TridiagonalMatrix:
        """Same spectrum, off-diagonal made nonnegative."""
        return TridiagonalMatrix(self.a, np.abs(self.b))

    def reversed(self) -> TridiagonalMatrix:
        """``P_rho T P_rho``: the matrix with its index order reversed."""
        return TridiagonalMatrix(self.a[::-1], self.b[::-1])

    def dense(self) -> np.ndarray:
        return dense_of(self)

    def __eq__(self, other):
        if not isinstance(other, TridiagonalMatrix):
            return NotImplemented
        return np.array_equal(self.a, other.a) and np.array_equal(self.b, other.b)

    __hash__ = None


@dataclass(frozen=True)
class SpectralData:
    """Eigenvalues ``lam`` (ascending) and norming constants ``w``.

    Construction stores the arrays as given; use :func:`validate_spectral`
    to enforce ordering, positivity and normalization.
    """

    lam: np.ndarray
    w: np.ndarray

    def __post_init__(self):
        lam = _frozen_vector(self.lam)
        w = _frozen_vector(self.w)
        if lam.size != w.size:
            raise DimensionMismatch(f"{lam.size} eigenvalues but {w.size} norming constants")
        if lam.size < 1:
            raise DimensionMismatch("empty spectral data")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "w", w)

    @property
    def n(self) -> int:
        return self.lam.size

    def __eq__(self, other):
        if not isinstance(other, SpectralData):
            return NotImplemented
        return np.array_equal(self.lam, other.lam) and np.array_equal(self.w, other.w)

    __hash__ = None


@dataclass(frozen=True)
class BidiagonalData:
    """A permutation, the permuted spectrum and the bidiagonal coordinates.

    ``lambda_pi[i] = lam[pi(i)]`` for the ascending base spectrum ``lam``.
    ``beta`` ranges over all of R^(n-1).
    """

    pi: Permutation
    lambda_pi: np.ndarray
    beta: np.ndarray

    def __post_init__(self):
        lam = _frozen_vector(self.lambda_pi)
        beta = _frozen_vector(self.beta)
        if self.pi.n != lam.size or beta.size != lam.size - 1:
            raise DimensionMismatch("inconsistent bidiagonal data sizes")
        if np.unique(lam).size != lam.size:
            raise DuplicateOrUnsortedSpectrum("permuted eigenvalues must be distinct")
        object.__setattr__(self, "lambda_pi", lam)
        object.__setattr__(self, "beta", beta)

    @property
    def n(self) -> int:
        return self.lambda_pi.size

    def base_spectrum(self) -> np.ndarray:
        lam = np.empty(self.n)
        lam[list(self.pi.map)] = self.lambda_pi
        return lam

    def __eq__(self, other):
        if not isinstance(other, BidiagonalData):
            return NotImplemented
        return (
            self.pi == other.pi
            and np.array_equal(self.lambda_pi, other.lambda_pi)
            and np.array_equal(self.beta, other.beta)
        )

    __hash__ = None


def error_metric(t1: TridiagonalMatrix, t2: TridiagonalMatrix) -> float:
    """Sum of absolute entrywise differences over the diagonal and off-diagonal."""
    if t1.n != t2.n:
        raise DimensionMismatch(f"dimensions {t1.n} and {t2.n} differ")
    return float(np.sum(np.abs(t1.a - t2.a)) + np.sum(np.abs(t1.b - t2.b)))


def validate_spectral(d: SpectralData, rtol: float = NORM_RTOL) -> SpectralData:
    """Check the inverse-data preconditions and return unit-normalized data.

    Raises
    ------
    DuplicateOrUnsortedSpectrum
        If the eigenvalues are not strictly increasing (or not finite).
    NonpositiveNormingConstant
        If some ``w_i <= 0``.
    NotNormalized
        If ``sum(w**2)`` is not within ``rtol`` of 1.
    """
    lam, w = d.lam, d.w
    if not np.all(np.isfinite(lam)) or np.any(np.diff(lam) <= 0):
        raise DuplicateOrUnsortedSpectrum(f"eigenvalues must be strictly increasing: {lam}")
    if not np.all(np.isfinite(w)) or np.any(w <= 0):
        raise NonpositiveNormingConstant(f"norming constants must be positive: {w}")
    sq = float(np.sum(w * w))
    if abs(sq - 1.0) > rtol:
        raise NotNormalized(f"sum of squared norming constants is {sq!r}")
    if sq == 1.0:
        return d
    return SpectralData(lam, w / np.sqrt(sq))


def dense_of(t: TridiagonalMatrix) -> np.ndarray:
    return np.diag(t.a) + np.diag(t.b, 1) + np.diag(t.b, -1)
