"""Reconstruction of Jacobi matrices from spectral data.

Two engines are provided: the classical Stieltjes / de Boor-Golub
procedure and the inverse bidiagonal algorithm working in bidiagonal
coordinates, together with tight-permutation selection, a dense QR
cross-check and a reduced-precision benchmark harness.
"""

from .arith import OpCounter, ScalarMode, round_sig
from .coords import (
    apply_transposition,
    beta_to_w,
    build_B,
    build_L,
    initial_permutation,
    reversal_data,
    w_to_beta,
)
from .core import (
    BidiagonalData,
    Permutation,
    SpectralData,
    TridiagonalMatrix,
    dense_of,
    error_metric,
    validate_spectral,
)
from .reconstruct import (
    ALGOS,
    compute_r1,
    de_boor_golub,
    inverse_bidiagonal,
    qr_oracle,
    reconstruct_from_w,
    two_sided,
)
from .spectral import eigenvalues, minor_eigenvalues, mu_to_w, norming_constants
from .tighten import TightenReport, is_tight, q_values, tighten

__all__ = [
    "ALGOS",
    "BidiagonalData",
    "OpCounter",
    "Permutation",
    "ScalarMode",
    "SpectralData",
    "TightenReport",
    "TridiagonalMatrix",
    "apply_transposition",
    "beta_to_w",
    "build_B",
    "build_L",
    "compute_r1",
    "de_boor_golub",
    "dense_of",
    "eigenvalues",
    "error_metric",
    "initial_permutation",
    "inverse_bidiagonal",
    "is_tight",
    "minor_eigenvalues",
    "mu_to_w",
    "norming_constants",
    "q_values",
    "qr_oracle",
    "reconstruct_from_w",
    "reversal_data",
    "round_sig",
    "tighten",
    "two_sided",
    "validate_spectral",
    "w_to_beta",
]
