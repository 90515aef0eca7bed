"""Seeded experiments comparing the reconstruction engines.

Every trial draws from its own PCG64 stream seeded by ``(seed, trial)``,
so a report does not depend on the order in which trials run.
"""

from __future__ import annotations

import csv
import io
import itertools
import math
from dataclasses import asdict, dataclass, field, fields

import numpy as np

from .arith import OpCounter, ScalarMode
from .coords import _w_to_beta, initial_permutation, w_to_beta
from .core import BidiagonalData, SpectralData, TridiagonalMatrix, error_metric
from .errors import InverseDataError, NumericalError
from .reconstruct import _bi_arrays, _bi_recursion, _compute_r1, run_algo, two_sided
from .spectral import norming_constants
from .tighten import TIGHT_TOL, tighten

FAILURE_THRESHOLD = 0.1
EXPERIMENTS = ("random", "laplacian", "permutations")
_SWEEP_CHUNK = 40320


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, trial])))


def random_jacobi(n: int, rng: np.random.Generator) -> TridiagonalMatrix:
    """Gaussian diagonal; off-diagonal is the absolute value of a Gaussian."""
    a = rng.standard_normal(n)
    b = np.abs(rng.standard_normal(n - 1))
    while np.any(b == 0):
        zero = b == 0
        b[zero] = np.abs(rng.standard_normal(int(zero.sum())))
    return TridiagonalMatrix(a, b)


def perturbed_laplacian(n: int, sigma: float, rng: np.random.Generator) -> TridiagonalMatrix:
    """Zero diagonal, off-diagonal ``1 + N(0, sigma**2)`` resampled until positive."""
    b = 1.0 + sigma * rng.standard_normal(n - 1)
    while np.any(b <= 0):
        bad = b <= 0
        b[bad] = 1.0 + sigma * rng.standard_normal(int(bad.sum()))
    return TridiagonalMatrix(np.zeros(n), b)


def count_ops(bd: BidiagonalData) -> OpCounter:
    """Products/quotients and square roots of one inverse bidiagonal run.

    Covers squaring the coordinates, the first row and the row recursion;
    finding the permutation is not included.
    """
    counter = OpCounter()
    _bi_arrays(bd, ScalarMode(counter=counter), strict=False)
    return counter


@dataclass(frozen=True)
class PermutationRow:
    pi: tuple[int, ...]
    error: float
    tight: bool


def permutation_sweep(d: SpectralData, digits: int = 8, reference: TridiagonalMatrix | None = None):
    """Inverse bidiagonal error for every permutation of the data.

    Each run converts to coordinates and reconstructs under ``digits``
    emulation; the error is measured against ``reference`` (by default the
    native two-sided inverse bidiagonal result). Breakdowns get error inf.
    Tightness is judged on the exact-precision coordinates.
    """
    n = d.n
    if n > 9:
        raise ValueError("permutation sweeps are limited to n <= 9")
    if reference is None:
        reference = two_sided(d, "bi")
    ar = ScalarMode(digits)
    lam = np.asarray(ar.r(d.lam), dtype=float)
    w = np.asarray(ar.r(d.w), dtype=float)
    perms = np.array(list(itertools.permutations(range(n))), dtype=int)
    errors = np.empty(len(perms))
    with np.errstate(all="ignore"):
        exact_beta = _w_to_beta(d.lam[perms], d.w[perms], ScalarMode())
        gaps = np.diff(d.lam[perms], axis=-1)
        tight = np.all(np.abs(exact_beta / gaps) <= 1.0 + TIGHT_TOL, axis=-1)
        for lo in range(0, len(perms), _SWEEP_CHUNK):
            idx = perms[lo : lo + _SWEEP_CHUNK]
            lam_pi = lam[idx]
            beta = _w_to_beta(lam_pi, w[idx], ar)
            beta2 = ar.mul(beta, beta)
            r1 = _compute_r1(lam_pi, beta2, ar)
            a, b, ok, _ = _bi_recursion(lam_pi, beta, beta2, r1, ar, strict=False)
            err = np.sum(np.abs(a - reference.a), axis=-1) + np.sum(
                np.abs(np.abs(b) - reference.b), axis=-1
            )
            err = np.where(ok & np.isfinite(err), err, np.inf)
            errors[lo : lo + len(idx)] = err
    return [
        PermutationRow(tuple(int(i) for i in p), float(e), bool(t))
        for p, e, t in zip(perms, errors, tight)
    ]


@dataclass(frozen=True)
class TrialRecord:
    trial: int
    seed: int
    n: int
    algo: str
    digits: int
    error: float
    failure: bool
    sweeps: int
    products: int
    sqrts: int


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "1" if v else "0"
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def _parse_record(values: list[str]) -> TrialRecord:
    kw = {}
    for f, v in zip(fields(TrialRecord), values):
        if f.name == "algo":
            kw[f.name] = v
        elif f.name == "error":
            kw[f.name] = float(v)
        elif f.name == "failure":
            kw[f.name] = v in ("1", "True", "true")
        else:
            kw[f.name] = int(v)
    return TrialRecord(**kw)


COLUMNS = tuple(f.name for f in fields(TrialRecord))


@dataclass
class ExperimentReport:
    records: list[TrialRecord] = field(default_factory=list)

    def algos(self) -> list[str]:
        seen = []
        for r in self.records:
            if r.algo not in seen:
                seen.append(r.algo)
        return seen

    def failures(self, algo: str) -> int:
        return sum(r.failure for r in self.records if r.algo == algo)

    def errors(self, algo: str) -> np.ndarray:
        return np.array([r.error for r in self.records if r.algo == algo])

    def quantiles(self, algo: str, qs=(0.1, 0.5, 0.9)) -> dict[float, float]:
        e = self.errors(algo)
        if e.size == 0:
            return {q: math.nan for q in qs}
        return {q: float(np.quantile(e, q, method="inverted_cdf")) for q in qs}

    def median(self, algo: str) -> float:
        return self.quantiles(algo, (0.5,))[0.5]

    def summary_lines(self) -> list[str]:
        lines = []
        for algo in self.algos():
            q = self.quantiles(algo, (0.1, 0.5, 0.9, 1.0))
            lines.append(
                f"{algo}: trials={len(self.errors(algo))} failures={self.failures(algo)} "
                f"q10={q[0.1]:.3e} median={q[0.5]:.3e} q90={q[0.9]:.3e} max={q[1.0]:.3e}"
            )
        return lines

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(COLUMNS)
        for r in self.records:
            writer.writerow([_fmt(v) for v in asdict(r).values()])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> ExperimentReport:
        rows = [row for row in csv.reader(io.StringIO(text)) if row and not row[0].startswith("#")]
        if not rows or tuple(rows[0]) != COLUMNS:
            raise ValueError("missing or unexpected CSV header")
        return cls([_parse_record(row) for row in rows[1:]])

    def to_table(self) -> str:
        cells = [list(COLUMNS)] + [[_fmt(v) for v in asdict(r).values()] for r in self.records]
        widths = [max(len(row[i]) for row in cells) for i in range(len(COLUMNS))]
        out = ["  ".join(c.rjust(wd) for c, wd in zip(row, widths)) for row in cells]
        out += ["# " + line for line in self.summary_lines()]
        return "\n".join(out) + "\n"

    @classmethod
    def from_table(cls, text: str) -> ExperimentReport:
        rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
        if not rows or tuple(rows[0]) != COLUMNS:
            raise ValueError("missing or unexpected table header")
        return cls([_parse_record(row) for row in rows[1:]])


@dataclass(frozen=True)
class BenchConfig:
    experiment: str = "random"
    n: int = 40
    trials: int = 40
    digits: int = 12
    sigma: float = 0.01
    seed: int = 0

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise ValueError(f"unknown experiment {self.experiment!r}")
        if self.n < 1 or self.trials < 0:
            raise ValueError("need n >= 1 and trials >= 0")
        ScalarMode(self.digits)


def _run_engine(T, d, algo, cfg, trial) -> TrialRecord:
    counter = OpCounter()
    mode = ScalarMode(cfg.digits, counter)
    try:
        with np.errstate(all="ignore"):
            approx, sweeps = run_algo(d, algo, mode)
        err = error_metric(T, approx)
        if not math.isfinite(err):
            err = math.inf
    except (NumericalError, InverseDataError):
        err, sweeps = math.inf, 0
    return TrialRecord(
        trial, cfg.seed, cfg.n, algo, cfg.digits, err, bool(err > FAILURE_THRESHOLD),
        int(sweeps), counter.products_and_quotients, counter.square_roots,
    )


def _permutation_records(d, cfg, trial) -> list[TrialRecord]:
    rows = permutation_sweep(d, cfg.digits)
    errs = np.array([r.error for r in rows])
    tight = np.array([r.tight for r in rows])
    chosen = tighten(w_to_beta(d, initial_permutation(d)))
    by_pi = {r.pi: r.error for r in rows}
    picks = {
        "best": float(errs.min()),
        "worst": float(errs.max()),
        "best-tight": float(errs[tight].min()) if tight.any() else math.inf,
        "tightened": by_pi[chosen.result.pi.map],
    }
    return [
        TrialRecord(trial, cfg.seed, cfg.n, name, cfg.digits, e, bool(e > FAILURE_THRESHOLD),
                    chosen.sweeps if name == "tightened" else 0, 0, 0)
        for name, e in picks.items()
    ]


def benchmark(config: BenchConfig) -> ExperimentReport:
    """Run ``config.trials`` trials and collect per-engine records.

    ``random`` and ``laplacian`` compare the two-sided engines against the
    generated matrix; ``permutations`` reports, per trial, the best, worst,
    best tight and tightening-selected permutation errors.
    """
    report = ExperimentReport()
    for trial in range(config.trials):
        rng = trial_rng(config.seed, trial)
        if config.experiment == "laplacian":
            T = perturbed_laplacian(config.n, config.sigma, rng)
        else:
            T = random_jacobi(config.n, rng)
        d = norming_constants(T)
        if config.experiment == "permutations":
            report.records.extend(_permutation_records(d, config, trial))
        else:
            for algo in ("bg2", "bi2"):
                report.records.append(_run_engine(T, d, algo, config, trial))
    return report
