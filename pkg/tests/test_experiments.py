import math

import numpy as np
import pytest

from jacobi_inverse.experiments import (
    COLUMNS,
    BenchConfig,
    ExperimentReport,
    TrialRecord,
    benchmark,
    perturbed_laplacian,
    permutation_sweep,
    random_jacobi,
    trial_rng,
)
from jacobi_inverse.spectral import norming_constants


def test_trial_streams_are_independent_and_reproducible():
    a = trial_rng(5, 3).standard_normal(4)
    assert np.array_equal(a, trial_rng(5, 3).standard_normal(4))
    assert not np.array_equal(a, trial_rng(5, 4).standard_normal(4))


def test_generators():
    T = random_jacobi(10, trial_rng(0, 0))
    assert T.is_jacobi()
    L = perturbed_laplacian(10, 0.01, trial_rng(0, 0))
    assert np.all(L.a == 0) and np.all(np.abs(L.b - 1) < 0.1)


def test_benchmark_is_deterministic():
    cfg = BenchConfig("random", n=8, trials=3, digits=10, seed=4)
    r1, r2 = benchmark(cfg), benchmark(cfg)
    assert r1.records == r2.records
    assert r1.algos() == ["bg2", "bi2"]
    assert all(r.products > 0 and r.sqrts > 0 for r in r1.records)


def test_config_validation():
    with pytest.raises(ValueError):
        BenchConfig("other")
    with pytest.raises(ValueError):
        BenchConfig(digits=2)
    with pytest.raises(ValueError):
        BenchConfig(n=0)


def test_report_roundtrips():
    rep = ExperimentReport(
        [
            TrialRecord(0, 1, 5, "bg2", 12, 1.5e-9, False, 0, 100, 4),
            TrialRecord(0, 1, 5, "bi2", 12, math.inf, True, 3, 80, 4),
        ]
    )
    assert ExperimentReport.from_csv(rep.to_csv()).records == rep.records
    table = rep.to_table()
    assert table.splitlines()[0].split() == list(COLUMNS)
    assert any(line.startswith("# bi2:") for line in table.splitlines())
    assert ExperimentReport.from_table(table).records == rep.records
    assert rep.failures("bi2") == 1 and rep.median("bg2") == 1.5e-9
    assert rep.median("bi2") == math.inf


def test_permutation_sweep_small():
    d = norming_constants(random_jacobi(4, trial_rng(0, 0)))
    rows = permutation_sweep(d, digits=8)
    assert len(rows) == 24
    assert any(r.tight for r in rows)
    assert min(r.error for r in rows) < 1e-5


def test_permutation_benchmark_labels():
    rep = benchmark(BenchConfig("permutations", n=4, trials=1, digits=8))
    assert rep.algos() == ["best", "worst", "best-tight", "tightened"]
