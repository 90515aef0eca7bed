import subprocess
import sys

import numpy as np
import pytest

from jacobi_inverse.cli import main
from jacobi_inverse.core import TridiagonalMatrix, error_metric
from jacobi_inverse.textio import format_matrix, parse_matrix, parse_spectral


@pytest.fixture
def matrix_file(tmp_path):
    p = tmp_path / "t.txt"
    p.write_text(format_matrix(TridiagonalMatrix([1.0, -0.5, 2.0, 0.25], [0.7, 1.3, 0.4])))
    return p


def test_forward_then_reconstruct(tmp_path, matrix_file, capsys):
    assert main(["forward", str(matrix_file)]) == 0
    spec = tmp_path / "s.txt"
    spec.write_text(capsys.readouterr().out)
    parse_spectral(spec.read_text())
    for algo in ("bg", "bi", "bg2", "bi2", "qr"):
        assert main(["reconstruct", "--algo", algo, str(spec)]) == 0
        t = parse_matrix(capsys.readouterr().out)
        assert error_metric(t, parse_matrix(matrix_file.read_text())) < 1e-10


def test_tighten_output(tmp_path, capsys):
    spec = tmp_path / "s.txt"
    spec.write_text("2\n0 2\n0.70710678118654757 0.70710678118654757\n")
    assert main(["tighten", str(spec)]) == 0
    lines = dict(line.split(" ", 1) for line in capsys.readouterr().out.splitlines())
    assert set(lines) == {"permutation", "beta", "sweeps", "transpositions"}
    assert sorted(lines["permutation"].split()) == ["1", "2"]
    assert float(lines["beta"]) == pytest.approx(2.0)


def test_bench_csv(capsys):
    assert main(["bench", "--n", "6", "--trials", "2", "--digits", "10", "--format", "csv"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0].startswith("trial,seed,n,algo") and len(out) == 5


def test_exit_codes(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("2\n1 0\n0.6 0.8\n")
    assert main(["reconstruct", str(bad)]) == 1
    assert main(["forward", str(tmp_path / "missing.txt")]) == 1
    with pytest.raises(SystemExit) as exc:
        main(["reconstruct", "--algo", "nope", str(bad)])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 1


def test_numerical_breakdown_exit_code(tmp_path, monkeypatch):
    from jacobi_inverse import cli
    from jacobi_inverse.errors import NumericalBreakdown

    def boom(*args, **kwargs):
        raise NumericalBreakdown("pivot", direction="forward")

    monkeypatch.setattr(cli, "reconstruct_from_w", boom)
    spec = tmp_path / "s.txt"
    spec.write_text("1\n0\n1\n")
    assert main(["reconstruct", str(spec)]) == 2


def test_stdin_and_module_entry():
    text = format_matrix(TridiagonalMatrix([0.0, 1.0], [0.5]))
    res = subprocess.run(
        [sys.executable, "-m", "jacobi_inverse", "forward", "-"],
        input=text, capture_output=True, text=True, check=True,
    )
    d = parse_spectral(res.stdout)
    assert np.allclose(d.lam, np.linalg.eigvalsh([[0.0, 0.5], [0.5, 1.0]]))
