"""Plain-text formats for matrices and spectral data.

Matrix record::

    n
    a_1 ... a_n
    b_1 ... b_{n-1}      (empty for n = 1)

Spectral record::

    n
    lambda_1 ... lambda_n   (ascending)
    w_1 ... w_n

Lines starting with ``#`` are comments. Floats are written with 17
significant digits so they round-trip exactly.
"""

from __future__ import annotations

from .core import SpectralData, TridiagonalMatrix


class FormatError(ValueError):
    pass


def _fmt_row(values) -> str:
    return " ".join(format(float(v), ".17g") for v in values)


def _data_lines(text: str) -> list[str]:
    return [ln.strip() for ln in text.splitlines() if not ln.lstrip().startswith("#")]


def _parse_floats(line: str, count: int, what: str) -> list[float]:
    parts = line.split()
    if len(parts) != count:
        raise FormatError(f"expected {count} {what}, found {len(parts)}")
    try:
        return [float(p) for p in parts]
    except ValueError as exc:
        raise FormatError(f"bad number in {what}: {exc}") from None


def _parse_record(text: str, second: str, third: str, third_count) -> tuple[int, list[float], list[float]]:
    lines = [ln for ln in _data_lines(text) if ln]
    if not lines:
        raise FormatError("empty input")
    try:
        n = int(lines[0])
    except ValueError:
        raise FormatError(f"first line must be the dimension, got {lines[0]!r}") from None
    if n < 1:
        raise FormatError("dimension must be positive")
    m = third_count(n)
    expected = 3 if m > 0 else 2
    if len(lines) != expected:
        raise FormatError(f"expected {expected} data lines, found {len(lines)}")
    first = _parse_floats(lines[1], n, second)
    rest = _parse_floats(lines[2], m, third) if m > 0 else []
    return n, first, rest


def format_matrix(t: TridiagonalMatrix) -> str:
    return f"{t.n}\n{_fmt_row(t.a)}\n{_fmt_row(t.b)}\n"


def parse_matrix(text: str) -> TridiagonalMatrix:
    _, a, b = _parse_record(text, "diagonal entries", "off-diagonal entries", lambda n: n - 1)
    return TridiagonalMatrix(a, b)


def format_spectral(d: SpectralData) -> str:
    return f"{d.n}\n{_fmt_row(d.lam)}\n{_fmt_row(d.w)}\n"


def parse_spectral(text: str) -> SpectralData:
    _, lam, w = _parse_record(text, "eigenvalues", "norming constants", lambda n: n)
    return SpectralData(lam, w)
