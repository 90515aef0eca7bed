"""Arithmetic contexts for the reconstruction engines.

Every elementary result computed by an engine goes through a
:class:`ScalarMode`. In native mode the operations are plain IEEE double
arithmetic; with ``digits=d`` each result of ``+ - * / sqrt`` is rounded
to ``d`` significant decimal digits, which emulates running the same
algorithm on a decimal machine with a ``d``-digit significand.

Operands may be Python floats or numpy arrays; elementwise array
operations are rounded element by element, so a vectorized row update is
equivalent to the scalar loop it replaces.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# 10**k is exact in binary64 up to k = 22
_EXACT_POW10 = 22


def round_sig(x, digits: int):
    """Round ``x`` to ``digits`` significant decimal digits, ties to even.

    Works elementwise on arrays. Zeros, infinities and NaNs pass through.
    The decimal rounding is carried out on the binary value through a
    power-of-ten rescaling, so the result can be off by one ulp of the
    binary carrier in rare cases.
    """
    x = np.asarray(x, dtype=float)
    ax = np.abs(x)
    ok = np.isfinite(x) & (ax > 1e-290)
    safe = np.where(ok, ax, 1.0)
    e = np.floor(np.log10(safe))
    # log10 can land on the wrong side of an exact power of ten
    e = np.where(safe < 10.0**e, e - 1, e)
    e = np.where(safe >= 10.0 ** (e + 1), e + 1, e)
    shift = (digits - 1) - e
    up = shift >= 0
    s = np.where(up, shift, -shift)
    s = np.minimum(s, 600)
    with np.errstate(over="ignore", invalid="ignore"):
        big = s > _EXACT_POW10
        p = 10.0 ** np.where(big, _EXACT_POW10, s)
        p2 = 10.0 ** np.where(big, s - _EXACT_POW10, 0)
        y = np.where(up, x * p * p2, x / p / p2)
        y = np.round(y)
        r = np.where(up, y / p / p2, y * p * p2)
    r = np.where(ok, r, x)
    if r.ndim == 0:
        return float(r)
    return r


def _round_scalar(x: float, digits: int) -> float:
    """Pure-Python twin of :func:`round_sig` for a single float."""
    ax = abs(x)
    if not (ax > 1e-290) or not math.isfinite(x):
        return x
    e = math.floor(math.log10(ax))
    if ax < 10.0**e:
        e -= 1
    elif ax >= 10.0 ** (e + 1):
        e += 1
    shift = digits - 1 - e
    s = min(abs(shift), 600)
    if s > _EXACT_POW10:
        p, p2 = 10.0**_EXACT_POW10, 10.0 ** (s - _EXACT_POW10)
    else:
        p, p2 = 10.0**s, 1.0
    if shift >= 0:
        return float(round(x * p * p2)) / p / p2
    return float(round(x / p / p2)) * p * p2


@dataclass
class OpCounter:
    """Counts multiplications/divisions and square roots, elementwise."""

    products_and_quotients: int = 0
    square_roots: int = 0


@dataclass
class ScalarMode:
    """Arithmetic context: native precision (``digits=0``) or ``digits >= 4``.

    An optional :class:`OpCounter` records every product, quotient and
    square root performed through the context.
    """

    digits: int = 0
    counter: OpCounter | None = None

    def __post_init__(self):
        if self.digits != 0 and self.digits < 4:
            raise ValueError(f"digits must be 0 (native) or at least 4, got {self.digits}")

    @property
    def native(self) -> bool:
        return self.digits == 0

    def r(self, x):
        if self.digits == 0:
            return x
        if isinstance(x, float):
            return _round_scalar(x, self.digits)
        return round_sig(x, self.digits)

    def _count(self, result, sqrt=False):
        if self.counter is not None:
            if sqrt:
                self.counter.square_roots += int(np.size(result))
            else:
                self.counter.products_and_quotients += int(np.size(result))

    def add(self, x, y):
        return self.r(x + y)

    def sub(self, x, y):
        return self.r(x - y)

    def mul(self, x, y):
        z = x * y
        self._count(z)
        return self.r(z)

    def div(self, x, y):
        with np.errstate(divide="ignore", invalid="ignore"):
            z = np.divide(x, y)
        self._count(z)
        return self.r(z)

    def sqrt(self, x):
        with np.errstate(invalid="ignore"):
            z = np.sqrt(x)
        self._count(z, sqrt=True)
        return self.r(z)

    def sum(self, v):
        """Left-to-right sum over the last axis, rounding every partial sum."""
        v = np.asarray(v, dtype=float)
        if self.digits == 0:
            acc = v[..., 0]
            for j in range(1, v.shape[-1]):
                acc = acc + v[..., j]
            return acc
        acc = v[..., 0]
        for j in range(1, v.shape[-1]):
            acc = self.r(acc + v[..., j])
        return acc


NATIVE = ScalarMode()


def as_mode(mode) -> ScalarMode:
    """Accept ``None``, an int number of digits, or a :class:`ScalarMode`."""
    if mode is None:
        return NATIVE
    if isinstance(mode, ScalarMode):
        return mode
    return ScalarMode(int(mode))
