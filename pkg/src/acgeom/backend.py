"""Scalar backends: exact rationals and float64.

Exact arrays are numpy object arrays whose entries are rational numbers
(``gmpy2.mpq`` when available, ``fractions.Fraction`` otherwise); float
arrays are plain ``float64``.  All tensor algebra in the engine is written
against ``numpy.einsum``, which works identically for both storage classes,
so every construction can run either exactly or in floating point.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

import numpy as np

from .errors import BackendError, ValidationError

try:  # pragma: no cover - environment dependent
    from gmpy2 import mpq as _mpq

    def rational(p, q=1):
        """Exact rational scalar p/q."""
        return _mpq(p, q)

    _RATIONAL_TYPES = (type(_mpq(0)), Fraction, int)
except ImportError:  # pragma: no cover
    def rational(p, q=1):
        """Exact rational scalar p/q."""
        return Fraction(p, q)

    _RATIONAL_TYPES = (Fraction, int)

EXACT = "exact"
FLOAT = "float"

ZERO = rational(0)
ONE = rational(1)


def is_exact_array(a: np.ndarray) -> bool:
    return a.dtype == object


def backend_of(a: np.ndarray) -> str:
    return EXACT if is_exact_array(a) else FLOAT


def zeros(shape, backend: str) -> np.ndarray:
    if backend == EXACT:
        out = np.empty(shape, dtype=object)
        out[...] = rational(0)
        return out
    return np.zeros(shape, dtype=float)


def eye(n: int, backend: str) -> np.ndarray:
    out = zeros((n, n), backend)
    one = rational(1) if backend == EXACT else 1.0
    for i in range(n):
        out[i, i] = one
    return out


def as_exact(a) -> np.ndarray:
    """Coerce nested ints/rationals/strings 'p/q' into an exact object array."""
    arr = np.array(a, dtype=object)
    flat = arr.reshape(-1)
    for i, v in enumerate(flat):
        flat[i] = parse_scalar(v)
    return flat.reshape(arr.shape)


def parse_scalar(v):
    """Parse a single exact scalar from int/rational/'p/q' string."""
    if isinstance(v, _RATIONAL_TYPES):
        return rational(v) if isinstance(v, int) else v
    if isinstance(v, str):
        s = v.strip()
        if "/" in s:
            p, q = s.split("/", 1)
            return rational(int(p), int(q))
        return rational(int(s))
    if isinstance(v, float):
        if v != int(v):
            raise BackendError(
                "float with fractional part cannot enter the exact backend",
                value=v,
            )
        return rational(int(v))
    raise BackendError(f"cannot interpret {v!r} as an exact rational")


def format_scalar(v) -> str:
    """Render a scalar deterministically ('p/q' for exact, repr for float)."""
    if isinstance(v, float):
        return repr(float(v))
    num, den = v.numerator, v.denominator
    if den == 1:
        return str(num)
    return f"{num}/{den}"


def to_float(a: np.ndarray) -> np.ndarray:
    if not is_exact_array(a):
        return np.asarray(a, dtype=float)
    out = np.empty(a.shape, dtype=float)
    flat_in = a.reshape(-1)
    flat_out = out.reshape(-1)
    for i, v in enumerate(flat_in):
        flat_out[i] = float(v)
    return out


def max_abs(a) -> float:
    """Largest absolute entry, as a float (0.0 for empty); accepts scalars."""
    a = np.asarray(a)
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(to_float(a))))


def is_zero(a: np.ndarray, tol: float = 0.0) -> bool:
    """Exactly zero on the exact backend; within tol on float."""
    if is_exact_array(a):
        return all(v == 0 for v in a.reshape(-1))
    return max_abs(a) <= tol


def sqrt_exact(v):
    """Exact rational square root; BackendError if not a perfect square."""
    num, den = v.numerator, v.denominator
    if num < 0:
        raise BackendError("square root of a negative rational", value=format_scalar(v))
    rn = _isqrt(num)
    rd = _isqrt(den)
    if rn * rn != num or rd * rd != den:
        raise BackendError(
            "rational is not a perfect square; use the float backend",
            value=format_scalar(v),
        )
    return rational(rn, rd)


def _isqrt(n: int) -> int:
    import math

    return math.isqrt(int(n))


def random_exact_array(rng: np.random.Generator, shape, lo=-4, hi=5, den=(1, 2, 3)) -> np.ndarray:
    """Random small-rational array (deterministic given rng state)."""
    nums = rng.integers(lo, hi, size=shape)
    dens = rng.integers(0, len(den), size=shape)
    out = np.empty(shape, dtype=object)
    it = np.nditer(nums, flags=["multi_index"])
    for _ in it:
        idx = it.multi_index
        out[idx] = rational(int(nums[idx]), den[int(dens[idx])])
    return out


def coerce_like(a, backend: str) -> np.ndarray:
    """Coerce array-like to the requested backend."""
    if backend == EXACT:
        return as_exact(a)
    if backend == FLOAT:
        arr = np.array(a, dtype=object)
        flat = arr.reshape(-1)
        vals = []
        for v in flat:
            if isinstance(v, str):
                v = parse_scalar(v)
            vals.append(float(v))
        return np.array(vals, dtype=float).reshape(arr.shape)
    raise ValidationError(f"unknown backend {backend!r}")
