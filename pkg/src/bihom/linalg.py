"""Exact rational vectors and matrices.

Everything here works on numpy ``object`` arrays holding
:class:`fractions.Fraction` entries.  A linear map on an ``n``-dimensional
space is an ``(n, n)`` array whose column ``j`` is the image of basis
vector ``j``; a vector is a 1-d array of length ``n``.  Arrays returned by
this module are marked read-only.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

__all__ = [
    "Singular",
    "DimMismatch",
    "to_rational",
    "as_vector",
    "as_matrix",
    "identity",
    "zeros",
    "diag",
    "basis",
    "Scaled",
    "exact_matmul",
    "apply",
    "compose",
    "rref",
    "kernel",
    "mat_inverse",
    "mat_pow",
    "fixed_subspace",
    "is_zero",
    "format_rational",
    "parse_rational",
]


class Singular(ValueError):
    """A linear map that was required to be invertible is not."""


class DimMismatch(ValueError):
    """Operands act on spaces of different dimension."""


def to_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'p/q' string")
    if isinstance(x, str):
        return parse_rational(x)
    return Fraction(x)


_to_rational = np.frompyfunc(to_rational, 1, 1)


def _frozen(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


def as_vector(v: Iterable) -> np.ndarray:
    arr = np.asarray(list(v) if not isinstance(v, np.ndarray) else v, dtype=object)
    if arr.ndim != 1:
        raise ValueError(f"expected a 1-d vector, got shape {arr.shape}")
    return _frozen(np.asarray(_to_rational(arr), dtype=object).reshape(arr.shape))


def as_matrix(m) -> np.ndarray:
    arr = np.asarray(m, dtype=object)
    if arr.size == 0 and arr.ndim < 2:
        arr = arr.reshape(0, 0)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {arr.shape}")
    return _frozen(np.asarray(_to_rational(arr), dtype=object).reshape(arr.shape))


def zeros(shape) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    out.fill(Fraction(0))
    return out


def identity(n: int) -> np.ndarray:
    m = zeros((n, n))
    for i in range(n):
        m[i, i] = Fraction(1)
    return _frozen(m)


def diag(*entries) -> np.ndarray:
    if len(entries) == 1 and not isinstance(entries[0], (int, str, Fraction)):
        entries = tuple(entries[0])
    n = len(entries)
    m = zeros((n, n))
    for i, e in enumerate(entries):
        m[i, i] = to_rational(e)
    return _frozen(m)


def basis(n: int) -> np.ndarray:
    """Rows of the result are the standard basis vectors."""
    return identity(n)


# -- scaled integer arrays ---------------------------------------------------------
#
# Bulk evaluation keeps values as integers over one common denominator and only
# turns them back into Fractions at the edges.  Integer parts are int64 while a
# magnitude bound proves no overflow, and Python ints (dtype object) otherwise.

_INT64_SAFE = 2**62
_FLOAT_EXACT = 2**53
_CHUNK = 1 << 22

_denominator = np.frompyfunc(lambda q: q.denominator, 1, 1)


def _maxabs(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    if a.dtype == object:
        return max(abs(int(x)) for x in a.flat)
    return int(np.abs(a).max())


def _narrow(a: np.ndarray, bound: int) -> np.ndarray:
    """int64 copy of ``a`` when ``bound`` allows, else Python ints."""
    if bound < _INT64_SAFE:
        return a.astype(np.int64)
    return a.astype(object)


class Scaled:
    """Exact array ``ints / den`` with integer ``ints`` and a positive ``den``.

    Supports ``+``, ``-``, unary ``-``, indexing and comparison with zero;
    :func:`apply` and bilinear products accept and return it.
    """

    __slots__ = ("ints", "den", "bound")
    __array_ufunc__ = None  # keep numpy from broadcasting Fraction arrays into us

    def __init__(self, ints: np.ndarray, den: int = 1, bound: Optional[int] = None):
        if bound is None or bound >= _INT64_SAFE:
            # a priori bounds can overshoot; measure before giving up on int64
            bound = _maxabs(ints)
        want = np.int64 if bound < _INT64_SAFE else object
        self.ints = ints if ints.dtype == want else ints.astype(want)
        self.den = den
        self.bound = bound

    @classmethod
    def of(cls, a) -> "Scaled":
        if isinstance(a, Scaled):
            return a
        a = np.asarray(a, dtype=object)
        if a.size == 0:
            return cls(np.zeros(a.shape, dtype=np.int64), 1, 0)
        d = math.lcm(*{int(x) for x in _denominator(a).flat})
        ints = np.frompyfunc(lambda q: q.numerator * (d // q.denominator), 1, 1)(a)
        return cls(np.asarray(ints, dtype=object).reshape(a.shape), d)

    def rational(self) -> np.ndarray:
        """Fraction array with the same shape."""
        if self.ints.size == 0:
            return zeros(self.ints.shape)
        if self.ints.dtype == object:
            return np.asarray(np.frompyfunc(lambda x: Fraction(x, self.den), 1, 1)(self.ints), dtype=object)
        vals, inv = np.unique(self.ints, return_inverse=True)
        table = np.empty(len(vals), dtype=object)
        table[:] = [Fraction(int(v), self.den) for v in vals]
        return table[inv.reshape(self.ints.shape)]

    @property
    def shape(self) -> tuple[int, ...]:
        return self.ints.shape

    @property
    def ndim(self) -> int:
        return self.ints.ndim

    @property
    def size(self) -> int:
        return self.ints.size

    def __getitem__(self, idx) -> "Scaled":
        return Scaled(self.ints[idx], self.den, self.bound)

    def __ne__(self, other) -> np.ndarray:
        if not (isinstance(other, int) and other == 0):
            raise TypeError("Scaled arrays only compare against 0")
        return self.ints != 0

    __hash__ = None

    def _rescaled(self, den: int) -> tuple[np.ndarray, int]:
        k = den // self.den
        if k == 1:
            return self.ints, self.bound
        bound = self.bound * k
        return _narrow(self.ints, bound) * k, bound

    def __add__(self, other) -> "Scaled":
        other = Scaled.of(other)
        den = math.lcm(self.den, other.den)
        a, ba = self._rescaled(den)
        b, bb = other._rescaled(den)
        bound = ba + bb
        return Scaled(_narrow(a, bound) + _narrow(b, bound), den, bound)

    def __neg__(self) -> "Scaled":
        return Scaled(-self.ints, self.den, self.bound)

    def __sub__(self, other) -> "Scaled":
        return self + (-Scaled.of(other))

    def __radd__(self, other) -> "Scaled":
        return self + other

    def __rsub__(self, other) -> "Scaled":
        return Scaled.of(other) - self


def exact_matmul(a: np.ndarray, b: np.ndarray, bound: int) -> np.ndarray:
    """``a @ b`` for integer arrays whose result entries (and all partial
    sums) are bounded by ``bound`` in absolute value."""
    if bound < _FLOAT_EXACT and a.dtype != object and b.dtype != object:
        # every partial sum is an integer below 2**53, so float64 is exact here
        return np.rint(a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64)
    a, b = _narrow(a, bound), _narrow(b, bound)
    return a @ b


def apply(m: np.ndarray, v):
    """Apply ``m`` to the last axis of ``v`` (broadcasts over leading axes).

    Fraction arrays in give Fraction arrays out; :class:`Scaled` in gives
    :class:`Scaled` out.
    """
    if m.shape[1] != v.shape[-1]:
        raise DimMismatch(f"map of size {m.shape[0]} applied to vector of size {v.shape[-1]}")
    sv = Scaled.of(v)
    sm = Scaled.of(m)
    n = m.shape[1]
    flat = sv.ints.reshape(math.prod(sv.shape[:-1]), n)
    bound = sm.bound * sv.bound * n
    out = exact_matmul(flat, sm.ints.T, bound).reshape(sv.shape[:-1] + (m.shape[0],))
    res = Scaled(out, sm.den * sv.den, bound)
    return res if isinstance(v, Scaled) else res.rational()


def compose(*maps: np.ndarray) -> np.ndarray:
    """``compose(f, g, h)`` is ``f∘g∘h``."""
    n = maps[0].shape[0]
    out = identity(n)
    for m in maps:
        if m.shape != (n, n):
            raise DimMismatch(f"cannot compose maps of sizes {n} and {m.shape[0]}")
        out = out.dot(m)
    return _frozen(np.asarray(out, dtype=object))


def is_zero(a: np.ndarray) -> bool:
    return not any(x != 0 for x in a.flat)


def rref(m: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and the pivot columns.

    Pivots are taken as the first nonzero entry in each column, scanning
    rows top-down, so the result is fully deterministic.
    """
    a = np.array(m, dtype=object)
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if a[i, c] != 0), None)
        if p is None:
            continue
        if p != r:
            a[[r, p]] = a[[p, r]]
        a[r] = a[r] / a[r, c]
        for i in range(rows):
            if i != r and a[i, c] != 0:
                a[i] = a[i] - a[i, c] * a[r]
        pivots.append(c)
        r += 1
    return a, pivots


def kernel(m: np.ndarray) -> list[np.ndarray]:
    """Basis of the null space of ``m`` (one vector per free column)."""
    cols = m.shape[1]
    if m.shape[0] == 0:
        return [identity(cols)[j] for j in range(cols)]
    red, pivots = rref(m)
    free = [c for c in range(cols) if c not in pivots]
    out = []
    for f in free:
        v = zeros(cols)
        v[f] = Fraction(1)
        for row, pc in enumerate(pivots):
            v[pc] = -red[row, f]
        out.append(_frozen(v))
    return out


def mat_inverse(m: np.ndarray) -> np.ndarray:
    n = m.shape[0]
    if m.shape != (n, n):
        raise DimMismatch(f"cannot invert non-square matrix of shape {m.shape}")
    aug = np.concatenate([np.asarray(m, dtype=object), identity(n)], axis=1)
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise Singular("matrix is not invertible")
    return _frozen(np.ascontiguousarray(red[:, n:]))


def mat_pow(m: np.ndarray, k: int) -> np.ndarray:
    if k < 0:
        return mat_pow(mat_inverse(m), -k)
    out = identity(m.shape[0])
    sq = m
    while k:
        if k & 1:
            out = out.dot(sq)
        k >>= 1
        if k:
            sq = sq.dot(sq)
    return _frozen(np.asarray(out, dtype=object))


def fixed_subspace(ms: Sequence[np.ndarray]) -> list[np.ndarray]:
    """Basis of the vectors fixed by every map in ``ms``."""
    if not ms:
        raise ValueError("need at least one map")
    n = ms[0].shape[0]
    for m in ms:
        if m.shape != (n, n):
            raise DimMismatch("all maps must act on the same space")
    ident = identity(n)
    stacked = np.concatenate([m - ident for m in ms], axis=0)
    return kernel(stacked)


def format_rational(q) -> str:
    return str(Fraction(q))


def parse_rational(s: str) -> Fraction:
    """Parse canonical ``"p/q"`` or ``"p"``; anything else is rejected."""
    if not isinstance(s, str):
        raise ValueError(f"expected a rational string, got {s!r}")
    try:
        q = Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational: {s!r}") from exc
    if str(q) != s:
        raise ValueError(f"rational {s!r} is not in canonical form (expected {str(q)!r})")
    return q
