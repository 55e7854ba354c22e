"""Structure-constant algebras, bundles and check reports."""

from __future__ import annotations

from dataclasses import InitVar, dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence, Union

import numpy as np

from .linalg import (
    _CHUNK,
    _INT64_SAFE,
    DimMismatch,
    Scaled,
    _narrow,
    apply,
    as_matrix,
    compose,
    exact_matmul,
    to_rational,
    zeros,
)

_to_rational = np.frompyfunc(to_rational, 1, 1)

__all__ = [
    "DEFAULT_MAX_WITNESSES",
    "BilinearOp",
    "Witness",
    "CheckReport",
    "InvalidBundle",
    "OneProductAlgebra",
    "TwoProductAlgebra",
    "BracketAlgebra",
    "eval_op",
    "check_multiplicative",
    "check_maps_commute",
    "validate_bundle",
    "report_from_residual",
    "combine",
    "basis_triples",
]

DEFAULT_MAX_WITNESSES = 16


@dataclass(frozen=True, eq=False)
class BilinearOp:
    """A bilinear product given by ``table[i, j, k]``, the ``k``-th
    coordinate of ``e_i ∘ e_j``.

    Calling the op broadcasts over leading axes of both arguments, so
    ``op(x[:, None], y[None, :])`` evaluates every pair at once.
    """

    table: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.table, dtype=object)
        if t.ndim != 3 or not (t.shape[0] == t.shape[1] == t.shape[2]):
            raise ValueError(f"structure constants must be an n×n×n cube, got shape {t.shape}")
        if t.size:
            t = np.asarray(_to_rational(t), dtype=object)
        else:
            t = t.copy()
        t.flags.writeable = False
        object.__setattr__(self, "table", t)

    @property
    def dim(self) -> int:
        return self.table.shape[0]

    @classmethod
    def zero(cls, n: int) -> "BilinearOp":
        return cls(zeros((n, n, n)))

    @classmethod
    def from_entries(cls, n: int, entries: Iterable[tuple[int, int, int, object]]) -> "BilinearOp":
        """Build from sparse ``(i, j, k, value)`` entries; absent means zero."""
        t = zeros((n, n, n))
        for i, j, k, v in entries:
            t[i, j, k] = Fraction(v)
        return cls(t)

    @classmethod
    def from_products(cls, n: int, product: Callable) -> "BilinearOp":
        """Tabulate a bilinear ``product(x, y)`` written with broadcasting ops."""
        e = _basis(n)
        t = Scaled.of(product(e[:, None, :], e[None, :, :]))
        return cls(np.broadcast_to(t.rational(), (n, n, n)).copy())

    @property
    def _pairs(self):
        # nonzero rows (i, j) of the table as one integer matrix
        cached = self.__dict__.get("_pairs_cache")
        if cached is None:
            i, j = np.nonzero(np.any(self.table != 0, axis=-1))
            rows = Scaled.of(self.table[i, j, :].reshape(len(i), self.dim))
            cached = (i, j, rows)
            object.__setattr__(self, "_pairs_cache", cached)
        return cached

    def __call__(self, u, v):
        """Evaluate on broadcastable vector arrays.

        Fraction arrays in give Fraction arrays out; a :class:`Scaled`
        argument gives a :class:`Scaled` result.
        """
        n = self.dim
        if u.shape[-1] != n or v.shape[-1] != n:
            raise DimMismatch(f"product on dimension {n} given vectors of sizes {u.shape[-1]}, {v.shape[-1]}")
        su, sv = Scaled.of(u), Scaled.of(v)
        shape = np.broadcast_shapes(su.shape[:-1], sv.shape[:-1])
        i, j, rows = self._pairs
        if len(i) == 0:
            res = Scaled(np.zeros(shape + (n,), dtype=np.int64), 1, 0)
        else:
            bound = su.bound * sv.bound * rows.bound * len(i)
            pb = su.bound * sv.bound
            U = np.broadcast_to(su.ints, shape + (n,)).reshape(-1, n)
            V = np.broadcast_to(sv.ints, shape + (n,)).reshape(-1, n)
            out = np.empty((U.shape[0], n), dtype=np.int64 if bound < _INT64_SAFE else object)
            step = max(1, _CHUNK // len(i))
            for c in range(0, U.shape[0], step):
                prod = _narrow(U[c:c + step], pb)[:, i] * _narrow(V[c:c + step], pb)[:, j]
                out[c:c + step] = exact_matmul(prod, rows.ints, bound)
            res = Scaled(out.reshape(shape + (n,)), su.den * sv.den * rows.den, bound)
        return res if isinstance(u, Scaled) or isinstance(v, Scaled) else res.rational()

    def twisted(self, f: np.ndarray, g: np.ndarray) -> "BilinearOp":
        """The product ``x, y ↦ f(x) ∘ g(y)``."""
        return BilinearOp.from_products(self.dim, lambda x, y: self(apply(f, x), apply(g, y)))

    def __add__(self, other: "BilinearOp") -> "BilinearOp":
        if other.dim != self.dim:
            raise DimMismatch("cannot add products of different dimension")
        return BilinearOp(self.table + other.table)

    def __sub__(self, other: "BilinearOp") -> "BilinearOp":
        if other.dim != self.dim:
            raise DimMismatch("cannot subtract products of different dimension")
        return BilinearOp(self.table - other.table)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BilinearOp):
            return NotImplemented
        return self.table.shape == other.table.shape and bool(np.all(self.table == other.table))

    __hash__ = None

    def entries(self) -> list[tuple[int, int, int, Fraction]]:
        """Nonzero structure constants in index order."""
        return [(int(i), int(j), int(k), self.table[i, j, k]) for i, j, k in zip(*np.nonzero(self.table != 0))]

    def is_zero(self) -> bool:
        return not bool(np.any(self.table != 0))


def eval_op(op: BilinearOp, u, v) -> np.ndarray:
    u = np.asarray(u, dtype=object)
    v = np.asarray(v, dtype=object)
    if u.shape != (op.dim,) or v.shape != (op.dim,):
        raise DimMismatch(f"expected vectors of size {op.dim}")
    return op(u, v)


@dataclass(frozen=True)
class Witness:
    """A basis-index tuple at which an identity fails, with LHS − RHS."""

    indices: tuple[int, ...]
    residual: tuple[Fraction, ...]
    identity: str = ""

    def sort_key(self):
        return (self.indices, self.identity)


@dataclass(frozen=True)
class CheckReport:
    identity_name: str
    passed: bool
    witnesses: tuple[Witness, ...] = ()
    truncated: bool = False
    parts: tuple["CheckReport", ...] = ()

    def part(self, name: str) -> "CheckReport":
        for p in self.parts:
            if p.identity_name == name:
                return p
            if p.parts:
                try:
                    return p.part(name)
                except KeyError:
                    pass
        raise KeyError(name)

    def leaves(self) -> list["CheckReport"]:
        if not self.parts:
            return [self]
        out = []
        for p in self.parts:
            out.extend(p.leaves())
        return out

    @property
    def failed(self) -> list[str]:
        return [p.identity_name for p in self.leaves() if not p.passed]

    def __bool__(self) -> bool:
        return self.passed

    def to_dict(self) -> dict:
        d = {
            "identity": self.identity_name,
            "passed": self.passed,
            "truncated": self.truncated,
            "witnesses": [
                {"identity": w.identity, "indices": list(w.indices), "residual": [str(r) for r in w.residual]}
                for w in self.witnesses
            ],
        }
        if self.parts:
            d["parts"] = [p.to_dict() for p in self.parts]
        return d


def report_from_residual(name: str, residual, arity: int,
                         max_witnesses: int = DEFAULT_MAX_WITNESSES) -> CheckReport:
    """Turn an array of residuals indexed by basis tuples into a report.

    ``residual`` (Fractions or :class:`~bihom.linalg.Scaled`) has ``arity``
    index axes followed by one coordinate axis.
    """
    res = Scaled.of(residual)
    if res.ndim != arity + 1:
        raise ValueError(f"residual for {name!r} has {res.ndim} axes, expected {arity + 1}")
    bad = np.any(res.ints != 0, axis=-1)
    hits = np.argwhere(bad)
    witnesses = tuple(
        Witness(tuple(int(i) for i in idx), tuple(res[tuple(idx)].rational()), name)
        for idx in hits[:max_witnesses]
    )
    return CheckReport(name, len(hits) == 0, witnesses, len(hits) > max_witnesses)


def combine(name: str, parts: Sequence[CheckReport],
            max_witnesses: int = DEFAULT_MAX_WITNESSES) -> CheckReport:
    ws = sorted((w for p in parts for w in p.witnesses), key=Witness.sort_key)
    truncated = any(p.truncated for p in parts) or len(ws) > max_witnesses
    passed = all(p.passed for p in parts)
    return CheckReport(name, passed, tuple(ws[:max_witnesses]), truncated, tuple(parts))


def _basis(n: int) -> Scaled:
    return Scaled(np.eye(n, dtype=np.int64), 1)


def basis_triples(n: int) -> tuple[Scaled, Scaled, Scaled]:
    """Broadcastable basis arrays ``x, y, z`` indexing axes 0, 1, 2."""
    e = _basis(n)
    return e[:, None, None, :], e[None, :, None, :], e[None, None, :, :]


def basis_pairs(n: int) -> tuple[Scaled, Scaled]:
    e = _basis(n)
    return e[:, None, :], e[None, :, :]


def check_multiplicative(f: np.ndarray, op: BilinearOp, *, name: str = "multiplicative",
                         max_witnesses: int = DEFAULT_MAX_WITNESSES) -> CheckReport:
    """``f(x∘y) = f(x)∘f(y)`` on all basis pairs."""
    if f.shape != (op.dim, op.dim):
        raise DimMismatch(f"map of size {f.shape[0]} vs product of dimension {op.dim}")
    x, y = basis_pairs(op.dim)
    res = apply(f, op(x, y)) - op(apply(f, x), apply(f, y))
    return report_from_residual(name, res, 2, max_witnesses)


def check_maps_commute(a: np.ndarray, b: np.ndarray, *, name: str = "maps_commute",
                       max_witnesses: int = DEFAULT_MAX_WITNESSES) -> CheckReport:
    """``a∘b = b∘a``; witnesses are basis indices ``(j,)`` with ``(ab − ba)e_j ≠ 0``."""
    if a.shape != b.shape:
        raise DimMismatch(f"maps of sizes {a.shape[0]} and {b.shape[0]}")
    res = (compose(a, b) - compose(b, a)).T
    return report_from_residual(name, res, 1, max_witnesses)


class InvalidBundle(ValueError):
    def __init__(self, report: CheckReport):
        self.report = report
        super().__init__(f"invalid bundle, failed: {', '.join(report.failed)}")


Product = Union[BilinearOp, np.ndarray]


def _op(p) -> BilinearOp:
    return p if isinstance(p, BilinearOp) else BilinearOp(np.asarray(p, dtype=object))


class _Bundle:
    # subclasses list their product fields here
    _products: tuple[str, ...] = ()

    def _setup(self, validate: bool):
        object.__setattr__(self, "alpha", as_matrix(self.alpha))
        object.__setattr__(self, "beta", as_matrix(self.beta))
        n = self.alpha.shape[0]
        for p in self._products:
            op = _op(getattr(self, p))
            object.__setattr__(self, p, op)
            if op.dim != n:
                raise DimMismatch(f"{p} has dimension {op.dim} but the maps have size {n}")
        if self.beta.shape != self.alpha.shape:
            raise DimMismatch("alpha and beta act on different spaces")
        if validate:
            rep = validate_bundle(self)
            if not rep.passed:
                raise InvalidBundle(rep)

    @property
    def dim(self) -> int:
        return self.alpha.shape[0]

    def products(self) -> dict[str, BilinearOp]:
        return {p: getattr(self, p) for p in self._products}

    def __eq__(self, other) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return (
            np.array_equal(self.alpha, other.alpha)
            and np.array_equal(self.beta, other.beta)
            and all(getattr(self, p) == getattr(other, p) for p in self._products)
        )

    __hash__ = None


@dataclass(frozen=True, eq=False)
class OneProductAlgebra(_Bundle):
    """``(A, μ, α, β)``.  Validated on construction unless ``validate=False``."""

    mu: Product
    alpha: np.ndarray
    beta: np.ndarray
    validate: InitVar[bool] = True
    _products = ("mu",)

    def __post_init__(self, validate):
        self._setup(validate)


@dataclass(frozen=True, eq=False)
class TwoProductAlgebra(_Bundle):
    """``(A, μ, ∗, α, β)``."""

    mu: Product
    star: Product
    alpha: np.ndarray
    beta: np.ndarray
    validate: InitVar[bool] = True
    _products = ("mu", "star")

    def __post_init__(self, validate):
        self._setup(validate)

    @property
    def mu_part(self) -> OneProductAlgebra:
        return OneProductAlgebra(self.mu, self.alpha, self.beta, validate=False)

    @property
    def star_part(self) -> OneProductAlgebra:
        return OneProductAlgebra(self.star, self.alpha, self.beta, validate=False)


@dataclass(frozen=True, eq=False)
class BracketAlgebra(_Bundle):
    """``(A, μ, [·,·], α, β)``: a commutative-type product alongside a bracket."""

    mu: Product
    bracket: Product
    alpha: np.ndarray
    beta: np.ndarray
    validate: InitVar[bool] = True
    _products = ("mu", "bracket")

    def __post_init__(self, validate):
        self._setup(validate)

    @property
    def mu_part(self) -> OneProductAlgebra:
        return OneProductAlgebra(self.mu, self.alpha, self.beta, validate=False)

    @property
    def lie(self) -> OneProductAlgebra:
        return OneProductAlgebra(self.bracket, self.alpha, self.beta, validate=False)


def validate_bundle(A, *, max_witnesses: int = DEFAULT_MAX_WITNESSES) -> CheckReport:
    """Commuting structure maps, each multiplicative for every product."""
    parts = [check_maps_commute(A.alpha, A.beta, max_witnesses=max_witnesses)]
    for pname, op in A.products().items():
        for mname in ("alpha", "beta"):
            parts.append(check_multiplicative(getattr(A, mname), op, name=f"{mname}_multiplicative_{pname}",
                                              max_witnesses=max_witnesses))
    return combine("structure", parts, max_witnesses)
