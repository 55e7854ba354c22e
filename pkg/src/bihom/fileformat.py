"""JSON algebra files.

Layout::

    {
      "format_version": "1",
      "dim": 2,
      "basis_names": ["1", "x"],            # optional, defaults to e0, e1, ...
      "mu":    [[0, 0, 0, "1"], [0, 1, 1, "-1"], ...],   # sparse i, j, k, value
      "star":  [...],                       # optional
      "bracket": [...],                     # optional
      "alpha": [["1", "0"], ["0", "-1"]],   # row-major
      "beta":  [[...], ...],
      "derivation": [[...], ...],           # optional
      "provenance": {...}                   # optional, free-form JSON object
    }

Rationals are canonical strings ``"p/q"`` (``q > 0``, reduced) or ``"p"``.
Unknown keys, out-of-range indices, repeated or zero triples and
non-canonical rationals are rejected with :class:`ParseError`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from .core import BilinearOp, BracketAlgebra, OneProductAlgebra, TwoProductAlgebra
from .linalg import as_matrix, format_rational, parse_rational, zeros

__all__ = ["FORMAT_VERSION", "ParseError", "AlgebraFile", "loads", "dumps", "load", "dump"]

FORMAT_VERSION = "1"

_KEYS = {"format_version", "dim", "basis_names", "mu", "star", "bracket", "alpha", "beta", "derivation", "provenance"}
_REQUIRED = {"format_version", "dim", "mu", "alpha", "beta"}


class ParseError(ValueError):
    pass


@dataclass(eq=False)
class AlgebraFile:
    dim: int
    mu: BilinearOp
    alpha: np.ndarray
    beta: np.ndarray
    star: Optional[BilinearOp] = None
    bracket: Optional[BilinearOp] = None
    derivation: Optional[np.ndarray] = None
    basis_names: Optional[list[str]] = None
    provenance: Optional[dict] = None
    format_version: str = FORMAT_VERSION

    @classmethod
    def from_bundle(cls, A, *, derivation=None, basis_names=None, provenance=None) -> "AlgebraFile":
        return cls(
            dim=A.dim,
            mu=A.mu,
            alpha=A.alpha,
            beta=A.beta,
            star=getattr(A, "star", None),
            bracket=getattr(A, "bracket", None),
            derivation=None if derivation is None else as_matrix(derivation),
            basis_names=basis_names,
            provenance=provenance,
        )

    def one_product(self, validate: bool = True) -> OneProductAlgebra:
        return OneProductAlgebra(self.mu, self.alpha, self.beta, validate=validate)

    def two_product(self, validate: bool = True) -> TwoProductAlgebra:
        if self.star is None:
            raise KeyError("star")
        return TwoProductAlgebra(self.mu, self.star, self.alpha, self.beta, validate=validate)

    def bracket_algebra(self, validate: bool = True) -> BracketAlgebra:
        if self.bracket is None:
            raise KeyError("bracket")
        return BracketAlgebra(self.mu, self.bracket, self.alpha, self.beta, validate=validate)

    def bundle(self, validate: bool = True):
        """The richest bundle the file describes (``∗`` before bracket)."""
        if self.star is not None:
            return self.two_product(validate)
        if self.bracket is not None:
            return self.bracket_algebra(validate)
        return self.one_product(validate)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraFile):
            return NotImplemented
        return dumps(self) == dumps(other)


# -- parsing ---------------------------------------------------------------------


def _rational(v, where: str):
    try:
        return parse_rational(v)
    except ValueError as exc:
        raise ParseError(f"{where}: {exc}") from None


def _triples(data, n: int, key: str) -> BilinearOp:
    if not isinstance(data, list):
        raise ParseError(f"{key}: expected a list of [i, j, k, value] triples")
    t = zeros((n, n, n))
    seen = set()
    for pos, entry in enumerate(data):
        where = f"{key}[{pos}]"
        if not (isinstance(entry, list) and len(entry) == 4):
            raise ParseError(f"{where}: expected [i, j, k, value]")
        *idx, value = entry
        if not all(isinstance(i, int) and not isinstance(i, bool) and 0 <= i < n for i in idx):
            raise ParseError(f"{where}: indices must be integers in [0, {n})")
        if tuple(idx) in seen:
            raise ParseError(f"{where}: repeated index triple {tuple(idx)}")
        seen.add(tuple(idx))
        q = _rational(value, where)
        if q == 0:
            raise ParseError(f"{where}: zero entries must be omitted")
        t[tuple(idx)] = q
    return BilinearOp(t)


def _matrix(data, n: int, key: str) -> np.ndarray:
    if not (isinstance(data, list) and len(data) == n and all(isinstance(r, list) and len(r) == n for r in data)):
        raise ParseError(f"{key}: expected a {n}×{n} row-major matrix")
    rows = [[_rational(v, f"{key}[{i}][{j}]") for j, v in enumerate(r)] for i, r in enumerate(data)]
    return as_matrix(np.array(rows, dtype=object).reshape(n, n))


def from_dict(d: dict) -> AlgebraFile:
    if not isinstance(d, dict):
        raise ParseError("top level must be a JSON object")
    unknown = set(d) - _KEYS
    if unknown:
        raise ParseError(f"unknown keys: {', '.join(sorted(unknown))}")
    missing = _REQUIRED - set(d)
    if missing:
        raise ParseError(f"missing keys: {', '.join(sorted(missing))}")
    if d["format_version"] != FORMAT_VERSION:
        raise ParseError(f"unsupported format_version {d['format_version']!r}")
    n = d["dim"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise ParseError("dim must be a non-negative integer")
    names = d.get("basis_names")
    if names is not None and not (isinstance(names, list) and len(names) == n and all(isinstance(s, str) for s in names)):
        raise ParseError(f"basis_names must be a list of {n} strings")
    prov = d.get("provenance")
    if prov is not None and not isinstance(prov, dict):
        raise ParseError("provenance must be an object")
    return AlgebraFile(
        dim=n,
        mu=_triples(d["mu"], n, "mu"),
        alpha=_matrix(d["alpha"], n, "alpha"),
        beta=_matrix(d["beta"], n, "beta"),
        star=_triples(d["star"], n, "star") if "star" in d else None,
        bracket=_triples(d["bracket"], n, "bracket") if "bracket" in d else None,
        derivation=_matrix(d["derivation"], n, "derivation") if "derivation" in d else None,
        basis_names=names,
        provenance=prov,
    )


def loads(text: str) -> AlgebraFile:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    return from_dict(d)


def load(path) -> AlgebraFile:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return loads(text)


# -- writing ---------------------------------------------------------------------


def _triple_list(op: BilinearOp) -> list:
    return [[i, j, k, format_rational(v)] for i, j, k, v in op.entries()]


def _matrix_list(m: np.ndarray) -> list:
    return [[format_rational(v) for v in row] for row in m]


def to_dict(f: AlgebraFile) -> dict:
    d: dict = {"format_version": f.format_version, "dim": f.dim}
    if f.basis_names is not None:
        d["basis_names"] = list(f.basis_names)
    d["mu"] = _triple_list(f.mu)
    if f.star is not None:
        d["star"] = _triple_list(f.star)
    if f.bracket is not None:
        d["bracket"] = _triple_list(f.bracket)
    d["alpha"] = _matrix_list(f.alpha)
    d["beta"] = _matrix_list(f.beta)
    if f.derivation is not None:
        d["derivation"] = _matrix_list(f.derivation)
    if f.provenance is not None:
        d["provenance"] = f.provenance
    return d


def dumps(f: AlgebraFile) -> str:
    """Serialize with one triple or matrix row per line (byte-stable)."""
    lines = ["{"]
    items = list(to_dict(f).items())
    for pos, (key, value) in enumerate(items):
        sep = "," if pos < len(items) - 1 else ""
        if isinstance(value, list) and value and isinstance(value[0], list):
            rows = ",\n    ".join(json.dumps(r) for r in value)
            lines.append(f'  "{key}": [\n    {rows}\n  ]{sep}')
        else:
            lines.append(f'  "{key}": {json.dumps(value, sort_keys=True)}{sep}')
    lines.append("}")
    return "\n".join(lines) + "\n"


def dump(f: AlgebraFile, path) -> None:
    Path(path).write_text(dumps(f))
