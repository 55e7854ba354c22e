"""Deterministic example families.

``gen_truncated_poly`` and ``gen_nilpotent`` return the raw ingredients
``(mu, alpha, beta, D)`` of a derivation algebra; feed them to
:func:`bihom.constructions.derivation_bhnp`.  The derivation is always the
Euler derivation ``xᵏ ↦ k·xᵏ``: it is the weight-0 derivation, so it
commutes with every diagonal scaling ``xᵏ ↦ cᵏxᵏ``.
"""

from __future__ import annotations

from fractions import Fraction

from .core import BilinearOp, TwoProductAlgebra
from .linalg import diag, identity, to_rational

__all__ = ["gen_truncated_poly", "gen_nilpotent", "gen_zero"]


def _weighted(degrees, a_scale, b_scale):
    a, b = to_rational(a_scale), to_rational(b_scale)
    alpha = diag(*[a**k for k in degrees])
    beta = diag(*[b**k for k in degrees])
    euler = diag(*[Fraction(k) for k in degrees])
    return alpha, beta, euler


def gen_truncated_poly(n: int, a_scale=1, b_scale=1):
    """``ℚ[x]/(xⁿ)`` with basis ``1, x, …, xⁿ⁻¹``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    mu = BilinearOp.from_entries(n, ((i, j, i + j, 1) for i in range(n) for j in range(n) if i + j < n))
    return (mu, *_weighted(range(n), a_scale, b_scale))


def gen_nilpotent(m: int, a_scale=1, b_scale=1):
    """The non-unital ``span{x, …, xᵐ}``; index ``k`` holds ``x^(k+1)``."""
    if m < 1:
        raise ValueError("m must be at least 1")
    mu = BilinearOp.from_entries(
        m, ((i, j, i + j + 1, 1) for i in range(m) for j in range(m) if i + j + 2 <= m)
    )
    return (mu, *_weighted(range(1, m + 1), a_scale, b_scale))


def gen_zero(n: int = 0) -> TwoProductAlgebra:
    """Zero products with identity maps; passes every suite."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return TwoProductAlgebra(BilinearOp.zero(n), BilinearOp.zero(n), identity(n), identity(n))
