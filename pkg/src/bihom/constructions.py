"""Constructions producing new bundles: Yau twists, tensor products,
perturbations by fixed elements, derivation algebras and commutator
brackets.

Outputs are validated (commuting, multiplicative maps) on construction.
Setting :data:`VERIFY` to true additionally runs the promised suite on
every output and raises :class:`ConstructionFailed` on violation; the
test suite turns it on.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .core import (
    DEFAULT_MAX_WITNESSES,
    BilinearOp,
    BracketAlgebra,
    CheckReport,
    OneProductAlgebra,
    TwoProductAlgebra,
    basis_pairs,
    check_maps_commute,
    check_multiplicative,
    combine,
    report_from_residual,
)
from .identities import (
    InvariantViolation,
    PrereqFailed,
    check_bhnp_full,
    check_bihom_associative,
    check_bihom_commutative,
    check_bihom_poisson,
    check_left_bihom_assoc,
)
from .linalg import DimMismatch, apply, as_matrix, as_vector, compose, identity, mat_inverse, mat_pow

__all__ = [
    "VERIFY",
    "NotFixed",
    "NotMorphism",
    "MapsDontCommute",
    "NotCommutativeAssociative",
    "NotDerivation",
    "ConstructionFailed",
    "PerturbationElement",
    "yau_twist",
    "yau_twist_power",
    "tensor_ops",
    "tensor_product",
    "perturb_mu",
    "perturb_mu_guarantee",
    "perturb_thm1",
    "perturb_thm2",
    "perturb_double",
    "derivation_bhnp",
    "derivation_perturbed",
    "commutator_bracket",
    "AdmissibilityReport",
    "admissibility_test",
    "bracket_pushforward_checks",
]

VERIFY = False


class NotFixed(ValueError):
    """A perturbation element is not fixed by the required powers of the maps."""


class NotMorphism(ValueError):
    """A twisting map is not multiplicative for one of the products."""


class MapsDontCommute(ValueError):
    pass


class NotCommutativeAssociative(ValueError):
    pass


class NotDerivation(ValueError):
    pass


class ConstructionFailed(AssertionError):
    """An output failed the suite its construction guarantees."""

    def __init__(self, construction: str, report: CheckReport):
        self.report = report
        super().__init__(f"{construction}: output fails {', '.join(report.failed)}")


def _verify(name: str, out, check, inputs=()):
    # the guarantee only applies when every input satisfies the suite itself
    if VERIFY and all(check(A).passed for A in inputs):
        rep = check(out)
        if not rep.passed:
            raise ConstructionFailed(name, rep)
    return out


@dataclass(frozen=True, eq=False)
class PerturbationElement:
    """An element ``a`` with ``α^p(a) = β^p(a) = a`` (``p = 2`` unless
    stated otherwise)."""

    a: np.ndarray

    @classmethod
    def check(cls, a, alpha: np.ndarray, beta: np.ndarray, power: int = 2) -> "PerturbationElement":
        v = as_vector(a)
        if v.shape != (alpha.shape[0],):
            raise DimMismatch(f"element of size {v.shape[0]} for a space of dimension {alpha.shape[0]}")
        for name, m in (("alpha", alpha), ("beta", beta)):
            if not np.array_equal(apply(mat_pow(m, power), v), v):
                raise NotFixed(f"{name}^{power}(a) != a for a = [{', '.join(map(str, v))}]")
        return cls(v)


def _element(a, alpha, beta, power: int = 2) -> np.ndarray:
    if isinstance(a, PerturbationElement):
        a = a.a
    return PerturbationElement.check(a, alpha, beta, power).a


# -- Yau twists -------------------------------------------------------------


def yau_twist(A: TwoProductAlgebra, ta, tb) -> TwoProductAlgebra:
    """``(A, μ∘(ta⊗tb), ∗∘(ta⊗tb), α∘ta, β∘tb)``."""
    ta, tb = as_matrix(ta), as_matrix(tb)
    maps = {"alpha": A.alpha, "beta": A.beta, "ta": ta, "tb": tb}
    names = list(maps)
    for i, p in enumerate(names):
        for q in names[i + 1:]:
            if not check_maps_commute(maps[p], maps[q]).passed:
                raise MapsDontCommute(f"{p} and {q} do not commute")
    for mname in ("ta", "tb"):
        for pname, op in A.products().items():
            if not check_multiplicative(maps[mname], op).passed:
                raise NotMorphism(f"{mname} is not multiplicative for {pname}")
    out = TwoProductAlgebra(
        A.mu.twisted(ta, tb), A.star.twisted(ta, tb), compose(A.alpha, ta), compose(A.beta, tb)
    )
    return _verify("yau_twist", out, check_bhnp_full, (A,))


def yau_twist_power(A: TwoProductAlgebra, n: int) -> TwoProductAlgebra:
    """``Aⁿ = (A, μ∘(αⁿ⊗βⁿ), ∗∘(αⁿ⊗βⁿ), αⁿ⁺¹, βⁿ⁺¹)``."""
    if n < 0:
        raise ValueError("twist power must be non-negative")
    return yau_twist(A, mat_pow(A.alpha, n), mat_pow(A.beta, n))


# -- tensor products -------------------------------------------------------------


def _kron_op(p: BilinearOp, q: BilinearOp) -> np.ndarray:
    # basis pair (i, j) -> index i*n2 + j on every axis
    n1, n2 = p.dim, q.dim
    t = np.einsum("ack,bdl->abcdkl", p.table, q.table)
    return t.reshape(n1 * n2, n1 * n2, n1 * n2)


def tensor_ops(p1: BilinearOp, q1: BilinearOp, p2: BilinearOp, q2: BilinearOp) -> BilinearOp:
    """The product ``(x₁⊗x₂, y₁⊗y₂) ↦ p₁(x₁,y₁)⊗q₂(x₂,y₂) + q₁(x₁,y₁)⊗p₂(x₂,y₂)``.

    With ``p = ∗`` and ``q = μ`` this is the tensor ``∗``; with ``p`` a
    bracket it is the tensor bracket formula.
    """
    return BilinearOp(_kron_op(p1, q2) + _kron_op(q1, p2))


def tensor_product(A1: TwoProductAlgebra, A2: TwoProductAlgebra) -> TwoProductAlgebra:
    mu = BilinearOp(_kron_op(A1.mu, A2.mu))
    star = tensor_ops(A1.star, A1.mu, A2.star, A2.mu)
    out = TwoProductAlgebra(mu, star, np.kron(A1.alpha, A2.alpha), np.kron(A1.beta, A2.beta))
    return _verify("tensor_product", out, check_bhnp_full, (A1, A2))


# -- perturbations ---------------------------------------------------------------


def _diamond(A, a: np.ndarray) -> BilinearOp:
    """``x ⋄ y = α(x)(α(a)y)``."""
    m, al = A.mu, A.alpha
    aa = apply(al, a)
    return BilinearOp.from_products(A.dim, lambda x, y: m(apply(al, x), m(aa, y)))


def perturb_mu(A: OneProductAlgebra, a) -> OneProductAlgebra:
    """``(A, ⋄, α², β²)`` with ``x ⋄ y = α(x)(α(a)y)``."""
    a = _element(a, A.alpha, A.beta)
    out = OneProductAlgebra(_diamond(A, a), mat_pow(A.alpha, 2), mat_pow(A.beta, 2))
    return _verify("perturb_mu", out, lambda B: perturb_mu_guarantee(A, B))


def perturb_mu_guarantee(A: OneProductAlgebra, B: OneProductAlgebra) -> CheckReport:
    """What :func:`perturb_mu` promises for output ``B`` given input ``A``:
    BiHom-associativity if ``A`` has it, and BiHom-commutativity too if
    ``A`` is also BiHom-commutative."""
    parts = []
    if check_bihom_associative(A).passed:
        parts.append(check_bihom_associative(B))
        if check_bihom_commutative(A).passed:
            parts.append(check_bihom_commutative(B))
    return combine("perturb_mu", parts)


def perturb_thm1(A: TwoProductAlgebra, a) -> TwoProductAlgebra:
    """``(A, ⋄, ∗_{α,β}, α², β²)`` with ``x ∗_{α,β} y = α(x)∗β(y)``."""
    a = _element(a, A.alpha, A.beta)
    out = TwoProductAlgebra(
        _diamond(A, a), A.star.twisted(A.alpha, A.beta), mat_pow(A.alpha, 2), mat_pow(A.beta, 2)
    )
    return _verify("perturb_thm1", out, check_bhnp_full, (A,))


def perturb_thm2(A: TwoProductAlgebra, a) -> TwoProductAlgebra:
    """``(A, ·_{α,β}, ×, α², β²)`` with ``x·_{α,β}y = α(x)β(y)`` and
    ``x × y = α(x)∗β(y) + α(x)(α(a)y)``."""
    a = _element(a, A.alpha, A.beta)
    times = A.star.twisted(A.alpha, A.beta) + _diamond(A, a)
    out = TwoProductAlgebra(A.mu.twisted(A.alpha, A.beta), times, mat_pow(A.alpha, 2), mat_pow(A.beta, 2))
    return _verify("perturb_thm2", out, check_bhnp_full, (A,))


def perturb_double(A: TwoProductAlgebra, a, b) -> TwoProductAlgebra:
    """``(A, ⋄, ⊠, α⁴, β⁴)`` with

    ``x ⋄ y = α³(x)(α³β(b)β²(y))`` and
    ``x ⊠ y = α³(x)∗β³(y) + α³(x)(α(a)β²(y))``,

    for ``α²(a) = β²(a) = a`` and ``α⁴(b) = β⁴(b) = b``.
    """
    a = _element(a, A.alpha, A.beta, 2)
    b = _element(b, A.alpha, A.beta, 4)
    m, s = A.mu, A.star
    al = lambda k: (lambda v: apply(mat_pow(A.alpha, k), v))  # noqa: E731
    be = lambda k: (lambda v: apply(mat_pow(A.beta, k), v))  # noqa: E731
    bb = apply(A.beta, al(3)(b))
    aa = al(1)(a)
    diamond = BilinearOp.from_products(A.dim, lambda x, y: m(al(3)(x), m(bb, be(2)(y))))
    boxtimes = BilinearOp.from_products(
        A.dim, lambda x, y: s(al(3)(x), be(3)(y)) + m(al(3)(x), m(aa, be(2)(y)))
    )
    out = TwoProductAlgebra(diamond, boxtimes, mat_pow(A.alpha, 4), mat_pow(A.beta, 4))
    return _verify("perturb_double", out, check_bhnp_full, (A,))


# -- derivation algebras ---------------------------------------------------------------


def _check_derivation_inputs(mu: BilinearOp, alpha, beta, D):
    n = mu.dim
    x, y = basis_pairs(n)
    comm = report_from_residual("commutative", mu(x, y) - mu(y, x), 2)
    ident = OneProductAlgebra(mu, identity(n), identity(n), validate=False)
    if not (comm.passed and check_bihom_associative(ident).passed):
        raise NotCommutativeAssociative("μ must be commutative and associative")
    if not check_maps_commute(alpha, beta).passed:
        raise MapsDontCommute("alpha and beta do not commute")
    for name, f in (("alpha", alpha), ("beta", beta)):
        if not check_multiplicative(f, mu).passed:
            raise NotMorphism(f"{name} is not an algebra map for μ")
    leib = apply(D, mu(x, y)) - mu(apply(D, x), y) - mu(x, apply(D, y))
    if not report_from_residual("derivation", leib, 2).passed:
        raise NotDerivation("D(xy) != D(x)y + xD(y)")
    for name, f in (("alpha", alpha), ("beta", beta)):
        if not check_maps_commute(D, f).passed:
            raise MapsDontCommute(f"D does not commute with {name}")


def derivation_bhnp(mu, alpha, beta, D) -> TwoProductAlgebra:
    """``(A, •, ∗, α, β)`` with ``x•y = α(x)β(y)`` and ``x∗y = α(x)D(β(y))``.

    ``μ`` must be commutative and associative, ``α, β`` commuting algebra
    maps, and ``D`` a derivation commuting with both.
    """
    mu = mu if isinstance(mu, BilinearOp) else BilinearOp(mu)
    alpha, beta, D = as_matrix(alpha), as_matrix(beta), as_matrix(D)
    _check_derivation_inputs(mu, alpha, beta, D)
    star = mu.twisted(alpha, compose(D, beta))
    out = TwoProductAlgebra(mu.twisted(alpha, beta), star, alpha, beta)
    return _verify("derivation_bhnp", out, check_bhnp_full)


def derivation_perturbed(mu, alpha, beta, D, a, b) -> TwoProductAlgebra:
    """``(A, ◊, ⊡, α⁴, β⁴)`` with

    ``x ◊ y = α⁴(x)β²(b)β⁴(y)`` and
    ``x ⊡ y = α⁴(x)D(β⁴(y)) + α⁴(x)β(a)β⁴(y)``.
    """
    mu = mu if isinstance(mu, BilinearOp) else BilinearOp(mu)
    alpha, beta, D = as_matrix(alpha), as_matrix(beta), as_matrix(D)
    _check_derivation_inputs(mu, alpha, beta, D)
    a = _element(a, alpha, beta, 2)
    b = _element(b, alpha, beta, 4)
    a4, b4 = mat_pow(alpha, 4), mat_pow(beta, 4)
    bb = apply(mat_pow(beta, 2), b)
    ba = apply(beta, a)
    lozenge = BilinearOp.from_products(mu.dim, lambda x, y: mu(mu(apply(a4, x), bb), apply(b4, y)))
    boxdot = BilinearOp.from_products(
        mu.dim,
        lambda x, y: mu(apply(a4, x), apply(compose(D, b4), y)) + mu(mu(apply(a4, x), ba), apply(b4, y)),
    )
    out = TwoProductAlgebra(lozenge, boxdot, a4, b4)
    return _verify("derivation_perturbed", out, check_bhnp_full)


# -- brackets ---------------------------------------------------------------------


def commutator_bracket(A: TwoProductAlgebra) -> BracketAlgebra:
    """``[x,y] = x∗y − α⁻¹β(y) ∗ αβ⁻¹(x)``, kept alongside ``μ``.

    Raises :class:`~bihom.linalg.Singular` if ``α`` or ``β`` is not invertible.
    """
    ai, bi = mat_inverse(A.alpha), mat_inverse(A.beta)
    left = compose(ai, A.beta)
    right = compose(A.alpha, bi)
    s = A.star
    bracket = BilinearOp.from_products(A.dim, lambda x, y: s(x, y) - s(apply(left, y), apply(right, x)))
    return BracketAlgebra(A.mu, bracket, A.alpha, A.beta)


@dataclass(frozen=True)
class AdmissibilityReport:
    left_bihom_assoc: CheckReport
    bihom_poisson: CheckReport

    @property
    def agree(self) -> bool:
        return self.left_bihom_assoc.passed == self.bihom_poisson.passed

    @property
    def violation(self) -> bool:
        return not self.agree

    @property
    def admissible(self) -> bool:
        if self.violation:
            raise InvariantViolation("left BiHom-associativity and admissibility verdicts disagree")
        return self.bihom_poisson.passed


def admissibility_test(A: TwoProductAlgebra, *, max_witnesses: int = DEFAULT_MAX_WITNESSES) -> AdmissibilityReport:
    """Run both sides of the admissibility criterion and report both verdicts.

    The bundle must be BiHom-Novikov-Poisson with invertible maps.  A
    disagreement between the verdicts is flagged via ``violation``; it
    can only come from a bug here.
    """
    full = check_bhnp_full(A, max_witnesses=max_witnesses)
    if not full.passed:
        raise PrereqFailed(f"not BiHom-Novikov-Poisson: fails {', '.join(full.failed)}")
    left = check_left_bihom_assoc(A, max_witnesses=max_witnesses)
    poisson = check_bihom_poisson(commutator_bracket(A), max_witnesses=max_witnesses)
    return AdmissibilityReport(left, poisson)


def _compare_tables(name: str, got: BilinearOp, want: BilinearOp, max_witnesses: int) -> CheckReport:
    res = np.asarray(got.table - want.table, dtype=object)
    return report_from_residual(name, res, 2, max_witnesses)


def bracket_pushforward_checks(
    A: TwoProductAlgebra,
    construction: str,
    *,
    ta=None,
    tb=None,
    a=None,
    other: Optional[TwoProductAlgebra] = None,
    max_witnesses: int = DEFAULT_MAX_WITNESSES,
) -> CheckReport:
    """Compare the commutator bracket of a constructed algebra with the
    closed form predicted from the input's bracket.

    ``construction`` is one of ``"yau_twist"`` (needs ``ta, tb``),
    ``"perturb_thm1"`` / ``"perturb_thm2"`` (need ``a``) or ``"tensor"``
    (needs ``other``).
    """
    for X in (A,) if other is None else (A, other):
        full = check_bhnp_full(X, max_witnesses=max_witnesses)
        if not full.passed:
            raise PrereqFailed(f"not BiHom-Novikov-Poisson: fails {', '.join(full.failed)}")
        if not check_left_bihom_assoc(X, max_witnesses=max_witnesses).passed:
            raise PrereqFailed("input is not left BiHom-associative")
    bracket = commutator_bracket(A).bracket
    if construction == "yau_twist":
        if ta is None or tb is None:
            raise ValueError("yau_twist comparison needs ta and tb")
        ta, tb = as_matrix(ta), as_matrix(tb)
        got = commutator_bracket(yau_twist(A, ta, tb)).bracket
        want = bracket.twisted(ta, tb)
    elif construction in ("perturb_thm1", "perturb_thm2"):
        if a is None:
            raise ValueError(f"{construction} comparison needs an element a")
        build = perturb_thm1 if construction == "perturb_thm1" else perturb_thm2
        got = commutator_bracket(build(A, a)).bracket
        want = bracket.twisted(A.alpha, A.beta)
    elif construction == "tensor":
        if other is None:
            raise ValueError("tensor comparison needs the second factor")
        got = commutator_bracket(tensor_product(A, other)).bracket
        want = tensor_ops(bracket, A.mu, commutator_bracket(other).bracket, other.mu)
    else:
        raise ValueError(f"unknown construction {construction!r}")
    return _compare_tables(f"{construction}_bracket", got, want, max_witnesses)
