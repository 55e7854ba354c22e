"""Exhaustive identity checkers over basis tuples.

Every identity checked here is linear in each variable once the structure
maps are fixed, so it holds on all of ``A`` exactly when it holds on every
tuple of basis vectors.  Each checker evaluates the residual ``LHS − RHS``
for all basis tuples at once (as one broadcast contraction) and reports
the tuples where it is nonzero.

Notation inside the checkers: ``m`` is the commutative-type product,
``s`` the Novikov-type product, ``b`` a bracket, ``al``/``be`` the
structure maps applied to vectors.
"""

from __future__ import annotations

import numpy as np

from .core import (
    DEFAULT_MAX_WITNESSES,
    BracketAlgebra,
    CheckReport,
    OneProductAlgebra,
    TwoProductAlgebra,
    basis_pairs,
    basis_triples,
    combine,
    report_from_residual,
    validate_bundle,
)
from .linalg import apply, identity

__all__ = [
    "PrereqFailed",
    "NotClassical",
    "InvariantViolation",
    "SUITES",
    "check_bihom_associative",
    "check_bihom_commutative",
    "check_bihom_novikov",
    "check_bhnp_compat",
    "check_bhnp_full",
    "check_bihom_lie",
    "check_bihom_leibniz",
    "check_bihom_poisson",
    "check_left_bihom_assoc",
    "check_left_bihom_assoc_alt",
    "check_classical_novikov",
    "check_classical_novikov_poisson",
    "run_suite",
]


class PrereqFailed(ValueError):
    """A checker's precondition does not hold for the given bundle."""


class NotClassical(ValueError):
    """A classical check was asked for on a bundle with nontrivial maps."""


class InvariantViolation(AssertionError):
    """Two verdicts that must agree by theory disagree: an implementation bug."""


def _maps(A):
    al = lambda v: apply(A.alpha, v)  # noqa: E731
    be = lambda v: apply(A.beta, v)  # noqa: E731
    return al, be


def _novikov_op(A):
    if isinstance(A, TwoProductAlgebra):
        return A.star
    if isinstance(A, BracketAlgebra):
        return A.bracket
    return A.mu


# -- one product ------------------------------------------------------------


def check_bihom_associative(A, *, max_witnesses: int = DEFAULT_MAX_WITNESSES) -> CheckReport:
    """``α(x)(yz) = (xy)β(z)``."""
    m = A.mu
    al, be = _maps(A)
    x, y, z = basis_triples(A.dim)
    res = m(al(x), m(y, z)) - m(m(x, y), be(z))
    return report_from_residual("bihom_associative", res, 3, max_witnesses)


def check_bihom_commutative(A, *, max_witnesses: int = DEFAULT_MAX_WITNESSES) -> CheckReport:
    """``β(x)α(y) = β(y)α(x)``."""
    m = A.mu
    al, be = _maps(A)
    x, y = basis_pairs(A.dim)
    res = m(be(x), al(y)) - m(be(y), al(x))
    return report_from_residual("bihom_commutative", res, 2, max_witnesses)


def check_bihom_novikov(A, *, max_witnesses: int = DEFAULT_MAX_WITNESSES) -> CheckReport:
    """Both Novikov-type identities for the ``∗`` product (or ``μ`` of a
    one-product bundle).

    * ``novikov_left_symmetric``: ``(β(x)∗α(y))∗β(z) − αβ(x)∗(α(y)∗z)`` is
      symmetric in ``x, y``;
    * ``novikov_right_commutative``: ``(x∗β(y))∗αβ(z) = (x∗β(z))∗αβ(y)``.
    """
    s = _novikov_op(A)
    al, be = _maps(A)
    ab = lambda v: al(be(v))  # noqa: E731
    x, y, z = basis_triples(A.dim)

    def assoc(u, v, w):
        return s(s(be(u), al(v)), be(w)) - s(ab(u), s(al(v), w))

    left = report_from_residual("novikov_left_symmetric", assoc(x, y, z) - assoc(y, x, z), 3, max_witnesses)
    right_res = s(s(x, be(y)), ab(z)) - s(s(x, be(z)), ab(y))
    right = report_from_residual("novikov_right_commutative", right_res, 3, max_witnesses)
    return combine("bihom-novikov", [left, right], max_witnesses)


# -- two products -------------------------------------------------------------


def _compat_parts(A: TwoProductAlgebra, max_witnesses: int) -> list[CheckReport]:
    m, s = A.mu, A.star
    al, be = _maps(A)
    ab = lambda v: al(be(v))  # noqa: E731
    x, y, z = basis_triples(A.dim)

    def g(u, v, w):
        return m(s(be(u), al(v)), be(w)) - s(ab(u), m(al(v), w))

    sym = report_from_residual("compat_symmetric", g(x, y, z) - g(y, x, z), 3, max_witnesses)
    exch_res = s(m(x, be(y)), ab(z)) - m(s(x, be(z)), ab(y))
    exch = report_from_residual("compat_exchange", exch_res, 3, max_witnesses)
    mod = report_from_residual("compat_module", m(al(x), s(y, z)) - s(m(x, y), be(z)), 3, max_witnesses)
    return [sym, exch, mod]


def check_bhnp_compat(A: TwoProductAlgebra, *, max_witnesses: int = DEFAULT_MAX_WITNESSES) -> CheckReport:
    """The three compatibility conditions linking ``μ`` and ``∗``.

    * ``compat_symmetric``: ``(β(x)∗α(y))β(z) − αβ(x)∗(α(y)z)`` symmetric in ``x, y``
    * ``compat_exchange``:  ``(xβ(y))∗αβ(z) = (x∗β(z))αβ(y)``
    * ``compat_module``:    ``α(x)(y∗z) = (xy)∗β(z)``
    """
    return combine("bhnp-compat", _compat_parts(A, max_witnesses), max_witnesses)


def check_bhnp_full(A: TwoProductAlgebra, *, max_witnesses: int = DEFAULT_MAX_WITNESSES) -> CheckReport:
    parts = [
        validate_bundle(A, max_witnesses=max_witnesses),
        check_bihom_associative(A, max_witnesses=max_witnesses),
        check_bihom_commutative(A, max_witnesses=max_witnesses),
        check_bihom_novikov(A, max_witnesses=max_witnesses),
        check_bhnp_compat(A, max_witnesses=max_witnesses),
    ]
    return combine("bhnp", parts, max_witnesses)


def check_left_bihom_assoc_alt(A: TwoProductAlgebra, *, max_witnesses: int = DEFAULT_MAX_WITNESSES) -> CheckReport:
    """``α(x)(y∗z) = α(x)∗(yz)``; equivalent to left BiHom-associativity
    whenever ``compat_module`` holds."""
    m, s = A.mu, A.star
    al, _ = _maps(A)
    x, y, z = basis_triples(A.dim)
    res = m(al(x), s(y, z)) - s(al(x), m(y, z))
    return report_from_residual("left_bihom_associative_alt", res, 3, max_witnesses)


def check_left_bihom_assoc(A: TwoProductAlgebra, *, max_witnesses: int = DEFAULT_MAX_WITNESSES) -> CheckReport:
    """``α(x)∗(yz) = (xy)∗β(z)``.

    Raises :class:`PrereqFailed` unless ``compat_module`` holds, and
    :class:`InvariantViolation` if the equivalent reformulation disagrees.
    """
    module = _compat_parts(A, max_witnesses)[2]
    if not module.passed:
        raise PrereqFailed("left BiHom-associativity needs α(x)(y∗z) = (xy)∗β(z) to hold")
    m, s = A.mu, A.star
    al, be = _maps(A)
    x, y, z = basis_triples(A.dim)
    res = s(al(x), m(y, z)) - s(m(x, y), be(z))
    rep = report_from_residual("left_bihom_associative", res, 3, max_witnesses)
    alt = check_left_bihom_assoc_alt(A, max_witnesses=max_witnesses)
    if alt.passed != rep.passed:
        raise InvariantViolation("the two forms of left BiHom-associativity disagree")
    return rep


# -- brackets -------------------------------------------------------------------


def check_bihom_lie(L, *, max_witnesses: int = DEFAULT_MAX_WITNESSES) -> CheckReport:
    """Skew-symmetry ``[β(x),α(y)] = −[β(y),α(x)]`` and the cyclic Jacobi
    condition ``Σ_cyc [β²(x),[β(y),α(z)]] = 0``.

    ``L`` is a :class:`BracketAlgebra` or a one-product bundle whose
    product is the bracket.
    """
    b = _novikov_op(L)
    al, be = _maps(L)
    x, y = basis_pairs(L.dim)
    skew = report_from_residual("bihom_skew_symmetry", b(be(x), al(y)) + b(be(y), al(x)), 2, max_witnesses)

    def jac(u, v, w):
        return b(be(be(u)), b(be(v), al(w)))

    x, y, z = basis_triples(L.dim)
    jacobi = report_from_residual("bihom_jacobi", jac(x, y, z) + jac(y, z, x) + jac(z, x, y), 3, max_witnesses)
    return combine("bihom-lie", [skew, jacobi], max_witnesses)


def check_bihom_leibniz(A, *, max_witnesses: int = DEFAULT_MAX_WITNESSES) -> CheckReport:
    """``[αβ(x), yz] = [β(x),y]β(z) + β(y)[α(x),z]``.

    Accepts a :class:`BracketAlgebra`, or a two-product bundle whose ``∗``
    slot holds the bracket.
    """
    m = A.mu
    b = _novikov_op(A)
    al, be = _maps(A)
    x, y, z = basis_triples(A.dim)
    res = b(al(be(x)), m(y, z)) - m(b(be(x), y), be(z)) - m(be(y), b(al(x), z))
    return report_from_residual("bihom_leibniz", res, 3, max_witnesses)


def check_bihom_poisson(A: BracketAlgebra, *, max_witnesses: int = DEFAULT_MAX_WITNESSES) -> CheckReport:
    parts = [
        validate_bundle(A, max_witnesses=max_witnesses),
        check_bihom_associative(A, max_witnesses=max_witnesses),
        check_bihom_commutative(A, max_witnesses=max_witnesses),
        check_bihom_lie(A, max_witnesses=max_witnesses),
        check_bihom_leibniz(A, max_witnesses=max_witnesses),
    ]
    return combine("bihom-poisson", parts, max_witnesses)


# -- classical ----------------------------------------------------------------


def _require_identity_maps(A):
    ident = identity(A.dim)
    if not (np.array_equal(A.alpha, ident) and np.array_equal(A.beta, ident)):
        raise NotClassical("classical checks need α = β = id")


def _left_pre_lie(s, n: int, max_witnesses: int) -> CheckReport:
    x, y, z = basis_triples(n)

    def assoc(u, v, w):
        return s(u, s(v, w)) - s(s(u, v), w)

    return report_from_residual("left_pre_lie", assoc(x, y, z) - assoc(y, x, z), 3, max_witnesses)


def check_classical_novikov(A, *, max_witnesses: int = DEFAULT_MAX_WITNESSES) -> CheckReport:
    """Left pre-Lie plus ``(x∗y)∗z = (x∗z)∗y``, evaluated directly."""
    _require_identity_maps(A)
    s = _novikov_op(A)
    x, y, z = basis_triples(A.dim)
    right = report_from_residual("right_commutative", s(s(x, y), z) - s(s(x, z), y), 3, max_witnesses)
    return combine("classical-novikov", [_left_pre_lie(s, A.dim, max_witnesses), right], max_witnesses)


def check_classical_novikov_poisson(A: TwoProductAlgebra, *,
                                    max_witnesses: int = DEFAULT_MAX_WITNESSES) -> CheckReport:
    """Novikov-Poisson axioms for a bundle with identity structure maps.

    The BiHom checkers with ``α = β = id`` cover commutativity,
    associativity, right-commutativity of ``∗`` and the compatibility
    conditions; left pre-Lie is checked directly on top.
    """
    _require_identity_maps(A)
    n = A.dim
    parts = [
        check_bihom_associative(A, max_witnesses=max_witnesses),
        check_bihom_commutative(A, max_witnesses=max_witnesses),
        _left_pre_lie(A.star, n, max_witnesses),
        check_bihom_novikov(A, max_witnesses=max_witnesses),
        check_bhnp_compat(A, max_witnesses=max_witnesses),
    ]
    return combine("classical-np", parts, max_witnesses)


SUITES = {
    "bihom-assoc": check_bihom_associative,
    "bihom-comm": check_bihom_commutative,
    "bihom-novikov": check_bihom_novikov,
    "bhnp-compat": check_bhnp_compat,
    "bhnp": check_bhnp_full,
    "bihom-lie": check_bihom_lie,
    "bihom-leibniz": check_bihom_leibniz,
    "bihom-poisson": check_bihom_poisson,
    "left-bihom-assoc": check_left_bihom_assoc,
    "classical-np": check_classical_novikov_poisson,
}


def run_suite(name: str, A, *, max_witnesses: int = DEFAULT_MAX_WITNESSES) -> CheckReport:
    try:
        fn = SUITES[name]
    except KeyError:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}") from None
    return fn(A, max_witnesses=max_witnesses)
