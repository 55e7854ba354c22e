"""Brute-force reference evaluator.

Everything here is plain nested lists of ``Fraction`` and explicit loops,
deliberately sharing no code with the vectorized library path.  Tables are
``T[i][j][k]`` (k-th coordinate of e_i e_j); maps are ``M[r][c]`` with
column ``c`` the image of e_c.
"""

from fractions import Fraction
from itertools import product


def table(op):
    """Plain nested-list copy of a BilinearOp (or an ndarray)."""
    t = getattr(op, "table", op)
    n = len(t)
    return [[[Fraction(t[i][j][k]) for k in range(n)] for j in range(n)] for i in range(n)]


def matrix(m):
    return [[Fraction(v) for v in row] for row in m]


def eye(n):
    return [[Fraction(int(r == c)) for c in range(n)] for r in range(n)]


def e(n, i):
    return [Fraction(int(k == i)) for k in range(n)]


def add(*vs):
    out = [Fraction(0)] * len(vs[0])
    for v in vs:
        out = [a + b for a, b in zip(out, v)]
    return out


def sub(u, v):
    return [a - b for a, b in zip(u, v)]


def scale(c, v):
    return [c * a for a in v]


def mul(T, u, v):
    n = len(u)
    out = [Fraction(0)] * n
    for i in range(n):
        if u[i] == 0:
            continue
        for j in range(n):
            if v[j] == 0:
                continue
            c = u[i] * v[j]
            for k in range(n):
                out[k] += c * T[i][j][k]
    return out


def app(M, v):
    n = len(v)
    return [sum((M[r][c] * v[c] for c in range(n)), Fraction(0)) for r in range(n)]


def matmul(A, B):
    n = len(A)
    return [[sum((A[r][k] * B[k][c] for k in range(n)), Fraction(0)) for c in range(n)] for r in range(n)]


def power(M, k):
    out = eye(len(M))
    for _ in range(k):
        out = matmul(out, M)
    return out


def build_table(n, f):
    """Table of the bilinear map ``f(u, v)`` on basis vectors."""
    return [[f(e(n, i), e(n, j)) for j in range(n)] for i in range(n)]


def is_zero(v):
    return all(x == 0 for x in v)


def failures(n, arity, residual):
    """Sorted index tuples where ``residual(*basis)`` is nonzero."""
    out = []
    for idx in product(range(n), repeat=arity):
        if not is_zero(residual(*[e(n, i) for i in idx])):
            out.append(idx)
    return out


# -- identities ------------------------------------------------------------------
#
# Each function returns the residual (LHS - RHS) as a closure over basis vectors,
# given plain-list tables M (mu), S (second product), and maps al, be.


def r_assoc(M, al, be):
    return lambda x, y, z: sub(mul(M, app(al, x), mul(M, y, z)), mul(M, mul(M, x, y), app(be, z)))


def r_comm(M, al, be):
    return lambda x, y: sub(mul(M, app(be, x), app(al, y)), mul(M, app(be, y), app(al, x)))


def r_nov_left(S, al, be):
    def g(x, y, z):
        return sub(mul(S, mul(S, app(be, x), app(al, y)), app(be, z)),
                   mul(S, app(al, app(be, x)), mul(S, app(al, y), z)))
    return lambda x, y, z: sub(g(x, y, z), g(y, x, z))


def r_nov_right(S, al, be):
    ab = lambda v: app(al, app(be, v))  # noqa: E731
    return lambda x, y, z: sub(mul(S, mul(S, x, app(be, y)), ab(z)), mul(S, mul(S, x, app(be, z)), ab(y)))


def r_compat_sym(M, S, al, be):
    def g(x, y, z):
        return sub(mul(M, mul(S, app(be, x), app(al, y)), app(be, z)),
                   mul(S, app(al, app(be, x)), mul(M, app(al, y), z)))
    return lambda x, y, z: sub(g(x, y, z), g(y, x, z))


def r_compat_exch(M, S, al, be):
    ab = lambda v: app(al, app(be, v))  # noqa: E731
    return lambda x, y, z: sub(mul(S, mul(M, x, app(be, y)), ab(z)), mul(M, mul(S, x, app(be, z)), ab(y)))


def r_compat_mod(M, S, al, be):
    return lambda x, y, z: sub(mul(M, app(al, x), mul(S, y, z)), mul(S, mul(M, x, y), app(be, z)))


def r_left_assoc(M, S, al, be):
    return lambda x, y, z: sub(mul(S, app(al, x), mul(M, y, z)), mul(S, mul(M, x, y), app(be, z)))


def r_skew(B, al, be):
    return lambda x, y: add(mul(B, app(be, x), app(al, y)), mul(B, app(be, y), app(al, x)))


def r_jacobi(B, al, be):
    def j(x, y, z):
        return mul(B, app(be, app(be, x)), mul(B, app(be, y), app(al, z)))
    return lambda x, y, z: add(j(x, y, z), j(y, z, x), j(z, x, y))


def r_leibniz(M, B, al, be):
    return lambda x, y, z: sub(
        mul(B, app(al, app(be, x)), mul(M, y, z)),
        add(mul(M, mul(B, app(be, x), y), app(be, z)), mul(M, app(be, y), mul(B, app(al, x), z))),
    )


def r_pre_lie(S):
    def a(x, y, z):
        return sub(mul(S, x, mul(S, y, z)), mul(S, mul(S, x, y), z))
    return lambda x, y, z: sub(a(x, y, z), a(y, x, z))


def r_right_comm(S):
    return lambda x, y, z: sub(mul(S, mul(S, x, y), z), mul(S, mul(S, x, z), y))


def r_mult(f, T):
    return lambda x, y: sub(app(f, mul(T, x, y)), mul(T, app(f, x), app(f, y)))


# -- verdicts --------------------------------------------------------------------


def _plain(A):
    M = table(A.mu)
    S = table(A.star) if getattr(A, "star", None) is not None else None
    B = table(A.bracket) if getattr(A, "bracket", None) is not None else None
    return M, S, B, matrix(A.alpha), matrix(A.beta)


def structure_ok(A):
    M, S, B, al, be = _plain(A)
    n = A.dim
    if matmul(al, be) != matmul(be, al):
        return False
    for T in (M, S, B):
        if T is None:
            continue
        for f in (al, be):
            if failures(n, 2, r_mult(f, T)):
                return False
    return True


def bhnp_failures(A):
    """Map every leaf identity of the full BHNP suite to its failing tuples."""
    M, S, _, al, be = _plain(A)
    n = A.dim
    return {
        "bihom_associative": failures(n, 3, r_assoc(M, al, be)),
        "bihom_commutative": failures(n, 2, r_comm(M, al, be)),
        "novikov_left_symmetric": failures(n, 3, r_nov_left(S, al, be)),
        "novikov_right_commutative": failures(n, 3, r_nov_right(S, al, be)),
        "compat_symmetric": failures(n, 3, r_compat_sym(M, S, al, be)),
        "compat_exchange": failures(n, 3, r_compat_exch(M, S, al, be)),
        "compat_module": failures(n, 3, r_compat_mod(M, S, al, be)),
    }


def bhnp_ok(A):
    return structure_ok(A) and not any(bhnp_failures(A).values())


def poisson_failures(A):
    M, _, B, al, be = _plain(A)
    n = A.dim
    return {
        "bihom_associative": failures(n, 3, r_assoc(M, al, be)),
        "bihom_commutative": failures(n, 2, r_comm(M, al, be)),
        "bihom_skew_symmetry": failures(n, 2, r_skew(B, al, be)),
        "bihom_jacobi": failures(n, 3, r_jacobi(B, al, be)),
        "bihom_leibniz": failures(n, 3, r_leibniz(M, B, al, be)),
    }


def left_assoc_ok(A):
    M, S, _, al, be = _plain(A)
    return not failures(A.dim, 3, r_left_assoc(M, S, al, be))


# -- constructions ---------------------------------------------------------------


def bracket_table(A):
    """``[x,y] = x∗y − α⁻¹β(y) ∗ αβ⁻¹(x)`` for diagonal α, β."""
    S = table(A.star)
    al, be = matrix(A.alpha), matrix(A.beta)
    n = A.dim
    for m in (al, be):
        assert all(m[r][c] == 0 for r in range(n) for c in range(n) if r != c), "oracle needs diagonal maps"
    ai = [[(1 / al[r][c]) if r == c else Fraction(0) for c in range(n)] for r in range(n)]
    bi = [[(1 / be[r][c]) if r == c else Fraction(0) for c in range(n)] for r in range(n)]
    return build_table(n, lambda x, y: sub(mul(S, x, y), mul(S, app(matmul(ai, be), y), app(matmul(al, bi), x))))


def derivation_tables(M, al, be, D):
    n = len(M)
    dot = build_table(n, lambda x, y: mul(M, app(al, x), app(be, y)))
    star = build_table(n, lambda x, y: mul(M, app(al, x), app(D, app(be, y))))
    return dot, star
