from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from bihom.linalg import (
    DimMismatch,
    Scaled,
    Singular,
    apply,
    as_matrix,
    diag,
    fixed_subspace,
    format_rational,
    identity,
    kernel,
    mat_inverse,
    mat_pow,
    parse_rational,
    rref,
    to_rational,
)
from instances import fm


def eq(a, b):
    return np.array_equal(np.asarray(a, dtype=object), np.asarray(b, dtype=object))


# -- worked examples -------------------------------------------------------------


def test_inverse_identity():
    assert eq(mat_inverse(identity(3)), identity(3))


def test_inverse_involution():
    assert eq(mat_inverse(diag(1, -1)), diag(1, -1))


def test_inverse_shear():
    m = fm([[1, 1], [0, 1]])
    inv = mat_inverse(m)
    assert eq(inv, fm([[1, -1], [0, 1]]))
    assert eq(m.dot(inv), identity(2))


def test_inverse_singular():
    with pytest.raises(Singular):
        mat_inverse(fm([[1, 2], [2, 4]]))


def test_inverse_needs_square():
    with pytest.raises(DimMismatch):
        mat_inverse(fm([[1, 2, 3], [4, 5, 6]]))


def test_fixed_subspace_identity():
    assert [list(v) for v in fixed_subspace([identity(2)])] == [[1, 0], [0, 1]]


def test_fixed_subspace_reflection():
    assert [list(v) for v in fixed_subspace([diag(1, -1)])] == [[1, 0]]


def test_fixed_subspace_empty_intersection():
    assert fixed_subspace([diag(1, -1), diag(-1, 1)]) == []


def test_fixed_subspace_dim_mismatch():
    with pytest.raises(DimMismatch):
        fixed_subspace([identity(2), identity(3)])


def test_pow_zero():
    assert eq(mat_pow(fm([[0, 1], [0, 0]]), 0), identity(2))


def test_pow_square():
    assert eq(mat_pow(diag(2, 3), 2), diag(4, 9))


def test_pow_negative_involution():
    assert eq(mat_pow(diag(1, -1), -1), diag(1, -1))


def test_pow_negative_singular():
    with pytest.raises(Singular):
        mat_pow(fm([[0, 1], [0, 0]]), -1)


def test_empty_space():
    assert mat_inverse(identity(0)).shape == (0, 0)
    assert fixed_subspace([identity(0)]) == []


# -- rationals -------------------------------------------------------------------


@pytest.mark.parametrize("text,value", [("0", F(0)), ("-3", F(-3)), ("2/3", F(2, 3)), ("-7/4", F(-7, 4))])
def test_parse_canonical(text, value):
    assert parse_rational(text) == value
    assert format_rational(value) == text


@pytest.mark.parametrize("text", ["4/2", "2/-3", "+1", " 1", "1.5", "0/1", "1/0", "x", "-0"])
def test_parse_rejects_noncanonical(text):
    with pytest.raises(ValueError):
        parse_rational(text)


def test_floats_rejected():
    with pytest.raises(TypeError):
        to_rational(0.5)


def test_rref_pivot_order():
    red, piv = rref(fm([[0, 2, 4], [1, 1, 1], [2, 2, 2]]))
    assert piv == [0, 1]
    assert eq(red, fm([[1, 0, -1], [0, 1, 2], [0, 0, 0]]))


def test_kernel_vectors_are_null():
    m = fm([[1, 2, 3], [2, 4, 6]])
    ks = kernel(m)
    assert len(ks) == 2
    for v in ks:
        assert all(x == 0 for x in apply(m, v))


def test_results_read_only():
    m = mat_inverse(diag(2, 3))
    with pytest.raises(ValueError):
        m[0, 0] = F(5)


# -- properties ------------------------------------------------------------------

small = st.integers(-3, 3)


@st.composite
def square(draw, lo=1, hi=4):
    n = draw(st.integers(lo, hi))
    return as_matrix([[draw(small) for _ in range(n)] for _ in range(n)])


@st.composite
def invertible(draw):
    # unit triangular factors give invertible integer matrices with varied shapes
    n = draw(st.integers(1, 4))
    lower = [[draw(small) if i > j else int(i == j) for j in range(n)] for i in range(n)]
    upper = [[draw(small) if i < j else (draw(st.sampled_from([1, -1, 2, F(1, 2)])) if i == j else 0)
              for j in range(n)] for i in range(n)]
    return as_matrix(np.array(lower, dtype=object).dot(np.array(upper, dtype=object)))


@settings(max_examples=60, deadline=None)
@given(invertible())
def test_inverse_roundtrip(m):
    n = m.shape[0]
    inv = mat_inverse(m)
    assert eq(inv.dot(m), identity(n))
    assert eq(m.dot(inv), identity(n))


@settings(max_examples=60, deadline=None)
@given(square())
def test_inverse_or_singular(m):
    try:
        inv = mat_inverse(m)
    except Singular:
        assert kernel(m), "singular verdict but trivial kernel"
    else:
        assert eq(inv.dot(m), identity(m.shape[0]))


@settings(max_examples=60, deadline=None)
@given(st.lists(square(2, 2), min_size=1, max_size=3) | st.lists(square(3, 3), min_size=1, max_size=3))
def test_fixed_vectors_are_fixed(ms):
    for v in fixed_subspace(ms):
        assert any(x != 0 for x in v)
        for m in ms:
            assert eq(apply(m, v), v)


@settings(max_examples=40, deadline=None)
@given(invertible(), st.integers(-2, 3), st.integers(-2, 3))
def test_pow_additive(m, j, k):
    assert eq(mat_pow(m, j + k), mat_pow(m, j).dot(mat_pow(m, k)))


@settings(max_examples=40, deadline=None)
@given(square(), st.integers(0, 5))
def test_pow_matches_repeated_product(m, k):
    want = identity(m.shape[0])
    for _ in range(k):
        want = want.dot(m)
    assert eq(mat_pow(m, k), want)


@given(st.fractions(max_denominator=1000))
def test_rational_roundtrip(q):
    assume(q.denominator <= 1000)
    assert parse_rational(format_rational(q)) == q


# -- scaled integer arrays -------------------------------------------------------

# magnitudes chosen to hit the float64, int64 and Python-int paths
magnitudes = st.sampled_from([3, 2**40, 2**70])


@st.composite
def fraction_matrix(draw, rows, cols):
    big = draw(magnitudes)
    entry = st.builds(F, st.integers(-big, big), st.integers(1, 7))
    return np.array([[draw(entry) for _ in range(cols)] for _ in range(rows)], dtype=object).reshape(rows, cols)


@given(st.integers(0, 4).flatmap(lambda n: st.tuples(fraction_matrix(n, n), fraction_matrix(3, n))))
def test_apply_matches_fraction_arithmetic(mv):
    m, v = mv
    n = m.shape[0]
    want = np.array([[sum((m[r, c] * row[c] for c in range(n)), F(0)) for r in range(n)] for row in v],
                    dtype=object).reshape(3, n)
    assert eq(apply(m, v), want)
    assert eq(apply(m, Scaled.of(v)).rational(), want)


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(fraction_matrix(2, n), fraction_matrix(2, n))))
def test_scaled_arithmetic_round_trip(ab):
    a, b = ab
    sa, sb = Scaled.of(a), Scaled.of(b)
    assert eq(sa.rational(), a)
    assert eq((sa + sb).rational(), a + b)
    assert eq((sa - b).rational(), a - b)
    assert eq((a - sb).rational(), a - b)
    assert eq((-sa).rational(), -a)
    assert np.array_equal(sa != 0, a != 0)
