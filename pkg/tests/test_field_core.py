import numpy as np
import pytest
from hypothesis import given, strategies as st

import oracles
from acdcodes.field_core import (
    F4_ELEMENTS,
    ONE,
    W,
    W2,
    ZERO,
    MixedWord,
    delinearize,
    det_f2,
    det_f4,
    echelon_packed,
    f4_add,
    f4_dot,
    f4_from_parts,
    f4_inv,
    f4_mul,
    f4_parts,
    gram_f2,
    independent_subset,
    kernel_f2,
    left_kernel_packed,
    linearize_word,
    matmul_f2,
    matmul_f4,
    pack,
    pack_word,
    rank_f2,
    rank_f4,
    rref_f2,
    rref_f4,
    transpose_f4,
    unpack,
    unpack_word,
)
from conftest import mixed_words

f4 = st.sampled_from(F4_ELEMENTS)
bits = st.integers(0, 1)


def binary_matrix(max_rows=6, max_cols=7):
    return st.integers(0, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(bits, min_size=c, max_size=c), min_size=r, max_size=r).map(
                lambda m: np.array(m, dtype=np.uint8).reshape(r, c)
            )
        )
    )


def f4_square(max_n=4):
    return st.integers(0, max_n).flatmap(
        lambda n: st.lists(st.lists(f4, min_size=n, max_size=n), min_size=n, max_size=n)
    )


# --- scalars -------------------------------------------------------------


def test_w_squared_is_one_plus_w():
    assert f4_mul(W, W) == W2
    assert f4_add(ONE, W) == W2
    assert f4_mul(W, W2) == ONE
    assert f4_mul(W2, W2) == W


def test_mul_table_matches_polynomial_oracle():
    for a in F4_ELEMENTS:
        for b in F4_ELEMENTS:
            assert f4_mul(a, b) == oracles.f4_mul(a, b)


def test_inverse():
    for a in (ONE, W, W2):
        assert f4_mul(a, f4_inv(a)) == ONE
    with pytest.raises(ZeroDivisionError):
        f4_inv(ZERO)


def test_parts_round_trip():
    for a in F4_ELEMENTS:
        c1, cw = f4_parts(a)
        assert f4_from_parts(c1, cw) == a
    assert f4_parts(W2) == (1, 1)


@given(f4, f4, f4)
def test_field_axioms(a, b, c):
    assert f4_mul(a, f4_add(b, c)) == f4_add(f4_mul(a, b), f4_mul(a, c))
    assert f4_mul(f4_mul(a, b), c) == f4_mul(a, f4_mul(b, c))
    assert f4_mul(a, b) == f4_mul(b, a)
    assert f4_add(a, a) == ZERO


@given(st.lists(st.tuples(f4, f4), max_size=8))
def test_dot_matches_oracle(pairs):
    u = [p[0] for p in pairs]
    v = [p[1] for p in pairs]
    acc = 0
    for a, b in pairs:
        acc ^= oracles.f4_mul(a, b)
    assert f4_dot(u, v) == acc


# --- words ---------------------------------------------------------------


def test_parse_forms_agree():
    a = MixedWord.parse("1 1 | w 1")
    assert a == MixedWord.parse("(1,1|w,1)") == MixedWord.parse("11|w1") == MixedWord.parse("11w1", alpha=2)
    assert a.x == (1, 1) and a.y == (W, ONE)
    assert str(a) == "(1,1|w,1)"
    assert MixedWord.parse("0|W").pretty() == "(0|ω²)"


def test_parse_rejects_bad_symbols():
    with pytest.raises(ValueError):
        MixedWord.parse("1 w | 1")
    with pytest.raises(ValueError):
        MixedWord.parse("1 2 | 1")
    with pytest.raises(ValueError):
        MixedWord.parse("11w1")


def test_word_validation():
    with pytest.raises(ValueError):
        MixedWord((2,), ())
    with pytest.raises(ValueError):
        MixedWord((), (4,))


def test_linearized_layout():
    u = MixedWord.parse("10|wW1")
    assert linearize_word(u) == (1, 0, 0, 1, 1, 1, 1, 0)
    assert delinearize(linearize_word(u), 2, 3) == u


@given(st.integers(0, 4).flatmap(lambda a: st.integers(0, 3).flatmap(lambda b: mixed_words(a, b))))
def test_pack_round_trip(u):
    assert unpack_word(pack_word(u), u.alpha, u.beta) == u


@given(st.integers(0, 3).flatmap(lambda a: st.integers(0, 3).flatmap(
    lambda b: st.tuples(mixed_words(a, b), mixed_words(a, b)))))
def test_addition_is_xor_of_packings(pair):
    u, v = pair
    assert pack_word(u + v) == pack_word(u) ^ pack_word(v)
    assert (u + u).is_zero()
    assert u - v == u + v


def test_shape_mismatch():
    with pytest.raises(ValueError):
        MixedWord.parse("1|1") + MixedWord.parse("11|1")


# --- GF(2) linear algebra ---------------------------------------------------


@given(binary_matrix())
def test_rank_matches_span_size(m):
    rows = [tuple(int(v) for v in r) for r in m]
    n = m.shape[1]
    assert rank_f2(m) == oracles.rank_by_counting(rows, n)


@given(binary_matrix())
def test_kernel_is_exact(m):
    n = m.shape[1]
    ker = kernel_f2(m, n)
    assert len(ker) == n - rank_f2(m)
    for v in ker:
        assert not matmul_f2(m, np.array(v).reshape(n, 1)).any()
    if ker:
        assert rank_f2(ker) == len(ker)


@given(binary_matrix())
def test_rref_spans_same_space(m):
    r = rref_f2(m)
    n = m.shape[1]
    rows = [tuple(int(v) for v in x) for x in m]
    assert oracles.binary_span(rows, n) == oracles.binary_span([tuple(int(v) for v in x) for x in r], n)
    # pivots strictly increase and pivot columns are unit vectors
    pivots = [int(np.flatnonzero(row)[0]) for row in r]
    assert pivots == sorted(set(pivots))
    for i, p in enumerate(pivots):
        assert r[:, p].sum() == 1 and r[i, p] == 1


@given(st.integers(0, 5).flatmap(lambda n: st.lists(
    st.lists(bits, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_det_f2_matches_leibniz(m):
    assert det_f2(np.array(m, dtype=np.uint8).reshape(len(m), len(m))) == oracles.det_f2_leibniz(m)


def test_gram_and_matmul():
    g = np.array([[1, 1, 0], [0, 1, 1]])
    assert gram_f2(g).tolist() == [[0, 1], [1, 0]]
    assert matmul_f2(g, g.T).tolist() == [[0, 1], [1, 0]]
    with pytest.raises(ValueError):
        det_f2([[1, 0, 1]])


@given(st.lists(st.integers(0, 255), max_size=8))
def test_packed_echelon_and_subset(rows):
    ech = echelon_packed(rows)
    assert len(ech) == len(independent_subset(rows))
    keep = independent_subset(rows)
    assert echelon_packed([rows[i] for i in keep]) == ech
    for lam in left_kernel_packed(rows, 8):
        acc = 0
        for i, r in enumerate(rows):
            if (lam >> i) & 1:
                acc ^= r
        assert acc == 0


def test_pack_unpack():
    assert pack([1, 0, 1]) == 5
    assert unpack(5, 4) == (1, 0, 1, 0)


# --- GF(4) matrices ----------------------------------------------------------


@given(f4_square())
def test_det_f4_matches_leibniz(m):
    assert det_f4(m) == oracles.det_f4_leibniz(m)


@given(f4_square())
def test_rank_f4_full_iff_det_nonzero(m):
    assert (rank_f4(m) == len(m)) == (det_f4(m) != ZERO)


@given(f4_square(3))
def test_rref_f4_unit_pivots(m):
    rows, pivots = rref_f4(m)
    for i, p in enumerate(pivots):
        assert rows[i][p] == ONE
        assert all(rows[j][p] == ZERO for j in range(len(rows)) if j != i)


def test_matmul_f4_identity():
    m = [[ONE, W], [W2, ZERO]]
    ident = [[ONE, ZERO], [ZERO, ONE]]
    assert matmul_f4(m, ident) == m
    assert transpose_f4(m) == [[ONE, W2], [W, ZERO]]
