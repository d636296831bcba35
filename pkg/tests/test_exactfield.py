from fractions import Fraction
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from semicanon.errors import NonSquare
from semicanon.exactfield import (DEFAULT_MODULUS, Matrix, PrimeField, QQ, SpanTester, complement_basis,
                                  det, inverse, kernel_basis, make_field, rank, solve)

small_ints = st.integers(min_value=-6, max_value=6)


def int_matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small_ints, min_size=c, max_size=c), min_size=r, max_size=r)))


def test_default_modulus_is_prime_below_2_62():
    assert DEFAULT_MODULUS < 2**62
    assert PrimeField(DEFAULT_MODULUS).modulus == DEFAULT_MODULUS
    with pytest.raises(ValueError):
        PrimeField(DEFAULT_MODULUS + 2)


def test_rank_examples(F):
    assert rank(Matrix.identity(F, 2)) == 2
    assert rank(Matrix.zeros(F, 3, 4)) == 0
    assert rank(Matrix.from_rows(F, [[1, 2], [2, 4]])) == 1


def test_det_examples(F, Q):
    assert det(Matrix.identity(Q, 3)) == 1
    assert det(Matrix.from_rows(Q, [[0, 1], [1, 0]])) == -1
    assert det(Matrix.from_rows(F, [[0, 1], [1, 0]])) == F(-1)
    assert det(Matrix.diagonal(Q, [2, 3, 5])) == 30
    with pytest.raises(NonSquare):
        det(Matrix.zeros(Q, 2, 3))


def test_kernel_examples(Q):
    assert kernel_basis(Matrix.identity(Q, 2)) == []
    assert kernel_basis(Matrix.from_rows(Q, [[1, -1]])) == [[1, 1]]
    assert kernel_basis(Matrix.zeros(Q, 2, 2)) == [[1, 0], [0, 1]]


def test_scalars_are_canonical(F):
    assert F(-1) == F.modulus - 1
    assert F("1/2") * 2 % F.modulus == 1
    assert QQ("6/4") == Fraction(3, 2)
    assert QQ.to_str(Fraction(-3, 2)) == "-3/2"


@settings(max_examples=60, deadline=None)
@given(int_matrices())
def test_rank_nullity(rows):
    for field in (QQ, make_field()):
        m = Matrix.from_rows(field, rows)
        ker = kernel_basis(m)
        assert rank(m) + len(ker) == m.cols
        for v in ker:
            assert all(x == 0 for x in m.apply(v))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(small_ints, min_size=n, max_size=n),
                                                     min_size=n, max_size=n)))
def test_det_nonzero_iff_full_rank(rows):
    m = Matrix.from_rows(QQ, rows)
    assert (det(m) != 0) == (rank(m) == m.rows)
    if det(m) != 0:
        assert inverse(m) @ m == Matrix.identity(QQ, m.rows)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(small_ints, min_size=n, max_size=n),
                                                     min_size=n, max_size=n)))
def test_prime_path_agrees_with_rational_reduction(rows):
    Fp = make_field()
    dq = det(Matrix.from_rows(QQ, rows))
    assert Fp(dq) == det(Matrix.from_rows(Fp, rows))
    assert rank(Matrix.from_rows(QQ, rows)) == rank(Matrix.from_rows(Fp, rows))


def test_solve_and_span_tools(Q):
    m = Matrix.from_rows(Q, [[1, 1], [0, 1]])
    assert solve(m, [3, 1]) == [2, 1]
    assert solve(Matrix.from_rows(Q, [[1, 1], [1, 1]]), [1, 2]) is None
    tester = SpanTester(Q, 3, [[1, 1, 0]])
    assert tester.contains([2, 2, 0]) and not tester.contains([1, 0, 0])
    assert complement_basis(Q, [[1, 1, 0]], 3) == [[1, 0, 0], [0, 0, 1]]


def test_block_assembly(Q):
    a = Matrix.from_rows(Q, [[1, 2]])
    b = Matrix.from_rows(Q, [[3]])
    m = Matrix.block(Q, [1, 1], [2, 1], [[a, None], [None, b]])
    assert m.tolist() == [[1, 2, 0], [0, 0, 3]]
    assert Matrix.block_diagonal(Q, [a, b]) == m


def test_elimination_is_deterministic():
    rng = random.Random(5)
    rows = [[rng.randint(-3, 3) for _ in range(5)] for _ in range(3)]
    m = Matrix.from_rows(QQ, rows)
    assert kernel_basis(m) == kernel_basis(Matrix.from_rows(QQ, rows))
