import json
import random
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from partreg.linalg import (Matrix, column_sum, is_zero_vector, kernel_basis,
                            rank, span_membership, vector)
from partreg.systems import schur, vdw

rationals = st.fractions(min_value=-10 ** 6, max_value=10 ** 6,
                         max_denominator=10 ** 4)
nonzero_rationals = rationals.filter(lambda x: x != 0)


def echelon_rank(rows):
    """Independent rank oracle: plain forward elimination, no pivot tricks."""
    m = [list(r) for r in rows]
    n_rows, n_cols = len(m), len(m[0])
    r = 0
    for c in range(n_cols):
        piv = next((i for i in range(r, n_rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, n_rows):
            if m[i][c] != 0:
                f = m[i][c] / m[r][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
    return r


@given(rationals, rationals)
def test_rational_addition_round_trip(a, b):
    assert (a + b) - b == a


@given(rationals, nonzero_rationals)
def test_rational_multiplication_round_trip(a, b):
    assert (a * b) / b == a


def test_span_membership_one_dimensional():
    coeffs = span_membership([vector([1]), vector([-1])], vector([2]))
    assert coeffs is not None
    assert sum(c * b for c, b in zip(coeffs, [F(1), F(-1)])) == 2


def test_span_membership_empty_basis():
    assert span_membership([], vector([0, 0])) == []
    assert span_membership([], vector([1, 0])) is None


def test_span_membership_two_by_two():
    # 3*(1,1) - 3*(1,0) = (0,3), solved by hand
    coeffs = span_membership([vector([1, 1]), vector([1, 0])], vector([0, 3]))
    assert coeffs == [F(3), F(-3)]


def test_span_membership_absent():
    assert span_membership([vector([1, 0])], vector([0, 1])) is None


def test_span_membership_dimension_mismatch():
    with pytest.raises(ValueError):
        span_membership([vector([1, 0])], vector([1]))


def test_kernel_schur():
    m = schur()
    basis = kernel_basis(m)
    assert len(basis) == 2
    for v in basis:
        assert is_zero_vector(m.mul_vec(v))


def test_kernel_identity_trivial():
    m = Matrix.from_rows([[1, 0], [0, 1]])
    assert kernel_basis(m) == []


def test_kernel_zero_matrix_full():
    m = Matrix.from_rows([[0, 0]])
    assert len(kernel_basis(m)) == 2


def test_column_sum_examples():
    assert column_sum(schur(), [0, 2]) == (F(0),)
    assert column_sum(schur(), []) == (F(0),)
    assert column_sum(vdw(3), [1, 2, 3]) == (F(0), F(0))


def test_column_sum_out_of_range():
    with pytest.raises(IndexError):
        column_sum(schur(), [3])


def _random_matrix(rng, rows, cols):
    return Matrix.from_rows([
        [F(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(cols)]
        for _ in range(rows)])


def test_rank_nullity_against_independent_oracle():
    rng = random.Random(20240817)
    for _ in range(200):
        rows, cols = rng.randint(1, 4), rng.randint(1, 5)
        m = _random_matrix(rng, rows, cols)
        kb = kernel_basis(m)
        for v in kb:
            assert is_zero_vector(m.mul_vec(v))
        assert len(kb) + rank(m) == cols
        assert rank(m) == echelon_rank(m.entries)


def test_kernel_vectors_linearly_independent():
    rng = random.Random(7)
    for _ in range(50):
        m = _random_matrix(rng, rng.randint(1, 3), rng.randint(2, 5))
        kb = kernel_basis(m)
        if kb:
            assert echelon_rank(kb) == len(kb)


def test_span_membership_reproduces_target_exactly():
    rng = random.Random(99)
    for _ in range(100):
        dim = rng.randint(1, 4)
        basis = [tuple(F(rng.randint(-5, 5)) for _ in range(dim))
                 for _ in range(rng.randint(0, 3))]
        coeffs = [F(rng.randint(-3, 3), rng.randint(1, 3)) for _ in basis]
        target = tuple(sum((c * b[i] for c, b in zip(coeffs, basis)), F(0))
                       for i in range(dim))
        got = span_membership(basis, target)
        assert got is not None
        rebuilt = tuple(sum((c * b[i] for c, b in zip(got, basis)), F(0))
                        for i in range(dim))
        assert rebuilt == target


def test_matrix_json_round_trip():
    m = Matrix.from_rows([[F(1, 2), -1], [3, F(-7, 5)]])
    data = json.loads(m.to_json())
    assert data["entries"][0][0] == "1/2"
    assert Matrix.from_json(m.to_json()) == m


def test_matrix_json_schema():
    data = schur().to_json_dict()
    assert data == {"rows": 1, "cols": 3, "entries": [["1", "1", "-1"]]}


def test_matrix_validation():
    with pytest.raises(ValueError):
        Matrix.from_rows([])
    with pytest.raises(ValueError):
        Matrix.from_rows([[1, 2], [3]])
    with pytest.raises(IndexError):
        schur().entry(0, 3)
