"""Exact linear algebra over flattened matrices.

The package's fraction-free elimination is cross-checked against a plain
Fraction-based Gaussian elimination written here, so the two routes share
no code.
"""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rowsync.errors import DomainError
from rowsync.exactlin import (RationalBasis, all_row_monomial, basis_insert,
                              check_sum_conditions, common_column_span_dimension,
                              decompose_vij, express, express_vectors, flatten, matrix_rank,
                              rank_of_vectors, sink_family_dimension, span_dimension,
                              two_column_span_dimension, vij_basis)
from rowsync.rowmon import RowMonomialMatrix, identity, rank


def oracle_rank(rows):
    """Textbook Gaussian elimination over Fraction, independent of the package."""
    mat = [[Fraction(v) for v in row] for row in rows]
    if not mat:
        return 0
    cols = len(mat[0])
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c] / mat[r][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        r += 1
        if r == len(mat):
            break
    return r


def test_flatten_positions():
    m = RowMonomialMatrix(3, (1, 0, 2))
    assert flatten(m) == (0, 1, 0, 1, 0, 0, 0, 0, 1)
    assert sum(flatten(m)) == 3


def test_basis_insert_and_membership():
    basis = RationalBasis(4)
    assert basis.insert((1, 0, 0, 0))
    assert basis.insert((1, 1, 0, 0))
    assert not basis.insert((2, 1, 0, 0))
    assert basis.dimension == 2
    assert basis.contains((0, 3, 0, 0))
    assert not basis.contains((0, 0, 1, 0))
    assert basis.inserted_vectors == ((1, 0, 0, 0), (1, 1, 0, 0))
    assert basis.serialize() == [[1, 0, 0, 0], [1, 1, 0, 0]]
    with pytest.raises(DomainError):
        basis.insert((1, 0, 0))


def test_basis_insert_matrices():
    basis = RationalBasis(9)
    grew = [basis_insert(basis, m) for m in all_row_monomial(3)]
    assert basis.dimension == 7
    assert sum(grew) == 7
    with pytest.raises(DomainError):
        basis_insert(RationalBasis(4), identity(3))


def test_rank_against_oracle_on_random_integer_matrices():
    rng = random.Random(5)
    for _ in range(300):
        height = rng.randint(1, 6)
        width = rng.randint(1, 6)
        rows = [[rng.randint(-3, 3) for _ in range(width)] for _ in range(height)]
        assert rank_of_vectors(rows, width) == oracle_rank(rows)


def test_matrix_rank_equals_column_count():
    rng = random.Random(6)
    for _ in range(200):
        n = rng.randint(1, 6)
        m = RowMonomialMatrix(n, tuple(rng.randrange(n) for _ in range(n)))
        assert matrix_rank(m) == rank(m) == oracle_rank(dense_rows(m))


def dense_rows(m):
    return [list(m.row(i)) for i in range(m.n)]


def test_express_reproduces_target():
    fam = vij_basis(4, 3)
    target = RowMonomialMatrix(4, (0, 2, 1, 2))
    coeffs = express(target, fam)
    assert coeffs is not None
    combo = [Fraction(0)] * 16
    for c, m in zip(coeffs, fam):
        for pos, v in enumerate(flatten(m)):
            combo[pos] += c * v
    assert combo == [Fraction(v) for v in flatten(target)]


def test_express_out_of_span():
    sink = RowMonomialMatrix(3, (0, 0, 0))
    assert express(identity(3), [sink]) is None
    assert express_vectors((0, 0, 0), []) == ()
    assert express_vectors((1, 0, 0), []) is None


def test_express_sets_free_variables_to_zero():
    m = RowMonomialMatrix(2, (0, 1))
    assert express(m, [m, m]) == (Fraction(1), Fraction(0))


def test_express_size_mismatch():
    with pytest.raises(DomainError):
        express(identity(3), [identity(2)])


def test_sum_conditions_good_and_bad():
    m = RowMonomialMatrix(3, (1, 0, 2))
    verdict = check_sum_conditions((Fraction(1),), [m], m)
    assert verdict.ok and verdict.coefficient_sum == 1 and set(verdict.row_sums) == {Fraction(1)}
    verdict = check_sum_conditions((Fraction(1), Fraction(-1)), [m, m], None)
    assert verdict.ok and verdict.coefficient_sum == 0 and set(verdict.row_sums) == {Fraction(0)}
    verdict = check_sum_conditions((Fraction(1, 2),), [m], m)
    assert not verdict.ok
    assert any("coefficient sum" in v for v in verdict.violations)
    assert any("row" in v for v in verdict.violations)
    with pytest.raises(DomainError):
        check_sum_conditions((Fraction(1),), [], m)


def test_vij_basis_shapes_frozen():
    fam = vij_basis(3, 2)
    assert [m.targets for m in fam] == [(0, 1, 1), (1, 0, 1), (1, 1, 0), (1, 1, 1)]
    assert span_dimension(fam) == 4
    with pytest.raises(DomainError):
        vij_basis(3, 1)
    with pytest.raises(DomainError):
        vij_basis(3, 4)


@pytest.mark.parametrize("n,k", [(2, 2), (3, 2), (3, 3), (4, 2), (4, 3), (4, 4), (5, 4), (6, 6)])
def test_vij_basis_rank(n, k):
    fam = vij_basis(n, k)
    assert len(fam) == n * (k - 1) + 1
    assert span_dimension(fam) == n * (k - 1) + 1


def test_vij_leave_one_out():
    fam = vij_basis(4, 3)
    for drop in range(len(fam)):
        assert span_dimension(fam[:drop] + fam[drop + 1:]) == len(fam) - 1


def test_decompose_k_matrix_alone():
    k_matrix = RowMonomialMatrix(3, (1, 1, 1))
    coeffs = decompose_vij(k_matrix, 2)
    assert coeffs == (Fraction(0),) * 3 + (Fraction(1),)


def test_decompose_single_v_matrix():
    fam = vij_basis(3, 2)
    coeffs = decompose_vij(fam[0], 2)
    assert coeffs == (Fraction(1), Fraction(0), Fraction(0), Fraction(0))


def test_decompose_counts_off_column_units():
    t = RowMonomialMatrix(3, (0, 0, 0))
    coeffs = decompose_vij(t, 2)
    assert coeffs == (Fraction(1), Fraction(1), Fraction(1), Fraction(-2))


def test_decompose_matches_express_exhaustively():
    for n, k in ((3, 2), (3, 3), (4, 3)):
        fam = vij_basis(n, k)
        for t in all_row_monomial(n, columns=tuple(range(k))):
            assert decompose_vij(t, k) == express(t, fam)


def test_decompose_rejects_unit_outside_first_columns():
    with pytest.raises(DomainError):
        decompose_vij(RowMonomialMatrix(3, (0, 2, 0)), 2)
    with pytest.raises(DomainError):
        decompose_vij(identity(3), 1)


def test_full_span_dimensions():
    assert span_dimension(all_row_monomial(2)) == 3
    assert span_dimension(all_row_monomial(3)) == 7
    assert span_dimension(all_row_monomial(4)) == 13


def test_column_family_dimensions_frozen():
    assert [two_column_span_dimension(n, 0, 1) for n in (3, 4, 5)] == [4, 5, 6]
    assert two_column_span_dimension(4, 1, 3) == 5
    assert [sink_family_dimension(n) for n in (3, 4, 5)] == [3, 4, 5]
    assert [common_column_span_dimension(n, 0) for n in (3, 4)] == [7, 13]
    with pytest.raises(DomainError):
        two_column_span_dimension(3, 1, 1)


@given(st.lists(st.lists(st.integers(-4, 4), min_size=5, max_size=5), min_size=1, max_size=8))
@settings(max_examples=200, deadline=None)
def test_basis_against_oracle(rows):
    basis = RationalBasis(5)
    for row in rows:
        basis.insert(row)
    assert basis.dimension == oracle_rank(rows)
    for row in rows:
        assert basis.contains(row)
    assert basis.dimension <= 5


@given(st.integers(2, 5), st.data())
@settings(max_examples=100, deadline=None)
def test_insert_is_idempotent(n, data):
    targets = tuple(data.draw(st.integers(0, n - 1)) for _ in range(n))
    m = RowMonomialMatrix(n, targets)
    basis = RationalBasis(n * n)
    assert basis_insert(basis, m)
    assert not basis_insert(basis, m)
    assert basis.dimension == 1
