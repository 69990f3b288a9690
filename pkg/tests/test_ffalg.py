import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pgl.errors import BudgetExceeded, InvalidInput
from pgl.ffalg import (Matrix, all_vectors, base_change, batch_rank,
                       factor_polynomial, field_make, frobenius, inverse_array,
                       irreducible_polynomials, nullspace_array,
                       projective_points, rank_array, rowspace_array,
                       solve_array, vector_codes, vector_minimal_polynomial)

FIELDS = [(2, 1), (3, 1), (5, 1), (2, 2), (3, 2), (2, 3)]


def test_prime_field_elements():
    """F_2 has the two elements 0 and 1 and no modulus."""
    f = field_make(2)
    assert f.q == 2
    assert f.modulus is None
    assert f.elements().tolist() == [0, 1]


def test_f4_modulus_is_lexicographically_first():
    """F_4 is defined by x^2 + x + 1, so x * x = x + 1."""
    f = field_make(2, 2)
    assert f.modulus == (1, 1, 1)
    # x has code 2, x + 1 has code 3
    assert int(f.mul(2, 2)) == 3


def test_field_make_is_cached():
    """Equal arguments give the same field object."""
    assert field_make(3, 2) is field_make(3, 2)


def test_field_make_rejects_bad_arguments():
    """Composite characteristics and empty degrees are invalid input; huge fields are refused."""
    with pytest.raises(InvalidInput):
        field_make(4)
    with pytest.raises(InvalidInput):
        field_make(3, 0)
    with pytest.raises(BudgetExceeded) as exc:
        field_make(2, 17)
    assert exc.value.cap == "field-size"


@pytest.mark.parametrize("p,e", FIELDS)
def test_multiplicative_group_is_cyclic_of_order_q_minus_1(p, e):
    """Every nonzero element satisfies a^(q-1) = 1 and has an inverse."""
    f = field_make(p, e)
    nonzero = f.elements()[1:]
    assert np.all(f.power(nonzero, f.q - 1) == 1)
    assert np.all(f.mul(nonzero, f.inv(nonzero)) == 1)


@pytest.mark.parametrize("p,e", FIELDS)
def test_frobenius_is_a_field_automorphism_of_order_e(p, e):
    """x -> x^p respects sums and products and has order e."""
    f = field_make(p, e)
    xs = f.elements()
    a, b = np.meshgrid(xs, xs)
    assert np.array_equal(frobenius(f.add(a, b), f), f.add(frobenius(a, f), frobenius(b, f)))
    assert np.array_equal(frobenius(f.mul(a, b), f), f.mul(frobenius(a, f), frobenius(b, f)))
    x = xs
    for _ in range(e):
        x = frobenius(x, f)
    assert np.array_equal(x, xs)


@st.composite
def matrices(draw, max_rows=5, max_cols=5):
    p, e = draw(st.sampled_from(FIELDS))
    f = field_make(p, e)
    rows = draw(st.integers(1, max_rows))
    cols = draw(st.integers(1, max_cols))
    entries = draw(
        st.lists(st.integers(0, f.q - 1), min_size=rows * cols, max_size=rows * cols)
    )
    return f, np.array(entries, dtype=np.int64).reshape(rows, cols)


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_nullity(case):
    """rank(A) + dim ker(A) equals the number of columns."""
    f, a = case
    kernel = nullspace_array(f, a)
    assert rank_array(f, a) + kernel.shape[0] == a.shape[1]
    if kernel.shape[0]:
        assert not np.any(f.matmul(a, kernel.T))


@settings(max_examples=40, deadline=None)
@given(matrices(max_rows=4, max_cols=4))
def test_batch_rank_agrees_with_row_reduction(case):
    """The vectorized rank equals the rank of each matrix on its own."""
    f, a = case
    stack = np.stack([a, f.mul(a, 0), a.copy()])
    assert batch_rank(f, stack).tolist() == [rank_array(f, a), 0, rank_array(f, a)]


@settings(max_examples=40, deadline=None)
@given(matrices(max_rows=4, max_cols=4))
def test_solve_returns_a_solution_when_consistent(case):
    """A x = A 1 is consistent and the particular solution satisfies it."""
    f, a = case
    b = f.matmul(a, np.ones((a.shape[1], 1), dtype=np.int64))[:, 0]
    solution = solve_array(f, a, b)
    assert solution.consistent
    assert np.array_equal(f.matmul(a, solution.particular[:, None])[:, 0], b)


def test_solve_reports_inconsistent_system():
    """x = 0 and x = 1 have no common solution; this is a value, not an error."""
    f = field_make(3)
    solution = solve_array(f, np.array([[1], [1]]), np.array([0, 1]))
    assert not solution.consistent
    assert solution.particular is None


def test_inverse_and_singular_matrix():
    """Invertible matrices invert; singular ones raise ZeroDivisionError."""
    f = field_make(5)
    a = np.array([[1, 2], [3, 4]])
    inv = inverse_array(f, a)
    assert np.array_equal(f.matmul(a, inv), f.eye(2))
    with pytest.raises(ZeroDivisionError):
        inverse_array(f, np.array([[1, 2], [2, 4]]))


def test_matrix_wrapper():
    """Matrix validates entries and offers rank, inverse and products."""
    f = field_make(3)
    m = Matrix(f, [[1, 1], [0, 1]])
    assert m.rank() == 2
    assert m @ m.inverse() == Matrix.identity(f, 2)
    assert (m @ m @ m) == Matrix.identity(f, 2)
    with pytest.raises(InvalidInput):
        Matrix(f, [[3]])


def test_base_change_keeps_entries():
    """A matrix over F_2 embeds into F_4 with the same codes."""
    m = Matrix(field_make(2), [[1, 0], [1, 1]])
    lifted = base_change(m, field_make(2, 2))
    assert lifted.field is field_make(2, 2)
    assert lifted.tolist() == m.tolist()
    with pytest.raises(InvalidInput):
        base_change(m, field_make(3, 2))


def test_irreducible_polynomials_over_f2():
    """x^2 + x + 1 is the only irreducible quadratic over F_2; there are two cubics."""
    f = field_make(2)
    assert irreducible_polynomials(f, 2) == ((1, 1, 1),)
    assert len(irreducible_polynomials(f, 3)) == 2


def test_vector_minimal_polynomial_of_a_cycle():
    """A basis vector under a 3-cycle over F_3 is annihilated by x^3 - 1 and nothing smaller."""
    f = field_make(3)
    cycle = np.array([[0, 0, 1], [1, 0, 0], [0, 1, 0]], dtype=np.int64)
    assert vector_minimal_polynomial(f, cycle, np.array([1, 0, 0])) == (2, 0, 0, 1)
    assert vector_minimal_polynomial(f, cycle, np.array([1, 1, 1])) == (2, 1)
    assert vector_minimal_polynomial(f, cycle, np.zeros(3, dtype=np.int64)) == (1,)


def test_factor_polynomial_over_prime_fields():
    """x^11 - 1 over F_5 is x - 1 times two irreducible quintics."""
    f5 = field_make(5)
    factors = factor_polynomial(f5, (4,) + (0,) * 10 + (1,))
    assert [len(g) - 1 for g in factors] == [1, 5, 5]
    assert factors[0] == (4, 1)
    assert all(g[-1] == 1 for g in factors)
    assert factor_polynomial(field_make(2), (1, 1, 1)) == ((1, 1, 1),)
    assert factor_polynomial(f5, (3,)) == ()


def test_factor_polynomial_rejects_extension_fields():
    """Factorization is only offered over prime fields."""
    with pytest.raises(InvalidInput):
        factor_polynomial(field_make(2, 2), (1, 1, 1))


def test_vectors_and_codes():
    """Vector codes invert the enumeration order of all_vectors."""
    f = field_make(3)
    vectors = all_vectors(f, 3)
    assert vectors.shape == (27, 3)
    assert np.array_equal(vector_codes(f, vectors), np.arange(27))


def test_projective_points_count():
    """F_3^3 has (27 - 1) / 2 = 13 lines, each normalized to a leading 1."""
    f = field_make(3)
    points = projective_points(f, f.eye(3))
    assert points.shape == (13, 3)
    leading = points[np.arange(13), (points != 0).argmax(axis=1)]
    assert np.all(leading == 1)


def test_rowspace_is_canonical():
    """Row spaces of equal spans coincide."""
    f = field_make(2)
    a = np.array([[1, 1, 0], [0, 1, 1]])
    b = np.array([[1, 0, 1], [1, 1, 0], [0, 1, 1]])
    assert np.array_equal(rowspace_array(f, a), rowspace_array(f, b))
