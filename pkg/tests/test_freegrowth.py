from fractions import Fraction

import pytest

from pgl.errors import BudgetExceeded, InvalidInput
from pgl.freegrowth import (GL_LIMIT, burnside_class_count, c_p_bound,
                            free_bound_check, gl_order, gl_order_exhaustive,
                            parabolic_bound, parabolic_order,
                            parabolic_order_exhaustive,
                            pgroup_rep_bound_check, sylow_bound_check,
                            tuple_census)
from pgl.groups import cyclic


@pytest.mark.parametrize(
    "n,q,order",
    [(1, 2, 1), (2, 2, 6), (2, 3, 48), (3, 2, 168), (2, 4, 180)],
)
def test_gl_order(n, q, order):
    """|GL_n(F_q)| from the product formula."""
    assert gl_order(n, q) == order


@pytest.mark.parametrize("n,q", [(1, 5), (2, 2), (2, 3), (2, 4), (3, 2)])
def test_gl_order_agrees_with_counting(n, q):
    """The formula equals the number of invertible matrices."""
    assert gl_order_exhaustive(n, q) == gl_order(n, q)


def test_parabolic_order():
    """|P(1,1)| over F_2 is 2 and |P(1,2)| is 1 * 6 * 4 = 24."""
    assert parabolic_order(1, 1, 2) == 2
    assert parabolic_order(1, 2, 2) == 24
    assert parabolic_order_exhaustive(1, 1, 2) == 2
    assert parabolic_order_exhaustive(1, 2, 2) == 24
    assert parabolic_order_exhaustive(2, 1, 2) == parabolic_order(2, 1, 2)


def test_order_formulas_reject_bad_arguments():
    """Empty blocks and composite field sizes are invalid."""
    with pytest.raises(InvalidInput):
        parabolic_order(0, 2, 2)
    with pytest.raises(InvalidInput):
        gl_order_exhaustive(2, 6)


def test_census_of_single_matrices_in_gl2_f2():
    """Only the two elements of order 3 act irreducibly on F_2^2; they are conjugate."""
    census = tuple_census(1, 2, 2)
    assert census.total == 6
    assert census.irreducible == 2
    assert census.iso_classes == 1
    (cls,) = census.classes
    assert cls.orbit_size == 2
    assert cls.endo_degree == 2


def test_census_of_pairs_in_gl2_f2():
    """26 of the 36 pairs are irreducible: 3 classes generating S3 and 4 inside C3."""
    # Setup
    census = tuple_census(2, 2, 2)

    # Verify
    assert census.total == 36
    assert census.irreducible == 26
    assert census.iso_classes == 7
    assert sorted(c.endo_degree for c in census.classes) == [1, 1, 1, 2, 2, 2, 2]


def test_one_dimensional_census_counts_every_tuple():
    """In dimension 1 every tuple is irreducible and its own class."""
    census = tuple_census(2, 1, 3)
    assert census.irreducible == census.total == 4
    assert census.iso_classes == 4


@pytest.mark.parametrize("d,n,p", [(1, 2, 2), (2, 2, 2), (2, 1, 5), (1, 2, 3)])
def test_burnside_recount(d, n, p):
    """The orbit-counting recount agrees with the orbit enumeration."""
    census = tuple_census(d, n, p)
    assert burnside_class_count(census) == census.iso_classes


def test_free_bounds_for_pairs_over_f2():
    """r_2(F_2, F_2) = 7 is above c_2^2 2^4 = 1 and 6 - 2 = 4."""
    report = free_bound_check(tuple_census(2, 2, 2))
    assert report.iso_classes == 7
    assert report.c_p_bound == "1/1"
    assert report.parabolic_bound == 4
    assert report.holds


def test_bound_formulas():
    """c_p = 1 - 1/p - 1/p^2 enters with power d."""
    assert c_p_bound(1, 1, 3) == Fraction(5, 9)
    assert c_p_bound(2, 2, 2) == 1
    assert parabolic_bound(3, 2, 2) == 36 - 4


def test_census_budget_refusal():
    """GL_4(F_2) has 20160 elements, above the conjugation table limit."""
    with pytest.raises(BudgetExceeded) as exc:
        tuple_census(1, 4, 2)
    assert exc.value.limit == GL_LIMIT
    assert exc.value.requested == 20160


def test_census_rejects_non_prime():
    """The census works over prime fields."""
    with pytest.raises(InvalidInput):
        tuple_census(1, 2, 4)


@pytest.mark.slow
def test_census_does_not_depend_on_workers():
    """A census spread over several processes equals the serial one."""
    serial = tuple_census(3, 2, 3)
    parallel = tuple_census(3, 2, 3, workers=2)
    assert parallel.model_dump() == serial.model_dump()


def test_sylow_bound():
    """The 2-part of |GL_2(F_3)| = 48 is 16 <= 2^2 3^4."""
    report = sylow_bound_check(2, 3, 2)
    assert report.p_part == 16
    assert report.bound == 324
    assert report.holds
    with pytest.raises(InvalidInput):
        sylow_bound_check(2, 4, 2)


def test_pgroup_rep_bound():
    """C2 over F_3 has two characters and the Sylow 2-subgroup of GL_1(F_3) has order 2."""
    report = pgroup_rep_bound_check(cyclic(2), 3, 1)
    assert (report.r_n, report.sylow_order, report.d) == (2, 2, 1)
    assert report.holds
    with pytest.raises(InvalidInput):
        pgroup_rep_bound_check(cyclic(2), 4, 1)
