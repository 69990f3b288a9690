import numpy as np
import pytest

from pgl.errors import HypothesisViolation, InvalidInput
from pgl.ffalg import field_make
from pgl.groups import (cyclic, normal_subgroups, power_group, simple_group,
                        symmetric, trivial_group)
from pgl.modrep import (GModule, absolute_count_bound_check, brauer_check,
                        chop, divisor_sum_check, dual,
                        faithful_irreducible_factor, galois_orbits,
                        hom_dimension, is_irreducible,
                        is_irreducible_exhaustive, product_convolution_check,
                        r_counts, regular_module, restriction_rank_check,
                        simple_modules, spin, trivial_module, uberg_witness)


def test_s3_over_f2_growth_table(s3, f2):
    """S3 over F_2 has one simple module in dimensions 1 and 2, none above."""
    table = r_counts(s3, f2, 4)
    assert [(row.r, row.r_star) for row in table.rows] == [(1, 1), (1, 1), (0, 0), (0, 0)]
    assert table.cumulative(4) == 2


def test_trivial_group_has_one_representation():
    """The trivial group has exactly the trivial representation."""
    table = r_counts(trivial_group(), field_make(2), 1)
    assert [(row.n, row.r) for row in table.rows] == [(1, 1)]


def test_c6_splits_over_f7():
    """F_7 contains the sixth roots of unity, so C6 has six 1-dimensional modules."""
    table = r_counts(cyclic(6), field_make(7), 2)
    assert table.r(1) == 6
    assert table.r(2) == 0


def test_c3_over_f2_is_not_split():
    """C3 over F_2: a 2-dimensional simple module with endomorphism field F_4."""
    records = simple_modules(cyclic(3), field_make(2))
    assert sorted((r.dim, r.endo_degree, r.abs_irred) for r in records) == [
        (1, 1, True),
        (2, 2, False),
    ]


def test_r_counts_rejects_empty_range(s3, f2):
    """n_max must be positive."""
    with pytest.raises(InvalidInput):
        r_counts(s3, f2, 0)


def test_uberg_witness_is_finite_range(s3, f2):
    """R_2 = 2 forces e = 1 on the range n <= 2."""
    assert uberg_witness(r_counts(s3, f2, 2)) == 1


@pytest.mark.parametrize(
    "group,p",
    [
        (cyclic(3), 2),
        (cyclic(12), 5),
        (symmetric(3), 2),
        (symmetric(3), 3),
        (symmetric(4), 3),
        (simple_group("A5"), 2),
        (cyclic(11), 5),
    ],
)
def test_brauer_count(group, p):
    """Endomorphism degrees of the F_p-simples add up to the p-regular class count."""
    lhs, rhs = brauer_check(group, p)
    assert lhs == rhs


def test_c11_over_f5_has_quintic_simples():
    """x^11 - 1 splits over F_5 into degrees 1, 5 and 5, so F_5[C11] has simples of those dimensions."""
    records = simple_modules(cyclic(11), field_make(5))
    assert sorted((r.dim, r.endo_degree, r.abs_irred) for r in records) == [
        (1, 1, True),
        (5, 5, False),
        (5, 5, False),
    ]


def test_regular_module_composition_factors(s3, f2):
    """F_2[S3] has the trivial and the 2-dimensional module twice each."""
    factors = chop(regular_module(s3, f2))
    assert sorted((rec.dim, mult) for rec, mult in factors) == [(1, 2), (2, 2)]


def test_irreducibility_tests_agree(s3, f2):
    """The randomized and the exhaustive tests agree on small modules."""
    two = next(r.module for r in simple_modules(s3, f2) if r.dim == 2)
    assert is_irreducible(two)
    assert is_irreducible_exhaustive(two)
    triv2 = trivial_module(s3, f2, 2)
    assert not is_irreducible(triv2)
    assert not is_irreducible_exhaustive(triv2)


def test_absolutely_irreducible_module_has_scalar_endomorphisms(s3, f2):
    """Hom(V, V) is 1-dimensional for V absolutely irreducible, also for the dual."""
    two = next(r.module for r in simple_modules(s3, f2) if r.dim == 2)
    assert hom_dimension(two, two) == 1
    assert hom_dimension(dual(two), dual(two)) == 1


def test_spin_of_identity_vector_is_everything(s3, f2):
    """The basis vector of the identity generates the regular module."""
    m = regular_module(s3, f2)
    v = np.zeros((1, m.dim), dtype=np.int64)
    v[0, s3.identity] = 1
    assert len(spin(m, v)) == m.dim


def test_module_rejects_non_representation(s3, f2):
    """Matrices that do not satisfy the group relations are rejected."""
    bad = [np.eye(2, dtype=np.int64), np.array([[1, 1], [0, 1]])]
    with pytest.raises(InvalidInput):
        GModule(s3, f2, bad)


def test_galois_descent_for_c3():
    """Over F_4, the two nontrivial characters of C3 form one orbit descending to dimension 2."""
    (_, over_f4) = galois_orbits(cyclic(3), 2, 2)
    assert over_f4.bijective
    assert sorted((len(o.members), o.descent_dim) for o in over_f4.orbits) == [(1, 1), (2, 2)]
    assert all(o.dimension_law and o.split_exactly for o in over_f4.orbits)


def test_a5_fusion_over_f4():
    """Two conjugate 2-dimensional F_4-modules of A5 fuse into one 4-dimensional F_2-module."""
    (_, over_f4) = galois_orbits(simple_group("A5"), 2, 2)
    fused = [o for o in over_f4.orbits if len(o.members) == 2]
    assert [(o.member_dim, o.descent_dim) for o in fused] == [(2, 4)]


def test_divisor_sum_relation():
    """r_n(C3, F_2) is recovered from the absolute counts over F_2 and F_4."""
    rows = divisor_sum_check(cyclic(3), 2, 2)
    assert [(r.direct, r.exact) for r in rows] == [(1, 1), (1, 1)]


def test_absolute_count_bound():
    """r*_1(C3, F_4) = 3 is at most 2 R_2(C3, F_2) = 4."""
    (row,) = absolute_count_bound_check(cyclic(3), 2, 2, 1)
    assert (row.absolute, row.bound) == (3, 4)


def test_product_convolution(s3):
    """r*_n of S3 x C2 over F_3 is the Dirichlet convolution of the factor counts."""
    report = product_convolution_check(s3, cyclic(2), field_make(3), 4)
    assert report.holds
    assert report.left == report.right


def test_faithful_irreducible_factor(s3, f2):
    """The regular module of S3 has the 2-dimensional module as faithful factor."""
    rec = faithful_irreducible_factor(s3, regular_module(s3, f2))
    assert rec.dim == 2


def test_faithful_factor_hypotheses(f2):
    """Violated hypotheses are reported with a machine readable reason."""
    klein = power_group(cyclic(2), 2)
    with pytest.raises(HypothesisViolation) as exc:
        faithful_irreducible_factor(klein, regular_module(klein, f2))
    assert exc.value.reason == "minimal-normal-not-unique"
    c2 = cyclic(2)
    with pytest.raises(HypothesisViolation) as exc:
        faithful_irreducible_factor(c2, regular_module(c2, f2))
    assert exc.value.reason == "minimal-normal-is-p-group"


def test_restriction_to_subgroup_is_free(s3):
    """F_2[S3] restricted to A3 is [S3:A3] = 2 copies of F_2[A3]."""
    (a3,) = [n for n in normal_subgroups(s3) if n.order == 3]
    report = restriction_rank_check(s3, a3, 2)
    assert report.rank == 2
    assert report.holds
