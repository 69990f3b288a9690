from fractions import Fraction

import pytest

from pgl.errors import InvalidInput
from pgl.groups import cyclic, normal_subgroups, power_group
from pgl.modrep import trivial_module
from pgl.probgen import (exact_gen_probability, exhaustive_gen_probability,
                         ideal_census, independence_check, m_counts,
                         module_gen_probability,
                         module_gen_probability_exhaustive,
                         monte_carlo_gen_probability, pfr_sum_bound_check,
                         regular_gen_bound_check, stable_lattice,
                         stable_to_extension_map, submodule_lattice,
                         transversal_generation_check)
from pgl.specs import parse_group, parse_surjection


@pytest.fixture
def c4_onto_c2():
    return parse_surjection(cyclic(4), 2)


@pytest.fixture
def klein_onto_trivial():
    return parse_surjection(power_group(cyclic(2), 2), 4)


def test_cyclic_kernel_of_order_two(c4_onto_c2):
    """R = C2 has one maximal stable subgroup and P(k) = 1 - 2^-k."""
    lattice = stable_lattice(c4_onto_c2)
    assert m_counts(lattice) == {2: 1}
    for k in range(1, 5):
        assert exact_gen_probability(lattice, k) == 1 - Fraction(1, 2**k)


def test_klein_four_kernel(klein_onto_trivial):
    """Three maximal subgroups of index 2 and P(k) = 1 - 3 2^-k + 2 4^-k."""
    lattice = stable_lattice(klein_onto_trivial)
    assert m_counts(lattice) == {2: 3}
    for k in range(1, 5):
        expected = 1 - Fraction(3, 2**k) + Fraction(2, 4**k)
        assert exact_gen_probability(lattice, k) == expected
    assert exact_gen_probability(lattice, 2) == Fraction(3, 8)


@pytest.mark.parametrize(
    "spec,kernel_order",
    [("C4", 2), ("C2xC2", 4), ("C2xC2", 2), ("S3", 3), ("S3", 6), ("D4", 4), ("Q8", 8)],
)
def test_exact_matches_exhaustive(spec, kernel_order):
    """The Moebius sum equals the direct count of normally generating tuples."""
    lattice = stable_lattice(parse_surjection(parse_group(spec), kernel_order))
    for k in range(1, 4):
        assert exact_gen_probability(lattice, k) == exhaustive_gen_probability(lattice, k)


def test_zero_elements_generate_nothing(c4_onto_c2):
    """With k = 0 a nontrivial kernel is never generated."""
    lattice = stable_lattice(c4_onto_c2)
    assert exact_gen_probability(lattice, 0) == 0
    assert exhaustive_gen_probability(lattice, 0) == 0
    assert monte_carlo_gen_probability(c4_onto_c2, 0, 10, seed=1).successes == 0
    with pytest.raises(InvalidInput):
        exact_gen_probability(lattice, -1)


def test_monte_carlo_is_seeded_and_close(klein_onto_trivial):
    """The same seed gives the same count, and the estimate is near P(2) = 3/8."""
    # Execute
    first = monte_carlo_gen_probability(klein_onto_trivial, 2, 20000, seed=7)
    second = monte_carlo_gen_probability(klein_onto_trivial, 2, 20000, seed=7)

    # Verify
    assert first == second
    assert first.agrees_with(Fraction(3, 8), sigmas=5.0)
    assert 0 < first.stderr < 0.01


def test_monte_carlo_rejects_empty_run(c4_onto_c2):
    """At least one trial is needed."""
    with pytest.raises(InvalidInput):
        monte_carlo_gen_probability(c4_onto_c2, 1, 0, seed=0)


def test_failure_sum_bound(klein_onto_trivial):
    """1 - P(2) = 5/8 is at most 3/4."""
    report = pfr_sum_bound_check(stable_lattice(klein_onto_trivial), 2)
    assert report.failure == "5/8"
    assert report.bound == "3/4"
    assert report.holds


def test_maximal_subgroups_are_independent(klein_onto_trivial):
    """Distinct maximal subgroups of C2 x C2 meet in the identity."""
    assert independence_check(stable_lattice(klein_onto_trivial))


def test_surjection_without_matching_kernel():
    """C4 has no normal subgroup of order 3."""
    with pytest.raises(InvalidInput):
        parse_surjection(cyclic(4), 3)


def test_stable_extensions_of_klein_four(klein_onto_trivial):
    """The three maximal subgroups give isomorphic extensions of degree 2, at most 2^2."""
    mapping = stable_to_extension_map(klein_onto_trivial)
    assert mapping.d == 2
    assert len(mapping.extensions) == 3
    assert sum(size for _, size in mapping.buckets) == 3
    assert all(degree == 2 for degree, _ in mapping.buckets)
    assert mapping.holds


def test_ideal_census_over_dividing_and_coprime_characteristic():
    """F_2[C2] is local; F_3[C2] has two maximal ideals of index 3."""
    local = ideal_census(cyclic(2), 2, 2)
    assert [(r.r_n, r.m_ideal) for r in local.rows] == [(1, 1), (0, 0)]
    split = ideal_census(cyclic(2), 3, 1)
    assert split.m(1) == 2
    assert all(r.holds for r in local.rows + split.rows)


def test_ideal_census_of_s3(s3):
    """Every row of F_2[S3] and F_3[S3] satisfies the sandwich."""
    for p in (2, 3):
        assert all(row.holds for row in ideal_census(s3, p, 3).rows)


def test_module_generation_of_trivial_plane(s3, f2):
    """Two vectors generate F_2^2 with probability 6/16."""
    m = trivial_module(s3, f2, 2)
    assert len(submodule_lattice(m)) == 5
    assert module_gen_probability(m, 2) == Fraction(3, 8)
    assert module_gen_probability_exhaustive(m, 2) == Fraction(3, 8)
    assert module_gen_probability(m, 1) == 0


def test_regular_module_bound_for_c2():
    """One vector generates F_2[C2] with probability 1/2, meeting the bound."""
    report = regular_gen_bound_check(cyclic(2), 2, 1)
    assert report.probability == "1/2"
    assert report.bound == "1/2"
    assert report.holds


def test_transversal_generation(s3):
    """Generators of F_2[S3] translated by a transversal generate over F_2[A3]."""
    (a3,) = [n for n in normal_subgroups(s3) if n.order == 3]
    report = transversal_generation_check(s3, a3, 2, 1)
    assert report.tuples == 64
    assert report.generating > 0
    assert report.holds
