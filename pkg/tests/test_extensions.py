import itertools
import math

import numpy as np
import pytest

from pgl.errors import IncompatibleCocycle, InvalidInput
from pgl.extensions import (Presentation, abelian_extension_chain,
                            abelian_minimal_extensions,
                            coupling_fiber_bound_check,
                            extension_from_cocycle, extensions_isomorphic,
                            generation_bound_check, h2,
                            kernel_is_minimal_normal, min_extension_census,
                            nonabelian_extension_count, presentation_bound_check,
                            presentation_order, semidirect_EH,
                            semidirect_product_generators_check,
                            subgroup_class, t_map, verify_presentation)
from pgl.ffalg import field_make
from pgl.groups import (all_subgroups, are_isomorphic, cyclic, power_group,
                        simple_group)
from pgl.modrep import simple_modules, trivial_module
from pgl.specs import parse_group


def test_h2_dimensions(f2):
    """H^2(C2, F_2) = F_2, H^2(C3, F_2) = 0 and H^2(C2 x C2, F_2) = F_2^3."""
    c2, c3 = cyclic(2), cyclic(3)
    klein = power_group(cyclic(2), 2)
    assert h2(c2, trivial_module(c2, f2)).h2_dim == 1
    assert h2(c3, trivial_module(c3, f2)).h2_dim == 0
    assert h2(klein, trivial_module(klein, f2)).h2_dim == 3


def _trivial_h2_by_enumeration(g, p):
    """``dim H^2(G, F_p)`` for the trivial module from all normalized 2-cochains."""
    n = g.order
    rest = np.array([x for x in range(n) if x != g.identity])
    values = np.array(list(itertools.product(range(p), repeat=(n - 1) ** 2)), dtype=np.int64)
    c = np.zeros((len(values), n, n), dtype=np.int64)
    c[:, rest[:, None], rest[None, :]] = values.reshape(-1, n - 1, n - 1)
    x = g.elements
    prod = g.mul(x[:, None], x[None, :])
    # c(a, b) + c(ab, d) = c(b, d) + c(a, bd) for all a, b, d
    defect = c[:, :, :, None] + c[:, prod, :] - c[:, None, :, :] - c[:, :, prod]
    cocycles = int(np.all(defect % p == 0, axis=(1, 2, 3)).sum())
    coboundaries = set()
    for f1 in itertools.product(range(p), repeat=n - 1):
        f = np.zeros(n, dtype=np.int64)
        f[rest] = f1
        coboundaries.add(tuple(((f[:, None] + f[None, :] - f[prod]) % p).ravel()))
    quotient = cocycles // len(coboundaries)
    assert quotient * len(coboundaries) == cocycles
    return round(math.log(quotient, p))


@pytest.mark.parametrize(
    "group,p,expected",
    [
        (cyclic(2), 2, 1),
        (cyclic(3), 3, 1),
        (power_group(cyclic(2), 2), 2, 3),
        (cyclic(4), 2, 1),
    ],
)
def test_h2_matches_cochain_enumeration(group, p, expected):
    """H^2 with trivial coefficients agrees with counting cocycles modulo coboundaries."""
    # Execute
    brute = _trivial_h2_by_enumeration(group, p)
    computed = h2(group, trivial_module(group, field_make(p))).h2_dim
    # Verify
    assert brute == expected
    assert computed == brute


def test_two_minimal_extensions_of_c2_by_c2():
    """C2 has exactly the minimal extensions C4 and C2 x C2 of degree 2."""
    records = abelian_minimal_extensions(cyclic(2), 2, 1)
    assert len(records) == 2
    by_split = {r.split: r for r in records}
    assert are_isomorphic(by_split[False].total, cyclic(4))
    assert are_isomorphic(by_split[True].total, power_group(cyclic(2), 2))
    assert all(r.minimal and r.abelian and r.degree == 2 for r in records)


def test_extensions_isomorphic_separates_c4_from_klein():
    """Isomorphism over the base separates the two extensions and accepts each with itself."""
    a, b = abelian_minimal_extensions(cyclic(2), 2, 1)
    assert extensions_isomorphic(a, a) is True
    assert extensions_isomorphic(a, b) is False


def test_non_cocycle_is_rejected(f2):
    """A cochain that is not normalized raises IncompatibleCocycle."""
    c2 = cyclic(2)
    v = trivial_module(c2, f2)
    with pytest.raises(IncompatibleCocycle):
        extension_from_cocycle(c2, v, np.ones((2, 2, 1), dtype=np.int64))


@pytest.mark.parametrize(
    "spec,p,k",
    [("C2", 2, 1), ("C3", 3, 1), ("S3", 2, 1), ("S3", 2, 2), ("S3", 3, 1)],
)
def test_abelian_extension_chain(spec, p, k):
    """r_k <= e^min_(p^k) <= sum of |H^2(G, V)| over the k-dimensional simples."""
    report = abelian_extension_chain(parse_group(spec), p, k)
    assert report.holds
    assert report.r_k <= report.count <= report.cohomology_sum


def test_presentation_parsing():
    """Relators expand powers of bracketed words."""
    pres = Presentation.parse("<a, b | a^2, b^3, (ab)^2>")
    assert pres.generators == ["a", "b"]
    assert pres.words()[2] == [(0, 1), (1, 1), (0, 1), (1, 1)]
    assert pres.words()[0] == [(0, 1), (0, 1)]
    with pytest.raises(InvalidInput):
        Presentation.parse("a, b | a^2")
    with pytest.raises(InvalidInput):
        Presentation.parse("<a | b^2>").words()


def test_presentation_order_by_coset_enumeration():
    """The standard presentation of S3 defines a group of order 6."""
    assert presentation_order(Presentation.parse("<a, b | a^2, b^3, (ab)^2>")) == 6


def test_verify_presentation_rejects_failing_relator(s3):
    """b has order 3 in S3, so b^2 is not a relator."""
    with pytest.raises(InvalidInput):
        verify_presentation(s3, Presentation.parse("<a, b | a^2, b^2, (ab)^2>"))


def test_presentation_bound_for_c2():
    """e^min_2(C2) = 2 meets the bound 2^1 r_1(C2, F_2) = 2."""
    report = presentation_bound_check(cyclic(2), Presentation.parse("<a | a^2>"), 2, 1)
    assert (report.lhs, report.rhs) == (2, 2)
    assert report.holds


def test_minimal_extension_census_of_c2():
    """Degrees 2 and 3 each carry two classes; no 2-dimensional module means none of degree 4."""
    census = min_extension_census(cyclic(2), [2, 3, 4])
    assert [(c.degree, c.kind, c.count) for c in census] == [
        (2, "abelian", 2),
        (3, "abelian", 2),
        (4, "abelian", 0),
    ]


def test_semidirect_eh_for_whole_group():
    """For H = G the construction is S x G with minimal normal kernel S, and t recovers [G]."""
    g = cyclic(2)
    (whole,) = [h for h in all_subgroups(g) if h.order == 2]
    e = semidirect_EH(g, whole, simple_group("A5"))
    assert e.total.order == 120
    assert e.degree == 60
    assert kernel_is_minimal_normal(e)
    assert t_map(e).key == subgroup_class(whole).key


def test_semidirect_eh_requires_simple_kernel():
    """Abelian groups are not admissible kernels."""
    g = cyclic(2)
    (trivial,) = [h for h in all_subgroups(g) if h.order == 1]
    with pytest.raises(InvalidInput):
        semidirect_EH(g, trivial, cyclic(5))


@pytest.mark.slow
def test_semidirect_eh_separates_subgroups_of_klein_four():
    """The three subgroups of order 2 in C2 x C2 give t-distinct extensions."""
    g = power_group(cyclic(2), 2)
    halves = [h for h in all_subgroups(g) if h.order == 2]
    keys = {t_map(semidirect_EH(g, h, simple_group("A5"))).key for h in halves}
    assert len(keys) == 3


@pytest.mark.parametrize("k,count", [(1, 2), (2, 1)])
def test_couplings_of_c2_with_a5(k, count):
    """Coupling classes C2 -> Out(A5)^k : Sym(k) with transitive image."""
    report = coupling_fiber_bound_check(cyclic(2), simple_group("A5"), k)
    assert report.count == count
    assert report.fibers_hold
    assert report.count_holds


def test_nonabelian_extension_count_matches_couplings():
    """The extension count is the coupling count."""
    a5 = simple_group("A5")
    assert nonabelian_extension_count(cyclic(2), a5, 1).count == 2


def test_generation_bound_on_minimal_extensions():
    """d(E) <= d(G) + 1 for the abelian minimal extensions of C2."""
    for e in abelian_minimal_extensions(cyclic(2), 2, 1):
        report = generation_bound_check(e)
        assert report.holds
        assert report.total_generators <= report.bound == 2


def test_semidirect_product_generators(s3, f2):
    """(V : S3) x C2 is generated by d(S3) + d(C2) = 3 elements via the explicit tuple."""
    v = next(r.module for r in simple_modules(s3, f2) if r.dim == 2)
    report = semidirect_product_generators_check(s3, v, cyclic(2))
    assert report.bound == 3
    assert report.tuple_generates
    assert report.holds


def test_semidirect_product_generators_rejects_trivial_module(s3, f2):
    """A trivial module is outside the hypotheses."""
    with pytest.raises(InvalidInput):
        semidirect_product_generators_check(s3, trivial_module(s3, f2), cyclic(2))
