import numpy as np
import pytest

from pgl.errors import BudgetExceeded, InvalidInput
from pgl.groups import (ORDER_LIMIT, GroupData, all_subgroups, are_isomorphic,
                        automorphism_group, conjugacy_classes, cyclic,
                        dihedral, direct_product, find_isomorphism,
                        from_table, group_from_json, group_to_json, is_simple,
                        min_generators, minimal_normal_subgroups,
                        normal_closure, normal_subgroups, order_profile,
                        p_regular_class_count, power_group, quaternion,
                        quotient, simple_group, subgroup, subgroup_as_group,
                        symmetric, twisted_product)


@pytest.mark.parametrize(
    "group,order,classes",
    [
        (cyclic(6), 6, 6),
        (symmetric(3), 6, 3),
        (dihedral(4), 8, 5),
        (quaternion(8), 8, 5),
        (symmetric(4), 24, 5),
        (simple_group("A5"), 60, 5),
        (simple_group("PSL(2,7)"), 168, 6),
    ],
)
def test_orders_and_class_counts(group, order, classes):
    """Constructors give the expected order and number of conjugacy classes."""
    assert group.order == order
    assert len(conjugacy_classes(group)) == classes


def test_normal_subgroup_counts():
    """S3 has 3 normal subgroups, D4 and Q8 have 6, A5 has 2."""
    assert len(normal_subgroups(symmetric(3))) == 3
    assert len(normal_subgroups(dihedral(4))) == 6
    assert len(normal_subgroups(quaternion(8))) == 6
    assert len(normal_subgroups(simple_group("A5"))) == 2


def test_minimal_normal_subgroups_of_s4():
    """The Klein four group is the unique minimal normal subgroup of S4."""
    minimal = minimal_normal_subgroups(symmetric(4))
    assert [m.order for m in minimal] == [4]


def test_simplicity():
    """A5 and PSL(2,7) are simple; A4 and C1 are not."""
    assert is_simple(simple_group("A5"))
    assert is_simple(simple_group("PSL(2,7)"))
    assert not is_simple(power_group(cyclic(2), 2))
    assert not is_simple(cyclic(1))


@pytest.mark.parametrize(
    "group,d",
    [
        (cyclic(1), 0),
        (cyclic(6), 1),
        (power_group(cyclic(2), 2), 2),
        (power_group(cyclic(2), 3), 3),
        (symmetric(3), 2),
        (simple_group("A5"), 2),
    ],
)
def test_min_generators(group, d):
    """d(G) for small groups."""
    assert min_generators(group) == d


def test_p_regular_classes_of_s3():
    """The 2-regular classes of S3 are the identity and the 3-cycles."""
    s3 = symmetric(3)
    assert p_regular_class_count(s3, 2) == 2
    assert p_regular_class_count(s3, 3) == 2
    assert p_regular_class_count(s3, 5) == 3


def test_quotient_of_s4_by_klein_four_is_s3():
    """S4/V4 is isomorphic to S3 and the projection is a surjective homomorphism."""
    s4 = symmetric(4)
    (v4,) = [n for n in normal_subgroups(s4) if n.order == 4]
    q, proj = quotient(s4, v4)
    assert q.order == 6
    assert are_isomorphic(q, symmetric(3))
    assert proj.is_homomorphism()
    assert proj.is_surjective()
    assert proj.kernel() == v4


def test_quotient_rejects_non_normal_subgroup():
    """Quotients need a normal subgroup."""
    s3 = symmetric(3)
    h = subgroup(s3, [s3.gens[0]])
    with pytest.raises(InvalidInput):
        quotient(s3, h)


def test_isomorphism_search():
    """C2 x C3 is isomorphic to C6; D4 and Q8 are not isomorphic."""
    c6 = direct_product(cyclic(2), cyclic(3))
    iso = find_isomorphism(c6, cyclic(6))
    assert iso is not None
    assert iso.is_homomorphism() and iso.is_injective()
    assert order_profile(dihedral(4)) != order_profile(quaternion(8))
    assert not are_isomorphic(dihedral(4), quaternion(8))


def test_automorphism_groups():
    """Aut(S3) = S3 with trivial Out; |Aut(A5)| = 120 with |Out| = 2."""
    aut = automorphism_group(symmetric(3))
    assert aut.order == 6
    assert aut.out_order == 1
    aut5 = automorphism_group(simple_group("A5"))
    assert aut5.order == 120
    assert aut5.out_order == 2


def test_subgroup_census_and_embedding():
    """S3 has 6 subgroups; each embeds as a group of its own."""
    s3 = symmetric(3)
    subs = all_subgroups(s3)
    assert sorted(h.order for h in subs) == [1, 2, 2, 2, 3, 6]
    for h in subs:
        sub, incl = subgroup_as_group(h)
        assert sub.order == h.order
        assert np.array_equal(np.sort(incl.images), h.elems)


def test_normal_closure_of_transposition():
    """A transposition normally generates S3."""
    s3 = symmetric(3)
    assert normal_closure(s3, [s3.gens[0]]).order == 6


def test_group_json_preserves_the_group():
    """A permutation group and a table group survive the wire format."""
    for g in (symmetric(3), dihedral(4)):
        data = GroupData.model_validate_json(group_to_json(g).model_dump_json())
        back = group_from_json(data)
        assert back.order == g.order
        assert are_isomorphic(back, g)


def test_group_from_json_checks_declared_order():
    """A wrong declared order is invalid input."""
    data = GroupData(label="C3", order=4, table=[[0, 1, 2], [1, 2, 0], [2, 0, 1]])
    with pytest.raises(InvalidInput):
        group_from_json(data)


def test_from_table_rejects_non_latin_square():
    """Tables with repeated entries in a row are rejected."""
    with pytest.raises(InvalidInput):
        from_table([[0, 1], [0, 1]])


def test_order_limit_is_enforced():
    """A5^3 is refused before any table is built."""
    with pytest.raises(BudgetExceeded) as exc:
        power_group(simple_group("A5"), 3)
    assert exc.value.limit == ORDER_LIMIT


def test_twisted_product_by_inversion_is_s3():
    """C3 twisted by inversion under C2 is S3."""
    phi = np.array([[0, 1, 2], [0, 2, 1]])
    assert are_isomorphic(twisted_product(cyclic(3), cyclic(2), phi), symmetric(3))


@pytest.mark.parametrize(
    "base,phi,message",
    [
        # a rotation of C3 moves the identity
        (cyclic(2), [[0, 1, 2], [1, 2, 0]], "automorphisms"),
        # inversion for both nontrivial elements of C3, but phi(2) must be phi(1)^2
        (cyclic(3), [[0, 1, 2], [0, 2, 1], [0, 2, 1]], "homomorphism"),
        (cyclic(2), [[0, 1, 2], [0, 1, 1]], "bijections"),
        (cyclic(2), [[0, 1, 2]], "shape"),
    ],
)
def test_twisted_product_rejects_bad_actions(base, phi, message):
    """An action table that is not a homomorphism into Aut(K) is invalid input."""
    with pytest.raises(InvalidInput, match=message):
        twisted_product(cyclic(3), base, np.array(phi))
