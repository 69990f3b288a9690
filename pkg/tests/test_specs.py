import pytest

from pgl.errors import InvalidInput
from pgl.groups import are_isomorphic, cyclic, group_to_json, symmetric
from pgl.specs import parse_group, parse_surjection


@pytest.mark.parametrize(
    "spec,order",
    [
        ("C6", 6),
        ("S3xC2", 12),
        ("C2^3", 8),
        ("D4", 8),
        ("Q8", 8),
        ("A4", 12),
        ("A5", 60),
        ("PSL(2,7)", 168),
        ("1", 1),
        ("S3 x C2", 12),
    ],
)
def test_parse_group_orders(spec, order):
    """Products, powers and named simple groups."""
    assert parse_group(spec).order == order


def test_product_label_is_the_input_text():
    """A product keeps the text it was parsed from as its label."""
    assert parse_group("S3xC2").label == "S3xC2"


@pytest.mark.parametrize("spec", ["", "S7", "A7", "Z5", "C2^0", "C2xx"])
def test_parse_group_rejects(spec):
    """Unknown factors, unsupported degrees and empty powers are invalid."""
    with pytest.raises(InvalidInput):
        parse_group(spec)


def test_parse_group_from_json_file(tmp_path):
    """A GroupData file is read back as the same group."""
    # Setup
    path = tmp_path / "s3.json"
    path.write_text(group_to_json(symmetric(3)).model_dump_json())

    # Execute
    g = parse_group(str(path))

    # Verify
    assert are_isomorphic(g, symmetric(3))


def test_parse_group_rejects_unreadable_file(tmp_path):
    """Missing or malformed files are invalid input."""
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(InvalidInput):
        parse_group(str(bad))
    with pytest.raises(InvalidInput):
        parse_group(str(tmp_path / "missing.json"))


def test_parse_surjection_defaults_to_whole_group():
    """Without a kernel order the target is trivial."""
    f = parse_surjection(cyclic(4), None)
    assert f.cod.order == 1
    assert f.kernel().order == 4
    g = parse_surjection(cyclic(4), 2)
    assert g.cod.order == 2
    assert g.is_surjective()
