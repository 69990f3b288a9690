import json
from fractions import Fraction

from pgl.records import Provenance, ResultRecord, fraction_text, parse_fraction


def test_fraction_text():
    """Rationals and integers are written num/den."""
    assert fraction_text(Fraction(6, 16)) == "3/8"
    assert fraction_text(2) == "2/1"
    assert parse_fraction("3/8") == Fraction(3, 8)


def test_wall_time_is_not_part_of_the_output():
    """Two records differing only in wall time print identically."""
    base = dict(
        config={"command": "probgen"},
        quantity="p_exact",
        ref="probability",
        rows=[{"k": 1, "p_exact": "1/2", "holds": True}],
        provenance=Provenance(version="0.1.0", seed=None),
    )
    a = ResultRecord(**base, wall_ms=3)
    b = ResultRecord(**base, wall_ms=900)
    assert a.to_json() == b.to_json()
    assert "wall_ms" not in json.loads(a.to_json())


def test_csv_output():
    """Booleans are lowercase and nested values are compact JSON."""
    record = ResultRecord(
        config={},
        quantity="census",
        ref="census",
        rows=[{"n": 1, "holds": True, "pair": [1, 2]}, {"n": 2, "holds": False, "pair": [3]}],
        provenance=Provenance(version="0.1.0"),
    )
    assert record.to_csv() == 'n,holds,pair\n1,true,"[1,2]"\n2,false,[3]\n'


def test_csv_of_empty_table():
    """No rows give no output."""
    record = ResultRecord(
        config={}, quantity="r", ref="growth", rows=[], provenance=Provenance(version="0.1.0")
    )
    assert record.to_csv() == ""
