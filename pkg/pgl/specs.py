"""Group specifications on the command line.

A specification is a product of factors joined by ``x``, each factor optionally
raised to a power: ``S3xC2``, ``C2^3``, ``A5``, ``PSL(2,7)``. A path to a JSON
file holding :class:`~pgl.groups.GroupData` is accepted as well.
"""

import functools
import json
import re
from pathlib import Path

from pydantic import ValidationError

from pgl.errors import InvalidInput
from pgl.groups import (FiniteGroup, GroupData, GroupHom, alternating, cyclic,
                        dihedral, direct_product, group_from_json,
                        normal_subgroups, power_group, quaternion, quotient,
                        simple_group, symmetric, trivial_group)

_FACTOR = re.compile(r"^(?:(C|D|S|A|Q)(\d+)|(PSL\(2,7\))|(1|trivial))(?:\^(\d+))?$")

_FACTOR_BOUND = {"S": 6, "A": 6}


def _split_factors(spec: str) -> list[str]:
    return [part.strip() for part in spec.split("x")]


def _factor(text: str) -> FiniteGroup:
    match = _FACTOR.match(text)
    if not match:
        raise InvalidInput(f"cannot parse group factor {text!r}")
    kind, param, psl, trivial, power = match.groups()
    if psl:
        g = simple_group("PSL(2,7)")
    elif trivial:
        g = trivial_group()
    else:
        m = int(param)
        bound = _FACTOR_BOUND.get(kind)
        if bound is not None and m > bound:
            raise InvalidInput(f"{kind}{m} is beyond the supported degree {bound}")
        if kind == "C":
            g = cyclic(m)
        elif kind == "D":
            g = dihedral(m)
        elif kind == "Q":
            g = quaternion(m)
        elif kind == "S":
            g = symmetric(m)
        elif m == 5:
            g = simple_group("A5")
        elif m == 6:
            g = simple_group("A6")
        else:
            g = alternating(m)
    if power is not None:
        k = int(power)
        if k < 1:
            raise InvalidInput("powers must be positive")
        g = power_group(g, k) if k > 1 else g
    return g


@functools.cache
def parse_group(spec: str) -> FiniteGroup:
    """Build the group named by ``spec``.

    :param spec: A specification such as ``"S3xC2"`` or a path to a group JSON file.
    :type spec: str
    :rtype: FiniteGroup
    :raises InvalidInput: If the specification cannot be parsed.
    """
    spec = spec.strip()
    if not spec:
        raise InvalidInput("empty group specification")
    if spec.endswith(".json"):
        try:
            data = GroupData.model_validate(json.loads(Path(spec).read_text()))
        except (OSError, json.JSONDecodeError, ValidationError) as exc:
            raise InvalidInput(f"cannot read group file {spec}: {exc}") from exc
        return group_from_json(data)
    factors = [_factor(part) for part in _split_factors(spec)]
    g = factors[0]
    for h in factors[1:]:
        g = direct_product(g, h)
    if len(factors) > 1:
        g.label = spec
    return g


def parse_surjection(h: FiniteGroup, kernel_order: int | None) -> GroupHom:
    """The projection ``H -> H/N`` onto the quotient by a normal subgroup of the given order.

    Without ``kernel_order`` the whole group is the kernel. Among several normal
    subgroups of that order the first in element order is taken.

    :raises InvalidInput: If no normal subgroup has that order.
    """
    if kernel_order is None:
        kernel_order = h.order
    for n in normal_subgroups(h):
        if n.order == kernel_order:
            _, proj = quotient(h, n)
            return proj
    raise InvalidInput(f"{h.label} has no normal subgroup of order {kernel_order}")
