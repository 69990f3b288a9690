"""Finite groups given by a vectorized multiplication on element indices.

Elements of a group of order ``N`` are the integers ``0 .. N-1``. Small groups
carry a materialized Cayley table; larger ones (products, permutation groups,
automorphism groups) multiply "virtually" through a numpy function so that the
same code path handles groups of order up to :data:`ORDER_LIMIT`.
"""

import functools
import itertools
import logging
from collections import Counter
from typing import Callable, Iterable, Sequence

import numpy as np
from pydantic import BaseModel, Field

from pgl.budget import check_budget, require
from pgl.errors import BudgetExceeded, InvalidInput
from pgl.ffalg import FqField

logger = logging.getLogger(__name__)

ORDER_LIMIT = 10**5
"""Largest admissible group order."""

TABLE_LIMIT = 2048
"""Groups up to this order get a materialized Cayley table."""

SUBGROUP_LIMIT = 2000
"""Largest order for full subgroup enumeration and exact generator counts."""

AUT_LIMIT = 400
"""Largest order for brute-force automorphism enumeration."""

NORMAL_LIMIT = 25000
"""Largest order for normal subgroup enumeration."""

MulFn = Callable[[np.ndarray, np.ndarray], np.ndarray]


class FiniteGroup:
    """A finite group on the element indices ``0 .. order-1``.

    :ivar order: Number of elements.
    :type order: int
    :ivar identity: Index of the identity element.
    :type identity: int
    :ivar gens: Generator indices.
    :type gens: tuple[int, ...]
    :ivar label: Human readable name.
    :type label: str
    """

    def __init__(
        self,
        order: int,
        mul: MulFn,
        identity: int,
        gens: Sequence[int] | None,
        label: str,
        *,
        verify: bool = True,
    ):
        require("group-order", ORDER_LIMIT, order)
        self.order = order
        self.identity = int(identity)
        self.label = label
        self._mulfn = mul
        self._table: np.ndarray | None = None
        if order <= TABLE_LIMIT:
            a = np.repeat(np.arange(order, dtype=np.int64), order)
            b = np.tile(np.arange(order, dtype=np.int64), order)
            self._table = mul(a, b).reshape(order, order)
        self._inv: np.ndarray | None = None
        self._orders: np.ndarray | None = None
        self._trees: dict[tuple[int, ...], tuple] = {}
        self._classes: list[np.ndarray] | None = None
        if gens is None:
            gens = greedy_generators(self, np.arange(order, dtype=np.int64))
        self.gens = tuple(int(g) for g in gens)
        if verify:
            self.verify()

    def __repr__(self) -> str:
        return f"FiniteGroup({self.label}, order={self.order})"

    def __len__(self) -> int:
        return self.order

    @property
    def elements(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)

    def mul(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self._table is not None:
            return self._table[a, b]
        a, b = np.broadcast_arrays(a, b)
        return self._mulfn(a.ravel(), b.ravel()).reshape(a.shape)

    @property
    def table(self) -> np.ndarray:
        """The Cayley table, materialized on demand."""
        if self._table is None:
            require("cayley-table", TABLE_LIMIT, self.order)
        assert self._table is not None
        return self._table

    def _power_scan(self) -> None:
        n = self.order
        x = self.elements
        cur = x.copy()
        prev = np.full(n, self.identity, dtype=np.int64)
        orders = np.zeros(n, dtype=np.int64)
        inv = np.zeros(n, dtype=np.int64)
        active = np.ones(n, dtype=bool)
        k = 1
        while active.any():
            if k > n:
                raise InvalidInput(f"{self.label}: multiplication does not define a group")
            done = active & (cur == self.identity)
            orders[done] = k
            inv[done] = prev[done]
            active &= ~done
            idx = np.flatnonzero(active)
            prev[idx] = cur[idx]
            cur[idx] = self.mul(cur[idx], idx)
            k += 1
        self._orders = orders
        self._inv = inv

    @property
    def inv(self) -> np.ndarray:
        if self._inv is None:
            self._power_scan()
        assert self._inv is not None
        return self._inv

    def element_orders(self) -> np.ndarray:
        if self._orders is None:
            self._power_scan()
        assert self._orders is not None
        return self._orders

    def conjugation(self, s: int) -> np.ndarray:
        """The permutation ``x -> s^-1 x s`` of the elements."""
        return self.mul(self.mul(self.inv[s], self.elements), s)

    def schreier_tree(self, gens: tuple[int, ...] | None = None) -> tuple:
        """Breadth-first spanning tree of the Cayley graph for right multiplication.

        :return: ``(parent, generator_position, layers)``; element ``x`` equals
            ``parent[x] * gens[generator_position[x]]``.
        """
        gens = self.gens if gens is None else tuple(gens)
        if gens in self._trees:
            return self._trees[gens]
        n = self.order
        parent = np.full(n, -1, dtype=np.int64)
        position = np.full(n, -1, dtype=np.int64)
        seen = np.zeros(n, dtype=bool)
        seen[self.identity] = True
        frontier = np.array([self.identity], dtype=np.int64)
        layers = [frontier]
        garr = np.array(gens, dtype=np.int64)
        while frontier.size and garr.size:
            cand = self.mul(frontier[:, None], garr[None, :]).ravel()
            src = np.repeat(frontier, garr.size)
            pos = np.tile(np.arange(garr.size), frontier.size)
            fresh = ~seen[cand]
            cand, src, pos = cand[fresh], src[fresh], pos[fresh]
            uniq, first = np.unique(cand, return_index=True)
            parent[uniq] = src[first]
            position[uniq] = pos[first]
            seen[uniq] = True
            if uniq.size:
                layers.append(uniq)
            frontier = uniq
        if not seen.all():
            raise InvalidInput(f"{self.label}: generators do not generate the group")
        tree = (parent, position, layers)
        self._trees[gens] = tree
        return tree

    def conjugacy_classes(self) -> list[np.ndarray]:
        if self._classes is None:
            self._classes = _conjugacy_classes(self)
        return self._classes

    def is_abelian(self) -> bool:
        x = self.elements
        return all(np.array_equal(self.mul(x, s), self.mul(s, x)) for s in self.gens)

    def verify(self) -> None:
        """Check identity, associativity and generation.

        Associativity is checked on all triples up to order 200 and on 10^5
        seeded random triples above.

        :raises InvalidInput: If any group axiom fails.
        """
        n = self.order
        x = self.elements
        if not (
            np.array_equal(self.mul(self.identity, x), x)
            and np.array_equal(self.mul(x, self.identity), x)
        ):
            raise InvalidInput(f"{self.label}: {self.identity} is not an identity")
        if n <= 200:
            for a in range(n):
                left = self.mul(self.mul(a, x)[:, None], x[None, :])
                right = self.mul(a, self.mul(x[:, None], x[None, :]))
                if not np.array_equal(left, right):
                    raise InvalidInput(f"{self.label}: multiplication is not associative")
        else:
            rng = np.random.default_rng(0)
            a, b, c = rng.integers(0, n, size=(3, 100_000))
            if not np.array_equal(
                self.mul(self.mul(a, b), c), self.mul(a, self.mul(b, c))
            ):
                raise InvalidInput(f"{self.label}: multiplication is not associative")
        if not np.array_equal(self.mul(x, self.inv), np.full(n, self.identity)):
            raise InvalidInput(f"{self.label}: inverses are inconsistent")
        self.schreier_tree()


class Subgroup:
    """A subgroup of a :class:`FiniteGroup`, stored as its sorted element indices.

    :ivar parent: The ambient group.
    :type parent: FiniteGroup
    :ivar elems: Sorted, read-only element indices.
    :type elems: numpy.ndarray
    """

    __slots__ = ("parent", "elems", "_mask", "_gens")

    def __init__(
        self, parent: FiniteGroup, elems, gens: Sequence[int] | None = None
    ):
        arr = np.unique(np.asarray(elems, dtype=np.int64))
        arr.setflags(write=False)
        self.parent = parent
        self.elems = arr
        self._mask: np.ndarray | None = None
        self._gens = None if gens is None else tuple(int(g) for g in gens)

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order} in {self.parent.label})"

    def __len__(self) -> int:
        return self.order

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Subgroup)
            and other.parent is self.parent
            and np.array_equal(other.elems, self.elems)
        )

    def __hash__(self) -> int:
        return hash(self.key)

    @property
    def key(self) -> bytes:
        return self.elems.tobytes()

    @property
    def order(self) -> int:
        return int(self.elems.size)

    @property
    def index(self) -> int:
        return self.parent.order // self.order

    @property
    def mask(self) -> np.ndarray:
        if self._mask is None:
            m = np.zeros(self.parent.order, dtype=bool)
            m[self.elems] = True
            self._mask = m
        return self._mask

    @property
    def gens(self) -> tuple[int, ...]:
        if self._gens is None:
            self._gens = tuple(greedy_generators(self.parent, self.elems))
        return self._gens

    def contains(self, x) -> np.ndarray:
        return self.mask[np.asarray(x, dtype=np.int64)]

    def issubset(self, other: "Subgroup") -> bool:
        return bool(other.mask[self.elems].all())

    def is_normal(self) -> bool:
        g = self.parent
        return all(self.mask[g.conjugation(s)[self.elems]].all() for s in g.gens)

    def conjugate(self, s: int) -> "Subgroup":
        return Subgroup(self.parent, self.parent.conjugation(s)[self.elems])

    def intersection(self, other: "Subgroup") -> "Subgroup":
        return Subgroup(self.parent, self.elems[other.mask[self.elems]])


class GroupHom:
    """A homomorphism given by its full image table.

    :ivar dom: Domain.
    :type dom: FiniteGroup
    :ivar cod: Codomain.
    :type cod: FiniteGroup
    :ivar images: ``images[x]`` is the image of ``x``.
    :type images: numpy.ndarray
    """

    __slots__ = ("dom", "cod", "images")

    def __init__(self, dom: FiniteGroup, cod: FiniteGroup, images, *, verify: bool = True):
        arr = np.asarray(images, dtype=np.int64).copy()
        if arr.shape != (dom.order,):
            raise InvalidInput("image table must have one entry per domain element")
        if arr.size and (arr.min() < 0 or arr.max() >= cod.order):
            raise InvalidInput("images outside the codomain")
        arr.setflags(write=False)
        self.dom = dom
        self.cod = cod
        self.images = arr
        if verify and not self.is_homomorphism():
            raise InvalidInput(f"map {dom.label} -> {cod.label} is not a homomorphism")

    def __call__(self, x):
        return self.images[np.asarray(x, dtype=np.int64)]

    def __repr__(self) -> str:
        return f"GroupHom({self.dom.label} -> {self.cod.label})"

    def is_homomorphism(self) -> bool:
        dom, cod, img = self.dom, self.cod, self.images
        x = dom.elements
        if dom.order <= 200:
            return bool(
                np.array_equal(
                    img[dom.mul(x[:, None], x[None, :])],
                    cod.mul(img[:, None], img[None, :]),
                )
            )
        # images[x s] = images[x] images[s] for generators s is equivalent
        return all(
            np.array_equal(img[dom.mul(x, s)], cod.mul(img, img[s])) for s in dom.gens
        )

    def kernel(self) -> Subgroup:
        return Subgroup(self.dom, np.flatnonzero(self.images == self.cod.identity))

    def image(self) -> Subgroup:
        return Subgroup(self.cod, self.images)

    def is_surjective(self) -> bool:
        return np.unique(self.images).size == self.cod.order

    def is_injective(self) -> bool:
        return np.unique(self.images).size == self.dom.order

    def compose(self, inner: "GroupHom") -> "GroupHom":
        """``self`` after ``inner``."""
        return GroupHom(inner.dom, self.cod, self.images[inner.images], verify=False)


# constructors


def _cyclic_mul(m: int) -> MulFn:
    return lambda a, b: (a + b) % m


def cyclic(m: int) -> FiniteGroup:
    """The cyclic group ``C_m`` on residues mod ``m``."""
    if m < 1:
        raise InvalidInput(f"cyclic group order must be positive, got {m}")
    return FiniteGroup(m, _cyclic_mul(m), 0, [1] if m > 1 else [], f"C{m}")


def trivial_group() -> FiniteGroup:
    return cyclic(1)


def dihedral(m: int) -> FiniteGroup:
    """The dihedral group of order ``2m``; ``r^i s^j`` has index ``i + m j``."""
    if m < 1:
        raise InvalidInput(f"dihedral parameter must be positive, got {m}")

    def mul(a, b):
        i1, j1 = a % m, a // m
        i2, j2 = b % m, b // m
        i = (i1 + np.where(j1 == 1, -i2, i2)) % m
        return i + m * ((j1 + j2) % 2)

    gens = [1, m] if m > 1 else [m]
    return FiniteGroup(2 * m, mul, 0, gens, f"D{m}")


def quaternion(n: int = 8) -> FiniteGroup:
    """The dicyclic group of order ``n = 4m``: ``a^(2m) = 1, x^2 = a^m, x a x^-1 = a^-1``.

    ``quaternion(8)`` is the quaternion group; ``a^i x^j`` has index ``i + 2m j``.
    """
    if n < 8 or n % 4:
        raise InvalidInput(f"dicyclic group order must be a multiple of 4 and >= 8, got {n}")
    m = n // 4
    half = 2 * m

    def mul(a, b):
        i1, j1 = a % half, a // half
        i2, j2 = b % half, b // half
        i = np.where(j1 == 1, i1 - i2, i1 + i2)
        both = (j1 == 1) & (j2 == 1)
        i = np.where(both, i + m, i) % half
        j = np.where(both, 0, (j1 + j2) % 2)
        return i + half * j

    return FiniteGroup(n, mul, 0, [1, half], f"Q{n}")


class _RowMul:
    """Multiplication of maps stored as rows, looked up by the images of key points."""

    def __init__(self, rows: np.ndarray, key_points: np.ndarray):
        self.rows = rows
        self.key_points = key_points
        base = rows.shape[1]
        if float(base) ** len(key_points) >= 2.0**62:
            raise BudgetExceeded("row-key", 62, int(np.log2(float(base)) * len(key_points)))
        self.weights = np.array(
            [base ** (len(key_points) - 1 - j) for j in range(len(key_points))],
            dtype=np.int64,
        )
        self.keys = rows[:, key_points] @ self.weights
        if np.any(np.diff(self.keys) <= 0):
            raise InvalidInput("rows must be sorted by key and pairwise distinct")

    def lookup(self, rows_at_keys: np.ndarray) -> np.ndarray:
        keys = rows_at_keys @ self.weights
        idx = np.searchsorted(self.keys, keys)
        if np.any(idx >= self.keys.size) or np.any(self.keys[np.minimum(idx, self.keys.size - 1)] != keys):
            raise InvalidInput("product of maps left the set")
        return idx

    def __call__(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        comp = self.rows[a[:, None], self.rows[b][:, self.key_points]]
        return self.lookup(comp)


def _rows_group(
    rows: np.ndarray, key_points: np.ndarray, gens_rows: Sequence[np.ndarray], label: str
) -> tuple[FiniteGroup, np.ndarray]:
    weights_base = rows.shape[1]
    keys = rows[:, key_points] @ np.array(
        [weights_base ** (len(key_points) - 1 - j) for j in range(len(key_points))],
        dtype=np.int64,
    )
    order = np.argsort(keys, kind="stable")
    rows = rows[order]
    mul = _RowMul(rows, key_points)
    identity_row = np.arange(rows.shape[1], dtype=np.int64)
    identity = int(mul.lookup(identity_row[key_points][None, :])[0])
    gens = [int(mul.lookup(np.asarray(g)[key_points][None, :])[0]) for g in gens_rows]
    return FiniteGroup(len(rows), mul, identity, gens or None, label), rows


def _perm_closure(gens: np.ndarray, degree: int) -> np.ndarray:
    weights = np.array([degree ** (degree - 1 - i) for i in range(degree)], dtype=np.int64)
    identity = np.arange(degree, dtype=np.int64)
    seen = {int(identity @ weights)}
    found = [identity[None, :]]
    frontier = identity[None, :]
    while frontier.size:
        check_budget()
        cand = np.concatenate([frontier[:, g] for g in gens]) if len(gens) else frontier[:0]
        keys = cand @ weights
        _, first = np.unique(keys, return_index=True)
        fresh = [i for i in first if int(keys[i]) not in seen]
        frontier = cand[fresh]
        seen.update(int(k) for k in keys[fresh])
        found.append(frontier)
        if len(seen) > ORDER_LIMIT:
            raise BudgetExceeded("group-order", ORDER_LIMIT, len(seen))
    return np.concatenate(found)


def from_permutations(perms: Sequence[Sequence[int]], label: str | None = None) -> FiniteGroup:
    """The permutation group generated by ``perms`` (0-based images).

    Elements are ordered lexicographically by their image lists, so the
    identity permutation has index 0. Products compose right to left:
    ``(a b)(i) = a(b(i))``.
    """
    gens = [np.asarray(p, dtype=np.int64) for p in perms]
    if not gens:
        return trivial_group()
    degree = gens[0].size
    for g in gens:
        if g.size != degree or sorted(g.tolist()) != list(range(degree)):
            raise InvalidInput(f"not a permutation of 0..{degree - 1}: {g.tolist()}")
    if degree > 12:
        raise BudgetExceeded("permutation-degree", 12, degree)
    rows = _perm_closure(np.stack(gens), degree)
    group, _ = _rows_group(
        rows, np.arange(degree), gens, label or f"Perm({degree};{len(rows)})"
    )
    return group


def _sign(perm: Sequence[int]) -> int:
    perm = list(perm)
    sign = 1
    for i in range(len(perm)):
        while perm[i] != i:
            j = perm[i]
            perm[i], perm[j] = perm[j], perm[i]
            sign = -sign
    return sign


def symmetric(n: int) -> FiniteGroup:
    if n < 1:
        raise InvalidInput(f"symmetric degree must be positive, got {n}")
    if n == 1:
        return FiniteGroup(1, _cyclic_mul(1), 0, [], "S1")
    gens = [[1, 0] + list(range(2, n)), list(range(1, n)) + [0]]
    return from_permutations(gens, f"S{n}")


def alternating(n: int) -> FiniteGroup:
    if n < 1:
        raise InvalidInput(f"alternating degree must be positive, got {n}")
    if n < 3:
        return FiniteGroup(1, _cyclic_mul(1), 0, [], f"A{n}")
    three_cycle = [1, 2, 0] + list(range(3, n))
    if n % 2:
        long_cycle = list(range(1, n)) + [0]
    else:
        long_cycle = [0] + list(range(2, n)) + [1]
    gens = [three_cycle] if n == 3 else [three_cycle, long_cycle]
    return from_permutations(gens, f"A{n}")


def psl27() -> FiniteGroup:
    """``PSL(2,7)`` realized as ``GL(3,2)`` permuting the 7 nonzero vectors of ``F_2^3``."""

    def perm(f: Callable[[int, int, int], tuple[int, int, int]]) -> list[int]:
        images = []
        for v in range(1, 8):
            b = f(v & 1, (v >> 1) & 1, (v >> 2) & 1)
            images.append(b[0] + 2 * b[1] + 4 * b[2] - 1)
        return images

    singer = perm(lambda b0, b1, b2: (b2, (b0 + b2) % 2, b1))
    transvection = perm(lambda b0, b1, b2: (b0, (b1 + b0) % 2, b2))
    return from_permutations([singer, transvection], "PSL(2,7)")


def from_table(table, gens: Sequence[int] | None = None, label: str = "G") -> FiniteGroup:
    """A group from an explicit Cayley table.

    :raises InvalidInput: If the table is not a Latin square or not a group.
    """
    t = np.asarray(table, dtype=np.int64)
    n = t.shape[0]
    if t.shape != (n, n) or n == 0:
        raise InvalidInput("Cayley table must be a nonempty square")
    expected = np.arange(n)
    if not (
        np.array_equal(np.sort(t, axis=1), np.tile(expected, (n, 1)))
        and np.array_equal(np.sort(t, axis=0), np.tile(expected[:, None], (1, n)))
    ):
        raise InvalidInput("Cayley table is not a Latin square")
    ids = [i for i in range(n) if np.array_equal(t[i], expected)]
    if not ids:
        raise InvalidInput("Cayley table has no identity")
    return FiniteGroup(n, lambda a, b: t[a, b], ids[0], gens, label)


def vector_group(field: FqField, dim: int) -> FiniteGroup:
    """The additive group of ``F_q^dim``; vectors are indexed by their base-q code."""
    q = field.q
    powers = np.array([q**i for i in range(dim)], dtype=np.int64)

    def mul(a, b):
        da = (a[:, None] // powers) % q
        db = (b[:, None] // powers) % q
        return (field.add(da, db) * powers).sum(axis=1)

    gens = [int(field.p**j) * int(q**i) for i in range(dim) for j in range(field.e)]
    # basis over the prime field: t^j e_i
    return FiniteGroup(q**dim, mul, 0, gens, f"{field.label}^{dim}")


def direct_product(g1: FiniteGroup, g2: FiniteGroup) -> FiniteGroup:
    """``G1 x G2`` with ``(a, b)`` at index ``a * |G2| + b``."""
    n2 = g2.order
    require("group-order", ORDER_LIMIT, g1.order * n2)

    def mul(a, b):
        return g1.mul(a // n2, b // n2) * n2 + g2.mul(a % n2, b % n2)

    gens = [g * n2 + g2.identity for g in g1.gens] + [g1.identity * n2 + h for h in g2.gens]
    return FiniteGroup(
        g1.order * n2, mul, g1.identity * n2 + g2.identity, gens, f"{g1.label}x{g2.label}"
    )


def product_projections(g1: FiniteGroup, g2: FiniteGroup, product: FiniteGroup) -> tuple[GroupHom, GroupHom]:
    x = product.elements
    return (
        GroupHom(product, g1, x // g2.order, verify=False),
        GroupHom(product, g2, x % g2.order, verify=False),
    )


def power_group(s: FiniteGroup, k: int) -> FiniteGroup:
    """``S^k``; coordinate ``i`` of an element ``x`` is ``(x // |S|^(k-1-i)) % |S|``."""
    if k < 1:
        raise InvalidInput("power must be positive")
    result = s
    for _ in range(k - 1):
        result = direct_product(s, result)
    if k > 1:
        result.label = f"{s.label}^{k}"
    return result


def power_coordinates(x, order: int, k: int) -> np.ndarray:
    x = np.asarray(x, dtype=np.int64)
    powers = np.array([order ** (k - 1 - i) for i in range(k)], dtype=np.int64)
    return (x[..., None] // powers) % order


def twisted_product(
    kernel: FiniteGroup,
    base: FiniteGroup,
    phi: np.ndarray,
    cocycle: np.ndarray | None = None,
    label: str | None = None,
) -> FiniteGroup:
    """The group on pairs ``(k, g)`` at index ``k * |G| + g`` with
    ``(k1, g1)(k2, g2) = (k1 phi_g1(k2) c(g1, g2), g1 g2)``.

    :param phi: ``phi[g]`` is the image table of the automorphism of ``kernel``
        attached to ``g``; must be a homomorphism into ``Aut(kernel)``.
    :param cocycle: Normalized 2-cocycle ``c[g1, g2]`` with values in ``kernel``,
        ``None`` for the semidirect product.
    :raises InvalidInput: If ``phi`` is not an action by automorphisms.
    """
    phi = np.asarray(phi, dtype=np.int64)
    ng = base.order
    require("group-order", ORDER_LIMIT, kernel.order * ng)
    check_action(kernel, base, phi)

    def mul(a, b):
        k1, g1 = a // ng, a % ng
        k2, g2 = b // ng, b % ng
        k = kernel.mul(k1, phi[g1, k2])
        if cocycle is not None:
            k = kernel.mul(k, cocycle[g1, g2])
        return k * ng + base.mul(g1, g2)

    if cocycle is not None and cocycle[base.identity, base.identity] != kernel.identity:
        raise InvalidInput("cocycle is not normalized")
    gens = [k * ng + base.identity for k in kernel.gens] + [
        kernel.identity * ng + g for g in base.gens
    ]
    return FiniteGroup(
        kernel.order * ng,
        mul,
        kernel.identity * ng + base.identity,
        gens,
        label or f"{kernel.label}:{base.label}",
    )


def check_action(kernel: FiniteGroup, base: FiniteGroup, phi: np.ndarray) -> None:
    """Verify ``g -> phi[g]`` is a homomorphism ``base -> Aut(kernel)``.

    :raises InvalidInput: Otherwise.
    """
    if phi.shape != (base.order, kernel.order):
        raise InvalidInput("action table has the wrong shape")
    if phi.min() < 0 or phi.max() >= kernel.order:
        raise InvalidInput("action table has entries outside the kernel")
    x = kernel.elements
    for g in range(base.order):
        if np.unique(phi[g]).size != kernel.order:
            raise InvalidInput("action is not by bijections")
    for s in kernel.gens:
        if not np.array_equal(phi[:, kernel.mul(x, s)], kernel.mul(phi, phi[:, [s]])):
            raise InvalidInput("action is not by automorphisms")
    g_all = base.elements
    for s in base.gens:
        if not np.array_equal(phi[base.mul(g_all, s)], np.take_along_axis(phi, np.broadcast_to(phi[s], phi.shape), axis=1)):
            raise InvalidInput("action is not a homomorphism into Aut(K)")


class AutomorphismGroup(FiniteGroup):
    """``Aut(G)`` with each element's full image table.

    :ivar base: The group acted on.
    :type base: FiniteGroup
    :ivar maps: ``maps[a]`` is the image table of automorphism ``a``.
    :type maps: numpy.ndarray
    :ivar inner: The inner automorphisms.
    :type inner: Subgroup
    :ivar out_order: ``|Aut(G)| / |Inn(G)|``.
    :type out_order: int
    """

    def __init__(self, base: FiniteGroup, maps: np.ndarray, key_points: np.ndarray):
        self.base = base
        mul = _RowMul(maps, key_points)
        identity = int(mul.lookup(key_points[None, :])[0])
        self.maps = maps
        self._rowmul = mul
        super().__init__(len(maps), mul, identity, None, f"Aut({base.label})")
        inner_rows = base.mul(
            base.mul(base.elements[:, None], key_points[None, :]), base.inv[:, None]
        )
        self.inner = Subgroup(self, mul.lookup(inner_rows))
        self.out_order = self.order // self.inner.order

    @property
    def key_points(self) -> np.ndarray:
        """Elements whose images determine an automorphism."""
        return self._rowmul.key_points

    def index_of(self, images_of_keys: np.ndarray) -> np.ndarray:
        return self._rowmul.lookup(np.atleast_2d(images_of_keys))



# subgroup machinery


def generated(g: FiniteGroup, elems: Iterable[int]) -> np.ndarray:
    """Sorted elements of the subgroup generated by ``elems``."""
    gens = np.unique(np.fromiter((int(e) for e in elems), dtype=np.int64))
    seen = np.zeros(g.order, dtype=bool)
    seen[g.identity] = True
    frontier = np.array([g.identity], dtype=np.int64)
    while frontier.size and gens.size:
        nxt = g.mul(frontier[:, None], gens[None, :]).ravel()
        nxt = np.unique(nxt[~seen[nxt]])
        seen[nxt] = True
        frontier = nxt
    return np.flatnonzero(seen)


def generates(g: FiniteGroup, elems: Iterable[int]) -> bool:
    return generated(g, elems).size == g.order


def subgroup(g: FiniteGroup, elems: Iterable[int]) -> Subgroup:
    gens = [int(e) for e in elems]
    return Subgroup(g, generated(g, gens), gens)


def greedy_generators(g: FiniteGroup, elems: np.ndarray) -> list[int]:
    """A small generating set of the subgroup with elements ``elems``.

    Elements are tried in order of decreasing element order.
    """
    target = np.asarray(elems).size
    orders = g.element_orders()[elems]
    candidates = np.asarray(elems)[np.lexsort((np.asarray(elems), -orders))]
    gens: list[int] = []
    current = np.zeros(g.order, dtype=bool)
    current[g.identity] = True
    for x in candidates:
        if int(current.sum()) == target:
            break
        if not current[x]:
            gens.append(int(x))
            current[:] = False
            current[generated(g, gens)] = True
    return gens


def _conjugacy_classes(g: FiniteGroup) -> list[np.ndarray]:
    perms = [g.conjugation(s) for s in g.gens]
    lab = g.elements.copy()
    while True:
        old = lab.copy()
        for p in perms:
            lab = np.minimum(lab, lab[p])
            back = lab.copy()
            back[p] = np.minimum(lab[p], lab)
            lab = back
        lab = lab[lab]
        if np.array_equal(old, lab):
            break
    reps, inverse = np.unique(lab, return_inverse=True)
    order = np.argsort(inverse, kind="stable")
    bounds = np.cumsum(np.bincount(inverse, minlength=reps.size))[:-1]
    return np.split(g.elements[order], bounds)


def conjugacy_classes(g: FiniteGroup) -> list[np.ndarray]:
    """Conjugacy classes, each sorted, listed by smallest element.

    :param g: The group.
    :type g: FiniteGroup
    :return: The partition of the elements into classes.
    :rtype: list[numpy.ndarray]
    """
    return g.conjugacy_classes()


def p_regular_class_count(g: FiniteGroup, p: int) -> int:
    """Number of conjugacy classes of elements of order coprime to ``p``."""
    orders = g.element_orders()
    return sum(1 for c in conjugacy_classes(g) if orders[c[0]] % p)


def element_orders(g: FiniteGroup) -> np.ndarray:
    return g.element_orders()


def order_profile(g: FiniteGroup) -> tuple[tuple[int, int], ...]:
    """Sorted ``(element order, count)`` pairs; an isomorphism invariant."""
    return tuple(sorted(Counter(g.element_orders().tolist()).items()))


def center(g: FiniteGroup) -> Subgroup:
    x = g.elements
    mask = np.ones(g.order, dtype=bool)
    for s in g.gens:
        mask &= g.mul(x, s) == g.mul(s, x)
    return Subgroup(g, np.flatnonzero(mask))


def normal_closure(g: FiniteGroup, elems: Iterable[int]) -> Subgroup:
    """The smallest normal subgroup containing ``elems``."""
    gens = [int(e) for e in elems]
    current = generated(g, gens)
    mask = np.zeros(g.order, dtype=bool)
    mask[current] = True
    changed = True
    while changed:
        changed = False
        for s in g.gens:
            conj = g.conjugation(s)
            for h in list(gens):
                c = int(conj[h])
                if not mask[c]:
                    gens.append(c)
                    mask[generated(g, gens)] = True
                    changed = True
    return Subgroup(g, np.flatnonzero(mask), gens)


def normal_subgroups_within(g: FiniteGroup, elems: np.ndarray | None = None) -> list[Subgroup]:
    """All normal subgroups of ``g`` contained in the normal subgroup ``elems``.

    Built as joins of normal closures of single elements, sorted by order
    then elements.
    """
    pool = g.elements if elems is None else np.asarray(elems, dtype=np.int64)
    require("normal-subgroup-enumeration", NORMAL_LIMIT, g.order)
    in_pool = np.zeros(g.order, dtype=bool)
    in_pool[pool] = True
    found: dict[bytes, Subgroup] = {}
    trivial = Subgroup(g, [g.identity], [])
    found[trivial.key] = trivial
    closures: list[Subgroup] = []
    for cls in conjugacy_classes(g):
        if not in_pool[cls[0]] or cls[0] == g.identity:
            continue
        n = normal_closure(g, [int(cls[0])])
        if n.key not in found:
            found[n.key] = n
            closures.append(n)
    layer = list(closures)
    while layer:
        check_budget()
        nxt = []
        for a in layer:
            for b in closures:
                if b.issubset(a):
                    continue
                j = Subgroup(g, generated(g, a.gens + b.gens), a.gens + b.gens)
                if j.key not in found:
                    found[j.key] = j
                    nxt.append(j)
        layer = nxt
    return sorted(found.values(), key=lambda s: (s.order, s.elems.tolist()))


def normal_subgroups(g: FiniteGroup) -> list[Subgroup]:
    return normal_subgroups_within(g)


def minimal_normal_subgroups(g: FiniteGroup) -> list[Subgroup]:
    """Minimal normal subgroups.

    Every minimal normal subgroup is the normal closure of any of its
    nontrivial elements, so only closures of class representatives are formed.

    :raises BudgetExceeded: If ``|G|`` exceeds :data:`NORMAL_LIMIT`.
    """
    require("normal-subgroup-enumeration", NORMAL_LIMIT, g.order)
    closures: dict[bytes, Subgroup] = {}
    for cls in conjugacy_classes(g):
        if cls[0] == g.identity:
            continue
        n = normal_closure(g, [int(cls[0])])
        closures.setdefault(n.key, n)
    candidates = sorted(closures.values(), key=lambda s: (s.order, s.elems.tolist()))
    return [
        n
        for n in candidates
        if not any(m.order < n.order and m.issubset(n) for m in candidates)
    ]


def is_simple(g: FiniteGroup) -> bool:
    if g.order == 1:
        return False
    return all(
        normal_closure(g, [int(c[0])]).order == g.order
        for c in conjugacy_classes(g)
        if c[0] != g.identity
    )


def all_subgroups(g: FiniteGroup) -> list[Subgroup]:
    """Every subgroup, by layered joins of cyclic subgroups.

    :raises BudgetExceeded: If ``|G|`` exceeds :data:`SUBGROUP_LIMIT`.
    """
    require("subgroup-enumeration", SUBGROUP_LIMIT, g.order)
    return list(_all_subgroups(g))


@functools.lru_cache(maxsize=64)
def _all_subgroups(g: FiniteGroup) -> tuple[Subgroup, ...]:
    found: dict[bytes, Subgroup] = {}
    cyclics: list[tuple[int, Subgroup]] = []
    for x in range(g.order):
        c = subgroup(g, [x])
        if c.key not in found:
            found[c.key] = c
            cyclics.append((x, c))
    layer = [c for _, c in cyclics]
    while layer:
        check_budget()
        nxt = []
        for h in layer:
            for x, c in cyclics:
                if h.mask[x]:
                    continue
                gens = list(h.gens) + [x]
                j = Subgroup(g, generated(g, gens), gens)
                if j.key not in found:
                    if g.order % j.order:
                        raise RuntimeError(f"subgroup of order {j.order} in group of order {g.order}")
                    found[j.key] = j
                    nxt.append(j)
        layer = nxt
    logger.debug("%s has %d subgroups", g.label, len(found))
    return tuple(sorted(found.values(), key=lambda s: (s.order, s.elems.tolist())))


def subgroup_conjugacy_classes(g: FiniteGroup, subs: Sequence[Subgroup]) -> list[list[Subgroup]]:
    """Partition ``subs`` (closed under conjugation) into conjugacy classes."""
    index = {s.key: i for i, s in enumerate(subs)}
    perms = [g.conjugation(s) for s in g.gens]
    assigned = [-1] * len(subs)
    classes: list[list[Subgroup]] = []
    for i, s in enumerate(subs):
        if assigned[i] >= 0:
            continue
        orbit = [i]
        assigned[i] = len(classes)
        stack = [s]
        while stack:
            h = stack.pop()
            for p in perms:
                c = Subgroup(g, p[h.elems])
                j = index.get(c.key)
                if j is None:
                    raise InvalidInput("subgroup list is not closed under conjugation")
                if assigned[j] < 0:
                    assigned[j] = len(classes)
                    orbit.append(j)
                    stack.append(subs[j])
        classes.append([subs[j] for j in sorted(orbit)])
    return classes


class IndexCount(BaseModel):
    """Subgroups of a given index.

    :ivar index: The index ``k``.
    :type index: int
    :ivar count: ``a_k(G)``, the number of subgroups of index ``k``.
    :type count: int
    :ivar classes: ``|Conj_k(G)|``, the number of their conjugacy classes.
    :type classes: int
    """

    index: int = Field(description="The index k.")
    count: int = Field(description="a_k(G), the number of subgroups of index k.")
    classes: int = Field(description="|Conj_k(G)|, the number of conjugacy classes.")


def subgroups_of_index(g: FiniteGroup, k: int) -> tuple[list[Subgroup], IndexCount, list[Subgroup]]:
    """Subgroups of index ``k``, their count and conjugacy class representatives.

    :return: ``(subgroups, counts, class_representatives)``.
    :raises BudgetExceeded: If ``|G|`` exceeds :data:`SUBGROUP_LIMIT`.
    """
    if k < 1 or g.order % k:
        return [], IndexCount(index=k, count=0, classes=0), []
    if k == 1:
        whole = Subgroup(g, g.elements, g.gens)
        return [whole], IndexCount(index=1, count=1, classes=1), [whole]
    subs = [s for s in all_subgroups(g) if s.index == k]
    classes = subgroup_conjugacy_classes(g, subs)
    reps = [c[0] for c in classes]
    return subs, IndexCount(index=k, count=len(subs), classes=len(classes)), reps


def min_generators(g: FiniteGroup) -> int:
    """``d(G)``, the minimal size of a generating set.

    The first generator is taken up to conjugacy; further layers range over
    the distinct subgroups generated so far.

    :raises BudgetExceeded: If ``|G|`` exceeds :data:`SUBGROUP_LIMIT`.
    """
    if g.order == 1:
        return 0
    if g.element_orders().max() == g.order:
        return 1
    require("generator-search", SUBGROUP_LIMIT, g.order)
    layer: dict[bytes, Subgroup] = {}
    for cls in conjugacy_classes(g):
        c = subgroup(g, [int(cls[0])])
        layer.setdefault(c.key, c)
    d = 1
    while True:
        d += 1
        check_budget()
        nxt: dict[bytes, Subgroup] = {}
        for h in layer.values():
            for x in range(g.order):
                if h.mask[x]:
                    continue
                gens = list(h.gens) + [x]
                j = Subgroup(g, generated(g, gens), gens)
                if j.order == g.order:
                    return d
                nxt.setdefault(j.key, j)
        layer = nxt


def generating_witness(g: FiniteGroup, size: int, *, attempts: int = 2000, seed: int = 0) -> list[int] | None:
    """A generating tuple of the given size found by seeded random search, if any."""
    if size <= 0:
        return [] if g.order == 1 else None
    rng = np.random.default_rng(seed)
    for _ in range(attempts):
        tup = rng.integers(0, g.order, size=size).tolist()
        if generates(g, tup):
            return tup
    return None


# homomorphisms, isomorphisms, automorphisms


def extend_to_hom(
    dom: FiniteGroup, cod: FiniteGroup, gens: Sequence[int], images: Sequence[int]
) -> np.ndarray | None:
    """Extend ``gens[i] -> images[i]`` to a homomorphism, or ``None`` if impossible."""
    gens = tuple(int(x) for x in gens)
    gi = np.asarray(images, dtype=np.int64)
    parent, position, layers = dom.schreier_tree(gens)
    img = np.full(dom.order, -1, dtype=np.int64)
    img[dom.identity] = cod.identity
    for layer in layers[1:]:
        img[layer] = cod.mul(img[parent[layer]], gi[position[layer]])
    x = dom.elements
    for s, t in zip(gens, gi):
        if not np.array_equal(img[dom.mul(x, s)], cod.mul(img, t)):
            return None
    return img


def _signature(g: FiniteGroup) -> np.ndarray:
    sizes = np.zeros(g.order, dtype=np.int64)
    for c in conjugacy_classes(g):
        sizes[c] = c.size
    return g.element_orders() * (g.order + 1) + sizes


def _isomorphisms(
    g1: FiniteGroup,
    g2: FiniteGroup,
    labels: tuple[np.ndarray, np.ndarray] | None = None,
) -> Iterable[np.ndarray]:
    if g1.order != g2.order:
        return
    sig1, sig2 = _signature(g1), _signature(g2)
    if labels is not None:
        sig1 = sig1 * (labels[0].max(initial=0) + labels[1].max(initial=0) + 1) + labels[0]
        sig2 = sig2 * (labels[0].max(initial=0) + labels[1].max(initial=0) + 1) + labels[1]
    if sorted(sig1.tolist()) != sorted(sig2.tolist()):
        return
    gens = greedy_generators(g1, g1.elements)
    if not gens:
        yield np.array([g2.identity], dtype=np.int64)
        return
    candidates = [np.flatnonzero(sig2 == sig1[x]) for x in gens]
    # pairwise products must keep their signatures
    pair_sig = {(i, j): sig1[int(g1.mul(gens[i], gens[j]))] for i in range(len(gens)) for j in range(i)}

    def search(prefix: list[int]):
        i = len(prefix)
        if i == len(gens):
            img = extend_to_hom(g1, g2, gens, prefix)
            if img is not None and np.unique(img).size == g1.order:
                yield img
            return
        for y in candidates[i]:
            check_budget()
            y = int(y)
            if all(sig2[int(g2.mul(y, prefix[j]))] == pair_sig[(i, j)] for j in range(i)):
                yield from search(prefix + [y])

    yield from search([])


def find_isomorphism(
    g1: FiniteGroup,
    g2: FiniteGroup,
    labels: tuple[np.ndarray, np.ndarray] | None = None,
) -> GroupHom | None:
    """An isomorphism ``g1 -> g2``, or ``None``.

    Generator images are searched by backtracking over elements with matching
    order and class size, pruned by the signatures of pairwise products.

    :param labels: Optional per-element labels of both groups that the
        isomorphism must preserve (used to commute with projections).
    """
    for img in _isomorphisms(g1, g2, labels):
        return GroupHom(g1, g2, img, verify=False)
    return None


def are_isomorphic(g1: FiniteGroup, g2: FiniteGroup) -> bool:
    if g1.order != g2.order or order_profile(g1) != order_profile(g2):
        return False
    return find_isomorphism(g1, g2) is not None


@functools.lru_cache(maxsize=32)
def automorphism_group(g: FiniteGroup) -> AutomorphismGroup:
    """``Aut(G)`` with the inner subgroup and ``|Out(G)|``.

    :raises BudgetExceeded: If ``|G|`` exceeds :data:`AUT_LIMIT`.
    """
    require("automorphism-search", AUT_LIMIT, g.order)
    maps = list(_isomorphisms(g, g))
    gens = np.array(greedy_generators(g, g.elements) or [g.identity], dtype=np.int64)
    rows = np.stack(maps)
    weights = np.array([g.order ** (len(gens) - 1 - j) for j in range(len(gens))], dtype=np.int64)
    rows = rows[np.argsort(rows[:, gens] @ weights, kind="stable")]
    aut = AutomorphismGroup(g, rows, gens)
    logger.debug("|Aut(%s)| = %d, |Out| = %d", g.label, aut.order, aut.out_order)
    return aut


def wreath_power(a: FiniteGroup, k: int) -> tuple[FiniteGroup, FiniteGroup]:
    """``A^k`` semidirect ``Sym(k)`` with ``Sym(k)`` permuting coordinates.

    Pairs ``(x, sigma)`` sit at index ``x * k! + sigma``; ``sigma`` sends
    coordinate ``i`` to coordinate ``sigma(i)``.

    :return: ``(W, Sym(k))``.
    """
    ak = power_group(a, k)
    sym = symmetric(k)
    rows = symmetric_rows(sym)
    coords = power_coordinates(ak.elements, a.order, k)
    powers = np.array([a.order ** (k - 1 - i) for i in range(k)], dtype=np.int64)
    phi = np.empty((sym.order, ak.order), dtype=np.int64)
    for sigma in range(sym.order):
        inv_perm = np.argsort(rows[sigma])
        phi[sigma] = (coords[:, inv_perm] * powers).sum(axis=1)
    return twisted_product(ak, sym, phi, label=f"{a.label}wr{k}"), sym


class PowerAutomorphisms(BaseModel):
    """``Aut(S)^k`` semidirect ``Sym(k)`` and its action on ``S^k``.

    :ivar group: The wreath-type group, pairs ``(a, sigma)`` at index
        ``a * k! + sigma``.
    :ivar aut: ``Aut(S)``.
    :ivar k: Number of factors.
    :ivar verified: True when the action on ``S^k`` was checked to be a
        faithful action by automorphisms.
    """

    model_config = {"arbitrary_types_allowed": True}

    group: FiniteGroup = Field(description="Aut(S)^k semidirect Sym(k).")
    aut: AutomorphismGroup = Field(description="Aut(S).")
    symmetric: FiniteGroup = Field(description="Sym(k) on 0..k-1.")
    k: int = Field(description="Number of factors.")
    verified: bool = Field(description="True when the action on S^k was checked faithful.")

    def act(self, w: np.ndarray, t: np.ndarray) -> np.ndarray:
        """Apply elements ``w`` of :attr:`group` to elements ``t`` of ``S^k``."""
        s_order = self.aut.base.order
        nsym = self.symmetric.order
        a, sigma = np.asarray(w) // nsym, np.asarray(w) % nsym
        acoords = power_coordinates(a, self.aut.order, self.k)
        tcoords = power_coordinates(t, s_order, self.k)
        perms = symmetric_rows(self.symmetric)
        inv_perm = np.argsort(perms[sigma], axis=-1)
        tcoords, inv_perm = np.broadcast_arrays(tcoords, inv_perm)
        moved = np.take_along_axis(tcoords, inv_perm, axis=-1)
        images = self.aut.maps[acoords, moved]
        powers = np.array([s_order ** (self.k - 1 - i) for i in range(self.k)], dtype=np.int64)
        return (images * powers).sum(axis=-1)


def symmetric_rows(sym: FiniteGroup) -> np.ndarray:
    """Permutation rows of a group built by :func:`symmetric`."""
    mul = sym._mulfn
    if isinstance(mul, _RowMul):
        return mul.rows
    return np.zeros((1, 1), dtype=np.int64)


def aut_of_power_structure(s: FiniteGroup, k: int) -> PowerAutomorphisms:
    """``Aut(S)^k`` semidirect ``Sym(k)`` with ``Sym(k)`` permuting coordinates.

    The action ``(a, sigma) . t`` has ``i``-th coordinate
    ``a_i(t_{sigma^-1(i)})``. When ``|S|^k <= 10^4`` the action is checked to
    be a homomorphism into ``Aut(S^k)`` with trivial kernel.

    :raises InvalidInput: If ``S`` is abelian or not simple.
    """
    if s.is_abelian() or not is_simple(s):
        raise InvalidInput(f"{s.label} is not a nonabelian simple group")
    aut = automorphism_group(s)
    w, sym = wreath_power(aut, k)
    result = PowerAutomorphisms(group=w, aut=aut, symmetric=sym, k=k, verified=False)
    if s.order**k <= NORMAL_LIMIT:
        _verify_power_action(result, s)
        result.verified = True
    return result


def _verify_power_action(result: PowerAutomorphisms, s: FiniteGroup) -> None:
    sk = power_group(s, result.k)
    w = result.group
    t = np.array(sk.gens, dtype=np.int64)
    x = sk.elements
    for gen in w.gens:
        img = result.act(np.full(sk.order, gen), x)
        if np.unique(img).size != sk.order:
            raise InvalidInput("power action is not bijective")
        for u in sk.gens:
            if not np.array_equal(img[sk.mul(x, u)], sk.mul(img, img[u])):
                raise InvalidInput("power action is not by automorphisms")
    all_w = w.elements
    on_gens = result.act(all_w[:, None], t[None, :])
    for gen in w.gens:
        composed = result.act(np.full((w.order, t.size), gen), t[None, :])
        composed = result.act(all_w[:, None], composed)
        if not np.array_equal(result.act(w.mul(all_w, gen)[:, None], t[None, :]), composed):
            raise InvalidInput("power action is not a homomorphism")
    fixed = np.flatnonzero((on_gens == t[None, :]).all(axis=1))
    if fixed.tolist() != [w.identity]:
        raise InvalidInput("power action is not faithful")


def quotient(g: FiniteGroup, n: Subgroup) -> tuple[FiniteGroup, GroupHom]:
    """``G/N`` and the projection.

    Cosets are numbered by their smallest element.

    :raises InvalidInput: If ``N`` is not normal.
    """
    if not n.is_normal():
        raise InvalidInput("quotient by a non-normal subgroup")
    x = g.elements
    mins = np.full(g.order, g.order, dtype=np.int64)
    for start in range(0, n.order, 256):
        block = n.elems[start : start + 256]
        mins = np.minimum(mins, g.mul(x[:, None], block[None, :]).min(axis=1))
    reps, label = np.unique(mins, return_inverse=True)
    label = label.astype(np.int64)

    def mul(a, b):
        return label[g.mul(reps[a], reps[b])]

    gens = sorted({int(label[s]) for s in g.gens})
    q = FiniteGroup(
        reps.size, mul, int(label[g.identity]), gens, f"{g.label}/{n.order}"
    )
    return q, GroupHom(g, q, label, verify=False)


def subgroup_as_group(h: Subgroup) -> tuple[FiniteGroup, GroupHom]:
    """``H`` as a group in its own right, with the inclusion into the parent."""
    parent = h.parent
    elems = h.elems

    def mul(a, b):
        return np.searchsorted(elems, parent.mul(elems[a], elems[b]))

    gens = [int(np.searchsorted(elems, x)) for x in h.gens]
    sub = FiniteGroup(
        h.order,
        mul,
        int(np.searchsorted(elems, parent.identity)),
        gens,
        f"{parent.label}>{h.order}",
        verify=False,
    )
    return sub, GroupHom(sub, parent, elems, verify=False)


# the hardcoded simple groups


class SimpleGroupInfo(BaseModel):
    """A nonabelian simple group known to the library.

    :ivar name: Lookup name.
    :type name: str
    :ivar order: ``|S|``.
    :type order: int
    :ivar out_order: ``|Out(S)|``.
    :type out_order: int
    :ivar out_structure: Isomorphism type of ``Out(S)``.
    :type out_structure: str
    """

    name: str = Field(description="Lookup name.")
    order: int = Field(description="|S|.")
    out_order: int = Field(description="|Out(S)|.")
    out_structure: str = Field(description="Isomorphism type of Out(S).")


SIMPLE_GROUPS: dict[str, SimpleGroupInfo] = {
    "A5": SimpleGroupInfo(name="A5", order=60, out_order=2, out_structure="C2"),
    "PSL(2,7)": SimpleGroupInfo(name="PSL(2,7)", order=168, out_order=2, out_structure="C2"),
    "A6": SimpleGroupInfo(name="A6", order=360, out_order=4, out_structure="C2xC2"),
}

_SIMPLE_FACTORIES: dict[str, Callable[[], FiniteGroup]] = {
    "A5": lambda: alternating(5),
    "PSL(2,7)": psl27,
    "A6": lambda: alternating(6),
}


@functools.cache
def simple_group(name: str) -> FiniteGroup:
    """Construct a group from :data:`SIMPLE_GROUPS`.

    :raises InvalidInput: For names outside the table.
    """
    if name not in _SIMPLE_FACTORIES:
        raise InvalidInput(f"unknown simple group {name!r}; known: {', '.join(SIMPLE_GROUPS)}")
    return _SIMPLE_FACTORIES[name]()


# serialization


class GroupData(BaseModel):
    """Wire format of a group.

    :ivar label: Human readable name.
    :ivar order: Number of elements.
    :ivar permutations: Generating permutations (0-based images), if the group
        is given as a permutation group.
    :ivar table: Row-major Cayley table, if given by its table.
    :ivar generators: Generator indices into the table.
    """

    label: str = Field(description="Human readable name.")
    order: int = Field(description="Number of elements.")
    permutations: list[list[int]] | None = Field(
        default=None, description="Generating permutations as 0-based image lists."
    )
    table: list[list[int]] | None = Field(default=None, description="Row-major Cayley table.")
    generators: list[int] | None = Field(
        default=None, description="Generator indices into the table."
    )


def group_to_json(g: FiniteGroup) -> GroupData:
    mul = g._mulfn
    if isinstance(mul, _RowMul) and not isinstance(g, AutomorphismGroup):
        perms = [mul.rows[s].tolist() for s in g.gens]
        return GroupData(label=g.label, order=g.order, permutations=perms)
    return GroupData(
        label=g.label, order=g.order, table=g.table.tolist(), generators=list(g.gens)
    )


def group_from_json(data: GroupData) -> FiniteGroup:
    """Rebuild a group and check its stated order.

    :raises InvalidInput: If the data is incomplete or inconsistent.
    """
    if data.permutations is not None:
        g = from_permutations(data.permutations, data.label)
    elif data.table is not None:
        g = from_table(data.table, data.generators, data.label)
    else:
        raise InvalidInput("group data needs permutations or a table")
    if g.order != data.order:
        raise InvalidInput(f"group {data.label} has order {g.order}, declared {data.order}")
    return g
