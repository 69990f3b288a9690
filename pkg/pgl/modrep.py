"""Modules over group algebras ``F_q[G]``.

A module is given by one action matrix per group generator; matrices act on
column vectors. Decomposition follows the Meataxe: find a proper submodule by
spinning null vectors of polynomials in algebra elements, certify
irreducibility with Norton's criterion, and recurse on sub and quotient.
"""

import functools
import logging
from collections.abc import Iterator, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from pgl.budget import check_budget, require
from pgl.errors import (BudgetExceeded, CheckFailed, HypothesisViolation,
                        InvalidInput)
from pgl.ffalg import (EchelonBasis, FqField, Matrix, factor_polynomial,
                       field_make, frobenius, intertwiner_basis, inverse_array,
                       irreducible_polynomials, nullspace_array, polynomial_at,
                       projective_points, rank_array, rowspace_array,
                       vector_minimal_polynomial)
from pgl.groups import (FiniteGroup, Subgroup, direct_product,
                        minimal_normal_subgroups, p_regular_class_count,
                        subgroup_as_group)

logger = logging.getLogger(__name__)

CHOP_LIMIT = 500
"""Largest module dimension accepted by :func:`chop`."""

REGULAR_LIMIT = 300
"""Largest group order whose regular module is decomposed."""

EXHAUSTIVE_LIMIT = 10**5
"""Largest ``q^dim`` for exhaustive line spinning."""

_WORDS = 12
_MAX_WORD_LENGTH = 6
_RANDOM_ATTEMPTS = 200
_LINE_LIMIT = 256


def _batched_matmul(field: FqField, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if field.e == 1:
        return np.matmul(a, b) % field.p
    return np.stack([field.matmul(x, y) for x, y in zip(a, b)])


class GModule:
    """A finite dimensional ``F_q[G]``-module.

    :ivar group: The acting group.
    :type group: FiniteGroup
    :ivar field: The coefficient field.
    :type field: FqField
    :ivar dim: The dimension.
    :type dim: int
    :ivar mats: Array of shape ``(len(group.gens), dim, dim)``; ``mats[i]`` is the
        action of ``group.gens[i]``.
    :type mats: numpy.ndarray
    """

    __slots__ = ("group", "field", "dim", "mats")

    def __init__(
        self,
        group: FiniteGroup,
        field: FqField,
        mats: Sequence[np.ndarray] | np.ndarray,
        *,
        dim: int | None = None,
        verify: bool = True,
    ):
        arr = np.asarray(mats, dtype=np.int64)
        if len(group.gens) == 0:
            if dim is None:
                raise InvalidInput("dimension is required for a group without generators")
            arr = np.zeros((0, dim, dim), dtype=np.int64)
        if arr.ndim != 3 or arr.shape[0] != len(group.gens) or arr.shape[1] != arr.shape[2]:
            raise InvalidInput(
                f"expected {len(group.gens)} square action matrices for {group.label}"
            )
        if arr.size and (arr.min() < 0 or arr.max() >= field.q):
            raise InvalidInput(f"action entries outside {field!r}")
        arr.setflags(write=False)
        self.group = group
        self.field = field
        self.dim = int(arr.shape[1])
        self.mats = arr
        if verify:
            self.verify()

    def __repr__(self) -> str:
        return f"GModule({self.group.label}, {self.field!r}, dim={self.dim})"

    @property
    def action(self) -> list[Matrix]:
        return [Matrix(self.field, m) for m in self.mats]

    def verify(self) -> None:
        """Check invertibility and that the matrices define a representation.

        ``rho(x s) = rho(x) rho(s)`` is tested for every element ``x`` and
        generator ``s``, which is equivalent to respecting all products.

        :raises InvalidInput: On failure.
        """
        for m in self.mats:
            if rank_array(self.field, m) != self.dim:
                raise InvalidInput("action matrix is not invertible")
        g = self.group
        table = self.element_matrices()
        for i, s in enumerate(g.gens):
            lhs = table[g.mul(g.elements, s)]
            rhs = _batched_matmul(self.field, table, np.broadcast_to(self.mats[i], table.shape))
            if not np.array_equal(lhs, rhs):
                raise InvalidInput(f"matrices do not define a representation of {g.label}")

    def element_layers(self) -> Iterator[tuple[np.ndarray, np.ndarray]]:
        """Yield ``(elements, matrices)`` layer by layer along the Schreier tree."""
        parent, position, layers = self.group.schreier_tree()
        prev_elems = layers[0]
        prev = np.eye(self.dim, dtype=np.int64)[None, :, :]
        yield prev_elems, prev
        for layer in layers[1:]:
            check_budget()
            pm = prev[np.searchsorted(prev_elems, parent[layer])]
            cur = _batched_matmul(self.field, pm, self.mats[position[layer]])
            yield layer, cur
            prev_elems, prev = layer, cur

    def element_matrix(self, x: int) -> np.ndarray:
        parent, position, _ = self.group.schreier_tree()
        path = []
        while x != self.group.identity:
            path.append(int(position[x]))
            x = int(parent[x])
        m = np.eye(self.dim, dtype=np.int64)
        for i in reversed(path):
            m = self.field.matmul(m, self.mats[i])
        return m

    def element_matrices(self) -> np.ndarray:
        """All element actions, shape ``(|G|, dim, dim)``."""
        require("element-matrices", 1 << 24, self.group.order * self.dim**2)
        out = np.empty((self.group.order, self.dim, self.dim), dtype=np.int64)
        for layer, mats in self.element_layers():
            out[layer] = mats
        return out

    def traces(self) -> tuple[int, ...]:
        out = np.zeros(self.group.order, dtype=np.int64)
        for layer, mats in self.element_layers():
            out[layer] = self.field.total(np.diagonal(mats, axis1=1, axis2=2), axis=1)
        return tuple(int(t) for t in out)

    def kernel(self) -> Subgroup:
        eye = np.eye(self.dim, dtype=np.int64)
        found = []
        for layer, mats in self.element_layers():
            found.extend(layer[(mats == eye).all(axis=(1, 2))].tolist())
        return Subgroup(self.group, found)

    def is_faithful(self) -> bool:
        return self.kernel().order == 1


# constructors


def regular_module(g: FiniteGroup, field: FqField) -> GModule:
    """``F_q[G]`` with ``g`` sending the basis vector of ``x`` to that of ``g x``."""
    require("regular-module", REGULAR_LIMIT, g.order)
    n = g.order
    x = g.elements
    mats = np.zeros((len(g.gens), n, n), dtype=np.int64)
    for i, s in enumerate(g.gens):
        mats[i, g.mul(s, x), x] = 1
    return GModule(g, field, mats, dim=n, verify=False)


def trivial_module(g: FiniteGroup, field: FqField, dim: int = 1) -> GModule:
    eye = np.eye(dim, dtype=np.int64)
    return GModule(g, field, np.stack([eye] * len(g.gens)) if g.gens else [], dim=dim, verify=False)


def permutation_module(g: FiniteGroup, h: Subgroup, field: FqField) -> GModule:
    """The permutation module on the left cosets ``G/H``."""
    x = g.elements
    label = g.mul(x[:, None], h.elems[None, :]).min(axis=1)
    reps, coset = np.unique(label, return_inverse=True)
    n = reps.size
    mats = np.zeros((len(g.gens), n, n), dtype=np.int64)
    for i, s in enumerate(g.gens):
        mats[i, coset[g.mul(s, reps)], np.arange(n)] = 1
    return GModule(g, field, mats, dim=n, verify=False)


def module_from_matrices(
    g: FiniteGroup, field: FqField, matrices: Sequence[Sequence[Sequence[int]]]
) -> GModule:
    """A verified module from explicit generator matrices."""
    return GModule(g, field, np.asarray(matrices, dtype=np.int64))


def restrict(m: GModule, h: Subgroup) -> GModule:
    """The restriction to ``H``, as a module for :func:`subgroup_as_group` of ``H``."""
    if h.parent is not m.group:
        raise InvalidInput("subgroup of a different group")
    sub, incl = subgroup_as_group(h)
    mats = [m.element_matrix(int(incl.images[s])) for s in sub.gens]
    return GModule(sub, m.field, mats, dim=m.dim, verify=False)


def base_change(m: GModule, target: FqField) -> GModule:
    """Extend scalars from the prime field to ``target``."""
    if m.field.e != 1 or m.field.p != target.p:
        raise InvalidInput(f"cannot extend scalars from {m.field!r} to {target!r}")
    return GModule(m.group, target, m.mats, dim=m.dim, verify=False)


def frobenius_twist(m: GModule, d: int = 1) -> GModule:
    """The module with every matrix entry raised to the power ``p^d``."""
    return GModule(m.group, m.field, frobenius(m.mats, m.field, d), dim=m.dim, verify=False)


def dual(m: GModule) -> GModule:
    mats = [inverse_array(m.field, a).T for a in m.mats]
    return GModule(m.group, m.field, mats, dim=m.dim, verify=False)


def tensor_product(m1: GModule, m2: GModule, product: FiniteGroup | None = None) -> GModule:
    """The outer tensor product, a module for ``G1 x G2``.

    :param product: ``direct_product(m1.group, m2.group)``, built if omitted.
    """
    if m1.field is not m2.field:
        raise InvalidInput("tensor factors must share the field")
    product = product or direct_product(m1.group, m2.group)
    eye1 = np.eye(m1.dim, dtype=np.int64)
    eye2 = np.eye(m2.dim, dtype=np.int64)
    mats = [np.kron(a, eye2) for a in m1.mats] + [np.kron(eye1, b) for b in m2.mats]
    return GModule(product, m1.field, mats, dim=m1.dim * m2.dim, verify=False)


# subspaces


def spin(m: GModule, vectors: np.ndarray, *, transposed: bool = False) -> EchelonBasis:
    """The submodule generated by the rows of ``vectors``.

    With ``transposed`` the transposed matrices act instead.
    """
    f = m.field
    acts = [a if transposed else a.T for a in m.mats]
    basis = EchelonBasis(f, m.dim)
    queue = []
    for v in np.atleast_2d(vectors):
        w = basis.add(v)
        if w is not None:
            queue.append(w)
    while queue and len(basis) < m.dim:
        check_budget()
        batch = np.array(queue)
        queue = []
        for a in acts:
            for row in f.matmul(batch, a):
                w = basis.add(row)
                if w is not None:
                    queue.append(w)
            if len(basis) == m.dim:
                break
    return basis


def submodule(m: GModule, rows: np.ndarray) -> GModule:
    """The action on an invariant subspace given by a reduced echelon basis."""
    f = m.field
    pivots = [int(np.flatnonzero(r)[0]) for r in rows]
    mats = []
    for a in m.mats:
        images = f.matmul(rows, a.T)
        mats.append(images[:, pivots].T)
    return GModule(m.group, f, mats, dim=len(rows), verify=False)


def quotient_module(m: GModule, rows: np.ndarray) -> GModule:
    """The action on ``V / W`` in the basis of non-pivot standard vectors."""
    f = m.field
    pivots = [int(np.flatnonzero(r)[0]) for r in rows]
    free = [c for c in range(m.dim) if c not in set(pivots)]
    mats = []
    for a in m.mats:
        cols = a[:, free].T
        reduced = f.sub(cols, f.matmul(cols[:, pivots], rows))
        mats.append(reduced[:, free].T)
    return GModule(m.group, f, mats, dim=len(free), verify=False)


def _words(m: GModule) -> list[np.ndarray]:
    f = m.field
    words = list(m.mats)
    frontier = list(m.mats)
    length = 1
    while len(words) < _WORDS and length < _MAX_WORD_LENGTH and frontier:
        frontier = [f.matmul(w, a) for w in frontier for a in m.mats]
        words.extend(frontier)
        length += 1
    return words[:_WORDS]


def _algebra_elements(m: GModule, seed: int) -> Iterator[np.ndarray]:
    f = m.field
    words = _words(m)
    eye = np.eye(m.dim, dtype=np.int64)
    if len(words) == 1:
        yield words[0]
        yield f.add(words[0], eye)
    for i in range(len(words)):
        yield f.add(words[i], words[(i + 1) % len(words)])
    rng = np.random.default_rng(seed)
    for _ in range(_RANDOM_ATTEMPTS):
        coeffs = rng.integers(0, f.q, size=len(words))
        acc = np.zeros_like(eye)
        for c, w in zip(coeffs, words):
            if c:
                acc = f.add(acc, f.mul(w, int(c)))
        yield acc


def _proper(basis: EchelonBasis, dim: int) -> bool:
    return 0 < len(basis) < dim


def _annihilator(m: GModule, basis: EchelonBasis) -> np.ndarray:
    return rowspace_array(m.field, nullspace_array(m.field, basis.matrix()))


def _singular_factor(f: FqField, b: np.ndarray) -> tuple[int, tuple[int, ...], np.ndarray] | None:
    """An irreducible ``g`` with ``g(B)`` singular, with the null space of ``g(B)``.

    Over a prime field ``g`` is the smallest factor of the minimal polynomial of
    a standard basis vector, so one always exists. Over extension fields the
    candidates are the irreducibles of degree at most 3.
    """
    if f.e == 1:
        n = b.shape[0]
        for i in range(n):
            v = np.zeros(n, dtype=np.int64)
            v[i] = 1
            for poly in factor_polynomial(f, vector_minimal_polynomial(f, b, v)):
                null = nullspace_array(f, polynomial_at(f, poly, b))
                if null.shape[0]:
                    return len(poly) - 1, poly, null
        return None
    for degree in (1, 2, 3):
        for poly in irreducible_polynomials(f, degree):
            null = nullspace_array(f, polynomial_at(f, poly, b))
            if null.shape[0]:
                return degree, poly, null
    return None


def find_submodule(m: GModule, seed: int = 0) -> np.ndarray | None:
    """A proper nonzero submodule (reduced echelon rows), or ``None`` if ``m`` is simple.

    Algebra elements are short generator words and their sums before seeded
    random combinations. For each element ``B`` an irreducible ``g`` with
    ``g(B)`` singular is used, see :func:`_singular_factor`.

    :raises BudgetExceeded: If no algebra element settles the question and the
        module is too large for exhaustive spinning.
    """
    n = m.dim
    f = m.field
    if n == 1:
        return None
    if not len(m.mats):
        return np.eye(n, dtype=np.int64)[:1]
    for b in _algebra_elements(m, seed):
        check_budget()
        found = _singular_factor(f, b)
        if found is None:
            continue
        degree, poly, null = found
        s = spin(m, null[:1])
        if _proper(s, n):
            return s.matrix()
        gbt = polynomial_at(f, poly, b.T)
        null_t = nullspace_array(f, gbt)
        st = spin(m, null_t[:1], transposed=True)
        if _proper(st, n):
            return _annihilator(m, st)
        if null.shape[0] == degree:
            return None
        lines = (f.q ** null.shape[0] - 1) // (f.q - 1)
        if lines <= _LINE_LIMIT:
            for v in projective_points(f, null):
                s = spin(m, v[None, :])
                if _proper(s, n):
                    return s.matrix()
            return None
    if f.q**n <= EXHAUSTIVE_LIMIT:
        return find_submodule_exhaustive(m)
    raise BudgetExceeded("meataxe-attempts", _RANDOM_ATTEMPTS, _RANDOM_ATTEMPTS + 1)


def find_submodule_exhaustive(m: GModule) -> np.ndarray | None:
    """Spin every line of the module; the oracle for :func:`find_submodule`."""
    require("exhaustive-spin", EXHAUSTIVE_LIMIT, m.field.q**m.dim)
    for v in projective_points(m.field, np.eye(m.dim, dtype=np.int64)):
        s = spin(m, v[None, :])
        if _proper(s, m.dim):
            return s.matrix()
    return None


def is_irreducible(m: GModule, seed: int = 0) -> bool:
    """True if ``m`` has no proper nonzero submodule.

    :param m: A module of dimension at least 1.
    :type m: GModule
    :param seed: Seed for the random algebra elements.
    :type seed: int
    :rtype: bool
    """
    if m.dim < 1:
        raise InvalidInput("the zero module is not irreducible")
    return find_submodule(m, seed) is None


def is_irreducible_exhaustive(m: GModule) -> bool:
    return find_submodule_exhaustive(m) is None


# simple modules


class SimpleRecord(BaseModel):
    """A simple module with its endomorphism field degree.

    :ivar module: The simple module.
    :type module: GModule
    :ivar endo_degree: ``e`` with ``End(V) = F_{q^e}``.
    :type endo_degree: int
    :ivar abs_irred: True when ``endo_degree == 1``.
    :type abs_irred: bool
    :ivar trace_fingerprint: Trace of every element action, in element order.
    :type trace_fingerprint: tuple[int, ...]
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    module: GModule = Field(description="The simple module.")
    endo_degree: int = Field(description="Degree of the endomorphism field.")
    abs_irred: bool = Field(description="True when the endomorphism field is the ground field.")
    trace_fingerprint: tuple[int, ...] = Field(description="Traces of all element actions.")

    @property
    def dim(self) -> int:
        return self.module.dim

    @property
    def sort_key(self) -> tuple:
        return (self.dim, self.trace_fingerprint)


def hom_dimension(m1: GModule, m2: GModule) -> int:
    """``dim Hom_G(m1, m2)``."""
    if not len(m1.mats):
        return m1.dim * m2.dim
    return intertwiner_basis(m1.field, list(m1.mats), list(m2.mats)).shape[0]


def make_record(m: GModule) -> SimpleRecord:
    e = hom_dimension(m, m)
    return SimpleRecord(module=m, endo_degree=e, abs_irred=e == 1, trace_fingerprint=m.traces())


def is_isomorphic_simple(a: SimpleRecord, b: SimpleRecord) -> bool:
    if a.dim != b.dim or a.trace_fingerprint != b.trace_fingerprint:
        return False
    return hom_dimension(a.module, b.module) > 0


def _split(m: GModule, out: list[GModule]) -> None:
    check_budget()
    rows = find_submodule(m)
    if rows is None:
        out.append(m)
        return
    _split(submodule(m, rows), out)
    _split(quotient_module(m, rows), out)


def chop(m: GModule) -> list[tuple[SimpleRecord, int]]:
    """Composition factors with multiplicities.

    :param m: The module, of dimension at most :data:`CHOP_LIMIT`.
    :type m: GModule
    :return: ``(factor, multiplicity)`` pairs sorted by dimension then trace
        fingerprint.
    :rtype: list[tuple[SimpleRecord, int]]
    """
    require("chop-dimension", CHOP_LIMIT, m.dim)
    pieces: list[GModule] = []
    _split(m, pieces)
    groups: list[list] = []
    for piece in pieces:
        rec = make_record(piece)
        for entry in groups:
            if is_isomorphic_simple(entry[0], rec):
                entry[1] += 1
                break
        else:
            groups.append([rec, 1])
    groups.sort(key=lambda entry: entry[0].sort_key)
    total = sum(rec.dim * mult for rec, mult in groups)
    if total != m.dim:
        raise CheckFailed(f"composition factors of {m!r} have total dimension {total}")
    logger.debug("chopped %r into %s", m, [(r.dim, k) for r, k in groups])
    return [(rec, mult) for rec, mult in groups]


@functools.lru_cache(maxsize=128)
def _simple_modules(g: FiniteGroup, field: FqField) -> tuple[SimpleRecord, ...]:
    if g.order == 1:
        return (make_record(trivial_module(g, field)),)
    return tuple(rec for rec, _ in chop(regular_module(g, field)))


def simple_modules(g: FiniteGroup, field: FqField) -> list[SimpleRecord]:
    """All simple ``F_q[G]``-modules up to isomorphism.

    Every simple module is a composition factor of the regular module.

    :raises BudgetExceeded: If ``|G|`` exceeds :data:`REGULAR_LIMIT`.
    """
    require("regular-module", REGULAR_LIMIT, g.order)
    return list(_simple_modules(g, field))


def find_isomorphic(records: Sequence[SimpleRecord], m: GModule) -> int:
    """Index of the record isomorphic to the simple module ``m``."""
    rec = make_record(m)
    for i, r in enumerate(records):
        if is_isomorphic_simple(r, rec):
            return i
    raise CheckFailed(f"{m!r} matches no known simple module")


class GrowthRow(BaseModel):
    """One dimension of a growth table.

    :ivar n: The dimension.
    :ivar r: Number of irreducible representations of dimension ``n``.
    :ivar r_star: Number of those that are absolutely irreducible.
    """

    n: int = Field(description="The dimension.")
    r: int = Field(description="Irreducible representations of dimension n.")
    r_star: int = Field(description="Absolutely irreducible ones among them.")


class GrowthTable(BaseModel):
    """``r_n`` and ``r*_n`` for one group and field.

    :ivar group: Group label.
    :ivar p: Characteristic.
    :ivar e: Field degree.
    :ivar rows: One row per dimension ``1..n_max``.
    """

    group: str = Field(description="Group label.")
    p: int = Field(description="Characteristic.")
    e: int = Field(description="Field degree.")
    rows: list[GrowthRow] = Field(description="One row per dimension 1..n_max.")

    def r(self, n: int) -> int:
        return self.rows[n - 1].r if 1 <= n <= len(self.rows) else 0

    def r_star(self, n: int) -> int:
        return self.rows[n - 1].r_star if 1 <= n <= len(self.rows) else 0

    def cumulative(self, n: int) -> int:
        """``R_n``, the number of irreducibles of dimension at most ``n``."""
        return sum(row.r for row in self.rows[:n])


def r_counts(g: FiniteGroup, field: FqField, n_max: int) -> GrowthTable:
    """Count simple modules by dimension.

    :param g: The group.
    :param field: The field ``F_q``.
    :param n_max: Largest dimension reported.
    :rtype: GrowthTable
    """
    if n_max < 1:
        raise InvalidInput("n_max must be positive")
    records = simple_modules(g, field)
    rows = [
        GrowthRow(
            n=n,
            r=sum(1 for rec in records if rec.dim == n),
            r_star=sum(1 for rec in records if rec.dim == n and rec.abs_irred),
        )
        for n in range(1, n_max + 1)
    ]
    return GrowthTable(group=g.label, p=field.p, e=field.e, rows=rows)


def uberg_witness(table: GrowthTable) -> int:
    """Smallest integer ``e`` with ``r_n <= p^(e n)`` and ``R_n <= p^(e n)`` on the table's range.

    This is a statement about the computed range only.
    """
    p = table.p
    e = 0
    for row in table.rows:
        bound = max(row.r, table.cumulative(row.n))
        while bound > p ** (e * row.n):
            e += 1
    return e


def brauer_check(g: FiniteGroup, p: int) -> tuple[int, int]:
    """Both sides of ``sum(endo_degree) = #p-regular classes`` over ``F_p``."""
    records = simple_modules(g, field_make(p))
    return sum(r.endo_degree for r in records), p_regular_class_count(g, p)


# Galois descent


class GaloisOrbit(BaseModel):
    """A Frobenius orbit of absolutely irreducible modules and its descent.

    :ivar members: Indices into the simple modules over ``F_{p^d}``.
    :ivar member_dim: Common dimension of the members.
    :ivar descent: Index into the simple modules over ``F_p``.
    :ivar descent_dim: Dimension of the descended module.
    :ivar split_exactly: The descended module's base change has exactly the
        members as composition factors, each once.
    """

    members: list[int] = Field(description="Indices into the simple modules over F_{p^d}.")
    member_dim: int = Field(description="Common dimension of the members.")
    descent: int = Field(description="Index into the simple modules over F_p.")
    descent_dim: int = Field(description="Dimension of the descended module.")
    split_exactly: bool = Field(description="Base change splits into exactly the members.")

    @property
    def dimension_law(self) -> bool:
        return self.descent_dim == len(self.members) * self.member_dim


class GaloisReport(BaseModel):
    """Orbits over ``F_{p^d}`` for one ``d``.

    :ivar d: Field degree.
    :ivar orbits: All Frobenius orbits of absolutely irreducible modules.
    :ivar bijective: The descent map is a bijection onto the ``F_p``-simples
        whose endomorphism degree divides ``d``.
    """

    d: int = Field(description="Field degree.")
    orbits: list[GaloisOrbit] = Field(description="Frobenius orbits of absolutely irreducible modules.")
    bijective: bool = Field(description="Descent is a bijection onto F_p-simples with endo degree dividing d.")


def frobenius_orbits(g: FiniteGroup, field: FqField) -> list[list[int]]:
    """Orbits of ``V -> V^(p)`` on the absolutely irreducible simple modules over ``field``."""
    records = simple_modules(g, field)
    image = {}
    for i, rec in enumerate(records):
        if rec.abs_irred:
            image[i] = find_isomorphic(records, frobenius_twist(rec.module))
    seen: set[int] = set()
    orbits = []
    for i in sorted(image):
        if i in seen:
            continue
        orbit = [i]
        j = image[i]
        while j != i:
            orbit.append(j)
            j = image[j]
        seen.update(orbit)
        orbits.append(sorted(orbit))
    return orbits


def galois_orbits(g: FiniteGroup, p: int, d_max: int) -> list[GaloisReport]:
    """Frobenius orbits over ``F_{p^d}``, ``d <= d_max``, with their descent to ``F_p``.

    Each ``F_p``-simple ``V`` with endomorphism degree ``e`` dividing ``d`` is
    base changed to ``F_{p^d}`` and chopped; its factors form one orbit.
    """
    prime = field_make(p)
    base_records = simple_modules(g, prime)
    reports = []
    for d in range(1, d_max + 1):
        ext = field_make(p, d)
        records = simple_modules(g, ext)
        orbits = frobenius_orbits(g, ext)
        orbit_of = {i: k for k, orbit in enumerate(orbits) for i in orbit}
        result = []
        hit: list[int] = []
        for vi, v in enumerate(base_records):
            if d % v.endo_degree:
                continue
            factors = chop(base_change(v.module, ext))
            idx = sorted(find_isomorphic(records, f.module) for f, _ in factors)
            split = all(mult == 1 for _, mult in factors)
            ks = {orbit_of.get(i, -1) for i in idx}
            if len(ks) != 1 or -1 in ks:
                raise CheckFailed(f"base change of an F_{p}-simple of {g.label} is not one orbit")
            k = ks.pop()
            split = split and idx == orbits[k]
            hit.append(k)
            result.append(
                GaloisOrbit(
                    members=orbits[k],
                    member_dim=records[orbits[k][0]].dim,
                    descent=vi,
                    descent_dim=v.dim,
                    split_exactly=split,
                )
            )
        bijective = sorted(hit) == list(range(len(orbits)))
        result.sort(key=lambda o: o.members)
        reports.append(GaloisReport(d=d, orbits=result, bijective=bijective))
    return reports


class DivisorSumRow(BaseModel):
    """Both sides of the divisor-sum relation at one dimension.

    :ivar n: Dimension.
    :ivar direct: ``r_n(G, F_p)`` counted directly.
    :ivar exact: Sum over ``d | n`` of orbits of absolutely irreducible
        ``n/d``-dimensional modules over ``F_{p^d}`` with trace field exactly ``F_{p^d}``.
    :ivar upper: ``sum_{d | n} r*_{n/d}(G, F_{p^d})``.
    """

    n: int = Field(description="Dimension.")
    direct: int = Field(description="r_n(G, F_p) counted directly.")
    exact: int = Field(description="Orbit count with exact trace fields.")
    upper: int = Field(description="sum over d | n of r*_{n/d}(G, F_{p^d}).")


def divisor_sum_check(g: FiniteGroup, p: int, n_max: int) -> list[DivisorSumRow]:
    """``r_n(G,F_p) <= sum_{d|n} r*_{n/d}(G,F_{p^d})``, with equality on exact trace fields.

    :raises CheckFailed: If the inequality or the equality fails.
    """
    direct = r_counts(g, field_make(p), n_max)
    rows = []
    for n in range(1, n_max + 1):
        exact = 0
        upper = 0
        for d in range(1, n + 1):
            if n % d:
                continue
            ext = field_make(p, d)
            records = simple_modules(g, ext)
            upper += sum(1 for r in records if r.abs_irred and r.dim == n // d)
            for orbit in frobenius_orbits(g, ext):
                if len(orbit) == d and records[orbit[0]].dim == n // d:
                    exact += 1
        row = DivisorSumRow(n=n, direct=direct.r(n), exact=exact, upper=upper)
        if not (row.direct == row.exact <= row.upper):
            raise CheckFailed(f"divisor-sum relation fails at n={n}: {row}")
        rows.append(row)
    return rows


class ConvolutionReport(BaseModel):
    """``r*_n(G1 x G2) = sum_{n1 n2 = n} r*_{n1}(G1) r*_{n2}(G2)``.

    :ivar left: Direct counts on the product.
    :ivar right: Convolution of the factor counts.
    :ivar holds: ``left == right``.
    """

    left: list[int] = Field(description="r*_n on the product, n = 1..n_max.")
    right: list[int] = Field(description="Convolution of the factor counts.")
    holds: bool = Field(description="Both sides agree.")


def product_convolution_check(
    g1: FiniteGroup, g2: FiniteGroup, field: FqField, n_max: int
) -> ConvolutionReport:
    product = direct_product(g1, g2)
    t = r_counts(product, field, n_max)
    t1 = r_counts(g1, field, n_max)
    t2 = r_counts(g2, field, n_max)
    left = [t.r_star(n) for n in range(1, n_max + 1)]
    right = [
        sum(t1.r_star(a) * t2.r_star(n // a) for a in range(1, n + 1) if n % a == 0)
        for n in range(1, n_max + 1)
    ]
    return ConvolutionReport(left=left, right=right, holds=left == right)


class AbsoluteCountRow(BaseModel):
    """``r*_n(G, F_{p^d}) <= d R_{nd}(G, F_p)`` at one ``n``.

    :ivar n: Dimension.
    :ivar absolute: ``r*_n(G, F_{p^d})``.
    :ivar bound: ``d R_{nd}(G, F_p)``.
    """

    n: int = Field(description="Dimension.")
    absolute: int = Field(description="r*_n(G, F_{p^d}).")
    bound: int = Field(description="d R_{nd}(G, F_p).")


def absolute_count_bound_check(g: FiniteGroup, p: int, d: int, n_max: int) -> list[AbsoluteCountRow]:
    """Absolutely irreducibles over ``F_{p^d}`` are counted by ``F_p``-irreducibles.

    :raises CheckFailed: If the bound fails for some ``n``.
    """
    over_ext = r_counts(g, field_make(p, d), n_max)
    over_prime = r_counts(g, field_make(p), n_max * d)
    rows = []
    for n in range(1, n_max + 1):
        row = AbsoluteCountRow(n=n, absolute=over_ext.r_star(n), bound=d * over_prime.cumulative(n * d))
        if row.absolute > row.bound:
            raise CheckFailed(f"absolute count exceeds bound: {row}")
        rows.append(row)
    return rows


# hypotheses on a faithful module


def faithful_irreducible_factor(l: FiniteGroup, v: GModule) -> SimpleRecord:
    """A faithful composition factor of the faithful module ``v``.

    :raises HypothesisViolation: If ``L`` does not have a unique minimal normal
        subgroup, if that subgroup is a ``p``-group, or if ``v`` is not faithful.
    :raises CheckFailed: If no factor is faithful.
    """
    if v.group is not l:
        raise InvalidInput("module is for a different group")
    p = v.field.p
    minimal = minimal_normal_subgroups(l)
    if len(minimal) != 1:
        raise HypothesisViolation(
            "minimal-normal-not-unique", f"{l.label} has {len(minimal)} minimal normal subgroups"
        )
    order = minimal[0].order
    while order % p == 0:
        order //= p
    if order == 1:
        raise HypothesisViolation("minimal-normal-is-p-group", f"the minimal normal subgroup is a {p}-group")
    if not v.is_faithful():
        raise HypothesisViolation("module-not-faithful", f"{v!r} has a nontrivial kernel")
    for rec, _ in chop(v):
        if rec.module.is_faithful():
            return rec
    raise CheckFailed(f"no faithful composition factor in {v!r}")


class RestrictionReport(BaseModel):
    """Composition factors of ``F_p[G]`` restricted to ``H`` against ``[G:H] F_p[H]``.

    :ivar rank: ``[G:H]``.
    :ivar restricted: Multiplicity of each simple ``F_p[H]``-module in the restriction.
    :ivar expected: ``[G:H]`` times its multiplicity in ``F_p[H]``.
    :ivar holds: The two multiplicity lists agree.
    """

    rank: int = Field(description="[G:H].")
    restricted: list[int] = Field(description="Multiplicities in the restricted module.")
    expected: list[int] = Field(description="[G:H] times the multiplicities in F_p[H].")
    holds: bool = Field(description="The multiplicities agree.")


def restriction_rank_check(g: FiniteGroup, h: Subgroup, p: int) -> RestrictionReport:
    field = field_make(p)
    restricted = restrict(regular_module(g, field), h)
    sub = restricted.group
    regular_h = chop(regular_module(sub, field))
    records = [rec for rec, _ in regular_h]
    restricted_mult = [0] * len(records)
    for rec, mult in chop(restricted):
        restricted_mult[find_isomorphic(records, rec.module)] += mult
    rank = h.index
    expected = [rank * mult for _, mult in regular_h]
    return RestrictionReport(
        rank=rank, restricted=restricted_mult, expected=expected, holds=restricted_mult == expected
    )
