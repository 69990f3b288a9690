"""Minimal extensions of finite groups.

An extension ``1 -> K -> E -> G -> 1`` is minimal when ``K`` is a minimal
normal subgroup of ``E``. Abelian kernels are irreducible ``F_p[G]``-modules
and their extensions are classified by second cohomology. Nonabelian kernels
``S^k`` are reached through couplings ``G -> Out(S)^k : Sym(k)``; the
semidirect products ``S^(G/H) : G`` give one extension per conjugacy class of
index ``k`` subgroups ``H``.
"""

import functools
import itertools
import logging
import math
import re
from collections import Counter
from collections.abc import Sequence
from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from sympy import factorint
from sympy.combinatorics.fp_groups import FpGroup
from sympy.combinatorics.free_groups import free_group

from pgl.budget import check_budget, require
from pgl.errors import (BudgetExceeded, CheckFailed, IncompatibleCocycle,
                        InvalidInput)
from pgl.ffalg import (EchelonBasis, all_vectors, field_make,
                       intertwiner_basis, nullspace_array, rowspace_array,
                       vector_codes)
from pgl.groups import (NORMAL_LIMIT, ORDER_LIMIT, SIMPLE_GROUPS,
                        SUBGROUP_LIMIT, AutomorphismGroup, FiniteGroup,
                        GroupHom, Subgroup, automorphism_group, center,
                        direct_product, extend_to_hom, find_isomorphism,
                        generates, generating_witness, is_simple,
                        min_generators,
                        minimal_normal_subgroups, power_coordinates,
                        power_group, quotient, simple_group, subgroup_as_group,
                        subgroups_of_index, symmetric, symmetric_rows,
                        twisted_product,
                        vector_group, wreath_power)
from pgl.modrep import GModule, is_irreducible, simple_modules

logger = logging.getLogger(__name__)

COHOMOLOGY_ORDER_LIMIT = 60
"""Largest group order accepted by :func:`h2`."""

COHOMOLOGY_DIM_LIMIT = 8
"""Largest module dimension accepted by :func:`h2`."""

ISOMORPHISM_LIMIT = 500
"""Largest total order for exhaustive extension isomorphism search."""

FIBER_PRODUCT_LIMIT = 10**4
"""Largest ``|Aut(S)| |G| / |Out(S)|`` for :func:`extension_from_coupling`."""

COUPLING_LIMIT = 10**5
"""Largest number of candidate generator images tried for couplings or sections."""

CLASS_LIMIT = 4096
"""Largest ``|H^2(G, V)|`` whose classes are enumerated."""

_ROW_BLOCK = 4096


class ExtensionRecord(BaseModel):
    """An extension ``1 -> K -> E -> G -> 1``.

    :ivar kernel: ``K`` as a subgroup of the total group.
    :ivar total: ``E``.
    :ivar proj: The projection ``E -> G``.
    :ivar degree: ``|K|``.
    :ivar minimal: True when ``K`` is a minimal normal subgroup of ``E``.
    :ivar abelian: True when ``K`` is abelian.
    :ivar split: Whether the projection has a homomorphic section, ``None``
        when not determined.
    :ivar kernel_shape: ``F_q^n`` or ``S^k`` description of the kernel.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    kernel: Subgroup = Field(description="The kernel as a subgroup of the total group.")
    total: FiniteGroup = Field(description="The total group.")
    proj: GroupHom = Field(description="Projection onto the base group.")
    degree: int = Field(description="Order of the kernel.")
    minimal: bool = Field(description="Kernel is a minimal normal subgroup.")
    abelian: bool = Field(description="Kernel is abelian.")
    split: bool | None = Field(description="Projection has a homomorphic section; None if unknown.")
    kernel_shape: str = Field(description="Description of the kernel.")

    @property
    def base(self) -> FiniteGroup:
        return self.proj.cod


def extension_record(
    kernel: Subgroup,
    proj: GroupHom,
    *,
    minimal: bool,
    abelian: bool,
    split: bool | None,
    kernel_shape: str,
) -> ExtensionRecord:
    if not proj.is_surjective():
        raise CheckFailed(f"projection {proj!r} is not surjective")
    if proj.kernel() != kernel:
        raise CheckFailed(f"kernel of {proj!r} is not the declared kernel")
    return ExtensionRecord(
        kernel=kernel,
        total=proj.dom,
        proj=proj,
        degree=kernel.order,
        minimal=minimal,
        abelian=abelian,
        split=split,
        kernel_shape=kernel_shape,
    )


# second cohomology


class _EdgeFrame:
    """A Schreier tree of ``G`` and the Cayley graph edges it leaves free.

    A normalized 2-cocycle is determined by its values ``c(a, s)`` on
    generators ``s``. Up to coboundaries those values vanish on tree edges,
    and ``c(a, x)`` is then the sum of edge values along the tree path of
    ``x`` started at ``a``.
    """

    def __init__(self, g: FiniteGroup):
        self.group = g
        self.gens = np.array(
            list(dict.fromkeys(int(s) for s in g.gens if s != g.identity)), dtype=np.int64
        )
        self.parent, self.position, self.layers = g.schreier_tree(tuple(self.gens.tolist()))
        n, m = g.order, self.gens.size
        tree = np.zeros((n, m), dtype=bool)
        children = np.flatnonzero(self.parent >= 0)
        tree[self.parent[children], self.position[children]] = True
        self.tree_edges = np.argwhere(tree)
        self.free = np.argwhere(~tree)
        self.edge_id = np.full((n, m), -1, dtype=np.int64)
        self.edge_id[self.free[:, 0], self.free[:, 1]] = np.arange(len(self.free))

    def path_counts(self, p: int) -> np.ndarray:
        """``counts[a, x, e]``: multiplicity of free edge ``e`` on the path of ``x`` from ``a``."""
        g = self.group
        n = g.order
        counts = np.zeros((n, n, len(self.free)), dtype=np.int64)
        x = g.elements
        for layer in self.layers[1:]:
            par = self.parent[layer]
            counts[:, layer, :] = counts[:, par, :]
            ids = self.edge_id[g.mul(x[:, None], par[None, :]), self.position[layer][None, :]]
            rows, cols = np.nonzero(ids >= 0)
            np.add.at(counts, (rows, layer[cols], ids[rows, cols]), 1)
        return counts % p

    def coboundary_rows(self, v: GModule, rho: np.ndarray) -> np.ndarray:
        """Echelon basis of the coboundaries vanishing on tree edges, in free-edge coordinates."""
        f = v.field
        g = self.group
        n, m, d = g.order, self.gens.size, v.dim
        eye = np.eye(d, dtype=np.int64)
        delta = np.zeros((n, m, d, n, d), dtype=np.int64)
        for j, s in enumerate(self.gens):
            ends = g.mul(g.elements, s)
            for a in range(n):
                block = delta[a, j]
                block[:, s, :] = f.add(block[:, s, :], rho[a])
                block[:, ends[a], :] = f.sub(block[:, ends[a], :], eye)
                block[:, a, :] = f.add(block[:, a, :], eye)
        delta = delta.reshape(n, m, d, n * d)
        on_tree = delta[self.tree_edges[:, 0], self.tree_edges[:, 1]].reshape(-1, n * d)
        on_free = delta[self.free[:, 0], self.free[:, 1]].reshape(-1, n * d)
        potentials = nullspace_array(f, on_tree)
        if potentials.shape[0] == 0 or on_free.shape[0] == 0:
            return np.zeros((0, on_free.shape[0]), dtype=np.int64)
        return rowspace_array(f, f.matmul(potentials, on_free.T))

    def edge_vector(self, v: GModule, rho: np.ndarray, cocycle: np.ndarray) -> np.ndarray:
        """Free-edge coordinates of the tree-normalized cocycle cohomologous to ``cocycle``."""
        f = v.field
        g = self.group
        pot = np.zeros((g.order, v.dim), dtype=np.int64)
        for layer in self.layers[1:]:
            par = self.parent[layer]
            pot[layer] = f.add(cocycle[par, self.gens[self.position[layer]]], pot[par])
        a = self.free[:, 0]
        s = self.gens[self.free[:, 1]]
        u = f.add(f.sub(cocycle[a, s], pot[g.mul(a, s)]), pot[a])
        return u.reshape(-1)


class CocycleSpace(BaseModel):
    """``Z^2`` and ``B^2`` in tree-normalized edge coordinates.

    A vector has one block of ``dim V`` coordinates per free edge.

    :ivar group: The group ``G``.
    :ivar module: The module ``V``.
    :ivar cocycles: Basis rows of the tree-normalized cocycles.
    :ivar coboundaries: Echelon basis rows of the tree-normalized coboundaries.
    :ivar h2_dim: ``dim H^2(G, V)`` over the field of ``V``.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    group: FiniteGroup = Field(description="The group G.")
    module: GModule = Field(description="The module V.")
    cocycles: np.ndarray = Field(description="Basis rows of tree-normalized cocycles.")
    coboundaries: np.ndarray = Field(description="Echelon rows of tree-normalized coboundaries.")
    h2_dim: int = Field(description="Dimension of H^2(G, V).")
    frame: _EdgeFrame = Field(exclude=True, description="Tree and free edges.")
    counts: np.ndarray = Field(exclude=True, description="Path multiplicities of free edges.")

    @functools.cached_property
    def _boundary_basis(self) -> EchelonBasis:
        basis = EchelonBasis(self.module.field, self.cocycles.shape[1])
        for row in self.coboundaries:
            basis.add(row)
        return basis

    @functools.cached_property
    def _rho(self) -> np.ndarray:
        return self.module.element_matrices()

    def cochain(self, u: np.ndarray | None = None) -> np.ndarray:
        """The full normalized cocycle ``c[g, h]`` (shape ``(|G|, |G|, dim V)``)."""
        n, d = self.group.order, self.module.dim
        if u is None or self.counts.shape[2] == 0:
            return np.zeros((n, n, d), dtype=np.int64)
        edges = np.asarray(u, dtype=np.int64).reshape(-1, d)
        flat = self.module.field.matmul(self.counts.reshape(n * n, -1), edges)
        return flat.reshape(n, n, d)

    def edge_vector(self, cocycle: np.ndarray) -> np.ndarray:
        return self.frame.edge_vector(self.module, self._rho, cocycle)

    def class_key(self, u: np.ndarray) -> bytes:
        """Canonical key of the cohomology class of ``u``."""
        return self._boundary_basis.reduce(u).tobytes()

    def is_coboundary(self, u: np.ndarray) -> bool:
        return self._boundary_basis.contains(u)

    def complement(self) -> np.ndarray:
        """Cocycle rows whose classes form a basis of ``H^2``."""
        basis = EchelonBasis(self.module.field, self.cocycles.shape[1])
        for row in self.coboundaries:
            basis.add(row)
        picked = [row for row in self.cocycles if basis.add(row) is not None]
        if not picked:
            return np.zeros((0, self.cocycles.shape[1]), dtype=np.int64)
        return np.array(picked)


def _cocycle_equations(frame: _EdgeFrame, v: GModule, rho: np.ndarray, counts: np.ndarray) -> np.ndarray:
    # for every free pair (h, s) and every g:
    # c(g, h) + c(gh, s) - c(g, hs) - g.c(h, s) = 0
    f = v.field
    g = frame.group
    d = v.dim
    n_edges = len(frame.free)
    eye = np.eye(d, dtype=np.int64)
    x = g.elements
    acc = np.zeros((0, n_edges * d), dtype=np.int64)
    pending: list[np.ndarray] = []
    pending_rows = 0
    for h, j in frame.free:
        check_budget()
        s = frame.gens[j]
        coef = counts[:, h, :] - counts[:, int(g.mul(h, s)), :]
        ids = frame.edge_id[g.mul(x, h), j]
        hit = np.flatnonzero(ids >= 0)
        coef[hit, ids[hit]] += 1
        coef %= f.p
        block = coef[:, None, :, None] * eye[None, :, None, :]
        e0 = frame.edge_id[h, j]
        block[:, :, e0, :] = f.sub(block[:, :, e0, :], rho)
        pending.append(block.reshape(g.order * d, n_edges * d))
        pending_rows += g.order * d
        if pending_rows >= _ROW_BLOCK:
            acc = rowspace_array(f, np.vstack([acc, *pending]))
            pending, pending_rows = [], 0
    if pending:
        acc = rowspace_array(f, np.vstack([acc, *pending]))
    return acc


def h2(g: FiniteGroup, v: GModule) -> CocycleSpace:
    """Second cohomology ``H^2(G, V)``.

    Cocycles are solved for on the free edges of a Schreier tree; the
    equations are the cocycle identity on ``(g, h, s)`` for generators ``s``
    and non-tree pairs ``(h, s)``.

    :param g: The group, of order at most :data:`COHOMOLOGY_ORDER_LIMIT`.
    :type g: FiniteGroup
    :param v: A module for ``g`` of dimension at most :data:`COHOMOLOGY_DIM_LIMIT`.
    :type v: GModule
    :rtype: CocycleSpace
    :raises BudgetExceeded: Outside the bounds.
    """
    if v.group is not g:
        raise InvalidInput(f"{v!r} is not a module for {g.label}")
    require("cohomology-group-order", COHOMOLOGY_ORDER_LIMIT, g.order)
    require("cohomology-module-dimension", COHOMOLOGY_DIM_LIMIT, v.dim)
    f = v.field
    frame = _EdgeFrame(g)
    rho = v.element_matrices()
    counts = frame.path_counts(f.p)
    equations = _cocycle_equations(frame, v, rho, counts)
    cocycles = nullspace_array(f, equations) if equations.shape[1] else equations[:0]
    coboundaries = frame.coboundary_rows(v, rho)
    if coboundaries.size and np.any(f.matmul(equations, coboundaries.T)):
        raise CheckFailed("a coboundary violates the cocycle identity")
    dim = cocycles.shape[0] - coboundaries.shape[0]
    if dim < 0:
        raise CheckFailed("coboundaries exceed cocycles")
    logger.debug(
        "H^2(%s, %r): dim Z = %d, dim B = %d", g.label, v, cocycles.shape[0], coboundaries.shape[0]
    )
    return CocycleSpace(
        group=g,
        module=v,
        cocycles=cocycles,
        coboundaries=coboundaries,
        h2_dim=dim,
        frame=frame,
        counts=counts,
    )


def cocycle_defect(v: GModule, cocycle: np.ndarray) -> bool:
    """True if ``cocycle`` is not a normalized 2-cocycle."""
    g = v.group
    f = v.field
    n, d = g.order, v.dim
    c = np.asarray(cocycle, dtype=np.int64)
    if c.shape != (n, n, d) or (c.size and (c.min() < 0 or c.max() >= f.q)):
        return True
    if np.any(c[g.identity]) or np.any(c[:, g.identity]):
        return True
    rho = v.element_matrices()
    x = g.elements
    prod = g.mul(x[:, None], x[None, :])
    for a in range(n):
        check_budget()
        acted = f.matmul(c.reshape(n * n, d), rho[a].T).reshape(n, n, d)
        lhs = f.add(acted, c[a][prod])
        rhs = f.add(c[prod[a]], np.broadcast_to(c[a][:, None, :], (n, n, d)))
        if not np.array_equal(lhs, rhs):
            return True
    return False


def extension_from_cocycle(
    g: FiniteGroup,
    v: GModule,
    cocycle: np.ndarray | None = None,
    *,
    space: CocycleSpace | None = None,
) -> ExtensionRecord:
    """The extension of ``G`` by ``V`` with multiplication
    ``(v1, g1)(v2, g2) = (v1 + g1.v2 + c(g1, g2), g1 g2)``.

    The pair ``(v, g)`` sits at index ``code(v) * |G| + g``.

    :param cocycle: Full normalized cocycle ``c[g1, g2]``; ``None`` for the
        split extension ``V : G``.
    :param space: ``h2(g, v)``, used to decide whether the extension splits.
    :raises IncompatibleCocycle: If ``cocycle`` fails the cocycle identity.
    """
    if v.group is not g:
        raise InvalidInput(f"{v!r} is not a module for {g.label}")
    f = v.field
    n, d = g.order, v.dim
    c = np.zeros((n, n, d), dtype=np.int64) if cocycle is None else np.asarray(cocycle, dtype=np.int64)
    if cocycle is not None and cocycle_defect(v, c):
        raise IncompatibleCocycle("not a normalized 2-cocycle")
    require("group-order", ORDER_LIMIT, f.q**d * n)
    kernel_group = vector_group(f, d)
    vecs = all_vectors(f, d)
    rho = v.element_matrices()
    phi = np.stack([vector_codes(f, f.matmul(vecs, rho[a].T)) for a in range(n)])
    codes = vector_codes(f, c)
    shape = f"{f.label}^{d}"
    total = twisted_product(
        kernel_group,
        g,
        phi,
        None if cocycle is None else codes,
        label=f"{shape}.{g.label}",
    )
    x = total.elements
    proj = GroupHom(total, g, x % n, verify=False)
    kernel = Subgroup(total, np.arange(f.q**d, dtype=np.int64) * n + g.identity)
    if cocycle is None:
        split: bool | None = True
    elif space is not None:
        split = space.is_coboundary(space.edge_vector(c))
    else:
        try:
            sp = h2(g, v)
            split = sp.is_coboundary(sp.edge_vector(c))
        except BudgetExceeded:
            split = None
    return extension_record(
        kernel,
        proj,
        minimal=d > 0 and is_irreducible(v),
        abelian=True,
        split=split,
        kernel_shape=shape,
    )


# isomorphism of extensions


def _certificate(e: ExtensionRecord) -> tuple:
    orders = e.total.element_orders()
    return (
        e.total.order,
        e.degree,
        e.abelian,
        tuple(sorted(Counter(zip(orders.tolist(), e.proj.images.tolist())).items())),
        tuple(sorted(Counter(orders[e.kernel.elems].tolist()).items())),
    )


def extensions_isomorphic(e1: ExtensionRecord, e2: ExtensionRecord) -> bool | None:
    """Whether an isomorphism ``f: E1 -> E2`` with ``pi2 f = pi1`` exists.

    Up to :data:`ISOMORPHISM_LIMIT` the answer is exact. Above, separating
    invariants decide ``False``; when none separates the answer is ``None``.

    :raises InvalidInput: If the bases differ.
    """
    if e1.base is not e2.base:
        raise InvalidInput("extensions of different groups")
    if e1 is e2:
        return True
    if _certificate(e1) != _certificate(e2):
        return False
    if e1.total.order <= ISOMORPHISM_LIMIT:
        iso = find_isomorphism(e1.total, e2.total, labels=(e1.proj.images, e2.proj.images))
        return iso is not None
    if not e1.abelian and e1.minimal and e2.minimal:
        if t_map(e1).key != t_map(e2).key:
            return False
    logger.info("isomorphism of %s and %s undecided", e1.total.label, e2.total.label)
    return None


# abelian minimal extensions


def _class_representatives(space: CocycleSpace, endo: np.ndarray) -> list[np.ndarray]:
    """One cocycle per orbit of ``Aut_G(V)`` on ``H^2(G, V)``."""
    f = space.module.field
    d = space.module.dim
    comp = space.complement()
    width = space.cocycles.shape[1]
    if comp.shape[0] == 0:
        return [np.zeros(width, dtype=np.int64)]
    require("cohomology-classes", CLASS_LIMIT, f.q ** comp.shape[0])
    classes = f.matmul(all_vectors(f, comp.shape[0]), comp)
    scalars = all_vectors(f, endo.shape[0])[1:]
    units = [
        f.total(f.mul(c[:, None, None], endo), axis=0) for c in scalars
    ]
    seen: set[bytes] = set()
    reps = []
    for u in classes:
        key = space.class_key(u)
        if key in seen:
            continue
        reps.append(u)
        edges = u.reshape(-1, d)
        for alpha in units:
            seen.add(space.class_key(f.matmul(edges, alpha.T).reshape(-1)))
    return reps


def abelian_minimal_extensions(g: FiniteGroup, p: int, k: int) -> list[ExtensionRecord]:
    """Isomorphism classes of minimal extensions of ``G`` by groups of order ``p^k``.

    Per irreducible ``V`` of dimension ``k`` with endomorphism field
    ``F_{p^e}`` and ``h = dim H^2(G, V)`` there are
    ``1 + (p^h - 1) / (p^e - 1)`` classes; the enumeration of orbit
    representatives is checked against that count.

    :raises CheckFailed: If the orbit count disagrees with the closed form.
    """
    if k < 1:
        raise InvalidInput("kernel dimension must be positive")
    field = field_make(p)
    records = []
    for rec in simple_modules(g, field):
        if rec.dim != k:
            continue
        space = h2(g, rec.module)
        if space.h2_dim % rec.endo_degree:
            raise CheckFailed("H^2 is not a vector space over the endomorphism field")
        expected = 1 + (p**space.h2_dim - 1) // (p**rec.endo_degree - 1)
        if space.h2_dim:
            endo = intertwiner_basis(field, list(rec.module.mats), list(rec.module.mats))
        else:
            endo = np.zeros((0, k, k), dtype=np.int64)
        reps = _class_representatives(space, endo)
        if len(reps) != expected:
            raise CheckFailed(
                f"{len(reps)} extension classes for {rec.module!r}, closed form gives {expected}"
            )
        for u in reps:
            cocycle = space.cochain(u) if np.any(u) else None
            records.append(extension_from_cocycle(g, rec.module, cocycle, space=space))
    logger.debug("e^min_%d^%d(%s) = %d", p, k, g.label, len(records))
    return records


class AbelianChainReport(BaseModel):
    """Both inequalities ``r_k <= e^min_{p^k} <= sum |H^2(G, V)|``.

    :ivar group: Group label.
    :ivar p: Characteristic.
    :ivar k: Kernel dimension.
    :ivar r_k: Irreducible ``F_p[G]``-modules of dimension ``k``.
    :ivar count: Minimal abelian extensions of degree ``p^k``.
    :ivar cohomology_sum: Sum of ``|H^2(G, V)|`` over those modules.
    :ivar holds: Whether the chain holds.
    """

    group: str = Field(description="Group label.")
    p: int = Field(description="Characteristic.")
    k: int = Field(description="Kernel dimension.")
    r_k: int = Field(description="Irreducible modules of dimension k.")
    count: int = Field(description="Minimal abelian extensions of degree p^k.")
    cohomology_sum: int = Field(description="Sum of |H^2(G,V)| over irreducible V of dimension k.")
    holds: bool = Field(description="Whether r_k <= count <= cohomology_sum.")


def abelian_extension_chain(g: FiniteGroup, p: int, k: int) -> AbelianChainReport:
    field = field_make(p)
    modules = [rec.module for rec in simple_modules(g, field) if rec.dim == k]
    total = sum(p ** h2(g, m).h2_dim for m in modules)
    count = len(abelian_minimal_extensions(g, p, k))
    return AbelianChainReport(
        group=g.label,
        p=p,
        k=k,
        r_k=len(modules),
        count=count,
        cohomology_sum=total,
        holds=len(modules) <= count <= total,
    )


# presentations

_TOKEN = re.compile(r"\s*(?:([A-Za-z])|(\()|(\))|\^\s*(-?\d+))")


class Presentation(BaseModel):
    """A finite presentation with single-letter generators.

    Relators are words such as ``"x^2"`` or ``"(xy)^2"``; ``^-1`` inverts.

    :ivar generators: Generator letters.
    :ivar relators: Relator words.
    """

    generators: list[str] = Field(description="Generator letters.")
    relators: list[str] = Field(description="Relator words.")

    @classmethod
    def parse(cls, text: str) -> "Presentation":
        """Parse ``"<x, y | x^2, y^3, (xy)^2>"``."""
        m = re.fullmatch(r"\s*<\s*([^|>]*)\|([^>]*)>\s*", text)
        if m is None:
            raise InvalidInput(f"cannot parse presentation {text!r}")
        gens = [s.strip() for s in m.group(1).split(",") if s.strip()]
        rels = [s.strip() for s in m.group(2).split(",") if s.strip()]
        if any(not re.fullmatch(r"[A-Za-z]", s) for s in gens) or len(set(gens)) != len(gens):
            raise InvalidInput(f"generators must be distinct letters: {gens}")
        return cls(generators=gens, relators=rels)

    def words(self) -> list[list[tuple[int, int]]]:
        """Relators as lists of ``(generator index, +-1)`` letters."""
        return [self._word(r) for r in self.relators]

    def _word(self, text: str) -> list[tuple[int, int]]:
        index = {s: i for i, s in enumerate(self.generators)}
        stack: list[list[tuple[int, int]]] = [[]]
        last: list[tuple[int, int]] | None = None
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None:
                raise InvalidInput(f"cannot parse relator {text!r} at {pos}")
            pos = m.end()
            letter, opening, closing, exponent = m.groups()
            if letter is not None:
                if letter not in index:
                    raise InvalidInput(f"unknown generator {letter!r} in {text!r}")
                last = [(index[letter], 1)]
                stack[-1].extend(last)
            elif opening is not None:
                stack.append([])
                last = None
            elif closing is not None:
                if len(stack) == 1:
                    raise InvalidInput(f"unbalanced parentheses in {text!r}")
                last = stack.pop()
                stack[-1].extend(last)
            else:
                if last is None:
                    raise InvalidInput(f"exponent without base in {text!r}")
                e = int(exponent)
                del stack[-1][len(stack[-1]) - len(last) :]
                unit = last if e > 0 else [(i, -s) for i, s in reversed(last)]
                stack[-1].extend(unit * abs(e))
                last = None
        if len(stack) != 1:
            raise InvalidInput(f"unbalanced parentheses in {text!r}")
        return stack[0]


def presentation_order(pres: Presentation) -> int | None:
    """Order of the presented group by coset enumeration, ``None`` if infinite."""
    free, *letters = free_group(", ".join(pres.generators))
    rels = []
    for word in pres.words():
        w = free.identity
        for i, s in word:
            w = w * letters[i] ** s
        rels.append(w)
    order = FpGroup(free, rels).order()
    return int(order) if order.is_finite else None


def verify_presentation(g: FiniteGroup, pres: Presentation, images: Sequence[int] | None = None) -> None:
    """Check that ``pres`` presents ``g`` with generator ``i`` mapped to ``images[i]``.

    :raises InvalidInput: If a relator fails, the images do not generate, or
        the presented group has a different order.
    """
    images = list(g.gens if images is None else images)
    if len(images) != len(pres.generators):
        raise InvalidInput(
            f"{len(pres.generators)} generators in the presentation, {len(images)} images"
        )
    if not generates(g, images):
        raise InvalidInput(f"images {images} do not generate {g.label}")
    inv = g.inv
    for text, word in zip(pres.relators, pres.words()):
        x = g.identity
        for i, s in word:
            x = int(g.mul(x, images[i] if s > 0 else inv[images[i]]))
        if x != g.identity:
            raise InvalidInput(f"relator {text!r} does not hold in {g.label}")
    order = presentation_order(pres)
    if order != g.order:
        raise InvalidInput(f"presentation defines a group of order {order}, not {g.order}")


class PresentationBound(BaseModel):
    """``e^min_{p^k}(G) <= p^(r k) r_k(G, F_p)`` for an ``r``-relator presentation.

    :ivar lhs: The computed ``e^min_{p^k}(G)``.
    :ivar rhs: ``p^(r k) r_k``.
    :ivar holds: Whether ``lhs <= rhs``.
    """

    group: str = Field(description="Group label.")
    p: int = Field(description="Characteristic.")
    k: int = Field(description="Kernel dimension.")
    relators: int = Field(description="Number of relators r.")
    lhs: int = Field(description="e^min_{p^k}(G).")
    rhs: int = Field(description="p^(rk) r_k(G, F_p).")
    holds: bool = Field(description="Whether lhs <= rhs.")


def presentation_bound_check(
    g: FiniteGroup, pres: Presentation, p: int, k: int, images: Sequence[int] | None = None
) -> PresentationBound:
    verify_presentation(g, pres, images)
    r = len(pres.relators)
    r_k = sum(1 for rec in simple_modules(g, field_make(p)) if rec.dim == k)
    lhs = len(abelian_minimal_extensions(g, p, k))
    rhs = p ** (r * k) * r_k
    return PresentationBound(
        group=g.label, p=p, k=k, relators=r, lhs=lhs, rhs=rhs, holds=lhs <= rhs
    )


# nonabelian kernels


def _require_nonabelian_simple(s: FiniteGroup) -> None:
    if s.is_abelian() or not is_simple(s):
        raise InvalidInput(f"{s.label} is not a nonabelian simple group")


def _orbit_of_zero(perms: np.ndarray, k: int) -> int:
    seen = {0}
    frontier = [0]
    while frontier:
        i = frontier.pop()
        for row in perms:
            j = int(row[i])
            if j not in seen:
                seen.add(j)
                frontier.append(j)
    return len(seen)


def _left_coset_action(g: FiniteGroup, h: Subgroup) -> np.ndarray:
    """``perm[x, i]``: the coset ``x r_i H`` as an index, cosets numbered by smallest element."""
    x = g.elements
    label = g.mul(x[:, None], h.elems[None, :]).min(axis=1)
    reps, coset = np.unique(label, return_inverse=True)
    return coset.astype(np.int64)[g.mul(x[:, None], reps[None, :])]


def semidirect_EH(g: FiniteGroup, h: Subgroup, s: FiniteGroup) -> ExtensionRecord:
    """``E_H = S^(G/H) : G`` with ``G`` permuting the coordinates as it permutes ``G/H``.

    Coordinate ``i`` of ``g.f`` is ``f_{g^-1 i}``. The kernel is minimal
    normal because the action on cosets is transitive.
    """
    if h.parent is not g:
        raise InvalidInput("subgroup of a different group")
    _require_nonabelian_simple(s)
    k = h.index
    require("group-order", ORDER_LIMIT, s.order**k * g.order)
    perm = _left_coset_action(g, h)
    if _orbit_of_zero(perm, k) != k:
        raise CheckFailed("coset action is not transitive")
    sk = power_group(s, k)
    coords = power_coordinates(sk.elements, s.order, k)
    powers = np.array([s.order ** (k - 1 - i) for i in range(k)], dtype=np.int64)
    phi = np.stack([(coords[:, np.argsort(perm[a])] * powers).sum(axis=1) for a in range(g.order)])
    n = g.order
    shape = f"{s.label}^{k}"
    total = twisted_product(sk, g, phi, label=f"{shape}:{g.label}")
    proj = GroupHom(total, g, total.elements % n, verify=False)
    kernel = Subgroup(total, sk.elements * n + g.identity)
    return extension_record(kernel, proj, minimal=True, abelian=False, split=True, kernel_shape=shape)


class SubgroupClass(BaseModel):
    """A conjugacy class of subgroups.

    :ivar representative: One member.
    :ivar members: All members, sorted by elements.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    representative: Subgroup = Field(description="One member of the class.")
    members: list[Subgroup] = Field(description="All members.")

    @property
    def key(self) -> bytes:
        return self.members[0].key

    @property
    def index(self) -> int:
        return self.representative.index


def subgroup_class(h: Subgroup) -> SubgroupClass:
    g = h.parent
    found = {h.key: h}
    frontier = [h]
    while frontier:
        cur = frontier.pop()
        for s in g.gens:
            c = cur.conjugate(s)
            if c.key not in found:
                found[c.key] = c
                frontier.append(c)
    members = sorted(found.values(), key=lambda m: m.elems.tolist())
    return SubgroupClass(representative=h, members=members)


def kernel_factors(e: ExtensionRecord) -> list[Subgroup]:
    """The minimal normal subgroups of a kernel ``S^k``, as subgroups of the total group.

    :raises InvalidInput: If the kernel is not a power of a nonabelian simple group.
    """
    kgroup, incl = subgroup_as_group(e.kernel)
    factors = minimal_normal_subgroups(kgroup)
    k = len(factors)
    s_order = factors[0].order if factors else 0
    if (
        not factors
        or any(f.order != s_order for f in factors)
        or s_order**k != kgroup.order
    ):
        raise InvalidInput(f"kernel of {e.total.label} is not of shape S^k")
    first, _ = subgroup_as_group(factors[0])
    if first.is_abelian() or not is_simple(first):
        raise InvalidInput(f"kernel of {e.total.label} is not a power of a nonabelian simple group")
    return [Subgroup(e.total, incl(f.elems)) for f in factors]


def _fiber_lifts(e: ExtensionRecord) -> np.ndarray:
    _, first = np.unique(e.proj.images, return_index=True)
    return first.astype(np.int64)


def factor_permutations(e: ExtensionRecord, factors: Sequence[Subgroup]) -> np.ndarray:
    """``perm[g, i] = j`` when a lift of ``g`` conjugates factor ``i`` onto factor ``j``."""
    total = e.total
    keys = {f.key: i for i, f in enumerate(factors)}
    lifts = _fiber_lifts(e)
    perm = np.empty((e.base.order, len(factors)), dtype=np.int64)
    for a, lift in enumerate(lifts):
        for i, f in enumerate(factors):
            conj = Subgroup(total, total.mul(total.mul(lift, f.elems), total.inv[lift]))
            j = keys.get(conj.key)
            if j is None:
                raise CheckFailed("conjugation does not permute the kernel factors")
            perm[a, i] = j
    return perm


def t_map(e: ExtensionRecord) -> SubgroupClass:
    """Conjugacy class of the point stabilizer of ``G`` acting on the kernel factors.

    :raises InvalidInput: If the kernel is not of shape ``S^k``.
    :raises CheckFailed: If the action is not transitive.
    """
    factors = kernel_factors(e)
    perm = factor_permutations(e, factors)
    k = len(factors)
    if _orbit_of_zero(perm, k) != k:
        raise CheckFailed("the base group does not permute the kernel factors transitively")
    stab = Subgroup(e.base, np.flatnonzero(perm[:, 0] == 0))
    return subgroup_class(stab)


# couplings


class OuterAutomorphisms(BaseModel):
    """``Aut(S)``, ``Out(S)`` and the projection between them."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    aut: AutomorphismGroup = Field(description="Aut(S).")
    out: FiniteGroup = Field(description="Out(S).")
    proj: GroupHom = Field(description="Aut(S) -> Out(S).")


@functools.lru_cache(maxsize=8)
def outer_automorphisms(s: FiniteGroup) -> OuterAutomorphisms:
    aut = automorphism_group(s)
    out, proj = quotient(aut, aut.inner)
    out.label = f"Out({s.label})"
    return OuterAutomorphisms(aut=aut, out=out, proj=proj)


class Coupling(BaseModel):
    """A homomorphism ``G -> Out(S)^k : Sym(k)``.

    :ivar base: ``G``.
    :ivar simple: ``S``.
    :ivar k: Number of factors.
    :ivar target: ``Out(S)^k : Sym(k)``, pairs at index ``x * k! + sigma``.
    :ivar hom: The homomorphism.
    :ivar transitive: Whether the image in ``Sym(k)`` is transitive.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    base: FiniteGroup = Field(description="The group G.")
    simple: FiniteGroup = Field(description="The simple group S.")
    k: int = Field(description="Number of factors.")
    target: FiniteGroup = Field(description="Out(S)^k semidirect Sym(k).")
    hom: GroupHom = Field(description="G -> target.")
    transitive: bool = Field(description="Image in Sym(k) is transitive.")

    def sym_images(self) -> np.ndarray:
        return self.hom.images % math.factorial(self.k)

    def out_images(self) -> np.ndarray:
        """``Out(S)^k`` coordinates of the image of each element."""
        out_order = outer_automorphisms(self.simple).out.order
        return power_coordinates(self.hom.images // math.factorial(self.k), out_order, self.k)

    def stabilizer(self) -> Subgroup:
        rows = symmetric_rows(_sym(self.k))
        return Subgroup(self.base, np.flatnonzero(rows[self.sym_images(), 0] == 0))


@functools.cache
def _coupling_target(s: FiniteGroup, k: int) -> tuple[FiniteGroup, FiniteGroup]:
    return wreath_power(outer_automorphisms(s).out, k)


@functools.cache
def _sym(k: int) -> FiniteGroup:
    return symmetric(k)


def _require_centerless(s: FiniteGroup) -> None:
    if center(s).order != 1:
        raise InvalidInput(f"{s.label} has a nontrivial centre")


def coupling_classes(g: FiniteGroup, s: FiniteGroup, k: int) -> list[list[Coupling]]:
    """Conjugacy classes of couplings with transitive image in ``Sym(k)``.

    Homomorphisms are enumerated through generator images of matching order
    and grouped by conjugation in the target.

    :raises BudgetExceeded: If more than :data:`COUPLING_LIMIT` image tuples
        would be tried.
    """
    if k < 1:
        raise InvalidInput("number of factors must be positive")
    _require_nonabelian_simple(s)
    _require_centerless(s)
    w, sym = _coupling_target(s, k)
    rows = symmetric_rows(sym)
    gens = list(g.gens)
    orders = w.element_orders()
    gen_orders = g.element_orders()[gens]
    candidates = [np.flatnonzero(o % orders == 0) for o in gen_orders]
    tries = 1
    for c in candidates:
        tries *= c.size
    require("coupling-enumeration", COUPLING_LIMIT, tries)
    wall = w.elements
    winv = w.inv
    classes: dict[tuple, list[Coupling]] = {}
    for tup in itertools.product(*candidates):
        check_budget()
        img = extend_to_hom(g, w, gens, tup)
        if img is None:
            continue
        perms = rows[img[gens] % sym.order] if gens else np.zeros((0, k), dtype=np.int64)
        if _orbit_of_zero(perms, k) != k:
            continue
        if gens:
            conj = np.stack([w.mul(w.mul(wall, int(t)), winv) for t in tup], axis=1)
            key = tuple(min(map(tuple, conj.tolist())))
        else:
            key = ()
        hom = GroupHom(g, w, img, verify=False)
        classes.setdefault(key, []).append(
            Coupling(base=g, simple=s, k=k, target=w, hom=hom, transitive=True)
        )
    ordered = [classes[key] for key in sorted(classes)]
    logger.debug("%d coupling classes %s -> %s", len(ordered), g.label, w.label)
    return ordered


def coupling_of(e: ExtensionRecord, s: FiniteGroup) -> Coupling:
    """The coupling ``G -> Out(S)`` of an extension with kernel ``S``.

    The kernel is identified with ``S`` by an isomorphism; a different choice
    conjugates the result in ``Out(S)``.
    """
    kgroup, incl = subgroup_as_group(e.kernel)
    iso = find_isomorphism(kgroup, s)
    if iso is None:
        raise InvalidInput(f"kernel of {e.total.label} is not isomorphic to {s.label}")
    od = outer_automorphisms(s)
    w, _ = _coupling_target(s, 1)
    total = e.total
    to_kernel = np.full(total.order, -1, dtype=np.int64)
    to_kernel[incl.images] = kgroup.elements
    lifts = _fiber_lifts(e)
    keys = od.aut.key_points
    # automorphism of S induced by conjugation with each lift
    out_of = np.empty(e.base.order, dtype=np.int64)
    s_to_total = np.empty(s.order, dtype=np.int64)
    s_to_total[iso.images] = incl.images
    for a, lift in enumerate(lifts):
        moved = total.mul(total.mul(lift, s_to_total[keys]), total.inv[lift])
        images = iso.images[to_kernel[moved]]
        out_of[a] = od.proj.images[int(od.aut.index_of(images)[0])]
    hom = GroupHom(e.base, w, out_of)
    return Coupling(base=e.base, simple=s, k=1, target=w, hom=hom, transitive=True)


def extension_from_coupling(g: FiniteGroup, s: FiniteGroup, chi: Coupling) -> ExtensionRecord:
    """The fiber product ``{(a, x) in Aut(S) x G : a Inn(S) = chi(x)}``.

    :raises InvalidInput: If ``S`` has a centre or ``chi`` has ``k != 1``.
    """
    if chi.k != 1 or chi.base is not g:
        raise InvalidInput("coupling must map this group into Out(S) with k = 1")
    _require_centerless(s)
    od = outer_automorphisms(s)
    aut = od.aut
    require("fiber-product-order", FIBER_PRODUCT_LIMIT, aut.order * g.order // aut.out_order)
    n = g.order
    prod = direct_product(aut, g)
    x = prod.elements
    mask = od.proj.images[x // n] == chi.hom.images[x % n]
    sub = Subgroup(prod, np.flatnonzero(mask))
    total, incl = subgroup_as_group(sub)
    total.label = f"{s.label}.{g.label}"
    pairs = incl.images
    proj = GroupHom(total, g, pairs % n, verify=False)
    kernel = Subgroup(
        total, np.flatnonzero(aut.inner.mask[pairs // n] & (pairs % n == g.identity))
    )
    return extension_record(
        kernel,
        proj,
        minimal=True,
        abelian=False,
        split=has_section(total, proj),
        kernel_shape=f"{s.label}^1",
    )


def has_section(total: FiniteGroup, proj: GroupHom) -> bool | None:
    """Whether ``proj`` has a homomorphic section; ``None`` if the search is too large."""
    base = proj.cod
    gens = list(base.gens)
    fibers = [np.flatnonzero(proj.images == s) for s in gens]
    tries = 1
    for f in fibers:
        tries *= f.size
    if tries > COUPLING_LIMIT:
        return None
    for tup in itertools.product(*fibers):
        check_budget()
        if extend_to_hom(base, total, gens, tup) is not None:
            return True
    return False


class CouplingReport(BaseModel):
    """Coupling classes bucketed by the stabilizer class of their permutation part.

    :ivar count: Number of coupling classes, the number of isomorphism classes
        of minimal extensions with kernel ``S^k``.
    :ivar conj_k: ``|Conj_k(G)|``.
    :ivar a_k: ``a_k(G)``.
    :ivar d: ``d(G)``.
    :ivar out_order: ``|Out(S)|``.
    :ivar buckets: Coupling classes per stabilizer class.
    :ivar fiber_bound: ``|Out(S)|^(k d)``.
    """

    group: str = Field(description="Group label.")
    simple: str = Field(description="Simple group label.")
    k: int = Field(description="Number of factors.")
    count: int = Field(description="Number of coupling classes.")
    conj_k: int = Field(description="|Conj_k(G)|.")
    a_k: int = Field(description="a_k(G).")
    d: int = Field(description="d(G).")
    out_order: int = Field(description="|Out(S)|.")
    buckets: list[int] = Field(description="Coupling classes per stabilizer class.")
    fiber_bound: int = Field(description="|Out(S)|^(k d).")

    @property
    def fibers_hold(self) -> bool:
        return all(b <= self.fiber_bound for b in self.buckets)

    @property
    def count_holds(self) -> bool:
        return (
            self.conj_k <= self.count <= self.conj_k * self.fiber_bound
            and self.conj_k * self.k >= self.a_k
        )


def _coupling_report(g: FiniteGroup, s: FiniteGroup, k: int) -> tuple[CouplingReport, list[list[Coupling]]]:
    classes = coupling_classes(g, s, k)
    _, counts, _ = subgroups_of_index(g, k)
    d = min_generators(g)
    od = outer_automorphisms(s)
    buckets: dict[bytes, int] = {}
    for cls in classes:
        key = subgroup_class(cls[0].stabilizer()).key
        buckets[key] = buckets.get(key, 0) + 1
    report = CouplingReport(
        group=g.label,
        simple=s.label,
        k=k,
        count=len(classes),
        conj_k=counts.classes,
        a_k=counts.count,
        d=d,
        out_order=od.out.order,
        buckets=[buckets[key] for key in sorted(buckets)],
        fiber_bound=od.out.order ** (k * d),
    )
    return report, classes


def coupling_fiber_bound_check(g: FiniteGroup, s: FiniteGroup, k: int) -> CouplingReport:
    """Every stabilizer class carries at most ``|Out(S)|^(k d(G))`` coupling classes."""
    report, _ = _coupling_report(g, s, k)
    return report


def nonabelian_extension_count(g: FiniteGroup, s: FiniteGroup, k: int) -> CouplingReport:
    """Minimal extensions of ``G`` with kernel ``S^k``, counted by coupling classes.

    The report carries ``|Conj_k(G)| <= count <= |Conj_k(G)| |Out(S)|^(k d)``
    and ``k |Conj_k(G)| >= a_k(G)`` as :attr:`CouplingReport.count_holds`.
    """
    report, _ = _coupling_report(g, s, k)
    return report


# generation


class GenerationReport(BaseModel):
    """``d(E) <= d(G) + 1`` for abelian and ``d(E) <= d(G) + 2`` for nonabelian kernels.

    :ivar base_generators: ``d(G)``.
    :ivar total_generators: ``d(E)`` when computed exactly.
    :ivar witness: A generating tuple of size :attr:`bound` found by search.
    :ivar bound: The bound on ``d(E)``.
    :ivar holds: Whether the bound was established.
    """

    base_generators: int = Field(description="d(G).")
    total_generators: int | None = Field(description="d(E) if computed exactly.")
    witness: list[int] | None = Field(description="Generating tuple of E of size bound.")
    bound: int = Field(description="d(G)+1 or d(G)+2.")
    holds: bool = Field(description="Whether d(E) <= bound was established.")


def generation_bound_check(e: ExtensionRecord, *, attempts: int = 5000) -> GenerationReport:
    d = min_generators(e.base)
    bound = d + (1 if e.abelian else 2)
    if e.total.order <= SUBGROUP_LIMIT:
        exact = min_generators(e.total)
        return GenerationReport(
            base_generators=d, total_generators=exact, witness=None, bound=bound, holds=exact <= bound
        )
    witness = generating_witness(e.total, bound, attempts=attempts)
    if witness is None:
        logger.warning("no generating %d-tuple of %s found", bound, e.total.label)
    return GenerationReport(
        base_generators=d,
        total_generators=None,
        witness=witness,
        bound=bound,
        holds=witness is not None,
    )


def _generating_tuple(g: FiniteGroup, size: int) -> list[int]:
    for tup in itertools.combinations(range(g.order), size):
        check_budget()
        if generates(g, tup):
            return list(tup)
    raise CheckFailed(f"no generating {size}-tuple of {g.label}")


class SemidirectGenerators(BaseModel):
    """``d((V : G) x H) <= d(G) + d(H)`` for a nontrivial irreducible ``V``.

    :ivar d_total: ``d((V : G) x H)`` when computed exactly.
    :ivar bound: ``d(G) + d(H)``.
    :ivar tuple_generates: Whether the explicit tuple
        ``(0, g_i, 1), (v, 1, h_1), (0, 1, h_j)`` generates.
    :ivar explicit: The explicit tuple as element indices.
    """

    d_total: int | None = Field(description="d((V:G)xH) if computed exactly.")
    bound: int = Field(description="d(G) + d(H).")
    tuple_generates: bool = Field(description="Whether the explicit tuple generates.")
    explicit: list[int] = Field(description="The explicit tuple as element indices.")

    @property
    def holds(self) -> bool:
        return self.tuple_generates and (self.d_total is None or self.d_total <= self.bound)


def semidirect_product_generators_check(
    g: FiniteGroup, v: GModule, h: FiniteGroup
) -> SemidirectGenerators:
    """Check the generator bound for ``(V : G) x H`` and replay its explicit tuple.

    ``g_1`` is chosen to act nontrivially on the nonzero vector ``v``.

    :raises InvalidInput: If ``V`` is trivial or reducible, or ``H`` is trivial.
    """
    if h.order == 1:
        raise InvalidInput("H must be nontrivial")
    f = v.field
    eye = np.eye(v.dim, dtype=np.int64)
    if all(np.array_equal(m, eye) for m in v.mats):
        raise InvalidInput(f"{v!r} is a trivial module")
    if not is_irreducible(v):
        raise InvalidInput(f"{v!r} is reducible")
    vg = extension_from_cocycle(g, v, None).total
    prod = direct_product(vg, h)
    n, nh = g.order, h.order
    dg, dh = min_generators(g), min_generators(h)
    gtup = _generating_tuple(g, dg)
    htup = _generating_tuple(h, dh)
    rho = v.element_matrices()
    vecs = all_vectors(f, v.dim)[1:]
    first = next(i for i, x in enumerate(gtup) if not np.array_equal(rho[x], eye))
    gtup.insert(0, gtup.pop(first))
    images = f.matmul(vecs, rho[gtup[0]].T)
    vec = vecs[int(np.flatnonzero((images != vecs).any(axis=1))[0])]
    code = int(vector_codes(f, vec))

    def element(vcode: int, x: int, y: int) -> int:
        return (vcode * n + x) * nh + y

    explicit = [element(0, x, h.identity) for x in gtup]
    explicit.append(element(code, g.identity, htup[0]))
    explicit.extend(element(0, g.identity, y) for y in htup[1:])
    d_total = min_generators(prod) if prod.order <= SUBGROUP_LIMIT else None
    return SemidirectGenerators(
        d_total=d_total,
        bound=dg + dh,
        tuple_generates=generates(prod, explicit),
        explicit=explicit,
    )


# census


class CensusRecord(BaseModel):
    """One isomorphism class in an extension census."""

    total_order: int = Field(description="Order of the total group.")
    split: bool | None = Field(description="Whether the extension splits; None if unknown.")
    t_class: list[int] | None = Field(
        default=None, description="Elements of a stabilizer representative (nonabelian only)."
    )


class ExtensionCensus(BaseModel):
    """Minimal extensions of one degree and kernel kind.

    :ivar base: Label of ``G``.
    :ivar degree: ``|K|``.
    :ivar kind: ``abelian`` or ``nonabelian``.
    :ivar count: Number of isomorphism classes.
    :ivar records: One entry per class.
    """

    base: str = Field(description="Label of the base group.")
    degree: int = Field(description="Order of the kernel.")
    kind: Literal["abelian", "nonabelian"] = Field(description="Kernel kind.")
    count: int = Field(description="Number of isomorphism classes.")
    records: list[CensusRecord] = Field(description="One entry per class.")


def _prime_power(n: int) -> tuple[int, int] | None:
    if n < 2:
        return None
    factors = factorint(n)
    if len(factors) != 1:
        return None
    ((p, k),) = factors.items()
    return int(p), int(k)


def min_extension_census(g: FiniteGroup, degrees: Sequence[int], *, max_power: int = 2) -> list[ExtensionCensus]:
    """``e_n^min(G)`` split by kernel kind for every ``n`` in ``degrees``.

    Nonabelian kernels range over ``S^k`` for ``S`` in the simple group table
    and ``k <= max_power``.
    """
    out = []
    for n in degrees:
        pk = _prime_power(n)
        if pk is not None:
            p, k = pk
            records = abelian_minimal_extensions(g, p, k)
            out.append(
                ExtensionCensus(
                    base=g.label,
                    degree=n,
                    kind="abelian",
                    count=len(records),
                    records=[
                        CensusRecord(total_order=r.total.order, split=r.split) for r in records
                    ],
                )
            )
        for name, info in SIMPLE_GROUPS.items():
            for k in range(1, max_power + 1):
                if info.order**k != n:
                    continue
                s = simple_group(name)
                entries = []
                for cls in coupling_classes(g, s, k):
                    chi = cls[0]
                    split: bool | None = None
                    if k == 1 and info.order * g.order <= FIBER_PRODUCT_LIMIT:
                        split = extension_from_coupling(g, s, chi).split
                    elif any(not np.any(c.out_images()) for c in cls):
                        split = True
                    stab = subgroup_class(chi.stabilizer()).members[0]
                    entries.append(
                        CensusRecord(total_order=n * g.order, split=split, t_class=stab.elems.tolist())
                    )
                out.append(
                    ExtensionCensus(
                        base=g.label, degree=n, kind="nonabelian", count=len(entries), records=entries
                    )
                )
    return out


def kernel_is_minimal_normal(e: ExtensionRecord) -> bool:
    """Direct check that the kernel is a minimal normal subgroup of the total group.

    :raises BudgetExceeded: Above :data:`~pgl.groups.NORMAL_LIMIT`.
    """
    require("normal-subgroup-enumeration", NORMAL_LIMIT, e.total.order)
    return any(m == e.kernel for m in minimal_normal_subgroups(e.total))
