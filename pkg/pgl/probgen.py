"""Normal generation probabilities and maximal ideal counts.

For a surjection ``f: H -> G`` with kernel ``R`` the *stable lattice* is the set
of subgroups of ``R`` that are normal in ``H``. Its maximal proper members are
the maximal ``H``-stable subgroups counted by ``m_n^H(R)``, and Moebius
inversion over it gives the probability that ``k`` random elements of ``R``
normally generate ``R`` inside ``H``.

The module side is the same story one level down: maximal left ideals of
``F_p[G]`` and the probability that ``k`` random vectors generate a module.
"""

import itertools
import logging
import math
from collections import Counter
from fractions import Fraction

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from pgl.budget import check_budget, require
from pgl.errors import InvalidInput
from pgl.extensions import (ExtensionRecord, extension_record,
                            extensions_isomorphic, has_section)
from pgl.ffalg import all_vectors, field_make, nullspace_array, rowspace_array, vector_codes
from pgl.groups import (FiniteGroup, GroupHom, Subgroup, generated,
                        min_generators, normal_closure, normal_subgroups_within,
                        quotient)
from pgl.modrep import GModule, regular_module, restrict, simple_modules, spin
from pgl.records import fraction_text

logger = logging.getLogger(__name__)

STABLE_LIMIT = 200
"""Largest kernel order for which the stable lattice is built."""

IDEAL_LIMIT = 100
"""Largest group order for :func:`ideal_census`."""

SUBMODULE_LIMIT = 2048
"""Largest number of submodules enumerated by :func:`submodule_lattice`."""

MODULE_VECTOR_LIMIT = 4096
"""Largest ``|M|`` for :func:`submodule_lattice` and the exhaustive module counts."""

TRANSVERSAL_LIMIT = 10**5
"""Largest number of tuples scanned by :func:`transversal_generation_check`."""

_MC_BLOCK = 10**4


# the stable lattice


class StableLattice:
    """Subgroups of ``R = ker f`` normal in ``H``, with Moebius values ``mu(N, R)``.

    :ivar surjection: The surjection ``f: H -> G``.
    :type surjection: GroupHom
    :ivar kernel: ``R``.
    :type kernel: Subgroup
    :ivar nodes: The stable subgroups sorted by order, ``R`` last.
    :type nodes: list[Subgroup]
    :ivar mobius: ``mobius[i] = mu(nodes[i], R)``.
    :type mobius: list[int]
    """

    def __init__(self, surjection: GroupHom, nodes: list[Subgroup], mobius: list[int]):
        self.surjection = surjection
        self.kernel = nodes[-1]
        self.nodes = nodes
        self.mobius = mobius

    def __repr__(self) -> str:
        return f"StableLattice({self.surjection!r}, nodes={len(self.nodes)})"

    @property
    def group(self) -> FiniteGroup:
        return self.surjection.dom

    def index(self, i: int) -> int:
        return self.kernel.order // self.nodes[i].order

    def maximal(self) -> list[int]:
        """Indices of the maximal proper nodes."""
        top = len(self.nodes) - 1
        out = []
        for i in range(top):
            node = self.nodes[i]
            if not any(
                j != top and self.nodes[j].order > node.order and node.issubset(self.nodes[j])
                for j in range(i + 1, top)
            ):
                out.append(i)
        return out


def _mobius_to_top(nodes: list[Subgroup]) -> list[int]:
    top = len(nodes) - 1
    mu = [0] * len(nodes)
    mu[top] = 1
    for i in range(top - 1, -1, -1):
        mu[i] = -sum(
            mu[j]
            for j in range(i + 1, len(nodes))
            if nodes[j].order > nodes[i].order and nodes[i].issubset(nodes[j])
        )
    return mu


def stable_lattice(f: GroupHom) -> StableLattice:
    """Build the stable lattice of a surjection.

    :param f: A surjective homomorphism ``H -> G``.
    :rtype: StableLattice
    :raises InvalidInput: If ``f`` is not surjective.
    :raises BudgetExceeded: If ``|ker f|`` exceeds :data:`STABLE_LIMIT`.
    """
    if not f.is_surjective():
        raise InvalidInput(f"{f!r} is not surjective")
    r = f.kernel()
    require("stable-lattice", STABLE_LIMIT, r.order)
    nodes = normal_subgroups_within(f.dom, r.elems)
    if nodes[-1] != r:
        raise InvalidInput("the kernel is not the largest stable subgroup")
    mu = _mobius_to_top(nodes)
    logger.debug("stable lattice of %r: %d nodes", f, len(nodes))
    return StableLattice(f, nodes, mu)


def m_counts(lattice: StableLattice) -> dict[int, int]:
    """``n -> m_n^H(R)``, the maximal stable subgroups of index ``n``."""
    counts = Counter(lattice.index(i) for i in lattice.maximal())
    return dict(sorted(counts.items()))


def exact_gen_probability(lattice: StableLattice, k: int) -> Fraction:
    """``P(k) = sum_N mu(N, R) [R:N]^-k`` over the stable lattice."""
    if k < 0:
        raise InvalidInput("k must be non-negative")
    return sum(
        (Fraction(mu, lattice.index(i) ** k) for i, mu in enumerate(lattice.mobius) if mu),
        Fraction(0),
    )


def exhaustive_gen_probability(lattice: StableLattice, k: int) -> Fraction:
    """Count the ``k``-tuples of ``R`` whose normal closure in ``H`` is ``R``.

    Tuples are counted prefix by prefix: the state after ``i`` elements is the
    normal closure of the prefix, so all tuples are covered without listing them.
    """
    if k < 0:
        raise InvalidInput("k must be non-negative")
    h = lattice.group
    r = lattice.kernel
    trivial = Subgroup(h, [h.identity], [])
    closures: dict[bytes, Subgroup] = {trivial.key: trivial}
    memo: dict[tuple[bytes, int], bytes] = {}
    counts: Counter[bytes] = Counter({trivial.key: 1})
    for _ in range(k):
        check_budget()
        nxt: Counter[bytes] = Counter()
        for key, c in counts.items():
            w = closures[key]
            nxt[key] += c * w.order
            for x in r.elems[~w.mask[r.elems]]:
                x = int(x)
                new = memo.get((key, x))
                if new is None:
                    n = normal_closure(h, list(w.gens) + [x])
                    closures.setdefault(n.key, n)
                    new = memo[(key, x)] = n.key
                nxt[new] += c
        counts = nxt
    return Fraction(counts[r.key], r.order**k)


class MonteCarloEstimate(BaseModel):
    """A seeded estimate of ``P(k)``.

    :ivar trials: Number of sampled tuples.
    :ivar successes: Tuples that normally generate ``R``.
    :ivar seed: Seed of the generator.
    """

    trials: int = Field(description="Number of sampled tuples.")
    successes: int = Field(description="Tuples that normally generate R.")
    seed: int = Field(description="Seed of the generator.")

    @property
    def estimate(self) -> float:
        return self.successes / self.trials

    @property
    def stderr(self) -> float:
        p = self.estimate
        return math.sqrt(p * (1 - p) / self.trials)

    def agrees_with(self, exact: Fraction, sigmas: float = 3.0) -> bool:
        if self.stderr == 0:
            return Fraction(self.successes, self.trials) == exact
        return abs(self.estimate - float(exact)) <= sigmas * self.stderr


def monte_carlo_gen_probability(f: GroupHom, k: int, trials: int, seed: int) -> MonteCarloEstimate:
    """Estimate ``P(k)`` by sampling ``k`` uniform elements of ``R`` per trial.

    Trials run in blocks; block ``b`` draws from ``PCG64(SeedSequence([seed, b]))``
    so the estimate depends only on ``(trials, seed)``.
    """
    if trials < 1:
        raise InvalidInput("trials must be positive")
    if k < 0:
        raise InvalidInput("k must be non-negative")
    h = f.dom
    r = f.kernel()
    if k == 0:
        return MonteCarloEstimate(trials=trials, successes=trials if r.order == 1 else 0, seed=seed)
    closures: dict[bytes, int] = {}
    reps: list[Subgroup] = []
    element_closure = np.empty(r.order, dtype=np.int64)
    for i, x in enumerate(r.elems):
        n = normal_closure(h, [int(x)])
        if n.key not in closures:
            closures[n.key] = len(reps)
            reps.append(n)
        element_closure[i] = closures[n.key]
    verdict: dict[tuple[int, ...], bool] = {}
    successes = 0
    for block, start in enumerate(range(0, trials, _MC_BLOCK)):
        check_budget()
        size = min(_MC_BLOCK, trials - start)
        rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, block])))
        picks = element_closure[rng.integers(0, r.order, size=(size, k))]
        rows, inverse = np.unique(np.sort(picks, axis=1), axis=0, return_inverse=True)
        ok = np.zeros(rows.shape[0], dtype=bool)
        for i, row in enumerate(rows):
            key = tuple(sorted(set(row.tolist())))
            if key not in verdict:
                gens = [g for c in key for g in reps[c].gens]
                verdict[key] = generated(h, gens).size == r.order
            ok[i] = verdict[key]
        successes += int(ok[np.ravel(inverse)].sum())
    return MonteCarloEstimate(trials=trials, successes=successes, seed=seed)


class PfrBound(BaseModel):
    """``1 - P(k) <= sum_n m_n^H(R) n^-k``."""

    k: int = Field(description="Number of random elements.")
    failure: str = Field(description="1 - P(k), as num/den.")
    bound: str = Field(description="sum_n m_n n^-k, as num/den.")
    holds: bool = Field(description="Whether failure <= bound.")


def pfr_sum_bound_check(lattice: StableLattice, k: int) -> PfrBound:
    failure = 1 - exact_gen_probability(lattice, k)
    bound = sum((Fraction(m, n**k) for n, m in m_counts(lattice).items()), Fraction(0))
    return PfrBound(
        k=k, failure=fraction_text(failure), bound=fraction_text(bound), holds=failure <= bound
    )


def independence_check(lattice: StableLattice) -> bool:
    """``[R : M_i n M_j] = [R : M_i][R : M_j]`` for distinct maximal nodes."""
    maximal = lattice.maximal()
    r = lattice.kernel
    for i, j in itertools.combinations(maximal, 2):
        meet = lattice.nodes[i].intersection(lattice.nodes[j])
        if r.order // meet.order != lattice.index(i) * lattice.index(j):
            logger.warning("index of %d and %d is not multiplicative", i, j)
            return False
    return True


class StableExtension(BaseModel):
    """The extension ``1 -> R/M -> H/M -> G -> 1`` of one maximal node ``M``."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    node: int = Field(description="Index of M in the lattice.")
    degree: int = Field(description="[R:M].")
    record: ExtensionRecord = Field(description="The extension.", exclude=True)


class StableExtensionMap(BaseModel):
    """Maximal nodes grouped by the isomorphism class of their extension.

    :ivar d: ``d(H)``.
    :ivar buckets: ``(degree, size)`` per isomorphism class.
    :ivar undecided: Comparisons the isomorphism test could not decide; such
        pairs are kept in separate buckets.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    d: int = Field(description="d(H).")
    extensions: list[StableExtension] = Field(description="One extension per maximal node.")
    buckets: list[tuple[int, int]] = Field(description="(degree, size) per isomorphism class.")
    undecided: int = Field(description="Undecided isomorphism comparisons.")

    @property
    def holds(self) -> bool:
        return all(size <= degree**self.d for degree, size in self.buckets)


def _node_extension(f: GroupHom, m: Subgroup) -> ExtensionRecord:
    h, g = f.dom, f.cod
    q, pi = quotient(h, m)
    first = np.empty(q.order, dtype=np.int64)
    first[pi.images[::-1]] = h.elements[::-1]
    proj = GroupHom(q, g, f.images[first])
    kernel = Subgroup(q, pi.images[f.kernel().elems])
    x = kernel.elems
    abelian = bool(np.array_equal(q.mul(x[:, None], x[None, :]), q.mul(x[None, :], x[:, None])))
    return extension_record(
        kernel,
        proj,
        minimal=True,
        abelian=abelian,
        split=has_section(q, proj),
        kernel_shape=f"R/M of order {kernel.order}",
    )


def stable_to_extension_map(f: GroupHom) -> StableExtensionMap:
    """Attach to every maximal stable ``M`` the minimal extension ``H/M -> G``.

    Nodes whose extensions are isomorphic share a bucket; a bucket of degree
    ``n`` holds at most ``n^d(H)`` nodes.
    """
    lattice = stable_lattice(f)
    extensions = [
        StableExtension(node=i, degree=lattice.index(i), record=_node_extension(f, lattice.nodes[i]))
        for i in lattice.maximal()
    ]
    buckets: list[list[StableExtension]] = []
    undecided = 0
    for ext in extensions:
        for bucket in buckets:
            rep = bucket[0]
            if rep.degree != ext.degree:
                continue
            same = extensions_isomorphic(rep.record, ext.record)
            if same is None:
                undecided += 1
            elif same:
                bucket.append(ext)
                break
        else:
            buckets.append([ext])
    return StableExtensionMap(
        d=min_generators(f.dom),
        extensions=extensions,
        buckets=[(b[0].degree, len(b)) for b in buckets],
        undecided=undecided,
    )


# group algebra ideals


class IdealRow(BaseModel):
    """``r_n(G, F_p) <= m^<|_{p^n} <= p^n r_n(G, F_p)`` for one ``n``."""

    n: int = Field(description="Dimension of the quotient.")
    r_n: int = Field(description="r_n(G, F_p).")
    m_ideal: int = Field(description="Maximal left ideals of index p^n.")
    holds: bool = Field(description="Whether the sandwich holds.")


class IdealCensus(BaseModel):
    """Maximal left ideals of ``F_p[G]`` by the dimension of the quotient."""

    group: str = Field(description="Group label.")
    p: int = Field(description="Characteristic.")
    rows: list[IdealRow] = Field(description="One row per dimension 1..n_max.")

    def m(self, n: int) -> int:
        return self.rows[n - 1].m_ideal if 1 <= n <= len(self.rows) else 0


def ideal_census(g: FiniteGroup, p: int, n_max: int) -> IdealCensus:
    """Count maximal left ideals of ``F_p[G]`` as annihilators of nonzero vectors.

    Every maximal left ideal is ``Ann(v)`` for ``v`` in some simple module ``V``,
    and its quotient is ``V``.

    :raises BudgetExceeded: If ``|G|`` exceeds :data:`IDEAL_LIMIT`.
    """
    if n_max < 1:
        raise InvalidInput("n_max must be positive")
    require("ideal-census", IDEAL_LIMIT, g.order)
    field = field_make(p)
    records = simple_modules(g, field)
    seen: dict[int, set[bytes]] = {n: set() for n in range(1, n_max + 1)}
    for rec in records:
        if rec.dim > n_max:
            continue
        require("ideal-vectors", MODULE_VECTOR_LIMIT, p**rec.dim)
        mats = rec.module.element_matrices()
        for v in all_vectors(field, rec.dim)[1:]:
            check_budget()
            images = (mats @ v) % p
            ideal = nullspace_array(field, images.T)
            seen[rec.dim].add(rowspace_array(field, ideal).tobytes())
    rows = []
    for n in range(1, n_max + 1):
        r_n = sum(1 for rec in records if rec.dim == n)
        m = len(seen[n])
        rows.append(IdealRow(n=n, r_n=r_n, m_ideal=m, holds=r_n <= m <= p**n * r_n))
    return IdealCensus(group=g.label, p=p, rows=rows)


# module generation


class SubmoduleLattice:
    """All submodules of a module with Moebius values to the top.

    :ivar module: The module ``M``.
    :ivar bases: Reduced echelon bases sorted by dimension, ``M`` last.
    :ivar mobius: ``mobius[i] = mu(W_i, M)``.
    """

    def __init__(self, module: GModule, bases: list[np.ndarray], mobius: list[int]):
        self.module = module
        self.bases = bases
        self.mobius = mobius

    def __len__(self) -> int:
        return len(self.bases)

    def dims(self) -> list[int]:
        return [b.shape[0] for b in self.bases]


def _span_mask(m: GModule, basis: np.ndarray) -> np.ndarray:
    field = m.field
    mask = np.zeros(field.q**m.dim, dtype=bool)
    if basis.shape[0] == 0:
        mask[0] = True
        return mask
    span = field.matmul(all_vectors(field, basis.shape[0]), basis)
    mask[vector_codes(field, span)] = True
    return mask


def submodule_lattice(m: GModule) -> SubmoduleLattice:
    """Enumerate submodules as sums of cyclic submodules.

    :raises BudgetExceeded: If ``|M|`` exceeds :data:`MODULE_VECTOR_LIMIT` or the
        lattice has more than :data:`SUBMODULE_LIMIT` members.
    """
    field = m.field
    require("submodule-vectors", MODULE_VECTOR_LIMIT, field.q**m.dim)
    found: dict[bytes, np.ndarray] = {}
    masks: dict[bytes, np.ndarray] = {}

    def add(basis: np.ndarray) -> bytes | None:
        mask = _span_mask(m, basis)
        key = mask.tobytes()
        if key in found:
            return None
        require("submodules", SUBMODULE_LIMIT, len(found) + 1)
        found[key] = basis
        masks[key] = mask
        return key

    add(np.zeros((0, m.dim), dtype=np.int64))
    cyclics: list[bytes] = []
    for v in all_vectors(field, m.dim)[1:]:
        check_budget()
        key = add(spin(m, v[None, :]).matrix())
        if key is not None:
            cyclics.append(key)
    layer = list(cyclics)
    while layer:
        check_budget()
        nxt = []
        for a in layer:
            for c in cyclics:
                if not (masks[c] & ~masks[a]).any():
                    continue
                joined = rowspace_array(field, np.vstack([found[a], found[c]]))
                key = add(joined)
                if key is not None:
                    nxt.append(key)
        layer = nxt
    keys = sorted(found, key=lambda k: (found[k].shape[0], found[k].tolist()))
    bases = [found[k] for k in keys]
    stack = np.array([masks[k] for k in keys], dtype=np.float64)
    overlap = stack @ stack.T
    sizes = stack.sum(axis=1)
    contained = overlap == sizes[:, None]
    top = len(keys) - 1
    mu = [0] * len(keys)
    mu[top] = 1
    for i in range(top - 1, -1, -1):
        mu[i] = -sum(mu[j] for j in range(i + 1, len(keys)) if contained[i, j] and sizes[j] > sizes[i])
    logger.debug("%r has %d submodules", m, len(keys))
    return SubmoduleLattice(m, bases, mu)


def module_gen_probability(m: GModule, k: int) -> Fraction:
    """Probability that ``k`` uniform vectors generate ``M`` as a module."""
    if k < 0:
        raise InvalidInput("k must be non-negative")
    lattice = submodule_lattice(m)
    q = m.field.q
    return sum(
        (
            Fraction(mu, q ** ((m.dim - dim) * k))
            for mu, dim in zip(lattice.mobius, lattice.dims())
            if mu
        ),
        Fraction(0),
    )


def _basis_key(basis: np.ndarray) -> bytes:
    return bytes([basis.shape[0]]) + basis.tobytes()


def module_gen_probability_exhaustive(m: GModule, k: int) -> Fraction:
    """Count generating ``k``-tuples prefix by prefix, tracking the spun submodule."""
    field = m.field
    size = field.q**m.dim
    require("module-vectors", MODULE_VECTOR_LIMIT, size)
    vectors = all_vectors(field, m.dim)
    zero = np.zeros((0, m.dim), dtype=np.int64)
    spans: dict[bytes, np.ndarray] = {_basis_key(zero): zero}
    memo: dict[tuple[bytes, int], bytes] = {}
    counts: Counter[bytes] = Counter({_basis_key(zero): 1})
    for _ in range(k):
        check_budget()
        nxt: Counter[bytes] = Counter()
        for key, c in counts.items():
            basis = spans[key]
            for code in range(size):
                new = memo.get((key, code))
                if new is None:
                    grown = spin(m, np.vstack([basis, vectors[code][None, :]])).matrix()
                    new = _basis_key(grown)
                    spans.setdefault(new, grown)
                    memo[(key, code)] = new
                nxt[new] += c
        counts = nxt
    full = sum(c for key, c in counts.items() if spans[key].shape[0] == m.dim)
    return Fraction(full, size**k)


class RegularGenBound(BaseModel):
    """``P(k) >= 1 - sum_n m^<|_n n^-k`` for the regular module ``F_p[G]``."""

    group: str = Field(description="Group label.")
    p: int = Field(description="Characteristic.")
    k: int = Field(description="Number of random elements.")
    probability: str = Field(description="P(k), as num/den.")
    bound: str = Field(description="1 - sum_n m_n n^-k, as num/den.")
    holds: bool = Field(description="Whether probability >= bound.")


def regular_gen_bound_check(g: FiniteGroup, p: int, k: int) -> RegularGenBound:
    field = field_make(p)
    reg = regular_module(g, field)
    prob = module_gen_probability(reg, k)
    census = ideal_census(g, p, g.order)
    bound = 1 - sum(
        (Fraction(row.m_ideal, p ** (row.n * k)) for row in census.rows), Fraction(0)
    )
    return RegularGenBound(
        group=g.label,
        p=p,
        k=k,
        probability=fraction_text(prob),
        bound=fraction_text(bound),
        holds=prob >= bound,
    )


class TransversalReport(BaseModel):
    """Module generators of ``F_p[G]`` times a transversal generate over ``F_p[H]``."""

    group: str = Field(description="Group label.")
    subgroup_order: int = Field(description="|H|.")
    k: int = Field(description="Tuple length.")
    tuples: int = Field(description="Tuples scanned.")
    generating: int = Field(description="Tuples generating F_p[G] over F_p[G].")
    transferred: int = Field(description="Of those, tuples whose translates generate over F_p[H].")

    @property
    def holds(self) -> bool:
        return self.generating == self.transferred


def _right_coset_reps(g: FiniteGroup, h: Subgroup) -> np.ndarray:
    label = g.mul(h.elems[:, None], g.elements[None, :]).min(axis=0)
    return np.unique(label)


def transversal_generation_check(g: FiniteGroup, h: Subgroup, p: int, k: int) -> TransversalReport:
    """Scan every ``k``-tuple of ``F_p[G]``.

    With ``G = H t_1 u ... u H t_m``, ``F_p[G]`` is free over ``F_p[H]`` on the
    ``t_i``; if ``x_1..x_k`` generate over ``F_p[G]`` then the ``t_i x_j``
    generate over ``F_p[H]``.
    """
    if h.parent is not g:
        raise InvalidInput("subgroup of a different group")
    field = field_make(p)
    reg = regular_module(g, field)
    require("transversal-tuples", TRANSVERSAL_LIMIT, p ** (g.order * k))
    sub = restrict(reg, h)
    reps = _right_coset_reps(g, h)
    translate = np.array([reg.element_matrix(int(t)) for t in reps])
    vectors = all_vectors(field, g.order)
    generating = transferred = 0
    for codes in itertools.product(range(vectors.shape[0]), repeat=k):
        check_budget()
        xs = vectors[list(codes)]
        if len(spin(reg, xs)) < reg.dim:
            continue
        generating += 1
        moved = (translate @ xs.T).transpose(0, 2, 1).reshape(-1, g.order) % p
        if len(spin(sub, moved)) == sub.dim:
            transferred += 1
    return TransversalReport(
        group=g.label,
        subgroup_order=h.order,
        k=k,
        tuples=vectors.shape[0] ** k,
        generating=generating,
        transferred=transferred,
    )
