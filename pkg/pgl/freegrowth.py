"""Representations of free groups into ``GL_n(F_p)``.

A homomorphism from the free group of rank ``d`` is a ``d``-tuple of invertible
matrices. The census enumerates every tuple, keeps the irreducible ones and
splits them into orbits under simultaneous conjugation; the orbits are the
isomorphism classes counted by ``r_n(F_d, F_p)``.

Matrices are ordered row-major lexicographically, tuples lexicographically by
their components, and every class is represented by its least tuple.
"""

import functools
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

import numpy as np
import sympy
from pydantic import BaseModel, Field

from pgl.budget import check_budget, require
from pgl.errors import CheckFailed, InvalidInput
from pgl.ffalg import (EchelonBasis, all_vectors, batch_rank, field_make,
                       intertwiner_basis, inverse_array, projective_points)
from pgl.groups import FiniteGroup, min_generators
from pgl.modrep import r_counts
from pgl.records import fraction_text

logger = logging.getLogger(__name__)

CENSUS_BUDGET = 10**8
"""Largest number of tuples ``|GL_n(F_p)|^d`` a census enumerates."""

GL_LIMIT = 2100
"""Largest ``|GL_n(F_p)|`` whose conjugation table is built."""

EXHAUSTIVE_LIMIT = 10**6
"""Largest ``q^(n^2)`` for the exhaustive order counts."""

_CHUNK = 1 << 14


def gl_order(n: int, q: int) -> int:
    """``|GL_n(F_q)| = q^(n(n-1)/2) prod_{i=1..n} (q^i - 1)``."""
    if n < 0 or q < 2:
        raise InvalidInput(f"no general linear group GL_{n}(F_{q})")
    return q ** (n * (n - 1) // 2) * math.prod(q**i - 1 for i in range(1, n + 1))


def parabolic_order(n1: int, n2: int, q: int) -> int:
    """Order of the block upper triangular subgroup ``P(n1, n2)`` of ``GL_{n1+n2}(F_q)``."""
    if n1 < 1 or n2 < 1:
        raise InvalidInput("parabolic blocks must be nonempty")
    return gl_order(n1, q) * gl_order(n2, q) * q ** (n1 * n2)


def _all_matrices(n: int, q: int) -> np.ndarray:
    """Every ``n x n`` matrix over ``F_q``, in row-major lexicographic order."""
    require("exhaustive-matrices", EXHAUSTIVE_LIMIT, q ** (n * n))
    prime, e = _prime_power(q)
    field = field_make(prime, e)
    return all_vectors(field, n * n)[:, ::-1].reshape(-1, n, n)


def _prime_power(q: int) -> tuple[int, int]:
    factors = sympy.factorint(q)
    if len(factors) != 1:
        raise InvalidInput(f"{q} is not a prime power")
    (p, e), = factors.items()
    return int(p), int(e)


def gl_order_exhaustive(n: int, q: int) -> int:
    """Count the invertible ``n x n`` matrices over ``F_q`` one by one."""
    p, e = _prime_power(q)
    mats = _all_matrices(n, q)
    return int(np.count_nonzero(batch_rank(field_make(p, e), mats) == n))


def parabolic_order_exhaustive(n1: int, n2: int, q: int) -> int:
    """Count invertible matrices whose lower left ``n2 x n1`` block vanishes."""
    n = n1 + n2
    p, e = _prime_power(q)
    mats = _all_matrices(n, q)
    mats = mats[~mats[:, n1:, :n1].any(axis=(1, 2))]
    return int(np.count_nonzero(batch_rank(field_make(p, e), mats) == n))


class _GLData:
    """``GL_n(F_p)`` as an indexed set with its conjugation table.

    :ivar mats: The invertible matrices, sorted lexicographically.
    :ivar conj: ``conj[g, a]`` is the index of ``g a g^-1``.
    """

    def __init__(self, n: int, p: int):
        self.n = n
        self.p = p
        self.field = field_make(p)
        order = gl_order(n, p)
        require("gl-order", GL_LIMIT, order)
        mats = _all_matrices(n, p)
        self.mats = mats[batch_rank(self.field, mats) == n]
        if self.mats.shape[0] != order:
            raise CheckFailed(f"found {self.mats.shape[0]} invertible matrices, expected {order}")
        self.order = order
        self._powers = p ** np.arange(n * n - 1, -1, -1, dtype=np.int64)
        self.codes = self.mats.reshape(order, -1) @ self._powers
        self.conj = np.empty((order, order), dtype=np.int64)
        for g in range(order):
            check_budget()
            ginv = inverse_array(self.field, self.mats[g])
            images = (self.mats[g] @ self.mats @ ginv) % p
            self.conj[g] = self.index_of(images)
        self.points = projective_points(self.field, np.eye(n, dtype=np.int64)) if n > 1 else None

    def index_of(self, mats: np.ndarray) -> np.ndarray:
        codes = mats.reshape(mats.shape[0], -1) @ self._powers
        return np.searchsorted(self.codes, codes)

    def components(self, ids: np.ndarray, d: int) -> np.ndarray:
        """Component indices of tuple ids, most significant first."""
        weights = self.order ** np.arange(d - 1, -1, -1, dtype=np.int64)
        return (ids[:, None] // weights) % self.order

    def tuple_ids(self, comps: np.ndarray) -> np.ndarray:
        d = comps.shape[-1]
        weights = self.order ** np.arange(d - 1, -1, -1, dtype=np.int64)
        return comps @ weights


@functools.cache
def _gl_data(n: int, p: int) -> _GLData:
    return _GLData(n, p)


def _invariant_line(mats: np.ndarray, points: np.ndarray, p: int) -> np.ndarray:
    """Whether some point spans a line fixed by every matrix of the tuple.

    :param mats: Tuples of shape ``(t, d, n, n)``.
    :param points: Projective points of shape ``(l, n)``.
    """
    images = np.einsum("tdij,lj->tdli", mats, points) % p
    n = points.shape[1]
    fixed = np.ones(images.shape[:1] + images.shape[2:3], dtype=bool)
    for i in range(n):
        for j in range(i + 1, n):
            minor = (points[:, i] * images[..., j] - points[:, j] * images[..., i]) % p
            fixed &= ~minor.any(axis=1)
    return fixed.any(axis=1)


def _spans_everything(data: _GLData, tup: np.ndarray) -> bool:
    field = data.field
    for v in data.points:
        basis = EchelonBasis(field, data.n)
        queue = [basis.add(v)]
        while queue and len(basis) < data.n:
            batch = np.array(queue)
            queue = []
            for a in tup:
                for row in field.matmul(batch, a.T):
                    w = basis.add(row)
                    if w is not None:
                        queue.append(w)
        if len(basis) < data.n:
            return False
    return True


def _irreducible_mask(data: _GLData, comps: np.ndarray) -> np.ndarray:
    if data.n == 1:
        return np.ones(comps.shape[0], dtype=bool)
    mats = data.mats[comps]
    if data.n <= 3:
        reducible = _invariant_line(mats, data.points, data.p)
        if data.n == 3:
            reducible |= _invariant_line(mats.transpose(0, 1, 3, 2), data.points, data.p)
        return ~reducible
    return np.array([_spans_everything(data, tup) for tup in mats], dtype=bool)


def _irreducible_chunk(n: int, p: int, d: int, start: int, stop: int) -> np.ndarray:
    """Irreducible tuple ids in ``[start, stop)``."""
    data = _gl_data(n, p)
    ids = np.arange(start, stop, dtype=np.int64)
    return ids[_irreducible_mask(data, data.components(ids, d))]


def _irreducible_ids(n: int, p: int, d: int, workers: int) -> np.ndarray:
    total = gl_order(n, p) ** d
    bounds = [(s, min(s + _CHUNK, total)) for s in range(0, total, _CHUNK)]
    if workers > 1 and len(bounds) > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            parts = list(
                executor.map(
                    _irreducible_chunk,
                    *zip(*[(n, p, d, s, e) for s, e in bounds]),
                )
            )
    else:
        parts = []
        for s, e in bounds:
            check_budget()
            parts.append(_irreducible_chunk(n, p, d, s, e))
    return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)


class TupleClass(BaseModel):
    """One conjugacy class of irreducible tuples.

    :ivar rep: The lexicographically least tuple of the class.
    :ivar orbit_size: Number of tuples in the class.
    :ivar endo_degree: ``e`` with ``End = F_{p^e}``.
    """

    rep: list[list[list[int]]] = Field(description="Least tuple of the class.")
    orbit_size: int = Field(description="Number of tuples in the class.")
    endo_degree: int = Field(description="Degree of the endomorphism field.")


class TupleCensus(BaseModel):
    """All homomorphisms ``F_d -> GL_n(F_p)`` up to conjugation.

    :ivar total: ``|GL_n(F_p)|^d``.
    :ivar irreducible: Irreducible tuples.
    :ivar classes: One entry per isomorphism class of irreducible representations.
    """

    d: int = Field(description="Rank of the free group.")
    n: int = Field(description="Dimension.")
    p: int = Field(description="Characteristic.")
    total: int = Field(description="|GL_n(F_p)|^d.")
    irreducible: int = Field(description="Irreducible tuples.")
    classes: list[TupleClass] = Field(description="Isomorphism classes of irreducible tuples.")

    @property
    def iso_classes(self) -> int:
        return len(self.classes)


def _check_census_args(d: int, n: int, p: int) -> None:
    if d < 1 or n < 1:
        raise InvalidInput("rank and dimension must be positive")
    if not sympy.isprime(p):
        raise InvalidInput(f"{p} is not prime")
    require("census", CENSUS_BUDGET, gl_order(n, p) ** d)


def tuple_census(d: int, n: int, p: int, *, workers: int = 1) -> TupleCensus:
    """Enumerate irreducible ``d``-tuples in ``GL_n(F_p)`` and their conjugacy classes.

    :param d: Rank of the free group.
    :param n: Dimension.
    :param p: A prime.
    :param workers: Processes used for the irreducibility scan. The result
        does not depend on it.
    :rtype: TupleCensus
    :raises BudgetExceeded: If ``|GL_n(F_p)|^d`` exceeds :data:`CENSUS_BUDGET`.
    """
    _check_census_args(d, n, p)
    data = _gl_data(n, p)
    irr = _irreducible_ids(n, p, d, workers)
    logger.debug("census d=%d n=%d p=%d: %d irreducible tuples", d, n, p, irr.size)
    seen = np.zeros(irr.size, dtype=bool)
    classes = []
    for pos in range(irr.size):
        if seen[pos]:
            continue
        check_budget()
        comps = data.components(irr[pos : pos + 1], d)[0]
        orbit = np.unique(data.tuple_ids(data.conj[:, comps]))
        where = np.searchsorted(irr, orbit)
        if np.any(where >= irr.size) or np.any(irr[np.minimum(where, irr.size - 1)] != orbit):
            raise CheckFailed("conjugate of an irreducible tuple is reducible")
        seen[where] = True
        rep = data.mats[comps]
        endo = intertwiner_basis(data.field, list(rep), list(rep)).shape[0]
        if orbit.size * (p**endo - 1) != data.order:
            raise CheckFailed(
                f"orbit of size {orbit.size} with endomorphism degree {endo} in GL_{n}(F_{p})"
            )
        classes.append(
            TupleClass(rep=rep.tolist(), orbit_size=int(orbit.size), endo_degree=endo)
        )
    census = TupleCensus(
        d=d, n=n, p=p, total=data.order**d, irreducible=int(irr.size), classes=classes
    )
    if sum(c.orbit_size for c in classes) != census.irreducible:
        raise CheckFailed("orbit sizes do not add up to the irreducible tuples")
    return census


def burnside_class_count(census: TupleCensus) -> int:
    """Recount the classes as the average number of irreducible tuples fixed by conjugation.

    The fixed tuples of ``g`` are the tuples inside its centralizer; the count is
    a class function, so one element per conjugacy class is enough.
    """
    d, n, p = census.d, census.n, census.p
    _check_census_args(d, n, p)
    data = _gl_data(n, p)
    done = np.zeros(data.order, dtype=bool)
    fixed = 0
    for g in range(data.order):
        if done[g]:
            continue
        check_budget()
        cls = np.unique(data.conj[:, g])
        done[cls] = True
        centralizer = np.flatnonzero(data.conj[g] == np.arange(data.order))
        k = centralizer.size
        count = 0
        for start in range(0, k**d, _CHUNK):
            local = np.arange(start, min(start + _CHUNK, k**d), dtype=np.int64)
            digits = (local[:, None] // k ** np.arange(d - 1, -1, -1, dtype=np.int64)) % k
            count += int(np.count_nonzero(_irreducible_mask(data, centralizer[digits])))
        fixed += count * cls.size
    if fixed % data.order:
        raise CheckFailed("Burnside sum is not divisible by the group order")
    return fixed // data.order


class FreeBoundReport(BaseModel):
    """The two lower bounds for ``r_n(F_d, F_p)`` against a census.

    Rationals are written ``"num/den"``.
    """

    d: int = Field(description="Rank of the free group.")
    n: int = Field(description="Dimension.")
    p: int = Field(description="Characteristic.")
    iso_classes: int = Field(description="r_n(F_d, F_p) from the census.")
    c_p_bound: str = Field(description="c_p^d p^(n^2 (d-1)) with c_p = 1 - 1/p - 1/p^2.")
    parabolic_bound: int = Field(
        description="|GL_n|^(d-1) minus the sum of |P(k, n-k)|^(d-1) over 0 < k < n."
    )
    holds: bool = Field(description="Both bounds hold.")


def c_p_bound(d: int, n: int, p: int) -> Fraction:
    c_p = 1 - Fraction(1, p) - Fraction(1, p * p)
    return c_p**d * p ** (n * n * (d - 1))


def parabolic_bound(d: int, n: int, p: int) -> int:
    return gl_order(n, p) ** (d - 1) - sum(
        parabolic_order(k, n - k, p) ** (d - 1) for k in range(1, n)
    )


def free_bound_check(census: TupleCensus) -> FreeBoundReport:
    """Compare the census count with both lower bounds in exact arithmetic."""
    d, n, p = census.d, census.n, census.p
    cp = c_p_bound(d, n, p)
    pb = parabolic_bound(d, n, p)
    classes = census.iso_classes
    return FreeBoundReport(
        d=d,
        n=n,
        p=p,
        iso_classes=classes,
        c_p_bound=fraction_text(cp),
        parabolic_bound=pb,
        holds=classes >= cp and classes >= pb,
    )


class SylowReport(BaseModel):
    """``|Syl_p(GL_n(F_q))| <= p^n q^(p n)``."""

    n: int = Field(description="Dimension.")
    q: int = Field(description="Field size.")
    p: int = Field(description="Prime not dividing q.")
    p_part: int = Field(description="p-part of |GL_n(F_q)|.")
    bound: int = Field(description="p^n q^(p n).")
    holds: bool = Field(description="Whether p_part <= bound.")


def p_part(m: int, p: int) -> int:
    part = 1
    while m % p == 0:
        m //= p
        part *= p
    return part


def sylow_bound_check(n: int, q: int, p: int) -> SylowReport:
    """Exact ``p``-part of ``|GL_n(F_q)|`` against ``p^n q^(p n)``.

    :raises InvalidInput: If ``p`` is not a prime or divides ``q``.
    """
    if not sympy.isprime(p):
        raise InvalidInput(f"{p} is not prime")
    _prime_power(q)
    if q % p == 0:
        raise InvalidInput(f"{p} divides the field size {q}")
    part = p_part(gl_order(n, q), p)
    bound = p**n * q ** (p * n)
    return SylowReport(n=n, q=q, p=p, p_part=part, bound=bound, holds=part <= bound)


class PGroupReport(BaseModel):
    """``r_n(G, F_q) <= |Syl_p(GL_n(F_q))|^d(G)`` for a ``p``-group ``G``."""

    group: str = Field(description="Group label.")
    q: int = Field(description="Field size, coprime to p.")
    n: int = Field(description="Dimension.")
    r_n: int = Field(description="r_n(G, F_q).")
    sylow_order: int = Field(description="|Syl_p(GL_n(F_q))|.")
    d: int = Field(description="d(G).")
    holds: bool = Field(description="Whether r_n <= sylow_order^d.")


def pgroup_rep_bound_check(g: FiniteGroup, q: int, n: int) -> PGroupReport:
    """Irreducibles of a ``d``-generated ``p``-group against the Sylow subgroup of ``GL_n(F_q)``.

    Every homomorphism of ``G`` lands in a Sylow ``p``-subgroup, and is fixed by
    the images of ``d(G)`` generators.
    """
    if g.order == 1:
        raise InvalidInput("the trivial group is not a p-group for any p")
    p, _ = _prime_power(g.order)
    char, e = _prime_power(q)
    if char == p:
        raise InvalidInput(f"field size {q} is not coprime to {p}")
    r_n = r_counts(g, field_make(char, e), n).r(n)
    sylow = p_part(gl_order(n, q), p)
    d = min_generators(g)
    return PGroupReport(
        group=g.label, q=q, n=n, r_n=r_n, sylow_order=sylow, d=d, holds=r_n <= sylow**d
    )
