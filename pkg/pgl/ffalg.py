"""Exact arithmetic over finite fields and dense matrices over them.

Field elements are encoded as integers ``0 <= x < q``: for ``q = p^e`` the
integer ``sum(c_i * p^i)`` stands for the polynomial ``sum(c_i * t^i)`` modulo the
field's defining polynomial. Prime field elements therefore keep their usual
integer value inside every extension of the same characteristic. All routines
accept and return numpy ``int64`` arrays so that matrix work stays vectorized.
"""

import functools
import logging
from typing import Sequence

import numpy as np
import sympy
from pydantic import BaseModel, ConfigDict, Field

from pgl.errors import BudgetExceeded, InvalidInput

logger = logging.getLogger(__name__)

FIELD_LIMIT = 2**16
"""Largest admissible field size ``p^e``."""

_MATMUL_CHUNK = 1 << 22


class FqField:
    """The finite field with ``p^e`` elements.

    Instances are obtained from :func:`field_make`, which caches them, so two
    fields with the same ``(p, e)`` are the same object.

    :ivar p: The characteristic.
    :type p: int
    :ivar e: The degree over the prime field.
    :type e: int
    :ivar q: The number of elements.
    :type q: int
    :ivar modulus: Coefficients (lowest degree first) of the monic defining
        polynomial, ``None`` for prime fields.
    :type modulus: tuple[int, ...] | None
    """

    def __init__(self, p: int, e: int, modulus: tuple[int, ...] | None):
        self.p = p
        self.e = e
        self.q = p**e
        self.modulus = modulus
        self._powers = np.array([p**i for i in range(e)], dtype=np.int64)
        self._exp, self._log, self._inv = self._build_tables()

    def __repr__(self) -> str:
        return f"F{self.q}" if self.e == 1 else f"F{self.p}^{self.e}"

    @property
    def label(self) -> str:
        return f"F{self.q}"

    # scalar polynomial arithmetic, only used while building the tables

    def _digits_scalar(self, x: int) -> list[int]:
        return [(x // self.p**i) % self.p for i in range(self.e)]

    def _encode(self, coeffs: Sequence[int]) -> int:
        return sum(int(c) * self.p**i for i, c in enumerate(coeffs))

    def _mulmod_scalar(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a * b) % self.p
        p, e = self.p, self.e
        assert self.modulus is not None
        da, db = self._digits_scalar(a), self._digits_scalar(b)
        prod = [0] * (2 * e - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        for k in range(2 * e - 2, e - 1, -1):
            c = prod[k]
            if c:
                for i in range(e + 1):
                    prod[k - e + i] = (prod[k - e + i] - c * self.modulus[i]) % p
        return self._encode(prod[:e])

    def _build_tables(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        q = self.q
        order = q - 1
        prime_divisors = list(sympy.factorint(order)) if order > 1 else []
        generator = None
        for candidate in range(1, q):
            if all(
                self._pow_scalar(candidate, order // r) != 1 for r in prime_divisors
            ):
                generator = candidate
                break
        if generator is None:
            raise RuntimeError(f"no multiplicative generator found for {self!r}")
        exp = np.zeros(max(order, 1), dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        x = 1
        for i in range(order):
            exp[i] = x
            log[x] = i
            x = self._mulmod_scalar(x, generator)
        if x != 1 or len(set(exp.tolist())) != order:
            raise RuntimeError(f"element {generator} does not generate {self!r}")
        inv = np.zeros(q, dtype=np.int64)
        nonzero = np.arange(1, q)
        inv[nonzero] = exp[(order - log[nonzero]) % order]
        self.generator = generator
        return exp, log, inv

    def _pow_scalar(self, a: int, n: int) -> int:
        result, base = 1, a
        while n:
            if n & 1:
                result = self._mulmod_scalar(result, base)
            base = self._mulmod_scalar(base, base)
            n >>= 1
        return result

    # vectorized arithmetic

    def digits(self, a) -> np.ndarray:
        """Coefficient vectors of the elements ``a`` (new trailing axis of length e)."""
        return (np.asarray(a, dtype=np.int64)[..., None] // self._powers) % self.p

    def from_digits(self, d: np.ndarray) -> np.ndarray:
        return (np.asarray(d, dtype=np.int64) * self._powers).sum(axis=-1)

    def add(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return np.bitwise_xor(a, b)
        if self.e == 1:
            return (a + b) % self.p
        return self.from_digits((self.digits(a) + self.digits(b)) % self.p)

    def neg(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return a.copy()
        if self.e == 1:
            return (-a) % self.p
        return self.from_digits((-self.digits(a)) % self.p)

    def sub(self, a, b) -> np.ndarray:
        if self.e == 1:
            return (np.asarray(a, dtype=np.int64) - np.asarray(b, dtype=np.int64)) % self.p
        return self.add(a, self.neg(b))

    def mul(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.e == 1:
            return (a * b) % self.p
        res = self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, res)

    def inv(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return self._inv[a]

    def power(self, a, n: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if n == 0:
            return np.ones_like(a)
        res = self._exp[(self._log[a] * n) % (self.q - 1)]
        return np.where(a == 0, 0, res)

    def total(self, x: np.ndarray, axis: int) -> np.ndarray:
        """Field sum of ``x`` along ``axis``."""
        x = np.asarray(x, dtype=np.int64)
        if self.e == 1:
            return x.sum(axis=axis) % self.p
        if self.p == 2:
            return np.bitwise_xor.reduce(x, axis=axis)
        return self.from_digits(self.digits(x).sum(axis=axis) % self.p)

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.e == 1:
            return (a @ b) % self.p
        m, k = a.shape
        n = b.shape[1]
        out = np.zeros((m, n), dtype=np.int64)
        step = max(1, _MATMUL_CHUNK // max(1, k * n))
        for start in range(0, m, step):
            block = self.mul(a[start : start + step, :, None], b[None, :, :])
            out[start : start + step] = self.total(block, axis=1)
        return out

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    def eye(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=np.int64)

    def zeros(self, shape) -> np.ndarray:
        return np.zeros(shape, dtype=np.int64)


@functools.cache
def field_make(p: int, e: int = 1) -> FqField:
    """Construct the field ``F_{p^e}``.

    The defining polynomial is the first monic irreducible polynomial of degree
    ``e`` when the lower coefficients ``(c_0, ..., c_{e-1})`` are read as the
    base-``p`` integer ``sum(c_i p^i)`` and enumerated upwards.

    :param p: The characteristic, a prime.
    :type p: int
    :param e: The extension degree, at least 1.
    :type e: int
    :return: The (cached) field.
    :rtype: FqField
    :raises InvalidInput: If ``p`` is not prime or ``e < 1``.
    :raises BudgetExceeded: If ``p^e`` exceeds :data:`FIELD_LIMIT`.
    """
    if not sympy.isprime(p):
        raise InvalidInput(f"characteristic {p} is not prime")
    if e < 1:
        raise InvalidInput(f"extension degree must be positive, got {e}")
    if p**e > FIELD_LIMIT:
        raise BudgetExceeded("field-size", FIELD_LIMIT, p**e)
    if e == 1:
        return FqField(p, 1, None)
    x = sympy.Symbol("x")
    for n in range(p**e):
        low = [(n // p**i) % p for i in range(e)]
        coeffs = low + [1]
        if sympy.Poly(list(reversed(coeffs)), x, modulus=p).is_irreducible:
            logger.debug("F_%d^%d defined by coefficients %s", p, e, coeffs)
            return FqField(p, e, tuple(coeffs))
    raise RuntimeError(f"no irreducible polynomial of degree {e} over F_{p}")


def frobenius(x, field: FqField, d: int = 1) -> np.ndarray:
    """Apply ``x -> x^(p^d)`` elementwise.

    :param x: Element or array of elements of ``field``.
    :param field: The field.
    :type field: FqField
    :param d: The power of the Frobenius automorphism.
    :type d: int
    :return: The images, same shape as ``x``.
    :rtype: numpy.ndarray
    """
    if field.e == 1:
        return np.asarray(x, dtype=np.int64).copy()
    return field.power(x, pow(field.p, d % field.e, field.q - 1) if d % field.e else 1)


class Matrix:
    """A dense matrix over a finite field.

    :ivar field: The coefficient field.
    :type field: FqField
    :ivar entries: Row-major ``int64`` array of element codes (read-only).
    :type entries: numpy.ndarray
    """

    __slots__ = ("field", "entries")

    def __init__(self, field: FqField, entries):
        arr = np.array(entries, dtype=np.int64, ndmin=2)
        if arr.size and (arr.min() < 0 or arr.max() >= field.q):
            raise InvalidInput(f"matrix entries outside {field!r}")
        arr.setflags(write=False)
        self.field = field
        self.entries = arr

    @classmethod
    def identity(cls, field: FqField, n: int) -> "Matrix":
        return cls(field, field.eye(n))

    @classmethod
    def zeros(cls, field: FqField, rows: int, cols: int) -> "Matrix":
        return cls(field, np.zeros((rows, cols), dtype=np.int64))

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return Matrix(self.field, self.field.matmul(self.entries, other.entries))

    def __add__(self, other: "Matrix") -> "Matrix":
        return Matrix(self.field, self.field.add(self.entries, other.entries))

    def __sub__(self, other: "Matrix") -> "Matrix":
        return Matrix(self.field, self.field.sub(self.entries, other.entries))

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Matrix)
            and other.field is self.field
            and np.array_equal(self.entries, other.entries)
        )

    def __hash__(self) -> int:
        return hash((self.field.q, self.entries.shape, self.entries.tobytes()))

    def __repr__(self) -> str:
        return f"Matrix({self.field!r}, {self.entries.tolist()})"

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.entries.T)

    def rank(self) -> int:
        return rank_array(self.field, self.entries)

    def nullspace(self) -> list["Matrix"]:
        basis = nullspace_array(self.field, self.entries)
        return [Matrix(self.field, row.reshape(-1, 1)) for row in basis]

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows

    def inverse(self) -> "Matrix":
        return Matrix(self.field, inverse_array(self.field, self.entries))

    def tolist(self) -> list[list[int]]:
        return self.entries.tolist()


def rref_array(field: FqField, a: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of ``a`` and its pivot columns."""
    m = np.array(a, dtype=np.int64, ndmin=2)
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(m[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            m[[r, i]] = m[[i, r]]
        if m[r, c] != 1:
            m[r] = field.mul(m[r], field.inv(m[r, c]))
        column = m[:, c].copy()
        column[r] = 0
        others = np.flatnonzero(column)
        if others.size:
            m[others] = field.sub(m[others], field.mul(column[others, None], m[r][None, :]))
        pivots.append(c)
        r += 1
    return m, pivots


def rank_array(field: FqField, a: np.ndarray) -> int:
    return len(rref_array(field, a)[1])


def batch_rank(field: FqField, mats: np.ndarray) -> np.ndarray:
    """Ranks of a stack of matrices of shape ``(b, rows, cols)``.

    Gaussian elimination runs on the whole stack at once; every matrix keeps
    its own pivot row counter.
    """
    m = np.array(mats, dtype=np.int64)
    if m.ndim != 3:
        raise InvalidInput("batch_rank expects a stack of matrices")
    count, rows, cols = m.shape
    rank = np.zeros(count, dtype=np.int64)
    row_ids = np.arange(rows)
    for c in range(cols):
        cand = (m[:, :, c] != 0) & (row_ids[None, :] >= rank[:, None])
        has = cand.any(axis=1)
        if not has.any():
            continue
        b = np.flatnonzero(has)
        src = cand[b].argmax(axis=1)
        dst = rank[b]
        pivot_rows = m[b, src].copy()
        m[b, src] = m[b, dst]
        pivot_rows = field.mul(pivot_rows, field.inv(pivot_rows[:, c])[:, None])
        m[b, dst] = pivot_rows
        factors = m[b, :, c].copy()
        factors[np.arange(b.size), dst] = 0
        m[b] = field.sub(m[b], field.mul(factors[:, :, None], pivot_rows[:, None, :]))
        rank[b] += 1
    return rank


def nullspace_array(field: FqField, a: np.ndarray) -> np.ndarray:
    """Basis (as rows) of ``{x : a @ x = 0}``."""
    r, pivots = rref_array(field, a)
    cols = r.shape[1]
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    if not free:
        return basis
    basis[np.arange(len(free)), free] = 1
    if pivots:
        basis[:, pivots] = field.neg(r[: len(pivots)][:, free].T)
    return basis


def rowspace_array(field: FqField, a: np.ndarray) -> np.ndarray:
    """The nonzero rows of the reduced row echelon form of ``a``."""
    r, pivots = rref_array(field, a)
    return r[: len(pivots)]


def inverse_array(field: FqField, a: np.ndarray) -> np.ndarray:
    n = a.shape[0]
    if a.shape != (n, n):
        raise InvalidInput("only square matrices can be inverted")
    r, pivots = rref_array(field, np.hstack([a, field.eye(n)]))
    if pivots[:n] != list(range(n)) or len(pivots) < n or pivots[n - 1] >= n:
        raise ZeroDivisionError("matrix is singular")
    return r[:, n:]


def rref(m: Matrix) -> tuple[Matrix, int, list[int]]:
    """Reduced row echelon form.

    :param m: The matrix.
    :type m: Matrix
    :return: The echelon form, the rank and the pivot columns.
    :rtype: tuple[Matrix, int, list[int]]
    """
    r, pivots = rref_array(m.field, m.entries)
    return Matrix(m.field, r), len(pivots), pivots


class LinearSolution(BaseModel):
    """Solution set of ``A x = b``.

    :ivar consistent: False when the system has no solution.
    :type consistent: bool
    :ivar particular: One solution, ``None`` when inconsistent.
    :type particular: numpy.ndarray | None
    :ivar nullspace: Basis (as rows) of ``ker A``.
    :type nullspace: numpy.ndarray
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    consistent: bool = Field(description="False when the system has no solution.")
    particular: np.ndarray | None = Field(
        default=None, description="One solution, None when inconsistent."
    )
    nullspace: np.ndarray = Field(description="Basis (as rows) of ker A.")


def solve_array(field: FqField, a: np.ndarray, b: np.ndarray) -> LinearSolution:
    a = np.array(a, dtype=np.int64, ndmin=2)
    b = np.asarray(b, dtype=np.int64).reshape(-1, 1)
    if b.shape[0] != a.shape[0]:
        raise InvalidInput(f"right-hand side has {b.shape[0]} rows, expected {a.shape[0]}")
    cols = a.shape[1]
    r, pivots = rref_array(field, np.hstack([a, b]))
    kernel = nullspace_array(field, a)
    if pivots and pivots[-1] == cols:
        return LinearSolution(consistent=False, particular=None, nullspace=kernel)
    x = np.zeros(cols, dtype=np.int64)
    for i, c in enumerate(pivots):
        x[c] = r[i, cols]
    return LinearSolution(consistent=True, particular=x, nullspace=kernel)


def solve_linear(a: Matrix, b: Sequence[int] | np.ndarray) -> LinearSolution:
    """Solve ``A x = b`` over the field of ``A``.

    :param a: Coefficient matrix.
    :type a: Matrix
    :param b: Right-hand side column, one entry per row of ``a``.
    :return: The particular solution and a nullspace basis, or an inconsistent marker.
    :rtype: LinearSolution
    :raises InvalidInput: If the dimensions do not match.
    """
    return solve_array(a.field, a.entries, np.asarray(b, dtype=np.int64))


def intertwiner_basis(
    field: FqField, acts1: Sequence[np.ndarray], acts2: Sequence[np.ndarray]
) -> np.ndarray:
    """Basis of ``{X : X A1_i = A2_i X}`` as an array of shape ``(k, d2, d1)``."""
    if len(acts1) != len(acts2):
        raise InvalidInput("action lists differ in length")
    if not acts1:
        raise InvalidInput("at least one action matrix is needed")
    d1 = acts1[0].shape[0]
    d2 = acts2[0].shape[0]
    blocks = []
    for a1, a2 in zip(acts1, acts2):
        if a1.shape != (d1, d1) or a2.shape != (d2, d2):
            raise InvalidInput("action matrices must be square of constant size")
        left = np.kron(np.eye(d2, dtype=np.int64), a1.T)
        right = np.kron(a2, np.eye(d1, dtype=np.int64))
        blocks.append(field.sub(left, right))
    basis = nullspace_array(field, np.vstack(blocks))
    return basis.reshape(-1, d2, d1)


def intertwiner_space(acts1: Sequence[Matrix], acts2: Sequence[Matrix]) -> list[Matrix]:
    """Basis of the space of intertwiners between two actions.

    Solves the simultaneous system ``X acts1[i] = acts2[i] X``.

    :param acts1: Action matrices of the source, one per generator.
    :type acts1: Sequence[Matrix]
    :param acts2: Action matrices of the target, same generators.
    :type acts2: Sequence[Matrix]
    :return: A basis of the solution space.
    :rtype: list[Matrix]
    :raises InvalidInput: On length, shape or field mismatch.
    """
    if not acts1 or len(acts1) != len(acts2):
        raise InvalidInput("action lists must be nonempty and of equal length")
    field = acts1[0].field
    if any(m.field is not field for m in [*acts1, *acts2]):
        raise InvalidInput("all action matrices must be over the same field")
    basis = intertwiner_basis(field, [m.entries for m in acts1], [m.entries for m in acts2])
    return [Matrix(field, x) for x in basis]


def base_change(m: Matrix, target: FqField) -> Matrix:
    """View a matrix over the prime field as a matrix over ``target``.

    :raises InvalidInput: If ``m`` is not over the prime field of ``target``.
    """
    if m.field.e != 1 or m.field.p != target.p:
        raise InvalidInput(f"cannot embed {m.field!r} into {target!r}")
    return Matrix(target, m.entries)


@functools.cache
def irreducible_polynomials(field: FqField, degree: int) -> tuple[tuple[int, ...], ...]:
    """Monic irreducible polynomials of degree at most 3 over ``field``.

    Polynomials are coefficient tuples, lowest degree first. Irreducibility is
    decided by root search, which is exact up to degree 3.
    """
    if not 1 <= degree <= 3:
        raise InvalidInput("root search decides irreducibility only up to degree 3")
    q = field.q
    xs = field.elements()
    found = []
    for n in range(q**degree):
        coeffs = [(n // q**i) % q for i in range(degree)] + [1]
        if degree > 1:
            values = np.zeros(q, dtype=np.int64)
            for c in reversed(coeffs):
                values = field.add(field.mul(values, xs), c)
            if np.any(values == 0):
                continue
        found.append(tuple(coeffs))
    return tuple(found)


def polynomial_at(field: FqField, coeffs: Sequence[int], a: np.ndarray) -> np.ndarray:
    """Evaluate a polynomial (lowest degree first) at a square matrix."""
    n = a.shape[0]
    result = np.zeros((n, n), dtype=np.int64)
    eye = field.eye(n)
    for c in reversed(coeffs):
        result = field.add(field.matmul(result, a), field.mul(eye, c))
    return result


def vector_minimal_polynomial(field: FqField, a: np.ndarray, v: np.ndarray) -> tuple[int, ...]:
    """Monic ``g`` of least degree with ``g(A) v = 0``, lowest degree first.

    The Krylov vectors ``v, Av, A^2 v, ...`` are collected until the next one is
    a combination of the previous ones.
    """
    v = np.asarray(v, dtype=np.int64)
    if not v.any():
        return (1,)
    krylov = [v]
    while True:
        w = field.matmul(a, krylov[-1][:, None])[:, 0]
        solution = solve_array(field, np.array(krylov).T, w)
        if solution.consistent:
            return tuple(int(c) for c in field.neg(solution.particular)) + (1,)
        krylov.append(w)


def factor_polynomial(field: FqField, coeffs: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    """Distinct monic irreducible factors over a prime field, by increasing degree.

    :param coeffs: Coefficients, lowest degree first.
    :raises InvalidInput: Over a proper extension field.
    """
    if field.e != 1:
        raise InvalidInput(f"factorization is implemented over prime fields, not {field!r}")
    p = field.p
    x = sympy.Symbol("x")
    poly = sympy.Poly([int(c) % p for c in reversed(coeffs)], x, modulus=p)
    if poly.degree() < 1:
        return ()
    factors = []
    for factor, _ in poly.factor_list()[1]:
        top = [int(c) % p for c in factor.all_coeffs()]
        scale = pow(top[0], -1, p)
        factors.append(tuple((c * scale) % p for c in reversed(top)))
    return tuple(sorted(set(factors), key=lambda g: (len(g), g)))


class EchelonBasis:
    """Incrementally maintained reduced echelon basis of a subspace of ``F_q^dim``.

    Rows are kept fully reduced: each row has a 1 in its pivot column and zeros
    in every other row's pivot column.
    """

    def __init__(self, field: FqField, dim: int):
        self.field = field
        self.dim = dim
        self.rows = np.zeros((0, dim), dtype=np.int64)
        self.pivots: list[int] = []

    def __len__(self) -> int:
        return len(self.pivots)

    def reduce(self, v: np.ndarray) -> np.ndarray:
        v = np.asarray(v, dtype=np.int64)
        if not self.pivots:
            return v.copy()
        coeffs = v[self.pivots]
        return self.field.sub(v, self.field.matmul(coeffs[None, :], self.rows)[0])

    def contains(self, v: np.ndarray) -> bool:
        return not np.any(self.reduce(v))

    def add(self, v: np.ndarray) -> np.ndarray | None:
        """Insert ``v``; return the new normalized row, or ``None`` if ``v`` was dependent."""
        f = self.field
        w = self.reduce(v)
        nz = np.flatnonzero(w)
        if nz.size == 0:
            return None
        c = int(nz[0])
        if w[c] != 1:
            w = f.mul(w, f.inv(w[c]))
        if self.pivots:
            column = self.rows[:, c]
            hit = np.flatnonzero(column)
            if hit.size:
                self.rows[hit] = f.sub(self.rows[hit], f.mul(column[hit, None], w[None, :]))
        self.rows = np.vstack([self.rows, w[None, :]])
        self.pivots.append(c)
        return w

    def matrix(self) -> np.ndarray:
        """The basis in reduced row echelon form (rows sorted by pivot)."""
        order = np.argsort(self.pivots, kind="stable")
        return self.rows[order]

    def sorted_pivots(self) -> list[int]:
        return sorted(self.pivots)


def all_vectors(field: FqField, n: int) -> np.ndarray:
    """Every vector of ``F_q^n`` as rows; row ``i`` has coordinates the base-q digits of ``i``."""
    count = field.q**n
    if count > 1 << 22:
        raise BudgetExceeded("vector-enumeration", 1 << 22, count)
    idx = np.arange(count, dtype=np.int64)
    powers = np.array([field.q**i for i in range(n)], dtype=np.int64)
    return (idx[:, None] // powers) % field.q


def vector_codes(field: FqField, vectors: np.ndarray) -> np.ndarray:
    """Inverse of :func:`all_vectors`: base-q code of each row."""
    vectors = np.asarray(vectors, dtype=np.int64)
    n = vectors.shape[-1]
    powers = np.array([field.q**i for i in range(n)], dtype=np.int64)
    return (vectors * powers).sum(axis=-1)


def projective_points(field: FqField, basis: np.ndarray) -> np.ndarray:
    """One representative (first nonzero coordinate 1) of every line in the span of ``basis``."""
    k = basis.shape[0]
    if k == 0:
        return np.zeros((0, basis.shape[1] if basis.ndim == 2 else 0), dtype=np.int64)
    coords = all_vectors(field, k)[1:]
    first = coords[np.arange(coords.shape[0]), (coords != 0).argmax(axis=1)]
    coords = coords[first == 1]
    return field.matmul(coords, basis)
