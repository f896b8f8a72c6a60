"""Dense exact linear algebra over GF(p) and QQ.

Elimination runs on native values (ints mod p, or Fractions) and converts back
to field scalars at the boundary.  Subspaces are stored by their reduced row
echelon basis, so equality and hashing are structural.
"""

from __future__ import annotations

import itertools
import random
from functools import lru_cache
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from .errors import BudgetExceeded, SingularMatrix
from .rings import FieldSpec

# random_invertible gives up after this many singular draws.  Over GF(2) the
# expected number of draws is below 3.5 for every n.
MAX_INVERTIBLE_TRIES = 1000


def _rref_native(rows: list, ncols: int, p: Optional[int]):
    """In-place RREF of a list of native rows.  Leftmost column first, the
    topmost usable row becomes the pivot.  Returns the pivot columns."""
    m = len(rows)
    r = 0
    pivots = []
    for c in range(ncols):
        if r == m:
            break
        piv = None
        for i in range(r, m):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        if p is None:
            inv = 1 / prow[c]
            prow = [x * inv for x in prow]
        else:
            inv = pow(prow[c], -1, p)
            prow = [x * inv % p for x in prow]
        rows[r] = prow
        for i in range(m):
            if i != r:
                f = rows[i][c]
                if f:
                    row = rows[i]
                    if p is None:
                        rows[i] = [a - f * b for a, b in zip(row, prow)]
                    else:
                        rows[i] = [(a - f * b) % p for a, b in zip(row, prow)]
        pivots.append(c)
        r += 1
    return pivots


def _det_native(rows: list, p: Optional[int]):
    n = len(rows)
    rows = [list(r) for r in rows]
    det = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if rows[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            det = -det
        a = rows[c][c]
        det = det * a if p is None else det * a % p
        inv = 1 / a if p is None else pow(a, -1, p)
        for i in range(c + 1, n):
            f = rows[i][c]
            if f:
                f = f * inv if p is None else f * inv % p
                if p is None:
                    rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
                else:
                    rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[c])]
    return det if p is None else det % p


class Matrix:
    """Immutable dense matrix of field scalars."""

    __slots__ = ("field", "rows", "nrows", "ncols")

    def __init__(self, field: FieldSpec, rows: Iterable[Iterable], ncols: Optional[int] = None):
        self.field = field
        self.rows = tuple(tuple(field(x) for x in row) for row in rows)
        self.nrows = len(self.rows)
        if self.rows:
            self.ncols = len(self.rows[0])
            if any(len(r) != self.ncols for r in self.rows):
                raise ValueError("ragged matrix")
            if ncols is not None and ncols != self.ncols:
                raise ValueError("column count mismatch")
        else:
            self.ncols = 0 if ncols is None else ncols

    @classmethod
    def _from_native(cls, field, rows, ncols):
        M = cls.__new__(cls)
        M.field = field
        M.rows = tuple(tuple(field.from_native(x) for x in r) for r in rows)
        M.nrows = len(M.rows)
        M.ncols = ncols
        return M

    def _native(self) -> list:
        to = self.field.to_native
        return [[to(x) for x in r] for r in self.rows]

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "Matrix":
        return cls(field, [[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, field: FieldSpec, m: int, n: int) -> "Matrix":
        return cls(field, [[0] * n for _ in range(m)], ncols=n)

    @classmethod
    def from_columns(cls, field: FieldSpec, cols: Sequence[Sequence]) -> "Matrix":
        return cls(field, list(zip(*cols))) if cols else cls(field, [])

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list:
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self) -> "Matrix":
        return Matrix(self.field, [self.column(j) for j in range(self.ncols)], ncols=self.nrows)

    T = property(transpose)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            cols = other.columns()
            zero = self.field.zero
            return Matrix(
                self.field,
                [[sum((a * b for a, b in zip(r, c)), zero) for c in cols] for r in self.rows],
                ncols=other.ncols,
            )
        vec = tuple(other)
        if len(vec) != self.ncols:
            raise ValueError("vector length mismatch")
        zero = self.field.zero
        return tuple(sum((a * self.field(b) for a, b in zip(r, vec)), zero) for r in self.rows)

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.shape == other.shape
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.field, self.rows))

    def det(self):
        if self.nrows != self.ncols:
            raise ValueError("det of a non-square matrix")
        return self.field.from_native(_det_native(self._native(), self.field.p))

    def rank(self) -> int:
        return rref_rank(self)[1]

    def is_invertible(self) -> bool:
        return self.nrows == self.ncols and bool(self.det())

    def inverse(self) -> "Matrix":
        n = self.nrows
        if n != self.ncols:
            raise ValueError("inverse of a non-square matrix")
        p = self.field.p
        one = 1 if p is not None else self.field.one
        zero = 0 if p is not None else self.field.zero
        rows = [r + [one if i == j else zero for j in range(n)] for i, r in enumerate(self._native())]
        pivots = _rref_native(rows, 2 * n, p)
        if pivots[:n] != list(range(n)) or len(pivots) < n:
            raise SingularMatrix("matrix is not invertible")
        return Matrix._from_native(self.field, [r[n:] for r in rows], n)

    def tolist(self) -> list:
        return [list(r) for r in self.rows]

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self.rows)
        return f"Matrix({self.field}, [{body}])"


def rref_rank(M: Matrix):
    """Return ``(R, rank)`` with ``R`` the reduced row echelon form of ``M``."""
    rows = M._native()
    pivots = _rref_native(rows, M.ncols, M.field.p)
    return Matrix._from_native(M.field, rows, M.ncols), len(pivots)


def kernel(M: Matrix) -> "Subspace":
    """Right kernel ``{v : M v = 0}``."""
    return kernel_native(M.field, M._native(), M.ncols)


def kernel_native(field: FieldSpec, rows: list, n: int) -> "Subspace":
    """Kernel of a matrix given as native rows (modified in place)."""
    p = field.p
    pivots = _rref_native(rows, n, p)
    free = [c for c in range(n) if c not in set(pivots)]
    one = 1 if p is not None else field.one
    basis = []
    for f in free:
        v = [0] * n
        v[f] = one
        for i, c in enumerate(pivots):
            x = rows[i][f]
            if x:
                v[c] = (-x) % p if p is not None else -x
        basis.append(v)
    return Subspace._from_native(field, n, _rref_basis(basis, n, p))


def _rref_basis(vectors: list, n: int, p) -> list:
    rows = [list(v) for v in vectors]
    pivots = _rref_native(rows, n, p)
    return rows[: len(pivots)]


def solve(M: Matrix, b: Sequence) -> Optional[tuple]:
    """A solution of ``M x = b`` (free variables set to 0), or ``None``."""
    n = M.ncols
    p = M.field.p
    to = M.field.to_native
    rows = [r + [to(M.field(x))] for r, x in zip(M._native(), b)]
    if len(rows) != M.nrows:
        raise ValueError("right-hand side length mismatch")
    pivots = _rref_native(rows, n + 1, p)
    if pivots and pivots[-1] == n:
        return None
    x = [0 if p is not None else M.field.zero] * n
    for i, c in enumerate(pivots):
        x[c] = rows[i][n]
    return tuple(M.field.from_native(v) for v in x)


def random_matrix(m: int, n: int, field: FieldSpec, rng: random.Random) -> Matrix:
    return Matrix(field, [[field.random_element(rng, 3) for _ in range(n)] for _ in range(m)], ncols=n)


def random_invertible(n: int, field: FieldSpec, seed) -> Matrix:
    """A random invertible n x n matrix, deterministic in ``seed``.

    Draws uniform matrices (entries in [-3, 3] over QQ) and rejects singular ones.
    """
    if n < 1:
        raise ValueError("n must be positive")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    for _ in range(MAX_INVERTIBLE_TRIES):
        A = random_matrix(n, n, field, rng)
        if A.det():
            return A
    raise RuntimeError("random_invertible: rejection bound exhausted")


def block_diag(field: FieldSpec, *blocks: Matrix) -> Matrix:
    n = sum(b.nrows for b in blocks)
    rows = []
    off = 0
    for b in blocks:
        for r in b.rows:
            rows.append([0] * off + list(r) + [0] * (n - off - b.ncols))
        off += b.ncols
    return Matrix(field, rows, ncols=n)


# ---------------------------------------------------------------------------
# subspaces


class Subspace:
    """A subspace of K^n, represented by its RREF basis (no zero rows)."""

    __slots__ = ("field", "n", "basis", "_hash")

    def __init__(self, field: FieldSpec, n: int, vectors: Iterable[Sequence] = ()):
        to = field.to_native
        rows = []
        for v in vectors:
            v = list(v)
            if len(v) != n:
                raise ValueError(f"vector of length {len(v)} in K^{n}")
            rows.append([to(field(x)) for x in v])
        self._set(field, n, _rref_basis(rows, n, field.p))

    @classmethod
    def _from_native(cls, field, n, rows):
        S = cls.__new__(cls)
        S._set(field, n, rows)
        return S

    def _set(self, field, n, rows):
        self.field = field
        self.n = n
        self.basis = tuple(tuple(field.from_native(x) for x in r) for r in rows)
        self._hash = None

    @classmethod
    def zero(cls, field: FieldSpec, n: int) -> "Subspace":
        return cls(field, n)

    @classmethod
    def full(cls, field: FieldSpec, n: int) -> "Subspace":
        return cls(field, n, Matrix.identity(field, n).rows)

    @classmethod
    def coordinate(cls, field: FieldSpec, n: int, indices: Iterable[int]) -> "Subspace":
        """Span of the standard basis vectors with the given 0-based indices."""
        return cls(field, n, [[int(i == j) for j in range(n)] for i in indices])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def key(self) -> tuple:
        """Sort key: the flattened RREF matrix (dimension first)."""
        to = self.field.to_native
        return (self.dim,) + tuple(to(x) for r in self.basis for x in r)

    def __lt__(self, other):
        return self.key() < other.key()

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.field == other.field
            and self.n == other.n
            and self.basis == other.basis
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.n, self.basis))
        return self._hash

    def __contains__(self, v) -> bool:
        return Subspace(self.field, self.n, list(self.basis) + [list(v)]).dim == self.dim

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace(self.field, self.n, list(self.basis) + list(other.basis))

    def contains_subspace(self, other: "Subspace") -> bool:
        return (self + other).dim == self.dim

    def image(self, g: Matrix) -> "Subspace":
        return Subspace(self.field, g.nrows, [g @ b for b in self.basis])

    def matrix(self) -> Matrix:
        return Matrix(self.field, self.basis, ncols=self.n)

    def vectors(self) -> Iterator[tuple]:
        """Every vector in the subspace (finite fields only), lex order in the
        coordinates with respect to the RREF basis."""
        F = self.field
        for coeffs in itertools.product(range(F.p), repeat=self.dim):
            v = [0] * self.n
            for c, b in zip(coeffs, self.basis):
                if c:
                    for j, x in enumerate(b):
                        v[j] += c * x.v
            yield tuple(F(x) for x in v)

    def complement_indices(self) -> list:
        """Indices of standard basis vectors that extend this basis to K^n
        (the non-pivot columns)."""
        pivots = {next(j for j, x in enumerate(r) if x) for r in self.basis}
        return [j for j in range(self.n) if j not in pivots]

    def __repr__(self):
        rows = "; ".join(" ".join(str(x) for x in r) for r in self.basis)
        return f"Subspace({self.field}, n={self.n}, [{rows}])"


def span(field: FieldSpec, vectors: Sequence[Sequence], n: Optional[int] = None) -> Subspace:
    if n is None:
        n = len(vectors[0])
    return Subspace(field, n, vectors)


# ---------------------------------------------------------------------------
# enumeration over finite fields


def gaussian_binomial(n: int, d: int, q: int) -> int:
    """Number of d-dimensional subspaces of GF(q)^n."""
    if d < 0 or d > n:
        return 0
    num = den = 1
    for i in range(d):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


@lru_cache(maxsize=32)
def rref_bases(n: int, d: int, p: int) -> np.ndarray:
    """All d x n RREF matrices of rank d over GF(p), shape (N, d, n).

    Ordered by pivot set (lexicographic), then by the free entries in lex order.
    The returned array is read-only and shared.
    """
    total = gaussian_binomial(n, d, p)
    out = np.zeros((total, d, n), dtype=np.int64)
    pos = 0
    for pivots in itertools.combinations(range(n), d):
        free = [(i, j) for i, c in enumerate(pivots) for j in range(c + 1, n) if j not in pivots]
        count = p ** len(free)
        block = out[pos : pos + count]
        for i, c in enumerate(pivots):
            block[:, i, c] = 1
        if free:
            vals = np.array(list(itertools.product(range(p), repeat=len(free))), dtype=np.int64)
            for k, (i, j) in enumerate(free):
                block[:, i, j] = vals[:, k]
        pos += count
    assert pos == total
    out.flags.writeable = False
    return out


def check_budget(count: int, budget: Optional[int], what: str):
    if budget is not None and count > budget:
        raise BudgetExceeded(f"{what}: {count} candidates exceed the budget of {budget}")


def enumerate_subspaces(field: FieldSpec, n: int, d: int, budget: Optional[int] = None) -> Iterator[Subspace]:
    if not field.is_finite:
        raise ValueError("subspace enumeration needs a finite field")
    check_budget(gaussian_binomial(n, d, field.p), budget, "enumerate_subspaces")
    for B in rref_bases(n, d, field.p):
        yield Subspace._from_native(field, n, B.tolist())


def nonzero_vectors(n: int, p: int) -> np.ndarray:
    """All nonzero vectors of GF(p)^n in lexicographic order, shape (p^n - 1, n)."""
    grid = np.array(list(itertools.product(range(p), repeat=n)), dtype=np.int64)
    return grid[1:]


def projective_points(n: int, p: int) -> np.ndarray:
    """Nonzero vectors whose first nonzero coordinate is 1, lexicographic order."""
    v = nonzero_vectors(n, p)
    first = v[np.arange(len(v)), np.argmax(v != 0, axis=1)]
    return v[first == 1]


def encode_points(points: np.ndarray, p: int) -> np.ndarray:
    """Base-p integer code of each row (first coordinate most significant)."""
    n = points.shape[-1]
    weights = p ** np.arange(n - 1, -1, -1, dtype=np.int64)
    return points @ weights
