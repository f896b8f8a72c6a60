"""Grassmann algebra over V and V* with bitmask basis indices.

A basis element e_I (or x_I on the dual side) with I = {i_1 < ... < i_d} is
stored under the integer mask ``sum(1 << i)``; indices are 0-based, so bit 0
is e_1.  Coefficients live in any ring from :mod:`altforms.rings`.

The pairing ``<lambda, omega>`` between ``Multivector`` (in the exterior power
of V) and ``FormVector`` (exterior power of V*) removes ``lambda``'s indices
from the *front* of ``omega``:

    <e_I, x_J> = sign(I, J \\ I) * x_{J \\ I}   if I is a subset of J, else 0,

where ``sign(I, K)`` is the wedge sign of ``e_I ^ e_K``.  :func:`pair_reference`
implements the injection-sum definition literally and the tests check the two
agree on every basis pair up to n = 6.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from functools import lru_cache
from typing import Iterable, Sequence

from .linalg import Matrix
from .rings import FieldSpec, ModP, PolyRing

MAX_DIM = 24


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def indices_of(mask: int) -> tuple:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


@lru_cache(maxsize=1 << 16)
def wedge_sign(I: int, J: int) -> int:
    """Sign of e_I ^ e_J relative to e_{I|J} (disjoint masks): (-1) to the
    number of pairs (i, j) in I x J with i > j."""
    s = 0
    while J:
        low = J & -J
        s += (I & ~((low << 1) - 1)).bit_count()
        J ^= low
    return -1 if s & 1 else 1


def permutation_sign(seq: Sequence[int]) -> int:
    inv = sum(1 for a, b in itertools.combinations(seq, 2) if a > b)
    return -1 if inv % 2 else 1


def _lex_key(mask: int) -> tuple:
    return indices_of(mask)


class _Graded:
    """Grade-homogeneous element; shared machinery for both variances."""

    __slots__ = ("n", "grade", "ring", "terms")
    symbol = "?"

    def __init__(self, n: int, grade: int, ring, terms=None):
        if not 0 <= n <= MAX_DIM:
            raise ValueError(f"ambient dimension must be in [0, {MAX_DIM}], got {n}")
        if grade < 0:
            raise ValueError("negative grade")
        self.n = n
        self.grade = grade
        self.ring = ring
        clean = {}
        for mask, c in (terms or {}).items():
            if mask >> n or mask.bit_count() != grade:
                raise ValueError(f"mask {mask:b} is not a {grade}-subset of [{n}]")
            c = ring(c)
            if c:
                clean[mask] = c
        self.terms = clean

    @classmethod
    def _raw(cls, n, grade, ring, terms):
        v = cls.__new__(cls)
        v.n = n
        v.grade = grade
        v.ring = ring
        v.terms = terms
        return v

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, n: int, grade: int, ring):
        return cls._raw(n, grade, ring, {})

    @classmethod
    def scalar(cls, n: int, ring, c=1):
        return cls(n, 0, ring, {0: c})

    @classmethod
    def basis(cls, n: int, indices: Sequence[int], ring, coeff=1):
        """``coeff`` times the wedge of the basis elements with the given
        0-based indices, taken in the order given."""
        indices = list(indices)
        if len(set(indices)) < len(indices):
            return cls.zero(n, len(indices), ring)
        sign = permutation_sign(indices)
        c = ring(coeff)
        return cls(n, len(indices), ring, {mask_of(indices): c if sign > 0 else -c})

    @classmethod
    def from_index_terms(cls, n: int, grade: int, ring, items: Iterable):
        """Sum of ``coeff * e_{i1} ^ ... ^ e_{id}`` over ``(coeff, indices)`` pairs."""
        out = cls.zero(n, grade, ring)
        for c, idx in items:
            if len(idx) != grade:
                raise ValueError(f"term {idx} does not have grade {grade}")
            out = out + cls.basis(n, idx, ring, c)
        return out

    @classmethod
    def from_vector(cls, ring, vec: Sequence):
        return cls(len(vec), 1, ring, {1 << i: c for i, c in enumerate(vec)})

    @classmethod
    def volume(cls, n: int, ring):
        return cls(n, n, ring, {(1 << n) - 1: 1})

    # -- access -------------------------------------------------------------

    def __getitem__(self, key):
        if not isinstance(key, int):
            key = list(key)
            sign = permutation_sign(key)
            c = self.terms.get(mask_of(key), self.ring.zero)
            return c if sign > 0 else -c
        return self.terms.get(key, self.ring.zero)

    def items(self):
        """Terms as ``(index tuple, coeff)`` in lexicographic index order."""
        return [(indices_of(m), self.terms[m]) for m in sorted(self.terms, key=_lex_key)]

    def to_vector(self) -> tuple:
        if self.grade != 1:
            raise ValueError("to_vector needs grade 1")
        return tuple(self.terms.get(1 << i, self.ring.zero) for i in range(self.n))

    def scalar_value(self):
        if self.grade != 0:
            raise ValueError("scalar_value needs grade 0")
        return self.terms.get(0, self.ring.zero)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def change_ring(self, ring):
        return type(self)(self.n, self.grade, ring, {m: ring(c) for m, c in self.terms.items()})

    # -- linear structure ---------------------------------------------------

    def _check(self, other):
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} and {type(other).__name__}")
        if other.n != self.n or other.ring != self.ring:
            raise ValueError("mismatched ambient dimension or ring")

    def __add__(self, other):
        self._check(other)
        if other.grade != self.grade:
            raise ValueError("cannot add elements of different grades")
        out = dict(self.terms)
        for m, c in other.terms.items():
            if m in out:
                s = out[m] + c
                if s:
                    out[m] = s
                else:
                    del out[m]
            else:
                out[m] = c
        return self._raw(self.n, self.grade, self.ring, out)

    def __neg__(self):
        return self._raw(self.n, self.grade, self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        if isinstance(c, _Graded):
            return NotImplemented
        c = self.ring(c)
        out = {}
        for m, a in self.terms.items():
            b = a * c
            if b:
                out[m] = b
        return self._raw(self.n, self.grade, self.ring, out)

    __rmul__ = __mul__

    def __xor__(self, other):
        return wedge(self, other)

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return (
            self.n == other.n
            and self.grade == other.grade
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((type(self).__name__, self.n, self.grade, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return f"{type(self).__name__}(0, n={self.n}, grade={self.grade})"
        parts = []
        for idx, c in self.items():
            name = "^".join(f"{self.symbol}{i + 1}" for i in idx) or "1"
            parts.append(f"{c}*{name}")
        return f"{type(self).__name__}(" + " + ".join(parts) + f", n={self.n})"


class Multivector(_Graded):
    """Element of the exterior power of V (covariant)."""

    __slots__ = ()
    symbol = "e"
    variance = "covariant"


class FormVector(_Graded):
    """Element of the exterior power of V* (contravariant)."""

    __slots__ = ()
    symbol = "x"
    variance = "contravariant"


def _is_gf(ring) -> bool:
    return isinstance(ring, FieldSpec) and ring.kind == "gf"


def _from_acc(acc: dict, p: int) -> dict:
    return {K: ModP(v % p, p) for K, v in acc.items() if v % p}


def wedge(a: _Graded, b: _Graded) -> _Graded:
    a._check(b)
    g = a.grade + b.grade
    n = a.n
    if g > n:
        return a.zero(n, g, a.ring)
    if _is_gf(a.ring):
        acc: dict = defaultdict(int)
        for I, x in a.terms.items():
            for J, y in b.terms.items():
                if not I & J:
                    acc[I | J] += wedge_sign(I, J) * x.v * y.v
        return a._raw(n, g, a.ring, _from_acc(acc, a.ring.p))
    out = {}
    for I, x in a.terms.items():
        for J, y in b.terms.items():
            if I & J:
                continue
            t = x * y
            K = I | J
            if wedge_sign(I, J) < 0:
                t = -t
            if K in out:
                s = out[K] + t
                if s:
                    out[K] = s
                else:
                    del out[K]
            elif t:
                out[K] = t
    return a._raw(n, g, a.ring, out)


def wedge_all(vectors: Sequence[_Graded], n: int = None, ring=None, cls=None) -> _Graded:
    """Wedge of a sequence; the empty wedge is the scalar one."""
    if not vectors:
        return cls.scalar(n, ring)
    out = vectors[0]
    for v in vectors[1:]:
        out = wedge(out, v)
    return out


def pair(lam: Multivector, omega: FormVector) -> FormVector:
    """The contraction <lam, omega>, of grade ``omega.grade - lam.grade``."""
    if not isinstance(lam, Multivector) or not isinstance(omega, FormVector):
        raise TypeError("pair takes a Multivector and a FormVector")
    if lam.n != omega.n or lam.ring != omega.ring:
        raise ValueError("mismatched ambient dimension or ring")
    d, e = lam.grade, omega.grade
    if d > e:
        raise ValueError(f"cannot pair grade {d} with grade {e}")
    if _is_gf(omega.ring):
        acc: dict = defaultdict(int)
        for I, x in lam.terms.items():
            for J, y in omega.terms.items():
                if I & J == I:
                    acc[J ^ I] += wedge_sign(I, J ^ I) * x.v * y.v
        return FormVector._raw(omega.n, e - d, omega.ring, _from_acc(acc, omega.ring.p))
    out = {}
    for I, x in lam.terms.items():
        for J, y in omega.terms.items():
            if I & J != I:
                continue
            K = J ^ I
            t = x * y
            if wedge_sign(I, K) < 0:
                t = -t
            if K in out:
                s = out[K] + t
                if s:
                    out[K] = s
                else:
                    del out[K]
            elif t:
                out[K] = t
    return FormVector._raw(omega.n, e - d, omega.ring, out)


def _dot(v: Multivector, y: FormVector):
    total = v.ring.zero
    for m, c in v.terms.items():
        if m in y.terms:
            total = total + c * y.terms[m]
    return total


def pair_reference(vectors: Sequence[Multivector], covectors: Sequence[FormVector]) -> FormVector:
    """Literal injection sum for <v_1 ^ ... ^ v_d, y_1 ^ ... ^ y_e>.

    Sums over injections pi: [d] -> [e] of sgn(pi) * prod <v_i, y_pi(i)> times
    the wedge of the unused y_j in increasing j, where sgn(pi) is the sign of
    the permutation (pi(1), ..., pi(d), unused indices increasing).
    """
    d, e = len(vectors), len(covectors)
    if d > e:
        raise ValueError(f"cannot pair {d} vectors with {e} covectors")
    if not covectors:
        raise ValueError("need at least one covector to fix the ambient space")
    n, ring = covectors[0].n, covectors[0].ring
    for v in vectors:
        if not isinstance(v, Multivector) or v.grade != 1:
            raise TypeError("vectors must be grade-1 Multivectors")
    for y in covectors:
        if not isinstance(y, FormVector) or y.grade != 1:
            raise TypeError("covectors must be grade-1 FormVectors")
    total = FormVector.zero(n, e - d, ring)
    for pi in itertools.permutations(range(e), d):
        rest = [j for j in range(e) if j not in pi]
        coeff = ring.one
        for i, j in zip(range(d), pi):
            coeff = coeff * _dot(vectors[i], covectors[j])
        if not coeff:
            continue
        if permutation_sign(list(pi) + rest) < 0:
            coeff = -coeff
        total = total + wedge_all([covectors[j] for j in rest], n, ring, FormVector) * coeff
    return total


def vector_contract_volume(u: Multivector) -> FormVector:
    """iota(u) = <u, x_1 ^ ... ^ x_n>, identifying V with the (n-1)th power of V*."""
    if not isinstance(u, Multivector) or u.grade != 1:
        raise TypeError("vector_contract_volume needs a grade-1 Multivector")
    return pair(u, FormVector.volume(u.n, u.ring))


def evaluate(omega: FormVector, vectors: Sequence[Multivector]):
    """omega(v_1, ..., v_e)."""
    lam = wedge_all(list(vectors), omega.n, omega.ring, Multivector)
    return pair(lam, omega).scalar_value()


# ---------------------------------------------------------------------------
# divided powers


def _pfaffian_native(A: list, p):
    """Pfaffian of a skew matrix of native entries by block elimination:
    pf(A) = a * pf(Schur complement of the leading 2 x 2 pivot block)."""
    m = len(A)
    if m % 2:
        return 0
    A = [row[:] for row in A]
    pf = 1
    for i in range(0, m, 2):
        j = next((j for j in range(i + 1, m) if A[i][j]), None)
        if j is None:
            return 0
        if j != i + 1:
            k = i + 1
            A[k], A[j] = A[j], A[k]
            for row in A:
                row[k], row[j] = row[j], row[k]
            pf = -pf
        a = A[i][i + 1]
        pf = pf * a if p is None else pf * a % p
        inv = 1 / a if p is None else pow(a, -1, p)
        ri, rk = A[i], A[i + 1]
        for r in range(i + 2, m):
            row = A[r]
            x, y = row[i], row[i + 1]
            if not x and not y:
                continue
            for s in range(i + 2, m):
                delta = (x * rk[s] - y * ri[s]) * inv
                row[s] = row[s] + delta if p is None else (row[s] + delta) % p
    return pf


def gram_native(omega: _Graded, p) -> list:
    """Skew matrix (omega(e_i, e_j)) of a grade-2 element, native entries."""
    n = omega.n
    G = [[0] * n for _ in range(n)]
    to = omega.ring.to_native
    for mask, c in omega.terms.items():
        i, j = indices_of(mask)
        v = to(c)
        G[i][j] = v
        G[j][i] = (-v) % p if p is not None else -v
    return G


def gram_matrix(omega: _Graded) -> Matrix:
    if omega.grade != 2 or not isinstance(omega.ring, FieldSpec):
        raise ValueError("gram_matrix needs a grade-2 element over a field")
    G = gram_native(omega, omega.ring.p)
    return Matrix._from_native(omega.ring, G, omega.n)


def _divided_power_partitions(omega: _Graded, k: int, targets: Iterable[int]) -> dict:
    """Coefficient of each target in omega^(k) by summing over unordered
    partitions into blocks of size d; each partition is produced once, the
    next block always containing the smallest index not yet used.  Shared
    sub-partitions are memoized by the set of indices still to cover."""
    ring = omega.ring
    by_low = defaultdict(list)
    for J, a in omega.terms.items():
        by_low[J & -J].append((J, a))
    memo = {0: ring.one}

    def coeff(S):
        hit = memo.get(S)
        if hit is not None:
            return hit
        low = S & -S
        total = ring.zero
        for J, a in by_low.get(low, ()):
            if J & S != J:
                continue
            R = S ^ J
            sub = coeff(R)
            if not sub:
                continue
            t = a * sub
            total = total + t if wedge_sign(J, R) > 0 else total - t
        memo[S] = total
        return total

    return {T: coeff(T) for T in targets}


def divided_power(omega: _Graded, k: int, method: str = "auto") -> _Graded:
    """The kth divided power omega^(k) of an even-grade element.

    ``method="partitions"`` always uses the partition sum.  ``"auto"`` computes
    the coefficients of a 2-form over a field as Pfaffians of principal
    submatrices by elimination, which is the same number and much faster.
    """
    d = omega.grade
    if d % 2:
        raise ValueError("divided powers need even grade")
    if k < 0:
        raise ValueError("k must be non-negative")
    cls, n, ring = type(omega), omega.n, omega.ring
    if k == 0:
        return cls.scalar(n, ring)
    if k == 1:
        return omega
    g = k * d
    if g > n:
        return cls.zero(n, g, ring)
    support = indices_of(mask_of(i for m in omega.terms for i in indices_of(m)))
    targets = [mask_of(c) for c in itertools.combinations(support, g)]
    if method == "auto" and d == 2 and isinstance(ring, FieldSpec):
        p = ring.p
        G = gram_native(omega, p)
        out = {}
        for T in targets:
            idx = indices_of(T)
            sub = [[G[i][j] for j in idx] for i in idx]
            v = _pfaffian_native(sub, p)
            if v:
                out[T] = ring.from_native(v)
        return cls._raw(n, g, ring, out)
    if method not in ("auto", "partitions"):
        raise ValueError(f"unknown method {method!r}")
    coeffs = _divided_power_partitions(omega, k, targets)
    return cls._raw(n, g, ring, {T: c for T, c in coeffs.items() if c})


def pfaffian(omega: _Graded, method: str = "auto"):
    """Coefficient of the full basis element in omega^(n/2) for a 2-form on
    an even-dimensional space."""
    if omega.grade != 2:
        raise ValueError("pfaffian needs a grade-2 element")
    n = omega.n
    if n % 2:
        raise ValueError("pfaffian needs even ambient dimension")
    ring = omega.ring
    if n == 0:
        return ring.one
    if method == "auto" and isinstance(ring, FieldSpec):
        return ring.from_native(_pfaffian_native(gram_native(omega, ring.p), ring.p))
    full = (1 << n) - 1
    return _divided_power_partitions(omega, n // 2, [full])[full]


# ---------------------------------------------------------------------------
# functoriality


def _columns_as(cls, M: Matrix, ring) -> list:
    return [cls.from_vector(ring, [ring(x) for x in col]) for col in M.columns()]


def map_power(A: Matrix, omega: _Graded) -> _Graded:
    """Apply the induced map of ``A`` on the exterior power of ``omega``'s grade.

    On a Multivector this is the covariant action e_I -> A e_{i1} ^ ... ^ A e_{id}
    (``A`` may be rectangular).  On a FormVector it is the contravariant action
    through the inverse transpose, so ``A`` must be invertible.
    """
    ring = omega.ring
    if isinstance(omega, Multivector):
        if A.ncols != omega.n:
            raise ValueError(f"matrix has {A.ncols} columns, vector lives in dimension {omega.n}")
        images = _columns_as(Multivector, A, ring)
        cls, m = Multivector, A.nrows
    else:
        if A.nrows != A.ncols or A.ncols != omega.n:
            raise ValueError("contravariant action needs a square matrix of matching size")
        images = _columns_as(FormVector, A.inverse().transpose(), ring)
        cls, m = FormVector, A.nrows
    out = cls.zero(m, omega.grade, ring)
    for I, c in omega.terms.items():
        img = wedge_all([images[i] for i in indices_of(I)], m, ring, cls)
        out = out + img * c
    return out


def promote(omega: _Graded, ring: PolyRing) -> _Graded:
    """Same element with coefficients viewed as constant polynomials."""
    return omega.change_ring(ring)
