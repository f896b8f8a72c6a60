"""Singular lines and singular (e-1)-spaces of alternating forms.

For a trilinear form omega on K^n and a vector u, ``omega_u = <u, omega>`` is
a 2-form with u in its radical.  Any u' in that radical independent of u spans
a singular line with u.  When n is odd, the kth divided power (k = (n-1)/2) of
omega_u is a multiple of ``iota(u) = <u, x_1 ^ ... ^ x_n>``, and the factor
``f_omega(u)`` is a homogeneous polynomial of degree k - 1 vanishing exactly on
the points of singular lines.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .errors import (
    DimensionTooSmall,
    InternalProportionalityViolation,
    NoSingularLineFound,
    SymbolicBoundExceeded,
)
from .exterior import (
    FormVector,
    Multivector,
    divided_power,
    gram_native,
    pair,
    promote,
    vector_contract_volume,
    wedge,
    wedge_all,
)
from .forms import AltForm, as_multivector, form_tensor, is_singular_subspace
from .linalg import (
    Subspace,
    check_budget,
    gaussian_binomial,
    kernel_native,
    projective_points,
    rref_bases,
)
from .rings import QQ, HomogPoly, PolyRing, field_of, poly_divide_exact

# Largest odd dimension f_poly will attempt symbolically.
F_POLY_MAX_N = 11
# Default candidate budget for exhaustive enumerations (PG(6, 3) has 99463 lines).
DEFAULT_BUDGET = 250_000
# Default coordinate bound for searches over QQ.
QQ_SEARCH_BOUND = 3
_CHUNK = 1 << 14


def _require_trilinear(form: AltForm):
    if form.e != 3:
        raise ValueError(f"expected a trilinear form, got degree {form.e}")


def _require_odd(form: AltForm):
    _require_trilinear(form)
    if form.n % 2 == 0 or form.n < 5:
        raise ValueError(f"f_omega is defined for odd n >= 5, got n = {form.n}")


@dataclass(frozen=True)
class SingularLineCertificate:
    u: tuple
    v: tuple

    @property
    def line(self) -> Subspace:
        return Subspace(field_of(self.u[0]), len(self.u), [self.u, self.v])

    def verify(self, form: AltForm) -> bool:
        F = form.field
        a, b = as_multivector(F, self.u), as_multivector(F, self.v)
        if not _independent(self.u, self.v):
            return False
        return pair(wedge(a, b), form.omega).is_zero()


def _independent(u, v) -> bool:
    """Whether two vectors span a plane: some 2x2 minor is nonzero."""
    i = next((k for k, x in enumerate(u) if x), None)
    if i is None:
        return False
    return any(u[i] * y - x * v[i] for x, y in zip(u, v))


def omega_u(form: AltForm, u) -> FormVector:
    """The 2-form <u, omega>."""
    _require_trilinear(form)
    return pair(as_multivector(form.field, u), form.omega)


def singular_directions(form: AltForm, u) -> Subspace:
    """Radical of omega_u: the vectors w with <u ^ w, omega> = 0 (contains u)."""
    F = form.field
    uv = as_multivector(F, u)
    if uv.is_zero():
        raise ValueError("singular_directions needs u != 0")
    w2 = omega_u(form, uv)
    if w2.is_zero():
        return Subspace.full(F, form.n)
    return kernel_native(F, gram_native(w2, F.p), form.n)


def f_eval(form: AltForm, u):
    """f_omega(u): the scalar c with (omega_u)^(k) = c * iota(u)."""
    _require_odd(form)
    F = form.field
    uv = as_multivector(F, u)
    if uv.is_zero():
        return F.zero
    k = (form.n - 1) // 2
    rho = divided_power(pair(uv, form.omega), k)
    iota = vector_contract_volume(uv)
    mask, c0 = next(iter(iota.terms.items()))
    c = rho[mask] / c0
    if rho != iota * c:
        raise InternalProportionalityViolation(
            f"divided power of omega_u is not a multiple of iota(u) at u = {uv.to_vector()}"
        )
    return c


def f_poly(form: AltForm) -> HomogPoly:
    """f_omega as a polynomial in t_1..t_n; the zero polynomial when it
    vanishes identically (formally)."""
    _require_odd(form)
    n = form.n
    if n > F_POLY_MAX_N:
        raise SymbolicBoundExceeded(f"f_poly is limited to n <= {F_POLY_MAX_N}, got {n}")
    k = (n - 1) // 2
    R = PolyRing(form.field, n)
    t = R.gens()
    u = Multivector.from_vector(R, t)
    rho = divided_power(pair(u, promote(form.omega, R)), k)
    full = (1 << n) - 1
    # coefficient of x_{[n] - i} in rho is f * t_i * (-1)^i (0-based i)
    w = []
    for i in range(n):
        c = rho[full ^ (1 << i)]
        w.append(c if i % 2 == 0 else -c)
    first = next((i for i in range(n) if w[i]), None)
    if first is None:
        return R.zero
    f = poly_divide_exact(w[first], t[first])
    for i in range(n):
        if f * t[i] != w[i]:
            raise InternalProportionalityViolation(f"w_{i + 1} != f * t_{i + 1}")
    if f.degree != k - 1:
        raise InternalProportionalityViolation(f"f has degree {f.degree}, expected {k - 1}")
    return f


def f_vanishes_pointwise(form: AltForm) -> bool:
    """Whether f_omega vanishes at every point of the (finite) base field;
    weaker than formal vanishing when q is small."""
    F = form.field
    if not F.is_finite:
        raise ValueError("pointwise vanishing needs a finite field")
    return all(not f_eval(form, list(map(int, u))) for u in projective_points(form.n, F.p))


def _qq_scan_values(bound: int) -> list:
    vals = [0]
    for a in range(1, bound + 1):
        vals += [a, -a]
    return vals


def _candidate_points(form: AltForm, bound: int):
    F = form.field
    if F.is_finite:
        for u in projective_points(form.n, F.p):
            yield tuple(F(int(x)) for x in u)
        return
    if form.n % 2 and form.n <= F_POLY_MAX_N:
        yield from _qq_zeros_of_f(form, bound)
        return
    for u in itertools.product(_qq_scan_values(bound), repeat=form.n):
        nz = next((x for x in u if x), 0)
        if nz > 0:
            yield tuple(Fraction(x) for x in u)


def _qq_zeros_of_f(form: AltForm, bound: int):
    """Scan points (same order as the plain scan) keeping only zeros of
    f_omega, which for odd n are exactly the points on singular lines."""
    n = form.n
    f = f_poly(form)
    vals = np.array(_qq_scan_values(bound), dtype=np.int64)
    if f.terms:
        den = math.lcm(*(c.denominator for c in f.terms.values()))
        coeffs = [int(c * den) for c in f.terms.values()]
        exps = np.array(list(f.terms), dtype=np.int64)
        exact = max(abs(c) for c in coeffs) * len(coeffs) * bound ** f.degree < 2**62
        C = np.array(coeffs, dtype=np.int64 if exact else object)
    tail = min(n, 6)
    block = np.stack(np.meshgrid(*[vals] * tail, indexing="ij"), -1).reshape(-1, tail)
    for head in itertools.product(vals.tolist(), repeat=n - tail):
        pts = np.hstack([np.tile(np.array(head, dtype=np.int64), (len(block), 1)), block])
        nz = pts != 0
        first = pts[np.arange(len(pts)), nz.argmax(axis=1)]
        keep = first > 0
        if f.terms:
            mons = np.prod(pts[:, None, :].astype(C.dtype) ** exps[None, :, :], axis=2)
            keep &= (mons @ C) == 0
        for u in pts[keep].tolist():
            yield tuple(Fraction(x) for x in u)


def _partner(form: AltForm, u: tuple) -> Optional[tuple]:
    dirs = singular_directions(form, u)
    if dirs.dim < 2:
        return None
    for b in dirs.basis:
        if _independent(u, b):
            return b
    return None


def find_singular_line(form: AltForm, u=None, bound: int = QQ_SEARCH_BOUND) -> SingularLineCertificate:
    """A certified singular line.

    Even n: the line through ``u`` (default e_1) always exists.  Odd n: if
    ``u`` is given only lines through it are considered; otherwise points are
    scanned in lexicographic order (over QQ, coordinates in [-bound, bound]).
    """
    _require_trilinear(form)
    F, n = form.field, form.n
    if n < 4:
        raise ValueError("singular lines are searched for n >= 4")
    if u is None and n % 2 == 0:
        u = [int(i == 0) for i in range(n)]
    if u is not None:
        u = tuple(F(x) for x in u)
        v = _partner(form, u)
        if v is None:
            raise NoSingularLineFound(f"no singular line through {list(map(str, u))}")
        cert = SingularLineCertificate(u, v)
    else:
        cert = None
        for cand in _candidate_points(form, bound):
            v = _partner(form, cand)
            if v is not None:
                cert = SingularLineCertificate(cand, v)
                break
        if cert is None:
            raise NoSingularLineFound(
                f"no singular line found with coordinates in [-{bound}, {bound}]", bound=bound
            )
    if not cert.verify(form):
        raise AssertionError("singular line certificate failed verification")
    return cert


def find_singular_space(form: AltForm, bound: int = QQ_SEARCH_BOUND) -> Subspace:
    """An (e-1)-dimensional subspace U with <wedge^(e-1) U, omega> = 0.

    Contract with the wedge of the last e-3 basis vectors, find a singular
    line of the resulting trilinear form on the quotient, and lift it.
    """
    e, n, F = form.e, form.n, form.field
    if e < 3:
        raise ValueError("find_singular_space needs degree e >= 3")
    if n <= e:
        raise DimensionTooSmall(
            f"a {e}-form on a {n}-dimensional space need not have singular {e - 1}-spaces"
        )
    if e == 3:
        return find_singular_line(form, bound=bound).line
    tail = list(range(n - (e - 3), n))
    lam = wedge_all([Multivector.basis(n, [j], F) for j in tail], n, F, Multivector)
    w3 = pair(lam, form.omega)
    for j in tail:
        if pair(Multivector.basis(n, [j], F), w3):
            raise AssertionError("contracted form does not descend to the quotient")
    m = n - len(tail)
    quotient = AltForm(FormVector(m, 3, F, w3.terms))
    cert = find_singular_line(quotient, bound=bound)
    pad = [F.zero] * (n - m)
    basis = [list(cert.u) + pad, list(cert.v) + pad]
    basis += [[int(i == j) for i in range(n)] for j in tail]
    U = Subspace(F, n, basis)
    if U.dim != e - 1 or not is_singular_subspace(form, U, e - 1):
        raise AssertionError("lifted subspace is not singular")
    return U


# ---------------------------------------------------------------------------
# exhaustive oracles over finite fields


def _singular_pairs_mask(T: np.ndarray, a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Rows l with omega(a_l, b_l, .) == 0, vectorized."""
    out = np.empty(len(a), dtype=bool)
    for s in range(0, len(a), _CHUNK):
        A = np.einsum("li,ijk->ljk", a[s : s + _CHUNK], T) % p
        V = np.einsum("ljk,lj->lk", A, b[s : s + _CHUNK]) % p
        out[s : s + _CHUNK] = ~V.any(axis=1)
    return out


def enumerate_singular_lines(form: AltForm, budget: Optional[int] = DEFAULT_BUDGET) -> list:
    """Every singular 2-dimensional subspace, by exhaustive check of all lines,
    sorted by RREF encoding."""
    _require_trilinear(form)
    F, n = form.field, form.n
    if not F.is_finite:
        raise ValueError("enumerate_singular_lines needs a finite field")
    p = F.p
    check_budget(gaussian_binomial(n, 2, p), budget, "enumerate_singular_lines")
    B = rref_bases(n, 2, p)
    hits = np.nonzero(_singular_pairs_mask(form_tensor(form), B[:, 0], B[:, 1], p))[0]
    lines = [Subspace._from_native(F, n, B[h].tolist()) for h in hits]
    return sorted(lines, key=Subspace.key)


def points_on(subspaces: Sequence[Subspace]) -> set:
    """All nonzero vectors (as int tuples) lying in any of the subspaces."""
    out = set()
    for S in subspaces:
        p = S.field.p
        M = np.array([[x.v for x in r] for r in S.basis], dtype=np.int64)
        coeffs = np.array(list(itertools.product(range(p), repeat=S.dim))[1:], dtype=np.int64)
        for v in (coeffs @ M) % p:
            out.add(tuple(int(x) for x in v))
    return out


def singular_line_union(form: AltForm, budget: Optional[int] = DEFAULT_BUDGET) -> set:
    return points_on(enumerate_singular_lines(form, budget))


# ---------------------------------------------------------------------------
# definiteness of quadrics over QQ


class Definiteness(enum.Enum):
    POSITIVE = "positive-definite"
    NEGATIVE = "negative-definite"
    INDEFINITE_OR_DEGENERATE = "indefinite-or-degenerate"

    @property
    def is_definite(self) -> bool:
        return self is not Definiteness.INDEFINITE_OR_DEGENERATE


def quadratic_definiteness(f: HomogPoly) -> Definiteness:
    """Sign pattern of the pivots of the symmetric Gram matrix of a quadric.

    A definite form has no nonzero rational root.
    """
    if f.ring.base != QQ:
        raise ValueError("quadratic_definiteness works over QQ")
    if f.degree != 2:
        raise ValueError(f"expected a quadratic form, got degree {f.degree}")
    n = f.ring.nvars
    S = [[Fraction(0)] * n for _ in range(n)]
    for e, c in f.terms.items():
        idx = [i for i, a in enumerate(e) for _ in range(a)]
        i, j = idx
        if i == j:
            S[i][i] += c
        else:
            S[i][j] += c / 2
            S[j][i] += c / 2
    signs = set()
    for i in range(n):
        piv = S[i][i]
        if piv == 0:
            return Definiteness.INDEFINITE_OR_DEGENERATE
        signs.add(piv > 0)
        for r in range(i + 1, n):
            fac = S[r][i] / piv
            if fac:
                for c in range(i, n):
                    S[r][c] -= fac * S[i][c]
    if signs == {True}:
        return Definiteness.POSITIVE
    if signs == {False}:
        return Definiteness.NEGATIVE
    return Definiteness.INDEFINITE_OR_DEGENERATE
