"""Alternating e-forms: radical, singularity predicates, the GL(V)-action,
and a small library of named forms."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from typing import Callable, Iterable

import numpy as np

from .exterior import (
    FormVector,
    Multivector,
    evaluate,
    map_power,
    pair,
    permutation_sign,
    wedge_all,
)
from .linalg import Matrix, Subspace, kernel
from .rings import QQ, FieldSpec


@dataclass(frozen=True)
class AltForm:
    """An alternating e-form (e >= 2) on K^n, wrapping its FormVector."""

    omega: FormVector

    def __post_init__(self):
        if not isinstance(self.omega, FormVector):
            raise TypeError("AltForm wraps a FormVector")
        if self.omega.grade < 2:
            raise ValueError("alternating forms here have degree at least 2")
        if not isinstance(self.omega.ring, FieldSpec):
            raise TypeError("AltForm coefficients must lie in a field")

    @classmethod
    def from_terms(cls, field: FieldSpec, n: int, e: int, items: Iterable, one_based: bool = False):
        """From ``(coeff, indices)`` pairs; unsorted indices pick up the
        permutation sign and repeated indices give zero."""
        shift = 1 if one_based else 0
        items = [(c, [i - shift for i in idx]) for c, idx in items]
        return cls(FormVector.from_index_terms(n, e, field, items))

    @property
    def n(self) -> int:
        return self.omega.n

    @property
    def e(self) -> int:
        return self.omega.grade

    @property
    def field(self) -> FieldSpec:
        return self.omega.ring

    def __call__(self, *vectors):
        if len(vectors) != self.e:
            raise ValueError(f"a {self.e}-form takes {self.e} arguments")
        return evaluate(self.omega, [as_multivector(self.field, v) for v in vectors])

    def contract(self, v) -> FormVector:
        return pair(as_multivector(self.field, v), self.omega)

    def __add__(self, other: "AltForm") -> "AltForm":
        return AltForm(self.omega + other.omega)

    def __sub__(self, other: "AltForm") -> "AltForm":
        return AltForm(self.omega - other.omega)

    def items(self):
        return self.omega.items()

    def __repr__(self):
        body = " + ".join(
            f"{c}*" + "^".join(f"x{i + 1}" for i in idx) for idx, c in self.items()
        ) or "0"
        return f"AltForm({self.field}, n={self.n}, e={self.e}: {body})"


def as_multivector(field: FieldSpec, v) -> Multivector:
    if isinstance(v, Multivector):
        return v
    return Multivector.from_vector(field, [field(x) for x in v])


def contraction_matrix(form: AltForm) -> Matrix:
    """Matrix of v -> <v, omega>: one column per basis vector, one row per
    (e-1)-subset that occurs."""
    n = form.n
    F = form.field
    rows: dict = {}
    for i in range(n):
        img = pair(Multivector.basis(n, [i], F), form.omega)
        for mask, c in img.terms.items():
            rows.setdefault(mask, [F.zero] * n)[i] = c
    return Matrix(F, [rows[m] for m in sorted(rows)], ncols=n)


def radical(form: AltForm) -> Subspace:
    M = contraction_matrix(form)
    if M.nrows == 0:
        return Subspace.full(form.field, form.n)
    return kernel(M)


def is_nondegenerate(form: AltForm) -> bool:
    return radical(form).dim == 0


def is_singular_subspace(form: AltForm, U: Subspace, f: int) -> bool:
    """Whether every f-dimensional subspace of ``U`` is singular for the form.

    It suffices to test wedges of f-subsets of a basis: they span the fth
    exterior power of U and the pairing is linear in that argument.
    """
    if f > form.e:
        raise ValueError(f"singularity order {f} exceeds the degree {form.e}")
    if U.dim < f:
        return True
    F = form.field
    vecs = [Multivector.from_vector(F, b) for b in U.basis]
    for combo in itertools.combinations(vecs, f):
        lam = wedge_all(list(combo), form.n, F, Multivector)
        if pair(lam, form.omega):
            return False
    return True


def gl_act(g: Matrix, form: AltForm) -> AltForm:
    """(g . omega)(v_1, ..., v_e) = omega(g^-1 v_1, ..., g^-1 v_e)."""
    return AltForm(map_power(g, form.omega))


def random_form(n: int, e: int, field: FieldSpec, seed) -> AltForm:
    """Independent uniform coefficients on every e-subset (lex order)."""
    if not 2 <= e <= n:
        raise ValueError("need 2 <= e <= n")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    items = [(field.random_element(rng), idx) for idx in itertools.combinations(range(n), e)]
    return AltForm.from_terms(field, n, e, items)


def form_tensor(form: AltForm) -> np.ndarray:
    """Dense array T[i1, ..., ie] = omega(e_i1, ..., e_ie) mod p, for the
    vectorized searches over finite fields."""
    F = form.field
    if not F.is_finite:
        raise ValueError("form_tensor needs a finite field")
    p = F.p
    T = np.zeros((form.n,) * form.e, dtype=np.int64)
    for idx, c in form.items():
        for perm in itertools.permutations(range(form.e)):
            T[tuple(idx[k] for k in perm)] = (c.v * permutation_sign(perm)) % p
    return T


# ---------------------------------------------------------------------------
# named forms


def fano7(field: FieldSpec = QQ) -> AltForm:
    """Sum of x_i ^ x_j ^ x_k over the seven lines {i, i+1, i+3} (mod 7) of
    the Fano plane; over the reals its only 2-planes are non-singular."""
    lines = [(1, 2, 4), (2, 3, 5), (3, 4, 6), (4, 5, 7), (5, 6, 1), (6, 7, 2), (7, 1, 3)]
    return AltForm.from_terms(field, 7, 3, [(1, t) for t in lines], one_based=True)


def example_n6(field: FieldSpec = QQ) -> AltForm:
    """x2^x3^x4 + x1^x3^x5 + x1^x2^x6; span(e4, e5, e6) is its unique
    2-singular subspace of codimension 3."""
    return AltForm.from_terms(
        field, 6, 3, [(1, (2, 3, 4)), (1, (1, 3, 5)), (1, (1, 2, 6))], one_based=True
    )


def triple_sum(m: int, field: FieldSpec = QQ) -> AltForm:
    """x1^x2^x3 + x4^x5^x6 + ... on 3m coordinates."""
    if m < 1:
        raise ValueError("m must be positive")
    items = [(1, (3 * i, 3 * i + 1, 3 * i + 2)) for i in range(m)]
    return AltForm.from_terms(field, 3 * m, 3, items)


def sl_basis(m: int) -> list:
    """Integer basis of traceless m x m matrices: E_ij for i != j in lex
    order, then H_i = E_ii - E_{i+1,i+1}."""
    basis = []
    for i in range(m):
        for j in range(m):
            if i != j:
                X = [[0] * m for _ in range(m)]
                X[i][j] = 1
                basis.append(X)
    for i in range(m - 1):
        X = [[0] * m for _ in range(m)]
        X[i][i] = 1
        X[i + 1][i + 1] = -1
        basis.append(X)
    return basis


def _matmul(X, Y):
    m = len(X)
    return [[sum(X[i][k] * Y[k][j] for k in range(m)) for j in range(m)] for i in range(m)]


def _bracket(X, Y):
    A, B = _matmul(X, Y), _matmul(Y, X)
    return [[a - b for a, b in zip(r, s)] for r, s in zip(A, B)]


def killing_trilinear(X, Y, Z) -> int:
    """kappa([X, Y], Z) with kappa(A, B) = 2m tr(AB), over the integers."""
    m = len(X)
    P = _matmul(_bracket(X, Y), Z)
    return 2 * m * sum(P[i][i] for i in range(m))


def killing_sl(m: int, field: FieldSpec = QQ) -> AltForm:
    """The trilinear form kappa([u, v], w) on sl_m in the basis of :func:`sl_basis`."""
    if m < 2:
        raise ValueError("m must be at least 2")
    p = field.characteristic()
    if p and (2 * m) % p == 0:
        raise ValueError(f"characteristic {p} divides 2m = {2 * m}; the Killing form degenerates")
    B = sl_basis(m)
    items = []
    for a, b, c in itertools.combinations(range(len(B)), 3):
        v = killing_trilinear(B[a], B[b], B[c])
        if v:
            items.append((v, (a, b, c)))
    return AltForm.from_terms(field, len(B), 3, items)


@dataclass(frozen=True)
class FormLibraryEntry:
    name: str
    description: str
    build: Callable[..., AltForm]
    # property name -> predicate on the built form
    properties: dict = dc_field(default_factory=dict)

    def check(self, form: AltForm) -> dict:
        return {k: bool(pred(form)) for k, pred in self.properties.items()}


def killing_check(form: AltForm, trials: int = 20, seed: int = 0) -> bool:
    """Evaluate kappa([X, Y], Z) on random traceless integer matrices: it must
    be antisymmetric in every pair of slots, vanish on repeated arguments, and
    agree with ``form`` on the coordinate vectors."""
    m = round((form.n + 1) ** 0.5)
    if m * m - 1 != form.n:
        return False
    rng = random.Random(seed)
    B = sl_basis(m)
    F = form.field

    def combo(c):
        return [[sum(ci * b[i][j] for ci, b in zip(c, B)) for j in range(m)] for i in range(m)]

    for _ in range(trials):
        a, b, c = ([rng.randint(-3, 3) for _ in range(form.n)] for _ in range(3))
        X, Y, Z = combo(a), combo(b), combo(c)
        val = killing_trilinear(X, Y, Z)
        swaps = (killing_trilinear(Y, X, Z), killing_trilinear(X, Z, Y), killing_trilinear(Z, Y, X))
        if any(v != -val for v in swaps):
            return False
        if killing_trilinear(X, X, Z) or killing_trilinear(X, Y, Y) or killing_trilinear(X, Y, X):
            return False
        if F(val) != form(a, b, c):
            return False
    return True


LIBRARY = {
    "fano7": FormLibraryEntry(
        "fano7",
        "seven Fano-plane triples, no singular lines over the reals",
        lambda field=QQ: fano7(field),
        {
            "n == 7": lambda f: f.n == 7,
            "seven terms": lambda f: len(f.omega.terms) == 7,
            "non-degenerate": is_nondegenerate,
        },
    ),
    "example_n6": FormLibraryEntry(
        "example_n6",
        "x234 + x135 + x126 with span(e4, e5, e6) 2-singular",
        lambda field=QQ: example_n6(field),
        {
            "non-degenerate": is_nondegenerate,
            "span(e4,e5,e6) 2-singular": lambda f: is_singular_subspace(
                f, Subspace.coordinate(f.field, 6, [3, 4, 5]), 2
            ),
        },
    ),
    "triple_sum": FormLibraryEntry(
        "triple_sum",
        "x123 + x456 + ... on 3m coordinates",
        lambda m=3, field=QQ: triple_sum(m, field),
        {"non-degenerate": is_nondegenerate},
    ),
    "killing_sl": FormLibraryEntry(
        "killing_sl",
        "kappa([u, v], w) on sl_m",
        lambda m=2, field=QQ: killing_sl(m, field),
        {"alternating": killing_check, "non-degenerate": is_nondegenerate},
    ),
}


def builtin(name: str, field: FieldSpec = QQ, **params) -> AltForm:
    try:
        entry = LIBRARY[name]
    except KeyError:
        raise ValueError(f"unknown builtin form {name!r}; choose from {sorted(LIBRARY)}") from None
    return entry.build(field=field, **params)
