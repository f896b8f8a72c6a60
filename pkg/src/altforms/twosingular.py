"""2-singular subspaces of non-degenerate trilinear forms.

For n = dim V let s be the integer with C(s, 2) < n <= C(s+1, 2).  A
non-degenerate trilinear form has no 2-singular subspace of codimension below
s, the forms omega_L built here attain codimension s, and when n = C(s+1, 2)
every non-degenerate form attaining it is GL(V)-equivalent to omega_L
(:func:`normalize` produces the group element).

Coordinates: W = span(e_1..e_s) comes first and U = span(e_{s+1}..e_n) last,
so for n = 6 the canonical form is x2^x3^x4 + x1^x3^x5 + x1^x2^x6.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Optional

import numpy as np

from .errors import Degenerate, No2SingularSubspace, NotBinomialDimension
from .exterior import FormVector, Multivector, gram_matrix, pair, wedge
from .forms import AltForm, form_tensor, gl_act, is_nondegenerate, is_singular_subspace
from .linalg import (
    Matrix,
    Subspace,
    block_diag,
    check_budget,
    gaussian_binomial,
    kernel,
    rref_bases,
    solve,
)
from .rings import FieldSpec
from .singular import DEFAULT_BUDGET, _singular_pairs_mask


def codim_bound(n: int) -> int:
    """The s >= 2 with C(s, 2) < n <= C(s+1, 2)."""
    if n < 3:
        raise ValueError("codim_bound needs n >= 3")
    s = 2
    while comb(s + 1, 2) < n:
        s += 1
    return s


def is_2_singular(form: AltForm, U: Subspace) -> bool:
    return is_singular_subspace(form, U, 2)


@dataclass(frozen=True)
class TwoSingularProfile:
    """The split V = W + U and the injection L: U -> 2-forms on W.

    Row j of ``L`` holds L(e_{s+1+j}) in the basis x_a ^ x_b (a < b <= s) of
    2-forms on W, in lexicographic order of (a, b).
    """

    n: int
    s: int
    field: FieldSpec
    L: Matrix

    @property
    def r(self) -> int:
        return self.n - self.s

    @property
    def W(self) -> Subspace:
        return Subspace.coordinate(self.field, self.n, range(self.s))

    @property
    def U(self) -> Subspace:
        return Subspace.coordinate(self.field, self.n, range(self.s, self.n))

    def pair_order(self) -> list:
        return list(itertools.combinations(range(self.s), 2))

    def image(self, j: int) -> FormVector:
        """L(e_{s+1+j}) as a 2-form on V."""
        items = [(c, ab) for c, ab in zip(self.L.rows[j], self.pair_order())]
        return FormVector.from_index_terms(self.n, 2, self.field, items)

    def image_of(self, mu) -> FormVector:
        """L applied to a vector of U given by its r coordinates."""
        out = FormVector.zero(self.n, 2, self.field)
        for j, c in enumerate(mu):
            if c:
                out = out + self.image(j) * c
        return out

    def check(self):
        if not comb(self.s, 2) < self.n <= comb(self.s + 1, 2):
            raise AssertionError("s is not the codimension bound of n")
        if self.L.rank() != self.r:
            raise AssertionError("L is not injective")
        if _joint_radical(self.field, self.s, [self.image(j) for j in range(self.r)]).dim:
            raise AssertionError("the radicals of the images of L meet nontrivially")


def _restrict_gram(w2: FormVector, s: int) -> Matrix:
    G = gram_matrix(w2)
    return Matrix(G.field, [r[:s] for r in G.rows[:s]], ncols=s)


def _joint_radical(F: FieldSpec, s: int, images: list) -> Subspace:
    rows = []
    for w2 in images:
        rows.extend(_restrict_gram(w2, s).rows)
    if not rows:
        return Subspace.full(F, s)
    return kernel(Matrix(F, rows, ncols=s))


def _coords(w2: FormVector, s: int) -> list:
    return [w2[ab] for ab in itertools.combinations(range(s), 2)]


def _choose_images(F: FieldSpec, n: int, s: int, r: int) -> list:
    """Images of the basis of U: the basis 2-forms of W in reverse
    lexicographic order; if their radicals share a vector, a full-rank form
    (s even) or two rank-(s-1) forms with distinct radicals (s odd) are put
    first and the rest is filled greedily with independent basis forms."""
    basis = [FormVector.basis(n, ab, F) for ab in reversed(list(itertools.combinations(range(s), 2)))]
    images = basis[:r]
    if _joint_radical(F, s, images).dim == 0:
        return images
    if s % 2 == 0:
        corrections = [sum_pairs(F, n, [(2 * i, 2 * i + 1) for i in range(s // 2)])]
    else:
        h = (s - 1) // 2
        corrections = [
            sum_pairs(F, n, [(2 * i, 2 * i + 1) for i in range(h)]),
            sum_pairs(F, n, [(2 * i + 1, 2 * i + 2) for i in range(h)]),
        ]
    chosen, rows = [], []
    for cand in corrections + basis:
        trial = rows + [_coords(cand, s)]
        if Matrix(F, trial).rank() == len(trial):
            chosen.append(cand)
            rows = trial
        if len(chosen) == r:
            break
    return chosen


def sum_pairs(F: FieldSpec, n: int, pairs) -> FormVector:
    return FormVector.from_index_terms(n, 2, F, [(1, ab) for ab in pairs])


def canonical_form(n: int, field: FieldSpec):
    """The form omega_L = sum_j x_{s+1+j} ^ L(e_{s+1+j}) and its profile."""
    s = codim_bound(n)
    r = n - s
    if n == 4:
        # every trilinear form on K^4 is decomposable, hence degenerate
        raise Degenerate("no non-degenerate trilinear form exists on a 4-dimensional space")
    images = _choose_images(field, n, s, r)
    omega = FormVector.zero(n, 3, field)
    for j, img in enumerate(images):
        omega = omega + wedge(FormVector.basis(n, [s + j], field), img)
    L = Matrix(field, [_coords(img, s) for img in images], ncols=comb(s, 2))
    profile = TwoSingularProfile(n, s, field, L)
    profile.check()
    form = AltForm(omega)
    if not is_nondegenerate(form):
        raise AssertionError("canonical form is degenerate")
    if not is_2_singular(form, profile.U):
        raise AssertionError("U is not 2-singular for the canonical form")
    return form, profile


def quotient_contraction_rank(form: AltForm, U: Subspace) -> int:
    """Rank of u -> <u, omega> on a 2-singular U; each image vanishes on
    U x V, so this is the rank of the induced map into 2-forms on V/U."""
    F = form.field
    rows = []
    for b in U.basis:
        img = pair(Multivector.from_vector(F, b), form.omega)
        rows.append([img[ab] for ab in itertools.combinations(range(form.n), 2)])
    return Matrix(F, rows, ncols=comb(form.n, 2)).rank() if rows else 0


def enumerate_2_singular(form: AltForm, d: int, budget: Optional[int] = DEFAULT_BUDGET) -> list:
    """All d-dimensional 2-singular subspaces, exhaustively, sorted."""
    F, n = form.field, form.n
    if form.e != 3:
        raise ValueError("enumerate_2_singular needs a trilinear form")
    if not F.is_finite:
        raise ValueError("enumerate_2_singular needs a finite field")
    if not 0 <= d <= n:
        return []
    p = F.p
    check_budget(gaussian_binomial(n, d, p), budget, "enumerate_2_singular")
    B = rref_bases(n, d, p)
    ok = np.ones(len(B), dtype=bool)
    if d >= 2:
        T = form_tensor(form)
        for a, b in itertools.combinations(range(d), 2):
            idx = np.nonzero(ok)[0]
            ok[idx] = _singular_pairs_mask(T, B[idx, a], B[idx, b], p)
    return sorted(
        (Subspace._from_native(F, n, B[h].tolist()) for h in np.nonzero(ok)[0]), key=Subspace.key
    )


def normalize(form: AltForm, U: Optional[Subspace] = None, budget: Optional[int] = DEFAULT_BUDGET) -> Matrix:
    """An invertible g with ``gl_act(g, form)`` equal to the canonical form.

    Only for n = C(s+1, 2).  ``U`` is a 2-singular subspace of codimension s;
    it is searched for exhaustively when omitted (finite fields only).
    """
    F, n = form.field, form.n
    if form.e != 3:
        raise ValueError("normalize needs a trilinear form")
    s = codim_bound(n)
    if n != comb(s + 1, 2):
        raise NotBinomialDimension(f"n = {n} is not of the form C(s+1, 2)")
    if not is_nondegenerate(form):
        raise Degenerate("the form has a nontrivial radical")
    r = n - s
    if U is None:
        found = enumerate_2_singular(form, r, budget)
        if not found:
            raise No2SingularSubspace(f"no 2-singular subspace of codimension {s}")
        U = found[0]
    elif U.dim != r or not is_2_singular(form, U):
        raise No2SingularSubspace(f"the given subspace is not 2-singular of codimension {s}")
    canon, prof = canonical_form(n, F)

    # move U to span(e_{s+1}, ..., e_n), a coordinate complement to span(e_1..e_s)
    cols = [[int(i == c) for i in range(n)] for c in U.complement_indices()] + list(U.basis)
    g1 = Matrix.from_columns(F, cols).inverse()
    w1 = gl_act(g1, form)

    # A = L^-1 L' on U makes the U* (x) 2-forms(W) components agree
    Lp = Matrix(F, [_coords(pair(Multivector.basis(n, [s + j], F), w1.omega), s) for j in range(r)])
    A = prof.L.transpose().inverse() @ Lp.transpose()
    g2 = block_diag(F, Matrix.identity(F, s), A)
    w2 = gl_act(g2, w1)

    # B: W -> U kills the remaining component mu' in the cube of W*
    triples = list(itertools.combinations(range(s), 3))
    mu = [w2.omega[t] for t in triples]
    unknowns = [(k, l) for k in range(r) for l in range(s)]
    columns = []
    for k, l in unknowns:
        img = wedge(FormVector.basis(n, [l], F), prof.image(k))
        columns.append([img[t] for t in triples])
    g = g2 @ g1
    if triples and any(mu):
        b = solve(Matrix.from_columns(F, columns), mu)
        if b is None:
            raise AssertionError("B-step system is inconsistent; L should be surjective")
        g3 = [[F(int(i == j)) for j in range(n)] for i in range(n)]
        for (k, l), x in zip(unknowns, b):
            g3[s + k][l] = x
        g = Matrix(F, g3) @ g
    if gl_act(g, form) != canon:
        raise AssertionError("normalization did not reach the canonical form")
    return g


def predicted_singular_lines(profile: TwoSingularProfile, budget: Optional[int] = DEFAULT_BUDGET) -> list:
    """Singular lines of the canonical form from the classification: all
    lines inside U, and K mu1 + K(mu2 + w2) with w2 in the radical of L(mu1)."""
    F, n, s, r = profile.field, profile.n, profile.s, profile.r
    if not F.is_finite:
        raise ValueError("predicted_singular_lines needs a finite field")
    p = F.p
    check_budget(gaussian_binomial(n, 2, p), budget, "predicted_singular_lines")

    def embed(mu, w=None):
        w = list(w) if w is not None else [0] * s
        return [int(x) for x in w] + [int(x) for x in mu]

    lines = set()
    if r >= 2:
        for B in rref_bases(r, 2, p):
            lines.add(Subspace(F, n, [embed(row) for row in B.tolist()]))
    U_all = list(itertools.product(range(p), repeat=r))
    for mu1 in U_all[1:]:
        if next(x for x in mu1 if x) != 1:
            continue
        rad = kernel(_restrict_gram(profile.image_of(mu1), s))
        for w2 in rad.vectors():
            if not any(w2) or next(x for x in w2 if x) != 1:
                continue
            for mu2 in U_all:
                lines.add(Subspace(F, n, [embed(mu1), embed(mu2, w2)]))
    return sorted(lines, key=Subspace.key)
