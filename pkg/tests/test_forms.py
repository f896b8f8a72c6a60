import itertools
import random

import pytest

from altforms.exterior import FormVector, Multivector, pair
from altforms.forms import (
    LIBRARY,
    AltForm,
    builtin,
    example_n6,
    fano7,
    form_tensor,
    gl_act,
    is_nondegenerate,
    is_singular_subspace,
    killing_check,
    killing_sl,
    killing_trilinear,
    radical,
    random_form,
    sl_basis,
    triple_sum,
)
from altforms.linalg import Matrix, Subspace, random_invertible, span
from altforms.rings import GF, QQ


def form(F, n, *terms):
    return AltForm.from_terms(F, n, len(terms[0]), [(1, t) for t in terms], one_based=True)


def test_radical_examples():
    assert radical(form(QQ, 4, (1, 2, 3))) == Subspace.coordinate(QQ, 4, [3])
    assert radical(fano7(QQ)).dim == 0
    assert radical(triple_sum(3)).dim == 0


def test_radical_of_zero_form():
    z = AltForm(FormVector.zero(4, 3, GF(2)))
    assert radical(z) == Subspace.full(GF(2), 4)


@pytest.mark.parametrize("F", [GF(2), GF(3), QQ])
def test_radical_equivariance(F):
    rng = random.Random(4)
    for seed in range(15):
        n = rng.randint(3, 7)
        # a form with a built-in radical: use fewer coordinates
        m = rng.randint(3, n)
        om = random_form(m, 3, F, seed)
        om = AltForm(FormVector(n, 3, F, om.omega.terms))
        g = random_invertible(n, F, seed)
        assert radical(gl_act(g, om)) == radical(om).image(g)


def test_singular_subspace_examples():
    w = example_n6(QQ)
    assert is_singular_subspace(w, Subspace.coordinate(QQ, 6, [3, 4, 5]), 2)
    assert not is_singular_subspace(w, Subspace.coordinate(QQ, 6, [0, 1]), 2)
    for v in ([1, 2, 3, 4, 5, 6], [0] * 6):
        assert is_singular_subspace(w, span(QQ, [v], 6), 2)
    with pytest.raises(ValueError):
        is_singular_subspace(w, Subspace.full(QQ, 6), 4)


def test_singular_subspace_basis_invariance():
    rng = random.Random(2)
    F = GF(3)
    for seed in range(20):
        om = random_form(5, 3, F, seed)
        vecs = [[F.random_element(rng) for _ in range(5)] for _ in range(rng.randint(1, 3))]
        U = span(F, vecs, 5)
        if U.dim == 0:
            continue
        # brute force over all pairs of vectors in U, independent of the basis
        mv = [Multivector.from_vector(F, list(v)) for v in U.vectors()]
        all_pairs = all(not pair(a ^ b, om.omega) for a, b in itertools.combinations(mv, 2))
        assert is_singular_subspace(om, U, 2) == all_pairs
        g = random_invertible(U.dim, F, seed)
        rebased = span(F, [[sum((g[i, k] * U.basis[k][j] for k in range(U.dim)), F.zero)
                            for j in range(5)] for i in range(U.dim)], 5)
        assert rebased == U
        assert is_singular_subspace(om, rebased, 2) == all_pairs


def test_gl_act_identity_and_action_axiom():
    F = GF(3)
    for seed in range(10):
        om = random_form(5, 3, F, seed)
        assert gl_act(Matrix.identity(F, 5), om) == om
        g, h = random_invertible(5, F, seed), random_invertible(5, F, seed + 50)
        assert gl_act(g @ h, om) == gl_act(g, gl_act(h, om))


def test_gl_act_definition():
    F = GF(5)
    rng = random.Random(1)
    for seed in range(10):
        om = random_form(4, 3, F, seed)
        g = random_invertible(4, F, seed)
        gi = g.inverse()
        vs = [[F.random_element(rng) for _ in range(4)] for _ in range(3)]
        assert gl_act(g, om)(*vs) == om(*[gi @ v for v in vs])


def _perm_matrix(F, perm):
    rows = [[0] * len(perm) for _ in perm]
    for i, j in enumerate(perm):
        rows[j][i] = 1
    return Matrix(F, rows)


FANO_LINES = {frozenset(t) for t in [(0, 1, 3), (1, 2, 4), (2, 3, 5), (3, 4, 6), (4, 5, 0), (5, 6, 1), (6, 0, 2)]}


def test_fano_cyclic_shift():
    shift = [(i + 1) % 7 for i in range(7)]
    for F in (GF(2), GF(3), QQ):
        assert gl_act(_perm_matrix(F, shift), fano7(F)) == fano7(F)


def test_fano_collineations_gf2():
    F = GF(2)
    count = 0
    for perm in itertools.permutations(range(7)):
        if {frozenset(perm[i] for i in L) for L in FANO_LINES} == FANO_LINES:
            count += 1
            assert gl_act(_perm_matrix(F, perm), fano7(F)) == fano7(F)
    assert count == 168


def test_random_form():
    F = GF(3)
    assert random_form(5, 3, F, 9) == random_form(5, 3, F, 9)
    assert len(random_form(4, 4, F, 1).omega.terms) <= 1
    for _, c in random_form(6, 3, F, 2).items():
        assert c.p == 3
    with pytest.raises(ValueError):
        random_form(3, 4, F, 0)


def test_altform_evaluation_alternates():
    F = GF(7)
    rng = random.Random(0)
    om = random_form(5, 3, F, 3)
    for _ in range(20):
        a, b, c = ([F.random_element(rng) for _ in range(5)] for _ in range(3))
        v = om(a, b, c)
        assert om(b, a, c) == -v and om(a, c, b) == -v
        assert om(a, a, c) == 0


def test_form_tensor_matches_evaluation():
    F = GF(3)
    om = random_form(5, 3, F, 4)
    T = form_tensor(om)
    E = [[int(i == j) for i in range(5)] for j in range(5)]
    for i, j, k in itertools.product(range(5), repeat=3):
        assert T[i, j, k] == int(om(E[i], E[j], E[k]))


def test_builtins():
    f = builtin("fano7", field=GF(2))
    assert f.n == 7 and f.e == 3 and len(f.omega.terms) == 7
    t = builtin("triple_sum", m=3)
    assert t == form(QQ, 9, (1, 2, 3), (4, 5, 6), (7, 8, 9))
    with pytest.raises(ValueError):
        builtin("nope")


@pytest.mark.parametrize("name", sorted(LIBRARY))
def test_library_properties(name):
    entry = LIBRARY[name]
    built = entry.build(field=GF(101)) if name == "killing_sl" else entry.build()
    assert all(entry.check(built).values())


def test_killing_sl4():
    K = killing_sl(4, GF(101))
    assert K.n == 15 and K.e == 3
    assert killing_check(K, trials=30)
    assert is_nondegenerate(K)


def test_killing_bad_characteristic():
    with pytest.raises(ValueError):
        killing_sl(4, GF(2))
    with pytest.raises(ValueError):
        killing_sl(3, GF(3))


def test_killing_trilinear_structure():
    B = sl_basis(3)
    assert len(B) == 8
    # ad-invariance: kappa([X, Y], Z) = kappa(X, [Y, Z])
    rng = random.Random(0)
    for _ in range(10):
        X, Y, Z = (
            [[sum(c * b[i][j] for c, b in zip(cs, B)) for j in range(3)] for i in range(3)]
            for cs in ([rng.randint(-2, 2) for _ in B] for _ in range(3))
        )
        assert killing_trilinear(X, Y, Z) == killing_trilinear(Y, Z, X)
