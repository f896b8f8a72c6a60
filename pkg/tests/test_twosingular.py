import itertools
from math import comb

import pytest

from altforms.errors import Degenerate, No2SingularSubspace, NotBinomialDimension
from altforms.exterior import FormVector, Multivector, pair
from altforms.forms import AltForm, example_n6, gl_act, is_nondegenerate, radical, random_form
from altforms.linalg import Subspace, gaussian_binomial, random_invertible, span
from altforms.rings import GF, QQ
from altforms.singular import enumerate_singular_lines
from altforms.twosingular import (
    canonical_form,
    codim_bound,
    enumerate_2_singular,
    is_2_singular,
    normalize,
    predicted_singular_lines,
    quotient_contraction_rank,
)


def test_codim_bound():
    assert [codim_bound(n) for n in (3, 4, 6, 7, 10, 11)] == [2, 3, 3, 4, 4, 5]
    for n in range(3, 40):
        s = codim_bound(n)
        assert comb(s, 2) < n <= comb(s + 1, 2)
    with pytest.raises(ValueError):
        codim_bound(2)


def test_is_2_singular_examples():
    w = example_n6(QQ)
    assert is_2_singular(w, Subspace.coordinate(QQ, 6, [3, 4, 5]))
    assert not is_2_singular(w, Subspace.coordinate(QQ, 6, [0, 1, 2]))
    assert is_2_singular(w, span(QQ, [[1, 1, 1, 1, 1, 1]], 6))


def test_canonical_n6_is_example():
    for F in (GF(2), GF(3), QQ):
        form, prof = canonical_form(6, F)
        assert form == example_n6(F)
        assert prof.s == 3 and prof.r == 3
        assert prof.U == Subspace.coordinate(F, 6, [3, 4, 5])


def test_canonical_n3():
    form, prof = canonical_form(3, QQ)
    vol = AltForm(FormVector.volume(3, QQ))
    assert form == vol or form == AltForm(-vol.omega)


def test_canonical_n4_impossible():
    # every trilinear form on a 4-dimensional space is decomposable, hence degenerate
    for seed in range(30):
        assert not is_nondegenerate(random_form(4, 3, GF(5), seed))
    with pytest.raises(Degenerate):
        canonical_form(4, GF(2))


@pytest.mark.parametrize("F", [GF(2), GF(3), QQ], ids=str)
@pytest.mark.parametrize("n", [3, 5, 6, 7, 8, 9, 10])
def test_canonical_existence(n, F):
    form, prof = canonical_form(n, F)
    prof.check()
    assert radical(form).dim == 0
    assert is_2_singular(form, prof.U)
    assert prof.U.dim == n - codim_bound(n)


def test_canonical_deterministic():
    assert canonical_form(9, GF(3))[0] == canonical_form(9, GF(3))[0]


def test_enumerate_2_singular_examples():
    F = GF(2)
    form, prof = canonical_form(6, F)
    assert enumerate_2_singular(form, 3) == [prof.U]
    assert enumerate_2_singular(form, 4) == []
    z = AltForm(FormVector.zero(5, 3, F))
    assert len(enumerate_2_singular(z, 2)) == gaussian_binomial(5, 2, 2)
    for d in (0, 1):
        assert len(enumerate_2_singular(form, d)) == gaussian_binomial(6, d, 2)


def _nondegenerate(n, F, count, start=0):
    out, seed = [], start
    while len(out) < count:
        om = random_form(n, 3, F, seed)
        if is_nondegenerate(om):
            out.append(om)
        seed += 1
    return out


@pytest.mark.parametrize("n", [5, 6, 7])
def test_codimension_bound_holds(n):
    F = GF(2)
    s = codim_bound(n)
    for om in _nondegenerate(n, F, 4 if n == 7 else 10):
        assert enumerate_2_singular(om, n - s + 1) == []


@pytest.mark.parametrize("n", [5, 6])
def test_quotient_contraction_injective(n):
    F = GF(2)
    for om in _nondegenerate(n, F, 5):
        for d in range(1, n - codim_bound(n) + 1):
            for U in enumerate_2_singular(om, d):
                for b in U.basis:
                    img = pair(Multivector.from_vector(F, b), om.omega)
                    for c in U.basis:
                        assert pair(Multivector.from_vector(F, c), img).is_zero()
                assert quotient_contraction_rank(om, U) == U.dim


@pytest.mark.parametrize("p", [2, 3])
def test_normalize_orbit(p):
    F = GF(p)
    canon, _ = canonical_form(6, F)
    for seed in range(5):
        g = random_invertible(6, F, seed)
        h = normalize(gl_act(g, canon))
        assert gl_act(h, gl_act(g, canon)) == canon


def test_normalize_examples():
    F = GF(3)
    canon, prof = canonical_form(6, F)
    g = normalize(canon)
    assert gl_act(g, canon) == canon
    twisted = AltForm(canon.omega + FormVector.basis(6, [0, 1, 2], F))
    g = normalize(twisted, U=prof.U)
    assert gl_act(g, twisted) == canon
    with pytest.raises(Degenerate):
        normalize(AltForm.from_terms(F, 6, 3, [(1, (0, 1, 2))]))
    with pytest.raises(NotBinomialDimension):
        normalize(random_form(7, 3, F, 0))


def test_normalize_over_qq_with_given_subspace():
    F = QQ
    canon, prof = canonical_form(6, F)
    for seed in range(5):
        g = random_invertible(6, F, seed)
        moved = gl_act(g, canon)
        h = normalize(moved, U=prof.U.image(g))
        assert gl_act(h, moved) == canon


def test_normalize_without_2_singular_subspace():
    F = GF(2)
    for om in _nondegenerate(6, F, 40):
        if not enumerate_2_singular(om, 3):
            with pytest.raises(No2SingularSubspace):
                normalize(om)
            return
    pytest.fail("no test form without a 2-singular 3-space found")


@pytest.mark.parametrize("p", [2, 3])
def test_predicted_lines(p):
    F = GF(p)
    form, prof = canonical_form(6, F)
    pred = predicted_singular_lines(prof)
    assert pred == enumerate_singular_lines(form)
    lines_in_U = [S for S in pred if prof.U.contains_subspace(S)]
    assert len(lines_in_U) == gaussian_binomial(3, 2, p)


def test_predicted_lines_exclude_independent_w_parts():
    F = GF(2)
    _, prof = canonical_form(6, F)
    s = prof.s
    for S in predicted_singular_lines(prof):
        w_parts = span(F, [row[:s] for row in S.basis], s)
        assert w_parts.dim <= 1
    # the witness: any independent w1, w2 in W are separated by some image of L
    W = [tuple(F(c) for c in v) + (F.zero,) * prof.r for v in itertools.product(range(2), repeat=s)]
    for w1, w2 in itertools.combinations(W[1:], 2):
        mv1, mv2 = Multivector.from_vector(F, w1), Multivector.from_vector(F, w2)
        assert any(pair(mv1 ^ mv2, prof.image(j)).scalar_value() for j in range(prof.r))
