import random
import warnings

import pytest
from hypothesis import given, strategies as st

from quadgor.errors import NotArtinian, TooFewVariables, ZeroInput
from quadgor.field import GF, QQ
from quadgor.groebner import Ideal
from quadgor.inverse import (
    InversePolynomial, annihilator, contract, dual_module, dual_ring, example_G, family_F, primal_ring,
)
from quadgor.linalg import rank
from quadgor.quotient import QuotientRing
from quadgor.resolution import koszul_homology_betti
from quadgor.ring import monomials_of_degree


def random_inverse(n, r, seed, field=GF(101), terms=4):
    rng = random.Random(seed)
    D = dual_ring(n, field)
    return InversePolynomial(D.random_form(r, rng, density=terms / D.dim(r)) or D.monomial((r,) + (0,) * (n - 1)))


def contraction_rank(F, d):
    """Oracle: dim R_d = rank of S_d -> D_{r-d}, m -> m . F."""
    S = primal_ring(F.n, F.field)
    vecs, idx = [], {}
    for m in monomials_of_degree(F.n, d):
        img = contract(S.monomial(m), F)
        vecs.append({idx.setdefault(e, len(idx)): c for e, c in img.terms.items()})
    return rank(vecs, F.field)


def test_contraction_action():
    S = primal_ring(2, QQ)
    F = InversePolynomial.parse("y0^2*y1 + y1^3", 2, QQ)
    assert (S.parse("x0") * F) == InversePolynomial.parse("y0*y1", 2, QQ)
    assert (S.parse("x1^2") * F) == InversePolynomial.parse("y1", 2, QQ)
    assert (S.parse("x0^3") * F).is_zero()


@pytest.mark.parametrize("seed", range(6))
@pytest.mark.parametrize("n,r", [(3, 3), (3, 4), (4, 3)])
def test_annihilator_dual_round_trip(n, r, seed):
    F = random_inverse(n, r, seed)
    I = annihilator(F)
    h = I.hilbert().h
    assert h == [contraction_rank(F, d) for d in range(r + 1)]
    assert h == h[::-1]
    back = dual_module(I)
    assert len(back) == 1
    G = back[0]
    # equal up to a nonzero scalar
    e, c = next(iter(F.terms.items()))
    assert G.scale(F.field.inv(G.terms[e]) * c % F.field.char) == F


@pytest.mark.parametrize("seed", range(4))
def test_quotient_constructions_agree(seed):
    F = random_inverse(4, 3, seed, GF())
    A = QuotientRing.from_inverse(F)
    B = QuotientRing.from_ideal(annihilator(F))
    assert A.hilbert_function() == B.hilbert_function()
    assert A.socle_dimensions() == B.socle_dimensions() == [0] * A.top + [1]
    assert koszul_homology_betti(A) == koszul_homology_betti(B)


def test_quotient_of_non_artinian_ideal():
    S = primal_ring(2, QQ)
    with pytest.raises(NotArtinian):
        QuotientRing.from_ideal(Ideal(S, [S.parse("x0^2")]))


def test_zero_inverse_polynomial():
    with pytest.raises(ZeroInput):
        annihilator(InversePolynomial(dual_ring(2, QQ).zero()))


@pytest.mark.parametrize("c", range(3, 12))
def test_family_has_one_term_per_cyclic_index(c):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        assert len(family_F(c)) == c


def test_family_bounds():
    with pytest.raises(TooFewVariables):
        family_F(2)
    with pytest.warns(UserWarning):
        family_F(6)


@pytest.mark.parametrize("c", [7, 8, 9, 10])
def test_family_generators_and_h_vector(family_ideals, c):
    I = family_ideals[c]
    degrees = [g.degree() for g in I.minimal_generators()]
    assert degrees == [2] * (c * (c - 3) // 2)
    assert I.hilbert().h == [1, c, 2 * c, c, 1]


def test_family_c6_generators(family_ideals):
    # frozen from this engine and checked against the contraction oracle below
    degrees = sorted(g.degree() for g in family_ideals[6].minimal_generators())
    assert degrees == [2] * 9 + [3] * 2


def test_family_c6_quadric_count_by_contraction():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        F = family_F(6)
    # quadrics in the annihilator = dim S_2 - dim R_2
    assert 21 - contraction_rank(F, 2) == 9


def test_family_quadric_count_splits_into_monomials_and_binomials(family_ideals):
    for c in (7, 8, 9, 10):
        gens = family_ideals[c].minimal_generators()
        monos = [g for g in gens if len(g.terms) == 1]
        binos = [g for g in gens if len(g.terms) == 2]
        assert len(monos) == c * (c - 5) // 2
        assert len(binos) == c
        assert len(monos) + len(binos) == c * (c - 3) // 2


def test_example_G_over_rationals(ideal_G):
    assert [g.degree() for g in ideal_G.minimal_generators()] == [2] * 9
    assert ideal_G.hilbert().h == [1, 6, 12, 6, 1]
    assert dual_module(ideal_G) == [example_G(QQ)]


@given(st.integers(0, 10**6))
def test_contraction_is_a_module_action(seed):
    rng = random.Random(seed)
    S = primal_ring(3, QQ)
    F = InversePolynomial(dual_ring(3, QQ).random_form(4, rng, 0.5))
    f, g = S.random_form(1, rng), S.random_form(2, rng)
    assert contract(f * g, F) == contract(f, contract(g, F))
    assert contract(f + S.random_form(1, rng) * 0, F) == contract(f, F)
