import pytest
from hypothesis import assume, given, strategies as st

from quadgor.errors import UnitIdeal
from quadgor.field import GF, QQ
from quadgor.groebner import (
    Ideal, buchberger, colon, dimension, intersect, is_regular_sequence, minimal_generators, normal_form, syzygies,
)
from quadgor.ring import GradedFreeModule, ModuleElement, MonomialOrder, PolynomialRing, monomials_of_degree

from quadgor.resolution import minimal_module_generators

import oracles
from strategies import forms

R4 = PolynomialRing(4, GF(101))
R3Q = PolynomialRing(3, QQ)


def twisted_cubic():
    R = PolynomialRing(4, QQ, ["a", "b", "c", "d"])
    return Ideal(R, [R.parse(s) for s in ("a*c - b^2", "b*d - c^2", "a*d - b*c")])


def generator_lists(ring, min_size=1, max_size=3):
    return st.lists(st.one_of(forms(ring, 2), forms(ring, 3, 4)), min_size=min_size, max_size=max_size).map(
        lambda gs: [g for g in gs if not g.is_zero()]
    )


@given(generator_lists(R4), st.integers(2, 4), st.data())
def test_membership_matches_linear_algebra(gens, d, data):
    assume(gens)
    I = Ideal(R4, gens)
    # a random element of I_d, then a random perturbation of it
    e = R4.zero()
    for g in gens:
        if g.degree() <= d:
            e = e + data.draw(forms(R4, d - g.degree(), 3)) * g
    assert I.contains(e)
    f = e + data.draw(forms(R4, d))
    assert I.contains(f) == oracles.in_ideal(f, gens)


@given(generator_lists(R4))
def test_groebner_basis_generates_the_same_ideal(gens):
    assume(gens)
    gb = buchberger(gens)
    for g in gb.generators:
        assert oracles.in_ideal(g, gens)
    for g in gens:
        assert normal_form(g, gb).is_zero()


@given(generator_lists(R4))
def test_hilbert_function_matches_linear_algebra(gens):
    assume(gens)
    I = Ideal(R4, gens)
    h = I.hilbert()
    for d in range(5):
        assert h.function(d) == R4.dim(d) - oracles.ideal_dim(gens, d)


@given(generator_lists(R4, 1, 3))
def test_minimal_generator_counts(gens):
    assume(gens)
    I = Ideal(R4, gens)
    mg = minimal_generators(I)
    for d in (2, 3):
        assert sum(1 for g in mg if g.degree() == d) == oracles.minimal_generator_count(gens, d)


@given(generator_lists(R4, 2, 3))
def test_syzygies_generate_the_syzygy_module(gens):
    assume(gens)
    syz = syzygies(gens)
    for s in syz:
        assert s.dot(gens).is_zero()
    # degreewise span of the returned syzygies equals the oracle kernel
    for d in range(2, 6):
        vecs = []
        idx = {}
        for s in syz:
            e = d - s.degree()
            if e < 0:
                continue
            for m in monomials_of_degree(R4.n, e):
                v = {}
                for k, f in enumerate(s.coords):
                    for t, c in f.mul_monomial(m).terms.items():
                        v[idx.setdefault((k, t), len(idx))] = c
                vecs.append(v)
        from quadgor.linalg import rank
        assert rank(vecs, R4.field) == oracles.syzygy_dim(gens, d)


@given(generator_lists(R4, 1, 3), forms(R4, 1, 3))
def test_colon_matches_degreewise_oracle(gens, f):
    assume(gens and not f.is_zero())
    J = colon(Ideal(R4, gens), f)
    if J.is_unit():
        assert oracles.colon_dim(gens, f, 0) == 1
        return
    h = J.hilbert()
    for d in range(4):
        assert R4.dim(d) - h.function(d) == oracles.colon_dim(gens, f, d)


@given(generator_lists(R4, 1, 2), generator_lists(R4, 1, 2))
def test_intersection_matches_inclusion_exclusion(a, b):
    assume(a and b)
    A, B = Ideal(R4, a), Ideal(R4, b)
    C = intersect(A, B)
    for d in range(5):
        dim_c = R4.dim(d) - C.hilbert().function(d)
        assert dim_c == oracles.ideal_dim(a, d) + oracles.ideal_dim(b, d) - oracles.ideal_dim(a + b, d)


def test_twisted_cubic():
    I = twisted_cubic()
    assert len(I.groebner().generators) == 3
    assert I.dimension() == (2, 2)
    assert I.hilbert().h == [1, 2]
    syz = syzygies(I.gens)
    assert all(s.dot(I.gens).is_zero() for s in syz)
    minimal = minimal_module_generators(syz, syz[0].module)
    assert sorted(s.degree() for s in minimal) == [3, 3]


def test_lex_basis_of_twisted_cubic_eliminates():
    I = twisted_cubic()
    gb = I.groebner(MonomialOrder("lex"))
    R = I.ring
    assert any(g.terms.keys() <= {(0, 0, e1, e2) for e1 in range(4) for e2 in range(4)} for g in gb.generators) \
        or any(all(e[0] == 0 for e in g.terms) for g in gb.generators)


def test_colon_and_saturation_classics():
    R = PolynomialRing(2, QQ, ["x", "y"])
    x, y = R.gens
    I = Ideal(R, [x * x, x * y])
    assert colon(I, x) == Ideal(R, [x, y])
    assert colon(I, y) == Ideal(R, [x])
    assert colon(I, Ideal(R, [x, y])) == Ideal(R, [x])
    assert colon(Ideal(R, [x * x, x * y, y * y]), Ideal(R, [x, y])) == Ideal(R, [x, y])
    assert intersect(Ideal(R, [x]), Ideal(R, [y])) == Ideal(R, [x * y])


def test_dimension_and_unit_ideal():
    R = PolynomialRing(3, QQ)
    x, y, z = R.gens
    assert Ideal(R, [x, y]).dimension() == (1, 2)
    assert Ideal(R, [x * y, x * z]).dimension() == (2, 1)
    with pytest.raises(UnitIdeal):
        Ideal(R, [R.one()]).dimension()
    assert Ideal(R, [x + R.one(), x]).is_unit()


@pytest.mark.parametrize("seq,expected", [
    (["x0^2", "x1^2", "x2^2"], True),
    (["x0*x1", "x0*x2"], False),
    (["x0^2 - x1*x2", "x1^2 - x0*x2", "x2^2 - x0*x1"], False),
    (["x0*x1", "x0 + x1"], True),
])
def test_regular_sequences(seq, expected):
    assert is_regular_sequence([R3Q.parse(s) for s in seq], ring=R3Q) is expected


def test_module_groebner_basis_and_membership():
    R = PolynomialRing(2, QQ, ["x", "y"])
    x, y = R.gens
    M = GradedFreeModule.from_degrees(R, [0, 0])
    v1 = ModuleElement(M, [x, y])
    v2 = ModuleElement(M, [y, R.zero()])
    gb = buchberger([v1, v2], module=M)
    assert gb.contains(ModuleElement(M, [x * y, y * y]) - ModuleElement(M, [y * y, R.zero()]))
    assert not gb.contains(ModuleElement(M, [R.one(), R.zero()]))


def test_ideal_equality_is_mutual_containment():
    R = PolynomialRing(2, QQ, ["x", "y"])
    x, y = R.gens
    assert Ideal(R, [x + y, x - y]) == Ideal(R, [x, y])
    assert Ideal(R, [x * x]) != Ideal(R, [x])
