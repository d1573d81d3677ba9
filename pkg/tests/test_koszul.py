import random
from math import comb

import pytest

from quadgor.construct import build_deviation_two, random_deviation_two, random_quadratic_ci
from quadgor.errors import NotArtinian, NotQuadratic
from quadgor.field import GF, QQ
from quadgor.groebner import Ideal
from quadgor.inverse import family_F
from quadgor.koszul import (
    cyclic_obstruction, degree2_betti_bound, in_z4, koszul_certificate, linear_colon, poincare_check,
    resolve_residue_field, syzygy_obstruction,
)
from quadgor.quotient import QuotientRing
from quadgor.resolution import betti_table
from quadgor.ring import PolynomialRing

R1 = PolynomialRing(1, QQ, ["x"])


def test_dual_numbers_are_koszul():
    b = resolve_residue_field(Ideal(R1, ["x^2"]), steps=5, slack=2)
    assert b == {(i, i): 1 for i in range(6)}


def test_cubic_truncation_is_not_koszul():
    # periodic resolution ... -> R(-4) -x-> R(-3) -x^2-> R(-1) -x-> R
    b = resolve_residue_field(Ideal(R1, ["x^3"]), steps=4, slack=2)
    assert b == {(0, 0): 1, (1, 1): 1, (2, 3): 1, (3, 4): 1, (4, 6): 1}
    cert = koszul_certificate(Ideal(R1, ["x^3"]))
    assert cert.is_not_koszul and cert.witness == (2, 3, 1)


def test_not_artinian():
    R = PolynomialRing(2, QQ)
    with pytest.raises(NotArtinian):
        resolve_residue_field(Ideal(R, ["x0^2"]))


def test_bad_bounds():
    with pytest.raises(ValueError):
        resolve_residue_field(Ideal(R1, ["x^2"]), steps=0)


@pytest.mark.parametrize("c", [2, 3, 4])
def test_complete_intersections(c):
    I = random_quadratic_ci(c, seed=c)
    cert = koszul_certificate(I, 4, 2)
    assert cert.verdict == "KoszulUpTo" and cert.witness is None
    w, info = syzygy_obstruction(I)
    assert w is None and info["syz4_dim"] == info["z4_dim"] == comb(c, 2)
    assert degree2_betti_bound(I)["verdict"] == "Inconclusive"


@pytest.mark.parametrize("c", [7, 8, 9, 10])
def test_family_certificates(family_ideals, c):
    I = family_ideals[c]
    cert = koszul_certificate(I, 4, 2)
    assert cert.verdict == "NotKoszul"
    i, j, v = cert.witness
    assert i <= 3 and j != i and v > 0
    b = cert.betti
    assert b[(1, 1)] == c
    # beta^R_{2,2} = c^2 - h_2 (the t^2 coefficient of H_R(t) * P_R(-t) = 1 up to degree 2)
    assert b[(2, 2)] == c * c - I.hilbert().h[2] == comb(c, 2) + betti_table(I).get(1, 2)
    assert poincare_check(b, QuotientRing.from_ideal(I).hilbert_function(), 2)


@pytest.mark.parametrize("c", [7, 8, 9, 10])
def test_family_syzygy_witness(family_ideals, c):
    I = family_ideals[c]
    w, info = syzygy_obstruction(I)
    assert w is not None
    assert w.dot(I.minimal_generators()).is_zero()
    assert w.degree() == 4
    assert not in_z4(I, w)
    assert info["syz4_dim"] > info["z4_dim"]


def test_family_c7_residue_field_entry(family_ideals):
    cert = koszul_certificate(family_ideals[7], 4, 2)
    assert cert.witness == (3, 4, 1)


@pytest.mark.parametrize("c", [7, 8, 9, 10, 11])
def test_cyclic_syzygy_outside_z(c):
    from quadgor.inverse import annihilator
    I = annihilator(family_F(c))
    rep = cyclic_obstruction(I)
    assert rep["sum_is_zero"] and not rep["in_z4"]
    assert rep["syzygy"].dot(I.minimal_generators()).is_zero()
    # (L : q_0)_1 is spanned by x2, ..., x_{c-3}
    R = I.ring
    assert Ideal(R, rep["colon_linear_part"]) == Ideal(R, [R.var(k) for k in range(2, c - 2)])


def test_residue_field_routes_agree(family_ideals):
    from quadgor.inverse import annihilator
    F = family_F(8)
    a = resolve_residue_field(QuotientRing.from_inverse(F), 3, 2)
    b = resolve_residue_field(family_ideals[8], 3, 2)
    assert a == b


def test_example_G(ideal_G):
    bound = degree2_betti_bound(ideal_G)
    assert bound == {"verdict": "NotKoszul", "beta_1_2": 9, "beta_2_4": 40, "bound": 36}
    cert = koszul_certificate(ideal_G, 4, 2)
    assert cert.is_not_koszul
    assert cert.witness[0] <= 3


def test_family_c7_degree2_bound_does_not_fire(family_ideals):
    assert degree2_betti_bound(family_ideals[7]) == {
        "verdict": "Inconclusive", "beta_1_2": 14, "beta_2_4": 36, "bound": 91}


def test_non_quadratic_ideal(family_ideals):
    I = family_ideals[6]
    cert = koszul_certificate(I)
    assert cert.is_not_koszul and cert.witness == (2, 3, 2)
    with pytest.raises(NotQuadratic):
        syzygy_obstruction(I)
    with pytest.raises(NotQuadratic):
        degree2_betti_bound(I)


@pytest.mark.parametrize("c", [3, 4])
def test_deviation_two_koszul_up_to_four(c):
    I, rep = build_deviation_two(random_deviation_two(c, seed=1))
    cert = koszul_certificate(I, 4, 2)
    assert cert.verdict == "KoszulUpTo"
    assert poincare_check(cert.betti, QuotientRing.from_ideal(I).hilbert_function(), 4)
    assert syzygy_obstruction(I)[0] is None


def test_linear_colon_simple():
    R = PolynomialRing(3, QQ)
    x, y, z = R.gens
    L = [x * y, x * z]
    assert Ideal(R, linear_colon(L, x)) == Ideal(R, [y, z])
    assert Ideal(R, linear_colon(L, y)) == Ideal(R, [x])


def test_certificate_json():
    cert = koszul_certificate(Ideal(R1, ["x^2"]), 3, 1)
    data = cert.to_json()
    assert data["verdict"] == "KoszulUpTo" and data["koszul_up_to"] == 3
    assert data["betti_over_R"] == [[0, 0, 1], [1, 1, 1], [2, 2, 1], [3, 3, 1]]
