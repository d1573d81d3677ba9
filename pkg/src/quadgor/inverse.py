"""Macaulay inverse systems under the contraction action.

S = k[x0..x_{n-1}] acts on D = k[y0..y_{n-1}] by x^a . y^b = y^(b-a) when
b >= a componentwise and 0 otherwise.  The annihilator of a homogeneous F of
degree r is computed degree by degree with linear algebra, independently of
the Groebner engine, so the two pipelines can check each other.
"""

from __future__ import annotations

import warnings

from .errors import NotArtinian, TooFewVariables, ZeroInput
from .field import GF, Field
from .groebner import Ideal
from .linalg import Echelon, kernel, rref
from .ring import GREVLEX, Polynomial, PolynomialRing, monomials_of_degree


def dual_ring(n: int, field: Field) -> PolynomialRing:
    return PolynomialRing(n, field, [f"y{i}" for i in range(n)])


def primal_ring(n: int, field: Field) -> PolynomialRing:
    return PolynomialRing(n, field, [f"x{i}" for i in range(n)])


class InversePolynomial:
    """A polynomial in the y-variables, acted on by contraction."""

    __slots__ = ("poly",)

    def __init__(self, poly: Polynomial):
        self.poly = poly

    @classmethod
    def parse(cls, text: str, n: int, field: Field) -> "InversePolynomial":
        return cls(dual_ring(n, field).parse(text))

    @property
    def ring(self) -> PolynomialRing:
        return self.poly.ring

    @property
    def n(self) -> int:
        return self.poly.ring.n

    @property
    def field(self) -> Field:
        return self.poly.ring.field

    @property
    def terms(self):
        return self.poly.terms

    def primal_ring(self) -> PolynomialRing:
        return primal_ring(self.n, self.field)

    def degree(self) -> int:
        return self.poly.degree()

    def is_homogeneous(self) -> bool:
        return self.poly.is_homogeneous()

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def __len__(self):
        return len(self.poly)

    def __add__(self, other):
        return InversePolynomial(self.poly + other.poly)

    def __sub__(self, other):
        return InversePolynomial(self.poly - other.poly)

    def __neg__(self):
        return InversePolynomial(-self.poly)

    def scale(self, c):
        return InversePolynomial(self.poly.scale(self.field(c)))

    def __eq__(self, other):
        if isinstance(other, InversePolynomial):
            return self.poly == other.poly
        return self.poly == other

    def __hash__(self):
        return hash(self.poly)

    def __rmul__(self, f):
        """``f * F`` for a polynomial f of S is the contraction f . F."""
        return contract(f, self)

    def __str__(self):
        return str(self.poly)

    def __repr__(self):
        return f"InversePolynomial({self.poly})"


def contract(f: Polynomial, F: InversePolynomial) -> InversePolynomial:
    """The contraction f . F, extended bilinearly."""
    if f.ring.n != F.n:
        raise ValueError("contraction needs matching variable counts")
    fld = F.field
    p = fld.char
    conv = f.ring.field != fld
    out = {}
    for a, ca in f.terms.items():
        if conv:
            ca = fld(ca)
        for b, cb in F.terms.items():
            if all(x <= y for x, y in zip(a, b)):
                e = tuple(y - x for x, y in zip(a, b))
                v = out.get(e, 0) + ca * cb
                if p:
                    v %= p
                out[e] = v
    return InversePolynomial(Polynomial(F.ring, {e: c for e, c in out.items() if c}))


def _contract_monomial(a, terms, p):
    out = {}
    for b, cb in terms.items():
        if all(x <= y for x, y in zip(a, b)):
            e = tuple(y - x for x, y in zip(a, b))
            v = out.get(e, 0) + cb
            if p:
                v %= p
            out[e] = v
    return {e: c for e, c in out.items() if c}


def _index(monos):
    return {m: k for k, m in enumerate(monos)}


def _desc(n, d):
    """Monomials of degree d, descending in grevlex (so rref pivots are lead terms)."""
    return sorted(monomials_of_degree(n, d), key=GREVLEX.key, reverse=True)


def annihilator_pieces(F: InversePolynomial):
    """Per degree d: (kernel basis of S_d -> D_{r-d} as polynomials, rank)."""
    if F.is_zero():
        raise ZeroInput("the zero inverse polynomial has no proper annihilator")
    if not F.is_homogeneous():
        raise ValueError("inverse polynomial must be homogeneous")
    n, r = F.n, F.degree()
    fld = F.field
    S = primal_ring(n, fld)
    out = {}
    for d in range(0, r + 2):
        monos = _desc(n, d)
        if d > r:
            basis = [{k: fld.one} for k in range(len(monos))]
            out[d] = (monos, basis, 0)
            continue
        target = {}
        images = []
        for m in monos:
            img = _contract_monomial(m, F.terms, fld.char)
            images.append({target.setdefault(e, len(target)): c for e, c in img.items()})
        ker = rref(kernel(images, fld), fld)
        out[d] = (monos, ker, len(monos) - len(ker))
    return S, out


def annihilator(F: InversePolynomial) -> Ideal:
    """Minimal generators of (0 :_S F), one degree at a time up to deg F + 1."""
    S, pieces = annihilator_pieces(F)
    n = S.n
    fld = S.field
    gens = []
    prev = None  # (monos, basis) of the previous degree's kernel
    for d in sorted(pieces):
        monos, basis, _ = pieces[d]
        idx = _index(monos)
        ech = Echelon(fld)
        if prev is not None:
            pm, pb = prev
            for vec in pb:
                for i in range(n):
                    img = {}
                    for k, c in vec.items():
                        e = list(pm[k])
                        e[i] += 1
                        img[idx[tuple(e)]] = c
                    ech.insert(img)
        for vec in basis:
            if ech.insert(vec)[0] is not None:
                gens.append(Polynomial(S, {monos[k]: c for k, c in vec.items()}))
        prev = (monos, basis)
    I = Ideal(S, gens)
    I._cache["mingens"] = list(I.gens)
    I._cache["inverse"] = F
    return I


def dual_module(I: Ideal, degree_bound: int | None = None):
    """Minimal generators of the inverse system (0 :_D I) of an Artinian S/I.

    Generators are listed from the top degree down; S/I is Gorenstein exactly
    when there is one.  With ``degree_bound`` only degrees <= bound are scanned.
    """
    if not I.is_homogeneous():
        raise ValueError("dual module needs a homogeneous ideal")
    if not I.is_artinian():
        raise NotArtinian("S/I is not Artinian")
    S = I.ring
    n, fld = S.n, S.field
    D = dual_ring(n, fld)
    gb = I.groebner()
    h = I.hilbert().h
    top = len(h) - 1
    if degree_bound is not None:
        top = min(top, degree_bound)
    gb_gens = [(g, g.degree()) for g in gb.generators]
    pieces = {}
    for e in range(top, -1, -1):
        monos = _desc(n, e)
        idx = _index(monos)
        rows = Echelon(fld)
        for g, dg in gb_gens:
            if dg > e:
                continue
            for m in monomials_of_degree(n, e - dg):
                rows.insert({idx[tuple(a + b for a, b in zip(x, m))]: c for x, c in g.terms.items()})
        # the perp of I_e under the monomial pairing
        images = [dict() for _ in monos]
        for r_i, (piv, row) in enumerate(sorted(rows.rows.items())):
            for k, c in row.items():
                images[k][r_i] = c
        pieces[e] = (monos, rref(kernel(images, fld), fld))
    gens = []
    for e in range(top, -1, -1):
        monos, basis = pieces[e]
        idx = _index(monos)
        ech = Echelon(fld)
        if e + 1 in pieces:
            pm, pb = pieces[e + 1]
            for vec in pb:
                for i in range(n):
                    img = {}
                    for k, c in vec.items():
                        b = pm[k]
                        if b[i]:
                            t = list(b)
                            t[i] -= 1
                            img[idx[tuple(t)]] = c
                    if img:
                        ech.insert(img)
        for vec in basis:
            if ech.insert(vec)[0] is not None:
                gens.append(InversePolynomial(Polynomial(D, {monos[k]: c for k, c in vec.items()})))
    return gens


def family_F(c: int, field: Field | None = None) -> InversePolynomial:
    """F_c = sum over i in Z/c of y_i y_{i+1} y_{i+2}^2."""
    if c < 3:
        raise TooFewVariables("the cyclic family needs at least 3 variables")
    if c < 7:
        warnings.warn(f"c = {c} < 7: the quadratic non-Koszul properties are only guaranteed for c >= 7",
                      stacklevel=2)
    fld = field if field is not None else GF()
    D = dual_ring(c, fld)
    terms = {}
    for i in range(c):
        e = [0] * c
        e[i] += 1
        e[(i + 1) % c] += 1
        e[(i + 2) % c] += 2
        e = tuple(e)
        terms[e] = (terms.get(e, 0) + fld.one) % fld.char if fld.char else terms.get(e, 0) + fld.one
    return InversePolynomial(Polynomial(D, {e: v for e, v in terms.items() if v}))


def example_G(field: Field | None = None) -> InversePolynomial:
    """The six-variable modification F_6 + y0 y5 y4^2 + y0 y5^3."""
    fld = field if field is not None else GF()
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        F = family_F(6, fld)
    extra = dual_ring(6, fld).parse("y0*y5*y4^2 + y0*y5^3")
    return InversePolynomial(F.poly + extra)
