"""Artinian quotient rings R = S/I as graded vector spaces with multiplication tables.

Two constructions are provided: from a Groebner basis (standard monomials and
normal forms) and directly from an inverse polynomial F (R_d is identified with
the span of the contractions m . F, m in S_d).  They are independent, so
invariants computed from both can be compared.
"""

from __future__ import annotations

from .errors import NotArtinian
from .linalg import Echelon
from .ring import GREVLEX, PolynomialRing, monomials_of_degree


class QuotientRing:
    """A finite-dimensional graded algebra generated in degree 1.

    ``basis[d]`` lists labels of a basis of R_d (standard monomials in the
    Groebner model); ``mult[i][d][k]`` is the image of basis element k of R_d
    under multiplication by x_i, a sparse dict over the indices of R_{d+1}.
    """

    def __init__(self, ring: PolynomialRing, basis, mult, ideal=None, source="groebner"):
        self.ring = ring
        self.field = ring.field
        self.n = ring.n
        self.basis = basis
        self.mult = mult
        self.ideal = ideal
        self.source = source

    @property
    def top(self) -> int:
        return len(self.basis) - 1

    def dim(self, d: int) -> int:
        return len(self.basis[d]) if 0 <= d < len(self.basis) else 0

    def hilbert_function(self):
        return [len(b) for b in self.basis]

    @property
    def embedding_dimension(self) -> int:
        return self.dim(1)

    def times(self, i: int, d: int, vec):
        """x_i * (element of R_d given as a sparse dict)."""
        p = self.field.char
        out = {}
        if d + 1 > self.top:
            return out
        table = self.mult[i][d]
        for k, c in vec.items():
            for t, x in table[k].items():
                v = out.get(t, 0) + c * x
                if p:
                    v %= p
                out[t] = v
        return {t: v for t, v in out.items() if v}

    def socle_dimensions(self):
        """dim of the socle (0 :_R m) in each degree."""
        out = []
        for d in range(self.top + 1):
            if d == self.top:
                out.append(self.dim(d))
                continue
            images = []
            for k in range(self.dim(d)):
                vec = {}
                for i in range(self.n):
                    for t, x in self.mult[i][d][k].items():
                        vec[i * self.dim(d + 1) + t] = x
                images.append(vec)
            from .linalg import rank
            out.append(self.dim(d) - rank(images, self.field))
        return out

    @classmethod
    def from_ideal(cls, I) -> "QuotientRing":
        if not I.is_artinian():
            raise NotArtinian("S/I is not Artinian")
        ring = I.ring
        gb = I.groebner()
        leads = gb.lead_monomials()
        n = ring.n

        def standard(e):
            return not any(all(x <= y for x, y in zip(g, e)) for g in leads)

        basis = []
        d = 0
        while True:
            std = [e for e in sorted(monomials_of_degree(n, d), key=GREVLEX.key, reverse=True) if standard(e)]
            if not std:
                break
            basis.append(std)
            d += 1
        index = [{e: k for k, e in enumerate(b)} for b in basis]
        eng = gb._engine
        mult = [[None] * len(basis) for _ in range(n)]
        nf_cache = {}
        for d in range(len(basis)):
            for i in range(n):
                col = []
                for e in basis[d]:
                    t = list(e)
                    t[i] += 1
                    t = tuple(t)
                    if d + 1 >= len(basis):
                        col.append({})
                        continue
                    if t not in nf_cache:
                        if t in index[d + 1]:
                            nf_cache[t] = {index[d + 1][t]: ring.field.one}
                        else:
                            r = eng.reduce({(t, 0): ring.field.one}, full=True)[0]
                            nf_cache[t] = {index[d + 1][ee]: c for (ee, _), c in r.items()}
                    col.append(nf_cache[t])
                mult[i][d] = col
        return cls(ring, basis, mult, I, "groebner")

    @classmethod
    def from_inverse(cls, F) -> "QuotientRing":
        """R = S/(0 : F) built from contractions, without any Groebner basis."""
        from .inverse import _contract_monomial, primal_ring
        n, r = F.n, F.degree()
        fld = F.field
        p = fld.char
        ring = primal_ring(n, fld)
        basis = []
        echs = []
        for d in range(r + 1):
            ech = Echelon(fld, track=True)
            target = {}
            chosen = []
            for m in sorted(monomials_of_degree(n, d), key=GREVLEX.key, reverse=True):
                img = _contract_monomial(m, F.terms, p)
                vec = {target.setdefault(e, len(target)): c for e, c in img.items()}
                if vec and ech.insert(vec, {len(chosen): fld.one})[0] is not None:
                    chosen.append(m)
            basis.append(chosen)
            echs.append((ech, target))
        mult = [[None] * len(basis) for _ in range(n)]
        for d in range(len(basis)):
            for i in range(n):
                col = []
                for m in basis[d]:
                    if d + 1 >= len(basis):
                        col.append({})
                        continue
                    t = list(m)
                    t[i] += 1
                    img = _contract_monomial(tuple(t), F.terms, p)
                    ech, target = echs[d + 1]
                    vec = {target[e]: c for e, c in img.items()}
                    rem, tag = ech.reduce(vec, {})
                    if rem:
                        raise ArithmeticError("contraction outside the chosen span")
                    # vec - sum(tag) = 0 in the reduction, so vec = -tag combination
                    col.append({k: (fld.neg(c)) for k, c in tag.items() if c})
                mult[i][d] = col
        return cls(ring, basis, mult, None, "inverse")
