"""Independent dense linear-algebra oracles for graded ideals.

Everything here works one degree at a time on coefficient vectors and never
calls the Groebner engine, so it can check it.
"""

from quadgor.linalg import Echelon, kernel, rank
from quadgor.ring import monomials_of_degree


def degree_span(gens, d):
    """Echelon form of I_d = span{m * g : deg m + deg g = d} for homogeneous gens."""
    ring = gens[0].ring
    idx = {m: k for k, m in enumerate(monomials_of_degree(ring.n, d))}
    ech = Echelon(ring.field)
    for g in gens:
        if g.is_zero():
            continue
        e = d - g.degree()
        if e < 0:
            continue
        for m in monomials_of_degree(ring.n, e):
            ech.insert({idx[tuple(a + b for a, b in zip(t, m))]: c for t, c in g.terms.items()})
    return ech, idx


def in_ideal(f, gens):
    """Membership of a homogeneous f, by linear algebra in degree deg f."""
    if f.is_zero():
        return True
    ech, idx = degree_span(gens, f.degree())
    return ech.contains({idx[t]: c for t, c in f.terms.items()})


def ideal_dim(gens, d):
    return degree_span(gens, d)[0].rank if gens else 0


def colon_dim(gens, f, d):
    """dim (I : f)_d = dim of {h in S_d : h f in I}."""
    ring = f.ring
    ech, idx = degree_span(gens, d + f.degree())
    images = []
    for m in monomials_of_degree(ring.n, d):
        prod = f.mul_monomial(m)
        rem, _ = ech.reduce({idx[t]: c for t, c in prod.terms.items()})
        images.append(rem)
    return len(kernel(images, ring.field))


def minimal_generator_count(gens, d):
    """dim I_d - dim (S_1 I_{d-1}): the number of degree-d minimal generators."""
    ring = gens[0].ring
    lower = [g for g in gens if g.degree() < d]
    below = ideal_dim(lower, d) if lower else 0
    return ideal_dim(gens, d) - below


def syzygy_dim(gens, d):
    """dim of the degree-d piece of the first syzygy module of homogeneous gens."""
    ring = gens[0].ring
    idx = {m: k for k, m in enumerate(monomials_of_degree(ring.n, d))}
    cols = []
    for g in gens:
        e = d - g.degree()
        if e < 0:
            continue
        for m in monomials_of_degree(ring.n, e):
            cols.append({idx[tuple(a + b for a, b in zip(t, m))]: c for t, c in g.terms.items()})
    return len(cols) - rank(cols, ring.field)
