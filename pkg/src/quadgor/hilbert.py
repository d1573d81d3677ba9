"""Hilbert series of S/I from the initial ideal.

The K-polynomial (numerator over (1-t)^n) of a monomial ideal is computed by
pivoting on a variable: N(J) = N(J + (x)) + t * N(J : x).  Dividing by
(1-t)^codim gives the h-vector.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .ring import monomials_of_degree


def _poly_add(a, b):
    n = max(len(a), len(b))
    out = [0] * n
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] += x
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _minimalize(gens):
    gens = sorted(set(gens), key=sum)
    out = []
    for g in gens:
        if not any(all(x <= y for x, y in zip(h, g)) for h in out):
            out.append(g)
    return out


def k_polynomial(gens, n: int):
    """Numerator K(t) with HS(S/J) = K(t) / (1-t)^n for the monomial ideal J = (gens)."""
    memo = {}

    def rec(J):
        key = frozenset(J)
        if key in memo:
            return memo[key]
        if not J:
            res = [1]
        else:
            support = [0] * n
            for g in J:
                for i, x in enumerate(g):
                    if x:
                        support[i] += 1
            piv = max(range(n), key=lambda i: support[i])
            if support[piv] <= 1:
                # pairwise coprime generators: a complete intersection
                res = [1]
                for g in J:
                    f = [0] * (sum(g) + 1)
                    f[0], f[-1] = 1, -1
                    res = _poly_mul(res, f)
            else:
                unit = tuple(1 if i == piv else 0 for i in range(n))
                plus = _minimalize([g for g in J if not g[piv]] + [unit])
                colon = _minimalize([tuple(x - 1 if i == piv and x else x for i, x in enumerate(g)) for g in J])
                res = _poly_add(rec(plus), [0] + rec(colon))
        memo[key] = res
        return res

    return rec(_minimalize(gens))


def divide_one_minus_t(num, times: int):
    """Exact division of num(t) by (1-t)^times; raises ValueError if inexact."""
    q = list(num)
    for _ in range(times):
        # num = (1-t) * out; out_k = sum_{i<=k} num_i
        out = []
        acc = 0
        for x in q:
            acc += x
            out.append(acc)
        if out[-1] != 0:
            raise ValueError("numerator is not divisible by (1-t)")
        q = out[:-1] or [0]
    while len(q) > 1 and q[-1] == 0:
        q.pop()
    return q


def standard_monomial_counts(leads, n: int, max_degree: int):
    """dim (S/J)_d for d = 0..max_degree by direct enumeration."""
    out = []
    for d in range(max_degree + 1):
        cnt = 0
        for e in monomials_of_degree(n, d):
            if not any(all(x <= y for x, y in zip(g, e)) for g in leads):
                cnt += 1
        out.append(cnt)
    return out


@dataclass
class HilbertData:
    """Hilbert series data of S/I: numerator, dimension, h-vector and multiplicity."""

    n: int
    numerator: list
    dim: int
    h: list

    @property
    def codim(self) -> int:
        return self.n - self.dim

    @property
    def multiplicity(self) -> int:
        return sum(self.h)

    degree = multiplicity

    @property
    def socle_degree(self) -> int:
        return len(self.h) - 1

    def is_symmetric(self) -> bool:
        return self.h == self.h[::-1]

    def has_negative_entry(self) -> bool:
        """A negative h-vector entry rules out the Cohen-Macaulay property."""
        return any(x < 0 for x in self.h)

    def function(self, d: int) -> int:
        """dim_k (S/I)_d."""
        if d < 0:
            return 0
        if self.dim == 0:
            return self.h[d] if d < len(self.h) else 0
        return sum(hk * comb(d - k + self.dim - 1, self.dim - 1) for k, hk in enumerate(self.h) if k <= d)

    def series_text(self) -> str:
        terms = []
        for k, c in enumerate(self.h):
            if c:
                mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
                coef = str(c) if (c != 1 or not mono) else ""
                terms.append(f"{coef}{'*' if coef and mono else ''}{mono}")
        num = " + ".join(terms).replace("+ -", "- ") or "0"
        return num if self.dim == 0 else f"({num}) / (1-t)^{self.dim}"

    def to_json(self) -> dict:
        return {"numerator": self.numerator, "dim": self.dim, "codim": self.codim,
                "h_vector": self.h, "multiplicity": self.multiplicity}


def hilbert_from_leads(leads, n: int, dim: int | None = None) -> HilbertData:
    num = k_polynomial(leads, n)
    if dim is None:
        # the order of vanishing of num at t = 1 is the codimension
        codim = 0
        q = num
        while True:
            try:
                q = divide_one_minus_t(q, 1)
            except ValueError:
                break
            codim += 1
        dim = n - codim
    h = divide_one_minus_t(num, n - dim)
    return HilbertData(n, num, dim, h)


def hilbert(I) -> HilbertData:
    """Hilbert series data of S/I for a homogeneous ideal (cached on the handle)."""
    from .errors import NonHomogeneous
    if "hilbert" in I._cache:
        return I._cache["hilbert"]
    if not I.is_homogeneous():
        raise NonHomogeneous("Hilbert series needs a homogeneous ideal")
    n = I.ring.n
    if I.is_zero():
        data = HilbertData(n, [1], n, [1])
    else:
        dim, _ = I.dimension()
        data = hilbert_from_leads(I.initial_ideal(), n, dim)
    I._cache["hilbert"] = data
    return data
