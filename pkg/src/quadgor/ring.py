"""Standard graded polynomial rings, monomial orders and graded free modules.

Monomials are exponent tuples.  A :class:`Polynomial` wraps a dict
``{exponent tuple: raw coefficient}``; term order only matters when terms are
listed or a leading term is requested, so arithmetic never sorts.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .errors import NotAlternating, RingMismatch
from .field import QQ, Field, Scalar

MAX_EXPONENT = 2**15


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a, b) -> bool:
    """True if monomial a divides monomial b."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(b, a):
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def mono_coprime(a, b) -> bool:
    return not any(x and y for x, y in zip(a, b))


@lru_cache(maxsize=None)
def monomials_of_degree(n: int, d: int) -> tuple:
    """All exponent tuples of length n and total degree d, lex-descending."""
    if n == 0:
        return ((),) if d == 0 else ()
    if n == 1:
        return ((d,),)
    out = []
    for first in range(d, -1, -1):
        for rest in monomials_of_degree(n - 1, d - first):
            out.append((first,) + rest)
    return tuple(out)


class MonomialOrder:
    """A monomial order plus its extension to free modules.

    ``kind`` is ``grevlex``, ``lex``, ``grlex`` or ``elim`` (the first
    ``elim`` variables form a grevlex block dominating a grevlex block of the
    rest).  ``module`` is ``top`` (term over position), ``pot`` (position
    over term) or ``schreyer``; the latter needs ``schreyer_leads``, the lead
    terms ``(exponent, component)`` of the basis images in a previous module
    under ``base``.  Components with smaller index are larger.  Larger keys
    mean larger terms.
    """

    def __init__(self, kind="grevlex", module="top", elim=0, schreyer_leads=None, base=None):
        if kind not in ("grevlex", "lex", "grlex", "elim"):
            raise ValueError(f"unknown monomial order {kind!r}")
        if module not in ("top", "pot", "schreyer"):
            raise ValueError(f"unknown module extension {module!r}")
        if module == "schreyer" and schreyer_leads is None:
            raise ValueError("Schreyer order needs the lead terms of the previous map")
        self.kind = kind
        self.module = module
        self.elim = elim
        self.schreyer_leads = schreyer_leads
        self.base = base if base is not None else (MonomialOrder(kind, elim=elim) if module == "schreyer" else None)
        if kind == "grevlex":
            self.key = _grevlex_key
        elif kind == "lex":
            self.key = _lex_key
        elif kind == "grlex":
            self.key = _grlex_key
        else:
            k = elim
            self.key = lambda e: _grevlex_key(e[:k]) + _grevlex_key(e[k:])

    def __repr__(self):
        extra = f", elim={self.elim}" if self.kind == "elim" else ""
        return f"MonomialOrder({self.kind!r}, module={self.module!r}{extra})"

    def __eq__(self, other):
        return (isinstance(other, MonomialOrder) and self.kind == other.kind and self.module == other.module
                and self.elim == other.elim and self.schreyer_leads == other.schreyer_leads)

    def __hash__(self):
        return hash((self.kind, self.module, self.elim))

    def term_key(self, exp, comp=0):
        """Sort key of the module term ``x^exp * e_comp``."""
        if self.module == "top":
            return (self.key(exp), -comp)
        if self.module == "pot":
            return (-comp, self.key(exp))
        lead_exp, lead_comp = self.schreyer_leads[comp]
        return (self.base.term_key(mono_mul(exp, lead_exp), lead_comp), -comp)

    def compare(self, a, b) -> int:
        """-1, 0 or 1 as monomial a is smaller than, equal to, or larger than b."""
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)


def _grevlex_key(e):
    return (sum(e),) + tuple(-x for x in reversed(e))


def _lex_key(e):
    return e


def _grlex_key(e):
    return (sum(e),) + tuple(e)


GREVLEX = MonomialOrder("grevlex")


def compare(a, b, order: MonomialOrder = GREVLEX) -> str:
    """Compare two monomials: ``'LT'``, ``'EQ'`` or ``'GT'``."""
    if len(a) != len(b):
        raise RingMismatch("monomials with different numbers of variables")
    return ("LT", "EQ", "GT")[order.compare(tuple(a), tuple(b)) + 1]


class PolynomialRing:
    """k[x0..x_{n-1}] with the standard grading."""

    def __init__(self, n: int, field: Field = QQ, names=None, order: MonomialOrder = GREVLEX):
        if n < 0:
            raise ValueError("number of variables must be non-negative")
        self.n = n
        self.field = field
        self.names = tuple(names) if names is not None else tuple(f"x{i}" for i in range(n))
        if len(self.names) != n or len(set(self.names)) != n:
            raise ValueError("variable names must be distinct and match the variable count")
        self.order = order
        self._index = {name: i for i, name in enumerate(self.names)}

    def __eq__(self, other):
        return (isinstance(other, PolynomialRing) and self.n == other.n and self.field == other.field
                and self.names == other.names)

    def __hash__(self):
        return hash((self.n, self.field, self.names))

    def __repr__(self):
        return f"PolynomialRing({self.n}, {self.field!r}, names={list(self.names)})"

    def with_order(self, order: MonomialOrder) -> "PolynomialRing":
        return PolynomialRing(self.n, self.field, self.names, order)

    def with_names(self, names) -> "PolynomialRing":
        return PolynomialRing(self.n, self.field, names, self.order)

    def with_field(self, field: Field) -> "PolynomialRing":
        return PolynomialRing(self.n, field, self.names, self.order)

    def index(self, name: str) -> int:
        return self._index[name]

    @property
    def one_exp(self):
        return (0,) * self.n

    def var(self, i: int) -> "Polynomial":
        e = [0] * self.n
        e[i] = 1
        return Polynomial(self, {tuple(e): self.field.one})

    @property
    def gens(self):
        return [self.var(i) for i in range(self.n)]

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        c = self.field(c)
        return Polynomial(self, {self.one_exp: c} if c else {})

    def monomial(self, exp, coeff=1) -> "Polynomial":
        c = self.field(coeff)
        return Polynomial(self, {tuple(exp): c} if c else {})

    def from_dict(self, terms) -> "Polynomial":
        F = self.field
        out = {}
        for e, c in terms.items():
            c = F(c)
            if c:
                out[tuple(e)] = c
        return Polynomial(self, out)

    def monomials(self, d: int):
        return monomials_of_degree(self.n, d)

    def dim(self, d: int) -> int:
        """dim_k S_d."""
        return len(monomials_of_degree(self.n, d)) if d >= 0 else 0

    def parse(self, text: str) -> "Polynomial":
        from .parse_io import parse_polynomial
        return parse_polynomial(text, self)

    def random_form(self, d: int, rng, density: float = 1.0) -> "Polynomial":
        """A random homogeneous form of degree d (each monomial kept with prob. density)."""
        F = self.field
        terms = {}
        for e in self.monomials(d):
            if density >= 1.0 or rng.random() < density:
                c = F.random(rng)
                if c:
                    terms[e] = c
        return Polynomial(self, terms)


class Polynomial:
    """An immutable polynomial; ``terms`` maps exponent tuples to nonzero coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolynomialRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._hash = None

    def _same(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring!r} vs {other.ring!r}")
            return other
        return self.ring.constant(other)

    def __add__(self, other):
        other = self._same(other)
        return Polynomial(self.ring, add_terms(self.terms, other.terms, self.ring.field.char))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._same(other)
        p = self.ring.field.char
        return Polynomial(self.ring, add_terms(self.terms, other.terms, p, -1))

    def __rsub__(self, other):
        return self._same(other) - self

    def __neg__(self):
        F = self.ring.field
        return Polynomial(self.ring, {e: F.neg(c) for e, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, (Polynomial, int, Fraction, str, Scalar)):
            return NotImplemented
        if not isinstance(other, Polynomial):
            c = self.ring.field(other)
            return self.scale(c)
        other = self._same(other)
        return Polynomial(self.ring, mul_terms(self.terms, other.terms, self.ring.field.char))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    def scale(self, c) -> "Polynomial":
        p = self.ring.field.char
        if not c:
            return self.ring.zero()
        if p:
            return Polynomial(self.ring, {e: v * c % p for e, v in self.terms.items()})
        return Polynomial(self.ring, {e: v * c for e, v in self.terms.items()})

    def mul_monomial(self, exp, c=None) -> "Polynomial":
        one = self.ring.field.one
        out = {mono_mul(e, exp): v for e, v in self.terms.items()}
        poly = Polynomial(self.ring, out)
        return poly if c is None or c == one else poly.scale(c)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == self.ring.constant(other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def sorted_terms(self, order: MonomialOrder | None = None):
        """(exponent, coefficient) pairs, strictly descending in the order."""
        order = order or self.ring.order
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def lead(self, order: MonomialOrder | None = None):
        order = order or self.ring.order
        e = max(self.terms, key=order.key)
        return e, self.terms[e]

    def lead_monomial(self, order: MonomialOrder | None = None):
        return self.lead(order)[0]

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degrees(self) -> set:
        return {sum(e) for e in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def homogeneous_part(self, d: int) -> "Polynomial":
        return Polynomial(self.ring, {e: c for e, c in self.terms.items() if sum(e) == d})

    def monic(self, order: MonomialOrder | None = None) -> "Polynomial":
        if not self.terms:
            return self
        return self.scale(self.ring.field.inv(self.lead(order)[1]))

    def coefficient(self, exp):
        return self.terms.get(tuple(exp), self.ring.field.zero)

    def change_ring(self, ring: PolynomialRing, var_map=None) -> "Polynomial":
        """Re-embed into ``ring``; ``var_map[i]`` is the target index of variable i."""
        if var_map is None:
            var_map = list(range(self.ring.n))
        F = ring.field
        out = {}
        for e, c in self.terms.items():
            t = [0] * ring.n
            for i, k in enumerate(e):
                if k:
                    t[var_map[i]] += k
            c = F(c) if F != self.ring.field else c
            if c:
                out[tuple(t)] = c
        return Polynomial(ring, out)

    def substitute(self, images) -> "Polynomial":
        """Ring map sending variable i to ``images[i]`` (polynomials in one target ring)."""
        target = images[0].ring
        out = target.zero()
        powers = [{0: target.one()} for _ in images]

        def power(i, k):
            cache = powers[i]
            if k not in cache:
                cache[k] = power(i, k - 1) * images[i]
            return cache[k]

        for e, c in self.terms.items():
            term = target.constant(c if target.field == self.ring.field else target.field(c))
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            out = out + term
        return out

    def __repr__(self):
        return f"Polynomial({self})"

    def __str__(self):
        from .parse_io import format_polynomial
        return format_polynomial(self)


def add_terms(a: dict, b: dict, p: int, sign: int = 1) -> dict:
    out = dict(a)
    for e, c in b.items():
        v = out.get(e)
        if v is None:
            nv = c if sign == 1 else -c
        else:
            nv = v + c if sign == 1 else v - c
        if p:
            nv %= p
        if nv:
            out[e] = nv
        elif v is not None:
            del out[e]
    return out


def mul_terms(a: dict, b: dict, p: int) -> dict:
    out = {}
    get = out.get
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            v = get(e, 0) + ca * cb
            if p:
                v %= p
            out[e] = v
    return {e: c for e, c in out.items() if c}


class GradedFreeModule:
    """F = S(a_1) + ... + S(a_r); basis element e_i has degree -a_i."""

    def __init__(self, ring: PolynomialRing, twists):
        self.ring = ring
        self.twists = tuple(int(a) for a in twists)

    @classmethod
    def from_degrees(cls, ring, degrees):
        return cls(ring, [-d for d in degrees])

    @property
    def rank(self) -> int:
        return len(self.twists)

    @property
    def degrees(self):
        """Degrees of the basis elements (``-a_i``)."""
        return tuple(-a for a in self.twists)

    def __eq__(self, other):
        return isinstance(other, GradedFreeModule) and self.ring == other.ring and self.twists == other.twists

    def __repr__(self):
        parts = {}
        for a in self.twists:
            parts[a] = parts.get(a, 0) + 1
        return " + ".join(f"S({a})^{m}" for a, m in sorted(parts.items(), reverse=True)) or "0"

    def element(self, coords) -> "ModuleElement":
        return ModuleElement(self, coords)

    def basis(self, i) -> "ModuleElement":
        R = self.ring
        return ModuleElement(self, [R.one() if k == i else R.zero() for k in range(self.rank)])

    def zero(self) -> "ModuleElement":
        return ModuleElement(self, [self.ring.zero()] * self.rank)


class ModuleElement:
    """A vector of polynomials in a graded free module."""

    __slots__ = ("module", "coords")

    def __init__(self, module: GradedFreeModule, coords):
        coords = tuple(coords)
        if len(coords) != module.rank:
            raise ValueError(f"expected {module.rank} coordinates, got {len(coords)}")
        for f in coords:
            if f.ring != module.ring:
                raise RingMismatch("coordinate outside the module's ring")
        self.module = module
        self.coords = coords

    def __add__(self, other):
        return ModuleElement(self.module, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        return ModuleElement(self.module, [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return ModuleElement(self.module, [-a for a in self.coords])

    def __rmul__(self, f):
        return ModuleElement(self.module, [f * a for a in self.coords])

    def __eq__(self, other):
        return isinstance(other, ModuleElement) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __len__(self):
        return len(self.coords)

    def is_zero(self) -> bool:
        return all(f.is_zero() for f in self.coords)

    def degrees(self) -> set:
        """Total degrees of the nonzero coordinates, shifted by the basis degrees."""
        out = set()
        for f, d in zip(self.coords, self.module.degrees):
            out |= {k + d for k in f.degrees()}
        return out

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self) -> int:
        ds = self.degrees()
        return max(ds) if ds else -1

    def dot(self, gens) -> Polynomial:
        """sum_i coords[i] * gens[i]."""
        out = self.module.ring.zero()
        for a, g in zip(self.coords, gens):
            if a:
                out = out + a * g
        return out

    def apply(self, columns) -> "ModuleElement":
        """Image under the map whose i-th column is ``columns[i]``."""
        target = columns[0].module
        out = target.zero()
        for a, col in zip(self.coords, columns):
            if a:
                out = out + a * col
        return out

    def __repr__(self):
        return "(" + ", ".join(str(f) for f in self.coords) + ")"


class AlternatingMatrix:
    """A square matrix of linear forms with zero diagonal and M[j][i] = -M[i][j]."""

    def __init__(self, entries):
        entries = [list(row) for row in entries]
        m = len(entries)
        if any(len(row) != m for row in entries):
            raise NotAlternating("matrix is not square")
        for i in range(m):
            if not entries[i][i].is_zero():
                raise NotAlternating(f"nonzero diagonal entry at ({i}, {i})")
            for j in range(i + 1, m):
                a, b = entries[i][j], entries[j][i]
                if a != -b:
                    raise NotAlternating(f"entries ({i}, {j}) and ({j}, {i}) are not negatives")
                if a and a.degrees() != {1}:
                    raise NotAlternating(f"entry ({i}, {j}) is not a linear form")
        self.entries = entries
        self.size = m
        self.ring = entries[0][0].ring if m else None

    @classmethod
    def from_upper(cls, ring: PolynomialRing, m: int, upper):
        """Build from the entries above the diagonal, listed row by row."""
        upper = list(upper)
        if len(upper) != m * (m - 1) // 2:
            raise NotAlternating(f"need {m * (m - 1) // 2} upper entries for size {m}")
        M = [[ring.zero() for _ in range(m)] for _ in range(m)]
        it = iter(upper)
        for i in range(m):
            for j in range(i + 1, m):
                f = next(it)
                M[i][j] = f
                M[j][i] = -f
        return cls(M)

    @classmethod
    def random(cls, ring: PolynomialRing, m: int, rng, density: float = 1.0):
        return cls.from_upper(ring, m, [ring.random_form(1, rng, density) for _ in range(m * (m - 1) // 2)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def upper(self):
        return [self.entries[i][j] for i in range(self.size) for j in range(i + 1, self.size)]

    def delete(self, rows) -> "AlternatingMatrix":
        """The alternating submatrix with the given row/column indices removed."""
        keep = [i for i in range(self.size) if i not in set(rows)]
        sub = [[self.entries[i][j] for j in keep] for i in keep]
        out = AlternatingMatrix.__new__(AlternatingMatrix)
        out.entries, out.size, out.ring = sub, len(keep), self.ring
        return out

    def times_vector(self, vec):
        return [sum((self.entries[i][j] * vec[j] for j in range(self.size)), self.ring.zero())
                for i in range(self.size)]


def determinant(rows) -> Polynomial:
    """Determinant of a square polynomial matrix by memoized Laplace expansion."""
    m = len(rows)
    if m == 0:
        raise ValueError("empty matrix")
    ring = rows[0][0].ring
    memo = {}

    def det(r, cols):
        # minor on rows r..m-1 and the column set `cols`
        if r == m:
            return ring.one()
        if cols in memo:
            return memo[cols]
        out = ring.zero()
        for pos, j in enumerate(cols):
            a = rows[r][j]
            if a:
                sub = det(r + 1, cols[:pos] + cols[pos + 1:])
                term = a * sub
                out = out + term if pos % 2 == 0 else out - term
        memo[cols] = out
        return out

    return det(0, tuple(range(m)))

