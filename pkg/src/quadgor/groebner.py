"""Buchberger's algorithm for ideals and for submodules of graded free modules.

Elements are handled internally as dicts ``{(exponent, component): coeff}``.
The engine can carry a *lift* alongside every element (its expression in the
input generators); S-pairs that reduce to zero then yield syzygies, which by
Schreyer's theorem generate the full syzygy module once the coprime-lead pairs
skipped by the product criterion contribute their Koszul syzygies.

Pair selection is the normal strategy (smallest sugar degree, then smallest
lcm); pairs are pruned with the Gebauer-Moeller criteria.
"""

from __future__ import annotations

from heapq import heappop, heappush
from itertools import combinations
from operator import le

from .errors import NonHomogeneous, RingMismatch, UnitIdeal
from .linalg import Echelon
from .ring import (
    GradedFreeModule,
    ModuleElement,
    MonomialOrder,
    Polynomial,
    PolynomialRing,
    monomials_of_degree,
)


def _divides(a, b):
    return all(map(le, a, b))


def _vec_from(x):
    if isinstance(x, Polynomial):
        return {(e, 0): c for e, c in x.terms.items()}
    if isinstance(x, ModuleElement):
        out = {}
        for k, f in enumerate(x.coords):
            for e, c in f.terms.items():
                out[(e, k)] = c
        return out
    raise TypeError(f"cannot use {type(x).__name__} as a generator")


class _Engine:
    """Mutable Buchberger state; use :func:`buchberger` or :class:`Ideal` instead."""

    def __init__(self, ring: PolynomialRing, order: MonomialOrder, comp_degrees=(0,), track=False,
                 lift_degrees=None):
        self.ring = ring
        self.field = ring.field
        self.p = ring.field.char
        self.order = order
        self.comp_deg = tuple(comp_degrees)
        self.rank = len(self.comp_deg)
        self.track = track
        self.lift_deg = lift_degrees
        self.G = []          # f-parts
        self.A = []          # lifts (or None)
        self.leads = []      # (exp, comp)
        self.sugar = []
        self.by_comp = {}
        self.pairs = set()   # live pairs (i, j), i < j
        self.heap = []       # (sort key, pair); stale entries are skipped
        self.queue_inputs = []
        self.syz = []        # lifts of relations
        self.koszul_pairs = []
        self._kcache = {}
        self._red = {}
        self.homogeneous = True
        self.done_degree = None

    # term order ---------------------------------------------------------
    def key(self, t):
        k = self._kcache.get(t)
        if k is None:
            k = self.order.term_key(t[0], t[1])
            self._kcache[t] = k
        return k

    def lead_of(self, f):
        return max(f, key=self.key)

    def tdeg(self, t):
        return sum(t[0]) + self.comp_deg[t[1]]

    # reduction ----------------------------------------------------------
    def reducer(self, t):
        j = self._red.get(t)
        if j is not None:
            return j
        exp, comp = t
        for j in self.by_comp.get(comp, ()):
            if _divides(self.leads[j][0], exp):
                self._red[t] = j
                return j
        return None

    def _sub_mult(self, f, c, mexp, g):
        # f -= c * x^mexp * g (in place)
        p = self.p
        for (e, k), x in g.items():
            t = (tuple(a + b for a, b in zip(e, mexp)), k)
            nv = f.get(t, 0) - c * x
            if p:
                nv %= p
            if nv:
                f[t] = nv
            else:
                f.pop(t, None)

    def reduce(self, f, a=None, full=False):
        """Top (or full) reduction of f by the current basis; returns (remainder, lift)."""
        f = dict(f)
        a = dict(a) if a is not None else None
        rem = {}
        key = self.key
        while f:
            t = max(f, key=key)
            j = self.reducer(t)
            if j is None:
                if not full:
                    break
                rem[t] = f.pop(t)
                continue
            c = f[t]
            le_ = self.leads[j][0]
            mexp = tuple(x - y for x, y in zip(t[0], le_))
            self._sub_mult(f, c, mexp, self.G[j])
            if a is not None:
                self._sub_mult(a, c, mexp, self.A[j])
        if full:
            f = rem
        return f, a

    # basis updates ------------------------------------------------------
    def _monic(self, f, a):
        t = self.lead_of(f)
        c = f[t]
        if c == self.field.one:
            return f, a, t
        inv = self.field.inv(c)
        p = self.p
        if p:
            f = {k: v * inv % p for k, v in f.items()}
            a = {k: v * inv % p for k, v in a.items()} if a is not None else None
        else:
            f = {k: v * inv for k, v in f.items()}
            a = {k: v * inv for k, v in a.items()} if a is not None else None
        return f, a, t

    def add_input(self, f, a=None, sugar=None):
        if not f and a is None:
            return
        degs = {self.tdeg(t) for t in f}
        if len(degs) > 1:
            self.homogeneous = False
        s = sugar if sugar is not None else (max(degs) if degs else 0)
        self.queue_inputs.append((s, len(self.queue_inputs), f, a))

    def _insert(self, f, a, sugar):
        f, a, lt = self._monic(f, a)
        idx = len(self.G)
        self.G.append(f)
        self.A.append(a)
        self.leads.append(lt)
        self.sugar.append(sugar)
        self._update(idx)
        self.by_comp.setdefault(lt[1], []).append(idx)
        # cached "no reducer" answers are not stored, so no invalidation is needed
        return idx

    def _update(self, h):
        """Gebauer-Moeller update for the new element h."""
        leads = self.leads
        eh, ch = leads[h]
        same = [i for i in self.by_comp.get(ch, ())]

        def lcm(i, j):
            return tuple(max(x, y) for x, y in zip(leads[i][0], leads[j][0]))

        # criterion B on old pairs
        keep = set()
        for (i, j) in self.pairs:
            if leads[i][1] != ch:
                keep.add((i, j))
                continue
            L = lcm(i, j)
            if _divides(eh, L) and lcm(i, h) != L and lcm(j, h) != L:
                continue
            keep.add((i, j))
        self.pairs = keep

        classes = {}
        for i in same:
            classes.setdefault(lcm(i, h), []).append(i)
        minimal = []
        for L in sorted(classes, key=lambda e: self.key((e, ch))):
            if not any(_divides(M, L) for M in minimal):
                minimal.append(L)
        rank1 = self.rank == 1
        for L in minimal:
            members = classes[L]
            coprime = [i for i in members
                       if rank1 and all(not (x and y) for x, y in zip(leads[i][0], eh))]
            if coprime:
                if self.track:
                    self.koszul_pairs.append((coprime[0], h))
                continue
            pair = (min(members), h)
            self.pairs.add(pair)
            heappush(self.heap, (self._pair_sort_key(pair), pair))

    def _spair(self, i, j):
        (ei, _), (ej, _) = self.leads[i], self.leads[j]
        L = tuple(max(x, y) for x, y in zip(ei, ej))
        mi = tuple(x - y for x, y in zip(L, ei))
        mj = tuple(x - y for x, y in zip(L, ej))
        one = self.field.one
        f = {}
        self._sub_mult(f, -one, mi, self.G[i])
        self._sub_mult(f, one, mj, self.G[j])
        a = None
        if self.track:
            a = {}
            self._sub_mult(a, -one, mi, self.A[i])
            self._sub_mult(a, one, mj, self.A[j])
        sugar = max(self.sugar[i] + sum(mi), self.sugar[j] + sum(mj))
        return f, a, sugar

    def pair_degree(self, pair):
        i, j = pair
        (ei, ci), (ej, _) = self.leads[i], self.leads[j]
        L = tuple(max(x, y) for x, y in zip(ei, ej))
        return max(self.sugar[i] + sum(L) - sum(ei), self.sugar[j] + sum(L) - sum(ej))

    def _pair_sort_key(self, pair):
        i, j = pair
        (ei, ci), (ej, _) = self.leads[i], self.leads[j]
        L = tuple(max(x, y) for x, y in zip(ei, ej))
        return (self.pair_degree(pair), self.key((L, ci)), i, j)

    def _artinian_done(self, d) -> bool:
        """True if every term of degree d already has a reducer (so higher degrees are settled)."""
        if self.rank != 1 or not self.homogeneous:
            return False
        n = self.ring.n
        have = [False] * n
        for e, _ in self.leads:
            nz = [k for k, x in enumerate(e) if x]
            if len(nz) == 1:
                have[nz[0]] = True
        if not all(have):
            return False
        for e in monomials_of_degree(n, d):
            if self.reducer((e, 0)) is None:
                return False
        return True

    def _next_pair(self):
        heap = self.heap
        while heap and heap[0][1] not in self.pairs:
            heappop(heap)
        return heap[0] if heap else None

    def run(self, degree_bound=None, artinian_stop=True):
        """Process inputs and pairs; with a bound, stop after that (sugar) degree."""
        self.queue_inputs.sort(key=lambda x: (x[0], x[1]))
        pending = self.queue_inputs
        self.queue_inputs = []
        current = None
        while True:
            next_in = pending[0][0] if pending else None
            top = self._next_pair()
            next_pair = top[0][0] if top else None
            cands = [x for x in (next_in, next_pair) if x is not None]
            if not cands:
                break
            d = min(cands)
            if degree_bound is not None and d > degree_bound:
                break
            if current is not None and d > current and artinian_stop and not self.track:
                if self._artinian_done(current):
                    # every higher-degree term is now reducible: nothing left to add
                    self.pairs = set()
                    self.heap = []
                    pending = []
                    break
            current = d
            if next_in is not None and next_in == d:
                s, _, f, a = pending.pop(0)
            else:
                heappop(self.heap)
                self.pairs.discard(top[1])
                f, a, s = self._spair(*top[1])
            r, ra = self.reduce(f, a)
            if r:
                self._insert(r, ra, s)
            elif ra:
                self.syz.append(ra)
        self.queue_inputs = pending
        self.done_degree = degree_bound

    # results --------------------------------------------------------------
    def koszul_syzygies(self):
        """Lifts of the Koszul syzygies g_j e_i - g_i e_j for coprime-lead pairs."""
        out = []
        p = self.p
        for i, j in self.koszul_pairs:
            a = {}
            for gsrc, lift, sign in ((self.G[j], self.A[i], 1), (self.G[i], self.A[j], -1)):
                for (e1, _), c1 in gsrc.items():
                    for (e2, k), c2 in lift.items():
                        t = (tuple(x + y for x, y in zip(e1, e2)), k)
                        nv = a.get(t, 0) + sign * c1 * c2
                        if p:
                            nv %= p
                        if nv:
                            a[t] = nv
                        else:
                            a.pop(t, None)
            if a:
                out.append(a)
        return out

    def reduced_basis(self):
        """Minimalize and tail-reduce the current basis; returns a list of dicts."""
        idx = list(range(len(self.G)))
        leads = self.leads
        keep = []
        for i in sorted(idx, key=lambda i: self.key(leads[i])):
            ei, ci = leads[i]
            if any(leads[j][1] == ci and _divides(leads[j][0], ei) for j in keep):
                continue
            keep.append(i)
        sub = _Engine(self.ring, self.order, self.comp_deg)
        sub._kcache = self._kcache
        for i in keep:
            sub.G.append(self.G[i])
            sub.A.append(None)
            sub.leads.append(leads[i])
            sub.sugar.append(self.sugar[i])
            sub.by_comp.setdefault(leads[i][1], []).append(len(sub.G) - 1)
        out = []
        for k, f in enumerate(sub.G):
            lt = sub.leads[k]
            tail = {t: c for t, c in f.items() if t != lt}
            # reduce the tail against everyone (no other lead divides lt, so no self-loop)
            r, _ = sub.reduce(tail, full=True)
            r[lt] = f[lt]
            out.append(r)
        return out


class GroebnerBasis:
    """A reduced Groebner basis of an ideal (rank 1) or a submodule."""

    def __init__(self, ring, order, elements, comp_degrees=(0,), reduced=True, engine=None):
        self.ring = ring
        self.order = order
        self.comp_degrees = tuple(comp_degrees)
        self._vecs = elements
        self.reduced = reduced
        eng = _Engine(ring, order, comp_degrees)
        for v in elements:
            f, _, lt = eng._monic(v, None)
            eng.G.append(f)
            eng.A.append(None)
            eng.leads.append(lt)
            eng.sugar.append(eng.tdeg(lt))
            eng.by_comp.setdefault(lt[1], []).append(len(eng.G) - 1)
        self._engine = eng
        self._vecs = eng.G
        self.leads = list(eng.leads)

    @property
    def is_module(self) -> bool:
        return len(self.comp_degrees) > 1

    @property
    def generators(self):
        if self.is_module:
            return [_to_element(v, self.module) for v in self._vecs]
        return [_to_poly(v, self.ring) for v in self._vecs]

    @property
    def module(self) -> GradedFreeModule:
        return GradedFreeModule.from_degrees(self.ring, self.comp_degrees)

    def __len__(self):
        return len(self._vecs)

    def __iter__(self):
        return iter(self.generators)

    def lead_monomials(self):
        """Lead exponents (ideal case) or (exponent, component) pairs."""
        return [l[0] for l in self.leads] if not self.is_module else list(self.leads)

    def normal_form_vec(self, v):
        return self._engine.reduce(v, full=True)[0]

    def normal_form(self, f):
        r = self.normal_form_vec(_vec_from(f))
        if isinstance(f, ModuleElement):
            return _to_element(r, f.module)
        return _to_poly(r, self.ring)

    def contains(self, f) -> bool:
        return not self.normal_form_vec(_vec_from(f))

    def is_unit(self) -> bool:
        return not self.is_module and any(sum(e) == 0 for e, _ in self.leads)


def _to_poly(v, ring):
    return Polynomial(ring, {e: c for (e, _), c in v.items()})


def _to_element(v, module):
    ring = module.ring
    coords = [dict() for _ in range(module.rank)]
    for (e, k), c in v.items():
        coords[k][e] = c
    return ModuleElement(module, [Polynomial(ring, t) for t in coords])


def _setup(gens, order=None, module=None):
    gens = [g for g in gens]
    if module is None:
        if gens and isinstance(gens[0], ModuleElement):
            module = gens[0].module
    if module is not None:
        ring = module.ring
        comp_deg = module.degrees
    else:
        if not gens:
            raise ValueError("cannot infer the ring from an empty generator list")
        ring = gens[0].ring
        comp_deg = (0,)
    for g in gens:
        gring = g.ring if isinstance(g, Polynomial) else g.module.ring
        if gring != ring:
            raise RingMismatch("generators live in different rings")
    if order is None:
        order = ring.order
    return ring, comp_deg, order


def buchberger(gens, order: MonomialOrder | None = None, degree_bound=None, module=None,
               ring: PolynomialRing | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal or submodule generated by ``gens``.

    Zero generators are dropped; an empty list gives the empty basis (pass
    ``ring`` or ``module`` so the ring is known).
    """
    gens = [g for g in gens if not (g.is_zero())]
    if not gens:
        if module is not None:
            return GroebnerBasis(module.ring, order or module.ring.order, [], module.degrees)
        if ring is None:
            raise ValueError("empty generator list needs a ring")
        return GroebnerBasis(ring, order or ring.order, [])
    ring, comp_deg, order = _setup(gens, order, module)
    eng = _Engine(ring, order, comp_deg)
    for g in gens:
        eng.add_input(_vec_from(g))
    eng.run(degree_bound)
    return GroebnerBasis(ring, order, eng.reduced_basis(), comp_deg, reduced=True)


def normal_form(f, gb: GroebnerBasis):
    """Remainder of f on division by the basis; zero iff f lies in the span."""
    return gb.normal_form(f)


def syzygies(gens, module: GradedFreeModule | None = None, order: MonomialOrder | None = None):
    """Generators of the first syzygy module of ``gens``.

    Returns ModuleElements of the free module whose basis element e_i has
    degree deg(gens[i]) (zero generators get degree 0 and the syzygy e_i).
    """
    gens = list(gens)
    ring, comp_deg, order = _setup(gens, order, module)
    degs = []
    for g in gens:
        if g.is_zero():
            degs.append(0)
            continue
        if not g.is_homogeneous():
            raise NonHomogeneous("syzygies need homogeneous generators")
        degs.append(g.degree())
    target = GradedFreeModule.from_degrees(ring, degs)
    eng = _Engine(ring, order, comp_deg, track=True)
    one = ring.field.one
    zero_exp = ring.one_exp
    for k, g in enumerate(gens):
        eng.add_input(_vec_from(g), {(zero_exp, k): one}, sugar=degs[k])
    eng.run()
    out = [_to_element(a, target) for a in eng.syz + eng.koszul_syzygies()]
    return [s for s in out if not s.is_zero()]


class Ideal:
    """A homogeneous-capable ideal with cached Groebner basis and invariants."""

    def __init__(self, ring: PolynomialRing, gens=()):
        self.ring = ring
        gs = []
        for g in gens:
            if not isinstance(g, Polynomial):
                g = ring.parse(g) if isinstance(g, str) else ring.constant(g)
            if g.ring != ring:
                raise RingMismatch("generator outside the ideal's ring")
            if not g.is_zero():
                gs.append(g)
        self._gens = tuple(gs)
        self._cache = {}

    @property
    def gens(self):
        return self._gens

    def with_gens(self, gens) -> "Ideal":
        """A new handle (fresh caches) for different generators."""
        return Ideal(self.ring, gens)

    def __repr__(self):
        return f"Ideal({', '.join(str(g) for g in self._gens) or '0'})"

    def __len__(self):
        return len(self._gens)

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self._gens)

    def groebner(self, order: MonomialOrder | None = None) -> GroebnerBasis:
        order = order or self.ring.order
        k = ("gb", order.kind, order.elim)
        if k not in self._cache:
            self._cache[k] = buchberger(self._gens, order, ring=self.ring)
        return self._cache[k]

    def contains(self, f) -> bool:
        if isinstance(f, Ideal):
            return all(self.contains(g) for g in f.gens)
        return self.groebner().contains(f)

    def __eq__(self, other):
        return isinstance(other, Ideal) and self.ring == other.ring and self.contains(other) and other.contains(self)

    def __hash__(self):
        return id(self)

    def is_unit(self) -> bool:
        return self.groebner().is_unit()

    def is_zero(self) -> bool:
        return not self._gens

    def initial_ideal(self, order=None):
        """Minimal monomial generators (exponent tuples) of the initial ideal."""
        return self.groebner(order).lead_monomials()

    def minimal_generators(self):
        return minimal_generators(self)

    def generator_degrees(self):
        return sorted(g.degree() for g in self.minimal_generators())

    def dimension(self):
        return dimension(self)

    @property
    def height(self) -> int:
        return dimension(self)[1]

    def is_artinian(self) -> bool:
        return dimension(self)[0] == 0

    def hilbert(self):
        from .hilbert import hilbert
        return hilbert(self)

    def __add__(self, other):
        if isinstance(other, Ideal):
            return Ideal(self.ring, self._gens + other.gens)
        return Ideal(self.ring, self._gens + tuple(other))

    def __mul__(self, other):
        return Ideal(self.ring, [f * g for f in self._gens for g in other.gens])

    def reduce(self, f):
        return self.groebner().normal_form(f)


IdealHandle = Ideal


def minimal_generators(I: Ideal):
    """Minimal homogeneous generators, chosen degree by degree.

    Generators of degree d span I_d modulo S_1 * I_{d-1}; their count in each
    degree is the first graded Betti number.
    """
    if "mingens" in I._cache:
        return I._cache["mingens"]
    if not I.is_homogeneous():
        raise NonHomogeneous("minimal generators need a homogeneous ideal")
    ring = I.ring
    by_deg = {}
    for g in I.gens:
        by_deg.setdefault(g.degree(), []).append(g)
    eng = _Engine(ring, ring.order)
    chosen = []
    for d in sorted(by_deg):
        eng.run(degree_bound=d, artinian_stop=False)
        # normal forms of degree-d candidates modulo the lower-degree part, then independence
        cands = by_deg[d]
        rems = [eng.reduce(_vec_from(g), full=True)[0] for g in cands]
        index = {}
        ech = Echelon(ring.field)
        for g, r in zip(cands, rems):
            vec = {}
            for t, c in r.items():
                col = index.setdefault(t, len(index))
                vec[col] = c
            if vec and ech.insert(vec)[0] is not None:
                chosen.append(g)
                eng.add_input(_vec_from(g))
    I._cache["mingens"] = chosen
    return chosen


def _max_independent_set(leads, n):
    """Size of a largest variable set U with no lead monomial supported inside U."""
    supports = [frozenset(k for k, x in enumerate(e) if x) for e in leads]
    # search subsets from large to small; n stays small at this scale
    for size in range(n, -1, -1):
        for U in combinations(range(n), size):
            U = frozenset(U)
            if not any(s <= U for s in supports):
                return size
    return 0


def dimension(I: Ideal):
    """(Krull dimension of S/I, height of I) via independent sets of in(I)."""
    if "dim" in I._cache:
        return I._cache["dim"]
    gb = I.groebner()
    if gb.is_unit():
        raise UnitIdeal("the unit ideal has no dimension")
    n = I.ring.n
    d = _max_independent_set(gb.lead_monomials(), n)
    I._cache["dim"] = (d, n - d)
    return I._cache["dim"]


def _exact_divide(g: Polynomial, f: Polynomial) -> Polynomial:
    """g / f, assuming f divides g."""
    ring = g.ring
    order = ring.order
    fl, fc = f.lead(order)
    inv = ring.field.inv(fc)
    q = ring.zero()
    r = g
    while r:
        rl, rc = r.lead(order)
        if not _divides(fl, rl):
            raise ValueError("polynomial does not divide exactly")
        m = tuple(a - b for a, b in zip(rl, fl))
        t = ring.monomial(m, rc * inv)
        q = q + t
        r = r - t * f
    return q


def _with_t(ring: PolynomialRing):
    """Ring with an extra leading variable t and the t-eliminating block order."""
    names = ("_t",) + ring.names
    return PolynomialRing(ring.n + 1, ring.field, names, MonomialOrder("elim", elim=1))


def intersect(A: Ideal, B: Ideal) -> Ideal:
    """A ∩ B via elimination of t from t*A + (1 - t)*B."""
    if A.is_zero() or B.is_zero():
        return Ideal(A.ring, [])
    ring = A.ring
    T = _with_t(ring)
    shift = list(range(1, ring.n + 1))
    t = T.var(0)
    gens = [t * g.change_ring(T, shift) for g in A.gens]
    gens += [(T.one() - t) * g.change_ring(T, shift) for g in B.gens]
    eng = _Engine(T, T.order)
    for g in gens:
        eng.add_input(_vec_from(g))
    eng.run(artinian_stop=False)
    out = []
    for v in eng.reduced_basis():
        if all(e[0] == 0 for (e, _) in v):
            out.append(Polynomial(ring, {e[1:]: c for (e, _), c in v.items()}))
    return Ideal(ring, out)


def colon(A: Ideal, B) -> Ideal:
    """(A : B) for an ideal or a single polynomial B."""
    if isinstance(B, Polynomial):
        if B.is_zero():
            return Ideal(A.ring, [A.ring.one()])
        inter = intersect(A, Ideal(A.ring, [B]))
        return Ideal(A.ring, [_exact_divide(g, B) for g in inter.gens])
    gens = [g for g in B.gens]
    if not gens:
        return Ideal(A.ring, [A.ring.one()])
    out = colon(A, gens[0])
    for g in gens[1:]:
        out = intersect(out, colon(A, g))
    return out


def is_regular_sequence(seq, modulo: Ideal | None = None, ring: PolynomialRing | None = None) -> bool:
    """True iff each element is a nonzerodivisor modulo the ideal plus its predecessors."""
    seq = list(seq)
    if modulo is None:
        ring = ring or seq[0].ring
        modulo = Ideal(ring, [])
    J = modulo
    for f in seq:
        if J.contains(f) and not f.is_zero():
            return False
        if J.is_zero():
            if f.is_zero():
                return False
        else:
            Q = colon(J, f)
            if not J.contains(Q):
                return False
        J = J + Ideal(J.ring, [f])
        if J.is_unit():
            return False
    return True
