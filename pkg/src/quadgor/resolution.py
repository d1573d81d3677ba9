"""Graded Betti tables, minimal free resolutions and the identities they satisfy.

Two independent routes to Betti numbers:

* Artinian quotients: Koszul homology, beta_{i,j} = dim H_i(K(x) (x) R)_j,
  computed degreewise from the multiplication tables of R.
* Any homogeneous ideal: an explicit minimal free resolution built from
  iterated minimal syzygies (Groebner engine).

Hilbert data always comes from the initial ideal, so the Euler identity
relating the two is a genuine cross-check.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from itertools import combinations
from math import comb

from .errors import NonHomogeneous, NotArtinian, PreconditionUnmet, UnitIdeal
from .groebner import Ideal, _Engine, _to_element, _vec_from, minimal_generators, syzygies
from .hilbert import HilbertData, divide_one_minus_t
from .linalg import Echelon
from .ring import GradedFreeModule, ModuleElement, PolynomialRing


class BettiTable:
    """Sparse graded Betti numbers beta_{i,j} (homological degree i, internal degree j)."""

    def __init__(self, entries=None):
        self.entries = {(int(i), int(j)): int(v) for (i, j), v in (entries or {}).items() if v}

    def __getitem__(self, ij):
        return self.entries.get(tuple(ij), 0)

    def get(self, i, j) -> int:
        return self.entries.get((i, j), 0)

    def __eq__(self, other):
        return isinstance(other, BettiTable) and self.entries == other.entries

    def __repr__(self):
        return f"BettiTable({dict(sorted(self.entries.items()))})"

    def __str__(self):
        from .parse_io import render_betti
        return render_betti(self)

    @property
    def pd(self) -> int:
        return max((i for i, _ in self.entries), default=0)

    @property
    def regularity(self) -> int:
        return max((j - i for i, j in self.entries), default=0)

    def totals(self):
        out = [0] * (self.pd + 1)
        for (i, _), v in self.entries.items():
            out[i] += v
        return out

    def row(self, k):
        """Row k of the displayed table: beta_{i,i+k} for i = 0..pd."""
        return [self.get(i, i + k) for i in range(self.pd + 1)]

    def rows(self):
        return [self.row(k) for k in range(self.regularity + 1)]

    def euler(self, j) -> int:
        return sum((-1) ** i * v for (i, jj), v in self.entries.items() if jj == j)

    def k_polynomial(self):
        top = max((j for _, j in self.entries), default=0)
        out = [self.euler(j) for j in range(top + 1)]
        while len(out) > 1 and out[-1] == 0:
            out.pop()
        return out

    def is_symmetric(self) -> bool:
        """beta_{i,j} == beta_{p-i, p+r-j} with p = pd and r = regularity."""
        p, r = self.pd, self.regularity
        return all(self.get(p - i, p + r - j) == v for (i, j), v in self.entries.items())

    def to_json(self) -> dict:
        return {"betti": [[i, j, v] for (i, j), v in sorted(self.entries.items())],
                "pd": self.pd, "regularity": self.regularity, "totals": self.totals()}

    @classmethod
    def from_json(cls, data) -> "BettiTable":
        rows = data["betti"] if isinstance(data, dict) else data
        return cls({(i, j): v for i, j, v in rows})

    @classmethod
    def from_rows(cls, rows) -> "BettiTable":
        """Inverse of :meth:`rows`: rows[k][i] = beta_{i,i+k}."""
        return cls({(i, i + k): v for k, row in enumerate(rows) for i, v in enumerate(row) if v})


# --- Koszul homology route -------------------------------------------------

def koszul_homology_betti(Q) -> BettiTable:
    """Betti numbers of R over S from the Koszul complex on the variables tensored with R."""
    n, fld = Q.n, Q.field
    p = fld.char
    subsets = [list(combinations(range(n), i)) for i in range(n + 1)]
    sidx = [{s: k for k, s in enumerate(ss)} for ss in subsets]
    one = fld.one
    neg_one = fld.neg(one)

    def rank_of(i, k):
        # d_i : K_i (x) R_k -> K_{i-1} (x) R_{k+1}
        if i < 1 or k < 0 or k + 1 > Q.top:
            return 0
        tgt = Q.dim(k + 1)
        ech = Echelon(fld)
        for T in subsets[i]:
            faces = [(sidx[i - 1][T[:pos] + T[pos + 1:]] * tgt, T[pos], one if pos % 2 == 0 else neg_one)
                     for pos in range(i)]
            for b in range(Q.dim(k)):
                vec = {}
                for base, v, sgn in faces:
                    for t, x in Q.mult[v][k][b].items():
                        key = base + t
                        val = vec.get(key, 0) + sgn * x
                        if p:
                            val %= p
                        if val:
                            vec[key] = val
                        else:
                            vec.pop(key, None)
                if vec:
                    ech.insert(vec)
        return ech.rank

    ranks = {}
    for i in range(1, n + 1):
        for k in range(Q.top):
            ranks[(i, k)] = rank_of(i, k)
    entries = {}
    for i in range(n + 1):
        for k in range(Q.top + 1):
            v = comb(n, i) * Q.dim(k) - ranks.get((i, k), 0) - ranks.get((i + 1, k - 1), 0)
            if v:
                entries[(i, i + k)] = v
    return BettiTable(entries)


# --- explicit resolution route --------------------------------------------

def _vec_degree(v, comp_deg):
    (e, k) = next(iter(v))
    return sum(e) + comp_deg[k]


def minimal_module_generators(elements, module: GradedFreeModule):
    """A minimal homogeneous generating subset of the submodule spanned by ``elements``."""
    ring = module.ring
    comp_deg = module.degrees
    vecs = [(_vec_from(x), x) for x in elements if not x.is_zero()]
    for v, x in vecs:
        if not x.is_homogeneous():
            raise NonHomogeneous("module generators must be homogeneous")
    by_deg = {}
    for v, x in vecs:
        by_deg.setdefault(_vec_degree(v, comp_deg), []).append((v, x))
    eng = _Engine(ring, ring.order, comp_deg)
    chosen = []
    for d in sorted(by_deg):
        eng.run(degree_bound=d, artinian_stop=False)
        index = {}
        ech = Echelon(ring.field)
        for v, x in by_deg[d]:
            r = eng.reduce(v, full=True)[0]
            vec = {index.setdefault(t, len(index)): c for t, c in r.items()}
            if vec and ech.insert(vec)[0] is not None:
                chosen.append(x)
                eng.add_input(v)
    return chosen


@dataclass
class FreeResolution:
    """F_0 <- F_1 <- ... <- F_l; ``maps[i]`` lists the images of the basis of F_{i+1} in F_i."""

    modules: list
    maps: list
    minimal: bool = True
    ideal: Ideal | None = dc_field(default=None, repr=False)

    @property
    def length(self) -> int:
        return len(self.maps)

    def betti(self) -> BettiTable:
        entries = {}
        for i, M in enumerate(self.modules):
            for d in M.degrees:
                entries[(i, d)] = entries.get((i, d), 0) + 1
        return BettiTable(entries)

    def check_complex(self) -> bool:
        """Consecutive maps compose to zero, exactly."""
        for i in range(1, len(self.maps)):
            prev = self.maps[i - 1]
            for col in self.maps[i]:
                if i - 1 == 0:
                    img = col.dot([c.coords[0] for c in prev])
                    if not img.is_zero():
                        return False
                elif not col.apply(prev).is_zero():
                    return False
        return True

    def check_minimal(self) -> bool:
        """No nonzero constant entries in any map."""
        for cols in self.maps:
            for col in cols:
                for f in col.coords:
                    if any(sum(e) == 0 for e in f.terms):
                        return False
        return True


def free_resolution(I: Ideal, length_bound: int | None = None) -> FreeResolution:
    """Minimal graded free resolution of S/I by iterated minimal syzygies."""
    ring = I.ring
    if not I.is_homogeneous():
        raise NonHomogeneous("free resolutions need a homogeneous ideal")
    bound = ring.n if length_bound is None else length_bound
    F0 = GradedFreeModule.from_degrees(ring, [0])
    gens = minimal_generators(I)
    if any(g.degree() == 0 for g in gens):
        raise UnitIdeal("the unit ideal has the zero quotient")
    modules = [F0]
    maps = []
    if not gens:
        return FreeResolution(modules, maps, True, I)
    cols = [ModuleElement(F0, [g]) for g in gens]
    current = GradedFreeModule.from_degrees(ring, [g.degree() for g in gens])
    while True:
        modules.append(current)
        maps.append(cols)
        if len(maps) >= bound:
            break
        syz = syzygies(cols, module=cols[0].module)
        syz = minimal_module_generators(syz, current)
        if not syz:
            break
        cols = syz
        current = GradedFreeModule.from_degrees(ring, [s.degree() for s in syz])
    return FreeResolution(modules, maps, True, I)


# --- dispatch and derived invariants ----------------------------------------

def betti_table(I: Ideal, method: str = "auto") -> BettiTable:
    """Betti table of S/I; ``method`` is ``koszul``, ``resolution`` or ``auto``."""
    key = ("betti", method)
    if key in I._cache:
        return I._cache[key]
    if method == "auto":
        method = "koszul" if I.is_artinian() else "resolution"
    if method == "koszul":
        from .quotient import QuotientRing
        Q = I._cache.get("quotient") or QuotientRing.from_ideal(I)
        I._cache["quotient"] = Q
        t = koszul_homology_betti(Q)
    elif method == "resolution":
        t = free_resolution(I).betti()
    else:
        raise ValueError(f"unknown Betti method {method!r}")
    I._cache[key] = t
    return t


def euler_identity_check(t: BettiTable, h: HilbertData) -> bool:
    """sum_i (-1)^i beta_{i,j} equals the t^j coefficient of the K-polynomial, for all j."""
    num = list(h.numerator)
    kp = t.k_polynomial()
    m = max(len(num), len(kp))
    num += [0] * (m - len(num))
    kp += [0] * (m - len(kp))
    return num == kp


def gorenstein_diagnostics(I: Ideal, table: BettiTable | None = None) -> dict:
    """CM / type / symmetry report for S/I."""
    t = table or betti_table(I)
    h = I.hilbert()
    dim, height = I.dimension()
    pd = t.pd
    cm = pd == height
    typ = sum(v for (i, _), v in t.entries.items() if i == pd)
    reg = t.regularity
    sym = all(t.get(height - i, height + reg - j) == v for (i, j), v in t.entries.items())
    report = {
        "cohen_macaulay": cm,
        "type": typ,
        "betti_symmetric": sym,
        "h_symmetric": h.is_symmetric(),
        "regularity": reg,
        "pd": pd,
        "height": height,
        "multiplicity": h.multiplicity,
        "h_vector": h.h,
    }
    if dim == 0:
        from .quotient import QuotientRing
        Q = I._cache.get("quotient") or QuotientRing.from_ideal(I)
        I._cache["quotient"] = Q
        soc = Q.socle_dimensions()
        report["socle_dimensions"] = soc
    report["gorenstein"] = cm and typ == 1 and sym
    return report


def regularity_bound_check(I: Ideal, table: BettiTable | None = None, strict: bool = False) -> dict:
    """reg <= pd for quadratic Cohen-Macaulay S/I, with equality exactly for complete intersections."""
    gens = minimal_generators(I)
    t = table or betti_table(I)
    height = I.height
    quadratic = bool(gens) and all(g.degree() == 2 for g in gens)
    cm = t.pd == height
    report = {"quadratic": quadratic, "cohen_macaulay": cm, "regularity": t.regularity, "pd": t.pd,
              "complete_intersection": len(gens) == height}
    if not (quadratic and cm):
        report["precondition_met"] = False
        if strict:
            raise PreconditionUnmet("S/I is not a quadratic Cohen-Macaulay ring")
        return report
    report["precondition_met"] = True
    report["reg_le_pd"] = t.regularity <= t.pd
    report["equality"] = t.regularity == t.pd
    report["holds"] = report["reg_le_pd"] and (report["equality"] == report["complete_intersection"])
    return report


def artinian_reduction(I: Ideal, seed: int = 0, tries: int = 5):
    """Quotient of a Cohen-Macaulay S/I by dim(S/I) random linear forms.

    Returns ``(ideal in n - dim variables, info)``; the h-polynomial must be
    unchanged, otherwise another random choice is tried.
    """
    dim, _ = I.dimension()
    h = I.hilbert()
    if dim == 0:
        return I, {"dim": 0, "seed": seed, "attempts": 0}
    ring = I.ring
    fld = ring.field
    if fld.char and fld.char < 100:
        raise PreconditionUnmet(f"field GF({fld.char}) too small for a reliable random reduction")
    m = ring.n - dim
    target = PolynomialRing(m, fld)
    rng = random.Random(seed)
    for attempt in range(1, tries + 1):
        images = [target.random_form(1, rng) for _ in range(ring.n)]
        J = Ideal(target, [g.substitute(images) for g in I.gens])
        if J.is_unit():
            continue
        if J.is_artinian() and J.hilbert().h == h.h:
            return J, {"dim": dim, "seed": seed, "attempts": attempt, "field": fld.spec()}
    raise NotArtinian("no random linear system of parameters preserved the h-polynomial")
