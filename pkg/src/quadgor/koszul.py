"""Koszulness certificates for Artinian quotients R = S/I.

``resolve_residue_field`` builds the minimal graded free resolution of k over R
degree by degree with linear algebra, truncated at internal degree i + slack.
A nonzero off-diagonal beta^R_{i,j}(k) is a proof of non-Koszulness; a clean
range is only evidence (``KoszulUpTo``).  Two cheaper obstructions work over S:
a quadratic syzygy outside the span of linear and Koszul syzygies, and the
bound beta_{2,4} > C(beta_{1,2}, 2).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from math import comb

from .errors import NotArtinian, NotQuadratic
from .groebner import Ideal, minimal_generators
from .linalg import Echelon, kernel
from .quotient import QuotientRing
from .ring import GradedFreeModule, ModuleElement, Polynomial, monomials_of_degree


def _as_quotient(R) -> QuotientRing:
    if isinstance(R, QuotientRing):
        return R
    if isinstance(R, Ideal):
        if not R.is_artinian():
            raise NotArtinian("S/I is not Artinian")
        Q = R._cache.get("quotient")
        if Q is None:
            Q = QuotientRing.from_ideal(R)
            R._cache["quotient"] = Q
        return Q
    raise TypeError("expected a QuotientRing or an Ideal")


class _FreeR:
    """A truncated graded free R-module: generator degrees plus coordinates per degree."""

    def __init__(self, Q: QuotientRing, degrees):
        self.Q = Q
        self.degrees = list(degrees)
        self._layout = {}

    def layout(self, d):
        """(offsets, total dimension) of the degree-d piece."""
        if d not in self._layout:
            offs, tot = [], 0
            for a in self.degrees:
                offs.append(tot)
                tot += self.Q.dim(d - a)
            self._layout[d] = (offs, tot)
        return self._layout[d]

    def times_var(self, v, d, vec):
        """x_v * vec, for vec in the degree-d piece."""
        Q = self.Q
        p = Q.field.char
        offs, _ = self.layout(d)
        offs1, _ = self.layout(d + 1)
        out = {}
        # locate generator blocks by offsets (sorted)
        for key, c in vec.items():
            g = _block(offs, key)
            k = d - self.degrees[g]
            b = key - offs[g]
            if k + 1 > Q.top:
                continue
            for t, x in Q.mult[v][k][b].items():
                kk = offs1[g] + t
                val = out.get(kk, 0) + c * x
                if p:
                    val %= p
                out[kk] = val
        return {k: x for k, x in out.items() if x}


def _block(offs, key):
    lo, hi = 0, len(offs) - 1
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if offs[mid] <= key:
            lo = mid
        else:
            hi = mid - 1
    return lo


def resolve_residue_field(R, steps: int = 4, slack: int = 2, stop_at_first: bool = False):
    """beta^R_{i,j}(k) for i <= steps and j <= i + slack.

    Returns a dict ``{(i, j): beta}``.  With ``stop_at_first`` the computation
    ends after the first homological degree containing an off-diagonal entry.
    """
    if steps < 1 or slack < 1:
        raise ValueError("steps and slack must be at least 1")
    Q = _as_quotient(R)
    n, fld = Q.n, Q.field
    one = fld.one
    betti = {(0, 0): 1}
    if Q.dim(1) == 0:
        return betti
    betti[(1, 1)] = Q.dim(1)
    # F_1 = R(-1)^n -> F_0 = R, e_v -> x_v (coordinates of R_1 via the basis)
    F0 = _FreeR(Q, [0])
    gens_images = []
    for v in range(n):
        gens_images.append(Q.times(v, 0, {0: one}))
    prev, cur = F0, _FreeR(Q, [1] * n)
    images = gens_images
    for i in range(1, steps):
        # kernel of d_i : F_i -> F_{i-1} in degrees i..i+1+slack
        memo = {}

        def image_of(g, mono):
            # d_i(x^mono * e_g) in F_{i-1}, degree deg(g) + |mono|
            key = (g, mono)
            if key in memo:
                return memo[key]
            if not any(mono):
                res = images[g]
            else:
                v = next(k for k, x in enumerate(mono) if x)
                smaller = tuple(x - 1 if k == v else x for k, x in enumerate(mono))
                res = prev.times_var(v, cur.degrees[g] + sum(smaller), image_of(g, smaller))
            memo[key] = res
            return res

        new_gens, new_images = [], []
        Zprev = []
        for d in range(i, i + 2 + slack):
            offs, tot = cur.layout(d)
            cols = []
            for g, a in enumerate(cur.degrees):
                k = d - a
                if k < 0 or k > Q.top:
                    continue
                for mono in Q.basis[k]:
                    cols.append(image_of(g, tuple(mono)))
            ker = kernel(cols, fld) if cols else []
            U = Echelon(fld)
            for z in Zprev:
                for v in range(n):
                    w = cur.times_var(v, d - 1, z)
                    if w:
                        U.insert(w)
            Zd = []
            count = 0
            for z in ker:
                Zd.append(z)
                if U.insert(z)[0] is not None:
                    count += 1
                    new_gens.append(d)
                    new_images.append(z)
            if count:
                betti[(i + 1, d)] = count
            Zprev = Zd
        off_diag = any(j != ii for (ii, j) in betti if ii == i + 1)
        if not new_gens or (stop_at_first and off_diag):
            break
        prev, cur, images = cur, _FreeR(Q, new_gens), new_images
    return betti


@dataclass
class KoszulCertificate:
    """``verdict`` is ``NotKoszul`` (a theorem) or ``KoszulUpTo`` (evidence through ``steps``)."""

    verdict: str
    steps: int
    slack: int
    betti: dict
    witness: tuple | None = None
    field: str = ""
    notes: list = dc_field(default_factory=list)

    @property
    def is_not_koszul(self) -> bool:
        return self.verdict == "NotKoszul"

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict if self.witness is None else f"NotKoszul{self.witness}",
            "koszul_up_to": None if self.is_not_koszul else self.steps,
            "witness": list(self.witness) if self.witness else None,
            "betti_over_R": [[i, j, v] for (i, j), v in sorted(self.betti.items())],
            "steps": self.steps, "slack": self.slack, "field": self.field, "notes": self.notes,
        }


def koszul_certificate(R, steps: int = 4, slack: int = 2, stop_at_first: bool = True) -> KoszulCertificate:
    Q = _as_quotient(R)
    notes = []
    I = R if isinstance(R, Ideal) else Q.ideal
    if I is not None:
        bad = sorted({g.degree() for g in minimal_generators(I)} - {2})
        if bad:
            d = bad[-1]
            cnt = sum(1 for g in minimal_generators(I) if g.degree() == d)
            notes.append("ideal is not generated by quadrics")
            return KoszulCertificate("NotKoszul", steps, slack, {(2, d): cnt}, (2, d, cnt),
                                     Q.field.spec(), notes)
    betti = resolve_residue_field(Q, steps, slack, stop_at_first)
    off = sorted((i, j, v) for (i, j), v in betti.items() if i != j)
    if off:
        return KoszulCertificate("NotKoszul", steps, slack, betti, off[0], Q.field.spec(), notes)
    return KoszulCertificate("KoszulUpTo", steps, slack, betti, None, Q.field.spec(), notes)


def poincare_check(betti: dict, hilbert_function, top: int) -> bool:
    """sum_{i,j'} (-1)^i beta_{i,j'} h_{j-j'} == [j == 0] for j = 0..top."""
    for j in range(top + 1):
        s = 0
        for (i, jj), v in betti.items():
            if jj <= j and j - jj < len(hilbert_function):
                s += (-1) ** i * v * hilbert_function[j - jj]
        if s != (1 if j == 0 else 0):
            return False
    return True


# --- obstructions over S -------------------------------------------------------

def _mono_index(n, d):
    monos = monomials_of_degree(n, d)
    return monos, {m: k for k, m in enumerate(monos)}


def _syzygy_space(gens, n, field, d):
    """Kernel of S_{d-2}^m -> S_d, (e_k (x) mu) -> mu * q_k, as dicts over (k, mu) indices."""
    src, _ = _mono_index(n, d - 2)
    _, tgt = _mono_index(n, d)
    cols = []
    for q in gens:
        for mu in src:
            cols.append({tgt[tuple(a + b for a, b in zip(e, mu))]: c for e, c in q.terms.items()})
    return src, kernel(cols, field)


def syzygy_obstruction(I: Ideal):
    """A degree-4 syzygy on the quadrics outside S_1 * (linear syzygies) + (Koszul syzygies), or None."""
    gens = minimal_generators(I)
    if not gens or any(g.degree() != 2 for g in gens):
        raise NotQuadratic("the obstruction needs an ideal minimally generated by quadrics")
    ring = I.ring
    n, fld = ring.n, ring.field
    m = len(gens)
    lin_src, lin = _syzygy_space(gens, n, fld, 3)
    quad_src, quad = _syzygy_space(gens, n, fld, 4)
    qidx = {mu: k for k, mu in enumerate(quad_src)}
    w = len(quad_src)
    Z = Echelon(fld)
    # S_1 * linear syzygies
    for s in lin:
        for v in range(n):
            vec = {}
            for key, c in s.items():
                k, mu = divmod(key, len(lin_src))
                e = list(lin_src[mu])
                e[v] += 1
                vec[k * w + qidx[tuple(e)]] = c
            Z.insert(vec)
    # Koszul syzygies q_j e_k - q_k e_j
    p = fld.char
    for j in range(m):
        for k in range(j + 1, m):
            vec = {}
            for e, c in gens[j].terms.items():
                vec[k * w + qidx[e]] = c
            for e, c in gens[k].terms.items():
                key = j * w + qidx[e]
                val = vec.get(key, 0) - c
                if p:
                    val %= p
                if val:
                    vec[key] = val
                else:
                    vec.pop(key, None)
            Z.insert(vec)
    info = {"z4_dim": Z.rank, "syz4_dim": len(quad)}
    for s in quad:
        if not Z.contains(s):
            return _to_module_element(s, gens, quad_src, ring), info
    return None, info


def _to_module_element(vec, gens, src, ring) -> ModuleElement:
    w = len(src)
    coords = [dict() for _ in gens]
    for key, c in vec.items():
        k, mu = divmod(key, w)
        coords[k][src[mu]] = c
    module = GradedFreeModule.from_degrees(ring, [2] * len(gens))
    return ModuleElement(module, [Polynomial(ring, t) for t in coords])


def in_z4(I: Ideal, syz: ModuleElement) -> bool:
    """Whether a degree-4 syzygy on the minimal quadrics lies in S_1*(linear) + (Koszul)."""
    gens = minimal_generators(I)
    ring = I.ring
    n, fld = ring.n, ring.field
    lin_src, lin = _syzygy_space(gens, n, fld, 3)
    quad_src = monomials_of_degree(n, 2)
    qidx = {mu: k for k, mu in enumerate(quad_src)}
    w = len(quad_src)
    Z = Echelon(fld)
    for s in lin:
        for v in range(n):
            vec = {}
            for key, c in s.items():
                k, mu = divmod(key, len(lin_src))
                e = list(lin_src[mu])
                e[v] += 1
                vec[k * w + qidx[tuple(e)]] = c
            Z.insert(vec)
    for j in range(len(gens)):
        for k in range(j + 1, len(gens)):
            diff = ModuleElement(syz.module, [gens[k] if t == j else (-gens[j] if t == k else ring.zero())
                                              for t in range(len(gens))])
            Z.insert(_flatten(diff, qidx, w))
    return Z.contains(_flatten(syz, qidx, w))


def _flatten(s: ModuleElement, qidx, w):
    out = {}
    for k, f in enumerate(s.coords):
        for e, c in f.terms.items():
            out[k * w + qidx[e]] = c
    return out


def express_in_generators(targets, gens):
    """Coefficient rows lambda with targets[i] = sum_k lambda[i][k] gens[k] (same-degree forms)."""
    ring = gens[0].ring
    fld = ring.field
    d = gens[0].degree()
    _, idx = _mono_index(ring.n, d)
    ech = Echelon(fld, track=True)
    for k, g in enumerate(gens):
        ech.insert({idx[e]: c for e, c in g.terms.items()}, {k: fld.one})
    out = []
    for t in targets:
        rem, tag = ech.reduce({idx[e]: c for e, c in t.terms.items()}, {})
        if rem:
            raise ValueError("target is not in the span of the generators")
        out.append({k: fld.neg(c) for k, c in tag.items() if c})
    return out


def transport_syzygy(coeffs, targets, gens) -> ModuleElement:
    """Rewrite sum_i coeffs[i] * targets[i] = 0 as a syzygy on ``gens``."""
    ring = gens[0].ring
    lam = express_in_generators(targets, gens)
    coords = [ring.zero() for _ in gens]
    for u, row in zip(coeffs, lam):
        for k, c in row.items():
            coords[k] = coords[k] + u.scale(c)
    module = GradedFreeModule.from_degrees(ring, [g.degree() for g in gens])
    return ModuleElement(module, coords)


def degree2_betti_bound(I: Ideal, table=None) -> dict:
    """NotKoszul when beta_{2,4} > C(beta_{1,2}, 2); Inconclusive otherwise."""
    from .resolution import betti_table
    gens = minimal_generators(I)
    if not gens or any(g.degree() != 2 for g in gens):
        raise NotQuadratic("the bound applies to quadratic ideals")
    t = table or betti_table(I)
    b12, b24 = t.get(1, 2), t.get(2, 4)
    bound = comb(b12, 2)
    return {"verdict": "NotKoszul" if b24 > bound else "Inconclusive",
            "beta_1_2": b12, "beta_2_4": b24, "bound": bound}


def linear_colon(L_gens, f: Polynomial):
    """A basis of (L : f)_1 for L generated by forms of one degree, by linear algebra."""
    ring = f.ring
    n, fld = ring.n, ring.field
    dl = L_gens[0].degree()
    d = f.degree() + 1
    _, idx = _mono_index(ring.n, d)
    span = Echelon(fld)
    for g in L_gens:
        for mu in monomials_of_degree(n, d - dl):
            span.insert({idx[tuple(a + b for a, b in zip(e, mu))]: c for e, c in g.terms.items()})
    # l * f reduced modulo L_d; kernel over the variables
    cols = []
    for v in range(n):
        x = ring.var(v)
        prod = x * f
        rem, _ = span.reduce({idx[e]: c for e, c in prod.terms.items()})
        cols.append(rem)
    out = []
    for vec in kernel(cols, fld):
        out.append(sum((ring.var(v).scale(c) for v, c in vec.items()), ring.zero()))
    return out


def quadratic_monomials_in(I: Ideal):
    """The degree-2 monomials lying in I."""
    ring = I.ring
    out = []
    for e in monomials_of_degree(ring.n, 2):
        m = Polynomial(ring, {e: ring.field.one})
        if I.contains(m):
            out.append(m)
    return out


def cyclic_obstruction(I: Ideal) -> dict:
    """Check the cyclic syzygy sum_i x_{i-1}x_{i-2} q_i = 0 against the span Z_4.

    Here q_i = x_i^2 - x_{i-1}x_{i-3} must lie in I.  Also reports (L : q_0)_1
    for L = (q_1..q_{c-1}, quadratic monomials of I), as a list of linear forms.
    """
    from .construct import cyclic_binomials, cyclic_syzygy
    ring = I.ring
    qs = cyclic_binomials(ring)
    us = cyclic_syzygy(ring)
    if not all(I.contains(q) for q in qs):
        raise ValueError("the cyclic binomials are not in the ideal")
    total = ring.zero()
    for u, q in zip(us, qs):
        total = total + u * q
    gens = minimal_generators(I)
    syz = transport_syzygy(us, qs, gens)
    L = qs[1:] + quadratic_monomials_in(I)
    colon_1 = linear_colon(L, qs[0])
    return {
        "sum_is_zero": total.is_zero(),
        "in_z4": in_z4(I, syz),
        "syzygy": syz,
        "colon_linear_part": colon_1,
    }
