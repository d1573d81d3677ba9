"""Builders and verifiers: Pfaffians, deviation-two Gorenstein ideals, links, tensor products."""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from math import comb

from .errors import EvenSize, OddSize, PreconditionUnmet
from .field import GF, Field
from .groebner import Ideal, colon, is_regular_sequence, minimal_generators
from .resolution import BettiTable, betti_table
from .ring import AlternatingMatrix, Polynomial, PolynomialRing


def pfaffian(M: AlternatingMatrix) -> Polynomial:
    """Pf(M) by recursive expansion along the first row (memoized on index sets)."""
    if M.size % 2:
        raise OddSize("Pfaffian needs an even-size matrix; use submaximal_pfaffians")
    ring = M.ring
    memo = {}

    def pf(idx):
        if not idx:
            return ring.one()
        if idx in memo:
            return memo[idx]
        first = idx[0]
        out = ring.zero()
        for pos in range(1, len(idx)):
            a = M.entries[first][idx[pos]]
            if a:
                rest = idx[1:pos] + idx[pos + 1:]
                term = a * pf(rest)
                out = out + term if pos % 2 == 1 else out - term
        memo[idx] = out
        return out

    if M.size == 0:
        raise ValueError("empty matrix")
    return pf(tuple(range(M.size)))


def submaximal_pfaffians(M: AlternatingMatrix):
    """pf_k = (-1)^k Pf(M with row and column k deleted), k = 0..m-1, so that M * pf = 0."""
    if M.size % 2 == 0:
        raise EvenSize("submaximal Pfaffians need an odd-size matrix")
    out = []
    for k in range(M.size):
        p = pfaffian(M.delete([k])) if M.size > 1 else M.ring.one()
        out.append(p if k % 2 == 0 else -p)
    if any(not f.is_zero() for f in M.times_vector(out)):
        raise ArithmeticError("M * pf != 0; sign convention broken")
    return out


# --- closed forms ------------------------------------------------------------

def deviation_two_hvector(c: int):
    """h_i = C(c-1, i) + C(c-3, i-1), i = 0..c-1."""
    return [comb(c - 1, i) + (comb(c - 3, i - 1) if i >= 1 else 0) for i in range(c)]


def aci_hvector(c: int):
    """h_i = C(c, i) - C(c-2, i-2) for a Koszul almost complete intersection."""
    out = [comb(c, i) - (comb(c - 2, i - 2) if i >= 2 else 0) for i in range(c + 1)]
    while out and out[-1] == 0:
        out.pop()
    return out


def linked_deviation_two_hvector(c: int):
    """h_i = C(c-1, i) - C(c-3, i-2): the residual of a deviation-two ideal in a general quadratic CI."""
    out = [_c(c - 1, i) - _c(c - 3, i - 2) for i in range(c)]
    while out and out[-1] == 0:
        out.pop()
    return out


def _c(n, k):
    return comb(n, k) if 0 <= k <= n else 0


def deviation_two_betti(c: int) -> BettiTable:
    """beta_{i,2i} = 5C(c-3,i-1) + C(c-3,i), beta_{i,2i-1} = 5C(c-3,i-2) + C(c-3,i-3)."""
    entries = {}
    for i in range(c + 1):
        entries[(i, 2 * i)] = 5 * _c(c - 3, i - 1) + _c(c - 3, i)
        entries[(i, 2 * i - 1)] = 5 * _c(c - 3, i - 2) + _c(c - 3, i - 3)
    return BettiTable(entries)


def deviation_two_totals(c: int):
    return [comb(c, i) + (2 * comb(c - 2, i - 1) if i >= 1 else 0) for i in range(c + 1)]


# --- deviation-two instances -------------------------------------------------

@dataclass
class DeviationTwoSpec:
    """Pf(M) + (extra quadrics) for a 5x5 alternating matrix M of linear forms."""

    M: AlternatingMatrix
    extra_quadrics: list = dc_field(default_factory=list)
    seed: int | None = None

    def __post_init__(self):
        if self.M.size != 5:
            raise ValueError("the alternating matrix must be 5 x 5")
        for q in self.extra_quadrics:
            if q.is_zero() or q.degrees() != {2}:
                raise ValueError("extra generators must be nonzero quadratic forms")

    @property
    def c(self) -> int:
        return 3 + len(self.extra_quadrics)

    @property
    def ring(self) -> PolynomialRing:
        return self.M.ring


def random_deviation_two(c: int, seed: int = 0, field: Field | None = None, n: int | None = None) -> DeviationTwoSpec:
    """Dense random M (linear) and c-3 random quadrics in n (default c) variables."""
    if c < 3:
        raise ValueError("deviation-two instances need c >= 3")
    fld = field if field is not None else GF()
    ring = PolynomialRing(n if n is not None else c, fld)
    rng = random.Random(seed)
    M = AlternatingMatrix.random(ring, 5, rng)
    extra = [ring.random_form(2, rng) for _ in range(c - 3)]
    return DeviationTwoSpec(M, extra, seed)


@dataclass
class ValidityReport:
    checks: dict
    details: dict = dc_field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    @property
    def failed(self):
        return [k for k, v in self.checks.items() if not v]

    def to_json(self) -> dict:
        return {"ok": self.ok, "checks": self.checks, "failed": self.failed, "details": self.details}


def build_deviation_two(spec: DeviationTwoSpec, with_betti: bool = True):
    """I = Pf(M) + (q_6, ..., q_{c+2}) together with a validity report (never raises on failure)."""
    from .resolution import artinian_reduction
    ring = spec.ring
    c = spec.c
    pf = submaximal_pfaffians(spec.M)
    P = Ideal(ring, pf)
    checks, details = {}, {"c": c, "field": ring.field.spec(), "seed": spec.seed}
    if P.is_unit():
        checks["pf_height_3"] = False
        return Ideal(ring, pf + list(spec.extra_quadrics)), ValidityReport(checks, details)
    hp = P.height
    details["pf_height"] = hp
    checks["pf_height_3"] = hp == 3
    checks["pf_independent"] = len(minimal_generators(P)) == 5
    checks["extras_regular"] = (not spec.extra_quadrics) or (hp == 3 and is_regular_sequence(spec.extra_quadrics, P))
    I = Ideal(ring, pf + list(spec.extra_quadrics))
    if I.is_unit():
        checks["height_c"] = False
        return I, ValidityReport(checks, details)
    checks["height_c"] = I.height == c
    if not all(checks.values()):
        return I, ValidityReport(checks, details)
    h = I.hilbert()
    details["h_vector"] = h.h
    checks["h_vector"] = h.h == deviation_two_hvector(c)
    checks["multiplicity"] = h.multiplicity == 5 * 2 ** (c - 3)
    details["multiplicity"] = h.multiplicity
    if with_betti:
        target = I
        if not I.is_artinian():
            target, info = artinian_reduction(I, seed=spec.seed or 0)
            details["artinian_reduction"] = info
        t = betti_table(target)
        details["betti"] = t.to_json()
        checks["betti_closed_form"] = t == deviation_two_betti(c)
        checks["totals"] = t.totals() == deviation_two_totals(c)
        checks["regularity"] = t.regularity == c - 1
    return I, ValidityReport(checks, details)


def random_aci(c: int, seed: int = 0, field: Field | None = None) -> Ideal:
    """2x2 minors of a random 3x2 linear matrix plus c-2 random quadrics, in c variables."""
    fld = field if field is not None else GF()
    ring = PolynomialRing(c, fld)
    rng = random.Random(seed)
    L = [[ring.random_form(1, rng) for _ in range(2)] for _ in range(3)]
    minors = [L[1][0] * L[2][1] - L[1][1] * L[2][0],
              L[0][0] * L[2][1] - L[0][1] * L[2][0],
              L[0][0] * L[1][1] - L[0][1] * L[1][0]]
    return Ideal(ring, minors + [ring.random_form(2, rng) for _ in range(c - 2)])


def random_quadratic_ci(c: int, seed: int = 0, field: Field | None = None, n: int | None = None) -> Ideal:
    fld = field if field is not None else GF()
    ring = PolynomialRing(n if n is not None else c, fld)
    rng = random.Random(seed)
    return Ideal(ring, [ring.random_form(2, rng) for _ in range(c)])


def hvector_checks(I: Ideal, family: str) -> bool:
    """Compare the h-vector of S/I with the closed form of ``family`` (``ACI`` or ``deviation_two``)."""
    h = I.hilbert().h
    c = I.height
    if family.lower() == "aci":
        return h == aci_hvector(c)
    if family.lower() in ("deviation_two", "deviation-two", "dev2"):
        return h == deviation_two_hvector(c)
    raise ValueError(f"unknown family {family!r}")


# --- linkage -----------------------------------------------------------------

def _is_cm(I: Ideal) -> bool:
    if I.is_artinian():
        return True
    return betti_table(I).pd == I.height


def link(L: Ideal, I: Ideal, check_involution: bool = False):
    """J = (L : I) for a quadratic complete intersection L in I of the same height.

    Returns ``(J, report)``; the report compares h_i(S/I) with C(c,i) - h_{c-i}(S/J).
    For I = L the link is the unit ideal and is reported, not computed.
    """
    if L.ring != I.ring:
        raise PreconditionUnmet("L and I live in different rings")
    lg = minimal_generators(L)
    if not lg or any(g.degree() != 2 for g in lg):
        raise PreconditionUnmet("L must be generated by quadrics")
    c = L.height
    if len(lg) != c:
        raise PreconditionUnmet("L is not a complete intersection")
    if not I.contains(L):
        raise PreconditionUnmet("L is not contained in I")
    if I.height != c:
        raise PreconditionUnmet("L and I have different heights")
    hI = I.hilbert()
    report = {"c": c, "h_I": hI.h}
    if L.contains(I):
        report["self_link"] = True
        report["note"] = "I = L links to the unit ideal"
        return None, report
    J = colon(L, I)
    hJ = J.hilbert()
    report["h_J"] = hJ.h
    cm = _is_cm(I)
    report["cohen_macaulay"] = cm
    if cm:
        def at(v, k):
            return v[k] if 0 <= k < len(v) else 0
        predicted = [comb(c, i) - at(hJ.h, c - i) for i in range(c + 1)]
        while len(predicted) > 1 and predicted[-1] == 0:
            predicted.pop()
        report["predicted_h_I"] = predicted
        report["identity_holds"] = predicted == hI.h
    if check_involution:
        report["involution"] = colon(L, J) == I
    return J, report


def general_ci_in(I: Ideal, c: int | None = None, seed: int = 0) -> Ideal:
    """c random k-combinations of the quadratic minimal generators of I."""
    gens = [g for g in minimal_generators(I) if g.degree() == 2]
    c = I.height if c is None else c
    rng = random.Random(seed)
    fld = I.ring.field
    out = []
    for _ in range(c):
        f = I.ring.zero()
        for g in gens:
            f = f + g.scale(fld.random(rng))
        out.append(f)
    return Ideal(I.ring, out)


# --- tensor products ---------------------------------------------------------

def tensor_product(I: Ideal, J: Ideal) -> Ideal:
    """I + J in k[x, x'] with the variables of J shifted past those of I."""
    if I.ring.field != J.ring.field:
        raise PreconditionUnmet("tensor factors must share a field")
    n1, n2 = I.ring.n, J.ring.n
    ring = PolynomialRing(n1 + n2, I.ring.field)
    a = [g.change_ring(ring, list(range(n1))) for g in I.gens]
    b = [g.change_ring(ring, list(range(n1, n1 + n2))) for g in J.gens]
    return Ideal(ring, a + b)


def squares_ci(k: int, field: Field | None = None) -> Ideal:
    """(x0^2, ..., x_{k-1}^2): the quadratic complete intersection with h = (1+t)^k."""
    fld = field if field is not None else GF()
    ring = PolynomialRing(k, fld)
    return Ideal(ring, [v * v for v in ring.gens])


# --- the cyclic syzygy -------------------------------------------------------

def cyclic_binomials(ring: PolynomialRing):
    """q_i = x_i^2 - x_{i-1} x_{i-3} (indices mod c)."""
    c = ring.n
    x = ring.gens
    return [x[i] * x[i] - x[(i - 1) % c] * x[(i - 3) % c] for i in range(c)]


def cyclic_syzygy(ring: PolynomialRing):
    """u_i = x_{i-1} x_{i-2}, the quadratic syzygy on the binomials q_i."""
    c = ring.n
    x = ring.gens
    return [x[(i - 1) % c] * x[(i - 2) % c] for i in range(c)]
