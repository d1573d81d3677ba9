"""Text grammar for polynomials and ``.ideal`` files; Betti/report serializers.

Polynomial grammar::

    poly  := ['+'|'-'] term (('+'|'-') term)*
    term  := [coeff ['*']] factor (['*'] factor)*  |  coeff
    coeff := digits ['/' digits]
    factor:= variable [('^'|'**') digits]

Multiplication may be implicit (``3x0x1^2``); unicode input is rejected.

An ``.ideal`` file is line oriented::

    # comment
    ring x0 x1 x2 x3        (or "ring 4", or "ring 4 y" for y0..y3)
    field gf:32003          (optional, default from the caller)
    x0^2 - x1*x3
    x1^2 - x2*x0
    alternating 5           (optional section: upper-triangular entries follow)
    x0
    ...
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from dataclasses import dataclass, field as dc_field

from .errors import ParseError, UnknownVariable
from .field import QQ, Field, parse_field
from .ring import AlternatingMatrix, Polynomial, PolynomialRing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^]))")


def _split_identifier(ident: str, ring: PolynomialRing, pos: int):
    """Split a run like ``x0x1`` into known variable indices (longest match first)."""
    out = []
    i = 0
    names = sorted(ring.names, key=len, reverse=True)
    while i < len(ident):
        for name in names:
            if ident.startswith(name, i):
                out.append(ring.index(name))
                i += len(name)
                break
        else:
            raise UnknownVariable(f"unknown variable in {ident!r}", pos + i)
    return out


def _tokenize(text: str):
    if not text.isascii():
        bad = next(i for i, ch in enumerate(text) if not ch.isascii())
        raise ParseError("non-ASCII character in input", bad)
    pos = 0
    toks = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos:].lstrip()[:1]!r}", pos)
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            toks.append(("num", int(m.group(1)), start))
        elif m.group(2) is not None:
            toks.append(("id", m.group(2), start))
        else:
            toks.append(("op", m.group(3), start))
        pos = m.end()
    return toks


def parse_polynomial(text: str, ring: PolynomialRing) -> Polynomial:
    """Parse ``text`` into a canonical polynomial of ``ring``."""
    toks = _tokenize(text)
    F = ring.field
    n = ring.n
    i = 0
    terms = ring.zero()
    if not toks:
        raise ParseError("empty polynomial", 0)

    def peek():
        return toks[i] if i < len(toks) else None

    acc = {}
    p = F.char
    while i < len(toks):
        sign = 1
        tok = peek()
        if tok[0] == "op" and tok[1] in "+-":
            sign = -1 if tok[1] == "-" else 1
            i += 1
        elif acc or i > 0:
            raise ParseError(f"expected '+' or '-', got {tok[1]!r}", tok[2])
        tok = peek()
        if tok is None:
            raise ParseError("dangling sign at end of input", len(text))
        num, den = 1, 1
        exp = [0] * n
        saw_factor = False
        if tok[0] == "num":
            num = tok[1]
            i += 1
            tok = peek()
            if tok is not None and tok[0] == "op" and tok[1] == "/":
                i += 1
                tok = peek()
                if tok is None or tok[0] != "num":
                    raise ParseError("expected denominator after '/'", tok[2] if tok else len(text))
                den = tok[1]
                if den == 0:
                    raise ParseError("zero denominator", tok[2])
                i += 1
            tok = peek()
            if tok is not None and tok[0] == "op" and tok[1] == "*":
                i += 1
                tok = peek()
                if tok is None or tok[0] != "id":
                    raise ParseError("expected a variable after '*'", tok[2] if tok else len(text))
        while tok is not None and tok[0] == "id":
            idxs = _split_identifier(tok[1], ring, tok[2])
            i += 1
            power = 1
            tok = peek()
            if tok is not None and tok[0] == "op" and tok[1] in ("^", "**"):
                i += 1
                tok = peek()
                if tok is None or tok[0] != "num":
                    raise ParseError("expected an exponent", tok[2] if tok else len(text))
                power = tok[1]
                i += 1
            for k in idxs[:-1]:
                exp[k] += 1
            exp[idxs[-1]] += power
            saw_factor = True
            tok = peek()
            if tok is not None and tok[0] == "op" and tok[1] == "*":
                i += 1
                tok = peek()
                if tok is None or tok[0] != "id":
                    raise ParseError("expected a variable after '*'", tok[2] if tok else len(text))
        if tok is not None and not (tok[0] == "op" and tok[1] in "+-"):
            raise ParseError(f"unexpected token {tok[1]!r}", tok[2])
        if not saw_factor and toks[i - 1][0] == "op":
            raise ParseError("missing term", toks[i - 1][2])
        c = F(Fraction(sign * num, den))
        e = tuple(exp)
        v = acc.get(e, 0) + c
        if p:
            v %= p
        acc[e] = v
    return Polynomial(ring, {e: c for e, c in acc.items() if c}) if acc else terms


def _format_coeff(c, field: Field) -> str:
    return field.to_text(c)


def format_polynomial(f: Polynomial, order=None) -> str:
    """Canonical text: terms descending in the ring order, explicit ``*``."""
    if not f.terms:
        return "0"
    R = f.ring
    F = R.field
    parts = []
    for k, (e, c) in enumerate(f.sorted_terms(order)):
        c = F.signed(c)
        neg = c < 0
        a = -c if neg else c
        mono = "*".join(
            R.names[v] + (f"^{x}" if x > 1 else "") for v, x in enumerate(e) if x
        )
        if mono and a == 1:
            body = mono
        elif mono:
            body = f"{_format_coeff(a, QQ if not F.char else F)}*{mono}"
        else:
            body = _format_coeff(a, QQ if not F.char else F)
        if k == 0:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


@dataclass
class IdealFile:
    """Parsed contents of an ``.ideal`` (or ``.inv``) file."""

    ring: PolynomialRing
    generators: list
    homogeneous: bool = True
    matrix: AlternatingMatrix | None = None
    header: dict = dc_field(default_factory=dict)


def _ring_from_header(words, field: Field) -> PolynomialRing:
    if not words:
        raise ParseError("'ring' needs a variable count or names")
    if words[0].isdigit():
        n = int(words[0])
        prefix = words[1] if len(words) > 1 else "x"
        return PolynomialRing(n, field, [f"{prefix}{i}" for i in range(n)])
    return PolynomialRing(len(words), field, words)


def parse_ideal_text(text: str, field: Field | None = None) -> IdealFile:
    ring_words = None
    fld = field
    header = {}
    gen_lines = []
    alt_size = None
    alt_lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        head_l = head.lower()
        try:
            if head_l == "ring":
                ring_words = rest.split()
                header["ring"] = rest.strip()
            elif head_l == "field":
                if field is None:
                    fld = parse_field(rest)
                header["field"] = rest.strip()
            elif head_l == "order":
                header["order"] = rest.strip()
            elif head_l == "alternating":
                alt_size = int(rest.strip())
            elif alt_size is not None:
                alt_lines.extend((s, lineno) for s in line.split(",") if s.strip())
            else:
                gen_lines.extend((s, lineno) for s in line.split(",") if s.strip())
        except ValueError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
    if ring_words is None:
        raise ParseError("missing 'ring' header")
    fld = fld if fld is not None else QQ
    ring = _ring_from_header(ring_words, fld)
    if "order" in header:
        from .ring import MonomialOrder
        ring = ring.with_order(MonomialOrder(header["order"]))

    def parse_line(s, lineno):
        try:
            return parse_polynomial(s, ring)
        except ParseError as exc:
            raise type(exc)(f"line {lineno}: {exc}") from None

    gens = [parse_line(s, k) for s, k in gen_lines]
    matrix = None
    if alt_size is not None:
        matrix = AlternatingMatrix.from_upper(ring, alt_size, [parse_line(s, k) for s, k in alt_lines])
    homogeneous = all(g.is_homogeneous() for g in gens)
    return IdealFile(ring, gens, homogeneous, matrix, header)


def read_ideal_file(path, field: Field | None = None) -> IdealFile:
    with open(path, encoding="utf-8") as fh:
        return parse_ideal_text(fh.read(), field)


def format_ideal_file(ring: PolynomialRing, gens, matrix: AlternatingMatrix | None = None) -> str:
    lines = ["ring " + " ".join(ring.names), "field " + ring.field.spec()]
    lines += [format_polynomial(g) for g in gens]
    if matrix is not None:
        lines.append(f"alternating {matrix.size}")
        lines += [format_polynomial(f) for f in matrix.upper()]
    return "\n".join(lines) + "\n"


def render_betti(table, machine: bool = False) -> str:
    """Betti table as text: column i, row j holds beta_{i,i+j}; zeros print as ``--``."""
    if machine:
        return json.dumps(table.to_json())
    entries = table.entries
    if not entries:
        return "   | 0\n---+--\n 0 | 1\n"
    pd = table.pd
    reg = table.regularity
    grid = [[str(entries.get((i, i + j), 0) or "--") for i in range(pd + 1)] for j in range(reg + 1)]
    width = max(2, max(len(x) for row in grid for x in row), len(str(pd)))
    lab = max(len(str(reg)), 1)
    head = " " * lab + " |" + "".join(f" {i:>{width}}" for i in range(pd + 1))
    rule = "-" * (lab + 1) + "+" + "-" * ((width + 1) * (pd + 1))
    rows = [f"{j:>{lab}} |" + "".join(f" {x:>{width}}" for x in grid[j]) for j in range(reg + 1)]
    return "\n".join([head, rule] + rows) + "\n"


def report_to_json(report: dict) -> str:
    """Deterministic JSON text (sorted keys) for structured output."""
    return json.dumps(report, sort_keys=True, indent=2, default=_json_default) + "\n"


def _json_default(obj):
    if hasattr(obj, "to_json"):
        return obj.to_json()
    if isinstance(obj, Polynomial):
        return format_polynomial(obj)
    if isinstance(obj, (set, frozenset, tuple)):
        return list(obj)
    return str(obj)
