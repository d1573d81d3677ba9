"""Exact coefficient fields: the rationals and prime fields GF(p).

Coefficients are stored inside polynomials as raw Python values (``Fraction``
over QQ, ``int`` in ``[0, p)`` over GF(p)); :class:`Field` knows how to
normalize and invert them.  :class:`Scalar` is the public value type that
pairs a raw value with its field.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import DivisionByZero, FieldMismatch, ParseError

DEFAULT_PRIME = 32003

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; exact for every n < 3.3e24."""
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Field:
    """A field descriptor: ``Field()`` is QQ, ``Field(p)`` is GF(p)."""

    __slots__ = ("char",)

    def __init__(self, modulus: int = 0):
        modulus = int(modulus)
        if modulus and not is_prime(modulus):
            raise ValueError(f"modulus {modulus} is not prime")
        self.char = modulus

    @property
    def kind(self) -> str:
        return "PrimeField" if self.char else "Rationals"

    @property
    def zero(self):
        return 0 if self.char else Fraction(0)

    @property
    def one(self):
        return 1 if self.char else Fraction(1)

    def __eq__(self, other):
        return isinstance(other, Field) and other.char == self.char

    def __hash__(self):
        return hash(("Field", self.char))

    def __repr__(self):
        return f"GF({self.char})" if self.char else "QQ"

    def spec(self) -> str:
        """The CLI spelling of this field (``q`` or ``gf:<p>``)."""
        return f"gf:{self.char}" if self.char else "q"

    def __call__(self, value):
        """Coerce an int, Fraction or ``"a/b"`` string into a raw coefficient."""
        if isinstance(value, Scalar):
            if value.field != self:
                raise FieldMismatch(f"{value.field!r} value used in {self!r}")
            return value.value
        if isinstance(value, str):
            value = parse_fraction(value)
        if self.char:
            if isinstance(value, Fraction):
                if value.denominator % self.char == 0:
                    raise DivisionByZero(f"denominator of {value} vanishes mod {self.char}")
                return value.numerator * pow(value.denominator, -1, self.char) % self.char
            return int(value) % self.char
        return Fraction(value)

    def inv(self, a):
        if not a:
            raise DivisionByZero("inverse of zero")
        if self.char:
            return pow(a, -1, self.char)
        return 1 / a

    def neg(self, a):
        return (-a) % self.char if self.char else -a

    def random(self, rng, nonzero: bool = False):
        """Random element; over QQ a small integer in [-9, 9]."""
        while True:
            if self.char:
                a = rng.randrange(self.char)
            else:
                a = Fraction(rng.randint(-9, 9))
            if a or not nonzero:
                return a

    def to_text(self, a) -> str:
        if self.char:
            return str(a)
        a = Fraction(a)
        return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"

    def signed(self, a) -> int | Fraction:
        """Representative in (-p/2, p/2] for display; identity over QQ."""
        if self.char and a > self.char // 2:
            return a - self.char
        return a


QQ = Field(0)


def GF(p: int = DEFAULT_PRIME) -> Field:
    return Field(p)


_FIELD_RE = re.compile(r"^(?:q|qq|gf:(\d+))$", re.IGNORECASE)


def parse_field(text: str) -> Field:
    """Parse the CLI field flag: ``q`` or ``gf:<p>``."""
    m = _FIELD_RE.match(text.strip())
    if not m:
        raise ParseError(f"unknown field {text!r}; expected 'q' or 'gf:<p>'")
    return Field(int(m.group(1))) if m.group(1) else QQ


_FRAC_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_fraction(text: str) -> Fraction:
    m = _FRAC_RE.match(text)
    if not m:
        raise ParseError(f"not a rational number: {text!r}")
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise DivisionByZero(f"zero denominator in {text!r}")
    return Fraction(int(m.group(1)), den)


@dataclass(frozen=True)
class Scalar:
    """An exact field element in canonical form."""

    field: Field
    value: object

    def __post_init__(self):
        object.__setattr__(self, "value", self.field(self.value))

    @classmethod
    def parse(cls, text: str, field: Field = QQ) -> "Scalar":
        return cls(field, parse_fraction(text))

    def _check(self, other) -> "Scalar":
        if not isinstance(other, Scalar):
            return Scalar(self.field, other)
        if other.field != self.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
        return other

    def __add__(self, other):
        return field_arith(self, self._check(other), "add")

    def __sub__(self, other):
        return field_arith(self, self._check(other), "sub")

    def __mul__(self, other):
        return field_arith(self, self._check(other), "mul")

    def __truediv__(self, other):
        return field_arith(self, self._check(other), "div")

    __radd__ = __add__
    __rmul__ = __mul__

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.value))

    def inverse(self) -> "Scalar":
        return Scalar(self.field, self.field.inv(self.value))

    def __bool__(self):
        return bool(self.value)

    def __str__(self):
        return self.field.to_text(self.value)


def field_arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    """Exact ``a op b`` for op in {add, sub, mul, div}."""
    if a.field != b.field:
        raise FieldMismatch(f"{a.field!r} vs {b.field!r}")
    F = a.field
    x, y = a.value, b.value
    if op == "add":
        r = x + y
    elif op == "sub":
        r = x - y
    elif op == "mul":
        r = x * y
    elif op == "div":
        r = x * F.inv(y)
    else:
        raise ValueError(f"unknown operation {op!r}")
    return Scalar(F, r)
