"""Exact scalars of Q(t^(1/d)) with the t-adic valuation.

An element is stored as ``s^shift * P(s) / Q(s)`` where ``s = t^(1/d)``, P and Q
are polynomials over Q with nonzero constant terms, gcd(P, Q) = 1 and Q(0) = 1.
That form is unique, so equality and printing are canonical and the valuation
is simply ``shift / d``. Nonzero rational constants have valuation 0.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import total_ordering
from math import gcd
from typing import Union

__all__ = [
    "ExtRat",
    "INF",
    "ValuedScalar",
    "ScalarSyntaxError",
    "ExponentError",
    "parse_scalar",
    "valuation",
    "rebase",
]

Rational = Union[int, Fraction]


@total_ordering
class ExtRat:
    """A rational number or +infinity, ordered, with +infinity absorbing under +."""

    __slots__ = ("_v",)

    def __init__(self, value: Rational | str | "ExtRat" | None):
        if isinstance(value, ExtRat):
            self._v = value._v
        elif value is None or (isinstance(value, str) and value.strip() in ("inf", "+inf", "oo")):
            self._v = None
        else:
            self._v = Fraction(value)

    @property
    def is_inf(self) -> bool:
        return self._v is None

    @property
    def value(self) -> Fraction:
        if self._v is None:
            raise ValueError("+inf has no finite value")
        return self._v

    @staticmethod
    def _coerce(other) -> "ExtRat | None":
        if isinstance(other, ExtRat):
            return other
        if isinstance(other, (int, Fraction)):
            return ExtRat(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self._v is None or o._v is None:
            return INF
        return ExtRat(self._v + o._v)

    __radd__ = __add__

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._v == o._v

    def __lt__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self._v is None:
            return False
        if o._v is None:
            return True
        return self._v < o._v

    def __hash__(self):
        return hash(("ExtRat", self._v))

    def __str__(self):
        return "inf" if self._v is None else str(self._v)

    def __repr__(self):
        return f"ExtRat({str(self)!r})"


INF = ExtRat(None)


# --- dense polynomials over Q in s = t^(1/d); tuple index = power of s --------

Poly = tuple


def _trim(p) -> Poly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def _padd(a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    return _trim(tuple(x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)))


def _pneg(a: Poly) -> Poly:
    return tuple(-x for x in a)


def _pmul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def _pscale(a: Poly, c: Fraction) -> Poly:
    return _trim(tuple(x * c for x in a))


def _pshift(a: Poly, k: int) -> Poly:
    return (Fraction(0),) * k + a if a else ()


def _pdivmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    a = list(a)
    lead = b[-1]
    nz = [(i, y) for i, y in enumerate(b) if y != 0]
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        c = a[-1] if lead == 1 else a[-1] / lead
        k = len(a) - len(b)
        q[k] = c
        for i, y in nz:
            a[i + k] -= c * y
        a = list(_trim(a))
    return _trim(q), tuple(a)


def _monic(a: Poly) -> Poly:
    lead = a[-1]
    return a if lead == 1 else tuple(x / lead for x in a)


def _pgcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd; remainders are kept monic to curb coefficient growth."""
    if not a:
        return _monic(b) if b else b
    a = _monic(a)
    while b:
        if len(b) == 1:
            return ONE_POLY
        b = _monic(b)
        _, r = _pdivmod(a, b)
        a, b = b, r
    return a


def _cancel(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    """Divide a and b by their gcd (b has a nonzero constant term)."""
    if len(a) == 1 or len(b) == 1:
        return a, b
    g = _pgcd(a, b)
    if len(g) == 1:
        return a, b
    return _pdivmod(a, g)[0], _pdivmod(b, g)[0]


def _split_lowest(p: Poly) -> tuple[int, Poly]:
    """Pull the largest power of s out of p."""
    k = 0
    while k < len(p) and p[k] == 0:
        k += 1
    return k, p[k:]


ONE_POLY: Poly = (Fraction(1),)


class ValuedScalar:
    """Element of Q(t^(1/d)), immutable, in the canonical form described above."""

    __slots__ = ("d", "shift", "num", "den", "_hash")

    def __init__(self, d: int, shift: int, num: Poly, den: Poly = ONE_POLY, *, _canonical=False):
        if d < 1:
            raise ValueError("denominator d must be a positive integer")
        self.d = d
        self._hash = None
        if _canonical:
            self.shift, self.num, self.den = shift, num, den
            return
        num = _trim(tuple(Fraction(x) for x in num))
        den = _trim(tuple(Fraction(x) for x in den))
        if not den:
            raise ZeroDivisionError("division by the zero scalar")
        if not num:
            self.shift, self.num, self.den = 0, (), ONE_POLY
            return
        a, num = _split_lowest(num)
        b, den = _split_lowest(den)
        shift += a - b
        if len(den) > 1:
            g = _pgcd(num, den)
            if len(g) > 1:
                num = _pdivmod(num, g)[0]
                den = _pdivmod(den, g)[0]
        c = den[0]
        if c != 1:
            num = _pscale(num, 1 / c)
            den = _pscale(den, 1 / c)
        self.shift, self.num, self.den = shift, num, den

    # construction helpers
    @classmethod
    def const(cls, c: Rational, d: int = 1) -> "ValuedScalar":
        return cls(d, 0, (Fraction(c),))

    @classmethod
    def zero(cls, d: int = 1) -> "ValuedScalar":
        return cls(d, 0, ())

    @classmethod
    def t_power(cls, q: Rational, d: int | None = None) -> "ValuedScalar":
        """t^q; d defaults to the denominator of q."""
        q = Fraction(q)
        if d is None:
            d = q.denominator
        e = q * d
        if e.denominator != 1:
            raise ExponentError(f"exponent {q} is not in (1/{d})Z")
        return cls(d, int(e), ONE_POLY)

    @classmethod
    def from_terms(cls, terms: dict, d: int = 1) -> "ValuedScalar":
        """Build a Laurent polynomial from {exponent in (1/d)Z: coefficient}."""
        if not terms:
            return cls.zero(d)
        scaled = {}
        for q, c in terms.items():
            e = Fraction(q) * d
            if e.denominator != 1:
                raise ExponentError(f"exponent {q} is not in (1/{d})Z")
            scaled[int(e)] = scaled.get(int(e), 0) + Fraction(c)
        lo, hi = min(scaled), max(scaled)
        poly = tuple(scaled.get(k, Fraction(0)) for k in range(lo, hi + 1))
        return cls(d, lo, poly)

    # ---- views -------------------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self.num

    @property
    def is_laurent(self) -> bool:
        return self.den == ONE_POLY

    def _terms(self, poly: Poly, shift: int) -> dict[Fraction, Fraction]:
        return {Fraction(shift + i, self.d): c for i, c in enumerate(poly) if c != 0}

    @property
    def numerator(self) -> dict[Fraction, Fraction]:
        """Exponent -> coefficient map of the numerator (denominator normalized)."""
        return self._terms(self.num, self.shift)

    @property
    def denominator(self) -> dict[Fraction, Fraction]:
        return self._terms(self.den, 0)

    def valuation(self) -> ExtRat:
        return INF if self.is_zero else ExtRat(Fraction(self.shift, self.d))

    def leading_coefficient(self) -> Fraction:
        """Coefficient of the lowest power of t (the residue of x / t^val)."""
        if self.is_zero:
            raise ValueError("zero has no leading coefficient")
        return self.num[0]

    def constant_value(self) -> Fraction | None:
        """The rational number this equals, or None if it involves t."""
        if self.is_zero:
            return Fraction(0)
        if self.shift == 0 and len(self.num) == 1 and self.den == ONE_POLY:
            return self.num[0]
        return None

    # ---- denominators ------------------------------------------------------
    def rebase(self, d2: int) -> "ValuedScalar":
        if d2 % self.d:
            raise ValueError(f"cannot rebase from d={self.d} to d={d2}: {self.d} does not divide {d2}")
        k = d2 // self.d
        if k == 1:
            return self
        spread = lambda p: tuple(p[i // k] if i % k == 0 else Fraction(0)
                                 for i in range((len(p) - 1) * k + 1)) if p else ()
        return ValuedScalar(d2, self.shift * k, spread(self.num), spread(self.den), _canonical=True)

    def _minimal(self) -> "ValuedScalar":
        g = self.d
        for poly in (self.num, self.den):
            for i, c in enumerate(poly):
                if c != 0:
                    g = gcd(g, i)
        g = gcd(g, self.shift)
        if g == 1:
            return self
        return ValuedScalar(self.d // g, self.shift // g, self.num[::g], self.den[::g], _canonical=True)

    # ---- arithmetic --------------------------------------------------------
    @staticmethod
    def _lift(other, d: int) -> "ValuedScalar | None":
        if isinstance(other, ValuedScalar):
            return other
        if isinstance(other, (int, Fraction)):
            return ValuedScalar.const(other, d)
        return None

    def _common(self, other) -> tuple["ValuedScalar", "ValuedScalar"] | None:
        o = self._lift(other, self.d)
        if o is None:
            return None
        if o.d == self.d:
            return self, o
        d = self.d * o.d // gcd(self.d, o.d)
        return self.rebase(d), o.rebase(d)

    def __add__(self, other):
        pair = self._common(other)
        if pair is None:
            return NotImplemented
        x, y = pair
        if x.is_zero:
            return y
        if y.is_zero:
            return x
        m = min(x.shift, y.shift)
        if x.den == y.den:
            num = _padd(_pshift(x.num, x.shift - m), _pshift(y.num, y.shift - m))
            if x.den == ONE_POLY:
                if not num:
                    return ValuedScalar.zero(x.d)
                a, num = _split_lowest(num)
                return ValuedScalar(x.d, m + a, num, ONE_POLY, _canonical=True)
            return ValuedScalar(x.d, m, num, x.den)
        num = _padd(_pshift(_pmul(x.num, y.den), x.shift - m),
                    _pshift(_pmul(y.num, x.den), y.shift - m))
        return ValuedScalar(x.d, m, num, _pmul(x.den, y.den))

    __radd__ = __add__

    def __neg__(self):
        return ValuedScalar(self.d, self.shift, _pneg(self.num), self.den, _canonical=True)

    def __sub__(self, other):
        o = self._lift(other, self.d)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other, self.d)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        pair = self._common(other)
        if pair is None:
            return NotImplemented
        x, y = pair
        if x.is_zero or y.is_zero:
            return ValuedScalar.zero(x.d)
        shift = x.shift + y.shift
        if x.den == ONE_POLY and y.den == ONE_POLY:
            return ValuedScalar(x.d, shift, _pmul(x.num, y.num), ONE_POLY, _canonical=True)
        # cancel across before multiplying so the final gcd works on smaller factors
        xn, yd = _cancel(x.num, y.den)
        yn, xd = _cancel(y.num, x.den)
        num, den = _pmul(xn, yn), _pmul(xd, yd)
        c = den[0]
        if c != 1:
            num, den = _pscale(num, 1 / c), _pscale(den, 1 / c)
        return ValuedScalar(x.d, shift, num, den, _canonical=True)

    __rmul__ = __mul__

    def inverse(self) -> "ValuedScalar":
        if self.is_zero:
            raise ZeroDivisionError("division by the zero scalar")
        return ValuedScalar(self.d, -self.shift, self.den, self.num)

    def __truediv__(self, other):
        o = self._lift(other, self.d)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other, self.d)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = ValuedScalar.const(1, self.d)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        o = self._lift(other, self.d)
        if o is None:
            return NotImplemented
        a, b = self._minimal(), o._minimal()
        return (a.d, a.shift, a.num, a.den) == (b.d, b.shift, b.num, b.den) or (a.is_zero and b.is_zero)

    def __hash__(self):
        if self._hash is None:
            m = self._minimal()
            self._hash = hash((0, (), ONE_POLY)) if self.is_zero else hash((m.d, m.shift, m.num, m.den))
        return self._hash

    def __bool__(self):
        return not self.is_zero

    # ---- printing ----------------------------------------------------------
    def _format_poly(self, poly: Poly, shift: int) -> str:
        parts = []
        for i, c in enumerate(poly):
            if c == 0:
                continue
            q = Fraction(shift + i, self.d)
            if q == 0:
                mono = ""
            elif q == 1:
                mono = "t"
            elif q.denominator == 1 and q > 0:
                mono = f"t^{q}"
            else:
                mono = f"t^({q})"
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts) if parts else "0"

    def __str__(self):
        if self.is_zero:
            return "0"
        num = self._format_poly(self.num, self.shift)
        if self.den == ONE_POLY:
            return num
        return f"({num})/({self._format_poly(self.den, 0)})"

    def __repr__(self):
        return f"ValuedScalar({str(self)!r}, d={self.d})"


def valuation(x: ValuedScalar | Rational) -> ExtRat:
    """t-adic valuation; rational constants are trivially valued."""
    if isinstance(x, ValuedScalar):
        return x.valuation()
    return INF if x == 0 else ExtRat(0)


def rebase(x: ValuedScalar, d: int) -> ValuedScalar:
    return x.rebase(d)


# ---- parser -----------------------------------------------------------------

class ScalarSyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.pos = pos


class ExponentError(ValueError):
    """An exponent of t falls outside (1/d)Z, or cannot be taken exactly."""


_TOKEN = re.compile(r"\s*(?:(\d+)|(t)|([-+*/^()]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out, pos = [], 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ScalarSyntaxError("unexpected character", text, pos)
        start = m.start(m.lastindex)
        if m.group(1):
            out.append(("int", m.group(1), start))
        elif m.group(2):
            out.append(("t", "t", start))
        else:
            out.append(("op", m.group(3), start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    """expr := term {(+|-) term}; term := factor {(*|/) factor};
    factor := ["-"] base ["^" exponent]; base := rat | t | "(" expr ")";
    exponent := rat | "(" rat ")"; rat := ["-"] int ["/" int].
    """

    def __init__(self, text: str, d: int):
        self.text, self.d = text, d
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self, kind=None, value=None):
        k, v, _ = self.toks[self.i]
        return (kind is None or k == kind) and (value is None or v == value)

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, msg):
        raise ScalarSyntaxError(msg, self.text, self.toks[self.i][2])

    def expect(self, value):
        if not self.peek("op", value):
            self.error(f"expected {value!r}")
        self.take()

    def parse(self) -> ValuedScalar:
        value = self.expr()
        if not self.peek("end"):
            self.error("unexpected trailing input")
        return value

    def expr(self):
        value = self.term()
        while self.peek("op", "+") or self.peek("op", "-"):
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.factor()
        while self.peek("op", "*") or self.peek("op", "/"):
            op = self.take()[1]
            rhs = self.factor()
            if op == "/":
                if rhs.is_zero:
                    self.error("division by the zero scalar")
                value = value / rhs
            else:
                value = value * rhs
        return value

    def rat(self) -> Fraction:
        neg = False
        if self.peek("op", "-"):
            self.take()
            neg = True
        if not self.peek("int"):
            self.error("expected an integer")
        value = Fraction(int(self.take()[1]))
        if self.peek("op", "/") and self.toks[self.i + 1][0] == "int":
            self.take()
            den = int(self.take()[1])
            if den == 0:
                self.error("zero denominator")
            value /= den
        return -value if neg else value

    def factor(self):
        if self.peek("op", "-"):
            # a leading "-" directly before an integer is part of the rational literal
            if self.toks[self.i + 1][0] != "int":
                self.take()
                return -self.factor()
        base = self.base()
        if self.peek("op", "^"):
            self.take()
            if self.peek("op", "("):
                self.take()
                q = self.rat()
                self.expect(")")
            else:
                q = self.rat()
            base = self.power(base, q)
        return base

    def base(self):
        if self.peek("t"):
            self.take()
            return ValuedScalar.t_power(1, self.d) if self.d == 1 else ValuedScalar(self.d, self.d, ONE_POLY)
        if self.peek("op", "("):
            self.take()
            value = self.expr()
            self.expect(")")
            return value
        if self.peek("int") or self.peek("op", "-"):
            return ValuedScalar.const(self.rat(), self.d)
        self.error("expected a number, 't' or '('")

    def power(self, base: ValuedScalar, q: Fraction) -> ValuedScalar:
        if q.denominator == 1:
            if base.is_zero and q < 0:
                self.error("division by the zero scalar")
            return base ** int(q)
        # fractional powers exist exactly only for pure powers of t
        if not (base.is_laurent and len(base.num) == 1 and base.num[0] == 1):
            raise ExponentError(f"fractional exponent {q} of a non-monomial base {base}")
        e = Fraction(base.shift, base.d) * q
        if (e * self.d).denominator != 1:
            raise ExponentError(f"exponent {e} is not in (1/{self.d})Z")
        return ValuedScalar.t_power(e, self.d)


def parse_scalar(text: str, d: int = 1) -> ValuedScalar:
    """Parse a scalar expression in t with exponents in (1/d)Z.

    >>> parse_scalar("t^2 + 3*t^(1/2)", 2).valuation()
    ExtRat('1/2')
    """
    if d < 1:
        raise ValueError("d must be a positive integer")
    return _Parser(text, d).parse().rebase(d) if d > 1 else _Parser(text, d).parse()
