"""Exact scalars: rationals and rational functions in named parameters.

A :class:`Scalar` is either a plain rational (stored as a gmpy2 ``mpq``)
or a reduced quotient of two polynomials with rational coefficients in a set of
named parameters.  Parameters are registered implicitly by name; combining two
scalars over different parameter sets lifts both into the union.

Textual form (``str`` / :func:`parse_scalar`)::

    scalar  := expr
    expr    := term (('+' | '-') term)*
    term    := factor (('*' | '/') factor)*
    factor  := ('-' | '+') factor | atom ('^' integer)?
    atom    := integer | identifier | '(' expr ')'

Printing produces ``num`` or ``(num)/(den)`` with integer coefficients, the
denominator's leading coefficient positive, e.g. ``(t^2 - 2*t)/(8)``.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

from gmpy2 import mpq

from sympy.polys.domains import QQ
from sympy.polys.fields import field as _sympy_field

__all__ = [
    "Scalar",
    "ScalarError",
    "ParseError",
    "parse_scalar",
    "S",
    "param",
    "as_scalar",
    "generalized_binomial",
    "ZERO",
    "ONE",
]


class ScalarError(ArithmeticError):
    """Raised on division by zero or a substitution that zeroes a denominator."""


class ParseError(ValueError):
    def __init__(self, message, text, pos):
        super().__init__(f"{message} at position {pos} in {text!r}")
        self.text = text
        self.pos = pos


@lru_cache(maxsize=None)
def _field(gens):
    fld = _sympy_field(",".join(gens), QQ)[0]
    return fld


def _to_fraction(q):
    return Fraction(int(q.numerator), int(q.denominator))


def _q(x):
    if type(x) is int:
        return mpq(x)
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


class Scalar:
    """Immutable exact scalar.  Use :func:`S` or :func:`param` to build one."""

    __slots__ = ("_gens", "_val", "_hash")

    def __init__(self, value=0):
        if isinstance(value, Scalar):
            self._gens, self._val = value._gens, value._val
        elif isinstance(value, (int, Fraction)):
            self._gens, self._val = (), _q(value)
        elif isinstance(value, str):
            other = parse_scalar(value)
            self._gens, self._val = other._gens, other._val
        else:
            raise TypeError(f"cannot build a Scalar from {type(value).__name__}")
        self._hash = None

    @classmethod
    def _raw(cls, gens, val):
        obj = object.__new__(cls)
        obj._gens = gens
        obj._val = val
        obj._hash = None
        return obj

    @classmethod
    def _from_frac(cls, gens, f):
        """Canonicalize a field element: drop unused parameters."""
        num, den = f.numer, f.denom
        used = set()
        for monoms in (num.itermonoms(), den.itermonoms()):
            for m in monoms:
                for i, e in enumerate(m):
                    if e:
                        used.add(i)
        if not used:
            c = num.LC if num else QQ(0)
            return cls._raw((), mpq(c) / mpq(den.LC))
        if len(used) != len(gens):
            new = tuple(g for i, g in enumerate(gens) if i in used)
            fld = _field(new)
            f = fld.new(num.set_ring(fld.ring), den.set_ring(fld.ring))
            gens = new
        return cls._raw(gens, f)

    # -- lifting ---------------------------------------------------------

    def _lift(self, gens):
        fld = _field(gens)
        if not self._gens:
            v = self._val
            return fld(QQ(int(v.numerator), int(v.denominator)))
        if self._gens == gens:
            return self._val
        return fld.new(self._val.numer.set_ring(fld.ring), self._val.denom.set_ring(fld.ring))

    @staticmethod
    def _union(a, b):
        if a == b or not b:
            return a
        if not a:
            return b
        return tuple(sorted(set(a) | set(b)))

    # -- arithmetic ------------------------------------------------------

    def _binop(self, other, op):
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Fraction)):
                other = Scalar._raw((), _q(other))
            else:
                return NotImplemented
        if not self._gens and not other._gens:
            if op == "add":
                return Scalar._raw((), self._val + other._val)
            if op == "sub":
                return Scalar._raw((), self._val - other._val)
            if op == "mul":
                return Scalar._raw((), self._val * other._val)
            if other._val == 0:
                raise ScalarError("division by the zero Scalar")
            return Scalar._raw((), self._val / other._val)
        gens = Scalar._union(self._gens, other._gens)
        a, b = self._lift(gens), other._lift(gens)
        if op == "add":
            r = a + b
        elif op == "sub":
            r = a - b
        elif op == "mul":
            r = a * b
        else:
            if not b:
                raise ScalarError("division by the zero Scalar")
            r = a / b
        return Scalar._from_frac(gens, r)

    def __add__(self, other):
        if type(other) is Scalar and not self._gens and not other._gens:
            return Scalar._raw((), self._val + other._val)
        return self._binop(other, "add")

    def __radd__(self, other):
        return Scalar(other)._binop(self, "add") if isinstance(other, (int, Fraction)) else NotImplemented

    def __sub__(self, other):
        if type(other) is Scalar and not self._gens and not other._gens:
            return Scalar._raw((), self._val - other._val)
        return self._binop(other, "sub")

    def __rsub__(self, other):
        return Scalar(other)._binop(self, "sub") if isinstance(other, (int, Fraction)) else NotImplemented

    def __mul__(self, other):
        if type(other) is Scalar and not self._gens and not other._gens:
            return Scalar._raw((), self._val * other._val)
        return self._binop(other, "mul")

    def __rmul__(self, other):
        return Scalar(other)._binop(self, "mul") if isinstance(other, (int, Fraction)) else NotImplemented

    def __truediv__(self, other):
        return self._binop(other, "div")

    def __rtruediv__(self, other):
        return Scalar(other)._binop(self, "div") if isinstance(other, (int, Fraction)) else NotImplemented

    def __neg__(self):
        return Scalar._raw(self._gens, -self._val)

    def __pos__(self):
        return self

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return ONE / self ** (-k)
        if not self._gens:
            return Scalar._raw((), self._val ** k)
        return Scalar._raw(self._gens, self._val ** k)

    # -- comparison / hashing -------------------------------------------

    def __eq__(self, other):
        if type(other) is Scalar:
            return self._gens == other._gens and self._val == other._val
        if isinstance(other, (int, Fraction)):
            return not self._gens and self._val == other
        if not isinstance(other, Scalar):
            return NotImplemented
        return self._gens == other._gens and self._val == other._val

    def __hash__(self):
        if self._hash is None:
            if not self._gens:
                self._hash = hash(self._val)
            else:
                self._hash = hash((self._gens, self._val.numer, self._val.denom))
        return self._hash

    def __bool__(self):
        return bool(self._val)

    # -- inspection ------------------------------------------------------

    @property
    def params(self):
        """Names of the parameters this scalar actually depends on."""
        return self._gens

    @property
    def is_constant(self):
        return not self._gens

    def to_fraction(self):
        if self._gens:
            raise ScalarError(f"{self} depends on parameters {self._gens}")
        return _to_fraction(self._val)

    @property
    def is_integer(self):
        return not self._gens and self._val.denominator == 1

    def __int__(self):
        f = self.to_fraction()
        if f.denominator != 1:
            raise ScalarError(f"{self} is not an integer")
        return int(f.numerator)

    def numer(self):
        if not self._gens:
            return Scalar._raw((), mpq(self._val.numerator))
        fld = _field(self._gens)
        return Scalar._from_frac(self._gens, fld.new(self._val.numer, fld.ring.one))

    def denom(self):
        if not self._gens:
            return Scalar._raw((), mpq(self._val.denominator))
        fld = _field(self._gens)
        return Scalar._from_frac(self._gens, fld.new(self._val.denom, fld.ring.one))

    def terms(self):
        """(numerator_terms, denominator_terms) as lists of ({name: exp}, Fraction)."""
        if not self._gens:
            return ([({}, _to_fraction(self._val))] if self._val else []), [({}, Fraction(1))]

        def conv(poly):
            out = []
            for monom, c in poly.terms():
                out.append(({g: e for g, e in zip(self._gens, monom) if e}, _to_fraction(c)))
            return out

        return conv(self._val.numer), conv(self._val.denom)

    def constant_term(self):
        """Constant term of the numerator divided by the (constant) denominator.

        Only meaningful when the denominator is a constant; otherwise returns
        the constant term of the numerator over the denominator's constant term.
        """
        if not self._gens:
            return _to_fraction(self._val)
        num, den = self.terms()
        c_num = sum((c for m, c in num if not m), Fraction(0))
        c_den = sum((c for m, c in den if not m), Fraction(0))
        if c_den == 0:
            return Fraction(0)
        return c_num / c_den

    def subs(self, values):
        """Substitute parameters ``{name: value}`` (values int/Fraction/Scalar/str)."""
        values = {k: as_scalar(v) for k, v in values.items() if k in self._gens}
        if not values:
            return self
        num, den = self.terms()

        def ev(terms):
            acc = ZERO
            for monom, c in terms:
                term = Scalar._raw((), _q(c))
                for name, e in monom.items():
                    base = values.get(name)
                    term = term * (base ** e if base is not None else param(name) ** e)
                acc = acc + term
            return acc

        d = ev(den)
        if not d:
            raise ScalarError(f"substitution {values} zeroes the denominator of {self}")
        return ev(num) / d

    # -- printing --------------------------------------------------------

    def __str__(self):
        if not self._gens:
            v = self._val
            return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
        num, den = self.terms()
        scale = lcm(*(c.denominator for _, c in num + den))
        num = [(m, c * scale) for m, c in num]
        den = [(m, c * scale) for m, c in den]
        g = 0
        for _, c in num + den:
            g = gcd(g, c.numerator)
        order = lambda mc: _monom_key(self._gens, mc[0])
        num.sort(key=order)
        den.sort(key=order)
        if den[0][1] < 0:
            g = -g
        num = [(m, c / g) for m, c in num]
        den = [(m, c / g) for m, c in den]
        ns = _format_poly(self._gens, num)
        if len(den) == 1 and not den[0][0] and den[0][1] == 1:
            return ns
        return f"({ns})/({_format_poly(self._gens, den)})"

    def __repr__(self):
        return f"Scalar('{self}')"


def _monom_key(gens, monom):
    exps = tuple(monom.get(g, 0) for g in gens)
    return (-sum(exps), tuple(-e for e in exps))


def _format_poly(gens, terms):
    parts = []
    for monom, c in terms:
        factors = []
        for g in gens:
            e = monom.get(g, 0)
            if e == 1:
                factors.append(g)
            elif e > 1:
                factors.append(f"{g}^{e}")
        mag = abs(c)
        if factors:
            body = "*".join(factors)
            if mag != 1:
                body = f"{_fmt_frac(mag)}*{body}"
        else:
            body = _fmt_frac(mag)
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts) if parts else "0"


def _fmt_frac(f):
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


ZERO = Scalar._raw((), mpq(0))
ONE = Scalar._raw((), mpq(1))


def param(name):
    """The scalar consisting of the single parameter ``name``."""
    if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", name):
        raise ValueError(f"invalid parameter name {name!r}")
    fld = _field((name,))
    return Scalar._raw((name,), fld.gens[0])


def as_scalar(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)):
        return Scalar._raw((), _q(x))
    if isinstance(x, str):
        return parse_scalar(x)
    raise TypeError(f"cannot convert {type(x).__name__} to Scalar")


def S(x=0, den=None):
    """Shorthand constructor: ``S(1, 2)`` is 1/2, ``S('t^2 - 1')`` parses."""
    if den is not None:
        return Scalar._raw((), mpq(x, den))
    return as_scalar(x)


def generalized_binomial(x, k):
    """``x (x-1) ... (x-k+1) / k!`` for a Scalar (or rational) ``x``."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    x = as_scalar(x)
    acc = ONE
    for i in range(k):
        acc = acc * (x - i) / (i + 1)
    return acc


# -- parser ---------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def _tokenize(text):
    pos = 0
    out = []
    text_len = len(text)
    while pos < text_len:
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError("unexpected character", text, pos)
        start = m.start(m.lastindex)
        if m.group(1):
            out.append(("int", int(m.group(1)), start))
        elif m.group(2):
            out.append(("name", m.group(2), start))
        else:
            op = m.group(3)
            out.append(("op", "^" if op == "**" else op, start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, op):
        tok = self.take()
        if tok[0] != "op" or tok[1] != op:
            raise ParseError(f"expected {op!r}", self.text, tok[2])

    def expr(self):
        acc = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self):
        acc = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            tok = self.take()
            rhs = self.factor()
            if tok[1] == "*":
                acc = acc * rhs
            else:
                try:
                    acc = acc / rhs
                except ScalarError:
                    raise ParseError("division by zero", self.text, tok[2]) from None
        return acc

    def factor(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            f = self.factor()
            return -f if tok[1] == "-" else f
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            sign = 1
            if self.peek()[0] == "op" and self.peek()[1] == "-":
                self.take()
                sign = -1
            e = self.take()
            if e[0] != "int":
                raise ParseError("expected integer exponent", self.text, e[2])
            base = base ** (sign * e[1])
        return base

    def atom(self):
        tok = self.take()
        if tok[0] == "int":
            return Scalar._raw((), mpq(int(tok[1])))
        if tok[0] == "name":
            return param(tok[1])
        if tok[0] == "op" and tok[1] == "(":
            v = self.expr()
            self.expect(")")
            return v
        raise ParseError("unexpected token", self.text, tok[2])


def parse_scalar(text):
    p = _Parser(text)
    v = p.expr()
    tok = p.peek()
    if tok[0] != "end":
        raise ParseError("trailing input", text, tok[2])
    return v
