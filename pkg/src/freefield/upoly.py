"""Univariate polynomials with :class:`Scalar` coefficients.

Used for the Zhu variable ``x`` (coefficients in Q(s, t)) and for candidate
equations in a label variable.  Coefficients are stored low degree first with
no trailing zeros.
"""
from __future__ import annotations

from .scalar import ONE, ZERO, Scalar, ScalarError, as_scalar

__all__ = ["UPoly", "poly_gcd", "scalar_to_upoly"]


class UPoly:
    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs, var="x"):
        cs = [as_scalar(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)
        self.var = var

    @classmethod
    def from_roots(cls, roots, var="x"):
        p = cls([ONE], var)
        for r in roots:
            p = p * cls([-as_scalar(r), ONE], var)
        return p

    @classmethod
    def monomial(cls, c, k, var="x"):
        return cls([ZERO] * k + [c], var)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else ZERO

    def _coerce(self, other):
        if isinstance(other, UPoly):
            return other
        return UPoly([other], self.var)

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (ZERO,) * (n - len(self.coeffs))
        b = other.coeffs + (ZERO,) * (n - len(other.coeffs))
        return UPoly([x + y for x, y in zip(a, b)], self.var)

    __radd__ = __add__

    def __neg__(self):
        return UPoly([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, UPoly):
            c = as_scalar(other)
            return UPoly([x * c for x in self.coeffs], self.var)
        if not self or not other:
            return UPoly([], self.var)
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UPoly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, k):
        acc = UPoly([ONE], self.var)
        for _ in range(k):
            acc = acc * self
        return acc

    def __eq__(self, other):
        if not isinstance(other, UPoly):
            other = UPoly([other], self.var)
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def divmod(self, other):
        if not other:
            raise ScalarError("polynomial division by zero")
        q = [ZERO] * max(0, len(self.coeffs) - len(other.coeffs) + 1)
        r = list(self.coeffs)
        d = other.degree
        lc = other.lc
        for k in range(len(r) - 1, d - 1, -1):
            c = r[k]
            if not c:
                continue
            f = c / lc
            q[k - d] = f
            for j, b in enumerate(other.coeffs):
                r[k - d + j] = r[k - d + j] - f * b
        return UPoly(q, self.var), UPoly(r, self.var)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self):
        if not self:
            return self
        return self * (ONE / self.lc)

    def __call__(self, value):
        value = as_scalar(value)
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def map_coeffs(self, fn):
        return UPoly([fn(c) for c in self.coeffs], self.var)

    def subs(self, values):
        return self.map_coeffs(lambda c: c.subs(values))

    def compose(self, inner):
        """``self(inner(y))`` for a UPoly ``inner``."""
        acc = UPoly([], inner.var)
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def derivative(self):
        return UPoly([c * i for i, c in enumerate(self.coeffs)][1:], self.var)

    def __str__(self):
        if not self:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else (self.var if k == 1 else f"{self.var}^{k}")
            cs = str(c)
            if mono:
                parts.append(mono if c == 1 else f"({cs})*{mono}")
            else:
                parts.append(f"({cs})")
        return " + ".join(parts)

    def __repr__(self):
        return f"UPoly({self})"


def poly_gcd(p, q):
    """Monic gcd of two univariate polynomials over the Scalar field."""
    if not p and not q:
        raise ScalarError("gcd of two zero polynomials")
    a, b = p, q
    while b:
        a, b = b, a % b
    return a.monic()


def _monomial_scalar(monom, c, skip):
    from .scalar import param

    acc = as_scalar(c)
    for name, e in monom.items():
        if name != skip:
            acc = acc * param(name) ** e
    return acc


def scalar_to_upoly(sc, var):
    """View a Scalar that is polynomial in the parameter ``var`` as a UPoly.

    Raises ScalarError when ``var`` occurs in the denominator.
    """
    sc = as_scalar(sc)
    if var not in sc.params:
        return UPoly([sc], var)
    num, den = sc.terms()
    if any(var in m for m, _ in den):
        raise ScalarError(f"{var} occurs in the denominator of {sc}")
    d = ZERO
    for m, c in den:
        d = d + _monomial_scalar(m, c, None)
    coeffs = {}
    for m, c in num:
        k = m.get(var, 0)
        coeffs[k] = coeffs.get(k, ZERO) + _monomial_scalar(m, c, var)
    top = max(coeffs)
    return UPoly([coeffs.get(k, ZERO) / d for k in range(top + 1)], var)
