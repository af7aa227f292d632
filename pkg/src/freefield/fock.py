"""Lattices, weights and Fock-space state vectors.

A state is a finite Scalar-linear combination of monomials
``b_{i1}(-k1) ... b_{ir}(-kr) e^gamma`` where the ``b_i`` are lattice basis
directions and ``gamma`` is a weight (coordinates may be fractional or
symbolic).  Oscillators are stored as a sorted tuple of ``(direction, k)``
pairs with ``k >= 1`` standing for the mode ``-k``.

Text format::

    3/2*a1(-1)^2*a2(-3)*e[1/3*t*a1 + a2] - (t - 1)/(2)*e[0]
"""
from __future__ import annotations

import re

import sympy
from gmpy2 import mpq
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .scalar import ONE, ZERO, Scalar, ParseError, as_scalar, parse_scalar

__all__ = [
    "CocycleConvention",
    "LatticeSpec",
    "Weight",
    "StateVector",
    "pairing",
    "heis_apply",
    "degree",
    "charge_sectors",
    "parse_state",
    "rank1_lattice",
    "rank2_lattice",
    "fock_basis",
    "rebase",
    "rebase_weight",
    "fermion_adapted_lattice",
]


def _int_part(q):
    """Integer part of a coordinate used for coset bookkeeping.

    Rationals are floored; symbolic coordinates use the floor of their
    constant term (e.g. ``t/3 - 1/3`` has integer part ``-1``).
    """
    if q.is_constant:
        f = q.to_fraction()
        return f.numerator // f.denominator
    c = q.constant_term()
    return c.numerator // c.denominator


class CocycleConvention:
    """Bimultiplicative sign ``eps(e_i, e_j) = eps_on_basis[i][j]`` on an
    integral "algebra lattice" with basis ``e_i``.

    ``basis`` lists the ``e_i`` in lattice coordinates (default: the lattice
    basis itself).  For arbitrary charges both arguments are first written in
    the ``e``-basis and floored coordinatewise, so that the algebra acts on
    every coset module ``V_{Lambda + lambda}`` through the usual
    ``eps(beta, l)`` rule and intertwiners pick up a fixed coset-pair sign.
    """

    def __init__(self, eps_on_basis, basis=None):
        self.eps_on_basis = tuple(tuple(int(s) for s in row) for row in eps_on_basis)
        n = len(self.eps_on_basis)
        if any(s not in (1, -1) for row in self.eps_on_basis for s in row):
            raise ValueError("cocycle entries must be +1 or -1")
        if basis is None:
            basis = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        self.basis = tuple(tuple(Fraction(x) for x in row) for row in basis)
        inv = sympy.Matrix(self.basis).inv()
        self._inv = tuple(tuple(Fraction(int(inv[i, j].p), int(inv[i, j].q)) for j in range(n)) for i in range(n))
        self._trivial = all(s == 1 for row in self.eps_on_basis for s in row)
        self._cache = {}

    def __eq__(self, other):
        return isinstance(other, CocycleConvention) and (self.eps_on_basis, self.basis) == (other.eps_on_basis, other.basis)

    def __hash__(self):
        return hash((self.eps_on_basis, self.basis))

    def __repr__(self):
        return f"CocycleConvention({self.eps_on_basis}, basis={self.basis})"

    def _floor_coords(self, gamma):
        n = len(self._inv)
        out = []
        for j in range(n):
            c = ZERO
            for i in range(n):
                m = self._inv[i][j]
                if m and gamma[i]:
                    c = c + as_scalar(gamma[i]) * m
            out.append(_int_part(as_scalar(c)))
        return out

    def exponent(self, beta, gamma):
        if self._trivial:
            return 0
        b = self._floor_coords(beta)
        g = self._floor_coords(gamma)
        e = 0
        for i, row in enumerate(self.eps_on_basis):
            if not b[i]:
                continue
            for j, s in enumerate(row):
                if s == -1:
                    e += b[i] * g[j]
        return e

    def sign(self, beta, gamma):
        if self._trivial:
            return 1
        key = (tuple(beta), tuple(gamma))
        s = self._cache.get(key)
        if s is None:
            s = self._cache[key] = -1 if self.exponent(beta, gamma) % 2 else 1
        return s

    def algebra_gram(self, gram):
        n = len(self.basis)
        return [[sum(self.basis[i][a] * gram[a][b] * self.basis[j][b] for a in range(n) for b in range(n))
                 for j in range(n)] for i in range(n)]

    def check_super_rule(self, gram):
        """True iff eps(e_i,e_j) eps(e_j,e_i) = (-1)^(<e_i,e_j> + <e_i,e_i><e_j,e_j>)
        on the algebra basis (which must span an integral lattice)."""
        g = self.algebra_gram(gram)
        n = len(g)
        for i in range(n):
            for j in range(n):
                lhs = self.eps_on_basis[i][j] * self.eps_on_basis[j][i]
                e = Fraction(g[i][j]) + Fraction(g[i][i]) * Fraction(g[j][j])
                if e.denominator != 1:
                    return False
                if lhs != (-1 if e.numerator % 2 else 1):
                    return False
        return True


def _fmt(c):
    return "(" + ", ".join(str(x) for x in c) + ")"


def default_cocycle(gram):
    """``eps(e_i, e_j) = 1`` for ``i <= j`` and the super rule for ``i > j``,
    on the lattice basis."""
    n = len(gram)
    eps = [[1] * n for _ in range(n)]
    for i in range(n):
        for j in range(i):
            e = Fraction(gram[i][j]) + Fraction(gram[i][i]) * Fraction(gram[j][j])
            eps[i][j] = -1 if (e.numerator % 2 and e.denominator == 1) else 1
    return CocycleConvention(eps)


def rank2_cocycle(p):
    """Cocycle for the rank-2 lattice.

    The algebra lattice is spanned by ``alpha/2, 2 alpha2`` for even ``p``
    (it then contains the fermionic doublet) and by ``alpha, 2 alpha2`` for
    odd ``p``.  With ``eps(e2, e1) = +1`` the deformed generators come out
    as ``H = S(alpha) + S(alpha1 - alpha2) e^{-2 alpha2}`` and
    ``a^+ = alpha(-1) e^{alpha/2} + e^{alpha/2 - 2 alpha2}`` (no relative signs).
    """
    if p % 2 == 0:
        return CocycleConvention([[1, -1], [1, 1]], basis=[[Fraction(1, 2), Fraction(1, 2)], [0, 2]])
    return CocycleConvention([[1, 1], [1, 1]], basis=[[1, 1], [0, 2]])


class LatticeSpec:
    """Rank-``n`` lattice with rational Gram matrix and named basis."""

    def __init__(self, gram, basis_names, cocycle=None, name=None):
        g = tuple(tuple(Fraction(x) for x in row) for row in gram)
        n = len(g)
        if n == 0 or any(len(row) != n for row in g):
            raise ValueError("gram must be a nonempty square matrix")
        if any(g[i][j] != g[j][i] for i in range(n) for j in range(n)):
            raise ValueError("gram must be symmetric")
        names = tuple(basis_names)
        if len(names) != n or len(set(names)) != n:
            raise ValueError("basis_names must be distinct and match the rank")
        self.gram = g
        self.basis_names = names
        self.cocycle = cocycle or default_cocycle(g)
        self.name = name or "L(" + ",".join(names) + ")"
        self._sgram = tuple(tuple(Scalar(x) for x in row) for row in g)
        self._rgram = tuple(tuple(mpq(x.numerator, x.denominator) for x in row) for row in g)

    @property
    def rank(self):
        return len(self.gram)

    def __repr__(self):
        return f"LatticeSpec({self.name})"

    def basis(self, i):
        if isinstance(i, str):
            i = self.basis_names.index(i)
        coords = [ZERO] * self.rank
        coords[i] = ONE
        return Weight(self, coords)

    def weight(self, *coords):
        return Weight(self, coords)

    def zero(self):
        return Weight(self, [ZERO] * self.rank)

    def pair_coords(self, a, b):
        acc = ZERO
        for i, ai in enumerate(a):
            if not ai:
                continue
            row = self._sgram[i]
            for j, bj in enumerate(b):
                if bj and row[j]:
                    acc = acc + ai * row[j] * bj
        return acc

    def pair_with_basis(self, coords, i):
        """``<coords, b_i>`` as a Scalar."""
        acc = ZERO
        for j, c in enumerate(coords):
            g = self._sgram[i][j]
            if c and g:
                acc = acc + c * g
        return acc


@lru_cache(maxsize=None)
def rank1_lattice(p):
    """``Z alpha`` with ``<alpha, alpha> = 2p``."""
    return LatticeSpec([[2 * p]], ["a"], name=f"rank1(p={p})")


@lru_cache(maxsize=None)
def rank2_lattice(p):
    """``Z alpha1 + Z alpha2`` with Gram ``diag(2p-1, 1)``."""
    return LatticeSpec([[2 * p - 1, 0], [0, 1]], ["a1", "a2"], cocycle=rank2_cocycle(p), name=f"rank2(p={p})")


def rebase(state, new_lattice, M):
    """Rewrite ``state`` in the coordinates of ``new_lattice``.

    Row ``i`` of ``M`` gives old basis vector ``i`` in new coordinates.  The
    Gram matrices must agree under ``M`` (checked).
    """
    old = state.lattice
    n_old, n_new = old.rank, new_lattice.rank
    M = [[Fraction(x) for x in row] for row in M]
    for i in range(n_old):
        for j in range(n_old):
            g = sum(M[i][a] * new_lattice.gram[a][b] * M[j][b] for a in range(n_new) for b in range(n_new))
            if g != old.gram[i][j]:
                raise ValueError("basis change does not preserve the Gram matrix")
    dirs = [Weight(new_lattice, M[i]) for i in range(n_old)]
    pairs = []
    for (osc, charge), c in state.terms.items():
        new_charge = _map_coords(charge, M, n_new)
        pairs.append((StateVector.monomial(new_lattice, [(dirs[d], k) for d, k in osc], Weight(new_lattice, new_charge)), c))
    return StateVector.combine(new_lattice, pairs)


def _map_coords(coords, M, n_new):
    return [sum((as_scalar(coords[i]) * Fraction(M[i][j]) for i in range(len(coords))), ZERO) for j in range(n_new)]


def rebase_weight(w, new_lattice, M):
    """A Weight rewritten in ``new_lattice`` coordinates (``M`` as in :func:`rebase`)."""
    return Weight(new_lattice, _map_coords(w.coords, M, new_lattice.rank))


@lru_cache(maxsize=None)
def fermion_adapted_lattice():
    """The ``p = 2`` rank-2 lattice in the orthogonal basis ``f1 = alpha/2``,
    ``f2 = alpha/2 - 2 alpha2`` (Gram ``diag(1, 3)``), with the same cocycle.

    Returns ``(lattice, M)`` where ``M`` maps ``rank2_lattice(2)`` coordinates
    to the new ones (see :func:`rebase`).
    """
    M = ((Fraction(3, 2), Fraction(1, 2)), (Fraction(1, 2), Fraction(-1, 2)))
    old = rank2_lattice(2)
    cb = old.cocycle
    basis = [[sum(row[i] * M[i][j] for i in range(2)) for j in range(2)] for row in cb.basis]
    lat = LatticeSpec([[1, 0], [0, 3]], ["f1", "f2"], cocycle=CocycleConvention(cb.eps_on_basis, basis), name="rank2-fermionic(p=2)")
    return lat, M


class Weight:
    """A vector in the rational (or symbolic) span of a lattice basis."""

    __slots__ = ("lattice", "coords")

    def __init__(self, lattice, coords):
        coords = tuple(as_scalar(c) for c in coords)
        if len(coords) != lattice.rank:
            raise ValueError(f"weight needs {lattice.rank} coordinates, got {len(coords)}")
        self.lattice = lattice
        self.coords = coords

    def _check(self, other):
        if not isinstance(other, Weight):
            raise TypeError("expected a Weight")
        if other.lattice is not self.lattice:
            raise ValueError("lattice mismatch")

    def __add__(self, other):
        self._check(other)
        return Weight(self.lattice, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        self._check(other)
        return Weight(self.lattice, [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return Weight(self.lattice, [-a for a in self.coords])

    def __mul__(self, c):
        c = as_scalar(c)
        return Weight(self.lattice, [a * c for a in self.coords])

    __rmul__ = __mul__

    def __truediv__(self, c):
        c = as_scalar(c)
        return Weight(self.lattice, [a / c for a in self.coords])

    def __eq__(self, other):
        return isinstance(other, Weight) and other.lattice is self.lattice and other.coords == self.coords

    def __hash__(self):
        return hash(self.coords)

    def __bool__(self):
        return any(self.coords)

    @property
    def is_integral(self):
        return all(c.is_integer for c in self.coords)

    def __str__(self):
        return format_charge(self.lattice, self.coords)

    def __repr__(self):
        return f"Weight({self})"


def pairing(a, b):
    """Bilinear form ``<a, b>``."""
    a._check(b)
    return a.lattice.pair_coords(a.coords, b.coords)


def _coef_str(c):
    s = str(c)
    if c.is_constant and "/" not in s.lstrip("-"):
        return s
    if c.is_constant and not s.startswith("-"):
        return s
    return f"({s})"


def format_charge(lattice, coords):
    parts = []
    for name, c in zip(lattice.basis_names, coords):
        if not c:
            continue
        neg = c.is_constant and c.to_fraction() < 0
        a = -c if neg else c
        body = name if a == 1 else f"{_coef_str(a)}*{name}"
        if neg:
            body = "-" + body
        if parts and not body.startswith("-"):
            parts.append("+ " + body)
        elif parts:
            parts.append("- " + body[1:])
        else:
            parts.append(body)
    return "e[" + (" ".join(parts) if parts else "0") + "]"


def _merge_osc(a, b):
    if not a:
        return b
    if not b:
        return a
    return tuple(sorted(a + b))


class StateVector:
    """Finite Scalar-linear combination of Fock monomials.

    ``terms`` maps ``(oscillators, charge_coords)`` to a nonzero Scalar.
    Instances are treated as immutable.
    """

    __slots__ = ("lattice", "terms")

    def __init__(self, lattice, terms=None):
        self.lattice = lattice
        self.terms = {}
        if terms:
            for key, c in terms.items():
                c = as_scalar(c)
                if c:
                    osc, charge = key
                    self.terms[(tuple(sorted(osc)), tuple(as_scalar(x) for x in charge))] = c

    @classmethod
    def _from_dict(cls, lattice, d):
        obj = object.__new__(cls)
        obj.lattice = lattice
        obj.terms = {k: v for k, v in d.items() if v}
        return obj

    @classmethod
    def zero(cls, lattice):
        return cls._from_dict(lattice, {})

    @classmethod
    def exp(cls, weight, coeff=ONE):
        """``coeff * e^weight``."""
        return cls._from_dict(weight.lattice, {((), weight.coords): as_scalar(coeff)})

    @classmethod
    def vacuum(cls, lattice):
        return cls.exp(lattice.zero())

    @classmethod
    def monomial(cls, lattice, oscillators, charge=None, coeff=ONE):
        """Build ``coeff * prod h(-k) e^charge``; ``oscillators`` is a list of
        ``(Weight or basis index/name, k)`` with ``k >= 1``.  Composite
        directions are expanded into basis components."""
        if charge is None:
            charge = lattice.zero()
        state = cls.exp(charge, coeff)
        for h, k in reversed(list(oscillators)):
            if k < 1:
                raise ValueError("oscillator modes must be negative (pass k >= 1 for mode -k)")
            if not isinstance(h, Weight):
                h = lattice.basis(h)
            state = heis_apply(h, -k, state)
        return state

    @classmethod
    def combine(cls, lattice, pairs):
        """``sum c * v`` over ``(v, c)`` pairs, accumulated in one pass."""
        d = {}
        for v, c in pairs:
            c = as_scalar(c)
            if not c:
                continue
            one = c == 1
            for k, x in v.terms.items():
                y = x if one else x * c
                old = d.get(k)
                d[k] = y if old is None else old + y
        return cls._from_dict(lattice, d)

    def _check(self, other):
        if not isinstance(other, StateVector):
            raise TypeError("expected a StateVector")
        if other.lattice is not self.lattice:
            raise ValueError("lattice mismatch")

    def __add__(self, other):
        self._check(other)
        d = dict(self.terms)
        for k, v in other.terms.items():
            c = d.get(k)
            d[k] = v if c is None else c + v
        return StateVector._from_dict(self.lattice, d)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return StateVector._from_dict(self.lattice, {k: -v for k, v in self.terms.items()})

    def __mul__(self, c):
        c = as_scalar(c)
        if not c:
            return StateVector.zero(self.lattice)
        if c == 1:
            return self
        return StateVector._from_dict(self.lattice, {k: v * c for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self * (ONE / as_scalar(c))

    def __eq__(self, other):
        if not isinstance(other, StateVector):
            return NotImplemented
        return other.lattice is self.lattice and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def is_zero(self):
        return not self.terms

    def coefficient(self, oscillators, charge):
        coords = charge.coords if isinstance(charge, Weight) else tuple(as_scalar(c) for c in charge)
        return self.terms.get((tuple(sorted(oscillators)), coords), ZERO)

    def subs(self, values):
        d = {}
        for (osc, charge), c in self.terms.items():
            key = (osc, tuple(x.subs(values) for x in charge))
            v = c.subs(values)
            d[key] = d[key] + v if key in d else v
        return StateVector._from_dict(self.lattice, d)

    def sector(self, charge):
        """Projection onto one charge sector."""
        coords = charge.coords if isinstance(charge, Weight) else tuple(charge)
        return StateVector._from_dict(self.lattice, {k: v for k, v in self.terms.items() if k[1] == coords})

    def homogeneous_part(self, deg):
        return StateVector._from_dict(
            self.lattice, {k: v for k, v in self.terms.items() if sum(x[1] for x in k[0]) == deg}
        )

    def sorted_terms(self):
        def key(item):
            (osc, charge), _ = item
            return (sum(k for _, k in osc), [str(c) for c in charge], osc)

        return sorted(self.terms.items(), key=key)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (osc, charge), c in self.sorted_terms():
            factors = []
            i = 0
            while i < len(osc):
                j = i
                while j < len(osc) and osc[j] == osc[i]:
                    j += 1
                d, k = osc[i]
                f = f"{self.lattice.basis_names[d]}(-{k})"
                if j - i > 1:
                    f += f"^{j - i}"
                factors.append(f)
                i = j
            factors.append(format_charge(self.lattice, charge))
            body = "*".join(factors)
            neg = False
            if c.is_constant and c.to_fraction() < 0:
                neg, c = True, -c
            if c != 1:
                body = f"{_coef_str(c)}*{body}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append(("- " if neg else "+ ") + body)
        return " ".join(parts)

    def __repr__(self):
        return f"StateVector({self})"


def heis_apply(h, n, v):
    """Apply the Heisenberg mode ``h(n)`` to a state."""
    lat = v.lattice
    hc = h.coords
    out = {}
    if n < 0:
        k = -n
        for (osc, charge), c in v.terms.items():
            for i, hi in enumerate(hc):
                if not hi:
                    continue
                key = (_merge_osc(osc, ((i, k),)), charge)
                val = c * hi
                out[key] = out[key] + val if key in out else val
    elif n == 0:
        for (osc, charge), c in v.terms.items():
            e = lat.pair_coords(hc, charge)
            if e:
                out[(osc, charge)] = c * e
    else:
        for (osc, charge), c in v.terms.items():
            seen = set()
            for idx, (d, k) in enumerate(osc):
                if k != n or (d, k) in seen:
                    continue
                seen.add((d, k))
                mult = sum(1 for x in osc if x == (d, k))
                g = lat.pair_with_basis(hc, d)
                if not g:
                    continue
                rest = osc[:idx] + osc[idx + 1:]
                key = (rest, charge)
                val = c * g * (n * mult)
                out[key] = out[key] + val if key in out else val
    return StateVector._from_dict(lat, out)


def degree(v):
    """Maximum Heisenberg degree over the terms of ``v`` (0 for the zero vector)."""
    return max((sum(k for _, k in osc) for osc, _ in v.terms), default=0)


def charge_sectors(v):
    return {Weight(v.lattice, charge) for _, charge in v.terms}


# -- parsing ---------------------------------------------------------------

_OSC = re.compile(r"^([A-Za-z_][A-Za-z_0-9]*)\(\s*-\s*(\d+)\s*\)(?:\^(\d+))?$")


def _split_top(text, seps, offset=0):
    """Split at top-level separators, returning (piece, sep, start) triples."""
    out = []
    depth = 0
    start = 0
    sep = None
    for i, ch in enumerate(text):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
            if depth < 0:
                raise ParseError("unbalanced bracket", text, offset + i)
        elif depth == 0 and ch in seps:
            if ch in "+-":
                prev = text[:i].rstrip()
                # unary sign or exponent sign, not a separator
                if not prev or prev[-1] in "*/^(+-":
                    continue
            out.append((text[start:i], sep, offset + start))
            sep = ch
            start = i + 1
    if depth != 0:
        raise ParseError("unbalanced bracket", text, offset + len(text))
    out.append((text[start:], sep, offset + start))
    return out


def _parse_charge(lattice, body, full, offset):
    body = body.strip()
    coords = [ZERO] * lattice.rank
    if body in ("", "0"):
        return tuple(coords)
    for piece, sep, pos in _split_top(body, "+-", offset):
        piece = piece.strip()
        if not piece:
            raise ParseError("empty weight term", full, pos)
        sign = -1 if sep == "-" else 1
        if piece.startswith("-"):
            sign, piece = -sign, piece[1:].strip()
        factors = [f.strip() for f, _, _ in _split_top(piece, "*", pos)]
        names = [f for f in factors if f in lattice.basis_names]
        if len(names) != 1:
            raise ParseError("each weight term needs exactly one basis name", full, pos)
        coef = ONE
        for f in factors:
            if f not in lattice.basis_names:
                try:
                    coef = coef * parse_scalar(f)
                except ParseError as exc:
                    raise ParseError("bad weight coefficient", full, pos + exc.pos) from None
        i = lattice.basis_names.index(names[0])
        coords[i] = coords[i] + coef * sign
    return tuple(coords)


def parse_state(text, lattice):
    """Parse the textual state format for ``lattice``."""
    acc = {}
    for piece, sep, pos in _split_top(text, "+-"):
        raw = piece
        piece = piece.strip()
        if not piece:
            raise ParseError("empty term", text, pos)
        lead = len(raw) - len(raw.lstrip())
        pos += lead
        sign = -1 if sep == "-" else 1
        if piece.startswith("-"):
            sign, piece = -sign, piece[1:].strip()
            pos += 1
        coef = Scalar(sign)
        osc = []
        charge = None
        for f, _, fpos in _split_top(piece, "*", pos):
            f = f.strip()
            if not f:
                raise ParseError("empty factor", text, fpos)
            if f.startswith("e[") and f.endswith("]"):
                if charge is not None:
                    raise ParseError("two charges in one term", text, fpos)
                charge = _parse_charge(lattice, f[2:-1], text, fpos + 2)
                continue
            m = _OSC.match(f)
            if m:
                name, k, e = m.group(1), int(m.group(2)), int(m.group(3) or 1)
                if name not in lattice.basis_names:
                    raise ParseError(f"unknown direction {name!r}", text, fpos)
                if k < 1:
                    raise ParseError("oscillator mode must be negative", text, fpos)
                osc.extend([(lattice.basis_names.index(name), k)] * e)
                continue
            try:
                coef = coef * parse_scalar(f)
            except ParseError as exc:
                raise ParseError(exc.args[0].split(" at position")[0], text, fpos + exc.pos) from None
        if charge is None:
            charge = tuple([ZERO] * lattice.rank)
        key = (tuple(sorted(osc)), charge)
        acc[key] = acc[key] + coef if key in acc else coef
    return StateVector._from_dict(lattice, acc)


def _colored_partitions(n, rank, largest=None):
    """Multisets of ``(direction, k)`` with ``sum k = n``, in sorted-tuple form."""
    if n == 0:
        yield ()
        return
    for k in range(n, 0, -1):
        for d in range(rank - 1, -1, -1):
            if largest is not None and (k, d) > largest:
                continue
            for rest in _colored_partitions(n - k, rank, (k, d)):
                yield tuple(sorted(rest + ((d, k),)))


def fock_basis(lattice, charge, max_degree, min_degree=0):
    """All monomials ``prod b(-k) e^charge`` with degree in ``[min_degree, max_degree]``."""
    coords = charge.coords if isinstance(charge, Weight) else tuple(as_scalar(c) for c in charge)
    out = []
    for n in range(min_degree, max_degree + 1):
        for osc in _colored_partitions(n, lattice.rank):
            out.append(StateVector._from_dict(lattice, {(osc, coords): ONE}))
    return out
