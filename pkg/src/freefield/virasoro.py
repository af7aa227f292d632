"""Conformal vectors, Virasoro modes and the PBW basis over ``e^lambda``."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .fock import StateVector, degree, rank1_lattice, rank2_lattice
from .linalg import determinant, solve_linear
from .scalar import ONE, ZERO, Scalar, as_scalar
from .vertexops import general_mode, translation

__all__ = [
    "ConformalVector",
    "ConformalCheck",
    "PBWVector",
    "PBWSingularError",
    "central_charge_formula",
    "build_standard_omega",
    "build_deformed_omega",
    "build_base_omega",
    "verify_conformal",
    "L",
    "primary_check",
    "partitions",
    "pbw_apply",
    "pbw_convert",
    "relabel_weight",
]


@dataclass
class ConformalVector:
    state: StateVector
    central_charge: Scalar
    verified: bool = False

    @property
    def lattice(self):
        return self.state.lattice


@dataclass
class ConformalCheck:
    is_conformal: bool
    c: Scalar | None
    failures: list = field(default_factory=list)


def central_charge_formula(p):
    """``1 - 6 (p-1)^2 / p``."""
    return Scalar(1 - Fraction(6 * (p - 1) ** 2, p))


def _omega_rank1_part(lat, alpha, p):
    a1 = StateVector.monomial(lat, [(alpha, 1), (alpha, 1)])
    a2 = StateVector.monomial(lat, [(alpha, 2)])
    return a1 * Scalar(Fraction(1, 4 * p)) + a2 * Scalar(Fraction(p - 1, 2 * p))


def _ope_bound(u, v):
    """Largest n with ``u_n v`` possibly nonzero (rational pairings only)."""
    lat = v.lattice
    du, dv = degree(u), degree(v)
    best = None
    for _, b in u.terms:
        for _, g in v.terms:
            bg = lat.pair_coords(b, g)
            if not bg.is_constant:
                raise ValueError("symbolic charges: OPE bound undefined")
            f = bg.to_fraction()
            n = du + dv - 1 - f
            n = int(n) if n.denominator == 1 else int(n.__floor__())
            best = n if best is None else max(best, n)
    return best if best is not None else -1


def verify_conformal(w):
    """Exact check of ``w_0 w = Tw``, ``w_1 w = 2w``, ``w_2 w = 0``,
    ``w_3 w = (c/2) 1`` and ``w_n w = 0`` for ``n >= 4``."""
    state = w.state if isinstance(w, ConformalVector) else w
    lat = state.lattice
    vac = StateVector.vacuum(lat)
    fails = []
    if not state:
        return ConformalCheck(False, None, ["zero vector"])
    if general_mode(state, 0, state) != translation(state):
        fails.append("w_0 w != T w")
    if general_mode(state, 1, state) != state * 2:
        fails.append("w_1 w != 2 w")
    if general_mode(state, 2, state):
        fails.append("w_2 w != 0")
    w3 = general_mode(state, 3, state)
    c = None
    rest = w3 - vac * w3.coefficient((), lat.zero())
    if rest:
        fails.append("w_3 w is not a multiple of the vacuum")
    else:
        c = w3.coefficient((), lat.zero()) * 2
    for n in range(4, _ope_bound(state, state) + 1):
        if general_mode(state, n, state):
            fails.append(f"w_{n} w != 0")
    return ConformalCheck(not fails, c, fails)


def _finish(state, p):
    chk = verify_conformal(state)
    c = chk.c if chk.c is not None else central_charge_formula(p)
    return ConformalVector(state, c, chk.is_conformal)


def build_standard_omega(p):
    """``alpha(-1)^2/(4p) + ((p-1)/(2p)) alpha(-2)`` on ``Z alpha``, ``<alpha,alpha> = 2p``."""
    if p < 1:
        raise ValueError("p must be a positive integer")
    lat = rank1_lattice(p)
    return _finish(_omega_rank1_part(lat, lat.basis(0), p), p)


def build_base_omega(p):
    """Rank-2 conformal vector without the exponential term (``alpha = alpha1 + alpha2``)."""
    lat = rank2_lattice(p)
    alpha = lat.basis(0) + lat.basis(1)
    return _finish(_omega_rank1_part(lat, alpha, p), p)


def build_deformed_omega(p):
    """Base vector plus ``((p-1)/p) e^{-2 alpha2}``."""
    if p < 2:
        raise ValueError("the deformed conformal vector needs p >= 2")
    lat = rank2_lattice(p)
    alpha = lat.basis(0) + lat.basis(1)
    state = _omega_rank1_part(lat, alpha, p)
    state = state + StateVector.exp(lat.basis(1) * -2, Scalar(Fraction(p - 1, p)))
    return _finish(state, p)


def L(n, v, w):
    """``L(n) v = w_{n+1} v``."""
    state = w.state if isinstance(w, ConformalVector) else w
    return general_mode(state, n + 1, v)


def _eigenvalue(v, image):
    """``h`` with ``image = h v`` or None."""
    if not v:
        return None
    key = next(iter(v.terms))
    h = image.terms.get(key, ZERO) / v.terms[key]
    return h if image == v * h else None


def primary_check(v, w):
    """Returns ``(is_primary, weight)``; weight is None when ``v`` is not an ``L(0)``-eigenvector."""
    h = _eigenvalue(v, L(0, v, w))
    if h is None:
        return False, None
    for n in range(1, degree(v) + 3):
        if L(n, v, w):
            return False, h
    return True, h


def relabel_weight(t, p):
    """Map between the two highest-weight labelings ``t(t+2p-2)/(4p)`` and
    ``t(t-2p+2)/(4p)``: both give the same value under ``t -> -t``."""
    return -as_scalar(t)


# -- PBW basis ---------------------------------------------------------------


def partitions(n, largest=None):
    """Partitions of ``n`` as descending tuples."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


def pbw_apply(mono, base, w):
    """``L(-n1)...L(-nk) base`` for ``mono = (n1, ..., nk)``."""
    v = base
    for n in reversed(mono):
        v = L(-n, v, w)
    return v


class PBWSingularError(ArithmeticError):
    """The grade-by-grade PBW system is singular; ``witness`` is its determinant."""

    def __init__(self, grade, witness):
        super().__init__(f"PBW system singular at grade {grade}; witness {witness}")
        self.grade = grade
        self.witness = witness


class PBWVector:
    """``sum c_m L(-m) base`` with descending monomials ``m``."""

    def __init__(self, coeffs, base, omega):
        self.coeffs = {tuple(k): as_scalar(c) for k, c in coeffs.items() if c}
        self.base = base
        self.omega = omega

    def expand(self):
        out = StateVector.zero(self.base.lattice)
        for mono, c in self.coeffs.items():
            out = out + pbw_apply(mono, self.base, self.omega) * c
        return out

    def __eq__(self, other):
        return isinstance(other, PBWVector) and self.coeffs == other.coeffs and self.base == other.base

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for mono in sorted(self.coeffs, key=lambda m: (sum(m), m)):
            ops = "*".join(f"L(-{n})" for n in mono)
            parts.append(f"({self.coeffs[mono]})" + ("*" + ops if ops else ""))
        return " + ".join(parts)

    __repr__ = __str__


def _grade_part(v, base_osc_free=True):
    parts = {}
    for (osc, charge), c in v.terms.items():
        g = sum(k for _, k in osc)
        parts.setdefault(g, {})[(osc, charge)] = c
    return {g: StateVector._from_dict(v.lattice, d) for g, d in parts.items()}


def pbw_convert(v, w):
    """Write a single-sector state ``v`` in the PBW basis over ``e^charge``."""
    sectors = {charge for _, charge in v.terms}
    if len(sectors) > 1:
        raise ValueError("pbw_convert needs a single charge sector")
    lat = v.lattice
    charge = sectors.pop() if sectors else tuple([ZERO] * lat.rank)
    base = StateVector._from_dict(lat, {((), charge): ONE})
    coeffs = {}
    for g, part in sorted(_grade_part(v).items()):
        monos = list(partitions(g))
        images = [pbw_apply(m, base, w) for m in monos]
        keys = sorted({k for im in images for k in im.terms} | set(part.terms), key=str)
        A = [[im.terms.get(k, ZERO) for im in images] for k in keys]
        b = [part.terms.get(k, ZERO) for k in keys]
        sol = solve_linear(A, b)
        if not sol.unique:
            witness = None
            if len(keys) == len(monos):
                witness = determinant(A)
            raise PBWSingularError(g, witness)
        for m, c in zip(monos, sol.solution):
            if c:
                coeffs[m] = c
    return PBWVector(coeffs, base, w)
