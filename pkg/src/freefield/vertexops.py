"""Vertex operators on lattice Fock spaces.

For ``u = c * h_1(-k_1)...h_r(-k_r) e^beta`` the field is the normal ordered
product

    Y(u, x) = c : d^(k_1-1) h_1(x) ... d^(k_r-1) h_r(x) Gamma_beta(x) :

with ``d^(k) = (1/k!) (d/dx)^k`` and
``Gamma_beta(x) = E^-(beta, x) E^+(beta, x) e_beta x^{beta(0)}``.
Every factor splits into a creation and an annihilation half.  Summing over
all splits, the annihilation halves act on ``v`` first (nonpositive powers of
``x``), then ``e_beta`` with its cocycle sign and the monodromy
``x^{<beta, gamma>}``, then the creation halves (nonnegative powers).
``u_n v`` is the coefficient of ``x^{-n-1}``.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb

from gmpy2 import mpq

from .fock import CocycleConvention, StateVector, Weight, _merge_osc, heis_apply
from .scalar import ONE, ZERO, Scalar, as_scalar

__all__ = [
    "ModeCache",
    "CocycleConvention",
    "ModeIndexError",
    "schur_exp",
    "schur_poly",
    "lattice_mode",
    "general_mode",
    "residue_mode",
    "translation",
    "parity",
    "annihilation_bound",
]


class ModeIndexError(ValueError):
    """Mode index outside the coset allowed by the charges involved."""


def _acc(d, key, val):
    if key in d:
        d[key] = d[key] + val
    else:
        d[key] = val


@lru_cache(maxsize=None)
def schur_poly(beta, j):
    """``S_j(beta)`` as a dict ``oscillators -> coefficient``.

    ``beta`` is a tuple of Scalar coordinates.  Uses ``j S_j = sum_k beta(-k) S_{j-k}``.
    """
    if j == 0:
        return {(): _MPQ_ONE if beta and type(beta[0]) is mpq else ONE}
    if j < 0:
        return {}
    out = {}
    for k in range(1, j + 1):
        prev = schur_poly(beta, j - k)
        for d, bd in enumerate(beta):
            if not bd:
                continue
            for osc, c in prev.items():
                _acc(out, _merge_osc(osc, ((d, k),)), c * bd)
    inv = Fraction(1, j)
    return {k: v * inv for k, v in out.items() if v}


def schur_exp(beta, n):
    """Coefficient of ``x^n`` in ``exp(sum_k beta(-k) x^k / k)`` as a charge-0 state."""
    lat = beta.lattice
    zero = tuple([ZERO] * lat.rank)
    return StateVector._from_dict(lat, {(osc, zero): c for osc, c in schur_poly(beta.coords, n).items()})


def _contract(gram, d, m, terms):
    """Apply the basis annihilator ``b_d(m)``, ``m >= 1``, to ``{osc: coef}``."""
    out = {}
    row = gram[d]
    for osc, c in terms.items():
        seen = None
        for idx, (e, k) in enumerate(osc):
            if k != m or (e, k) == seen:
                continue
            seen = (e, k)
            g = row[e]
            if not g:
                continue
            mult = sum(1 for x in osc if x == (e, k))
            _acc(out, osc[:idx] + osc[idx + 1:], c * (g * m * mult))
    return {k: v for k, v in out.items() if v}


def _contract_weight(gram, beta, m, terms):
    out = {}
    for d, bd in enumerate(beta):
        if not bd:
            continue
        for osc, c in _contract(gram, d, m, terms).items():
            _acc(out, osc, c * bd)
    return {k: v for k, v in out.items() if v}


def _apply_eplus(gram, beta, state):
    """``E^+(beta, x)`` on ``{(osc, q): coef}``; ``q`` is the power of ``x``."""
    cur = state
    maxk = max((k for osc, _ in cur for _, k in osc), default=0)
    for k in range(1, maxk + 1):
        nxt = dict(cur)
        # exp(-beta(k) x^-k / k): iterate powers of beta(k)
        layer = cur
        m = 0
        while layer:
            m += 1
            new = {}
            fac = Fraction(-1, k * m)
            by_q = {}
            for (osc, q), c in layer.items():
                by_q.setdefault(q, {})[osc] = c
            for q, terms in by_q.items():
                for osc, c in _contract_weight(gram, beta, k, terms).items():
                    _acc(new, (osc, q - k), c * fac)
            layer = {key: v for key, v in new.items() if v}
            for key, v in layer.items():
                _acc(nxt, key, v)
        cur = {key: v for key, v in nxt.items() if v}
    return cur


def _apply_annihilator(gram, d, k, g0, state):
    """Annihilation half of ``d^(k-1) b_d(x)``: sum over m >= 0 of
    ``binom(-m-1, k-1) b_d(m) x^(-m-k)``; ``b_d(0)`` acts as ``g0``."""
    out = {}
    sgn = -1 if (k - 1) % 2 else 1
    for (osc, q), c in state.items():
        if g0:
            _acc(out, (osc, q - k), c * g0 * sgn)
        for m in sorted({kk for _, kk in osc}):
            coef = sgn * comb(m + k - 1, k - 1)
            for o2, c2 in _contract(gram, d, m, {osc: c}).items():
                _acc(out, (o2, q - m - k), c2 * coef)
    return {key: v for key, v in out.items() if v}


def _distribute(A, e, beta):
    """Creation halves of the factors in ``A`` times ``E^-(beta)`` at total power ``e``."""
    if not A:
        return schur_poly(beta, e)
    (d, k), rest = A[0], A[1:]
    out = {}
    for j in range(k, k + e + 1):
        sub = _distribute(rest, e - (j - k), beta)
        if not sub:
            continue
        coef = comb(j - 1, k - 1)
        for osc, c in sub.items():
            _acc(out, _merge_osc(osc, ((d, j),)), c * coef)
    return out


@lru_cache(maxsize=200000)
def _mode_monomial(gram, uosc, beta, vosc, g, P, one=ONE):
    """Coefficient of ``x^P`` (integer part) for one pair of monomials, with
    the cocycle sign and the monodromy factor stripped.

    Coefficients are Scalars, or bare ``mpq`` when ``gram``, ``beta`` and
    ``g`` are passed as ``mpq`` tuples and ``one = mpq(1)`` (fast path).
    """
    r = len(uosc)
    out = {}
    for mask in range(1 << r):
        A = tuple(uosc[i] for i in range(r) if mask >> i & 1)
        B = [uosc[i] for i in range(r) if not mask >> i & 1]
        state = {(vosc, 0): one}
        if any(beta):
            state = _apply_eplus(gram, beta, state)
        for d, k in B:
            state = _apply_annihilator(gram, d, k, g[d], state)
            if not state:
                break
        for (osc, q), c in state.items():
            e = P - q
            if e < 0:
                continue
            for o2, c2 in _distribute(A, e, beta).items():
                _acc(out, _merge_osc(osc, o2), c * c2)
    return {k: v for k, v in out.items() if v}


def _integer_power(n, bg):
    p = -as_scalar(n) - 1 - bg
    if not p.is_integer:
        return None
    return int(p)


def general_mode(u, n, v):
    """``u_n v`` for arbitrary states ``u`` and ``v``.

    ``n`` may be rational or symbolic; for each pair of charge sectors
    ``n + <beta, gamma>`` must be an integer.
    """
    lat = v.lattice
    if u.lattice is not lat:
        raise ValueError("lattice mismatch")
    gram = lat._sgram
    rgram = lat._rgram
    rank = lat.rank
    by_charge = {}
    for (vosc, gamma), vc in v.terms.items():
        by_charge.setdefault(gamma, []).append((vosc, vc))
    out = {}
    raw = {}
    for (uosc, beta), uc in u.terms.items():
        rbeta = _raw_tuple(beta) if rgram is not None else None
        for gamma, vterms in by_charge.items():
            bg = lat.pair_coords(beta, gamma)
            P = _integer_power(n, bg)
            if P is None:
                raise ModeIndexError(
                    f"mode {n} is not in -<beta,gamma> + Z for <beta,gamma> = {bg}"
                )
            g = tuple(lat.pair_with_basis(gamma, d) for d in range(rank))
            sign = lat.cocycle.sign(beta, gamma)
            charge = tuple(a + b for a, b in zip(beta, gamma))
            us = uc * sign
            rg = _raw_tuple(g) if rbeta is not None else None
            for vosc, vc in vterms:
                f = us * vc
                if rg is not None and f.is_constant:
                    part = _mode_monomial(rgram, uosc, rbeta, vosc, rg, P, _MPQ_ONE)
                    fv = f._val
                    for osc, c in part.items():
                        key = (osc, charge)
                        old = raw.get(key)
                        raw[key] = c * fv if old is None else old + c * fv
                    continue
                part = _mode_monomial(gram, uosc, beta, vosc, g, P)
                for osc, c in part.items():
                    key = (osc, charge)
                    val = c * f
                    if key in out:
                        out[key] = out[key] + val
                    else:
                        out[key] = val
    for key, x in raw.items():
        if x:
            val = Scalar._raw((), x)
            out[key] = out[key] + val if key in out else val
    return StateVector._from_dict(lat, out)


_MPQ_ONE = mpq(1)


def _raw_tuple(xs):
    """``mpq`` values of constant Scalars, or None if any is symbolic."""
    out = []
    for x in xs:
        if not x.is_constant:
            return None
        out.append(x._val)
    return tuple(out)


def lattice_mode(beta, n, v):
    """``(e^beta)_n v``."""
    return general_mode(StateVector.exp(beta), n, v)


def residue_mode(u, f, v):
    """``Res_x f(x) Y(u, x) v`` for a Laurent polynomial ``f``.

    ``f`` is a dict ``power -> coefficient`` or a UPoly in ``x``.
    """
    if hasattr(f, "coeffs"):
        f = {i: c for i, c in enumerate(f.coeffs)}
    out = StateVector.zero(v.lattice)
    for k, c in f.items():
        c = as_scalar(c)
        if c:
            out = out + general_mode(u, k, v) * c
    return out


def translation(w):
    """``T w = w_{-2} 1``."""
    return general_mode(w, -2, StateVector.vacuum(w.lattice))


def parity(u):
    """Parity ``<beta, beta> mod 2`` of a charge-homogeneous state.

    Returns 0 or 1; raises if the sectors disagree or the norm is not integral.
    """
    lat = u.lattice
    vals = set()
    for _, beta in u.terms:
        nb = lat.pair_coords(beta, beta)
        if not nb.is_integer:
            raise ValueError(f"charge norm {nb} is not an integer")
        vals.add(int(nb) % 2)
    if len(vals) > 1:
        raise ValueError("state mixes parities")
    return vals.pop() if vals else 0


def annihilation_bound(u, v):
    """``u_n v`` vanishes once ``-n - 1 - <beta, gamma> < -(deg u + deg v)``."""
    from .fock import degree

    return degree(u) + degree(v)


class ModeCache:
    """Memoizes ``u_n`` on single Fock monomials and extends linearly.

    Useful when the same few operators are applied many times to vectors
    that share monomials (operator identities checked on a spanning set).
    For constant coefficients the work is done on a raw form
    ``{charge: {osc: mpq}}``; symbolic vectors fall back to ``general_mode``.
    """

    def __init__(self):
        self._ops = {}
        self._d = {}
        self._der = {}

    @staticmethod
    def to_raw(v):
        raw = {}
        for (osc, charge), c in v.terms.items():
            if not c.is_constant:
                return None
            raw.setdefault(charge, {})[osc] = c._val
        return raw

    @staticmethod
    def from_raw(lat, raw):
        d = {}
        for charge, sub in raw.items():
            for osc, x in sub.items():
                if x:
                    d[(osc, charge)] = Scalar._raw((), x)
        return StateVector._from_dict(lat, d)

    def _derived(self, u, d, i):
        """``b_d(i) u`` (kept alive so its id stays valid)."""
        key = (id(u), d, i)
        w = self._der.get(key)
        if w is None:
            w = self._der[key] = heis_apply(u.lattice.basis(d), i, u)
            self._ops.setdefault(id(w), w)
        return w

    def _image(self, u, n, osc, charge, lat):
        """Raw ``u_n (osc e^charge)`` as ``[(charge, [(osc, mpq), ...]), ...]``.

        Oscillators are peeled off with
        ``u_n h(-k) w = h(-k) u_n w - sum_i binom(-k, i) (h(i) u)_{n-k-i} w``,
        so the vertex engine only ever sees ``u_n e^charge``.
        """
        ck = (id(u), n, osc, charge)
        img = self._d.get(ck)
        if img is not None:
            return img
        if not osc:
            full = general_mode(u, n, StateVector._from_dict(lat, {((), charge): ONE}))
            raw = self.to_raw(full)
            if raw is None:
                raise ValueError("ModeCache needs constant coefficients")
        else:
            d, k = osc[0]
            rest = osc[1:]
            raw = {}
            for ch, items in self._image(u, n, rest, charge, lat):
                raw[ch] = {_merge_osc(o, ((d, k),)): x for o, x in items}
            top = max((kk for (uo, _) in u.terms for _, kk in uo), default=0)
            for i in range(top + 1):
                hu = self._derived(u, d, i)
                if not hu:
                    continue
                coef = comb(k + i - 1, i) * (-1 if i % 2 else 1)
                for ch, items in self._image(hu, n - k - i, rest, charge, lat):
                    dd = raw.setdefault(ch, {})
                    for o, x in items:
                        y = dd.get(o)
                        dd[o] = -coef * x if y is None else y - coef * x
        img = self._d[ck] = [(ch, [(o, x) for o, x in sub.items() if x]) for ch, sub in raw.items()]
        return img

    def apply_raw(self, u, n, lat, raw):
        self._ops.setdefault(id(u), u)
        out = {}
        for charge, sub in raw.items():
            for osc, c in sub.items():
                if not c:
                    continue
                for ch, items in self._image(u, n, osc, charge, lat):
                    dd = out.get(ch)
                    if dd is None:
                        out[ch] = {o: x * c for o, x in items}
                        continue
                    get = dd.get
                    for o, x in items:
                        y = get(o)
                        dd[o] = x * c if y is None else y + x * c
        return {ch: {o: x for o, x in sub.items() if x} for ch, sub in out.items()}

    def __call__(self, u, n, v):
        raw = self.to_raw(v)
        if raw is None:
            return general_mode(u, n, v)
        return self.from_raw(v.lattice, self.apply_raw(u, n, v.lattice, raw))
