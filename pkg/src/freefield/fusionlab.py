"""Intertwining operators between singlet modules at ``p = 2``, realized as
lattice operator modes that cross charge sectors of the rank-two realization.

``M_t`` sits inside the Fock space in two ways: generated by ``v_{t,0}`` or by
``v^+_{t-1,1} = v_{t-1,1} + v_{t-1,-1}/(t-2)``.  The intertwiner
``Y(u, x) v`` for ``u`` in the first copy and ``v`` in the second is the usual
lattice vertex operator; its modes land in the sector of ``v_{t1+t2-1, +-1}``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .fock import StateVector, degree
from .linalg import rref, solve_linear
from .realizations import Check, H_mode, ModuleHandle, build_generators, decompose_P_r, v_rs
from .scalar import ONE, ZERO, Scalar, as_scalar, generalized_binomial
from .vertexops import ModeIndexError, general_mode
from .virasoro import L, build_deformed_omega, partitions, pbw_apply

__all__ = [
    "FusionSpan",
    "PreconditionError",
    "singlet_module",
    "intertwiner_mode",
    "top_mode",
    "fusion_span",
    "highest_weight_vectors",
    "verify_fusion_p2",
    "lminus1_property",
    "log_probe",
    "orbifold_fusion_table",
    "orbifold_table",
    "orbifold_check",
    "fusion_targets",
]


class PreconditionError(ValueError):
    """Inputs outside the range where a statement applies."""


def _rational(x, name):
    x = as_scalar(x)
    if not x.is_constant:
        raise PreconditionError(f"{name} must be rational")
    return x


def _generic(t1, t2):
    t1, t2 = _rational(t1, "t1"), _rational(t2, "t2")
    for name, v in (("t1", t1), ("t2", t2), ("t1+t2", t1 + t2)):
        if v.is_integer:
            raise PreconditionError(f"{name} = {v} is an integer")
    return t1, t2


def _h(t):
    return t * (t - 2) / 8


def singlet_module(t, form="zero"):
    """``M_t`` in the rank-two realization: generated by ``v_{t,0}``
    (``form="zero"``) or by ``v^+_{t-1,1}`` (``form="plus"``)."""
    t = as_scalar(t)
    if form == "zero":
        gen = v_rs(t, 0)
    elif form == "plus":
        if (t - 2).is_constant and not (t - 2):
            raise PreconditionError("v^+_{t-1,1} needs t != 2")
        gen = v_rs(t - 1, 1) + v_rs(t - 1, -1) * (ONE / (t - 2))
    else:
        raise ValueError(f"unknown form {form!r}")
    return ModuleHandle("M_t", {"t": t, "p": 2, "form": form}, gen, gen.lattice)


def intertwiner_mode(u, n, v):
    """``u_n v`` for ``u``, ``v`` in (possibly different) charge sectors.

    Raises ModeIndexError when ``n + <beta, gamma>`` is not an integer for
    some pair of charges.
    """
    if u.lattice is not v.lattice:
        raise ValueError("u and v must live on the same lattice")
    return general_mode(u, n, v)


def top_mode(u, v):
    """``-<beta, gamma> - 1`` for the leading charges of ``u`` and ``v``
    (the mode giving ``e^{beta+gamma}`` at the bottom)."""
    lat = v.lattice
    b = next(iter(u.terms))[1]
    g = next(iter(v.terms))[1]
    return -lat.pair_coords(b, g) - 1


@dataclass
class FusionSpan:
    degree: int
    basis: list
    provenance: list = field(default_factory=list)
    keys: list = field(default_factory=list)
    target_charge: tuple = None

    def coordinates(self, vec):
        """Coordinates of ``vec`` in ``basis`` or None if it is not in the span."""
        extra = set(vec.terms) - set(self.keys)
        if extra:
            return None
        A = [[b.terms.get(k, ZERO) for b in self.basis] for k in self.keys]
        sol = solve_linear(A, [vec.terms.get(k, ZERO) for k in self.keys])
        return sol.solution if sol.consistent else None

    def contains(self, vec):
        return self.coordinates(vec) is not None


def fusion_span(M1, M2, max_degree=4, omega=None):
    """Span of ``u_r v`` with ``u`` over PBW descendants of the generator of
    ``M1`` (grade ``<= max_degree``), ``v`` the generator of ``M2`` and ``r``
    such that the output sits at level ``0..max_degree`` above the bottom.

    The basis is the reduced row echelon form over canonically ordered
    monomials, so it does not depend on the enumeration order.
    """
    w = omega or build_deformed_omega(2)
    u0, v = M1.generator, M2.generator
    n0 = top_mode(u0, v)
    gens, prov = [], []
    for g in range(max_degree + 1):
        for mono in partitions(g):
            u = pbw_apply(mono, u0, w)
            for level in range(max_degree + 1):
                r = n0 + g - level
                out = intertwiner_mode(u, r, v)
                if out:
                    gens.append(out)
                    prov.append((str(r), mono))
    keys = sorted({k for x in gens for k in x.terms}, key=lambda k: (sum(kk for _, kk in k[0]), str(k)))
    A = [[x.terms.get(k, ZERO) for k in keys] for x in gens]
    R, _ = rref(A)
    lat = v.lattice
    basis = [StateVector._from_dict(lat, {k: c for k, c in zip(keys, row) if c}) for row in R]
    b = next(iter(u0.terms))[1]
    gm = next(iter(v.terms))[1]
    return FusionSpan(max_degree, basis, prov, keys, tuple(x + y for x, y in zip(b, gm)))


def highest_weight_vectors(span, omega=None, H=None):
    """Basis of the vectors of ``span`` killed by ``L(1), L(2)`` and ``H(1..3)``."""
    w = omega or build_deformed_omega(2)
    H = H if H is not None else build_generators(2, "deformed")["H"]
    ops = [lambda x: L(1, x, w), lambda x: L(2, x, w)] + [lambda x, n=n: H_mode(n, x, H, 2) for n in (1, 2, 3)]
    rows = []
    for op in ops:
        imgs = [op(b) for b in span.basis]
        keys = sorted({k for im in imgs for k in im.terms}, key=str)
        rows.extend([im.terms.get(k, ZERO) for im in imgs] for k in keys)
    if not rows:
        kernel = [[ONE if i == j else ZERO for j in range(len(span.basis))] for i in range(len(span.basis))]
    else:
        kernel = solve_linear(rows).nullspace
    lat = span.basis[0].lattice if span.basis else None
    out = []
    for c in kernel:
        out.append(StateVector.combine(lat, list(zip(span.basis, c))))
    return out


def _proportional(a, b):
    """``c`` with ``a = c b`` or None."""
    if not b:
        return None
    key = next(iter(b.terms))
    c = a.terms.get(key, ZERO) / b.terms[key]
    return c if a == b * c else None


def lminus1_property(t1, t2, modes=3):
    """Compare ``(L(-1) v_{t1,0})_n v`` with ``-n (v_{t1,0})_{n-1} v`` for
    ``v = v^+_{t2-1,1}`` at the top modes.  Report-only."""
    w = build_deformed_omega(2)
    u0 = singlet_module(t1).generator
    v = singlet_module(t2, "plus").generator
    lu = L(-1, u0, w)
    n0 = top_mode(u0, v)
    checks = []
    for i in range(modes):
        n = n0 + 1 - i
        lhs = intertwiner_mode(lu, n, v)
        rhs = intertwiner_mode(u0, n - 1, v) * (-n)
        st = "match" if lhs == rhs else "mismatch"
        checks.append(Check(f"fusion.L(-1)-property.n={n}", "info", f"{st}: {lhs}", str(rhs), "L(-1)-property"))
    D = u0.lattice
    beta = next(iter(u0.terms))[1]
    transl = StateVector.monomial(D, [(_weight(D, beta), 1)], _weight(D, beta))
    checks.append(
        Check(
            "fusion.L(-1)v_vs_translation",
            "info",
            f"L(-1) v_(t1,0) = {lu}",
            f"lattice translation = {transl}",
            "the lattice intertwiner differentiates via the lattice translation",
        )
    )
    return checks


def _weight(lat, coords):
    from .fock import Weight

    return Weight(lat, coords)


def verify_fusion_p2(t1, t2, max_degree=4):
    """Fusion ``M_t1 x M_t2`` through the rank-two intertwiner; list of Checks."""
    t1, t2 = _generic(t1, t2)
    w = build_deformed_omega(2)
    H = build_generators(2, "deformed")["H"]
    M1, M2 = singlet_module(t1), singlet_module(t2, "plus")
    span = fusion_span(M1, M2, max_degree, w)
    r = t1 + t2 - 1
    checks = [Check("fusion.span_dim", "info", str(len(span.basis)), f"max_degree={max_degree}", "inner fusion product")]

    # charge bookkeeping: alpha1 coefficient fixed, alpha2 coefficient odd
    a1 = r / 3
    ok = all(ch[0] == a1 and ch[1].is_integer and int(ch[1].to_fraction()) % 2 for b in span.basis for _, ch in b.terms)
    checks.append(Check("fusion.sectors", "pass" if ok else "fail", f"alpha1 coefficient {a1}, odd alpha2", "", "sector bookkeeping"))

    vp = v_rs(r, 1) + v_rs(r, -1) * (ONE / (r - 1))
    vm = v_rs(r, -1)
    wv = v_rs(r, 1) + v_rs(r, -1) * (ONE / (t2 - 2))

    # top mode of the generator gives w
    top = intertwiner_mode(M1.generator, top_mode(M1.generator, M2.generator), M2.generator)
    c = _proportional(top, wv)
    checks.append(
        Check("fusion.top_mode_is_w", "pass" if c else "fail", str(top), f"c * ({wv})", "top mode of v_(t1,0) on v+")
    )
    if c is not None and c != 1:
        checks.append(Check("fusion.top_mode_scale", "info", str(c), "1", "cocycle normalization"))
    checks.append(Check("fusion.w_in_span", "pass" if span.contains(wv) else "fail", str(wv), "", "w in fusion product"))
    dec = vp + vm * (t1 / ((t2 - 2) * (t1 + t2 - 2)))
    checks.append(Check("fusion.w_decomposition", "pass" if dec == wv else "fail", str(dec), str(wv), "w = v+ + t1/((t2-2)(t1+t2-2)) v-"))

    hw = highest_weight_vectors(span, w, H)
    hwspan = FusionSpan(max_degree, hw, keys=sorted({k for x in hw for k in x.terms}, key=str))
    bottom = [x for x in hw if degree(x) == 0 and all(sum(k for _, k in o) == 0 for o, _ in x.terms)]
    bottom_ok = len(bottom) == 2 and all(FusionSpan(0, bottom, keys=sorted({k for x in bottom for k in x.terms}, key=str)).contains(x) for x in (vp, vm))
    checks.append(
        Check("fusion.hw_bottom", "pass" if bottom_ok else "fail", f"{len(bottom)} at degree 0", "span{v+, v-}", "two highest-weight vectors")
    )
    targets = []
    expected = []
    for name, vec, t in (("v+", vp, t1 + t2), ("v-", vm, t1 + t2 - 2)):
        inside = span.contains(vec) and hwspan.contains(vec)
        checks.append(Check(f"fusion.{name}_in_span", "pass" if inside else "fail", str(vec), "", "singular vector in fusion product"))
        l0 = _proportional(L(0, vec, w), vec)
        h0 = _proportional(H_mode(0, vec, H, 2), vec)
        want = (_h(t), generalized_binomial(t, 3))
        expected.append(want)
        good = l0 == want[0] and h0 == want[1]
        checks.append(
            Check(f"fusion.{name}_weights", "pass" if good else "fail", f"(L0, H0) = ({l0}, {h0})", f"({want[0]}, {want[1]})", f"lambda_(t = {t})")
        )
        targets.append({"t": str(t), "L0": str(l0), "H0": str(h0)})
    mult = _joint_multiplicities(hw, expected, w, H)
    total = sum(mult)
    checks.append(
        Check(
            "fusion.hw_types",
            "pass" if total == len(hw) and all(mult) else "fail",
            f"singular space dim {len(hw)}, multiplicities {mult}",
            "only lambda_(t1+t2), lambda_(t1+t2-2)",
            "no third highest weight",
        )
    )
    checks.append(
        Check(
            "fusion.hw_multiplicity",
            "pass" if all(m == 1 for m in mult) else "fail",
            str(mult),
            "[1, 1]",
            "each target once up to max_degree; extra copies are oscillators orthogonal to alpha",
        )
    )
    checks.append(Check("fusion.targets", "info", str([x["t"] for x in targets]), "", "M_(t1+t2) + M_(t1+t2-2)"))
    checks.extend(lminus1_property(t1, t2, modes=1))
    return checks


def _joint_multiplicities(vectors, data, w, H):
    """Dimensions of the joint ``(L(0), H(0))`` eigenspaces with the given data
    inside ``span(vectors)`` (which must be preserved by both operators)."""
    if not vectors:
        return [0 for _ in data]
    keys = sorted({k for x in vectors for k in x.terms}, key=str)
    span = FusionSpan(0, vectors, keys=keys)
    ops = [lambda x: L(0, x, w), lambda x: H_mode(0, x, H, 2)]
    mats = []
    for op in ops:
        cols = []
        for x in vectors:
            c = span.coordinates(op(x))
            if c is None:
                raise ArithmeticError("singular space is not preserved")
            cols.append(c)
        mats.append([[cols[j][i] for j in range(len(vectors))] for i in range(len(vectors))])
    n = len(vectors)
    out = []
    for lam in data:
        rows = []
        for M, e in zip(mats, lam):
            rows.extend([[M[i][j] - (e if i == j else ZERO) for j in range(n)] for i in range(n)])
        out.append(len(solve_linear(rows).nullspace))
    return out


def fusion_targets(t1, t2, max_degree=4):
    """Sorted target labels found by :func:`verify_fusion_p2` (highest-weight data)."""
    t1, t2 = _generic(t1, t2)
    w = build_deformed_omega(2)
    H = build_generators(2, "deformed")["H"]
    span = fusion_span(singlet_module(t1), singlet_module(t2, "plus"), max_degree, w)
    out = []
    for vec in highest_weight_vectors(span, w, H):
        out.append((_proportional(L(0, vec, w), vec), _proportional(H_mode(0, vec, H, 2), vec)))
    return sorted(out, key=str)


def log_probe(t1, t2, max_degree=0):
    """Report-only: Jordan structure of ``L(0)`` on the target ``P_{t1+t2}`` and on
    the bottom slice of the fusion span when ``t1 + t2`` is an integer."""
    t1, t2 = _rational(t1, "t1"), _rational(t2, "t2")
    s = t1 + t2
    if not s.is_integer:
        raise PreconditionError(f"t1+t2 = {s} is not an integer")
    allowed = lambda t: (not t.is_integer) or int(t.to_fraction()) % 4 in (1, 3)
    if not (allowed(t1) and allowed(t2)):
        raise PreconditionError("t1, t2 must be non-integers or lie in {4n+1, 4n-1}")
    checks = []
    dec = decompose_P_r(s) if s == 1 else None
    w = build_deformed_omega(2)
    top = [v_rs(s, 1), v_rs(s, -1)]
    L0 = [[ZERO, ZERO], [ZERO, ZERO]]
    for j, b in enumerate(top):
        img = L(0, b, w)
        for i, e in enumerate(top):
            key = next(iter(e.terms))
            L0[i][j] = img.terms.get(key, ZERO)
    jordan = L0[0][0] == L0[1][1] and any(L0[i][j] for i in range(2) for j in range(2) if i != j)
    checks.append(
        Check(
            "log.P_top_L0",
            "info",
            f"L(0) on span(v_({s},1), v_({s},-1)) = {[[str(x) for x in row] for row in L0]}",
            "jordan block" if jordan else "diagonalizable",
            "logarithmic target",
        )
    )
    if dec is not None:
        checks.append(Check("log.P_1_jordan", "info", str(dec["is_jordan_block"]), "True", "r = 1"))
    # bottom slice of the intertwiner span
    if not (t2 - 2).is_integer or t2 != 2:
        u0 = v_rs(t1, 0)
        v = v_rs(t2 - 1, 1) + v_rs(t2 - 1, -1) * (ONE / (t2 - 2))
        try:
            bottom = intertwiner_mode(u0, top_mode(u0, v), v)
        except ModeIndexError as e:
            bottom = None
            checks.append(Check("log.bottom_slice", "info", f"mode coset error: {e}", ""))
        if bottom is not None:
            rr = t1 + t2 - 1
            basis = [v_rs(rr, 1), v_rs(rr, -1)]
            M = [[ZERO, ZERO], [ZERO, ZERO]]
            for j, b in enumerate(basis):
                img = L(0, b, w)
                for i, e in enumerate(basis):
                    M[i][j] = img.terms.get(next(iter(e.terms)), ZERO)
            jb = M[0][0] == M[1][1] and bool(M[1][0] or M[0][1])
            checks.append(
                Check(
                    "log.bottom_slice_L0",
                    "info",
                    f"bottom {bottom}; L(0) on span(v_({rr},1), v_({rr},-1)) = {[[str(x) for x in row] for row in M]}",
                    "jordan block" if jb else "diagonalizable",
                    "bottom of the fusion span",
                )
            )
    return checks


# -- orbifold labels ----------------------------------------------------------


def _orbifold_pre(m, p, i1, i2):
    if m < 1 or p < 1:
        raise PreconditionError("m and p must be positive")
    N = 2 * m * m * p
    for name, v in (("i1", i1), ("i2", i2)):
        if not 0 <= v < N:
            raise PreconditionError(f"{name} = {v} is outside 0..{N - 1}")
    for name, v in (("i1", i1), ("i2", i2), ("i1+i2", i1 + i2)):
        if v % m == 0:
            raise PreconditionError(f"{name} = {v} is divisible by m = {m}")
    return N


def orbifold_fusion_table(m, p, i1, i2):
    """``{(i1+i2) mod 2m^2p, (i1+i2-2m) mod 2m^2p}``."""
    N = _orbifold_pre(m, p, i1, i2)
    return {(i1 + i2) % N, (i1 + i2 - 2 * m) % N}


def orbifold_table(m, p):
    """All admissible pairs; empty when the hypotheses are never satisfied."""
    N = 2 * m * m * p
    out = {}
    for i1 in range(N):
        for i2 in range(N):
            try:
                out[(i1, i2)] = orbifold_fusion_table(m, p, i1, i2)
            except PreconditionError:
                continue
    return out


def orbifold_check(m, p):
    """Symmetry and congruence checks of the full table, or a vacuity report."""
    table = orbifold_table(m, p)
    N = 2 * m * m * p
    if not table:
        why = "every integer is divisible by 1" if m == 1 else (
            "labels prime to 2 are odd, so i1+i2 is even" if m == 2 else "no admissible pair")
        return [Check(f"orbifold.m={m}", "info", "vacuous hypotheses", why, "orbifold fusion")]
    sym = all(table[(b, a)] == v for (a, b), v in table.items())
    cong = all(
        all((x - a - b) % N in (0, (-2 * m) % N) for x in v) and all(x % m for x in v) and len(v) == 2
        for (a, b), v in table.items()
    )
    # label i corresponds to the singlet weight t = i/m; the targets are t1+t2, t1+t2-2
    singlet = all(
        {Fraction(x, m) % (2 * m * p) for x in v}
        == {Fraction(a + b, m) % (2 * m * p), (Fraction(a + b, m) - 2) % (2 * m * p)}
        for (a, b), v in table.items()
    )
    return [
        Check(f"orbifold.m={m}.pairs", "info", str(len(table)), f"labels 0..{N - 1}", "orbifold fusion"),
        Check(f"orbifold.m={m}.symmetry", "pass" if sym else "fail", str(sym), "True", "symmetric table"),
        Check(f"orbifold.m={m}.congruence", "pass" if cong else "fail", str(cong), "True", "i3 = i1+i2 or i1+i2-2m"),
        Check(f"orbifold.m={m}.singlet_labels", "pass" if singlet else "fail", str(singlet), "True", "t = i/m"),
    ]
