"""Screening operators, generators and modules in the two free-field realizations.

``standard``: rank one, ``<alpha, alpha> = 2p``, screening ``Q = e^alpha_0``.
``deformed``: rank two, Gram ``diag(2p-1, 1)``, ``alpha = alpha1 + alpha2`` and
``S = e^{alpha1+alpha2}_0 + e^{alpha1-alpha2}_0``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .fock import (
    StateVector,
    Weight,
    degree,
    fermion_adapted_lattice,
    fock_basis,
    rank1_lattice,
    rank2_lattice,
    rebase,
    rebase_weight,
)
from .scalar import ONE, ZERO, Scalar, as_scalar, generalized_binomial
from .vertexops import ModeCache, general_mode, lattice_mode, parity
from .virasoro import (
    L,
    build_base_omega,
    build_deformed_omega,
    build_standard_omega,
    primary_check,
)

__all__ = [
    "Check",
    "ScreeningOperator",
    "GeneratorSet",
    "ModuleHandle",
    "build_screening",
    "screening_check",
    "build_generators",
    "sf_relations_check",
    "build_module",
    "hw_action_table",
    "decompose_P_r",
    "H_mode",
    "h_rs",
    "alpha_of",
]

REALIZATIONS = ("standard", "deformed")


@dataclass
class Check:
    """One entry of a verification report."""

    id: str
    status: str
    lhs: str = ""
    rhs: str = ""
    anchor: str = ""

    def as_dict(self):
        return {"id": self.id, "status": self.status, "lhs": self.lhs, "rhs": self.rhs, "anchor": self.anchor}


def _lattice(p, realization):
    if realization == "standard":
        if p < 1:
            raise ValueError("p must be >= 1")
        return rank1_lattice(p)
    if realization == "deformed":
        if p < 2:
            raise ValueError("the deformed realization needs p >= 2")
        return rank2_lattice(p)
    raise ValueError(f"unknown realization {realization!r}")


def alpha_of(lat):
    """``alpha`` (rank one) or ``alpha1 + alpha2`` (rank two)."""
    if lat.rank == 1:
        return lat.basis(0)
    return lat.basis(0) + lat.basis(1)


@dataclass
class ScreeningOperator:
    summands: list
    realization: str = ""

    @property
    def lattice(self):
        return self.summands[0].lattice

    def field_state(self):
        """``sum e^beta``; the operator is the zero mode of this state."""
        out = StateVector.zero(self.lattice)
        for b in self.summands:
            out = out + StateVector.exp(b)
        return out

    def __call__(self, v):
        out = StateVector.zero(v.lattice)
        for b in self.summands:
            out = out + lattice_mode(b, 0, v)
        return out


def build_screening(p, realization="standard"):
    lat = _lattice(p, realization)
    if realization == "standard":
        return ScreeningOperator([lat.basis(0)], realization)
    a1, a2 = lat.basis(0), lat.basis(1)
    return ScreeningOperator([a1 + a2, a1 - a2], realization)


def _omega_for(p, realization):
    return build_standard_omega(p) if realization == "standard" else build_deformed_omega(p)


def _cmp(lhs, rhs):
    """'pass' if equal, 'pass-sign' if equal up to -1, else 'fail'."""
    if lhs == rhs:
        return "pass"
    if lhs == -rhs:
        return "pass-sign"
    return "fail"


def _op_identity(name, lhs_fn, rhs_fn, basis, anchor=""):
    """Compare two operators on every vector of ``basis``; allow one global sign."""
    signs = set()
    bad = None
    for v in basis:
        lhs, rhs = lhs_fn(v), rhs_fn(v)
        st = _cmp(lhs, rhs)
        if st == "fail":
            bad = (v, lhs, rhs)
            break
        if lhs:
            signs.add(st)
    if bad is not None:
        v, lhs, rhs = bad
        return Check(name, "fail", f"on {v}: {lhs}", str(rhs), anchor)
    if len(signs) > 1:
        return Check(name, "fail", "sign differs between basis vectors", "", anchor)
    note = "equal up to global sign -1" if signs == {"pass-sign"} else "equal"
    return Check(name, "pass", note, f"{len(basis)} basis vectors", anchor)


def screening_check(S, w, max_degree=6, modes=range(-2, 3), sectors=None):
    """``u_0 omega = 0`` for ``u = sum e^beta`` plus the bracket identities used to
    prove it (deformed case) on the Fock spanning set of the given sectors."""
    state = w.state if hasattr(w, "state") else w
    lat = state.lattice
    checks = []
    u = S.field_state()
    res = general_mode(u, 0, state)
    checks.append(Check("screening.u0_omega", "pass" if not res else "fail", str(res), "0", "u_0 omega = 0"))
    if S.realization != "deformed":
        return checks
    p = (lat.gram[0][0] + 1) / 2
    p = int(p)
    a1, a2 = lat.basis(0), lat.basis(1)
    plus, minus, m2 = StateVector.exp(a1 + a2), StateVector.exp(a1 - a2), StateVector.exp(a2 * -2)
    base = build_base_omega(p).state
    if sectors is None:
        sectors = [lat.zero()]
    basis = [b for sec in sectors for b in fock_basis(lat, sec, max_degree)]
    alpha_m = StateVector.monomial(lat, [(a1 + a2, 1)], a1 - a2)  # (alpha1(-1)+alpha2(-1)) e^{alpha1-alpha2}
    k = Scalar(Fraction(p - 1, p))

    mode = ModeCache()

    def comm(x, m, y, n):
        return lambda v: mode(x, m, mode(y, n, v)) - mode(y, n, mode(x, m, v))

    lm = L(0, minus, base)
    checks.append(Check("screening.Lp0_minus", "pass" if not lm else "fail", str(lm), "0", "L'(0) e^{a1-a2} = 0"))
    zero = lambda v: StateVector.zero(lat)
    for n in modes:
        checks.append(_op_identity(f"screening.[plus_0,L'({n})]", comm(plus, 0, base, n + 1), zero, basis))
        checks.append(_op_identity(f"screening.[minus_0,m2_{n + 1}]", comm(minus, 0, m2, n + 1), zero, basis))
        checks.append(
            _op_identity(
                f"screening.[plus_0,m2_{n + 1}]",
                comm(plus, 0, m2, n + 1),
                lambda v, n=n: mode(alpha_m, n + 1, v),
                basis,
            )
        )
        lm1 = L(-1, minus, base)
        eq = lm1 == alpha_m * k
        checks.append(Check("screening.L'(-1)minus", "pass" if eq else "fail", str(lm1), str(alpha_m * k)))
        checks.append(
            _op_identity(
                f"screening.[L'({n}),minus_0]",
                comm(base, n + 1, minus, 0),
                lambda v, n=n: mode(alpha_m, n + 1, v) * k,
                basis,
            )
        )
    return checks


# -- generators ----------------------------------------------------------------


@dataclass
class GeneratorSet:
    states: dict
    realization: str
    p: int
    screening: ScreeningOperator = None

    def __getitem__(self, k):
        return self.states[k]


def build_generators(p, realization="standard"):
    S = build_screening(p, realization)
    lat = S.lattice
    alpha = alpha_of(lat)
    F = StateVector.exp(-alpha)
    H = S(F)
    E = S(H)
    states = {"F": F, "H": H, "E": E}
    am = StateVector.exp(alpha * Fraction(-1, 2))
    states["aminus"] = am
    states["aplus"] = S(am)
    return GeneratorSet(states, realization, p, S)


def H_mode(n, v, H, p):
    """``H(n) = H_{n + 2p - 2}``."""
    return general_mode(H, n + 2 * p - 2, v)


def sf_relations_check(p=2, max_degree=6, mode_range=3, sectors=None, adapted=True):
    """Symplectic-fermion relations for the deformed ``a^+-`` at ``p = 2``.

    ``a-_n a+ = 2 delta_{n,1} vac`` is an identity for ``n >= 0`` only; for
    ``n < 0`` the product is a genuine descendant and is reported as info.
    With ``adapted`` (default) the computation runs in the orthogonal
    coordinates of :func:`~freefield.fock.fermion_adapted_lattice`.
    """
    g = build_generators(p, "deformed")
    lat = g["aminus"].lattice
    am, ap = g["aminus"], g["aplus"]
    if adapted and p == 2:
        # same Fock space, orthogonal coordinates in which each fermion
        # involves a single oscillator direction
        lat, M = fermion_adapted_lattice()
        am, ap = rebase(am, lat, M), rebase(ap, lat, M)
        if sectors is not None:
            sectors = [rebase_weight(w, lat, M) for w in sectors]
    vac = StateVector.vacuum(lat)
    mode = ModeCache()
    checks = []
    signs = set()
    for n in range(-mode_range, mode_range + 1):
        got = general_mode(am, n, ap)
        if n < 0:
            checks.append(Check(f"sf.aminus_{n}aplus", "info", str(got), "nonzero descendant", "a-_n a+, n < 0"))
            continue
        want = vac * 2 if n == 1 else StateVector.zero(lat)
        st = _cmp(got, want)
        if want and st != "fail":
            signs.add(-1 if st == "pass-sign" else 1)
        checks.append(Check(f"sf.aminus_{n}aplus", "fail" if st == "fail" else "pass", str(got), str(want), "a-_n a+"))
    if sectors is None:
        sectors = [lat.zero()]
    basis = [b for sec in sectors for b in fock_basis(lat, sec, max_degree)]

    first = {}
    raws = {id(b): (i, mode.to_raw(b)) for i, b in enumerate(basis)}

    def once(x, m, v):
        i, r = raws[id(v)]
        key = (id(x), m, i)
        if key not in first:
            first[key] = mode.apply_raw(x, m, lat, r)
        return first[key]

    def anti(x, m, y, n):
        def f(v):
            a = mode.apply_raw(x, m, lat, once(y, n, v))
            b = mode.apply_raw(y, n, lat, once(x, m, v))
            for ch, sub in b.items():
                dd = a.setdefault(ch, {})
                for o, c in sub.items():
                    dd[o] = dd.get(o, 0) + c
            return mode.from_raw(lat, a)
        return f

    zero = lambda v: StateVector.zero(lat)
    rng = range(-mode_range, mode_range + 1)
    for n in rng:
        for m in rng:
            want_c = 2 * n if n + m == 0 else 0
            c = _op_identity(f"sf.{{a-_{n},a+_{m}}}", anti(am, n, ap, m), lambda v, k=want_c: v * k, basis)
            if c.status == "pass" and want_c:
                signs.add(-1 if "sign" in c.lhs else 1)
            checks.append(c)
    for n in rng:
        for m in rng:
            if m < n:
                continue
            checks.append(_op_identity(f"sf.{{a-_{n},a-_{m}}}", anti(am, n, am, m), zero, basis))
            checks.append(_op_identity(f"sf.{{a+_{n},a+_{m}}}", anti(ap, n, ap, m), zero, basis))
    if len(signs) > 1:
        checks.append(Check("sf.global_sign", "fail", "inconsistent signs", ""))
    else:
        s = signs.pop() if signs else 1
        checks.append(Check("sf.global_sign", "info", str(s), "1", "reported global sign"))
    return checks


# -- modules -----------------------------------------------------------------


@dataclass
class ModuleHandle:
    kind: str
    parameters: dict
    generator: StateVector
    lattice: object
    extra: dict = field(default_factory=dict)


def build_module(kind, p=2, **params):
    """``M_t`` (``t``), ``pi_j`` (``n``), ``F_rs`` (``r``, ``s``), ``P_r`` (``r``)."""
    if kind == "M_t":
        t = as_scalar(params["t"])
        lat = rank1_lattice(p)
        gen = StateVector.exp(lat.basis(0) * (t / (2 * p)))
        return ModuleHandle(kind, {"t": t, "p": p}, gen, lat)
    if kind == "pi":
        n = params["n"]
        if not isinstance(n, int):
            raise ValueError("pi needs an integer n")
        lat = rank1_lattice(p)
        alpha = lat.basis(0)
        if n >= 0:
            gen = StateVector.exp(alpha * Fraction(-n, 2))
        else:
            gen = StateVector.exp(alpha * Fraction(n, 2))
            Q = build_screening(p, "standard")
            for _ in range(-n):
                gen = Q(gen)
        return ModuleHandle(kind, {"n": n, "p": p}, gen, lat)
    if kind in ("F_rs", "P_r"):
        if p != 2 and kind == "P_r":
            raise ValueError("P_r is only built for p = 2")
        lat = rank2_lattice(p)
        r = as_scalar(params["r"])
        s = as_scalar(params.get("s", 1))
        if kind == "P_r" and s != 1:
            raise ValueError("P_r is generated by v_{r,1}")
        w = lat.basis(0) * (r / (2 * p - 1)) + lat.basis(1) * s
        return ModuleHandle(kind, {"r": r, "s": s, "p": p}, StateVector.exp(w), lat)
    raise ValueError(f"unknown module kind {kind!r}")


def v_rs(r, s, p=2):
    lat = rank2_lattice(p)
    r = as_scalar(r)
    return StateVector.exp(lat.basis(0) * (r / (2 * p - 1)) + lat.basis(1) * s)


def h_rs(r, s=1, p=2):
    """``h_{r,1} = ((r - p)^2 - (p-1)^2) / (4p)``; at p = 2 this is ``((r-2)^2 - 1)/8``."""
    r = as_scalar(r)
    return ((r - p) ** 2 - (p - 1) ** 2) / (4 * p)


def _coeffs(vec, basis):
    """Coordinates of ``vec`` in a basis of pure exponentials; None if outside."""
    out = []
    rest = vec
    for b in basis:
        key = next(iter(b.terms))
        c = vec.terms.get(key, ZERO)
        out.append(c)
        rest = rest - b * c
    return out if not rest else None


def hw_action_table(r, p=2):
    """``L(0)`` and ``H(0)`` on ``v_{r,1}, v_{r,-1}, v_{r,0}`` versus the printed table."""
    if p != 2:
        raise ValueError("the action table is for p = 2")
    r = as_scalar(r)
    w = build_deformed_omega(p)
    H = build_generators(p, "deformed")["H"]
    v1, vm, v0 = v_rs(r, 1), v_rs(r, -1), v_rs(r, 0)
    b = lambda x: generalized_binomial(x, 3)
    printed = [
        ("L(0)v_{r,0}", L(0, v0, w), v0 * h_rs(r + 1)),
        ("L(0)v_{r,-1}", L(0, vm, w), vm * h_rs(r)),
        ("L(0)v_{r,1}", L(0, v1, w), v1 * h_rs(r + 2) + vm * Fraction(1, 2)),
        ("H(0)v_{r,0}", H_mode(0, v0, H, p), v0 * b(r)),
        ("H(0)v_{r,-1}", H_mode(0, vm, H, p), vm * b(r - 1)),
        ("H(0)v_{r,1}", H_mode(0, v1, H, p), v1 * b(r + 1) + vm * (r - 1)),
    ]
    checks = []
    for name, got, want in printed:
        checks.append(Check(f"table.{name}", "pass" if got == want else "fail", str(got), str(want), "action table"))
    return checks


def _matrix_on(op, basis):
    cols = [_coeffs(op(b), basis) for b in basis]
    if any(c is None for c in cols):
        return None
    return [[cols[j][i] for j in range(len(basis))] for i in range(len(basis))]


def decompose_P_r(r, p=2):
    """Split ``span{v_{r,1}, v_{r,-1}}`` into eigenvectors, or report the Jordan block at ``r = 1``."""
    if p != 2:
        raise ValueError("P_r is only analysed for p = 2")
    r = as_scalar(r)
    w = build_deformed_omega(p)
    H = build_generators(p, "deformed")["H"]
    v1, vm = v_rs(r, 1), v_rs(r, -1)
    L0 = _matrix_on(lambda v: L(0, v, w), [v1, vm])
    H0 = _matrix_on(lambda v: H_mode(0, v, H, p), [v1, vm])
    if r == 1:
        N = [[L0[i][j] - (L0[0][0] if i == j else ZERO) for j in range(2)] for i in range(2)]
        N2 = [[sum((N[i][k] * N[k][j] for k in range(2)), ZERO) for j in range(2)] for i in range(2)]
        nonzero = any(x for row in N for x in row)
        sq_zero = not any(x for row in N2 for x in row)
        same = L0[0][0] == L0[1][1]
        return {
            "kind": "jordan",
            "L0": L0,
            "H0": H0,
            "eigenvalue": L0[0][0],
            "nilpotent_nonzero": nonzero,
            "nilpotent_square_zero": sq_zero,
            "is_jordan_block": nonzero and sq_zero and same,
        }
    if (r - 1).is_constant and not (r - 1):
        raise ZeroDivisionError("r = 1 has no split decomposition")
    vp = v1 + vm * (ONE / (r - 1))
    lp, hp = L(0, vp, w), H_mode(0, vp, H, p)
    lm, hm = L(0, vm, w), H_mode(0, vm, H, p)
    out = {
        "kind": "split",
        "vplus": vp,
        "vminus": vm,
        "vplus_L0": lp == vp * h_rs(r + 2),
        "vplus_H0": hp == vp * generalized_binomial(r + 1, 3),
        "vminus_L0": lm == vm * h_rs(r),
        "vminus_H0": hm == vm * generalized_binomial(r - 1, 3),
    }
    # coefficient (p-1)/p / (h_{r+2} - h_r) equals 1/(r-1)
    out["coefficient_identity"] = Scalar(Fraction(p - 1, p)) / (h_rs(r + 2) - h_rs(r)) == ONE / (r - 1)
    return out


def primary_report(p):
    """Weights of the deformed generators with respect to the deformed conformal vector."""
    w = build_deformed_omega(p)
    g = build_generators(p, "deformed")
    return {k: primary_check(g[k], w) for k in ("H", "aminus", "aplus")}
