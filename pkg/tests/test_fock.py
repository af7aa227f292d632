from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from freefield.fock import (
    CocycleConvention,
    LatticeSpec,
    StateVector,
    default_cocycle,
    degree,
    fermion_adapted_lattice,
    fock_basis,
    heis_apply,
    parse_state,
    rank1_lattice,
    rank2_cocycle,
    rank2_lattice,
    rebase,
)
from freefield.scalar import ParseError, Scalar, param
from freefield.vertexops import ModeCache, ModeIndexError, general_mode, schur_exp, schur_poly, translation


def _colored_partition_counts(rank, n):
    q = sympy.symbols("q")
    gen = sympy.prod([(1 - q**k) ** (-rank) for k in range(1, n + 1)])
    ser = sympy.series(gen, q, 0, n + 1).removeO()
    return [int(ser.coeff(q, d)) for d in range(n + 1)]


@pytest.mark.parametrize("rank,n", [(1, 6), (2, 5)])
def test_fock_basis_dimensions(rank, n):
    lat = rank1_lattice(2) if rank == 1 else rank2_lattice(2)
    counts = _colored_partition_counts(rank, n)
    assert len(fock_basis(lat, lat.zero(), n)) == sum(counts)
    assert len(fock_basis(lat, lat.zero(), n, min_degree=n)) == counts[n]


def test_lattice_validation():
    with pytest.raises(ValueError):
        LatticeSpec([[1, 2], [3, 4]], ["a", "b"])
    with pytest.raises(ValueError):
        LatticeSpec([[1]], ["a", "b"])


def test_pairings():
    lat = rank2_lattice(2)
    a1, a2 = lat.basis(0), lat.basis(1)
    alpha = a1 + a2
    assert lat.pair_coords(alpha.coords, alpha.coords) == Scalar(4)
    assert lat.pair_coords((a1 * Fraction(1, 3)).coords, alpha.coords) == Scalar(1)


def test_parse_and_print_roundtrip():
    lat = rank2_lattice(2)
    text = "1/2*a1(-1)^2*e[1/3*a1 - a2] - a2(-2)*e[0] + 3*e[2*a2]"
    v = parse_state(text, lat)
    assert parse_state(str(v), lat) == v
    assert degree(v) == 2


def test_parse_symbolic_charge():
    lat = rank2_lattice(2)
    v = parse_state("e[r/3*a1 + a2]", lat)
    ((_, charge),) = v.terms
    assert charge[0] == param("r") / 3


@pytest.mark.parametrize("bad,pos", [("a1(-1)*e[a1", 11), ("a3(-1)", 0), ("a1(-1)*e[a1]*e[a2]", 13)])
def test_parse_errors_carry_positions(bad, pos):
    with pytest.raises(ParseError) as e:
        parse_state(bad, rank2_lattice(2))
    assert e.value.pos == pos


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 1), st.integers(0, 1), st.integers(-3, 3), st.integers(-3, 3), st.integers(0, 3))
def test_heisenberg_commutator(i, j, m, n, d):
    lat = rank2_lattice(2)
    h, g = lat.basis(i), lat.basis(j)
    for v in fock_basis(lat, lat.basis(0) * Fraction(1, 3), d, min_degree=d):
        lhs = heis_apply(h, m, heis_apply(g, n, v)) - heis_apply(g, n, heis_apply(h, m, v))
        k = m * lat.gram[i][j] if m + n == 0 else 0
        assert lhs == v * Scalar(Fraction(k))


def test_cocycles_satisfy_super_rule():
    for p in (2, 3, 4):
        assert rank2_cocycle(p).check_super_rule(rank2_lattice(p).gram)
    g = [[3, 1], [1, 2]]
    assert default_cocycle(g).check_super_rule(g)
    assert not CocycleConvention([[1, 1], [1, 1]]).check_super_rule([[1, 0], [0, 1]])


def test_cocycle_rejects_bad_entries():
    with pytest.raises(ValueError):
        CocycleConvention([[1, 0], [1, 1]])


# -- vertex operators -----------------------------------------------------------


def _frac(c):
    if isinstance(c, Scalar):
        return c.to_fraction()
    return Fraction(int(c.numerator), int(c.denominator))


def test_schur_poly_matches_exponential_series():
    b1, b2, b3, b4, x = sympy.symbols("b1 b2 b3 b4 x")
    ser = sympy.series(sympy.exp(sum(bk * x**k / k for k, bk in enumerate([b1, b2, b3, b4], 1))), x, 0, 5).removeO()
    lat = rank1_lattice(2)
    beta = lat.basis(0) * Fraction(2, 3)
    for j in range(5):
        got = schur_poly(beta.coords, j)
        ref = sympy.expand(ser.coeff(x, j))
        # substitute b_k -> 2/3 and compare monomial by monomial
        poly = sympy.Poly(ref, b1, b2, b3, b4)
        want = {}
        for mon, c in poly.terms():
            osc = tuple(sorted((0, k + 1) for k, e in enumerate(mon) for _ in range(e)))
            want[osc] = Fraction(int(sympy.Rational(c).p), int(sympy.Rational(c).q)) * Fraction(2, 3) ** sum(mon)
        assert {o: _frac(c) for o, c in got.items()} == want


def test_lattice_ope_rank1():
    lat = rank1_lattice(2)
    a = lat.basis(0)
    u, v = StateVector.exp(-a), StateVector.exp(a)
    vac = StateVector.vacuum(lat)
    assert general_mode(u, 3, v) == vac
    assert general_mode(u, 2, v) == StateVector.monomial(lat, [(a, 1)]) * -1
    assert not general_mode(u, 4, v)
    # e^{-a}_n e^{a} = S_{3-n}(-a) e^0
    for n in range(-2, 4):
        assert general_mode(u, n, v) == schur_exp(-a, 3 - n)


def test_heisenberg_field_modes():
    lat = rank2_lattice(2)
    h = lat.basis(1)
    u = StateVector.monomial(lat, [(h, 1)])
    for v in fock_basis(lat, lat.basis(0) * Fraction(1, 3) + h, 2):
        for n in range(-2, 3):
            assert general_mode(u, n, v) == heis_apply(h, n, v)


def test_mode_coset_error():
    lat = rank1_lattice(2)
    q = lat.basis(0) * Fraction(1, 4)
    with pytest.raises(ModeIndexError):
        general_mode(StateVector.exp(q), 0, StateVector.exp(q))


def test_translation_is_derivative():
    lat = rank1_lattice(2)
    a = lat.basis(0)
    assert translation(StateVector.exp(a)) == StateVector.monomial(lat, [(a, 1)], a)


def test_mode_cache_matches_general_mode():
    lat = rank2_lattice(2)
    u = parse_state("a1(-1)*e[-2*a2] - a2(-1)*e[-2*a2] + e[a1 + a2]", lat)
    cache = ModeCache()
    for v in fock_basis(lat, lat.zero(), 3):
        for n in range(-1, 3):
            assert cache(u, n, v) == general_mode(u, n, v)


def test_rebase_commutes_with_modes():
    lat, M = fermion_adapted_lattice()
    old = rank2_lattice(2)
    u = parse_state("e[-1/2*a1 - 1/2*a2]", old)
    v = parse_state("a1(-1)*e[1/2*a1 + 1/2*a2] + e[1/2*a1 - 3/2*a2]", old)
    for n in range(-1, 3):
        assert rebase(general_mode(u, n, v), lat, M) == general_mode(rebase(u, lat, M), n, rebase(v, lat, M))


def test_rebase_checks_gram():
    with pytest.raises(ValueError):
        rebase(StateVector.vacuum(rank2_lattice(2)), rank2_lattice(3), [[1, 0], [0, 1]])
