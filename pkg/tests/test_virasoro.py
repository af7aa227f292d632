from fractions import Fraction

import pytest
import sympy

from freefield.fock import StateVector, fock_basis, parse_state, rank1_lattice, rank2_lattice
from freefield.scalar import Scalar, param
from freefield.virasoro import (
    L,
    PBWSingularError,
    build_base_omega,
    build_deformed_omega,
    build_standard_omega,
    central_charge_formula,
    partitions,
    pbw_convert,
    primary_check,
    relabel_weight,
    verify_conformal,
)


@pytest.mark.parametrize("p,c", [(1, 1), (2, -2), (3, -7), (4, Fraction(-25, 2)), (5, Fraction(-91, 5))])
def test_central_charge_values(p, c):
    assert central_charge_formula(p) == Scalar(Fraction(c))
    w = build_standard_omega(p)
    assert w.verified and w.central_charge == Scalar(Fraction(c))


@pytest.mark.parametrize("p", [2, 3])
def test_deformed_is_conformal(p):
    w = build_deformed_omega(p)
    chk = verify_conformal(w)
    assert chk.is_conformal, chk.failures
    assert chk.c == central_charge_formula(p)


def test_non_conformal_vector_is_rejected():
    lat = rank1_lattice(2)
    bad = parse_state("1/4*a(-1)^2*e[0] + a(-2)*e[0]", lat)
    chk = verify_conformal(bad)
    assert not chk.is_conformal and chk.failures


def test_deformed_needs_p_at_least_two():
    with pytest.raises(ValueError):
        build_deformed_omega(1)


@pytest.mark.parametrize("which", ["standard", "deformed"])
def test_virasoro_commutator(which):
    w = build_standard_omega(2) if which == "standard" else build_deformed_omega(2)
    lat = w.lattice
    c = w.central_charge
    sector = lat.zero() if which == "standard" else lat.basis(0) * Fraction(1, 3) + lat.basis(1)
    for v in fock_basis(lat, sector, 2):
        for m in range(-2, 3):
            for n in range(-2, 3):
                lhs = L(m, L(n, v, w), w) - L(n, L(m, v, w), w)
                rhs = L(m + n, v, w) * (m - n)
                if m + n == 0:
                    rhs = rhs + v * (c * Fraction(m**3 - m, 12))
                assert lhs == rhs


def test_partitions_count():
    for n in range(9):
        assert len(list(partitions(n))) == int(sympy.partition(n))


def test_pbw_roundtrip_generic_weight():
    lat = rank1_lattice(2)
    w = build_standard_omega(2)
    for v in fock_basis(lat, lat.basis(0) * Fraction(1, 7), 4):
        assert pbw_convert(v, w).expand() == v


def test_pbw_singular_at_vacuum():
    lat = rank1_lattice(2)
    w = build_standard_omega(2)
    with pytest.raises(PBWSingularError) as e:
        pbw_convert(parse_state("a(-1)*e[0]", lat), w)
    assert e.value.grade == 1


def test_pbw_symbolic_weight():
    lat = rank1_lattice(2)
    w = build_standard_omega(2)
    t = param("t")
    v = StateVector.monomial(lat, [(lat.basis(0), 1), (lat.basis(0), 1)], lat.basis(0) * (t / 4))
    assert pbw_convert(v, w).expand() == v


def test_weights_and_primaries():
    lat = rank2_lattice(2)
    base = build_base_omega(2)
    ok, h = primary_check(StateVector.exp(lat.basis(1) * -2), base)
    assert ok and h == Scalar(1)
    w = build_standard_omega(2)
    ok, h = primary_check(w.state, w)
    assert not ok and h == Scalar(2)


def test_relabel_weight():
    p = 2
    t = param("t")
    h = lambda x: x * (x + 2 * p - 2) / (4 * p)
    h_other = lambda x: x * (x - 2 * p + 2) / (4 * p)
    assert h(relabel_weight(t, p)) == h_other(t)
