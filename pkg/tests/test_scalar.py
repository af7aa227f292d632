from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from freefield.linalg import cofactor_determinant, determinant, nullspace, rank, rref, solve_linear
from freefield.scalar import ONE, ZERO, ParseError, S, Scalar, ScalarError, as_scalar, generalized_binomial, param, parse_scalar
from freefield.upoly import UPoly, poly_gcd, scalar_to_upoly

fracs = st.fractions(min_value=-50, max_value=50, max_denominator=30)


@given(fracs, fracs, fracs)
def test_field_axioms_on_constants(a, b, c):
    x, y, z = Scalar(a), Scalar(b), Scalar(c)
    assert (x + y) * z == x * z + y * z
    assert x * y == y * x
    assert (x - y).to_fraction() == a - b
    if b:
        assert (x / y).to_fraction() == a / b


@given(fracs)
def test_fraction_roundtrip(a):
    assert Scalar(a).to_fraction() == a
    assert Scalar(a).is_constant
    assert Scalar(a).is_integer == (a.denominator == 1)


def test_symbolic_arithmetic_cancels():
    t = param("t")
    e = (t * t - 1) / (t - 1)
    assert e == t + 1
    assert not e.is_constant
    assert e.subs({"t": 3}) == Scalar(4)


def test_subs_zero_denominator_raises():
    t = param("t")
    with pytest.raises(ScalarError):
        (ONE / (t - 2)).subs({"t": 2})


def test_division_by_zero():
    with pytest.raises(ScalarError):
        ONE / ZERO


def test_parse_roundtrip_against_sympy():
    text = "(s^2 - 2*s*t + 1)/(3*t - 1) + 1/2"
    v = parse_scalar(text)
    s, t = sympy.symbols("s t")
    ref = (s**2 - 2 * s * t + 1) / (3 * t - 1) + sympy.Rational(1, 2)
    for a, b in [(1, 2), (Fraction(1, 3), 5), (-2, Fraction(2, 7))]:
        got = v.subs({"s": a, "t": b}).to_fraction()
        want = ref.subs({s: sympy.Rational(a), t: sympy.Rational(b)})
        assert got == Fraction(int(want.p), int(want.q))
    assert parse_scalar(str(v)) == v


def test_parse_error_position():
    with pytest.raises(ParseError) as e:
        parse_scalar("1 + * 2")
    assert e.value.pos == 4
    with pytest.raises(ParseError):
        parse_scalar("(1 + 2")


def test_generalized_binomial():
    assert generalized_binomial(5, 3) == Scalar(10)
    assert generalized_binomial(Fraction(1, 2), 2) == Scalar(Fraction(-1, 8))
    t = param("t")
    assert generalized_binomial(t, 3) == t * (t - 1) * (t - 2) / 6


def test_shorthand():
    assert S(1, 2) == Scalar(Fraction(1, 2))
    assert as_scalar("t") == param("t")


# -- linear algebra -----------------------------------------------------------


@settings(max_examples=30)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(fracs, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_bareiss_matches_cofactor(rows):
    A = [[Scalar(x) for x in r] for r in rows]
    assert determinant(A) == cofactor_determinant(A)
    ref = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in r] for r in rows]).det()
    assert determinant(A).to_fraction() == Fraction(int(ref.p), int(ref.q))


def test_symbolic_determinant():
    x = param("x")
    A = [[x, ONE], [ONE, x]]
    assert determinant(A) == x * x - 1


def test_solve_and_nullspace():
    A = [[Scalar(1), Scalar(2)], [Scalar(2), Scalar(4)]]
    sol = solve_linear(A, [Scalar(3), Scalar(6)])
    assert sol.consistent and not sol.unique
    assert rank(A) == 1
    (k,) = nullspace(A)
    assert A[0][0] * k[0] + A[0][1] * k[1] == ZERO
    assert not solve_linear(A, [Scalar(1), Scalar(0)]).consistent


def test_rref_is_canonical():
    A = [[Scalar(2), Scalar(4), Scalar(0)], [Scalar(1), Scalar(3), Scalar(1)]]
    B = [A[1], [Scalar(3), Scalar(7), Scalar(1)]]
    assert rref(A)[0] == rref(B)[0]


# -- polynomials --------------------------------------------------------------


def test_upoly_gcd():
    s = param("s")
    p = UPoly.from_roots([s, Scalar(1), Scalar(2)])
    q = UPoly.from_roots([s, Scalar(2), Scalar(5)])
    assert poly_gcd(p, q) == UPoly.from_roots([s, Scalar(2)]).monic()


def test_upoly_divmod():
    p = UPoly.from_roots([Scalar(1), Scalar(2), Scalar(3)])
    q, r = p.divmod(UPoly.from_roots([Scalar(2)]))
    assert not r
    assert q == UPoly.from_roots([Scalar(1), Scalar(3)])


def test_scalar_to_upoly():
    x, t = param("x"), param("t")
    p = scalar_to_upoly(x * x * t + x - 1, "x")
    assert p.degree == 2
    assert p(Scalar(2)) == 4 * t + 1
