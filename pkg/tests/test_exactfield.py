from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from genus2cf.errors import (
    FieldMismatchError,
    InvalidInputError,
    InvalidScalarError,
    PrecisionError,
    UnsupportedRadicandError,
    ZeroPolynomialDivisionError,
)
from genus2cf.exactfield import (
    GF,
    NEG_INF,
    QQ,
    LaurentSeries,
    Mod,
    Poly,
    format_scalar,
    laurent_sqrt,
    normalize_rational,
    parse_scalar,
    poly_divmod,
    poly_eval,
    rational_roots,
)

X = Poly.x()
P7 = GF(10007)


@pytest.mark.parametrize("num,den,expected", [
    (6, -4, Fraction(-3, 2)),
    (0, 5, Fraction(0)),
    (2, 2, Fraction(1)),
])
def test_normalize_rational(num, den, expected):
    r = normalize_rational(num, den)
    assert r == expected
    assert r.denominator > 0
    assert (r.numerator, r.denominator) == (expected.numerator, expected.denominator)


def test_normalize_rational_zero_denominator():
    with pytest.raises(InvalidScalarError):
        normalize_rational(1, 0)


def test_zero_canonical_form():
    z = normalize_rational(0, 5)
    assert (z.numerator, z.denominator) == (0, 1)


def test_divmod_examples():
    a = X**4 - 3 * X**2 + 2
    b = X**2 - 1
    q, r = poly_divmod(a, b)
    # multiply back
    assert q * b + r == a
    assert q == X**2 - 2 and r.is_zero()

    q, r = poly_divmod(a, Poly([1]))
    assert (q, r) == (a, Poly([]))

    q, r = poly_divmod(X, X**2 - 1)
    assert q.is_zero() and r == X


def test_divmod_by_zero():
    with pytest.raises(ZeroPolynomialDivisionError):
        poly_divmod(X, Poly([]))


def test_eval_examples():
    A = X**3 - 4 * X + 1
    assert poly_eval(A, 0) == 1
    assert poly_eval(A, 2) == 1
    assert poly_eval(6 * X - 12, 2) == 0
    assert A(Fraction(1, 2)) == Fraction(1, 8) - 2 + 1


def test_rational_roots_examples():
    assert rational_roots(6 * X - 12) == {2}
    assert rational_roots(X**2 - 1) == {1, -1}
    assert rational_roots(X**2 + 1) == set()
    assert rational_roots(X**3 - X) == {0, 1, -1}
    assert rational_roots(Poly([Fraction(-1, 4), 0, 1])) == {Fraction(1, 2), Fraction(-1, 2)}


def test_rational_roots_errors():
    with pytest.raises(InvalidInputError):
        rational_roots(Poly([]))
    with pytest.raises(InvalidInputError):
        rational_roots(Poly([1, 1], P7))


def test_degree_sentinel():
    assert Poly([]).degree == NEG_INF
    assert Poly([0, 0]).degree == NEG_INF
    assert Poly([3]).degree == 0
    assert Poly([1, 2, 0, 0]).coeffs == (1, 2)


def test_scalar_text_forms():
    assert format_scalar(Fraction(-3, 2)) == "-3/2"
    assert format_scalar(Fraction(4, 1)) == "4"
    assert format_scalar(Mod(-1, 7)) == "6 mod 7"
    assert parse_scalar("-3/2") == Fraction(-3, 2)
    assert parse_scalar("6/4") == Fraction(3, 2)
    assert parse_scalar("5 mod 7") == Mod(5, 7)
    for bad in ("1.5", "1e3", "x", "1/0", ""):
        with pytest.raises(InvalidScalarError):
            parse_scalar(bad)


def test_fields_do_not_mix():
    with pytest.raises(FieldMismatchError):
        Mod(1, 7) + Fraction(1, 2)
    with pytest.raises(FieldMismatchError):
        Mod(1, 7) + Mod(1, 11)
    with pytest.raises(FieldMismatchError):
        Poly([1, 1]) + Poly([1, 1], P7)
    with pytest.raises(InvalidInputError):
        GF(3)
    with pytest.raises(InvalidInputError):
        GF(15)


def test_poly_format():
    assert str(X**3 - 4 * X + 1) == "X^3 - 4X + 1"
    assert str(-(X**2 - 2)) == "-X^2 + 2"
    assert str(Poly([Fraction(-1, 4), Fraction(-1, 2)])) == "-(1/2)X - 1/4"
    assert Poly.from_list(Poly([Fraction(-1, 2), 2]).to_list()) == Poly([Fraction(-1, 2), 2])


# --- field axioms ---------------------------------------------------------

rationals = st.fractions(max_denominator=50).filter(lambda x: abs(x.numerator) < 10**6)
residues = st.integers(0, 10006).map(P7)


@pytest.mark.parametrize("scalars", [rationals, residues], ids=["QQ", "GF10007"])
@given(data=st.data())
def test_field_axioms(scalars, data):
    a, b, c = data.draw(scalars), data.draw(scalars), data.draw(scalars)
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a - a == 0
    if a:
        assert a * (1 / a) == 1
        assert (b / a) * a == b


polys = st.lists(st.integers(-20, 20), max_size=7).map(lambda cs: Poly(cs))
nonzero_polys = polys.filter(lambda p: not p.is_zero())


@given(polys, nonzero_polys)
def test_divmod_recomposes(a, b):
    q, r = poly_divmod(a, b)
    assert q * b + r == a
    assert r.degree < b.degree


@given(st.lists(st.integers(0, 10006), max_size=7), st.lists(st.integers(0, 10006), min_size=1, max_size=4))
def test_divmod_recomposes_mod_p(ac, bc):
    a, b = Poly(ac, P7), Poly(bc, P7)
    if b.is_zero():
        return
    q, r = poly_divmod(a, b)
    assert q * b + r == a
    assert r.degree < b.degree


# --- rational roots against exhaustive search -----------------------------

small_roots = st.fractions(min_value=-6, max_value=6, max_denominator=6)


def brute_force_roots(p, num_bound=40, den_bound=8):
    found = set()
    for den in range(1, den_bound + 1):
        for num in range(-num_bound, num_bound + 1):
            r = Fraction(num, den)
            if not p(r):
                found.add(r)
    return found


@settings(max_examples=60, deadline=None)
@given(
    st.lists(small_roots, min_size=0, max_size=3),
    st.integers(-5, 5),
    st.integers(1, 5),
    st.booleans(),
)
def test_rational_roots_match_exhaustive_search(roots, lead_num, lead_den, irreducible_factor):
    if lead_num == 0:
        lead_num = 1
    p = Poly([Fraction(lead_num, lead_den)])
    for r in roots:
        p = p * (X - r)
    if irreducible_factor or not roots:
        p = p * (X**2 + 2)
    got = rational_roots(p)
    assert all(not p(r) for r in got)
    assert brute_force_roots(p) <= got
    assert got == set(roots)


# --- Laurent series -------------------------------------------------------


def _square_matches(S, D):
    """Oracle: S*S agrees with D on every exponent S's precision guarantees."""
    sq = S * S
    lowest = sq.precision if not sq.exact else -len(S.coeffs) * 2
    for n in range(sq.top, int(lowest) - 1, -1):
        want = D[n] if n >= 0 else 0
        if sq.coeff(n) != want:
            return False
    return True


def test_laurent_sqrt_worked_radicand():
    A = X**3 - 4 * X + 1
    D = A * A + 4 * (X - 2)
    S = laurent_sqrt(D, -2)
    assert S.top == 3
    assert [S.coeff(n) for n in range(3, -3, -1)] == [1, 0, -4, 1, 0, 2]
    assert not S.exact
    with pytest.raises(PrecisionError):
        S.coeff(-3)
    assert _square_matches(laurent_sqrt(D, -12), D)


@pytest.mark.parametrize("D,root", [
    (X**6, X**3),
    ((X**3 - 4 * X + 1) ** 2, X**3 - 4 * X + 1),
    ((X**3 + Fraction(2, 3) * X - 5) ** 2, X**3 + Fraction(2, 3) * X - 5),
])
def test_laurent_sqrt_perfect_squares(D, root):
    S = laurent_sqrt(D, -5)
    assert S.exact
    assert S.polynomial_part() == root


def test_laurent_sqrt_rejects_bad_radicands():
    with pytest.raises(UnsupportedRadicandError):
        laurent_sqrt(X**5 + 1, -4)
    with pytest.raises(UnsupportedRadicandError):
        laurent_sqrt(2 * X**6 + 1, -4)


@given(st.lists(st.integers(-9, 9), min_size=6, max_size=6), st.integers(1, 12))
def test_laurent_sqrt_squares_back(lower, depth):
    D = Poly(lower + [1])
    S = laurent_sqrt(D, -depth)
    assert _square_matches(S, D)


def test_series_division_by_poly():
    S = LaurentSeries.from_poly(X**4 - 3 * X**2 + 2)
    q = S.div_poly(X**2 - 1)
    assert q.exact and q.polynomial_part() == X**2 - 2
    inv = LaurentSeries.from_poly(Poly([1])).div_poly(X - 1, precision=-6)
    # 1/(X-1) = X^-1 + X^-2 + ...
    assert [inv.coeff(n) for n in range(0, -7, -1)] == [0, 1, 1, 1, 1, 1, 1]
    assert inv.degree == -1


def test_series_degree_needs_precision():
    S = LaurentSeries(QQ, 2, [0, 0, 0], 0)
    with pytest.raises(PrecisionError):
        S.degree
    assert LaurentSeries.from_poly(Poly([])).degree == NEG_INF
