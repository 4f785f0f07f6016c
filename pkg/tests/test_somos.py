from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from genus2cf.errors import DegeneracyError, InvalidInputError, SingularSequenceError, UnsupportedModeError
from genus2cf.exactfield import GF, QQ
from genus2cf.normal import FULL, REDUCED, CurveParams, lines_until_degenerate, random_instance
from genus2cf.somos import (
    SomosWindow,
    d_stream,
    gap6_check,
    gap6_coeffs,
    gap6_extend,
    somos_from_curve,
    somos_from_d,
)

from conftest import WORKED_CURVE, WORKED_SEED, WORKED_T

WORKED_WINDOW = SomosWindow(-1, WORKED_T, (1, 1))


@pytest.mark.parametrize("params,expected", [
    ((-4, 1, -1, 2), (1, 1)),
    ((1, 1, 2, 1), (4, -24)),
    # g + w f + w^3 = 0 gives b = 0
    ((-2, 1, 1, 1), (1, 0)),
])
def test_gap6_coeffs(params, expected):
    assert gap6_coeffs(CurveParams.reduced(*params)) == expected


def test_gap6_coeffs_full_mode():
    with pytest.raises(UnsupportedModeError):
        gap6_coeffs(CurveParams.full(1, 1, 1, 1, 1))


def test_d_stream_worked_example():
    assert d_stream(WORKED_CURVE, WORKED_SEED, 0, 5) == [2, 1, 1, 1, 1, 2]
    assert d_stream(WORKED_CURVE, WORKED_SEED, -1, 6) == [Fraction(3, 4), 2, 1, 1, 1, 1, 2, Fraction(3, 4)]
    assert d_stream(WORKED_CURVE, WORKED_SEED, 5, 5) == [2]
    with pytest.raises(InvalidInputError):
        d_stream(WORKED_CURVE, WORKED_SEED, 3, 2)


def test_d_before_seed_matches_gap6_extension():
    # independent route: extend T backwards by the gap-6 relation, then read off d[-1]
    extended = gap6_extend(WORKED_WINDOW, 1, "backward")
    assert extended.offset == -2 and extended[-2] == 3
    d_minus1 = extended[-2] * extended[0] / extended[-1] ** 2
    assert d_stream(WORKED_CURVE, WORKED_SEED, -1, -1) == [d_minus1]


def test_somos_from_d():
    w = somos_from_d([2, 1, 1, 1, 1, 2], 1, 1)
    assert w.offset == -1
    assert list(w.terms) == [1, 1, 2, 4, 8, 16, 32, 128]
    gauge = somos_from_d([1, 1, 1, 1], 3, 6)
    assert list(gauge.terms) == [3 * 2**h for h in range(6)]
    with pytest.raises(SingularSequenceError):
        somos_from_d([1, 0, 1], 1, 1)
    with pytest.raises(SingularSequenceError):
        somos_from_d([1], 0, 1)


def test_somos_from_curve_worked_example():
    w = somos_from_curve(WORKED_CURVE, WORKED_SEED, 1, 1, -1, 11)
    assert w.offset == -1
    assert list(w.terms) == WORKED_T
    assert w.coeffs == (1, 1)
    assert w.is_integral()
    assert gap6_check(w) == []
    with pytest.raises(InvalidInputError):
        somos_from_curve(WORKED_CURVE, WORKED_SEED, 1, 1, 1, 5)


def test_somos_from_curve_full_mode_has_no_coeffs():
    curve, seed = random_instance(3, FULL, 3)
    lines = lines_until_degenerate(curve, seed, 4)
    w = somos_from_curve(curve, seed, 1, 1, 0, len(lines))
    assert w.coeffs is None
    with pytest.raises(InvalidInputError):
        gap6_check(w)


def test_gap6_check_flags_altered_term():
    altered = SomosWindow(-1, WORKED_T[:-1] + [51], (1, 1))
    assert gap6_check(altered) == [8]
    assert gap6_check(SomosWindow(0, [1] * 6, (1, 1))) == []


def test_gap6_extend():
    w = SomosWindow(0, [1, 1, 1, 1, 1, 1], (1, 1))
    fwd = gap6_extend(w, 6)
    assert list(fwd.terms[6:]) == [2, 3, 4, 8, 17, 50]
    back = gap6_extend(w, 1, "backward")
    assert back.offset == -1 and back[-1] == 2
    assert gap6_extend(w, 0) is w
    with pytest.raises(InvalidInputError):
        gap6_extend(SomosWindow(0, [1] * 5, (1, 1)), 1)
    with pytest.raises(InvalidInputError):
        gap6_extend(w, -1)


def test_window_indexing():
    assert WORKED_WINDOW[-1] == 2 and WORKED_WINDOW[11] == 50
    assert WORKED_WINDOW.last == 11
    with pytest.raises(IndexError):
        WORKED_WINDOW[12]
    assert str(SomosWindow(0, [1, Fraction(1, 2)])) == "1, 1/2"


# --- properties over random reduced instances -----------------------------


def _window(seed, field, t0, t1, steps=10):
    curve, line = random_instance(seed, REDUCED, 3, field=field)
    lines = lines_until_degenerate(curve, line, steps)
    if len(lines) < 8:
        return None
    try:
        return curve, somos_from_curve(curve, line, t0, t1, 0, len(lines))
    except SingularSequenceError:
        return None


fields = st.sampled_from([QQ, GF(10007)])
nonzero = st.integers(-20, 20).filter(bool)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), fields, nonzero, nonzero)
def test_gap6_relation_holds(seed, field, t0, t1):
    got = _window(seed, field, t0, t1)
    if got is None:
        return
    curve, window = got
    assert gap6_check(window) == []


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), nonzero, nonzero)
def test_d_recovered_from_window(seed, t0, t1):
    curve, line = random_instance(seed, REDUCED, 3)
    lines = lines_until_degenerate(curve, line, 8)
    try:
        window = somos_from_curve(curve, line, t0, t1, 0, len(lines))
    except SingularSequenceError:
        return
    ds = window.d_values()
    assert [ds[ln.h] for ln in lines[1:]] == [ln.d for ln in lines[1:]]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), nonzero, nonzero, nonzero, nonzero)
def test_gauge_rescaling_keeps_relation(seed, t0, t1, alpha, beta):
    curve, line = random_instance(seed, REDUCED, 3)
    lines = lines_until_degenerate(curve, line, 8)
    try:
        window = somos_from_curve(curve, line, t0, t1, 0, len(lines))
    except SingularSequenceError:
        return
    scaled = SomosWindow(window.offset, [Fraction(alpha) * Fraction(beta) ** h * t for h, t in
                                         zip(window.indices(), window.terms)], window.coeffs)
    assert gap6_check(scaled) == []
    assert scaled.d_values() == window.d_values()


def test_degenerate_instance_stops_d_stream():
    curve, seed = random_instance(14, REDUCED, 3)
    with pytest.raises(DegeneracyError):
        d_stream(curve, seed, 0, 6)
