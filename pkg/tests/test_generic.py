import pytest

from genus2cf.errors import CorruptedLineError, ExpansionTerminated
from genus2cf.exactfield import GF, Poly
from genus2cf.generic import (
    SurdContext,
    SurdLine,
    expand,
    norm_check,
    reduced_check,
    surd_step,
    surd_step_back,
)
from genus2cf.normal import random_instance

from conftest import WORKED_A, WORKED_CURVE, WORKED_P, WORKED_Q, X


@pytest.fixture
def ctx():
    return SurdContext.from_curve(WORKED_CURVE, precision=-12)


def test_context_series(ctx):
    Z = ctx.Z_series
    # Z^2 - A Z - R vanishes as far as Z is known
    lhs = Z * Z - Z * ctx.A - ctx.R
    assert all(not lhs.coeff(n) for n in range(lhs.top, lhs.precision - 1, -1))
    assert ctx.D.degree == 6 and ctx.D.leading == 1


def test_surd_step_worked_lines(ctx):
    a, nxt = surd_step(ctx, SurdLine(0, 2 * X - 1, X**2 - 1))
    assert a == X
    assert nxt == SurdLine(1, X, -(X**2 - 2))
    a, nxt = surd_step(ctx, nxt)
    assert a == -X
    assert nxt == SurdLine(2, X - 1, X**2 - X - 1)


def test_expansion_reproduces_display(ctx):
    lines, quotients = expand(ctx, SurdLine(0, WORKED_P[0], WORKED_Q[0]), 5)
    assert [ln.P for ln in lines] == WORKED_P
    assert [ln.Q for ln in lines[:5]] == WORKED_Q
    assert [quotients[h] for h in range(5)] == WORKED_A


def test_terminating_expansion():
    A = X**3 - 4 * X + 1
    ctx = SurdContext(A, Poly([]))
    assert ctx.Z_series.exact
    with pytest.raises(ExpansionTerminated):
        surd_step(ctx, SurdLine(0, Poly([]), Poly([1])))


def test_norm_check(ctx):
    assert norm_check(ctx, 2 * X - 1, X**2 - 1)
    assert divmod(ctx.norm(2 * X - 1), X**2 - 1)[0] == 2 * X**2 - X - 2
    assert norm_check(ctx, 5 * X + 3, Poly([1]))
    assert not norm_check(ctx, 2 * X - 1, X**2 + 1)
    assert divmod(ctx.norm(2 * X - 1), X**2 + 1)[1] == 2 * X + 8


def test_reduced_check(ctx):
    assert reduced_check(ctx, SurdLine(0, 2 * X - 1, X**2 - 1))
    assert reduced_check(ctx, SurdLine(1, X, -(X**2 - 2)))
    # Z itself: Zbar = A - Z has degree -2, so Z is reduced
    assert reduced_check(ctx, SurdLine(0, Poly([]), Poly([1])))
    # Zbar + X has degree 1
    assert not reduced_check(ctx, SurdLine(0, X, Poly([1])))


def test_corrupted_line_detected(ctx):
    with pytest.raises(CorruptedLineError):
        expand(ctx, SurdLine(0, 2 * X - 1, X**2 + 1), 3)


def test_backward_reflection(ctx):
    lines, _ = expand(ctx, SurdLine(4, X, X**2 - 1), 4, "backward")
    assert [ln.P for ln in lines] == WORKED_P[:5]
    assert [ln.Q for ln in lines] == WORKED_Q
    a, prev = surd_step_back(ctx, SurdLine(1, X, -(X**2 - 2)))
    assert a == X and prev == SurdLine(0, 2 * X - 1, X**2 - 1)


@pytest.mark.parametrize("field,mode", [
    (None, "reduced"), (None, "full"), (GF(10007), "reduced"), (GF(10007), "full"),
])
@pytest.mark.parametrize("seed", range(4))
def test_step_invariants(field, mode, seed):
    kw = {"field": field} if field else {}
    curve, line0 = random_instance(seed, mode, 3, **kw)
    ctx = SurdContext.from_curve(curve, precision=-16)
    line = SurdLine(0, line0.P, line0.Q)
    assert reduced_check(ctx, line)
    for _ in range(8):
        try:
            a, nxt = surd_step(ctx, line)
        except ExpansionTerminated:
            break
        # exact norm identity and preserved divisibility
        assert ctx.norm(nxt.P) == -line.Q * nxt.Q
        assert norm_check(ctx, nxt.P, nxt.Q)
        assert a.degree >= 1
        assert reduced_check(ctx, nxt)
        line = nxt


def test_doubling_precision_changes_nothing():
    curve, line0 = random_instance(7, "full", 3)
    start = SurdLine(0, line0.P, line0.Q)
    ctx = SurdContext.from_curve(curve, precision=-10)
    run1 = expand(ctx, start, 10, "both")
    run2 = expand(ctx.with_precision(-20), start, 10, "both")
    assert run1 == run2
