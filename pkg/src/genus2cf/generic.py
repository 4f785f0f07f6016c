"""Reference continued fraction engine working on raw ``(P, Q)`` line data.

The surd is ``Z = (Y + A)/2`` with ``Y^2 = A^2 + 4R``; its conjugate is
``A - Z``.  Partial quotients are read off a truncated Laurent expansion of
``Z`` at infinity, so nothing here assumes they have degree one.
"""
from dataclasses import dataclass

from .errors import (
    CorruptedLineError,
    ExpansionTerminated,
    InvalidInputError,
    PrecisionError,
    ZeroPolynomialDivisionError,
)
from .exactfield import LaurentSeries, Poly, laurent_sqrt

DEFAULT_EXTRA_TERMS = 8


class SurdContext:
    """Series data for ``Z`` shared by every line of one expansion."""

    def __init__(self, A, R, precision=-DEFAULT_EXTRA_TERMS):
        if A.degree != 3 or A.leading != 1:
            raise InvalidInputError("A must be a monic cubic")
        if R.field != A.field:
            raise InvalidInputError("A and R must share a field")
        if R.degree > 2:
            raise InvalidInputError("R must have degree <= 2")
        self.A = A
        self.R = R
        self.field = A.field
        self.D = A * A + 4 * R
        self.precision = precision
        self.Y_series = laurent_sqrt(self.D, precision)
        self.Z_series = (self.Y_series + A).scale(self.field.one / 2)

    @classmethod
    def from_curve(cls, curve, precision=-DEFAULT_EXTRA_TERMS):
        return cls(curve.A, curve.R, precision)

    def with_precision(self, precision):
        return SurdContext(self.A, self.R, precision)

    def norm(self, P):
        """``(Z + P)(Zbar + P) = P^2 + A P - R``."""
        return P * P + self.A * P - self.R

    @property
    def conjugate_series(self):
        return LaurentSeries.from_poly(self.A) - self.Z_series


@dataclass(frozen=True)
class SurdLine:
    """Complete quotient ``(Z + P)/Q`` at index ``h``."""

    h: int
    P: Poly
    Q: Poly

    def __post_init__(self):
        if self.Q.is_zero():
            raise InvalidInputError("Q must be nonzero")


def norm_check(ctx, P, Q):
    """True iff ``Q`` divides ``P^2 + A P - R``."""
    if Q.is_zero():
        raise ZeroPolynomialDivisionError("Q must be nonzero")
    return divmod(ctx.norm(P), Q)[1].is_zero()


def _complete_quotient(ctx, P, Q, precision=None):
    return (ctx.Z_series + P).div_poly(Q, precision)


def reduced_check(ctx, line):
    """True iff ``deg (Z+P)/Q > 0`` and ``deg (Zbar+P)/Q < 0``."""
    upper = _complete_quotient(ctx, line.P, line.Q).degree
    lower = (ctx.conjugate_series + line.P).div_poly(line.Q).degree
    return upper > 0 and lower < 0


def surd_step(ctx, line):
    """One forward line: returns ``(a, next_line)``."""
    # exponents below zero never reach the partial quotient
    a = _complete_quotient(ctx, line.P, line.Q, 0).polynomial_part()
    P1 = a * line.Q - line.P - ctx.A
    Q1, rem = divmod(-ctx.norm(P1), line.Q)
    if not rem.is_zero():
        raise CorruptedLineError(f"line {line.h}: Q does not divide the next norm")
    if Q1.is_zero():
        raise ExpansionTerminated(f"line {line.h}: complete quotient is a polynomial")
    return a, SurdLine(line.h + 1, P1, Q1)


def surd_step_back(ctx, line):
    """One backward line: returns ``(a_prev, previous_line)``.

    Reflection through the conjugate: ``Q_{h-1} = -N(P_h)/Q_h`` and the
    previous partial quotient is the polynomial part of ``(Z + P_h)/Q_{h-1}``.
    """
    Q0, rem = divmod(-ctx.norm(line.P), line.Q)
    if not rem.is_zero():
        raise CorruptedLineError(f"line {line.h}: Q does not divide the norm of P")
    if Q0.is_zero():
        raise ExpansionTerminated(f"line {line.h}: conjugate line is degenerate")
    a = _complete_quotient(ctx, line.P, Q0, 0).polynomial_part()
    P0 = a * Q0 - line.P - ctx.A
    return a, SurdLine(line.h - 1, P0, Q0)


def expand(ctx, line, steps, direction="forward"):
    """Expand ``steps`` lines from ``line``.

    Returns ``(lines, quotients)`` where ``lines`` is sorted by ``h`` and
    ``quotients[h]`` is the partial quotient of line ``h``.  On a precision
    shortfall the context precision is doubled and the whole run retried.
    """
    if direction not in ("forward", "backward", "both"):
        raise InvalidInputError(f"unknown direction {direction!r}")
    if not norm_check(ctx, line.P, line.Q):
        raise CorruptedLineError(f"line {line.h}: Q does not divide the norm of P")
    while True:
        try:
            return _expand(ctx, line, steps, direction)
        except PrecisionError:
            ctx = ctx.with_precision(2 * ctx.precision)


def _expand(ctx, line, steps, direction):
    lines = {line.h: line}
    quotients = {}
    if direction in ("forward", "both"):
        cur = line
        for _ in range(steps):
            a, nxt = surd_step(ctx, cur)
            quotients[cur.h] = a
            lines[nxt.h] = nxt
            cur = nxt
    if direction in ("backward", "both"):
        cur = line
        for _ in range(steps):
            a, prev = surd_step_back(ctx, cur)
            quotients[prev.h] = a
            lines[prev.h] = prev
            cur = prev
    return [lines[h] for h in sorted(lines)], quotients


def context_for_steps(A, R, steps):
    """Context with the default precision for an expansion of ``steps`` lines."""
    return SurdContext(A, R, -(steps + DEFAULT_EXTRA_TERMS))

