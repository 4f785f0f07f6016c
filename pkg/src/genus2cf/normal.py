"""Parametric continued fraction engine for sqrt of a monic sextic.

A line of the expansion is the quintuple ``(d, e, u, v, w)`` describing the
complete quotient ``(Z + d(X+e)) / u(X^2 - vX + w)``.  Lines are stepped by
matching coefficients between consecutive lines, never by series arithmetic;
see :mod:`genus2cf.generic` for the series-based engine.
"""
import random
from dataclasses import dataclass, field as dc_field
from typing import List

from .errors import (
    DegeneracyError,
    GenerationFailure,
    InconsistencyError,
    InvalidInputError,
    InvalidWindowError,
)
from .exactfield import QQ, Poly, common_field, format_scalar

FULL = "full"
REDUCED = "reduced"


@dataclass(frozen=True)
class CurveParams:
    """``Y^2 = A^2 + 4R`` with ``A = X^3 + fX + g``.

    Full mode: ``R = u(X^2 - vX + w)``.  Reduced mode: ``R = -v(X - w)``.
    """

    mode: str
    f: object
    g: object
    v: object
    w: object
    u: object = None
    field: object = dc_field(default=None, compare=False)

    def __post_init__(self):
        if self.mode not in (FULL, REDUCED):
            raise InvalidInputError(f"unknown curve mode {self.mode!r}")
        vals = [self.f, self.g, self.v, self.w]
        if self.mode == FULL:
            if self.u is None:
                raise InvalidInputError("full mode needs u")
            vals.append(self.u)
        elif self.u is not None:
            raise InvalidInputError("reduced mode takes no u")
        fld = self.field or common_field(*vals)
        object.__setattr__(self, "field", fld)
        for name in ("f", "g", "v", "w", "u"):
            val = getattr(self, name)
            if val is not None:
                object.__setattr__(self, name, fld(val))
        if self.mode == FULL and not self.u:
            raise InvalidInputError("full mode requires u != 0")
        if self.mode == REDUCED and not self.v:
            raise InvalidInputError("reduced mode requires v != 0")

    @classmethod
    def reduced(cls, f, g, v, w, field=None):
        return cls(REDUCED, f, g, v, w, field=field)

    @classmethod
    def full(cls, f, g, u, v, w, field=None):
        return cls(FULL, f, g, v, w, u=u, field=field)

    @property
    def A(self):
        return Poly([self.g, self.f, 0, 1], self.field)

    @property
    def R(self):
        r2, r1, r0 = self.remainder_coeffs
        return Poly([r0, r1, r2], self.field)

    @property
    def D(self):
        A = self.A
        return A * A + 4 * self.R

    @property
    def remainder_coeffs(self):
        """``(r2, r1, r0)`` with ``R = r2 X^2 + r1 X + r0``."""
        if self.mode == FULL:
            return self.u, -self.u * self.v, self.u * self.w
        return self.field.zero, -self.v, self.v * self.w

    @property
    def uvw_terms(self):
        """The products ``(u, uv, uw)``; reduced mode reads them as ``(0, v, vw)``."""
        r2, r1, r0 = self.remainder_coeffs
        return r2, -r1, r0

    def __str__(self):
        names = ("f", "g", "u", "v", "w") if self.mode == FULL else ("f", "g", "v", "w")
        return f"{self.mode}(" + ", ".join(f"{n}={format_scalar(getattr(self, n))}" for n in names) + ")"


@dataclass(frozen=True)
class NormalLine:
    """Complete quotient ``(Z + d(X+e)) / u(X^2 - vX + w)`` at index ``h``."""

    h: int
    d: object
    e: object
    u: object
    v: object
    w: object

    def __post_init__(self):
        fld = common_field(self.d, self.e, self.u, self.v, self.w)
        for name in ("d", "e", "u", "v", "w"):
            object.__setattr__(self, name, fld(getattr(self, name)))
        if not self.d or not self.u:
            raise DegeneracyError(f"line {self.h} has d = 0 or u = 0", h=self.h)

    @property
    def field(self):
        return common_field(self.d)

    @property
    def P(self):
        return Poly([self.d * self.e, self.d], self.field)

    @property
    def Q(self):
        return Poly([self.u * self.w, -self.u * self.v, self.u], self.field)

    def astuple(self):
        return (self.d, self.e, self.u, self.v, self.w)

    def replace(self, **kw):
        vals = dict(h=self.h, d=self.d, e=self.e, u=self.u, v=self.v, w=self.w)
        vals.update(kw)
        return NormalLine(**vals)

    def __str__(self):
        return f"h={self.h}: (" + ", ".join(format_scalar(x) for x in self.astuple()) + ")"


def _in_field(curve, line):
    fld = curve.field
    if line.field != fld:
        line = NormalLine(line.h, *(fld(x) for x in line.astuple()))
    return line


def norm_of(curve, P):
    """``(Z + P)(Zbar + P) = P^2 + A P - R``."""
    return P * P + curve.A * P - curve.R


def seed_validate(curve, line):
    """True iff ``X^2 - vX + w`` divides the norm of ``d(X+e)``."""
    try:
        line = _in_field(curve, line)
    except Exception:
        return False
    monic_q = Poly([line.w, -line.v, 1], curve.field)
    return divmod(norm_of(curve, line.P), monic_q)[1].is_zero()


def partial_quotient(line):
    """The degree-one partial quotient ``(X + v)/u``."""
    return Poly([line.v / line.u, 1 / line.u], line.field)


def _pair_residuals(curve, lo, hi):
    """Residuals of the X^1 and X^0 coefficient equations between two lines."""
    r2, r1, r0 = curve.remainder_coeffs
    f, g = curve.f, curve.g
    d, e = hi.d, hi.e
    x1 = (f + d) * e + (g + d * e) - (-lo.v * hi.w - hi.v * lo.w + r1 / d)
    x0 = (g + d * e) * e - (lo.w * hi.w + r0 / d)
    return x1, x0


def _check_pair(curve, lo, hi):
    x1, x0 = _pair_residuals(curve, lo, hi)
    if x1 or x0:
        raise InconsistencyError(
            f"coefficient equations fail between lines {lo.h} and {hi.h} "
            f"(X^1 residual {format_scalar(x1)}, X^0 residual {format_scalar(x0)})"
        )


def step_forward(curve, line):
    """Line ``h+1`` from line ``h``."""
    line = _in_field(curve, line)
    r2 = curve.remainder_coeffs[0]
    f, g = curve.f, curve.g
    d1 = -line.v * line.v + line.w - f - line.d
    if not d1:
        raise DegeneracyError(
            f"d vanishes at h={line.h + 1}: partial quotient of degree > 1; use the generic engine",
            h=line.h + 1,
        )
    e1 = (line.v * line.w - g - line.d * line.e) / d1
    u1 = -d1 / line.u
    v1 = -line.v - e1
    w1 = (f + d1) - line.v * v1 - line.w - r2 / d1
    nxt = NormalLine(line.h + 1, d1, e1, u1, v1, w1)
    _check_pair(curve, line, nxt)
    return nxt


def step_backward(curve, line):
    """Line ``h-1`` from line ``h``; inverse of :func:`step_forward`."""
    line = _in_field(curve, line)
    r2 = curve.remainder_coeffs[0]
    f, g = curve.f, curve.g
    u0 = -line.d / line.u
    v0 = -line.e - line.v
    w0 = (f + line.d) - v0 * line.v - line.w - r2 / line.d
    d0 = -v0 * v0 + w0 - f - line.d
    if not d0:
        raise DegeneracyError(
            f"d vanishes at h={line.h - 1}: partial quotient of degree > 1; use the generic engine",
            h=line.h - 1,
        )
    e0 = (v0 * w0 - g - line.d * line.e) / d0
    prev = NormalLine(line.h - 1, d0, e0, u0, v0, w0)
    _check_pair(curve, prev, line)
    return prev


def lines_between(curve, seed, h_from, h_to, stepper=None):
    """Lines ``h_from .. h_to`` (inclusive) reached from ``seed`` by stepping."""
    if not h_from <= seed.h <= h_to:
        raise InvalidInputError("window must contain the seed index")
    fwd = stepper or step_forward
    seed = _in_field(curve, seed)
    out = [seed]
    while out[-1].h < h_to:
        out.append(fwd(curve, out[-1]))
    back = []
    cur = seed
    while cur.h > h_from:
        cur = step_backward(curve, cur)
        back.append(cur)
    return back[::-1] + out


def lines_until_degenerate(curve, seed, steps, stepper=None):
    """Forward lines ``seed.h .. seed.h+steps``, stopping early at a degeneracy."""
    fwd = stepper or step_forward
    out = [_in_field(curve, seed)]
    for _ in range(steps):
        try:
            out.append(fwd(curve, out[-1]))
        except DegeneracyError:
            break
    return out


# ---------------------------------------------------------------------------
# identity battery


@dataclass
class IdentityCheck:
    name: str
    h: int
    passed: bool
    values: tuple

    def __str__(self):
        status = "ok" if self.passed else "FAIL"
        return f"{self.name}@{self.h}: {status}"


@dataclass
class IdentityReport:
    mode: str
    checks: List[IdentityCheck] = dc_field(default_factory=list)

    @property
    def ok(self):
        return all(c.passed for c in self.checks)

    @property
    def failures(self):
        return [c for c in self.checks if not c.passed]

    def names(self):
        return sorted({c.name for c in self.checks})


def _common_identities(c):
    f, g = c.f, c.g
    U, UV, UW = c.uvw_terms
    r2, r1, r0 = c.remainder_coeffs

    # each entry: (name, lowest offset, highest offset, fn(L) -> values that must agree)
    ids = [
        ("d-recursion", 0, 1, lambda L: (L(0).d + L(1).d + f, -L(0).v ** 2 + L(0).w)),
        ("e-recursion", 0, 1, lambda L: (g + L(0).d * L(0).e + L(1).d * L(1).e, L(0).v * L(0).w)),
        ("norm-x4", 0, 1, lambda L: (L(1).d, -L(0).u * L(1).u)),
        ("norm-x3", 0, 1, lambda L: (L(1).e, -L(0).v - L(1).v)),
        ("norm-x2", 0, 1, lambda L: (
            f + L(1).d, L(0).v * L(1).v + L(0).w + L(1).w + r2 / L(1).d)),
        ("norm-x1", 0, 1, lambda L: (
            (f + L(1).d) * L(1).e + (g + L(1).d * L(1).e),
            -L(0).v * L(1).w - L(1).v * L(0).w - UV / L(1).d)),
        ("norm-x0", 0, 1, lambda L: (
            (g + L(1).d * L(1).e) * L(1).e, L(0).w * L(1).w + UW / L(1).d)),
        ("triple-a", 0, 1, lambda L: (
            L(1).d * (L(0).v * L(1).e - L(1).w), L(0).d * L(1).d + U)),
        ("triple-b", 0, 1, lambda L: (
            -L(0).v * L(1).d * (L(0).v * L(1).e - L(1).w),
            L(0).d * L(1).d * (L(0).e + L(1).e) - UV)),
        ("triple-c", 0, 1, lambda L: (
            L(0).w * L(1).d * (L(0).v * L(1).e - L(1).w),
            L(0).d * L(1).d * L(0).e * L(1).e + UW)),
        ("sum-product-a", 0, 1, lambda L: (
            L(0).d * L(1).d * (L(0).e + L(1).e + L(0).v), UV - U * L(0).v)),
        ("sum-product-b", 0, 1, lambda L: (
            L(0).d * L(1).d * (L(0).e * L(1).e - L(0).w), -(UW - U * L(0).w))),
        ("three-way", -1, 1, lambda L: (
            L(0).d * L(1).d + U,
            L(1).d * (L(0).v * L(1).e - L(1).w),
            L(0).d * (L(0).v * L(0).e - L(-1).w))),
        ("quadratic-e", -1, 0, lambda L: (
            L(0).e ** 2 * (L(-1).v * L(0).v + L(-1).w + L(0).w)
            + L(0).e * (L(-1).v * L(0).w + L(0).v * L(-1).w) + L(-1).w * L(0).w,
            -(U * L(0).e ** 2 + UV * L(0).e + UW) / L(0).d)),
        ("pair-product", -1, 1, lambda L: (
            (L(-1).d * L(0).d + U) * (L(0).d * L(1).d + U),
            -L(0).d * (U * L(0).e ** 2 + UV * L(0).e + UW))),
    ]
    return ids


def _reduced_identities(c):
    f, g, v, w = c.f, c.g, c.v, c.w
    somos_b = g + w * f + w ** 3

    def d(L, *ks):
        out = c.field.one
        for k in ks:
            out *= L(k).d
        return out

    return [
        ("triple-product", -1, 1, lambda L: (d(L, -1, 0, 1), -v * (L(0).e + w))),
        ("chain-4", -1, 2, lambda L: (
            d(L, -1, 0, 0, 1, 1, 2), v ** 2 * (L(0).w - w * L(0).v + w ** 2))),
        ("chain-5", -2, 2, lambda L: (
            d(L, -2, -1, -1, -1, 0, 0, 0, 0, 1, 1, 1, 2),
            v ** 4 * (
                L(-1).w * L(0).w
                + w ** 2 * (L(-1).v * L(0).v + (L(-1).w + L(0).w))
                - w * (L(-1).v * L(0).w + L(-1).w * L(0).v)
                - w ** 3 * (L(-1).v + L(0).v)
                + w ** 4),
            v ** 4 * (L(0).e + w) * ((g + L(0).d * L(0).e) + w * (f + L(0).d) + w ** 3))),
        ("chain-quintic", -2, 2, lambda L: (
            d(L, -2, -1, -1, 0, 0, 0, 1, 1, 2),
            -v ** 3 * ((g + L(0).d * L(0).e) + w * (f + L(0).d) + w ** 3))),
        ("gap6-product", -2, 2, lambda L: (
            d(L, -2, -1, -1, 0, 0, 0, 1, 1, 2),
            v ** 2 * d(L, -1, 0, 0, 1) - v ** 3 * somos_b)),
    ]


def identity_names(mode):
    dummy = CurveParams.reduced(0, 0, 1, 0) if mode == REDUCED else CurveParams.full(0, 0, 1, 0, 0)
    ids = _common_identities(dummy)
    if mode == REDUCED:
        ids += _reduced_identities(dummy)
    return [name for name, *_ in ids]


def identity_suite(curve, lines):
    """Evaluate every applicable identity on a contiguous window of lines."""
    lines = list(lines)
    report = IdentityReport(curve.mode)
    if not lines:
        return report
    h0 = lines[0].h
    for i, ln in enumerate(lines):
        if ln.h != h0 + i:
            raise InvalidWindowError("lines must be consecutive in h")
    by_h = {ln.h: _in_field(curve, ln) for ln in lines}
    h1 = lines[-1].h
    ids = _common_identities(curve)
    if curve.mode == REDUCED:
        ids += _reduced_identities(curve)
    for name, lo, hi, fn in ids:
        for h in range(h0 - lo, h1 - hi + 1):
            values = fn(lambda k, h=h: by_h[h + k])
            passed = all(x == values[0] for x in values[1:])
            report.checks.append(IdentityCheck(name, h, passed, tuple(values)))
    return report


# ---------------------------------------------------------------------------
# random instances


def _draw(rng, fld, bound, nonzero=False):
    if fld == QQ:
        while True:
            x = rng.randint(-bound, bound)
            if x or not nonzero:
                return fld(x)
    while True:
        x = fld(rng.randrange(fld.p))
        if x or not nonzero:
            return x


def random_instance(rng_seed, mode=REDUCED, coefficient_bound=3, field=QQ, max_tries=1000):
    """A random curve together with a valid seed line at h = 0.

    Line data ``d0, e0, u0, v0, w0, d1, e1`` (and ``u`` in full mode) are
    drawn freely; ``f, g`` and the remainder parameters are then solved for
    so that lines 0 and 1 are consistent.  Over Q the draws are integers in
    ``[-coefficient_bound, coefficient_bound]``; over F_p they are uniform.
    """
    if coefficient_bound < 1:
        raise InvalidInputError("coefficient_bound must be >= 1")
    if mode not in (FULL, REDUCED):
        raise InvalidInputError(f"unknown mode {mode!r}")
    rng = random.Random(rng_seed)
    for _ in range(max_tries):
        draw = lambda nonzero=False: _draw(rng, field, coefficient_bound, nonzero)
        d0, e0, u0, v0, w0 = draw(True), draw(), draw(True), draw(), draw()
        d1, e1 = draw(True), draw()
        f = -v0 * v0 + w0 - d0 - d1
        g = v0 * w0 - d0 * e0 - d1 * e1
        if mode == FULL:
            u = draw(True)
            v = v0 + d0 * d1 * (e0 + e1 + v0) / u
            w = w0 - d0 * d1 * (e0 * e1 - w0) / u
            curve = CurveParams.full(f, g, u, v, w, field=field)
        else:
            v = d0 * d1 * (e0 + e1 + v0)
            if not v:
                continue
            w = -d0 * d1 * (e0 * e1 - w0) / v
            curve = CurveParams.reduced(f, g, v, w, field=field)
        seed = NormalLine(0, d0, e0, u0, v0, w0)
        if not seed_validate(curve, seed):
            continue
        try:
            nxt = step_forward(curve, seed)
        except (DegeneracyError, InconsistencyError):
            continue
        if (nxt.d, nxt.e) != (d1, e1):
            continue
        return curve, seed
    raise GenerationFailure(f"no valid instance after {max_tries} draws")
