"""Recover a reduced curve and seed line from a gap-6 Somos window.

Four consecutive ``d`` values read off the sequence pin down ``e``, the line
data and finally ``f, g`` as polynomials in the unknown ``w``; the gap-6
coefficient ``b`` then gives one polynomial equation for ``w``.
"""
import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .errors import (
    DegeneracyError,
    Genus2CFError,
    InvalidInputError,
    NoRationalBranchError,
    SingularSequenceError,
    UnsupportedModeError,
)
from .exactfield import QQ, Poly, rational_roots
from .normal import CurveParams, NormalLine, identity_suite, lines_between, lines_until_degenerate, seed_validate, step_backward
from .somos import SomosWindow, gap6_coeffs, gap6_extend, somos_from_curve

MAX_CONSTRAINT_DEGREE = 4


@dataclass
class RecoveryCandidate:
    curve: CurveParams
    seed: NormalLine
    v_branch: Fraction
    verified: bool = False
    constraint_poly: Poly = dc_field(default=None, compare=False)


def _rational_sqrt(a):
    a = Fraction(a)
    if a < 0:
        return None
    n, d = math.isqrt(a.numerator), math.isqrt(a.denominator)
    if n * n != a.numerator or d * d != a.denominator:
        return None
    return Fraction(n, d)


def line_polys(d_quad, v):
    """Line data at the second index of ``d_quad`` as polynomials in ``w``.

    ``d_quad = (d[k-1], d[k], d[k+1], d[k+2])``; returns a dict with the
    scalars ``d_k, d_k1`` and the w-polynomials ``e_k, e_k1, v_k, w_k, f, g``.
    """
    dm, d0, d1, d2 = (QQ(x) for x in d_quad)
    v = QQ(v)
    W = Poly.x(QQ)
    e0 = Poly([-dm * d0 * d1 / v, -1])
    e1 = Poly([-d0 * d1 * d2 / v, -1])
    s = v / (d0 * d1)
    v_k = s - e0 - e1
    w_k = e0 * e1 + s * W
    f = -v_k * v_k + w_k - d0 - d1
    g = v_k * w_k - d0 * e0 - d1 * e1
    return {"d_k": d0, "d_k1": d1, "e_k": e0, "e_k1": e1, "v_k": v_k, "w_k": w_k, "f": f, "g": g}


def constraint_poly(d_quad, v, b):
    """``v**3 (g(w) + w f(w) + w**3) + b`` as a polynomial in ``w``."""
    if not v:
        raise InvalidInputError("v must be nonzero")
    if any(not x for x in d_quad):
        raise SingularSequenceError("d values must be nonzero")
    lp = line_polys(d_quad, v)
    W = Poly.x(QQ)
    v = QQ(v)
    return v ** 3 * (lp["g"] + W * lp["f"] + W ** 3) + QQ(b)


def _prepare(terms, offset, a, b):
    terms = [QQ(t) for t in terms]
    a, b = QQ(a), QQ(b)
    if len(terms) < 6:
        raise InvalidInputError("need at least six consecutive terms")
    for i, t in enumerate(terms):
        if not t:
            raise SingularSequenceError(f"T[{offset + i}] = 0", index=offset + i)
    if not a:
        raise UnsupportedModeError("a = 0 forces v = 0, outside the reduced normal form")
    root = _rational_sqrt(a)
    if root is None:
        raise NoRationalBranchError(f"a = {a} is not a rational square")
    window = SomosWindow(offset, terms, (a, b))
    # one term to the left so that d[offset] is available
    window = gap6_extend(window, 1, "backward")
    if not window[offset - 1]:
        raise SingularSequenceError(f"T[{offset - 1}] = 0 after extension", index=offset - 1)
    if len(window) < 7:
        window = gap6_extend(window, 7 - len(window), "forward")
    return terms, a, b, root, window


def recover_curve(terms, offset, a, b):
    """All candidate reduced curves generating ``terms`` (indexed from ``offset``)."""
    terms, a, b, root, window = _prepare(terms, offset, a, b)
    ds = window.d_values()
    k = offset + 1
    quad = [ds[k - 1], ds[k], ds[k + 1], ds[k + 2]]
    quad2 = [ds[k], ds[k + 1], ds[k + 2], ds[k + 3]] if k + 3 in ds else None
    candidates = []
    for v in sorted({-root, root}):
        cp = constraint_poly(quad, v, b)
        if cp.degree > MAX_CONSTRAINT_DEGREE:
            raise Genus2CFError(f"constraint polynomial of degree {cp.degree} exceeds {MAX_CONSTRAINT_DEGREE}")
        lp = line_polys(quad, v)
        if cp.is_zero():
            if quad2 is None:
                continue
            lp2 = line_polys(quad2, v)
            # f and g must not depend on which four d values were used
            gap = lp["f"] - lp2["f"]
            if gap.is_zero():
                gap = lp["g"] - lp2["g"]
            if gap.is_zero():
                continue
            roots = rational_roots(gap)
        else:
            roots = rational_roots(cp)
        for w in sorted(roots):
            f, g = lp["f"](w), lp["g"](w)
            if quad2 is not None:
                lp2 = line_polys(quad2, v)
                if lp2["f"](w) != f or lp2["g"](w) != g:
                    continue
            cand = _instantiate(lp, k, f, g, v, w, offset)
            if cand is None:
                continue
            cand.constraint_poly = cp
            cand.verified = candidate_verify(cand, terms, offset, a, b)
            candidates.append(cand)
    return candidates


def _instantiate(lp, k, f, g, v, w, offset):
    try:
        curve = CurveParams.reduced(f, g, v, w)
        line = NormalLine(k, lp["d_k"], lp["e_k"](w), 1, lp["v_k"](w), lp["w_k"](w))
        seed = lines_between(curve, line, offset, k)[0]
    except (DegeneracyError, Genus2CFError):
        return None
    return RecoveryCandidate(curve, seed.replace(u=1), v)


def candidate_verify(candidate, terms, offset, a, b):
    """Regenerate the window from the candidate and compare exactly."""
    terms = [QQ(t) for t in terms]
    curve, seed = candidate.curve, candidate.seed
    try:
        if not seed_validate(curve, seed):
            return False
        if gap6_coeffs(curve) != (QQ(a), QQ(b)):
            return False
        last = offset + len(terms) - 1
        regen = somos_from_curve(curve, seed, terms[0], terms[1], offset, max(last, offset + 1))
        if list(regen.terms) != terms:
            return False
        # lines beyond the window may degenerate without affecting it
        lines = lines_until_degenerate(curve, seed, last - offset)
        return identity_suite(curve, lines).ok
    except Genus2CFError:
        return False
