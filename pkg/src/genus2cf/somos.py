"""Gap-6 Somos sequences attached to reduced curves.

The sequence ``T`` is tied to the continued fraction through
``T[h-1] * T[h+1] == d[h] * T[h]**2`` and then satisfies
``T[h-3] T[h+3] == a T[h-2] T[h+2] + b T[h]**2`` with
``a = v**2`` and ``b = -v**3 (g + w f + w**3)``.
"""
from dataclasses import dataclass
from typing import Optional, Tuple

from .errors import InvalidInputError, SingularSequenceError, UnsupportedModeError
from .exactfield import common_field, format_scalar
from .normal import REDUCED, lines_between


@dataclass(frozen=True)
class SomosWindow:
    """Consecutive terms ``T[offset], T[offset+1], ...``."""

    offset: int
    terms: Tuple
    coeffs: Optional[Tuple] = None

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        if self.coeffs is not None:
            object.__setattr__(self, "coeffs", tuple(self.coeffs))

    @property
    def field(self):
        vals = list(self.terms) + list(self.coeffs or ())
        return common_field(*vals)

    @property
    def last(self):
        return self.offset + len(self.terms) - 1

    def __len__(self):
        return len(self.terms)

    def __getitem__(self, h):
        i = h - self.offset
        if not 0 <= i < len(self.terms):
            raise IndexError(f"T[{h}] outside window [{self.offset}, {self.last}]")
        return self.terms[i]

    def indices(self):
        return range(self.offset, self.offset + len(self.terms))

    def is_integral(self):
        return all(getattr(t, "denominator", 1) == 1 for t in self.terms)

    def d_values(self):
        """``d[h] = T[h-1] T[h+1] / T[h]**2`` for every interior h."""
        out = {}
        for h in range(self.offset + 1, self.last):
            if not self[h]:
                raise SingularSequenceError(f"T[{h}] = 0", index=h)
            out[h] = self[h - 1] * self[h + 1] / (self[h] * self[h])
        return out

    def __str__(self):
        return ", ".join(format_scalar(t) for t in self.terms)


def gap6_coeffs(curve):
    """``(v**2, -v**3 (g + w f + w**3))`` for a reduced curve."""
    if curve.mode != REDUCED:
        raise UnsupportedModeError("gap-6 coefficients exist only for reduced curves")
    v, w = curve.v, curve.w
    return v * v, -v ** 3 * (curve.g + w * curve.f + w ** 3)


def d_stream(curve, seed, h_from, h_to, stepper=None):
    """``d[h]`` for ``h_from <= h <= h_to`` by stepping the normal engine."""
    if h_from > h_to:
        raise InvalidInputError("empty index range")
    lo, hi = min(h_from, seed.h), max(h_to, seed.h)
    lines = lines_between(curve, seed, lo, hi, stepper=stepper)
    return [ln.d for ln in lines if h_from <= ln.h <= h_to]


def somos_from_d(d, T_first, T_second, h0=0, coeffs=None):
    """Terms ``T[h0-1] .. T[h0+len(d)]`` from ``d[h0..]`` and two seeds.

    ``T[h0-1] = T_first``, ``T[h0] = T_second``; each ``d[h]`` produces
    ``T[h+1] = d[h] T[h]**2 / T[h-1]``.
    """
    if not T_first or not T_second:
        raise SingularSequenceError("seed terms must be nonzero", index=h0 - 1 if not T_first else h0)
    terms = [T_first, T_second]
    for i, dh in enumerate(d):
        h = h0 + i
        nxt = dh * terms[-1] * terms[-1] / terms[-2]
        if not nxt:
            raise SingularSequenceError(f"T[{h + 1}] vanishes", index=h + 1)
        terms.append(nxt)
    return SomosWindow(h0 - 1, terms, coeffs)


def somos_from_curve(curve, seed, t0, t1, h_from, h_to, stepper=None):
    """Terms ``T[h_from..h_to]`` with ``T[seed.h] = t0`` and ``T[seed.h+1] = t1``.

    Coefficients are attached when the curve is reduced.
    """
    s = seed.h
    if not (h_from <= s and s + 1 <= h_to):
        raise InvalidInputError("window must contain the two seeded indices")
    fld = curve.field
    t0, t1 = fld(t0), fld(t1)
    ds = dict(zip(range(h_from + 1, h_to), d_stream(curve, seed, h_from + 1, h_to - 1, stepper)))
    if not t0 or not t1:
        raise SingularSequenceError("seed terms must be nonzero", index=s if not t0 else s + 1)
    T = {s: t0, s + 1: t1}
    for h in range(s + 1, h_to):
        T[h + 1] = ds[h] * T[h] * T[h] / T[h - 1]
        if not T[h + 1] and h + 1 < h_to:
            raise SingularSequenceError(f"T[{h + 1}] vanishes", index=h + 1)
    for h in range(s, h_from, -1):
        T[h - 1] = ds[h] * T[h] * T[h] / T[h + 1]
        if not T[h - 1] and h - 1 > h_from:
            raise SingularSequenceError(f"T[{h - 1}] vanishes", index=h - 1)
    coeffs = gap6_coeffs(curve) if curve.mode == REDUCED else None
    return SomosWindow(h_from, [T[h] for h in range(h_from, h_to + 1)], coeffs)


def _coeffs(window, coeffs):
    c = coeffs or window.coeffs
    if c is None:
        raise InvalidInputError("window carries no (a, b) coefficients")
    return c


def gap6_check(window, coeffs=None):
    """Indices h where ``T[h-3]T[h+3] != a T[h-2]T[h+2] + b T[h]**2``."""
    a, b = _coeffs(window, coeffs)
    bad = []
    for h in range(window.offset + 3, window.last - 2):
        T = window
        if T[h - 3] * T[h + 3] != a * T[h - 2] * T[h + 2] + b * T[h] * T[h]:
            bad.append(h)
    return bad


def gap6_extend(window, count, direction="forward", coeffs=None):
    """Append (or prepend) ``count`` terms using the gap-6 relation."""
    if count < 0:
        raise InvalidInputError("count must be >= 0")
    if direction not in ("forward", "backward"):
        raise InvalidInputError(f"unknown direction {direction!r}")
    a, b = _coeffs(window, coeffs)
    if count == 0:
        return window
    if len(window) < 6:
        raise InvalidInputError("need at least six consecutive terms")
    terms = list(window.terms)
    offset = window.offset
    for _ in range(count):
        if direction == "forward":
            # new term is T[h+3] with h = last - 2
            t = terms
            div = t[-6]
            if not div:
                raise SingularSequenceError("zero divisor while extending", index=offset + len(t) - 6)
            terms.append((a * t[-5] * t[-1] + b * t[-3] * t[-3]) / div)
        else:
            t = terms
            div = t[5]
            if not div:
                raise SingularSequenceError("zero divisor while extending", index=offset + 5)
            terms.insert(0, (a * t[0] * t[4] + b * t[2] * t[2]) / div)
            offset -= 1
    return SomosWindow(offset, terms, window.coeffs if coeffs is None else coeffs)
