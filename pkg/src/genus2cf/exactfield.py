"""Exact scalars, dense univariate polynomials and truncated Laurent series.

Scalars over Q are :class:`fractions.Fraction`; scalars over a prime field
F_p are :class:`Mod`.  Plain ``int`` values are accepted everywhere and
coerce into whichever field they meet.
"""
import math
import re
from fractions import Fraction
from functools import lru_cache

from .errors import (
    FieldMismatchError,
    InvalidInputError,
    InvalidScalarError,
    PrecisionError,
    UnsupportedRadicandError,
    ZeroPolynomialDivisionError,
)

NEG_INF = -math.inf

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")
_MOD_RE = re.compile(r"^\s*([+-]?\d+)\s+mod\s+(\d+)\s*$")


def normalize_rational(num, den):
    """Return ``num/den`` in lowest terms with a positive denominator."""
    if den == 0:
        raise InvalidScalarError("zero denominator")
    return Fraction(int(num), int(den))


# ---------------------------------------------------------------------------
# prime fields


class Mod:
    """Element of F_p, p prime and > 3."""

    __slots__ = ("value", "p")

    def __init__(self, value, p):
        self.value = value % p
        self.p = p

    def _other(self, other):
        if isinstance(other, Mod):
            if other.p != self.p:
                raise FieldMismatchError(f"F_{self.p} and F_{other.p} do not mix")
            return other.value
        if isinstance(other, int):
            return other % self.p
        if isinstance(other, Fraction):
            raise FieldMismatchError(f"cannot mix F_{self.p} with a rational")
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Mod(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Mod(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Mod(o - self.value, self.p)

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Mod(self.value * o, self.p)

    __rmul__ = __mul__

    def inverse(self):
        if self.value == 0:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.p}")
        return Mod(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * Mod(o, self.p).inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Mod(o, self.p) * self.inverse()

    def __neg__(self):
        return Mod(-self.value, self.p)

    def __pos__(self):
        return self

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** -n
        return Mod(pow(self.value, n, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, Mod):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"Mod({self.value}, {self.p})"

    def __str__(self):
        return f"{self.value} mod {self.p}"


class RationalField:
    name = "QQ"
    characteristic = 0

    def __call__(self, x):
        if isinstance(x, Mod):
            raise FieldMismatchError("cannot coerce an F_p element into Q")
        if isinstance(x, str):
            x = parse_scalar(x)
            if isinstance(x, Mod):
                raise FieldMismatchError("expected a rational, got an F_p element")
            return x
        if isinstance(x, (int, Fraction)):
            return Fraction(x)
        raise InvalidScalarError(f"not an exact scalar: {x!r}")

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


class PrimeField:
    def __init__(self, p):
        from sympy import isprime

        if p <= 3 or not isprime(p):
            raise InvalidInputError(f"modulus must be a prime > 3, got {p}")
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"

    def __call__(self, x):
        if isinstance(x, str):
            x = parse_scalar(x)
        if isinstance(x, Mod):
            if x.p != self.p:
                raise FieldMismatchError(f"F_{x.p} element is not in F_{self.p}")
            return x
        if isinstance(x, int):
            return Mod(x, self.p)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise InvalidScalarError(f"{x} has no image in F_{self.p}")
            return Mod(x.numerator, self.p) / x.denominator
        raise InvalidScalarError(f"not an exact scalar: {x!r}")

    @property
    def zero(self):
        return Mod(0, self.p)

    @property
    def one(self):
        return Mod(1, self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return self.name


QQ = RationalField()


@lru_cache(maxsize=None)
def GF(p):
    return PrimeField(p)


def field_of(x):
    if isinstance(x, Mod):
        return GF(x.p)
    if isinstance(x, (int, Fraction)):
        return QQ
    raise InvalidScalarError(f"not an exact scalar: {x!r}")


def common_field(*xs):
    """The field shared by all non-int scalars in ``xs`` (QQ if none)."""
    field = None
    for x in xs:
        if isinstance(x, int) and not isinstance(x, bool):
            continue
        f = field_of(x)
        if field is None:
            field = f
        elif f != field:
            raise FieldMismatchError(f"{field!r} and {f!r} do not mix")
    return field or QQ


def format_scalar(x):
    """Canonical text: ``p/q``, ``p`` when q == 1, ``r mod p`` over F_p."""
    if isinstance(x, Mod):
        return str(x)
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_scalar(text, field=None):
    """Parse ``"p"``, ``"p/q"`` or ``"r mod p"``; floats are rejected."""
    if not isinstance(text, str):
        raise InvalidScalarError(f"expected text, got {text!r}")
    m = _MOD_RE.match(text)
    if m:
        value = GF(int(m.group(2)))(int(m.group(1)))
    else:
        m = _RATIONAL_RE.match(text)
        if not m:
            raise InvalidScalarError(f"unparseable scalar {text!r}")
        den = int(m.group(2)) if m.group(2) is not None else 1
        value = normalize_rational(int(m.group(1)), den)
    if field is not None:
        value = field(value)
    return value


# ---------------------------------------------------------------------------
# polynomials


class Poly:
    """Dense univariate polynomial, coefficients stored constant term first."""

    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs=(), field=None):
        coeffs = list(coeffs)
        if field is None:
            field = common_field(*coeffs)
        coeffs = [field(c) for c in coeffs]
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        self.coeffs = tuple(coeffs)
        self.field = field

    @classmethod
    def x(cls, field=QQ):
        return cls([0, 1], field)

    @classmethod
    def constant(cls, c, field=None):
        return cls([c], field)

    @classmethod
    def monomial(cls, c, n, field=None):
        return cls([0] * n + [c], field)

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def leading(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def __getitem__(self, n):
        if 0 <= n < len(self.coeffs):
            return self.coeffs[n]
        return self.field.zero

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.field != self.field:
                raise FieldMismatchError(f"{self.field!r} and {other.field!r} do not mix")
            return other
        if isinstance(other, (int, Fraction, Mod)):
            return Poly([other], self.field)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly([self[i] + other[i] for i in range(n)], self.field)

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs], self.field)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return Poly([], self.field)
        out = [self.field.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out, self.field)

    __rmul__ = __mul__

    def __pow__(self, n):
        result = Poly([1], self.field)
        for _ in range(n):
            result = result * self
        return result

    def __divmod__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return poly_divmod(self, other)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __truediv__(self, c):
        # scalar division only
        if isinstance(c, Poly):
            if c.degree != 0:
                return NotImplemented
            c = c.coeffs[0]
        c = self.field(c)
        return Poly([a / c for a in self.coeffs], self.field)

    def __call__(self, x):
        return poly_eval(self, x)

    def monic(self):
        return self / self.leading

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction, Mod)):
            if not other:
                return not self.coeffs
            return len(self.coeffs) == 1 and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        return f"Poly([{', '.join(format_scalar(c) for c in self.coeffs)}], {self.field!r})"

    def __str__(self):
        return self.format()

    def format(self, var="X"):
        if not self.coeffs:
            return "0"
        parts = []
        for n in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[n]
            if not c:
                continue
            if isinstance(c, Mod):
                neg, mag = False, c.value
                mag_text = str(mag)
            else:
                neg, mag = c < 0, abs(c)
                mag_text = format_scalar(mag)
                if mag.denominator != 1 and n > 0:
                    mag_text = f"({mag_text})"
            if n == 0:
                body = mag_text
            else:
                mono = var if n == 1 else f"{var}^{n}"
                body = mono if mag == 1 else mag_text + mono
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append(("- " if neg else "+ ") + body)
        return " ".join(parts)

    def to_list(self):
        return [format_scalar(c) for c in self.coeffs]

    @classmethod
    def from_list(cls, items, field=None):
        return cls([parse_scalar(s) if isinstance(s, str) else s for s in items], field)


def poly_divmod(a, b):
    """Euclidean division: ``a == q*b + r`` with ``deg r < deg b``."""
    if a.field != b.field:
        raise FieldMismatchError(f"{a.field!r} and {b.field!r} do not mix")
    if b.is_zero():
        raise ZeroPolynomialDivisionError("division by the zero polynomial")
    field = a.field
    rem = list(a.coeffs)
    db = len(b.coeffs) - 1
    inv_lead = field.one / b.leading
    quot = [field.zero] * max(len(rem) - db, 0)
    for k in range(len(rem) - 1 - db, -1, -1):
        c = rem[k + db] * inv_lead
        quot[k] = c
        if c:
            for j, bc in enumerate(b.coeffs):
                rem[k + j] -= c * bc
    return Poly(quot, field), Poly(rem[:db], field)


def poly_eval(p, x):
    """Horner evaluation of ``p`` at the scalar ``x``."""
    x = p.field(x)
    acc = p.field.zero
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def _divisors(n):
    from sympy import divisors

    return divisors(abs(n))


def rational_roots(p):
    """All rational roots of ``p`` via the rational root theorem."""
    if p.field != QQ:
        raise InvalidInputError("rational_roots needs a polynomial over Q")
    if p.is_zero():
        raise InvalidInputError("the zero polynomial has every root")
    den = math.lcm(*(c.denominator for c in p.coeffs))
    ints = [int(c * den) for c in p.coeffs]
    roots = set()
    # factor out X^k
    k = 0
    while ints[k] == 0:
        k += 1
    if k:
        roots.add(Fraction(0))
    ints = ints[k:]
    if len(ints) == 1:
        return roots
    if len(ints) == 2:
        roots.add(Fraction(-ints[0], ints[1]))
        return roots
    g = math.gcd(*ints)
    ints = [c // g for c in ints]
    q = Poly(ints, QQ)
    for num in _divisors(ints[0]):
        for den in _divisors(ints[-1]):
            for cand in (Fraction(num, den), Fraction(-num, den)):
                if cand not in roots and not poly_eval(q, cand):
                    roots.add(cand)
    return roots


# ---------------------------------------------------------------------------
# Laurent series at infinity


class LaurentSeries:
    """Truncated Laurent series in 1/X.

    ``coeffs[i]`` is the coefficient of ``X^(top - i)``.  Coefficients are
    known exactly for every exponent >= ``precision``; below that they are
    unknown.  ``precision == NEG_INF`` marks an exact (finite) series whose
    unstored coefficients are zero.
    """

    __slots__ = ("field", "top", "coeffs", "precision")

    def __init__(self, field, top, coeffs, precision):
        coeffs = list(coeffs)
        if precision == NEG_INF:
            while coeffs and not coeffs[-1]:
                coeffs.pop()
        else:
            want = top - precision + 1
            if want < 0:
                raise InvalidInputError("precision above top degree")
            coeffs = (coeffs + [field.zero] * want)[:want]
        self.field = field
        self.top = top
        self.coeffs = tuple(coeffs)
        self.precision = precision

    @classmethod
    def from_poly(cls, p):
        if p.is_zero():
            return cls(p.field, 0, [], NEG_INF)
        return cls(p.field, p.degree, reversed(p.coeffs), NEG_INF)

    @property
    def exact(self):
        return self.precision == NEG_INF

    @property
    def low(self):
        """Lowest exponent at which a coefficient is stored."""
        return self.top - len(self.coeffs) + 1

    def coeff(self, n):
        if n > self.top:
            return self.field.zero
        if n < self.precision:
            raise PrecisionError(f"coefficient of X^{n} is below precision {self.precision}")
        i = self.top - n
        return self.coeffs[i] if i < len(self.coeffs) else self.field.zero

    def _as_series(self, other):
        if isinstance(other, LaurentSeries):
            if other.field != self.field:
                raise FieldMismatchError(f"{self.field!r} and {other.field!r} do not mix")
            return other
        if isinstance(other, Poly):
            if other.field != self.field:
                raise FieldMismatchError(f"{self.field!r} and {other.field!r} do not mix")
            return LaurentSeries.from_poly(other)
        if isinstance(other, (int, Fraction, Mod)):
            return LaurentSeries.from_poly(Poly([other], self.field))
        return None

    def __add__(self, other):
        other = self._as_series(other)
        if other is None:
            return NotImplemented
        top = max(self.top, other.top)
        prec = max(self.precision, other.precision)
        bottom = prec if prec != NEG_INF else min(self.low, other.low)
        coeffs = [self.coeff(n) + other.coeff(n) for n in range(top, bottom - 1, -1)]
        return LaurentSeries(self.field, top, coeffs, prec)

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries(self.field, self.top, [-c for c in self.coeffs], self.precision)

    def __sub__(self, other):
        other = self._as_series(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._as_series(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, c):
        c = self.field(c)
        return LaurentSeries(self.field, self.top, [c * a for a in self.coeffs], self.precision)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Mod)):
            return self.scale(other)
        other = self._as_series(other)
        if other is None:
            return NotImplemented
        top = self.top + other.top
        prec = max(self.top + other.precision, other.top + self.precision)
        if prec == NEG_INF:
            bottom = self.low + other.low
        else:
            bottom = prec
        out = [self.field.zero] * (top - bottom + 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                k = i + j
                if k >= len(out):
                    break
                out[k] += a * b
        return LaurentSeries(self.field, top, out, prec)

    __rmul__ = __mul__

    def div_poly(self, q, precision=None):
        """Series quotient ``self / q`` for a nonzero polynomial ``q``.

        For an exact dividend the quotient is exact when ``q`` divides it;
        otherwise ``precision`` bounds how far down it is expanded.
        """
        if q.field != self.field:
            raise FieldMismatchError(f"{self.field!r} and {q.field!r} do not mix")
        if q.is_zero():
            raise ZeroPolynomialDivisionError("series division by zero polynomial")
        dq = q.degree
        top = self.top - dq
        if self.exact:
            stop = precision if precision is not None else top - 64
        else:
            stop = self.precision - dq
            if precision is not None:
                stop = max(stop, precision)
        inv_lead = self.field.one / q.leading
        bottom = self.low if self.exact else self.precision
        rem = {n: self.coeff(n) for n in range(self.top, min(bottom, stop + dq) - 1, -1)}
        out = []
        for n in range(top, stop - 1, -1):
            c = rem.get(n + dq, self.field.zero) * inv_lead
            out.append(c)
            if c:
                for j, qc in enumerate(q.coeffs):
                    rem[n + j] = rem.get(n + j, self.field.zero) - c * qc
            if self.exact and n + dq <= self.low and not any(rem.values()):
                return LaurentSeries(self.field, top, out, NEG_INF)
        return LaurentSeries(self.field, top, out, stop)

    def polynomial_part(self):
        if self.precision > 0:
            raise PrecisionError("series precision too coarse for its polynomial part")
        return Poly([self.coeff(n) for n in range(0, self.top + 1)], self.field)

    @property
    def degree(self):
        for i, c in enumerate(self.coeffs):
            if c:
                return self.top - i
        if self.exact:
            return NEG_INF
        raise PrecisionError("all known coefficients vanish; degree undetermined")

    def truncate(self, precision):
        if precision < self.precision:
            raise PrecisionError("cannot refine precision by truncation")
        return LaurentSeries(
            self.field, self.top, [self.coeff(n) for n in range(self.top, precision - 1, -1)], precision
        )

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (self.field, self.top, self.coeffs, self.precision) == (
            other.field, other.top, other.coeffs, other.precision,
        )

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{format_scalar(c)}*X^{self.top - i}")
        body = " + ".join(terms) or "0"
        if self.exact:
            return body
        return f"{body} + O(X^{self.precision - 1})"


def laurent_sqrt(D, precision):
    """Square root of a monic even-degree polynomial as a series at infinity.

    The result's coefficients are exact down to ``X^precision``; if ``D``
    is a perfect square the exact polynomial root is returned instead.
    """
    if D.is_zero() or D.degree % 2 or D.leading != 1:
        raise UnsupportedRadicandError("radicand must be monic of even degree")
    field = D.field
    half = D.degree // 2
    if precision > half:
        raise InvalidInputError("precision above the top degree")
    inv2 = field.one / 2
    s = [field.one]
    for k in range(1, max(half, half - precision) + 1):
        acc = D[2 * half - k] if 2 * half - k >= 0 else field.zero
        for i in range(1, k):
            acc -= s[i] * s[k - i]
        s.append(acc * inv2)
    poly_part = Poly([s[half - n] if half - n < len(s) else 0 for n in range(half + 1)], field)
    if poly_part * poly_part == D:
        return LaurentSeries.from_poly(poly_part)
    return LaurentSeries(field, half, s[: half - precision + 1], precision)
