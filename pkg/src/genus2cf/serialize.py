"""JSON forms for curves, lines, windows and recovery candidates.

Scalars are always strings in canonical text form (``"-1/2"``, ``"3 mod 7"``).
"""
import json

from .errors import InvalidInputError
from .exactfield import Poly, common_field, format_scalar, parse_scalar
from .generic import SurdLine
from .normal import FULL, REDUCED, CurveParams, NormalLine
from .recover import RecoveryCandidate
from .somos import SomosWindow

_s = format_scalar


def _p(text):
    if isinstance(text, int) and not isinstance(text, bool):
        return text
    return parse_scalar(text)


def _require(d, keys, what):
    missing = [k for k in keys if k not in d]
    if missing:
        raise InvalidInputError(f"{what} is missing {', '.join(missing)}")


def curve_to_dict(curve):
    out = {"mode": curve.mode, "f": _s(curve.f), "g": _s(curve.g)}
    if curve.mode == FULL:
        out["u"] = _s(curve.u)
    out["v"] = _s(curve.v)
    out["w"] = _s(curve.w)
    return out


def curve_from_dict(d, field=None):
    mode = d.get("mode") or (FULL if "u" in d else REDUCED)
    if mode == FULL:
        _require(d, ("f", "g", "u", "v", "w"), "full curve")
        return CurveParams.full(*(_p(d[k]) for k in ("f", "g", "u", "v", "w")), field=field)
    if mode == REDUCED:
        _require(d, ("f", "g", "v", "w"), "reduced curve")
        return CurveParams.reduced(*(_p(d[k]) for k in ("f", "g", "v", "w")), field=field)
    raise InvalidInputError(f"unknown curve mode {mode!r}")


def line_to_dict(line):
    return {"h": line.h, **{k: _s(getattr(line, k)) for k in ("d", "e", "u", "v", "w")}}


def line_from_dict(d, field=None):
    _require(d, ("d", "e", "u", "v", "w"), "line")
    vals = [_p(d[k]) for k in ("d", "e", "u", "v", "w")]
    if field is not None:
        vals = [field(x) for x in vals]
    return NormalLine(int(d.get("h", 0)), *vals)


def surd_line_to_dict(line):
    return {"h": line.h, "P": line.P.to_list(), "Q": line.Q.to_list()}


def surd_line_from_dict(d, field=None):
    _require(d, ("P", "Q"), "surd line")
    P = [_p(x) for x in d["P"]]
    Q = [_p(x) for x in d["Q"]]
    fld = field or common_field(*P, *Q)
    return SurdLine(int(d.get("h", 0)), Poly(P, fld), Poly(Q, fld))


def window_to_dict(window):
    out = {"offset": window.offset}
    if window.coeffs is not None:
        out["a"], out["b"] = (_s(c) for c in window.coeffs)
    out["terms"] = [_s(t) for t in window.terms]
    return out


def window_from_dict(d):
    _require(d, ("offset", "terms"), "window")
    coeffs = None
    if "a" in d or "b" in d:
        _require(d, ("a", "b"), "window")
        coeffs = (_p(d["a"]), _p(d["b"]))
    return SomosWindow(int(d["offset"]), [_p(t) for t in d["terms"]], coeffs)


def candidate_to_dict(cand):
    out = {
        "curve": curve_to_dict(cand.curve),
        "seed": line_to_dict(cand.seed),
        "v_branch": _s(cand.v_branch),
        "verified": cand.verified,
    }
    if cand.constraint_poly is not None:
        out["constraint_poly"] = cand.constraint_poly.to_list()
    return out


def candidate_from_dict(d):
    _require(d, ("curve", "seed", "v_branch", "verified"), "candidate")
    cp = d.get("constraint_poly")
    return RecoveryCandidate(
        curve=curve_from_dict(d["curve"]),
        seed=line_from_dict(d["seed"]),
        v_branch=_p(d["v_branch"]),
        verified=bool(d["verified"]),
        constraint_poly=Poly.from_list(cp) if cp is not None else None,
    )


_ENCODERS = [
    (CurveParams, curve_to_dict),
    (NormalLine, line_to_dict),
    (SurdLine, surd_line_to_dict),
    (SomosWindow, window_to_dict),
    (RecoveryCandidate, candidate_to_dict),
]

_DECODERS = {
    "curve": curve_from_dict,
    "line": line_from_dict,
    "surd_line": surd_line_from_dict,
    "window": window_from_dict,
    "candidate": candidate_from_dict,
}


def to_dict(obj):
    for cls, enc in _ENCODERS:
        if isinstance(obj, cls):
            return enc(obj)
    raise TypeError(f"no JSON form for {type(obj).__name__}")


def dumps(obj, **kw):
    return json.dumps(to_dict(obj), **kw)


def loads(kind, text):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"invalid JSON: {exc}") from None
    return _DECODERS[kind](data)
