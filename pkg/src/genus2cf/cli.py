"""Command line interface.

Exit codes: 0 success, 1 mathematical failure (degeneracy, singular
sequence, failed verification), 2 invalid input.
"""
import argparse
import json
import sys

from . import generic, normal, recover, serialize, somos, verify
from .errors import (
    DegeneracyError,
    FieldMismatchError,
    Genus2CFError,
    InvalidInputError,
    InvalidScalarError,
    SingularSequenceError,
)
from .exactfield import GF, QQ, format_scalar, parse_scalar

EXIT_OK, EXIT_MATH, EXIT_INPUT = 0, 1, 2


def _parse_kv(text):
    out = {}
    for part in text.split(","):
        if not part.strip():
            continue
        if "=" not in part:
            raise InvalidInputError(f"expected key=value, got {part!r}")
        k, v = part.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def _load_mapping(text):
    """JSON object, ``@path`` to a JSON file, or ``k=v,k=v`` flags."""
    text = text.strip()
    if text.startswith("@"):
        with open(text[1:]) as fh:
            text = fh.read().strip()
    if text.startswith("{"):
        try:
            return json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidInputError(f"invalid JSON: {exc}") from None
    return _parse_kv(text)


def _curve(args):
    if not args.curve:
        raise InvalidInputError("--curve is required")
    return serialize.curve_from_dict(_load_mapping(args.curve))


def _seed(args, curve):
    if not args.seed:
        raise InvalidInputError("--seed is required")
    line = serialize.line_from_dict(_load_mapping(args.seed), curve.field)
    if not normal.seed_validate(curve, line):
        raise InvalidInputError(f"seed line {line} does not divide the norm")
    return line


def _scalar_list(text):
    return [parse_scalar(t) for t in text.split(",") if t.strip()]


# ---------------------------------------------------------------------------
# text layout


def _factored(Q):
    lead = Q.leading
    monic = Q.monic()
    inner = monic.format()
    if lead == 1:
        return f"({inner})"
    if lead == -1:
        return f"-({inner})"
    text = format_scalar(lead)
    if "/" in text or " " in text:
        text = f"({text})"
    return f"{text}({inner})"


def _numerator(sym, P):
    if P.is_zero():
        return sym
    text = P.format()
    if text.startswith("-"):
        return f"{sym} - {text[1:]}"
    return f"{sym} + {text}"


def render_row(P, Q, a=None, P_next=None):
    head = f"({_numerator('Z', P)})/{_factored(Q)}"
    if a is None:
        return head
    return f"{head} = {a.format()} - ({_numerator('Zbar', P_next)})/{_factored(Q)}"


def _rows(lines, quotients):
    rows = []
    by_h = {ln.h: ln for ln in lines}
    for ln in lines:
        nxt = by_h.get(ln.h + 1)
        if nxt is not None and ln.h in quotients:
            rows.append((ln, quotients[ln.h], nxt.P))
        else:
            rows.append((ln, None, None))
    return rows


# ---------------------------------------------------------------------------
# commands


def _range_for(direction, steps, h):
    if direction == "forward":
        return h, h + steps
    if direction == "backward":
        return h - steps, h
    return h - steps, h + steps


def cmd_expand(args, out):
    curve = _curve(args)
    seed = _seed(args, curve)
    lo, hi = _range_for(args.direction, args.steps, seed.h)
    engine = "normal"
    degenerate_at = None
    try:
        nlines = normal.lines_between(curve, seed, lo, hi)
        lines = [generic.SurdLine(ln.h, ln.P, ln.Q) for ln in nlines]
        quotients = {ln.h: normal.partial_quotient(ln) for ln in nlines if ln.h < hi}
    except DegeneracyError as exc:
        degenerate_at = exc.h
        if not args.generic:
            print(f"degenerate expansion at h={exc.h}: {exc}", file=sys.stderr)
            print("rerun with --generic to use the series engine", file=sys.stderr)
            return EXIT_MATH
        engine = "generic"
        ctx = generic.context_for_steps(curve.A, curve.R, args.steps)
        lines, quotients = generic.expand(ctx, generic.SurdLine(seed.h, seed.P, seed.Q), args.steps, args.direction)
        nlines = None
    rows = _rows(lines, quotients)
    if args.format == "json":
        payload = {
            "curve": serialize.curve_to_dict(curve),
            "seed": serialize.line_to_dict(seed),
            "engine": engine,
            "degenerate_at": degenerate_at,
            "lines": [],
        }
        for i, (ln, a, _) in enumerate(rows):
            item = serialize.surd_line_to_dict(ln)
            if nlines is not None:
                item.update(serialize.line_to_dict(nlines[i]))
            item["partial_quotient"] = a.to_list() if a is not None else None
            payload["lines"].append(item)
        out.write(json.dumps(payload, indent=2) + "\n")
    else:
        out.write(f"# {curve}  engine={engine}\n")
        if degenerate_at is not None:
            out.write(f"# parametric engine degenerate at h={degenerate_at}\n")
        for ln, a, P_next in rows:
            out.write(f"h={ln.h:>3}  {render_row(ln.P, ln.Q, a, P_next)}\n")
    return EXIT_OK


def cmd_somos(args, out):
    curve = _curve(args)
    seed = _seed(args, curve)
    t0 = curve.field(parse_scalar(args.t0))
    t1 = curve.field(parse_scalar(args.t1))
    if args.terms < 2:
        raise InvalidInputError("--terms must be >= 2")
    lo = seed.h - args.before
    hi = seed.h + args.terms - 1
    window = somos.somos_from_curve(curve, seed, t0, t1, lo, hi)
    violations = somos.gap6_check(window) if window.coeffs is not None else None
    if args.format == "json":
        payload = {"window": serialize.window_to_dict(window), "violations": violations,
                   "integral": window.is_integral()}
        out.write(json.dumps(payload, indent=2) + "\n")
    else:
        out.write(f"offset: {window.offset}\n")
        out.write(f"terms: {window}\n")
        if window.coeffs is None:
            out.write("gap-6 relation: none (full-mode curve)\n")
        else:
            a, b = window.coeffs
            out.write(f"gap-6 coefficients: a = {format_scalar(a)}, b = {format_scalar(b)}\n")
            out.write(f"violations: {len(violations)}" + (f" at h = {violations}" if violations else "") + "\n")
        out.write(f"integral: {'yes' if window.is_integral() else 'no'}\n")
    return EXIT_MATH if violations else EXIT_OK


def cmd_recover(args, out):
    terms = _scalar_list(args.terms)
    a, b = parse_scalar(args.a), parse_scalar(args.b)
    cands = recover.recover_curve(terms, args.offset, a, b)
    if args.format == "json":
        out.write(json.dumps([serialize.candidate_to_dict(c) for c in cands], indent=2) + "\n")
    else:
        if not cands:
            out.write("no candidates\n")
        for c in cands:
            flag = "verified" if c.verified else "unverified"
            out.write(f"v = {format_scalar(c.v_branch)}: {c.curve}  seed {c.seed}  [{flag}]\n")
            out.write(f"    constraint in w: {c.constraint_poly.format('w')}\n")
    return EXIT_OK if any(c.verified for c in cands) else EXIT_MATH


def cmd_coeffs(args, out):
    curve = _curve(args)
    a, b = somos.gap6_coeffs(curve)
    if args.format == "json":
        out.write(json.dumps({"a": format_scalar(a), "b": format_scalar(b)}) + "\n")
    else:
        out.write(f"a = {format_scalar(a)}\nb = {format_scalar(b)}\n")
    return EXIT_OK


def cmd_verify(args, out, stepper=None):
    if args.trials < 1:
        raise InvalidInputError("--trials must be >= 1")
    field = GF(args.prime) if args.prime else QQ
    results = verify.run_all(args.trials, args.rng_seed, field, stepper=stepper)
    ok = all(r.ok for r in results)
    if args.format == "json":
        payload = {"ok": ok, "suites": []}
        for r in results:
            payload["suites"].append({
                "name": r.name, "trials": r.trials, "checks": r.checks, "degenerate": r.degenerate,
                "failures": [
                    {"trial": f.trial, "message": f.message, "steps": f.steps,
                     "curve": serialize.curve_to_dict(f.curve) if f.curve else None,
                     "seed": serialize.line_to_dict(f.seed) if f.seed else None}
                    for f in r.failures
                ],
            })
        out.write(json.dumps(payload, indent=2) + "\n")
    else:
        for r in results:
            out.write(r.summary() + "\n")
            for f in r.failures[:3]:
                out.write(f"  trial {f.trial}: {f.message}\n")
                if f.curve is not None:
                    out.write(f"    minimal failing instance ({f.steps} steps): "
                              f"curve={json.dumps(serialize.curve_to_dict(f.curve))} "
                              f"seed={json.dumps(serialize.line_to_dict(f.seed))}\n")
    return EXIT_OK if ok else EXIT_MATH


def build_parser():
    p = argparse.ArgumentParser(prog="genus2cf", description="Continued fractions of sqrt(sextic) and gap-6 Somos sequences.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--format", choices=("text", "json"), default="text")

    sp = sub.add_parser("expand", help="expand sqrt of the sextic from a seed line")
    sp.add_argument("--curve", help="JSON object, @file.json, or f=..,g=..,v=..,w=.. flags")
    sp.add_argument("--seed", help="JSON object, @file.json, or d=..,e=..,u=..,v=..,w=.. flags")
    sp.add_argument("--steps", type=int, default=5)
    sp.add_argument("--direction", choices=("forward", "backward", "both"), default="forward")
    sp.add_argument("--generic", action="store_true", help="fall back to the series engine on degeneracy")
    common(sp)

    sp = sub.add_parser("somos", help="gap-6 Somos sequence attached to a curve and seed")
    sp.add_argument("--curve")
    sp.add_argument("--seed")
    sp.add_argument("--t0", default="1", help="T at the seed index")
    sp.add_argument("--t1", default="1", help="T at the seed index + 1")
    sp.add_argument("--terms", type=int, default=12, help="terms from the seed index onward")
    sp.add_argument("--before", type=int, default=1, help="terms before the seed index")
    common(sp)

    sp = sub.add_parser("recover", help="recover reduced curves from a gap-6 sequence")
    sp.add_argument("--terms", required=True, help='comma separated, e.g. "1,1,1,1,1,1"')
    sp.add_argument("--offset", type=int, default=0)
    sp.add_argument("--a", required=True)
    sp.add_argument("--b", required=True)
    common(sp)

    sp = sub.add_parser("coeffs", help="gap-6 coefficients (a, b) of a reduced curve")
    sp.add_argument("--curve")
    common(sp)

    sp = sub.add_parser("verify", help="randomized identity and engine-agreement suites")
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--prime", type=int, default=None)
    sp.add_argument("--rng-seed", type=int, default=0)
    common(sp)
    return p


COMMANDS = {
    "expand": cmd_expand,
    "somos": cmd_somos,
    "recover": cmd_recover,
    "coeffs": cmd_coeffs,
    "verify": cmd_verify,
}


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args, out)
    except (InvalidInputError, InvalidScalarError, FieldMismatchError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SingularSequenceError as exc:
        print(f"singular sequence at index {exc.index}: {exc}", file=sys.stderr)
        return EXIT_MATH
    except Genus2CFError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_MATH


if __name__ == "__main__":
    sys.exit(main())
