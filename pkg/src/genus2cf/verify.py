"""Randomized batch checks: identity battery, gap-6 relation, engine agreement.

Every suite is deterministic for a fixed ``rng_seed``; trial ``i`` uses the
instance ``random_instance(rng_seed * 1_000_003 + i, ...)``.
"""
import random
from dataclasses import dataclass, field as dc_field
from typing import List

from . import generic
from .errors import DegeneracyError, Genus2CFError, SingularSequenceError
from .exactfield import QQ
from .generic import SurdContext, SurdLine
from .normal import (
    FULL,
    REDUCED,
    identity_suite,
    lines_until_degenerate,
    partial_quotient,
    random_instance,
    step_backward,
    step_forward,
)
from .somos import gap6_check, gap6_coeffs, somos_from_d


@dataclass
class Failure:
    trial: int
    message: str
    curve: object = None
    seed: object = None
    steps: int = None


@dataclass
class SuiteResult:
    name: str
    trials: int = 0
    checks: int = 0
    degenerate: int = 0
    failures: List[Failure] = dc_field(default_factory=list)

    @property
    def ok(self):
        return not self.failures

    def summary(self):
        status = "PASS" if self.ok else "FAIL"
        return (
            f"{status} {self.name}: {self.trials} trials, {self.checks} checks, "
            f"{self.degenerate} truncated windows, {len(self.failures)} failures"
        )


def _instance_seed(rng_seed, i):
    return rng_seed * 1_000_003 + i


def _trial_instance(rng_seed, i, mode, field, bound):
    return random_instance(_instance_seed(rng_seed, i), mode, bound, field=field)


def _minimize(check, steps):
    """Smallest window length that still reproduces a failure."""
    for n in range(1, steps + 1):
        if check(n):
            return n
    return steps


def _reduced_problems(curve, seed, steps, stepper):
    lines = lines_until_degenerate(curve, seed, steps, stepper)
    report = identity_suite(curve, lines)
    problems = [str(c) for c in report.failures]
    ds = [ln.d for ln in lines]
    try:
        window = somos_from_d(ds, curve.field.one, curve.field.one, h0=lines[0].h, coeffs=gap6_coeffs(curve))
    except SingularSequenceError as exc:
        # stop the window just before the vanishing term
        cut = exc.index - lines[0].h - 1
        window = somos_from_d(ds[:max(cut, 0)], curve.field.one, curve.field.one, h0=lines[0].h,
                              coeffs=gap6_coeffs(curve))
    problems += [f"gap6@{h}" for h in gap6_check(window)]
    return problems, len(report.checks) + max(len(window) - 6, 0), len(lines) - 1 < steps


def reduced_suite(trials, rng_seed=0, field=QQ, steps=15, bound=3, stepper=None):
    """Reduced mode: identity battery plus the gap-6 relation on every window."""
    res = SuiteResult(f"reduced[{field!r}]")
    for i in range(trials):
        curve, seed = _trial_instance(rng_seed, i, REDUCED, field, bound)
        res.trials += 1
        try:
            problems, n, truncated = _reduced_problems(curve, seed, steps, stepper)
        except Genus2CFError as exc:
            problems, n, truncated = [f"{type(exc).__name__}: {exc}"], 0, False
        res.checks += n
        res.degenerate += truncated
        if problems:
            n_min = _minimize(lambda k: _safe(lambda: _reduced_problems(curve, seed, k, stepper)[0]), steps)
            res.failures.append(Failure(i, "; ".join(problems[:5]), curve, seed, n_min))
    return res


def _safe(fn):
    try:
        return fn()
    except Genus2CFError as exc:
        return [str(exc)]


def _full_problems(curve, seed, steps, stepper):
    lines = lines_until_degenerate(curve, seed, steps, stepper)
    report = identity_suite(curve, lines)
    return [str(c) for c in report.failures], len(report.checks), len(lines) - 1 < steps


def full_suite(trials, rng_seed=0, field=QQ, steps=12, bound=3, stepper=None):
    """Full mode: coefficient consistency and the identity battery."""
    res = SuiteResult(f"full-sextic[{field!r}]")
    for i in range(trials):
        curve, seed = _trial_instance(rng_seed, i, FULL, field, bound)
        res.trials += 1
        try:
            problems, n, truncated = _full_problems(curve, seed, steps, stepper)
        except Genus2CFError as exc:
            problems, n, truncated = [f"{type(exc).__name__}: {exc}"], 0, False
        res.checks += n
        res.degenerate += truncated
        if problems:
            n_min = _minimize(lambda k: _safe(lambda: _full_problems(curve, seed, k, stepper)[0]), steps)
            res.failures.append(Failure(i, "; ".join(problems[:5]), curve, seed, n_min))
    return res


def _agreement_problems(curve, seed, steps, stepper):
    lines = lines_until_degenerate(curve, seed, steps, stepper)
    n = len(lines) - 1
    problems = []
    ctx = generic.context_for_steps(curve.A, curve.R, steps)
    start = SurdLine(seed.h, seed.P, seed.Q)
    runs = []
    for c in (ctx, ctx.with_precision(2 * ctx.precision)):
        try:
            runs.append(generic.expand(c, start, n))
        except Genus2CFError as exc:
            problems.append(f"generic engine: {type(exc).__name__}: {exc}")
            return problems, 0, n < steps
    (glines, gq), (glines2, gq2) = runs
    if [(l.P, l.Q) for l in glines] != [(l.P, l.Q) for l in glines2] or gq != gq2:
        problems.append("doubling precision changed the expansion")
    for ln, gl in zip(lines, glines):
        if (ln.P, ln.Q) != (gl.P, gl.Q):
            problems.append(f"line {ln.h}: (P, Q) differ")
        if ln.h in gq and partial_quotient(ln) != gq[ln.h]:
            problems.append(f"line {ln.h}: partial quotients differ")
    return problems, 2 * len(lines), n < steps


def engine_agreement(trials, rng_seed=0, field=QQ, steps=20, bound=3, stepper=None):
    """Parametric vs series engine; alternates reduced and full instances."""
    res = SuiteResult(f"engine-agreement[{field!r}]")
    for i in range(trials):
        mode = REDUCED if i % 2 == 0 else FULL
        curve, seed = _trial_instance(rng_seed, i, mode, field, bound)
        res.trials += 1
        try:
            problems, n, truncated = _agreement_problems(curve, seed, steps, stepper)
        except Genus2CFError as exc:
            problems, n, truncated = [f"{type(exc).__name__}: {exc}"], 0, False
        res.checks += n
        res.degenerate += truncated
        if problems:
            n_min = _minimize(lambda k: _safe(lambda: _agreement_problems(curve, seed, k, stepper)[0]), steps)
            res.failures.append(Failure(i, "; ".join(problems[:5]), curve, seed, n_min))
    return res


def roundtrip_suite(count=1000, rng_seed=0, field=QQ, bound=3):
    """``step_backward(step_forward(L)) == L`` on ``count`` lines with a nondegenerate successor."""
    res = SuiteResult(f"round-trip[{field!r}]")
    rng = random.Random(rng_seed)
    i = 0
    while res.checks < count:
        mode = REDUCED if i % 2 == 0 else FULL
        curve, seed = _trial_instance(rng_seed, i, mode, field, bound)
        i += 1
        res.trials += 1
        lines = lines_until_degenerate(curve, seed, rng.randint(1, 12))
        for ln in lines:
            if res.checks >= count:
                break
            try:
                back = step_backward(curve, step_forward(curve, ln))
            except DegeneracyError:
                # no successor in normal form; not counted as a check
                res.degenerate += 1
                continue
            res.checks += 1
            if back != ln:
                res.failures.append(Failure(i - 1, f"round trip changed line {ln.h}", curve, ln, 1))
    return res


def run_all(trials, rng_seed=0, field=QQ, stepper=None):
    return [
        reduced_suite(trials, rng_seed, field, stepper=stepper),
        full_suite(trials, rng_seed, field, stepper=stepper),
        engine_agreement(trials, rng_seed, field, stepper=stepper),
    ]
