"""Continued fractions of square roots of monic sextics, and the gap-6
Somos sequences they carry."""
from .exactfield import GF, QQ, LaurentSeries, Mod, Poly, laurent_sqrt, normalize_rational, rational_roots
from .generic import SurdContext, SurdLine, norm_check, reduced_check, surd_step, surd_step_back
from .normal import (
    CurveParams,
    NormalLine,
    identity_suite,
    lines_between,
    lines_until_degenerate,
    partial_quotient,
    random_instance,
    seed_validate,
    step_backward,
    step_forward,
)
from .recover import RecoveryCandidate, candidate_verify, constraint_poly, recover_curve
from .somos import SomosWindow, d_stream, gap6_check, gap6_coeffs, gap6_extend, somos_from_curve, somos_from_d

__version__ = "0.1.0"
