from fractions import Fraction

import pytest

from genus2cf.exactfield import Poly
from genus2cf.normal import CurveParams, NormalLine

X = Poly.x()
half = Fraction(1, 2)

# worked example: Y^2 = (X^3 - 4X + 1)^2 + 4(X - 2)
WORKED_CURVE = CurveParams.reduced(-4, 1, -1, 2)
WORKED_SEED = NormalLine(0, 2, -half, 1, 0, -1)

# the displayed expansion, line by line: numerator P_h, denominator Q_h, partial quotient
WORKED_P = [2 * X - 1, X, X - 1, X - 1, X, 2 * X - 1]
WORKED_Q = [X**2 - 1, -(X**2 - 2), X**2 - X - 1, -(X**2 - 2), X**2 - 1]
WORKED_A = [X, -X, X + 1, -X, X]
WORKED_T = [2, 1, 1, 1, 1, 1, 1, 2, 3, 4, 8, 17, 50]  # T[-1] .. T[11]


@pytest.fixture
def worked_curve():
    return WORKED_CURVE


@pytest.fixture
def worked_seed():
    return WORKED_SEED
