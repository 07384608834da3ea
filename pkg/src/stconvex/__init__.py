"""Numerical checks of sufficient conditions for strong close-to-convexity.

The package represents analytic functions on the unit disk by truncated power
series and evaluates the hypotheses and conclusions of five sufficient
conditions for ``f`` to be strongly close-to-convex of order ``mu`` relative
to a starlike ``g``, together with the Jack's-lemma boundary mechanics the
proofs rely on.
"""

__version__ = "0.1.0"

from .errors import (  # noqa: F401
    BranchPrecondition,
    DegenerateMax,
    DivisionOrderError,
    EvaluationUnreliable,
    GridEmpty,
    InvalidParameters,
    NonFiniteCoefficient,
    OutsideDisk,
    ParseError,
    SingularPoint,
    SpecInvalid,
    STCError,
    ZeroDenominator,
)
from .families import (  # noqa: F401
    HerglotzAtoms,
    WKind,
    WSpec,
    koebe_alpha,
    random_atoms,
    random_starlike,
    realize_w,
    synth_from_w,
)
from .functionals import (  # noqa: F401
    Direction,
    FunctionPair,
    boundary_modulus,
    halfplane_re,
    identity_residual,
    logderiv_combo,
    ratio_minus_one,
    w_series,
)
from .jack import JackReport, jack_quotient, jack_verify, max_on_circle  # noqa: F401
from .series import (  # noqa: F401
    AnalyticSeries,
    EvalResult,
    NormalizedFunction,
    antiderivative0,
    derivative,
    div,
    evaluate,
    from_coeffs,
    mul,
    normalized,
    pow1p,
    vanishing_order,
)
from .theorems import (  # noqa: F401
    DiskGrid,
    TheoremParams,
    Verdict,
    check,
    lhs_at,
    rho_floor,
    rhs_bound,
    starlike_margin,
    stc_margin,
)
