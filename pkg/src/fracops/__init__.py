"""Fractional-calculus operator engine.

Riemann-Liouville fractional integrals/derivatives and Hilfer (generalized
Riemann-Liouville) derivatives, computed two ways:

* an exact closed-form backend on finite sums of shifted power functions
  (:mod:`fracops.monomial`), where operator identities hold to near machine
  precision, and
* a product-quadrature grid backend (:mod:`fracops.grid`) with numba-jitted
  kernels and a pure-numpy fallback (env var ``FRACOPS_NUMBA=0``).

:mod:`fracops.laws` mechanically verifies the composition laws relating the
two derivative families, including the coincidence of the Hilfer and
Riemann-Liouville derivatives on continuous functions and its breakdown at
the Caputo endpoint.
"""

from .errors import (
    DomainError,
    FracopsError,
    ParseError,
    PoleError,
    SingularityError,
)
from .gammafn import gamma, reciprocal_gamma
from .grid import (
    DEFAULT_SCHEME,
    GridFunction,
    SchemeConfig,
    classical_derivative_grid,
    convergence_study,
    hilfer_derivative_grid,
    rl_derivative_grid,
    rl_integral_grid,
)
from .laws import (
    LAW_IDS,
    DrawConfig,
    LawReport,
    check_caputo_endpoint,
    check_com,
    check_com1,
    check_com2,
    check_proof_chain,
    check_proposition,
    proof_chain_steps,
    run_laws,
)
from .monomial import (
    FracOrder,
    HilferSpec,
    Monomial,
    MonomialSeries,
    boundary_term,
    classical_derivative,
    coefficient_residual,
    evaluate,
    evaluate_many,
    frac_derivative_caputo,
    frac_derivative_hilfer,
    frac_derivative_rl,
    frac_derivative_rl_composed,
    frac_diffint,
    frac_integral,
)
from .polyspec import format_spec, parse_spec

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "DomainError",
    "FracopsError",
    "ParseError",
    "PoleError",
    "SingularityError",
    "gamma",
    "reciprocal_gamma",
    "Monomial",
    "MonomialSeries",
    "FracOrder",
    "HilferSpec",
    "frac_integral",
    "classical_derivative",
    "frac_derivative_rl",
    "frac_derivative_rl_composed",
    "frac_derivative_hilfer",
    "frac_derivative_caputo",
    "frac_diffint",
    "boundary_term",
    "evaluate",
    "evaluate_many",
    "coefficient_residual",
    "GridFunction",
    "SchemeConfig",
    "DEFAULT_SCHEME",
    "rl_integral_grid",
    "classical_derivative_grid",
    "rl_derivative_grid",
    "hilfer_derivative_grid",
    "convergence_study",
    "LAW_IDS",
    "DrawConfig",
    "LawReport",
    "check_com",
    "check_com1",
    "check_com2",
    "check_proposition",
    "check_proof_chain",
    "check_caputo_endpoint",
    "proof_chain_steps",
    "run_laws",
    "parse_spec",
    "format_spec",
]
