"""Exact symbolic checks for QS, Schouten and odd Jacobi structures on supermanifolds."""

from .superpoly import (
    Algebra,
    AlgebraMismatchError,
    GradingError,
    Monomial,
    Parity,
    SuperPoly,
    Variable,
    VarKind,
    grading_info,
    left_derivative,
    poly_mul,
)
from .cotangent import (
    LinearChange,
    PhaseSpace,
    SuperManifold,
    VectorField,
    canonical_poisson,
    cotangent_lift,
    lie_derivative,
    symbol,
    vf_commutator,
)
from .structures import (
    CheckReport,
    ExactQSStructure,
    HomologicalField,
    OddJacobiStructure,
    QSStructure,
    SamplingSpec,
    SchoutenStructure,
    check_axioms,
    check_exact_qs,
    check_odd_jacobi,
    check_qs,
    check_schouten,
    leibniz_witness,
    make_exact_qs,
    make_odd_jacobi,
    make_qs,
    odd_jacobi_bracket,
    schouten_bracket,
)
from .constructions import (
    PencilParams,
    PreconditionError,
    pencil,
    schoutenise,
    theorem1_associate,
    theorem1_proof_identities,
)
from .fileformat import ParseError, load_structure, dump_structure, parse_expression, print_expression

__version__ = "0.1.0"
