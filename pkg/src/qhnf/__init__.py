"""Exact normal forms for planar fields with a quasi-homogeneous Hamiltonian
unperturbed part.

The pipeline: grade by a weight (``poly``), split fields along the Euler
direction (``euler``), compute resonant spaces of the conjugate operator
(``resonance``), normalize degree by degree and reduce to a generalized
normal form (``normalize``).  ``catalog`` holds closed-form reference data
for four classical families and ``parsing``/``cli`` the textual front end.
"""

from .poly import (
    Expo,
    GradingError,
    Polynomial,
    Qhp,
    VectorSeries,
    Vqhp,
    Weight,
    apply_field,
    divergence,
    euler,
    inner,
    lie_bracket,
    scalar_times_euler,
)
from .euler import DegreeTooSmallError, EulerSplit, decompose, ham_field, recompose
from .resonance import (
    ResonantBasis,
    ResonantSetChoice,
    ResonantSetProvider,
    SingularPairingError,
    SizeMismatchError,
    check_resonant_set,
    conj_apply,
    minimal_resonant_set,
    reduced_resonant_basis,
    resonant_basis,
)
from .normalize import (
    ConjugacyReport,
    HamiltonianSystem,
    InconsistentSolveError,
    PairPolicy,
    SingularJointSystemError,
    Transformation,
    WitnessNotFoundError,
    YSet,
    YSlot,
    build_y_set,
    compute_gphnf,
    gphnf_step,
    push_forward,
    random_perturbation,
    reduce_to_gnf,
    verify_conjugacy,
)
from .catalog import (
    CaseId,
    InvalidParamsError,
    OutOfRangeDegreeError,
    SupportPattern,
    predict_reduced,
    predict_resonant,
    predict_support,
    unperturbed,
)
from .parsing import (
    NotQuasiHomogeneousError,
    ParseError,
    PerturbationOrderError,
    ValidationError,
    WeightNotCoprimeError,
    parse_polynomial,
    parse_system,
    render_system,
)

__version__ = "0.1.0"

__all__ = [
    "Expo",
    "GradingError",
    "Polynomial",
    "Qhp",
    "VectorSeries",
    "Vqhp",
    "Weight",
    "apply_field",
    "divergence",
    "euler",
    "inner",
    "lie_bracket",
    "scalar_times_euler",
    "DegreeTooSmallError",
    "EulerSplit",
    "decompose",
    "ham_field",
    "recompose",
    "ResonantBasis",
    "ResonantSetChoice",
    "ResonantSetProvider",
    "SingularPairingError",
    "SizeMismatchError",
    "check_resonant_set",
    "conj_apply",
    "minimal_resonant_set",
    "reduced_resonant_basis",
    "resonant_basis",
    "ConjugacyReport",
    "HamiltonianSystem",
    "InconsistentSolveError",
    "PairPolicy",
    "SingularJointSystemError",
    "Transformation",
    "WitnessNotFoundError",
    "YSet",
    "YSlot",
    "build_y_set",
    "compute_gphnf",
    "gphnf_step",
    "push_forward",
    "random_perturbation",
    "reduce_to_gnf",
    "verify_conjugacy",
    "CaseId",
    "InvalidParamsError",
    "OutOfRangeDegreeError",
    "SupportPattern",
    "predict_reduced",
    "predict_resonant",
    "predict_support",
    "unperturbed",
    "NotQuasiHomogeneousError",
    "ParseError",
    "PerturbationOrderError",
    "ValidationError",
    "WeightNotCoprimeError",
    "parse_polynomial",
    "parse_system",
    "render_system",
]
