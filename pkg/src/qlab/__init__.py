"""Calculus of multi-screen experimental arrangements.

Arrangements are Hermitian trace-one operator tensors over factorized
detector spaces: ordered screens, each with finitely many detectors. The
package covers construction and validation, potentia and projector
valuations, basis and factorization changes with their invariance checks,
Schmidt structure across screen cuts, seeded outcome sampling, deterministic
SVG depiction, and a file-based command line front end.
"""

from .arrangement import (
    AbstractPurity,
    AdditivityReport,
    ExperimentalArrangement,
    GeneralProjector,
    GlobalIntensiveValuation,
    IsaCheck,
    IsaValidationReport,
    OperationalPurity,
    Power,
    PowersGraph,
    SAMPLER_ALGORITHM,
    build_from_mixture,
    build_from_state_vector,
    build_powers_graph,
    commutes,
    degree_of_complexity,
    potentia_of_power,
    potentia_of_projector,
    purity_abstract,
    purity_operational,
    require_valid,
    sample_outcomes,
    validate_isa,
    verify_additivity,
)
from .entanglement import (
    Bipartition,
    SchmidtResult,
    is_fully_separable_pure,
    is_product_across,
    schmidt_decompose,
    schmidt_rank_profile,
)
from .errors import (
    DimensionError,
    NumericError,
    ParseError,
    QLabError,
    ValidationError,
)
from .fileio import (
    parse_arrangement,
    parse_state,
    read_arrangement,
    read_state,
    serialize_arrangement,
    serialize_state,
    write_arrangement,
    write_state,
)
from .rand import (
    make_rng,
    random_arrangement,
    random_orthogonal_family,
    random_projector,
    random_state_vector,
    random_unitary,
)
from .screens import ScreenConfiguration, configuration
from .tensor import (
    DenseOperatorTensor,
    apply_unitary,
    conjugate_transpose,
    hermitian_eigendecomposition,
    identity_tensor,
    partial_trace,
    singular_value_decomposition,
    tensor_product,
    trace,
    zeros,
)
from .transforms import (
    BasisInvarianceReport,
    BasisTransformation,
    FactorizationInvarianceReport,
    change_basis,
    extend_arrangement,
    refactorize,
    remove_screen,
    remove_screens,
    verify_basis_invariance,
    verify_factorization_invariance,
)
from .viz import LayoutPlan, RenderOptions, depicted_powers, layout, render_arrangement_svg

__version__ = "0.1.0"

__all__ = [
    "AbstractPurity",
    "AdditivityReport",
    "BasisInvarianceReport",
    "BasisTransformation",
    "Bipartition",
    "DenseOperatorTensor",
    "DimensionError",
    "ExperimentalArrangement",
    "FactorizationInvarianceReport",
    "GeneralProjector",
    "GlobalIntensiveValuation",
    "IsaCheck",
    "IsaValidationReport",
    "LayoutPlan",
    "NumericError",
    "OperationalPurity",
    "ParseError",
    "Power",
    "PowersGraph",
    "QLabError",
    "RenderOptions",
    "SAMPLER_ALGORITHM",
    "SchmidtResult",
    "ScreenConfiguration",
    "ValidationError",
    "apply_unitary",
    "build_from_mixture",
    "build_from_state_vector",
    "build_powers_graph",
    "change_basis",
    "commutes",
    "configuration",
    "conjugate_transpose",
    "degree_of_complexity",
    "depicted_powers",
    "extend_arrangement",
    "hermitian_eigendecomposition",
    "identity_tensor",
    "is_fully_separable_pure",
    "is_product_across",
    "layout",
    "make_rng",
    "parse_arrangement",
    "parse_state",
    "partial_trace",
    "potentia_of_power",
    "potentia_of_projector",
    "purity_abstract",
    "purity_operational",
    "random_arrangement",
    "random_orthogonal_family",
    "random_projector",
    "random_state_vector",
    "random_unitary",
    "read_arrangement",
    "read_state",
    "refactorize",
    "remove_screen",
    "remove_screens",
    "render_arrangement_svg",
    "require_valid",
    "sample_outcomes",
    "schmidt_decompose",
    "schmidt_rank_profile",
    "serialize_arrangement",
    "serialize_state",
    "singular_value_decomposition",
    "tensor_product",
    "trace",
    "validate_isa",
    "verify_additivity",
    "verify_basis_invariance",
    "verify_factorization_invariance",
    "write_arrangement",
    "write_state",
    "zeros",
]
