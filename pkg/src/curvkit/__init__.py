"""curvkit: pointwise Kähler curvature algebra.

Holomorphic sectional curvature as a Hermitian form on symmetric 2-tensors,
difference-of-squares decomposition, curvature recovery, complex quadric
geometry (kernels, Takagi normal form, isotropic subspaces), zero-set
subspace certificates, and the integer curvature-nondegeneracy bounds.
"""

from .errors import InputError, NumericalError, PreconditionError, ValidationError
from .rng import Rng
from .hermform import (
    HermitianForm22,
    QuadraticForm,
    SquareDecomposition,
    dangelo_system,
    decompose,
    from_quadric_squares,
    monomial_vector,
    pair_dim,
    pair_indices,
    pullback,
    signature,
)
from .quadric import (
    Subspace,
    common_kernel,
    intersect,
    isotropic_bound,
    max_isotropic,
    nullspace,
    random_quadrics_on,
    random_symmetric_with_rank,
    rank_and_kernel,
    sharp_family,
    takagi,
    vanishes_on,
)
from .curvature import (
    HermitianMetric,
    KahlerCurvature,
    KernelPropagationReport,
    curvature_kernel,
    graph_curvature,
    hsc,
    hsc_numerator_form,
    kernel_propagation_check,
    random_kahler,
    recover,
    ricci,
    scalar,
    validate,
)
from .zeroset import (
    EtaCertificate,
    PointReport,
    bound_main1,
    bound_main2,
    eta_lower_search,
    eta_upper,
    local_sharp_example,
    verify_point,
)

__version__ = "0.1.0"

__all__ = [
    "InputError",
    "NumericalError",
    "PreconditionError",
    "ValidationError",
    "Rng",
    "HermitianForm22",
    "QuadraticForm",
    "SquareDecomposition",
    "dangelo_system",
    "decompose",
    "from_quadric_squares",
    "monomial_vector",
    "pair_dim",
    "pair_indices",
    "pullback",
    "signature",
    "Subspace",
    "common_kernel",
    "intersect",
    "isotropic_bound",
    "max_isotropic",
    "nullspace",
    "random_quadrics_on",
    "random_symmetric_with_rank",
    "rank_and_kernel",
    "sharp_family",
    "takagi",
    "vanishes_on",
    "HermitianMetric",
    "KahlerCurvature",
    "KernelPropagationReport",
    "curvature_kernel",
    "graph_curvature",
    "hsc",
    "hsc_numerator_form",
    "kernel_propagation_check",
    "random_kahler",
    "recover",
    "ricci",
    "scalar",
    "validate",
    "EtaCertificate",
    "PointReport",
    "bound_main1",
    "bound_main2",
    "eta_lower_search",
    "eta_upper",
    "local_sharp_example",
    "verify_point",
    "__version__",
]
