"""semirad: operators, seminorms and numerical radii for a PSD metric.

A positive semidefinite matrix A induces the semi-inner product
<x, y>_A = <A x, y>.  This package computes the induced vector and operator
seminorms, the distinguished metric adjoint, the A-numerical radius (three
algorithms), 2x2 block operators over the doubled metric diag(A, A), and
certifies a family of radius equalities and inequalities by seeded
property-based sweeps.
"""

__version__ = "0.1.0"

from .backend import BACKEND  # noqa: F401
from .blocks import (  # noqa: F401
    BlockIdentityResiduals,
    BlockOperator,
    block_identity_residuals,
    double_metric,
    make_block,
)
from .certifier import (  # noqa: F401
    CHECK_FAMILIES,
    CheckResult,
    Instance,
    ProbeResult,
    SuiteReport,
    buzano_check,
    gen_instance,
    gen_vector_triple,
    run_check,
    run_suite,
    tightness_probe,
    validate_radius_methods,
)
from .errors import (  # noqa: F401
    BadShape,
    ConsistencyError,
    DegenerateZ,
    DimensionMismatch,
    NonConvergence,
    NonSquare,
    NotAdjointable,
    NotAnInequality,
    NotHermitian,
    NotPSD,
    SemiradError,
    UnknownCheck,
)
from .linalg import (  # noqa: F401
    HermitianEig,
    herm_eig,
    numerical_radius_classical,
    operator_norm_2,
    pseudo_inverse,
    sqrt_psd,
)
from .semihilbert import (  # noqa: F401
    UNBOUNDED,
    Metric,
    SemiOperator,
    a_inner,
    a_norm_vec,
    a_numerical_radius,
    a_seminorm_op,
    bind,
    double_sharp_identity_check,
    is_a_positive,
    is_a_selfadjoint,
    is_a_unitary,
    is_unbounded,
    new_metric,
    random_a_unitary,
    sharp,
)
