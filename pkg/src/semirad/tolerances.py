"""Numerical tolerances and search parameters used across the package.

All residual tolerances are applied in absolute-plus-relative form,
``eps * (1 + scale)``, so that degenerate (zero) inputs are handled without
special cases.
"""

# Spectral residual budget for eigendecompositions and derived factors.
EPS_EIG = 1e-10
# Moore-Penrose residual budget (pinv, PSD square root, projectors).
EPS_MP = 1e-10
# Hermitian-input gate for the eigensolver.
EPS_HERM = 1e-10
# Eigenvalues below EPS_RANK * lambda_max are treated as exactly zero.
EPS_RANK = 1e-10
# Eigenvalues above -EPS_NEG * lambda_max are clipped to zero; below is an error.
EPS_NEG = 1e-10
# Yes/no membership gates (null-space invariance, Douglas range test).
EPS_MEM = 1e-8

# Certifier tolerance classes: equalities accumulate two full spectral
# pipelines of error, inequalities only need a one-sided guard.
TOL_EQ = 1e-7
TOL_INEQ = 1e-8
# Admissible disagreement between the compression and theta-sup radius routes.
RADIUS_AGREE = 1e-6

# Theta-search parameters of the numerical-radius engine.
THETA_GRID = 1024
THETA_BRACKETS = 3
THETA_TOL = 1e-12

# The certifier thins the initial theta grid for small compressed operators;
# the local-maxima count of the eigenvalue envelope grows with the dimension,
# so the density scales with it (floored, and never above THETA_GRID).
CERT_GRID_FLOOR = 128
CERT_GRID_PER_DIM = 32


def cert_grid(dim: int) -> int:
    """Grid density used by the certifier for a dim x dim compressed operator."""
    return min(THETA_GRID, max(CERT_GRID_FLOOR, CERT_GRID_PER_DIM * dim))
