"""Facade over the selected kernel backend."""

from .backend import BACKEND

if BACKEND == "numpy":
    from ._kernel_numpy import (  # noqa: F401
        eigh_herm,
        frob_norm,
        lambda_max,
        lambda_min,
        radius_pencil,
        sigma_max,
        sigma_sup_pencil,
    )
else:
    from ._kernel_source import (  # noqa: F401
        eigh_herm,
        frob_norm,
        lambda_max,
        lambda_min,
        radius_pencil,
        sigma_max,
        sigma_sup_pencil,
    )
