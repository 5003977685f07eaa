"""Kernel backend selection.

The hot numeric kernels exist in two implementations:

* ``numba``  -- explicit loops compiled with ``numba.njit`` (default when
  numba is importable).  Deterministic, no BLAS threading in the hot path.
* ``numpy``  -- the same contracts implemented on top of LAPACK
  (``numpy.linalg``).  Pure-numpy fallback when numba is missing.

Set ``SEMIRAD_BACKEND`` to ``numba``, ``numpy`` or ``python`` to override.
``python`` runs the numba source uncompiled (slow; debugging/coverage only).
"""

import os

try:
    import numba  # noqa: F401

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

_requested = os.environ.get("SEMIRAD_BACKEND", "").strip().lower()

if _requested in ("", "auto"):
    BACKEND = "numba" if HAVE_NUMBA else "numpy"
elif _requested in ("numba", "numpy", "python"):
    if _requested == "numba" and not HAVE_NUMBA:
        raise RuntimeError(
            "SEMIRAD_BACKEND=numba requested but numba is not installed; "
            "install the 'accel' extra or use SEMIRAD_BACKEND=numpy"
        )
    BACKEND = _requested
else:
    raise RuntimeError(
        f"unknown SEMIRAD_BACKEND={_requested!r} (expected numba, numpy or python)"
    )

# The loop kernels are compiled only when the selected backend is numba;
# BACKEND == "python" imports the same source undecorated.
USE_NUMBA = BACKEND == "numba"
