"""Shared constructions for the test suite."""

import numpy as np

from semirad import new_metric
from semirad.prng import Stream, unitary_from_gaussian


def random_psd_metric(seed, dim, rank):
    s = Stream(seed, "test-metric")
    q = unitary_from_gaussian(s.complex_gaussians(dim, dim))
    lam = 0.1 + 1.9 * s.uniforms(rank)
    a = (q[:, :rank] * lam) @ q[:, :rank].conj().T
    return new_metric((a + a.conj().T) / 2)


def null_preserving(seed, metric):
    """Random operator with T(N(A)) inside N(A), built in the eigenbasis."""
    n, r = metric.dim, metric.rank
    s = Stream(seed, "test-op")
    q = np.hstack([metric.range_basis, metric.null_basis])
    m = np.zeros((n, n), dtype=complex)
    m[:r, :r] = s.complex_gaussians(r, r)
    m[r:, :r] = s.complex_gaussians(n - r, r)
    m[r:, r:] = s.complex_gaussians(n - r, n - r)
    return q @ m @ q.conj().T
