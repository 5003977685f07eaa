"""Pure-numpy implementations of the spectral kernels.

Same contracts as ``_kernel_source`` but backed by LAPACK through
``numpy.linalg``; the theta grids are evaluated on stacked matrices.  Selected
with ``SEMIRAD_BACKEND=numpy`` (or automatically when numba is missing).
"""

import math

import numpy as np

_TWO_PI = 2.0 * math.pi
_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def frob_norm(a):
    return float(np.linalg.norm(a))


def eigh_herm(h, max_sweeps=60):
    try:
        w, v = np.linalg.eigh(h)
    except np.linalg.LinAlgError:
        m = h.shape[0]
        return np.empty(m), np.empty((m, m), dtype=np.complex128), False
    return w, v.astype(np.complex128, copy=False), True


def lambda_max(h):
    return float(np.linalg.eigvalsh(h)[-1])


def lambda_min(h):
    return float(np.linalg.eigvalsh(h)[0])


def sigma_max(mat):
    if mat.shape[0] == 0 or mat.shape[1] == 0:
        return 0.0
    return float(np.linalg.svd(mat, compute_uv=False)[0])


def _brackets_and_refine(f, hstep, lip, n_brackets, eval_fn, tol_theta, wrap):
    """Shared grid post-processing: pick brackets, golden-refine survivors."""
    n = f.shape[0]
    best_k = int(np.argmax(f))
    best_v = float(f[best_k])
    best_t = hstep * best_k
    is_max = (f >= np.roll(f, 1)) & (f >= np.roll(f, -1))
    cand = np.flatnonzero(is_max)
    order = np.lexsort((cand, -f[cand]))
    for idx in order[:n_brackets]:
        k = int(cand[idx])
        if f[k] + 2.0 * lip * hstep < best_v:
            continue
        val, th = _golden_max(eval_fn, hstep * (k - 1), hstep * (k + 1), tol_theta)
        if val > best_v:
            best_v = val
            best_t = th
    while best_t < 0.0:
        best_t += wrap
    while best_t >= wrap:
        best_t -= wrap
    return best_v, best_t


def _golden_max(fn, a, b, tol_theta):
    x1 = b - _INVPHI * (b - a)
    x2 = a + _INVPHI * (b - a)
    f1 = fn(x1)
    f2 = fn(x2)
    best_v, best_t = (f1, x1) if f1 >= f2 else (f2, x2)
    it = 0
    while (b - a) > tol_theta and it < 200:
        it += 1
        if f1 >= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - _INVPHI * (b - a)
            f1 = fn(x1)
            if f1 > best_v:
                best_v, best_t = f1, x1
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + _INVPHI * (b - a)
            f2 = fn(x2)
            if f2 > best_v:
                best_v, best_t = f2, x2
    return best_v, best_t


def radius_pencil(hr, hi, grid_k, n_brackets, tol_theta):
    """sup over theta in [0, 2 pi) of lambda_max(cos(t) hr + sin(t) hi)."""
    m = hr.shape[0]
    if m == 0:
        return 0.0, 0.0
    half = grid_k // 2
    theta = np.arange(half) * (_TWO_PI / grid_k)
    stack = np.cos(theta)[:, None, None] * hr + np.sin(theta)[:, None, None] * hi
    ev = np.linalg.eigvalsh(stack)
    f = np.concatenate([ev[:, -1], -ev[:, 0]])
    lip = math.hypot(float(np.linalg.norm(hr)), float(np.linalg.norm(hi)))

    def point(t):
        return float(
            np.linalg.eigvalsh(math.cos(t) * hr + math.sin(t) * hi)[-1]
        )

    return _brackets_and_refine(
        f, _TWO_PI / grid_k, lip, n_brackets, point, tol_theta, _TWO_PI
    )


def sigma_sup_pencil(bm, cm, grid_k, n_brackets, tol_theta):
    """sup over theta of sigma_max((e^{i t} bm + e^{-i t} cm) / 2); period pi."""
    m = bm.shape[0]
    if m == 0:
        return 0.0, 0.0
    half = grid_k // 2
    theta = np.arange(half) * (math.pi / half)
    phase = np.exp(1j * theta)[:, None, None]
    stack = 0.5 * (phase * bm + np.conj(phase) * cm)
    f = np.linalg.svd(stack, compute_uv=False)[:, 0]
    lip = 0.5 * (float(np.linalg.norm(bm)) + float(np.linalg.norm(cm)))

    def point(t):
        g = 0.5 * (np.exp(1j * t) * bm + np.exp(-1j * t) * cm)
        return float(np.linalg.svd(g, compute_uv=False)[0])

    return _brackets_and_refine(
        f, math.pi / half, lip, n_brackets, point, tol_theta, math.pi
    )
