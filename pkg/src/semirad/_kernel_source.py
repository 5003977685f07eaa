"""Loop-level spectral kernels.

Every function here is written as explicit loops over ``complex128`` arrays so
the whole module can be compiled by numba; with ``SEMIRAD_BACKEND=python`` the
same source runs uncompiled.  No BLAS calls, no allocation surprises, fully
deterministic evaluation order.

Kernel inventory:

* ``eigh_herm``        -- cyclic Jacobi eigendecomposition (values + vectors)
* ``lambda_max/min``   -- extreme eigenvalue via Householder tridiagonalization
                          plus Sturm-count bisection (no eigenvectors)
* ``sigma_max``        -- largest singular value via ``lambda_max(M* M)``
* ``radius_pencil``    -- sup over theta of lambda_max(cos(t) Hr + sin(t) Hi),
                          coarse grid + golden-section refinement
* ``sigma_sup_pencil`` -- sup over theta of sigma_max((e^{it} B + e^{-it} C)/2)
"""

import math

import numpy as np

from .backend import USE_NUMBA

if USE_NUMBA:
    from numba import njit

    def _jit(fn):
        return njit(cache=True)(fn)

else:

    def _jit(fn):
        return fn


_TWO_PI = 2.0 * math.pi
# (sqrt(5) - 1) / 2, the golden-section step ratio.
_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


@_jit
def frob_norm(a):
    s = 0.0
    for i in range(a.shape[0]):
        for j in range(a.shape[1]):
            z = a[i, j]
            s += z.real * z.real + z.imag * z.imag
    return math.sqrt(s)


@_jit
def tridiagonalize(h):
    """Householder reduction of a Hermitian matrix to (d, e).

    Returns the real diagonal d and the real nonnegative off-diagonal e of a
    symmetric tridiagonal matrix unitarily similar to h (the complex phases of
    the reduced off-diagonal are removed by a diagonal similarity, which does
    not change the spectrum).
    """
    m = h.shape[0]
    a = h.copy()
    d = np.empty(m)
    e = np.empty(m - 1 if m > 1 else 0)
    v = np.empty(m, dtype=np.complex128)
    p = np.empty(m, dtype=np.complex128)
    for k in range(m - 2):
        xn2 = 0.0
        for i in range(k + 1, m):
            z = a[i, k]
            xn2 += z.real * z.real + z.imag * z.imag
        if xn2 == 0.0:
            continue
        xnorm = math.sqrt(xn2)
        x0 = a[k + 1, k]
        ax0 = abs(x0)
        if ax0 > 0.0:
            phase = x0 / ax0
        else:
            phase = complex(1.0, 0.0)
        alpha = -phase * xnorm
        # Householder vector v = (x - alpha e1) / ||.||; the sign of alpha
        # guarantees no cancellation in the first component.
        v[k + 1] = x0 - alpha
        for i in range(k + 2, m):
            v[i] = a[i, k]
        vn2 = 0.0
        for i in range(k + 1, m):
            z = v[i]
            vn2 += z.real * z.real + z.imag * z.imag
        inv = 1.0 / math.sqrt(vn2)
        for i in range(k + 1, m):
            v[i] = v[i] * inv
        # Rank-2 update of the trailing Hermitian block:
        #   B <- B - p v* - v p*,  p = 2 (B v - (v* B v) v)
        for i in range(k + 1, m):
            acc = complex(0.0, 0.0)
            for j in range(k + 1, m):
                acc += a[i, j] * v[j]
            p[i] = acc
        sacc = complex(0.0, 0.0)
        for i in range(k + 1, m):
            sacc += v[i].conjugate() * p[i]
        sreal = sacc.real
        for i in range(k + 1, m):
            p[i] = 2.0 * (p[i] - sreal * v[i])
        for i in range(k + 1, m):
            for j in range(k + 1, m):
                a[i, j] = a[i, j] - p[i] * v[j].conjugate() - v[i] * p[j].conjugate()
        a[k + 1, k] = alpha
        a[k, k + 1] = alpha.conjugate()
        for i in range(k + 2, m):
            a[i, k] = complex(0.0, 0.0)
            a[k, i] = complex(0.0, 0.0)
    for i in range(m):
        d[i] = a[i, i].real
    for i in range(m - 1):
        e[i] = abs(a[i + 1, i])
    return d, e


@_jit
def _sturm_count(d, e, x, pivmin):
    """Number of nonpositive pivots of T - x I, i.e. eigenvalues at or below x.

    Zero pivots are replaced by -pivmin and counted as negative; an exact
    pivot hit happens systematically for matrices with repeated diagonal
    entries, where the first bisection midpoint is an eigenvalue.
    """
    m = d.shape[0]
    cnt = 0
    q = d[0] - x
    if abs(q) < pivmin:
        q = -pivmin
    if q <= 0.0:
        cnt += 1
    for i in range(1, m):
        q = d[i] - x - e[i - 1] * e[i - 1] / q
        if abs(q) < pivmin:
            q = -pivmin
        if q <= 0.0:
            cnt += 1
    return cnt


@_jit
def _tri_extreme(d, e, want_max):
    """Largest (want_max) or smallest eigenvalue of the tridiagonal (d, e)."""
    m = d.shape[0]
    if m == 1:
        return d[0]
    lo = d[0]
    hi = d[0]
    for i in range(m):
        r = 0.0
        if i > 0:
            r += e[i - 1]
        if i < m - 1:
            r += e[i]
        if d[i] - r < lo:
            lo = d[i] - r
        if d[i] + r > hi:
            hi = d[i] + r
    me2 = 1.0
    for i in range(m - 1):
        if e[i] * e[i] > me2:
            me2 = e[i] * e[i]
    pivmin = 2.3e-308 * me2
    for _ in range(63):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        cnt = _sturm_count(d, e, mid, pivmin)
        if want_max:
            if cnt >= m:
                hi = mid
            else:
                lo = mid
        else:
            if cnt >= 1:
                hi = mid
            else:
                lo = mid
    return 0.5 * (lo + hi)


@_jit
def lambda_max(h):
    d, e = tridiagonalize(h)
    return _tri_extreme(d, e, True)


@_jit
def lambda_min(h):
    d, e = tridiagonalize(h)
    return _tri_extreme(d, e, False)


@_jit
def sigma_max(mat):
    """Largest singular value, as sqrt(lambda_max(M* M))."""
    rows = mat.shape[0]
    cols = mat.shape[1]
    if rows == 0 or cols == 0:
        return 0.0
    w = np.empty((cols, cols), dtype=np.complex128)
    for i in range(cols):
        for j in range(i, cols):
            acc = complex(0.0, 0.0)
            for k in range(rows):
                acc += mat[k, i].conjugate() * mat[k, j]
            w[i, j] = acc
            w[j, i] = acc.conjugate()
        w[i, i] = complex(w[i, i].real, 0.0)
    lm = lambda_max(w)
    if lm < 0.0:
        lm = 0.0
    return math.sqrt(lm)


@_jit
def eigh_herm(h, max_sweeps=60):
    """Cyclic-Jacobi eigendecomposition of a Hermitian matrix.

    Returns (w, v, converged) with eigenvalues w ascending and unitary v whose
    columns are the eigenvectors.  Rotations sweep the strict upper triangle
    in a fixed row-major order, so the result is bitwise reproducible.
    """
    m = h.shape[0]
    a = h.copy()
    v = np.zeros((m, m), dtype=np.complex128)
    for i in range(m):
        v[i, i] = complex(1.0, 0.0)
    w = np.empty(m)
    if m == 1:
        w[0] = a[0, 0].real
        return w, v, True
    nrm = frob_norm(a)
    if nrm == 0.0:
        for i in range(m):
            w[i] = 0.0
        return w, v, True
    conv = False
    for _sweep in range(max_sweeps):
        off2 = 0.0
        for i in range(m - 1):
            for j in range(i + 1, m):
                z = a[i, j]
                off2 += 2.0 * (z.real * z.real + z.imag * z.imag)
        if math.sqrt(off2) <= 1e-14 * nrm:
            conv = True
            break
        for pp in range(m - 1):
            for qq in range(pp + 1, m):
                apq = a[pp, qq]
                r = abs(apq)
                if r <= 1e-18 * nrm:
                    continue
                u = apq / r
                app = a[pp, pp].real
                aqq = a[qq, qq].real
                tau = (aqq - app) / (2.0 * r)
                if tau >= 0.0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                us = u * s
                ucs = u.conjugate() * s
                # rows: J* A
                for j in range(m):
                    ap = a[pp, j]
                    aq = a[qq, j]
                    a[pp, j] = c * ap - us * aq
                    a[qq, j] = s * ap + u * c * aq
                # columns: (J* A) J
                for i in range(m):
                    ap = a[i, pp]
                    aq = a[i, qq]
                    a[i, pp] = c * ap - ucs * aq
                    a[i, qq] = s * ap + u.conjugate() * c * aq
                a[pp, qq] = complex(0.0, 0.0)
                a[qq, pp] = complex(0.0, 0.0)
                a[pp, pp] = complex(a[pp, pp].real, 0.0)
                a[qq, qq] = complex(a[qq, qq].real, 0.0)
                for i in range(m):
                    vp = v[i, pp]
                    vq = v[i, qq]
                    v[i, pp] = c * vp - ucs * vq
                    v[i, qq] = s * vp + u.conjugate() * c * vq
    if not conv:
        off2 = 0.0
        for i in range(m - 1):
            for j in range(i + 1, m):
                z = a[i, j]
                off2 += 2.0 * (z.real * z.real + z.imag * z.imag)
        conv = math.sqrt(off2) <= 1e-14 * nrm
    for i in range(m):
        w[i] = a[i, i].real
    # ascending selection sort, ties kept in original order
    for i in range(m - 1):
        k = i
        for j in range(i + 1, m):
            if w[j] < w[k]:
                k = j
        if k != i:
            tw = w[i]
            w[i] = w[k]
            w[k] = tw
            for row in range(m):
                tz = v[row, i]
                v[row, i] = v[row, k]
                v[row, k] = tz
    return w, v, conv


@_jit
def _eval_pencil(hr, hi, theta, scratch):
    m = hr.shape[0]
    cth = math.cos(theta)
    sth = math.sin(theta)
    for i in range(m):
        for j in range(m):
            scratch[i, j] = cth * hr[i, j] + sth * hi[i, j]
    d, e = tridiagonalize(scratch)
    return _tri_extreme(d, e, True)


@_jit
def _golden_max_pencil(hr, hi, a, b, tol_theta, scratch):
    x1 = b - _INVPHI * (b - a)
    x2 = a + _INVPHI * (b - a)
    f1 = _eval_pencil(hr, hi, x1, scratch)
    f2 = _eval_pencil(hr, hi, x2, scratch)
    best_v = f1
    best_t = x1
    if f2 > best_v:
        best_v = f2
        best_t = x2
    it = 0
    while (b - a) > tol_theta and it < 200:
        it += 1
        if f1 >= f2:
            b = x2
            x2 = x1
            f2 = f1
            x1 = b - _INVPHI * (b - a)
            f1 = _eval_pencil(hr, hi, x1, scratch)
            if f1 > best_v:
                best_v = f1
                best_t = x1
        else:
            a = x1
            x1 = x2
            f1 = f2
            x2 = a + _INVPHI * (b - a)
            f2 = _eval_pencil(hr, hi, x2, scratch)
            if f2 > best_v:
                best_v = f2
                best_t = x2
    return best_v, best_t


@_jit
def radius_pencil(hr, hi, grid_k, n_brackets, tol_theta):
    """sup over theta in [0, 2 pi) of lambda_max(cos(t) hr + sin(t) hi).

    Coarse uniform grid of grid_k angles (one tridiagonalization serves both
    theta and theta + pi, since lambda_max(-H) = -lambda_min(H)), then
    golden-section refinement of the best local-maximum brackets.  Brackets
    that provably cannot beat the incumbent under the Lipschitz bound
    |f(t) - f(t')| <= L |t - t'| are skipped.
    Returns (value, argmax theta).
    """
    m = hr.shape[0]
    if m == 0:
        return 0.0, 0.0
    if m == 1:
        x = hr[0, 0].real
        y = hi[0, 0].real
        val = math.sqrt(x * x + y * y)
        th = math.atan2(y, x)
        if th < 0.0:
            th += _TWO_PI
        return val, th
    half = grid_k // 2
    f = np.empty(grid_k)
    scratch = np.empty((m, m), dtype=np.complex128)
    hstep = _TWO_PI / grid_k
    for k in range(half):
        theta = hstep * k
        cth = math.cos(theta)
        sth = math.sin(theta)
        for i in range(m):
            for j in range(m):
                scratch[i, j] = cth * hr[i, j] + sth * hi[i, j]
        d, e = tridiagonalize(scratch)
        f[k] = _tri_extreme(d, e, True)
        f[k + half] = -_tri_extreme(d, e, False)
    best_v = f[0]
    best_t = 0.0
    for k in range(grid_k):
        if f[k] > best_v:
            best_v = f[k]
            best_t = hstep * k
    lip = math.sqrt(frob_norm(hr) ** 2 + frob_norm(hi) ** 2)
    chosen = np.full(n_brackets, -1, dtype=np.int64)
    for b in range(n_brackets):
        bi = -1
        bv = -1e300
        for k in range(grid_k):
            km = k - 1 if k > 0 else grid_k - 1
            kp = k + 1 if k < grid_k - 1 else 0
            if f[k] >= f[km] and f[k] >= f[kp]:
                used = False
                for c in range(b):
                    if chosen[c] == k:
                        used = True
                if not used and f[k] > bv:
                    bv = f[k]
                    bi = k
        chosen[b] = bi
    for b in range(n_brackets):
        k = chosen[b]
        if k < 0:
            continue
        if f[k] + 2.0 * lip * hstep < best_v:
            continue
        lo = hstep * (k - 1)
        hi_t = hstep * (k + 1)
        val, th = _golden_max_pencil(hr, hi, lo, hi_t, tol_theta, scratch)
        if val > best_v:
            best_v = val
            best_t = th
    while best_t < 0.0:
        best_t += _TWO_PI
    while best_t >= _TWO_PI:
        best_t -= _TWO_PI
    return best_v, best_t


@_jit
def _eval_sigma(bm, cm, theta, gsc, wsc):
    m = bm.shape[0]
    eip = complex(math.cos(theta), math.sin(theta))
    ein = eip.conjugate()
    for i in range(m):
        for j in range(m):
            gsc[i, j] = 0.5 * (eip * bm[i, j] + ein * cm[i, j])
    for i in range(m):
        for j in range(i, m):
            acc = complex(0.0, 0.0)
            for k in range(m):
                acc += gsc[k, i].conjugate() * gsc[k, j]
            wsc[i, j] = acc
            wsc[j, i] = acc.conjugate()
        wsc[i, i] = complex(wsc[i, i].real, 0.0)
    d, e = tridiagonalize(wsc)
    lm = _tri_extreme(d, e, True)
    if lm < 0.0:
        lm = 0.0
    return math.sqrt(lm)


@_jit
def _golden_max_sigma(bm, cm, a, b, tol_theta, gsc, wsc):
    x1 = b - _INVPHI * (b - a)
    x2 = a + _INVPHI * (b - a)
    f1 = _eval_sigma(bm, cm, x1, gsc, wsc)
    f2 = _eval_sigma(bm, cm, x2, gsc, wsc)
    best_v = f1
    best_t = x1
    if f2 > best_v:
        best_v = f2
        best_t = x2
    it = 0
    while (b - a) > tol_theta and it < 200:
        it += 1
        if f1 >= f2:
            b = x2
            x2 = x1
            f2 = f1
            x1 = b - _INVPHI * (b - a)
            f1 = _eval_sigma(bm, cm, x1, gsc, wsc)
            if f1 > best_v:
                best_v = f1
                best_t = x1
        else:
            a = x1
            x1 = x2
            f1 = f2
            x2 = a + _INVPHI * (b - a)
            f2 = _eval_sigma(bm, cm, x2, gsc, wsc)
            if f2 > best_v:
                best_v = f2
                best_t = x2
    return best_v, best_t


@_jit
def sigma_sup_pencil(bm, cm, grid_k, n_brackets, tol_theta):
    """sup over theta of sigma_max((e^{i t} bm + e^{-i t} cm) / 2).

    The objective has period pi (t -> t + pi flips the sign of the pencil,
    which leaves singular values unchanged), so the grid covers [0, pi).
    Returns (value, argmax theta).
    """
    m = bm.shape[0]
    if m == 0:
        return 0.0, 0.0
    half = grid_k // 2
    f = np.empty(half)
    gsc = np.empty((m, m), dtype=np.complex128)
    wsc = np.empty((m, m), dtype=np.complex128)
    hstep = math.pi / half
    for k in range(half):
        f[k] = _eval_sigma(bm, cm, hstep * k, gsc, wsc)
    best_v = f[0]
    best_t = 0.0
    for k in range(half):
        if f[k] > best_v:
            best_v = f[k]
            best_t = hstep * k
    lip = 0.5 * (frob_norm(bm) + frob_norm(cm))
    chosen = np.full(n_brackets, -1, dtype=np.int64)
    for b in range(n_brackets):
        bi = -1
        bv = -1e300
        for k in range(half):
            km = k - 1 if k > 0 else half - 1
            kp = k + 1 if k < half - 1 else 0
            if f[k] >= f[km] and f[k] >= f[kp]:
                used = False
                for c in range(b):
                    if chosen[c] == k:
                        used = True
                if not used and f[k] > bv:
                    bv = f[k]
                    bi = k
        chosen[b] = bi
    for b in range(n_brackets):
        k = chosen[b]
        if k < 0:
            continue
        if f[k] + 2.0 * lip * hstep < best_v:
            continue
        val, th = _golden_max_sigma(bm, cm, hstep * (k - 1), hstep * (k + 1), tol_theta, gsc, wsc)
        if val > best_v:
            best_v = val
            best_t = th
    while best_t < 0.0:
        best_t += math.pi
    while best_t >= math.pi:
        best_t -= math.pi
    return best_v, best_t
