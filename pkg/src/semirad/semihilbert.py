"""Operators on a semi-Hilbertian space.

A positive semidefinite metric ``A`` induces the semi-inner product
``<x, y>_A = <A x, y>`` and with it seminorms, adjoints and a numerical
radius for operators that leave the null space of ``A`` invariant.  In finite
dimensions "admits an adjoint" and "bounded for the seminorm" coincide: both
equal null-space invariance.  The two membership flags are nevertheless
computed by independent tests (null-space residual vs. range residual of the
Douglas condition) and must agree, which doubles as a numerical self-check.

``Metric`` and ``SemiOperator`` are immutable after construction (the adjoint
cache is write-once), so instances may be shared freely across workers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

import numpy as np

from . import kernels
from .errors import ConsistencyError, DimensionMismatch, NotAdjointable
from .linalg import HermitianEig, _clipped_psd_eig, as_matrix, _require_square
from .prng import Stream
from .tolerances import (
    EPS_MEM,
    EPS_RANK,
    THETA_BRACKETS,
    THETA_GRID,
    THETA_TOL,
)


class _UnboundedType:
    """Distinguished value for a seminorm/radius that is not finite.

    Deliberately not an IEEE infinity: arithmetic with it raises instead of
    silently propagating.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "unbounded"


UNBOUNDED = _UnboundedType()

ExtendedRadius = Union[float, _UnboundedType]


def is_unbounded(value) -> bool:
    return value is UNBOUNDED


@dataclass(frozen=True, eq=False)
class Metric:
    """A validated PSD metric with cached spectral data.

    ``eig`` holds the clipped (nonnegative) eigenvalues ascending; the last
    ``rank`` columns of the eigenbasis span the range of ``a``.
    """

    a: np.ndarray
    eig: HermitianEig
    rank: int
    pinv: np.ndarray
    sqrt: np.ndarray
    sqrt_pinv: np.ndarray
    proj: np.ndarray
    eps_rank: float
    # eigenbasis split: columns spanning the range / null space of a
    range_basis: np.ndarray = field(repr=False, default=None)
    null_basis: np.ndarray = field(repr=False, default=None)
    range_scale: np.ndarray = field(repr=False, default=None)

    @property
    def dim(self) -> int:
        return self.a.shape[0]

    def inner(self, x, y) -> complex:
        """Semi-inner product <x, y>_A, linear in x, conjugate-linear in y."""
        x = np.asarray(x, dtype=np.complex128).reshape(-1)
        y = np.asarray(y, dtype=np.complex128).reshape(-1)
        if x.shape[0] != self.dim or y.shape[0] != self.dim:
            raise DimensionMismatch("vector length does not match the metric")
        return complex(np.vdot(y, self.a @ x))

    def norm_vec(self, x) -> float:
        val = self.inner(x, x).real
        return float(np.sqrt(max(val, 0.0)))

    def compress(self, mat: np.ndarray) -> np.ndarray:
        """rank x rank compression D Q_r* M Q_r D^{-1} with D = diag(sqrt(lam)).

        For operators preserving the null space of ``a`` this carries the
        whole metric geometry: seminorms become singular values and the
        radius becomes the classical numerical radius of the compression.
        """
        if self.rank == 0:
            return np.zeros((0, 0), dtype=np.complex128)
        core = self.range_basis.conj().T @ mat @ self.range_basis
        return np.ascontiguousarray(
            (self.range_scale[:, None] * core) / self.range_scale[None, :]
        )

    def compress_full(self, mat: np.ndarray) -> np.ndarray:
        """Full-dimension compression A^{1/2} M (A^{1/2})^dagger."""
        return np.ascontiguousarray(self.sqrt @ mat @ self.sqrt_pinv)

    def sharp_mat(self, mat: np.ndarray) -> np.ndarray:
        """The distinguished adjoint matrix A^dagger M* A."""
        return self.pinv @ mat.conj().T @ self.a

    def seminorm_of(self, mat: np.ndarray) -> float:
        """A-seminorm of a null-space-preserving operator (unchecked)."""
        return float(kernels.sigma_max(self.compress(mat)))

    def radius_of(
        self,
        mat: np.ndarray,
        grid: int = THETA_GRID,
        tol_theta: float = THETA_TOL,
    ) -> float:
        """A-numerical radius of a null-space-preserving operator (unchecked)."""
        comp = self.compress(mat)
        if comp.shape[0] == 0:
            return 0.0
        hr = np.ascontiguousarray((comp + comp.conj().T) / 2.0)
        hi = np.ascontiguousarray(1j * (comp - comp.conj().T) / 2.0)
        val, _ = kernels.radius_pencil(hr, hi, grid, THETA_BRACKETS, tol_theta)
        return float(val)


def new_metric(a, eps_rank: float = EPS_RANK) -> Metric:
    """Validate a Hermitian PSD matrix and precompute its spectral toolkit."""
    a = as_matrix(a)
    _require_square(a)
    w, q = _clipped_psd_eig(a, "new_metric")
    lam_max = float(w[-1]) if w.size else 0.0
    positive = w > eps_rank * lam_max
    w = np.where(positive, w, 0.0)
    rank = int(np.count_nonzero(positive))
    qr = np.ascontiguousarray(q[:, positive])
    qn = np.ascontiguousarray(q[:, ~positive])
    lam_r = w[positive]
    inv = np.zeros_like(w)
    inv[positive] = 1.0 / lam_r
    rt = np.sqrt(w)
    rt_inv = np.zeros_like(w)
    rt_inv[positive] = 1.0 / np.sqrt(lam_r)
    pinv = (q * inv) @ q.conj().T
    sqrt = (q * rt) @ q.conj().T
    sqrt_pinv = (q * rt_inv) @ q.conj().T
    proj = qr @ qr.conj().T
    herm = lambda m: (m + m.conj().T) / 2.0  # noqa: E731
    return Metric(
        a=a,
        eig=HermitianEig(w, q),
        rank=rank,
        pinv=herm(pinv),
        sqrt=herm(sqrt),
        sqrt_pinv=herm(sqrt_pinv),
        proj=herm(proj),
        eps_rank=eps_rank,
        range_basis=qr,
        null_basis=qn,
        range_scale=np.sqrt(lam_r),
    )


def a_inner(metric: Metric, x, y) -> complex:
    return metric.inner(x, y)


def a_norm_vec(metric: Metric, x) -> float:
    return metric.norm_vec(x)


@dataclass(frozen=True, eq=False)
class SemiOperator:
    """An operator bound to a metric, with membership flags and adjoint cache."""

    metric: Metric
    mat: np.ndarray
    in_half: bool
    in_full: bool
    _sharp_cache: list = field(default_factory=list, repr=False)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]


def bind(metric: Metric, mat) -> SemiOperator:
    """Attach an operator to a metric, computing both membership flags.

    ``in_half`` tests null-space invariance directly; ``in_full`` tests the
    Douglas range condition R(T* A) within R(A).  The two must agree in finite
    dimensions; disagreement raises ConsistencyError.
    """
    mat = as_matrix(mat)
    _require_square(mat)
    if mat.shape[0] != metric.dim:
        raise DimensionMismatch(
            f"operator is {mat.shape[0]}x{mat.shape[1]}, metric is {metric.dim}x{metric.dim}"
        )
    scale_t = float(np.linalg.norm(mat))
    if metric.null_basis.shape[1] == 0:
        in_half = True
    else:
        resid = metric.proj @ (mat @ metric.null_basis)
        in_half = bool(
            np.all(np.linalg.norm(resid, axis=0) <= EPS_MEM * (1.0 + scale_t))
        )
    ta = mat.conj().T @ metric.a
    scale_ta = float(np.linalg.norm(ta))
    resid_full = ta - metric.proj @ ta
    in_full = bool(
        np.all(np.linalg.norm(resid_full, axis=0) <= EPS_MEM * (1.0 + scale_ta))
    )
    if in_half != in_full:
        raise ConsistencyError(
            "null-space and Douglas membership tests disagree "
            f"(in_half={in_half}, in_full={in_full}); input is numerically borderline"
        )
    return SemiOperator(metric=metric, mat=mat, in_half=in_half, in_full=in_full)


def sharp(op: SemiOperator) -> np.ndarray:
    """The distinguished adjoint A^dagger T* A (cached, write-once)."""
    if not op.in_full:
        raise NotAdjointable("operator does not admit an adjoint for this metric")
    if not op._sharp_cache:
        op._sharp_cache.append(op.metric.sharp_mat(op.mat))
    return op._sharp_cache[0]


def double_sharp_identity_check(op: SemiOperator) -> float:
    """Frobenius residual of sharp(sharp(T)) against P T P."""
    s1 = sharp(op)
    s2 = op.metric.sharp_mat(s1)
    ptp = op.metric.proj @ op.mat @ op.metric.proj
    return float(np.linalg.norm(s2 - ptp))


def a_seminorm_op(op: SemiOperator) -> ExtendedRadius:
    """Operator seminorm sup { ||T x||_A : ||x||_A = 1 }.

    The sup is taken over all A-unit vectors; for operators bounded in the
    seminorm this coincides with the sup over the range of A, and it equals
    the largest singular value of the compression.  Unbounded operators get
    the UNBOUNDED value.
    """
    if not op.in_half:
        return UNBOUNDED
    return op.metric.seminorm_of(op.mat)


def a_numerical_radius(
    op: SemiOperator,
    method: str = "compression",
    grid: int = THETA_GRID,
    tol_theta: float = THETA_TOL,
    samples: int = 100_000,
    sample_seed: int = 0,
) -> ExtendedRadius:
    """A-numerical radius sup { |<T x, x>_A| : ||x||_A = 1 }.

    Methods:

    * ``compression`` -- classical numerical radius of the compression.
    * ``theta-sup``   -- sup over theta of the A-seminorm of the A-Hermitian
      part of e^{i theta} T, evaluated through the full-dimension
      compression of T and of its adjoint; an independent arithmetic route
      used to cross-validate ``compression``.
    * ``sampling``    -- staged adaptive maximum of |<T x, x>_A| over
      ``samples`` seeded pseudo-random A-unit vectors; a certified lower
      bound of the radius.
    """
    if not op.in_half:
        return UNBOUNDED
    metric = op.metric
    if method == "compression":
        return metric.radius_of(op.mat, grid=grid, tol_theta=tol_theta)
    if method == "theta-sup":
        if not op.in_full:
            raise NotAdjointable("theta-sup requires an adjointable operator")
        b = metric.compress_full(op.mat)
        c = metric.compress_full(sharp(op))
        val, _ = kernels.sigma_sup_pencil(b, c, grid, THETA_BRACKETS, tol_theta)
        return float(val)
    if method == "sampling":
        return _sampled_radius(metric, op.mat, samples, sample_seed)
    raise ValueError(f"unknown radius method {method!r}")


def _sampled_radius(metric: Metric, mat: np.ndarray, samples: int, seed: int) -> float:
    """Adaptive sampling lower bound for the radius.

    Directions are drawn in range coordinates of the metric: the null-space
    component of an A-unit vector contributes nothing to <T x, x>_A for a
    null-space-preserving operator, and sampling there keeps the Rayleigh
    denominator away from zero.  Stages re-center progressively tighter
    clouds on the incumbent maximizer; every evaluation is a genuine
    Rayleigh value at an A-unit vector, so the maximum is always a valid
    lower bound.
    """
    r = metric.rank
    if r == 0 or samples < 1:
        return 0.0
    stream = Stream(seed, "radius-sampling")
    qr = metric.range_basis
    core = qr.conj().T @ (metric.a @ mat) @ qr
    lam = metric.range_scale**2
    stage_frac = (0.4, 0.3, 0.2, 0.1)
    stage_rho = (0.0, 0.5, 0.15, 0.05)
    best_val = 0.0
    best_y = None
    remaining = samples
    for frac, rho in zip(stage_frac, stage_rho):
        count = min(remaining, max(1, int(samples * frac)))
        remaining -= count
        y = stream.complex_gaussians(r, count)
        if rho > 0.0 and best_y is not None:
            y = best_y[:, None] + rho * y
        den = lam @ (y.conj() * y).real
        num = np.abs(np.einsum("ij,ij->j", y.conj(), core @ y))
        ok = den > 1e-12 * np.einsum("ij,ij->j", y.conj(), y).real
        if not np.any(ok):
            continue
        vals = np.where(ok, num / np.where(ok, den, 1.0), 0.0)
        k = int(np.argmax(vals))
        if vals[k] > best_val:
            best_val = float(vals[k])
            best_y = y[:, k] / np.sqrt(den[k])
    return best_val


def is_a_selfadjoint(op: SemiOperator) -> bool:
    """True when A T is Hermitian within tolerance."""
    at = op.metric.a @ op.mat
    dev = float(np.linalg.norm(at - at.conj().T))
    return dev <= EPS_MEM * (1.0 + float(np.linalg.norm(at)))


def is_a_positive(op: SemiOperator) -> bool:
    """True when A T is PSD within tolerance."""
    if not is_a_selfadjoint(op):
        return False
    at = op.metric.a @ op.mat
    herm = np.ascontiguousarray((at + at.conj().T) / 2.0)
    lam = float(kernels.lambda_min(herm))
    return lam >= -EPS_MEM * (1.0 + float(np.linalg.norm(at)))


def is_a_unitary(op: SemiOperator) -> bool:
    """Characterization U# U = (U#)# U# = P onto the range of A."""
    if not op.in_full:
        return False
    us = sharp(op)
    uss = op.metric.sharp_mat(us)
    proj = op.metric.proj
    tol = EPS_MEM * (1.0 + float(np.linalg.norm(op.mat)) ** 2)
    c1 = float(np.linalg.norm(us @ op.mat - proj)) <= tol
    c2 = float(np.linalg.norm(uss @ us - proj)) <= tol
    return c1 and c2


def random_a_unitary(metric: Metric, seed: int) -> np.ndarray:
    """Seeded A-unitary: (A^{1/2})^dagger V A^{1/2} with V unitary on R(A).

    V is the exponential of i times a random Hermitian generator expressed in
    the eigenbasis of A (identity on the null space), so the construction is
    deterministic given (metric, seed) and preserves the A-seminorm of every
    vector.
    """
    n = metric.dim
    r = metric.rank
    if r == 0:
        return np.zeros((n, n), dtype=np.complex128)
    stream = Stream(seed, "a-unitary")
    g = stream.complex_gaussians(r, r)
    h = (g + g.conj().T) / 2.0
    w, q, ok = kernels.eigh_herm(np.ascontiguousarray(h), 60)
    if not ok:  # pragma: no cover - tiny Hermitian always converges
        raise ConsistencyError("generator eigendecomposition failed")
    v_r = (q * np.exp(1j * np.asarray(w))) @ q.conj().T
    qr = metric.range_basis
    qn = metric.null_basis
    v_full = qr @ v_r @ qr.conj().T + qn @ qn.conj().T
    return metric.sqrt_pinv @ v_full @ metric.sqrt
