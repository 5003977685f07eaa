"""2x2 block operators over the doubled space with metric diag(A, A)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .errors import DimensionMismatch
from .semihilbert import (
    Metric,
    SemiOperator,
    a_numerical_radius,
    a_seminorm_op,
    bind,
    new_metric,
    sharp,
)
from .tolerances import THETA_GRID


@lru_cache(maxsize=256)
def double_metric(metric: Metric) -> Metric:
    """Metric for the doubled space: diag(A, A) on H + H.

    The induced semi-inner product splits coordinatewise,
    <(x1,x2),(y1,y2)> = <x1,y1>_A + <x2,y2>_A, and the rank doubles.
    Metrics are immutable, so the result is cached per metric object.
    """
    n = metric.dim
    a2 = np.zeros((2 * n, 2 * n), dtype=np.complex128)
    a2[:n, :n] = metric.a
    a2[n:, n:] = metric.a
    return new_metric(a2, metric.eps_rank)


def assemble(t, x, y, s) -> np.ndarray:
    """Explicit 2x2 block composition [[T, X], [Y, S]]."""
    n = t.shape[0]
    out = np.zeros((2 * n, 2 * n), dtype=np.complex128)
    out[:n, :n] = t
    out[:n, n:] = x
    out[n:, :n] = y
    out[n:, n:] = s
    return out


@dataclass(frozen=True, eq=False)
class BlockOperator:
    """A 2x2 block operator bound against the doubled metric."""

    base: Metric
    metric2: Metric
    t: np.ndarray
    x: np.ndarray
    y: np.ndarray
    s: np.ndarray
    assembled: np.ndarray
    op: SemiOperator


def make_block(metric: Metric, t, x, y, s) -> BlockOperator:
    """Assemble [[T, X], [Y, S]] and bind it against double_metric(metric)."""
    n = metric.dim
    blocks = []
    for name, b in (("T", t), ("X", x), ("Y", y), ("S", s)):
        b = np.asarray(b, dtype=np.complex128)
        if b.shape != (n, n):
            raise DimensionMismatch(f"block {name} has shape {b.shape}, expected {(n, n)}")
        blocks.append(b)
    t, x, y, s = blocks
    m2 = double_metric(metric)
    assembled = assemble(t, x, y, s)
    return BlockOperator(
        base=metric, metric2=m2, t=t, x=x, y=y, s=s,
        assembled=assembled, op=bind(m2, assembled),
    )


class BlockIdentityResiduals(NamedTuple):
    """Deviations of the four doubled-space identities (all should be ~0).

    * ``sharp_block``: ||sharp([[T,X],[Y,S]]) - [[T#, Y#], [X#, S#]]||_F
    * ``seminorm``: worst deviation of the diagonal / off-diagonal block
      seminorm from max(||X||_A, ||Y||_A)
    * ``radius_diag``: |w(diag(X, Y)) - max(w(X), w(Y))|
    * ``radius_sym``: |w([[X,Y],[Y,X]]) - max(w(X+Y), w(X-Y))|
    """

    sharp_block: float
    seminorm: float
    radius_diag: float
    radius_sym: float


def block_identity_residuals(
    block: BlockOperator, grid: int = THETA_GRID
) -> BlockIdentityResiduals:
    """Evaluate the four block identities as residuals, both sides independent."""
    m2 = block.metric2
    base = block.base
    n = base.dim
    zero = np.zeros((n, n), dtype=np.complex128)

    ops = {name: bind(base, mat) for name, mat in
           (("T", block.t), ("X", block.x), ("Y", block.y), ("S", block.s))}
    sharp_lhs = sharp(block.op)
    sharp_rhs = assemble(
        sharp(ops["T"]), sharp(ops["Y"]), sharp(ops["X"]), sharp(ops["S"])
    )
    res_sharp = float(np.linalg.norm(sharp_lhs - sharp_rhs))

    nx = a_seminorm_op(ops["X"])
    ny = a_seminorm_op(ops["Y"])
    n_max = max(nx, ny)
    diag_op = bind(m2, assemble(block.x, zero, zero, block.y))
    off_op = bind(m2, assemble(zero, block.x, block.y, zero))
    res_norm = max(
        abs(a_seminorm_op(diag_op) - n_max), abs(a_seminorm_op(off_op) - n_max)
    )

    w_diag = a_numerical_radius(diag_op, grid=grid)
    wx = a_numerical_radius(ops["X"], grid=grid)
    wy = a_numerical_radius(ops["Y"], grid=grid)
    res_wdiag = abs(w_diag - max(wx, wy))

    sym_op = bind(m2, assemble(block.x, block.y, block.y, block.x))
    w_sym = a_numerical_radius(sym_op, grid=grid)
    w_plus = a_numerical_radius(bind(base, block.x + block.y), grid=grid)
    w_minus = a_numerical_radius(bind(base, block.x - block.y), grid=grid)
    res_wsym = abs(w_sym - max(w_plus, w_minus))

    return BlockIdentityResiduals(res_sharp, res_norm, res_wdiag, res_wsym)
