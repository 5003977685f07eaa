"""Seeded instance generation and the registry of certified checks.

Every check evaluates both sides of its identity or inequality through
independent computations and records the slack: ``rhs - lhs`` for
inequalities, ``-|lhs - rhs|`` for equalities, so a single comparator
(``slack >= -tol``) serves both classes.  Tolerances scale with
``1 + max(|lhs|, |rhs|)``.

Instances are pure functions of ``(seed, dim, rank)``: the metric is built as
``Q diag(lam_1..lam_r, 0..0) Q*`` with a seeded random unitary ``Q`` and
``lam_i`` uniform in [0.1, 2]; each operator is drawn block-lower-triangular
in the range/null split of the eigenbasis, so null-space invariance holds by
construction, then rotated back.  Regeneration is bit-identical, and every
reported failure carries its ``(seed, dim, rank)`` triple.

Instances are independent of each other; the suite may be fanned out across
workers as long as aggregation folds results in seed order (the built-in
runner is sequential and already deterministic).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .blocks import assemble, block_identity_residuals, double_metric, make_block
from .errors import (
    BadShape,
    ConsistencyError,
    DegenerateZ,
    NotAnInequality,
    UnknownCheck,
)
from .prng import Stream, derive_seed, unitary_from_gaussian
from .semihilbert import (
    Metric,
    SemiOperator,
    a_numerical_radius,
    a_seminorm_op,
    bind,
    new_metric,
    random_a_unitary,
)
from .tolerances import EPS_MEM, RADIUS_AGREE, TOL_EQ, TOL_INEQ, cert_grid

OPERATOR_NAMES = ("T", "S", "X", "Y")

#: Check families, in evaluation and reporting order.
CHECK_FAMILIES = (
    "NormIdentity",
    "RadiusNormEquiv",
    "UnitaryInvariance",
    "PowerInequality",
    "BlockIdentities",
    "OffDiagBound",
    "OffDiagChain",
    "SelfBound",
    "NilpotentHalf",
    "RowBound",
    "RepeatedRows",
    "SharpOffDiag",
    "FullBlock",
    "SumDiffChain",
)

INEQUALITY_FAMILIES = frozenset(
    (
        "RadiusNormEquiv",
        "PowerInequality",
        "OffDiagBound",
        "OffDiagChain",
        "SelfBound",
        "RowBound",
        "RepeatedRows",
        "FullBlock",
        "SumDiffChain",
    )
)

# Operators perturbed by the tightness probe, per inequality family.
_FAMILY_OPS = {
    "RadiusNormEquiv": ("T",),
    "PowerInequality": ("T",),
    "OffDiagBound": ("X", "Y"),
    "OffDiagChain": ("X", "Y"),
    "SelfBound": ("X",),
    "RowBound": ("T", "X", "Y", "S"),
    "RepeatedRows": ("T", "S"),
    "FullBlock": ("T", "X", "Y", "S"),
    "SumDiffChain": ("T", "X"),
}


@dataclass
class CheckResult:
    """One certified identity/inequality evaluation."""

    check: str
    seed: int
    dim: int
    rank: int
    lhs: float
    rhs: float
    slack: float
    scale: float
    tol: float
    passed: bool
    note: str = ""


@dataclass
class CheckSummary:
    count: int = 0
    failures: int = 0
    min_slack: float = math.inf
    argmin_seed: int = 0
    argmin_dim: int = 0
    argmin_rank: int = 0


@dataclass
class SuiteReport:
    meta: dict
    results: list
    summary: dict

    @property
    def global_pass(self) -> bool:
        return all(s.failures == 0 for s in self.summary.values())


class Instance:
    """A metric plus named operators, with memoized derived quantities."""

    def __init__(self, seed, dim, rank, metric, named_mats, op_params=None, basis=None):
        self.seed = seed
        self.dim = dim
        self.rank = rank
        self.metric = metric
        self.metric2 = double_metric(metric)
        self.named = dict(named_mats)
        self.op_params = op_params
        self.basis = basis
        self.ops = {name: bind(metric, mat) for name, mat in self.named.items()}
        self.grid = cert_grid(max(2, rank))
        self.grid2 = cert_grid(max(2, 2 * rank))
        self._mats = dict(self.named)
        self._bound = dict(self.ops)
        self._block_ops = {}
        self._w = {}
        self._wb = {}
        self._nrm = {}
        self._scale = None

    # -- derived matrices ---------------------------------------------------

    def mat(self, key: str) -> np.ndarray:
        if key not in self._mats:
            self._mats[key] = self._build_mat(key)
        return self._mats[key]

    def _build_mat(self, key: str) -> np.ndarray:
        m = self.metric
        g = self.mat
        if key == "U":
            return random_a_unitary(m, derive_seed(self.seed, "unitary"))
        if key == "U#TU":
            u = g("U")
            return m.sharp_mat(u) @ g("T") @ u
        if key.endswith("#") and key[:-1] in ("T", "S", "X", "Y", "X#"):
            return m.sharp_mat(g(key[:-1]))
        simple = {
            "T^2": lambda: g("T") @ g("T"),
            "T^3": lambda: g("T^2") @ g("T"),
            "T^4": lambda: g("T^3") @ g("T"),
            "X^2": lambda: g("X") @ g("X"),
            "XY": lambda: g("X") @ g("Y"),
            "YX": lambda: g("Y") @ g("X"),
            "XT": lambda: g("X") @ g("T"),
            "XS": lambda: g("X") @ g("S"),
            "YT": lambda: g("Y") @ g("T"),
            "T+X": lambda: g("T") + g("X"),
            "T-X": lambda: g("T") - g("X"),
            "X+Y": lambda: g("X") + g("Y"),
            "X-Y": lambda: g("X") - g("Y"),
            "T+S": lambda: g("T") + g("S"),
            "T-S": lambda: g("T") - g("S"),
            "T#T": lambda: g("T#") @ g("T"),
            "TT#": lambda: g("T") @ g("T#"),
            "X#X+YY#": lambda: g("X#") @ g("X") + g("Y") @ g("Y#"),
            "XX#+Y#Y": lambda: g("X") @ g("X#") + g("Y#") @ g("Y"),
            "X#X+XX#": lambda: g("X#") @ g("X") + g("X") @ g("X#"),
            "T#T+XX#": lambda: g("T#") @ g("T") + g("X") @ g("X#"),
            "S#S+YY#": lambda: g("S#") @ g("S") + g("Y") @ g("Y#"),
            "X#X+X#X##": lambda: g("X#") @ g("X") + g("X#") @ g("X##"),
            "XX#+X##X#": lambda: g("X") @ g("X#") + g("X##") @ g("X#"),
        }
        if key in simple:
            return simple[key]()
        raise KeyError(f"no builder for derived matrix {key!r}")

    def _build_block(self, key: str) -> np.ndarray:
        g = self.mat
        zero = np.zeros((self.dim, self.dim), dtype=np.complex128)
        table = {
            "off:X,Y": lambda: assemble(zero, g("X"), g("Y"), zero),
            "off:XS,YT": lambda: assemble(zero, g("XS"), g("YT"), zero),
            "diag:X,Y": lambda: assemble(g("X"), zero, zero, g("Y")),
            "sym:X,Y": lambda: assemble(g("X"), g("Y"), g("Y"), g("X")),
            "up:X": lambda: assemble(zero, g("X"), zero, zero),
            "low:X": lambda: assemble(zero, zero, g("X"), zero),
            "rowtop:T,X": lambda: assemble(g("T"), g("X"), zero, zero),
            "rowbot:Y,S": lambda: assemble(zero, zero, g("Y"), g("S")),
            "rep:T,S": lambda: assemble(g("T"), g("S"), g("T"), g("S")),
            "repneg:T,S": lambda: assemble(g("T"), g("S"), -g("T"), -g("S")),
            "sharpoff:X": lambda: assemble(zero, g("X"), g("X#"), zero),
            "full": lambda: assemble(g("T"), g("X"), g("Y"), g("S")),
        }
        if key not in table:
            raise KeyError(f"no builder for block {key!r}")
        return table[key]()

    # -- bound operators and cached scalars ----------------------------------

    def op(self, key: str) -> SemiOperator:
        if key not in self._bound:
            self._bound[key] = bind(self.metric, self.mat(key))
        return self._bound[key]

    def bop(self, key: str) -> SemiOperator:
        if key not in self._block_ops:
            self._block_ops[key] = bind(self.metric2, self._build_block(key))
        return self._block_ops[key]

    def w(self, key: str) -> float:
        if key not in self._w:
            self._w[key] = a_numerical_radius(self.op(key), grid=self.grid)
        return self._w[key]

    def wb(self, key: str) -> float:
        if key not in self._wb:
            self._wb[key] = a_numerical_radius(self.bop(key), grid=self.grid2)
        return self._wb[key]

    def nrm(self, key: str) -> float:
        if key not in self._nrm:
            self._nrm[key] = a_seminorm_op(self.op(key))
        return self._nrm[key]

    @property
    def scale(self) -> float:
        if self._scale is None:
            self._scale = 1.0 + max(self.nrm(n) for n in OPERATOR_NAMES)
        return self._scale


def gen_instance(seed: int, dim: int, rank: int) -> Instance:
    """Deterministic instance from (seed, dim, rank)."""
    if not (isinstance(dim, int) and isinstance(rank, int) and 1 <= rank <= dim <= 8):
        raise BadShape(f"need 1 <= rank <= dim <= 8, got dim={dim}, rank={rank}")
    lam = 0.1 + 1.9 * Stream(seed, "eigs").uniforms(rank)
    q = unitary_from_gaussian(Stream(seed, "basis").complex_gaussians(dim, dim))
    qr = q[:, :rank]
    a = (qr * lam) @ qr.conj().T
    a = (a + a.conj().T) / 2.0
    metric = new_metric(a)
    named = {}
    params = {}
    for name in OPERATOR_NAMES:
        s = Stream(seed, "op", name)
        rr = s.complex_gaussians(rank, rank)
        nr = s.complex_gaussians(dim - rank, rank)
        nn = s.complex_gaussians(dim - rank, dim - rank)
        params[name] = (rr, nr, nn)
        named[name] = _op_from_blocks(q, rr, nr, nn)
    return Instance(seed, dim, rank, metric, named, op_params=params, basis=q)


def _op_from_blocks(q, rr, nr, nn) -> np.ndarray:
    """Rotate the range/null structured blocks back to the original basis."""
    r = rr.shape[0]
    n = r + nr.shape[0]
    m_eig = np.zeros((n, n), dtype=np.complex128)
    m_eig[:r, :r] = rr
    m_eig[r:, :r] = nr
    m_eig[r:, r:] = nn
    return q @ m_eig @ q.conj().T


# -- result builders ---------------------------------------------------------


def _eq(check, inst, lhs, rhs, tol_scale, note=""):
    scale = 1.0 + max(abs(lhs), abs(rhs))
    tol = TOL_EQ * scale * tol_scale
    slack = -abs(lhs - rhs)
    return CheckResult(
        check, inst.seed, inst.dim, inst.rank,
        float(lhs), float(rhs), float(slack), scale, tol, bool(slack >= -tol), note,
    )


def _ineq(check, inst, lhs, rhs, tol_scale, note=""):
    scale = 1.0 + max(abs(lhs), abs(rhs))
    tol = TOL_INEQ * scale * tol_scale
    slack = rhs - lhs
    return CheckResult(
        check, inst.seed, inst.dim, inst.rank,
        float(lhs), float(rhs), float(slack), scale, tol, bool(slack >= -tol), note,
    )


# -- the check families ------------------------------------------------------


def _check_norm_identity(inst, ts):
    sq = inst.nrm("T") ** 2
    return [
        _eq("NormIdentity.gram_right", inst, inst.nrm("T#T"), sq, ts),
        _eq("NormIdentity.gram_left", inst, inst.nrm("TT#"), sq, ts),
        _eq("NormIdentity.adjoint", inst, inst.nrm("T#"), inst.nrm("T"), ts),
    ]


def _check_radius_norm_equiv(inst, ts):
    w = inst.w("T")
    nt = inst.nrm("T")
    return [
        _ineq("RadiusNormEquiv.lower", inst, 0.5 * nt, w, ts),
        _ineq("RadiusNormEquiv.upper", inst, w, nt, ts),
    ]


def _check_unitary_invariance(inst, ts):
    return [_eq("UnitaryInvariance", inst, inst.w("U#TU"), inst.w("T"), ts)]


def _check_power_inequality(inst, ts):
    w = inst.w("T")
    return [
        _ineq(f"PowerInequality.pow{n}", inst, inst.w(f"T^{n}"), w**n, ts)
        for n in (2, 3, 4)
    ]


def _check_block_identities(inst, ts):
    blk = make_block(
        inst.metric, inst.mat("T"), inst.mat("X"), inst.mat("Y"), inst.mat("S")
    )
    res = block_identity_residuals(blk, grid=inst.grid2)
    mk = lambda tag, val: _eq(f"BlockIdentities.{tag}", inst, val, 0.0, ts)  # noqa: E731
    out = [
        mk("adjoint", res.sharp_block),
        mk("seminorm", res.seminorm),
        mk("radius_diag", res.radius_diag),
        mk("radius_sym", res.radius_sym),
    ]
    # residual rows compare against zero; rescale the tolerance to instance size
    for row in out:
        row.scale = inst.scale
        row.tol = TOL_EQ * inst.scale * ts
        row.passed = bool(row.slack >= -row.tol)
    return out


def _check_off_diag_bound(inst, ts):
    lhs = inst.wb("off:X,Y") ** 2
    rhs = 0.25 * max(inst.nrm("X#X+YY#"), inst.nrm("XX#+Y#Y")) + 0.5 * max(
        inst.w("XY"), inst.w("YX")
    )
    return [_ineq("OffDiagBound", inst, lhs, rhs, ts)]


def _check_off_diag_chain(inst, ts):
    woff = inst.wb("off:X,Y")
    lo = max(math.sqrt(max(inst.w("XY"), 0.0)), math.sqrt(max(inst.w("YX"), 0.0)))
    hi = 0.5 * (inst.nrm("X") + inst.nrm("Y"))
    return [
        _ineq("OffDiagChain.lower", inst, lo, woff, ts),
        _ineq("OffDiagChain.upper", inst, woff, hi, ts),
    ]


def _check_self_bound(inst, ts):
    rhs = 0.5 * math.sqrt(inst.nrm("X#X+XX#") + 2.0 * inst.w("X^2"))
    return [_ineq("SelfBound", inst, inst.w("X"), rhs, ts)]


def _check_nilpotent_half(inst, ts):
    half = 0.5 * inst.nrm("X")
    return [
        _eq("NilpotentHalf.upper", inst, inst.wb("up:X"), half, ts),
        _eq("NilpotentHalf.lower", inst, inst.wb("low:X"), half, ts),
    ]


def _check_row_bound(inst, ts):
    return [
        _ineq(
            "RowBound.top", inst, inst.wb("rowtop:T,X"),
            inst.w("T") + 0.5 * inst.nrm("X"), ts,
        ),
        _ineq(
            "RowBound.bottom", inst, inst.wb("rowbot:Y,S"),
            inst.w("S") + 0.5 * inst.nrm("Y"), ts,
        ),
    ]


def _check_repeated_rows(inst, ts):
    # Conjugating [[T,S],[T,S]] by the doubled-space rotation
    # (1/sqrt2)[[I,I],[-I,I]] gives [[0,0],[T-S,T+S]], whose radius is bounded
    # by w(T+S) + ||T-S||/2 via the one-row bound; the sign-flipped stack
    # lands on [[T-S,T+S],[0,0]] and gets the mirrored pairing.  Swapping the
    # two right-hand sides is falsifiable (S = T makes the first lhs 2 w(T)
    # with a swapped rhs of only ||T||).
    return [
        _ineq(
            "RepeatedRows.plus", inst, inst.wb("rep:T,S"),
            inst.w("T+S") + 0.5 * inst.nrm("T-S"), ts,
        ),
        _ineq(
            "RepeatedRows.minus", inst, inst.wb("repneg:T,S"),
            inst.w("T-S") + 0.5 * inst.nrm("T+S"), ts,
        ),
    ]


def _check_sharp_off_diag(inst, ts):
    nx = inst.nrm("X")
    gram = max(inst.nrm("X#X+X#X##"), inst.nrm("XX#+X##X#"))
    return [
        _eq("SharpOffDiag.radius", inst, inst.wb("sharpoff:X"), nx, ts),
        _eq("SharpOffDiag.gram", inst, gram, 2.0 * nx**2, ts),
    ]


def _check_full_block(inst, ts):
    lhs = inst.wb("full") ** 2
    rhs = (
        inst.wb("off:X,Y") ** 2
        + inst.wb("off:XS,YT")
        + max(inst.w("T") ** 2, inst.w("S") ** 2)
        + 0.5 * max(inst.nrm("T#T+XX#"), inst.nrm("S#S+YY#"))
    )
    return [_ineq("FullBlock", inst, lhs, rhs, ts)]


def _check_sum_diff_chain(inst, ts):
    wp = inst.w("T+X")
    wm = inst.w("T-X")
    mx = max(wp, wm)
    lo = max(inst.w("T"), inst.w("X")) + 0.5 * abs(wp - wm)
    hi = math.sqrt(
        inst.w("X") ** 2 + inst.w("XT") + inst.w("T") ** 2
        + 0.5 * inst.nrm("T#T+XX#")
    )
    return [
        _ineq("SumDiffChain.lower", inst, lo, mx, ts),
        _ineq("SumDiffChain.upper", inst, mx, hi, ts),
    ]


_CHECKS = {
    "NormIdentity": _check_norm_identity,
    "RadiusNormEquiv": _check_radius_norm_equiv,
    "UnitaryInvariance": _check_unitary_invariance,
    "PowerInequality": _check_power_inequality,
    "BlockIdentities": _check_block_identities,
    "OffDiagBound": _check_off_diag_bound,
    "OffDiagChain": _check_off_diag_chain,
    "SelfBound": _check_self_bound,
    "NilpotentHalf": _check_nilpotent_half,
    "RowBound": _check_row_bound,
    "RepeatedRows": _check_repeated_rows,
    "SharpOffDiag": _check_sharp_off_diag,
    "FullBlock": _check_full_block,
    "SumDiffChain": _check_sum_diff_chain,
}


def run_check(check_id: str, inst: Instance, tol_scale: float = 1.0) -> list:
    """Evaluate one check family on an instance; returns its CheckResults."""
    if check_id not in _CHECKS:
        raise UnknownCheck(check_id)
    return _CHECKS[check_id](inst, tol_scale)


def validate_radius_methods(inst: Instance) -> float:
    """Cross-validate the compression route against the theta-sup formula.

    The compression identity is derived, not assumed: every suite instance
    re-checks it on the operator T and a disagreement beyond tolerance is a
    hard failure (ConsistencyError), not a recorded check result.
    """
    wc = inst.w("T")
    wt = a_numerical_radius(inst.op("T"), method="theta-sup", grid=cert_grid(inst.dim))
    dev = abs(wc - wt)
    if dev > RADIUS_AGREE * (1.0 + abs(wc)):
        raise ConsistencyError(
            f"radius methods disagree by {dev:g} on seed={inst.seed} "
            f"dim={inst.dim} rank={inst.rank}"
        )
    return dev


def buzano_check(x, y, z, metric: Metric, tol_scale: float = 1.0) -> CheckResult:
    """|<x,z> <z,y>| <= (||x|| ||y|| + |<x,y>|) / 2 for an A-unit pivot z."""
    nz = metric.norm_vec(z)
    if nz < EPS_MEM:
        raise DegenerateZ("pivot vector has numerically zero seminorm")
    zu = np.asarray(z, dtype=np.complex128) / nz
    lhs = abs(metric.inner(x, zu) * metric.inner(zu, y))
    nx = metric.norm_vec(x)
    ny = metric.norm_vec(y)
    rhs = 0.5 * (nx * ny + abs(metric.inner(x, y)))
    scale = 1.0 + nx * ny
    tol = 1e-10 * scale * tol_scale
    slack = rhs - lhs
    return CheckResult(
        "Buzano", 0, metric.dim, metric.rank,
        float(lhs), float(rhs), float(slack), scale, tol, bool(slack >= -tol),
    )


def gen_vector_triple(seed: int, metric: Metric):
    """Three seeded vectors (x, y, z) with z of nonzero seminorm.

    Degenerate z draws are replaced through an appended stream index so the
    trial count stays exact for callers.
    """
    n = metric.dim
    s = Stream(seed, "buzano")
    x = s.complex_gaussians(n)
    y = s.complex_gaussians(n)
    z = s.complex_gaussians(n)
    attempt = 0
    while metric.norm_vec(z) < EPS_MEM and attempt < 64:
        attempt += 1
        z = Stream(seed, "buzano-retry", attempt).complex_gaussians(n)
    return x, y, z


# -- suite runner ------------------------------------------------------------


def _normalize_ranks(dims, ranks):
    table = {}
    for dim in dims:
        if ranks is None:
            table[dim] = list(range(1, dim + 1))
        elif isinstance(ranks, dict):
            table[dim] = [r for r in ranks.get(dim, range(1, dim + 1)) if 1 <= r <= dim]
        else:
            table[dim] = [r for r in ranks if 1 <= r <= dim]
        if not table[dim]:
            raise BadShape(f"no admissible ranks for dim={dim}")
    return table


def run_suite(
    dims,
    ranks=None,
    trials: int = 1,
    base_seed: int = 0,
    tol_scale: float = 1.0,
) -> SuiteReport:
    """Run every check family on every generated instance.

    ``ranks`` may be None (all ranks 1..dim), a list applied to every dim, or
    a dict per dim.  Deterministic given ``base_seed``: instance seeds derive
    from (base_seed, dim, rank, trial) and evaluation order is fixed.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    dims = list(dims)
    rank_table = _normalize_ranks(dims, ranks)
    results = []
    summary: dict[str, CheckSummary] = {}
    instances = 0
    for dim in dims:
        for rank in rank_table[dim]:
            for trial in range(trials):
                seed = derive_seed(base_seed, "instance", dim, rank, trial)
                inst = gen_instance(seed, dim, rank)
                instances += 1
                validate_radius_methods(inst)
                for family in CHECK_FAMILIES:
                    for row in _CHECKS[family](inst, tol_scale):
                        results.append(row)
                        agg = summary.setdefault(row.check, CheckSummary())
                        agg.count += 1
                        if not row.passed:
                            agg.failures += 1
                        if row.slack < agg.min_slack:
                            agg.min_slack = row.slack
                            agg.argmin_seed = row.seed
                            agg.argmin_dim = row.dim
                            agg.argmin_rank = row.rank
    meta = {
        "seed": base_seed,
        "dims": dims,
        "ranks": {str(d): rank_table[d] for d in dims},
        "trials": trials,
        "instances": instances,
        "tolerances": {
            "tol_eq": TOL_EQ,
            "tol_ineq": TOL_INEQ,
            "radius_agree": RADIUS_AGREE,
            "tol_scale": tol_scale,
        },
        "version": "0.1.0",
    }
    return SuiteReport(meta=meta, results=results, summary=summary)


# -- tightness probe ---------------------------------------------------------


@dataclass
class ProbeResult:
    """Outcome of a slack-minimization probe over one inequality family."""

    check: str
    slack: float
    seed: int
    dim: int
    rank: int
    evaluations: int
    op_mats: dict
    metric_a: np.ndarray
    falsification: bool = False
    note: str = ""


class _ProbePoint:
    """Structured operator parameters for one probe restart."""

    def __init__(self, metric, basis, params, free_names):
        self.metric = metric
        self.basis = basis
        self.params = {k: tuple(np.array(b) for b in v) for k, v in params.items()}
        self.free_names = free_names

    def clone(self):
        return _ProbePoint(self.metric, self.basis, self.params, self.free_names)

    def build_instance(self, seed_tag: int) -> Instance:
        named = {}
        for name, blocks in self.params.items():
            named[name] = _op_from_blocks(self.basis, *blocks)
        # joint rescale of the free operators: every probed family is
        # positively homogeneous, so without this the descent would collapse
        # onto the trivial zero configuration
        mx = max(self.metric.seminorm_of(named[n]) for n in self.free_names)
        if mx > 1e-12:
            for n in self.free_names:
                named[n] = named[n] / mx
        return Instance(seed_tag, self.metric.dim, self.metric.rank,
                        self.metric, named)

    def coords(self):
        out = []
        for name in self.free_names:
            for bi, block in enumerate(self.params[name]):
                rows, cols = block.shape
                for i in range(rows):
                    for j in range(cols):
                        out.append((name, bi, i, j, 0))
                        out.append((name, bi, i, j, 1))
        return out

    def perturb(self, coord, delta):
        name, bi, i, j, part = coord
        new = self.clone()
        blocks = list(new.params[name])
        block = np.array(blocks[bi])
        block[i, j] += delta if part == 0 else 1j * delta
        blocks[bi] = block
        new.params[name] = tuple(blocks)
        return new


def _family_min_slack(check_id, inst, tol_scale):
    return min(row.slack for row in _CHECKS[check_id](inst, tol_scale))


def tightness_probe(
    check_id: str,
    dims,
    iterations: int,
    seed: int,
    identity_metric: bool = False,
    restarts: int = 4,
    tol_scale: float = 1.0,
) -> ProbeResult:
    """Hunt for the smallest slack of an inequality family.

    Random restarts plus coordinate-wise hill descent with a halving step.
    The returned slack is an empirical minimum, never a sharpness
    certificate; a slack below the family tolerance is flagged as a
    falsification candidate together with its full reproduction data.
    """
    if check_id not in _CHECKS:
        raise UnknownCheck(check_id)
    if check_id not in INEQUALITY_FAMILIES:
        raise NotAnInequality(f"{check_id} is an equality family")
    if iterations < 1:
        raise ValueError("iterations must be >= 1")
    dims = list(dims)
    free_names = _FAMILY_OPS[check_id]
    budget = max(1, iterations // max(1, restarts))
    best = None
    evals_total = 0
    for restart in range(restarts):
        dim = dims[restart % len(dims)]
        rseed = derive_seed(seed, "probe", check_id, restart)
        if identity_metric:
            metric = new_metric(np.eye(dim, dtype=np.complex128))
            basis = np.eye(dim, dtype=np.complex128)
            params = {}
            s = Stream(rseed, "probe-ops")
            for name in OPERATOR_NAMES:
                rr = s.complex_gaussians(dim, dim)
                nr = np.zeros((0, dim), dtype=np.complex128)
                nn = np.zeros((0, 0), dtype=np.complex128)
                params[name] = (rr, nr, nn)
            rank = dim
        else:
            rank = 1 + int(Stream(rseed, "probe-rank").uniforms(1)[0] * dim)
            rank = min(rank, dim)
            start = gen_instance(rseed, dim, rank)
            metric = start.metric
            basis = start.basis
            params = start.op_params
        point = _ProbePoint(metric, basis, params, free_names)
        cur = _family_min_slack(check_id, point.build_instance(rseed), tol_scale)
        evals = 1
        delta = 0.5
        coords = point.coords()
        while evals < budget and delta > 1e-13:
            improved = False
            for coord in coords:
                if evals >= budget:
                    break
                for sign in (1.0, -1.0):
                    trial = point.perturb(coord, sign * delta)
                    val = _family_min_slack(
                        check_id, trial.build_instance(rseed), tol_scale
                    )
                    evals += 1
                    if val < cur:
                        point = trial
                        cur = val
                        improved = True
                        break
                    if evals >= budget:
                        break
            if not improved:
                delta *= 0.5
        evals_total += evals
        if best is None or cur < best[0]:
            best = (cur, point, rseed, dim, rank)
    slack, point, rseed, dim, rank = best
    inst = point.build_instance(rseed)
    tol = TOL_INEQ * inst.scale * tol_scale
    return ProbeResult(
        check=check_id,
        slack=float(slack),
        seed=rseed,
        dim=dim,
        rank=rank,
        evaluations=evals_total,
        op_mats={n: inst.named[n] for n in free_names},
        metric_a=inst.metric.a,
        falsification=bool(slack < -tol),
        note="falsification candidate" if slack < -tol else "",
    )
