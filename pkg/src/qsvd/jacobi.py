"""One-sided Jacobi SVD of quaternion matrices in component form.

The solver orthogonalizes the columns of A in pairs.  For a pair (p, q) it
computes the quaternion Gram statistics of the two columns, generates a
cosine-sine group (c_r, s) with c_r^2 + |s|^2 = 1 describing the 2-by-2
unitary

        [ c_r        s  ]
        [ -conj(s)  c_r ]

that makes the pair orthogonal, and applies it to the columns of A and of the
accumulator V from the right.  Because the update acts column-by-column on
the four real component matrices, the equivalent rotation of the 4m-by-4n
real encoding is orthogonal and JRS-symplectic without ever being formed.
Once every pair is orthogonal enough, singular values are the column norms
and U is obtained by column scaling: A V = U diag(sigma).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import qmatrix
from .errors import DimensionMismatchError, NotConvergedError
from .qmatrix import QMatrix
from .quaternion import Quaternion

EPS = float(np.finfo(np.float64).eps)


class Pivot(Enum):
    """Pair-selection strategy for one sweep."""

    CYCLIC = "cyclic"
    CLASSICAL = "classical"


class SortOrder(Enum):
    """Ordering of the singular values in the assembled factorization."""

    DESCENDING = "descending"
    NONE = "none"


@dataclass(frozen=True)
class JacobiConfig:
    """Solver knobs.

    tol is relative: the sweep loop stops once the off-diagonal norm of the
    Gram matrix drops below tol times its Frobenius norm.
    """

    tol: float = 1e-12
    max_sweeps: int = 30
    pivot: Pivot = Pivot.CYCLIC
    sort: SortOrder = SortOrder.DESCENDING

    def __post_init__(self):
        if not (math.isfinite(self.tol) and self.tol > 0.0):
            raise ValueError(f"tol must be positive and finite, got {self.tol}")
        if self.max_sweeps < 1:
            raise ValueError(f"max_sweeps must be >= 1, got {self.max_sweeps}")


@dataclass(frozen=True)
class CosineSineGroup:
    """Rotation parameters (c_r, s) with s = s0 + s1*i + s2*j + s3*k.

    Generated groups satisfy c_r^2 + |s|^2 = 1 and c_r >= 1/sqrt(2): the
    rotation angle never exceeds pi/4.
    """

    c_r: float
    s0: float
    s1: float
    s2: float
    s3: float

    @property
    def is_identity(self) -> bool:
        return (self.c_r == 1.0 and self.s0 == 0.0 and self.s1 == 0.0
                and self.s2 == 0.0 and self.s3 == 0.0)

    @property
    def s(self) -> Quaternion:
        return Quaternion(self.s0, self.s1, self.s2, self.s3)


IDENTITY_GROUP = CosineSineGroup(1.0, 0.0, 0.0, 0.0, 0.0)


@dataclass
class ConvergenceReport:
    """Telemetry of one solve.

    off_history[k] is the off-diagonal norm of the Gram matrix after k
    sweeps (entry 0 is the initial value), so its length is sweeps + 1.
    """

    sweeps: int
    rotations: int
    off_history: list[float] = field(default_factory=list)
    converged: bool = False


@dataclass
class QSvd:
    """Factors A V = U diag(sigma).

    For rows >= cols: U is m-by-n with orthonormal columns, sigma has n
    entries, V is n-by-n unitary.  For rows < cols the transposed problem is
    solved and the factors swap, so U is m-by-m, sigma has m entries and V is
    n-by-m with orthonormal columns.
    """

    U: QMatrix
    sigma: np.ndarray
    V: QMatrix


def generate_rotation(app: float, aqq: float, apq: Quaternion) -> CosineSineGroup:
    """Cosine-sine group orthogonalizing a column pair with the given stats.

    app and aqq are the squared column norms (the real Gram diagonal), apq
    the quaternion inner product of the pair.  With tau = (aqq - app) /
    (2 |apq|), t is the root of t^2 + 2 tau t - 1 = 0 smaller in magnitude
    (picked without cancellation), and

        c_r = 1 / sqrt(1 + t^2),    s = (t c_r / |apq|) apq.

    A pair already orthogonal to working precision, |apq| <= eps *
    sqrt(app * aqq), yields the identity group.  The exact-zero test of the
    underlying textbook scheme never fires in floating point, hence the
    scale-invariant threshold.
    """
    for name, value in (("app", app), ("aqq", aqq)):
        value = float(value)
        if not math.isfinite(value) or value < 0.0:
            raise ValueError(f"{name} must be a finite nonnegative real, got {value}")
    mod = abs(apq)
    if mod <= EPS * math.sqrt(app) * math.sqrt(aqq):
        return IDENTITY_GROUP
    tau = (aqq - app) / (2.0 * mod)
    if tau >= 0.0:
        t = 1.0 / (tau + math.hypot(1.0, tau))
    else:
        t = 1.0 / (tau - math.hypot(1.0, tau))
    c_r = 1.0 / math.hypot(1.0, t)
    delta = t * c_r / mod
    return CosineSineGroup(c_r, delta * apq.w, delta * apq.x,
                           delta * apq.y, delta * apq.z)


def _rotate_pair(comps, p: int, q: int, g: CosineSineGroup) -> None:
    """Columns p, q <- (c_r a_p - a_q conj(s), a_p s + c_r a_q).

    The quaternion scalars act on each entry from the RIGHT; expanded over
    the component columns this is sixteen fused multiply-adds per entry and
    never builds a quaternion temporary.
    """
    c = g.c_r
    s0, s1, s2, s3 = g.s0, g.s1, g.s2, g.s3
    c0, c1, c2, c3 = comps
    p0, p1, p2, p3 = c0[:, p], c1[:, p], c2[:, p], c3[:, p]
    q0, q1, q2, q3 = c0[:, q], c1[:, q], c2[:, q], c3[:, q]
    new_p0 = c * p0 - (q0 * s0 + q1 * s1 + q2 * s2 + q3 * s3)
    new_p1 = c * p1 + (q0 * s1 - q1 * s0 + q2 * s3 - q3 * s2)
    new_p2 = c * p2 + (q0 * s2 - q1 * s3 - q2 * s0 + q3 * s1)
    new_p3 = c * p3 + (q0 * s3 + q1 * s2 - q2 * s1 - q3 * s0)
    new_q0 = (p0 * s0 - p1 * s1 - p2 * s2 - p3 * s3) + c * q0
    new_q1 = (p0 * s1 + p1 * s0 + p2 * s3 - p3 * s2) + c * q1
    new_q2 = (p0 * s2 - p1 * s3 + p2 * s0 + p3 * s1) + c * q2
    new_q3 = (p0 * s3 + p1 * s2 - p2 * s1 + p3 * s0) + c * q3
    c0[:, p], c1[:, p], c2[:, p], c3[:, p] = new_p0, new_p1, new_p2, new_p3
    c0[:, q], c1[:, q], c2[:, q], c3[:, q] = new_q0, new_q1, new_q2, new_q3


def apply_rotation_columns(A: QMatrix, p: int, q: int, g: CosineSineGroup) -> None:
    """Apply a cosine-sine group to columns p and q of A, in place."""
    n = A.cols
    if not (0 <= p < n and 0 <= q < n):
        raise IndexError(f"column pair ({p},{q}) outside {n} columns")
    if p == q:
        raise IndexError("rotation needs two distinct columns")
    _rotate_pair(A.components(), p, q, g)


def _column_norm_sq(A: QMatrix, w: int) -> float:
    c0, c1, c2, c3 = (c[:, w] for c in A.components())
    return float(c0 @ c0 + c1 @ c1 + c2 @ c2 + c3 @ c3)


def _check_accumulator(A: QMatrix, V: QMatrix) -> None:
    if V.rows != A.cols or V.cols != A.cols:
        raise DimensionMismatchError(
            f"accumulator must be {A.cols}x{A.cols}, got {V.rows}x{V.cols}")


def sweep_cyclic(A: QMatrix, V: QMatrix) -> int:
    """One row-cyclic pass over all column pairs, mutating A and V.

    Pairs are visited in the order (0,1), (0,2), ..., (n-2,n-1).  The Gram
    statistics are recomputed from the current columns at every pivot; no
    Gram matrix is maintained incrementally.  Returns the number of
    non-identity rotations applied.
    """
    _check_accumulator(A, V)
    n = A.cols
    count = 0
    for p in range(n - 1):
        for q in range(p + 1, n):
            app = _column_norm_sq(A, p)
            aqq = _column_norm_sq(A, q)
            apq = qmatrix.gram_entry(A, p, q)
            g = generate_rotation(app, aqq, apq)
            if g.is_identity:
                continue
            _rotate_pair(A.components(), p, q, g)
            _rotate_pair(V.components(), p, q, g)
            count += 1
    return count


def find_max_pivot(A: QMatrix) -> tuple[int, int]:
    """Column pair maximizing the Gram off-diagonal modulus.

    Ties resolve to the lexicographically smallest (p, q).
    """
    n = A.cols
    if n < 2:
        raise ValueError("pivot search needs at least two columns")
    B = qmatrix.gram(A)
    mod_sq = sum(c * c for c in B.components())
    up, uq = np.triu_indices(n, k=1)
    # triu_indices enumerates row-major, so argmax's first hit is the
    # lexicographic tie-break.
    k = int(np.argmax(mod_sq[up, uq]))
    return int(up[k]), int(uq[k])


def sweep_classical(A: QMatrix, V: QMatrix) -> int:
    """One sweep-equivalent of n(n-1)/2 max-pivot rotations, mutating A and V.

    Every step rescans the full Gram off-diagonal for the pair of maximal
    modulus.  Stops early once the best pair is already orthogonal to
    working precision.  Returns the number of non-identity rotations.
    """
    _check_accumulator(A, V)
    n = A.cols
    if n < 2:
        return 0
    count = 0
    for _ in range(n * (n - 1) // 2):
        p, q = find_max_pivot(A)
        app = _column_norm_sq(A, p)
        aqq = _column_norm_sq(A, q)
        apq = qmatrix.gram_entry(A, p, q)
        g = generate_rotation(app, aqq, apq)
        if g.is_identity:
            break
        _rotate_pair(A.components(), p, q, g)
        _rotate_pair(V.components(), p, q, g)
        count += 1
    return count


_SWEEPS = {Pivot.CYCLIC: sweep_cyclic, Pivot.CLASSICAL: sweep_classical}


def svd(A: QMatrix, config: JacobiConfig | None = None) -> tuple[QSvd, ConvergenceReport]:
    """Singular value decomposition A V = U diag(sigma) by one-sided Jacobi.

    Sweeps run until off(gram(A)) <= tol * ||gram(A)||_F, both recomputed
    once per sweep, or until max_sweeps is hit, in which case
    NotConvergedError is raised carrying the report and the factors
    assembled from the final iterate.  Inputs with fewer rows than columns
    are handled by solving the conjugate-transposed problem and swapping the
    factors.  The input matrix itself is not modified.
    """
    config = config or JacobiConfig()
    if A.rows == 0 or A.cols == 0:
        raise ValueError("cannot decompose an empty matrix")
    if A.rows < A.cols:
        inner, report = svd(qmatrix.conj_transpose(A), config)
        return QSvd(U=inner.V, sigma=inner.sigma, V=inner.U), report

    work = A.copy()
    V = QMatrix.identity(A.cols)
    sweep = _SWEEPS[config.pivot]

    def measure() -> tuple[float, float]:
        B = qmatrix.gram(work)
        return qmatrix.off_norm(B), qmatrix.frobenius(B)

    off, scale = measure()
    history = [off]
    rotations = 0
    sweeps = 0
    while off > config.tol * scale and sweeps < config.max_sweeps:
        rotations += sweep(work, V)
        sweeps += 1
        off, scale = measure()
        history.append(off)

    converged = off <= config.tol * scale
    result = _assemble(work, V, config.sort)
    report = ConvergenceReport(sweeps=sweeps, rotations=rotations,
                               off_history=history, converged=converged)
    if not converged:
        raise NotConvergedError(
            f"off-norm {off:.3e} still above {config.tol:.1e} * {scale:.3e} "
            f"after {sweeps} sweeps", report=report, result=result)
    return result, report


def _assemble(work: QMatrix, V: QMatrix, sort: SortOrder) -> QSvd:
    """Column scaling of the orthogonalized iterate into U, sigma, V."""
    m, n = work.shape
    comps = [c.copy(order="F") for c in work.components()]
    vcomps = [c.copy(order="F") for c in V.components()]
    sigma = np.sqrt(sum((c * c).sum(axis=0) for c in comps))

    if sort is SortOrder.DESCENDING:
        order = np.argsort(-sigma, kind="stable")
        sigma = sigma[order]
        comps = [c[:, order].copy(order="F") for c in comps]
        vcomps = [c[:, order].copy(order="F") for c in vcomps]

    # Columns whose norm is at roundoff level carry no direction; zero their
    # singular value and rebuild the column from the standard basis so that
    # U keeps orthonormal columns even for rank-deficient input.
    threshold = n * EPS * (float(sigma.max()) if sigma.size else 0.0)
    ucomps = [np.zeros((m, n), order="F") for _ in range(4)]
    filled: list[int] = []
    deficient: list[int] = []
    for w in range(n):
        if sigma[w] > threshold:
            inv = 1.0 / sigma[w]
            for uc, wc in zip(ucomps, comps):
                uc[:, w] = wc[:, w] * inv
            filled.append(w)
        else:
            sigma[w] = 0.0
            deficient.append(w)
    for w in deficient:
        _complete_column(ucomps, filled, w)
        filled.append(w)

    return QSvd(U=QMatrix(*ucomps), sigma=sigma, V=QMatrix(*vcomps))


def _complete_column(ucomps, filled: list[int], w: int) -> None:
    """Fill column w with a unit vector orthogonal to all filled columns.

    Candidates are standard basis vectors, orthogonalized by modified
    Gram-Schmidt with a second re-orthogonalization pass; the first
    candidate keeping at least half its norm wins.
    """
    m = ucomps[0].shape[0]
    best = None
    best_norm = 0.0
    for t in range(m):
        v = [np.zeros(m) for _ in range(4)]
        v[0][t] = 1.0
        for _ in range(2):
            for j in filled:
                u_cols = tuple(uc[:, j] for uc in ucomps)
                d0, d1, d2, d3 = qmatrix._quat_dot(u_cols, tuple(v))
                a0, a1, a2, a3 = u_cols
                # v -= u_j * (u_j^* v), coefficient on the right
                v[0] -= a0 * d0 - a1 * d1 - a2 * d2 - a3 * d3
                v[1] -= a0 * d1 + a1 * d0 + a2 * d3 - a3 * d2
                v[2] -= a0 * d2 - a1 * d3 + a2 * d0 + a3 * d1
                v[3] -= a0 * d3 + a1 * d2 - a2 * d1 + a3 * d0
        norm = math.sqrt(sum(float(c @ c) for c in v))
        if norm > 0.5:
            best, best_norm = v, norm
            break
        if norm > best_norm:
            best, best_norm = v, norm
    if best is None or best_norm == 0.0:
        raise RuntimeError("could not complete an orthonormal basis")
    for uc, c in zip(ucomps, best):
        uc[:, w] = c / best_norm


def low_rank(result: QSvd, rank: int) -> QMatrix:
    """Sum of the leading `rank` singular triplets sigma_w * u_w * v_w^*."""
    n = int(result.sigma.size)
    if not 1 <= rank <= n:
        raise IndexError(f"rank must be in [1, {n}], got {rank}")
    idx = range(rank)
    scaled = qmatrix.scale_columns_real(qmatrix.take_columns(result.U, idx),
                                        result.sigma[:rank])
    return qmatrix.matmul(scaled, qmatrix.conj_transpose(qmatrix.take_columns(result.V, idx)))


def reconstruction_residual(A: QMatrix, result: QSvd) -> float:
    """Frobenius norm of A V - U diag(sigma)."""
    av = qmatrix.matmul(A, result.V)
    us = qmatrix.scale_columns_real(result.U, result.sigma)
    return qmatrix.frobenius(av - us)
