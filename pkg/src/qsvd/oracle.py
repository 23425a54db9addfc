"""Brute-force verification path, independent of the one-sided solver.

Everything here works on explicitly materialized real counterparts and a
plain two-sided cyclic Jacobi eigensolver for real symmetric matrices.  None
of the rotation kernels are shared with :mod:`qsvd.jacobi`, so the two paths
have independent failure modes; agreement between them is strong evidence
that both are right.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import qmatrix
from .errors import (DimensionMismatchError, MultiplicityViolationError,
                     NotConvergedError)
from .qmatrix import QMatrix

_EPS = float(np.finfo(np.float64).eps)


@dataclass
class SymmetricEigenResult:
    """Eigenvalues in descending order with matching eigenvector columns."""

    eigenvalues: np.ndarray
    iterations: int
    eigenvectors: np.ndarray


def _off_diag_norm(M: np.ndarray) -> float:
    masked = M.copy()
    np.fill_diagonal(masked, 0.0)
    return float(np.linalg.norm(masked))


def real_symmetric_eigen(M, tol: float = 1e-12,
                         max_sweeps: int = 100) -> SymmetricEigenResult:
    """Eigendecomposition of a real symmetric matrix by two-sided Jacobi.

    The input may be asymmetric up to 1e-12 * ||M||_F and is symmetrized
    internally.  Raises NotConvergedError if the off-diagonal norm has not
    dropped below tol * ||M||_F after max_sweeps cyclic sweeps.
    """
    A = np.array(M, dtype=np.float64)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"need a square matrix, got shape {A.shape}")
    scale = float(np.linalg.norm(A))
    if float(np.linalg.norm(A - A.T)) > 1e-12 * scale:
        raise ValueError("matrix is not symmetric to working precision")
    A = 0.5 * (A + A.T)
    n = A.shape[0]
    Q = np.eye(n)

    sweeps = 0
    while _off_diag_norm(A) > tol * scale:
        if sweeps >= max_sweeps:
            raise NotConvergedError(
                f"symmetric Jacobi did not converge in {max_sweeps} sweeps")
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if apq == 0.0:
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                if theta >= 0.0:
                    t = 1.0 / (theta + math.hypot(1.0, theta))
                else:
                    t = 1.0 / (theta - math.hypot(1.0, theta))
                c = 1.0 / math.hypot(1.0, t)
                s = t * c
                # A <- G^T A G with G the plane rotation [[c, s], [-s, c]]
                col_p = c * A[:, p] - s * A[:, q]
                col_q = s * A[:, p] + c * A[:, q]
                A[:, p], A[:, q] = col_p, col_q
                row_p = c * A[p, :] - s * A[q, :]
                row_q = s * A[p, :] + c * A[q, :]
                A[p, :], A[q, :] = row_p, row_q
                A[p, q] = A[q, p] = 0.0  # analytically zero by construction
                qcol_p = c * Q[:, p] - s * Q[:, q]
                qcol_q = s * Q[:, p] + c * Q[:, q]
                Q[:, p], Q[:, q] = qcol_p, qcol_q

    values = np.diag(A).copy()
    order = np.argsort(-values, kind="stable")
    return SymmetricEigenResult(eigenvalues=values[order], iterations=sweeps,
                                eigenvectors=Q[:, order])


def singular_values_via_counterpart(A: QMatrix,
                                    spread_tol: float = 1e-8) -> np.ndarray:
    """Singular values of A computed through its real counterpart.

    Forms the 4m-by-4n real encoding G, eigensolves G^T G, and checks that
    the eigenvalues cluster into n groups of exactly four (each singular
    value of A shows up four times in the encoding).  A cluster whose
    relative spread exceeds spread_tol signals a bug in the encoding and
    raises MultiplicityViolationError.  Returns sqrt of the group means,
    descending.
    """
    m, n = A.shape
    if m < n:
        raise ValueError(f"need rows >= cols, got {m}x{n}")
    G = qmatrix.real_counterpart(A)
    result = real_symmetric_eigen(G.T @ G)
    lam = result.eigenvalues  # descending, length 4n
    top = float(lam[0]) if lam.size else 0.0
    groups = lam.reshape(n, 4)
    means = groups.mean(axis=1)
    spreads = groups.max(axis=1) - groups.min(axis=1)
    # Additive slack covers clusters at zero, where a relative test is
    # meaningless against roundoff from the eigensolve.
    allowed = spread_tol * np.abs(means) + 64.0 * _EPS * max(top, 0.0)
    bad = np.nonzero(spreads > allowed)[0]
    if bad.size:
        w = int(bad[0])
        raise MultiplicityViolationError(
            f"eigenvalue group {w} has spread {spreads[w]:.3e} "
            f"(allowed {allowed[w]:.3e}): real counterpart is inconsistent")
    return np.sqrt(np.maximum(means, 0.0))


def jrs_matrices(block: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """The three 4k-by-4k structure matrices J, R, S for block size k."""
    I = np.eye(block)
    Z = np.zeros((block, block))
    J = np.block([[Z, Z, -I, Z], [Z, Z, Z, -I], [I, Z, Z, Z], [Z, I, Z, Z]])
    R = np.block([[Z, -I, Z, Z], [I, Z, Z, Z], [Z, Z, Z, I], [Z, Z, -I, Z]])
    S = np.block([[Z, Z, Z, -I], [Z, Z, I, Z], [Z, -I, Z, Z], [I, Z, Z, Z]])
    return J, R, S


@dataclass(frozen=True)
class JrsReport:
    """Max-abs deviations from the three symmetry and symplecticity identities."""

    symmetry_j: float
    symmetry_r: float
    symmetry_s: float
    symplectic_j: float
    symplectic_r: float
    symplectic_s: float

    @property
    def max_symmetry(self) -> float:
        return max(self.symmetry_j, self.symmetry_r, self.symmetry_s)

    @property
    def max_symplectic(self) -> float:
        return max(self.symplectic_j, self.symplectic_r, self.symplectic_s)


def check_jrs(M) -> JrsReport:
    """Measure how far a 4k-by-4k real matrix is from JRS structure.

    Symmetry deviations are max|T M T^T - M| and symplecticity deviations
    max|M T M^T - T| for T in {J, R, S}.  Real counterparts of square
    quaternion matrices are JRS-symmetric exactly (the conjugations only
    permute and flip signs of entries).
    """
    M = np.asarray(M, dtype=np.float64)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] % 4 != 0:
        raise DimensionMismatchError(
            f"need a square matrix with dimension divisible by 4, got {M.shape}")
    devs = []
    for T in jrs_matrices(M.shape[0] // 4):
        devs.append(float(np.max(np.abs(T @ M @ T.T - M))))
    for T in jrs_matrices(M.shape[0] // 4):
        devs.append(float(np.max(np.abs(M @ T @ M.T - T))))
    return JrsReport(*devs)
