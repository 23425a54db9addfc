"""Quaternion matrices stored as four real component matrices.

An m-by-n quaternion matrix A = A0 + A1*i + A2*j + A3*k is kept as the four
real matrices A0..A3.  This is exactly the first block row of the 4m-by-4n
real counterpart, and it is all the one-sided Jacobi solver ever touches: the
column kernels reduce to real dot products and fused multiply-adds over the
component columns.  The full real counterpart is materialized only for
testing and cross-checking (see :mod:`qsvd.oracle`).
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatchError, ParseError
from .quaternion import Quaternion


class QMatrix:
    """Component-stored quaternion matrix.

    The four component matrices are kept in column-major (Fortran) order so
    that the column extractions in the Jacobi sweep hit contiguous memory.
    Instances should be treated as immutable except through the explicitly
    mutating operations (:func:`scale_column_right` and the rotation/sweep
    routines in :mod:`qsvd.jacobi`); sharing requires the usual read-only or
    exclusive-access discipline, there is no internal locking.
    """

    __slots__ = ("comp0", "comp1", "comp2", "comp3")

    def __init__(self, comp0, comp1, comp2, comp3):
        comps = []
        for c in (comp0, comp1, comp2, comp3):
            arr = np.asfortranarray(c, dtype=np.float64)
            if arr.ndim != 2:
                raise DimensionMismatchError(
                    f"component must be 2-D, got shape {arr.shape}")
            comps.append(arr)
        shape = comps[0].shape
        if shape[0] < 1 or shape[1] < 1:
            raise ValueError(f"matrix dimensions must be positive, got {shape}")
        for arr in comps[1:]:
            if arr.shape != shape:
                raise DimensionMismatchError(
                    f"component shapes differ: {arr.shape} vs {shape}")
        for arr in comps:
            if not np.isfinite(arr).all():
                raise ValueError("non-finite entry in quaternion matrix")
        self.comp0, self.comp1, self.comp2, self.comp3 = comps

    # -- construction ------------------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "QMatrix":
        z = np.zeros((rows, cols), order="F")
        return cls(z, z.copy(), z.copy(), z.copy())

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        z = np.zeros((n, n), order="F")
        return cls(np.eye(n, order="F"), z, z.copy(), z.copy())

    @classmethod
    def diagonal(cls, values) -> "QMatrix":
        values = np.asarray(values, dtype=np.float64)
        z = np.zeros((values.size, values.size), order="F")
        return cls(np.diag(values), z, z.copy(), z.copy())

    @classmethod
    def from_real(cls, matrix) -> "QMatrix":
        """Embed a real matrix as a quaternion matrix with zero i/j/k parts."""
        matrix = np.asarray(matrix, dtype=np.float64)
        z = np.zeros_like(matrix, order="F")
        return cls(matrix, z, z.copy(), z.copy())

    @classmethod
    def from_entries(cls, entries: Sequence[Sequence[Quaternion]]) -> "QMatrix":
        rows = len(entries)
        cols = len(entries[0])
        comps = [np.zeros((rows, cols), order="F") for _ in range(4)]
        for i, row in enumerate(entries):
            if len(row) != cols:
                raise DimensionMismatchError("ragged rows in entry table")
            for j, q in enumerate(row):
                comps[0][i, j] = q.w
                comps[1][i, j] = q.x
                comps[2][i, j] = q.y
                comps[3][i, j] = q.z
        return cls(*comps)

    # -- basic queries -----------------------------------------------------

    @property
    def rows(self) -> int:
        return self.comp0.shape[0]

    @property
    def cols(self) -> int:
        return self.comp0.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.comp0.shape

    def components(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        return (self.comp0, self.comp1, self.comp2, self.comp3)

    def entry(self, i: int, j: int) -> Quaternion:
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"entry ({i},{j}) outside {self.rows}x{self.cols}")
        return Quaternion(self.comp0[i, j], self.comp1[i, j],
                          self.comp2[i, j], self.comp3[i, j])

    def copy(self) -> "QMatrix":
        return QMatrix(self.comp0.copy(order="F"), self.comp1.copy(order="F"),
                       self.comp2.copy(order="F"), self.comp3.copy(order="F"))

    def __repr__(self) -> str:
        return f"QMatrix({self.rows}x{self.cols})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, QMatrix):
            return NotImplemented
        return all(np.array_equal(a, b)
                   for a, b in zip(self.components(), other.components()))

    def __add__(self, other: "QMatrix") -> "QMatrix":
        if not isinstance(other, QMatrix):
            return NotImplemented
        if self.shape != other.shape:
            raise DimensionMismatchError(f"{self.shape} + {other.shape}")
        return QMatrix(*(a + b for a, b in zip(self.components(), other.components())))

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        if not isinstance(other, QMatrix):
            return NotImplemented
        if self.shape != other.shape:
            raise DimensionMismatchError(f"{self.shape} - {other.shape}")
        return QMatrix(*(a - b for a, b in zip(self.components(), other.components())))


def _quat_dot(a_cols, b_cols) -> tuple[float, float, float, float]:
    """Components of sum_i conjugate(a_i) * b_i over two component-column packs.

    This is the quaternion inner product of two columns expanded into the
    sixteen real dot products; it is the workhorse behind every Gram entry.
    """
    a0, a1, a2, a3 = a_cols
    b0, b1, b2, b3 = b_cols
    return (
        a0 @ b0 + a1 @ b1 + a2 @ b2 + a3 @ b3,
        a0 @ b1 - a1 @ b0 - a2 @ b3 + a3 @ b2,
        a0 @ b2 + a1 @ b3 - a2 @ b0 - a3 @ b1,
        a0 @ b3 - a1 @ b2 + a2 @ b1 - a3 @ b0,
    )


def _column_views(A: QMatrix, w: int):
    return (A.comp0[:, w], A.comp1[:, w], A.comp2[:, w], A.comp3[:, w])


def gram_entry(A: QMatrix, p: int, q: int) -> Quaternion:
    """Quaternion inner product of columns p and q (conjugate on the left).

    For p == q the imaginary parts vanish identically, so the real sum of
    squares is returned without computing them.
    """
    n = A.cols
    if not (0 <= p < n and 0 <= q < n):
        raise IndexError(f"column pair ({p},{q}) outside {n} columns")
    if p == q:
        c = _column_views(A, p)
        return Quaternion(c[0] @ c[0] + c[1] @ c[1] + c[2] @ c[2] + c[3] @ c[3],
                          0.0, 0.0, 0.0)
    return Quaternion(*_quat_dot(_column_views(A, p), _column_views(A, q)))


def gram(A: QMatrix) -> QMatrix:
    """The n-by-n Hermitian Gram matrix conj_transpose(A) * A.

    Computed from the component matrices with BLAS products and then
    symmetrized, which makes the Hermitian structure (symmetric scalar part,
    antisymmetric imaginary parts, hence an exactly real diagonal) hold to
    the last bit.
    """
    a0, a1, a2, a3 = A.components()
    c0 = a0.T @ a0 + a1.T @ a1 + a2.T @ a2 + a3.T @ a3
    c1 = a0.T @ a1 - a1.T @ a0 - a2.T @ a3 + a3.T @ a2
    c2 = a0.T @ a2 + a1.T @ a3 - a2.T @ a0 - a3.T @ a1
    c3 = a0.T @ a3 - a1.T @ a2 + a2.T @ a1 - a3.T @ a0
    return QMatrix(0.5 * (c0 + c0.T), 0.5 * (c1 - c1.T),
                   0.5 * (c2 - c2.T), 0.5 * (c3 - c3.T))


def off_norm(B: QMatrix) -> float:
    """Square root of the summed squared moduli of all off-diagonal entries.

    Computed by masking the diagonal rather than by subtracting diagonal
    contributions from the total, which would cancel catastrophically once
    the matrix is nearly diagonal.
    """
    if B.rows != B.cols:
        raise DimensionMismatchError(f"off-norm needs a square matrix, got {B.shape}")
    total = 0.0
    for comp in B.components():
        masked = comp.copy()
        np.fill_diagonal(masked, 0.0)
        total += float(np.sum(masked * masked))
    return float(np.sqrt(total))


def frobenius(A: QMatrix) -> float:
    """Frobenius norm over all four components."""
    total = sum(float(np.sum(c * c)) for c in A.components())
    return float(np.sqrt(total))


def real_counterpart(A: QMatrix) -> np.ndarray:
    """The 4m-by-4n real matrix that represents A over the reals.

    Layout (block row by block row):

        [  A0   A2   A1   A3 ]
        [ -A2   A0   A3  -A1 ]
        [ -A1  -A3   A0   A2 ]
        [ -A3   A1  -A2   A0 ]

    Quaternion sums and products map to the corresponding real sums and
    products of these encodings, and for square A the encoding is
    JRS-symmetric.  The solver never materializes it; it exists for oracles.
    """
    a0, a1, a2, a3 = A.components()
    return np.block([
        [a0, a2, a1, a3],
        [-a2, a0, a3, -a1],
        [-a1, -a3, a0, a2],
        [-a3, a1, -a2, a0],
    ])


def conj_transpose(A: QMatrix) -> QMatrix:
    """Conjugate transpose: transpose the layout, negate the imaginary parts."""
    return QMatrix(A.comp0.T, -A.comp1.T, -A.comp2.T, -A.comp3.T)


def matmul(A: QMatrix, B: QMatrix) -> QMatrix:
    """Quaternion matrix product via sixteen real matrix products."""
    if A.cols != B.rows:
        raise DimensionMismatchError(f"matmul shapes {A.shape} @ {B.shape}")
    a0, a1, a2, a3 = A.components()
    b0, b1, b2, b3 = B.components()
    return QMatrix(
        a0 @ b0 - a1 @ b1 - a2 @ b2 - a3 @ b3,
        a0 @ b1 + a1 @ b0 + a2 @ b3 - a3 @ b2,
        a0 @ b2 - a1 @ b3 + a2 @ b0 + a3 @ b1,
        a0 @ b3 + a1 @ b2 - a2 @ b1 + a3 @ b0,
    )


def column(A: QMatrix, w: int) -> QMatrix:
    """Column w as an m-by-1 quaternion matrix (a copy)."""
    if not 0 <= w < A.cols:
        raise IndexError(f"column {w} outside {A.cols} columns")
    return QMatrix(*(c[:, w:w + 1].copy(order="F") for c in A.components()))


def take_columns(A: QMatrix, indices: Iterable[int]) -> QMatrix:
    """A new matrix made of the selected columns, in the given order."""
    idx = list(indices)
    for w in idx:
        if not 0 <= w < A.cols:
            raise IndexError(f"column {w} outside {A.cols} columns")
    return QMatrix(*(c[:, idx].copy(order="F") for c in A.components()))


def scale_columns_real(A: QMatrix, values) -> QMatrix:
    """A new matrix with column w multiplied by the real scalar values[w]."""
    values = np.asarray(values, dtype=np.float64)
    if values.shape != (A.cols,):
        raise DimensionMismatchError(
            f"need {A.cols} scale factors, got shape {values.shape}")
    return QMatrix(*(c * values[np.newaxis, :] for c in A.components()))


def scale_column_right(A: QMatrix, w: int, s: Quaternion) -> None:
    """Multiply every entry of column w by s on the RIGHT, in place.

    Order matters: entry * s, not s * entry.
    """
    if not 0 <= w < A.cols:
        raise IndexError(f"column {w} outside {A.cols} columns")
    a0, a1, a2, a3 = (c[:, w] for c in A.components())
    s0, s1, s2, s3 = s.as_tuple()
    n0 = a0 * s0 - a1 * s1 - a2 * s2 - a3 * s3
    n1 = a0 * s1 + a1 * s0 + a2 * s3 - a3 * s2
    n2 = a0 * s2 - a1 * s3 + a2 * s0 + a3 * s1
    n3 = a0 * s3 + a1 * s2 - a2 * s1 + a3 * s0
    A.comp0[:, w] = n0
    A.comp1[:, w] = n1
    A.comp2[:, w] = n2
    A.comp3[:, w] = n3


def random_uniform(rows: int, cols: int, rng: np.random.Generator) -> QMatrix:
    """Random quaternion matrix with all four components drawn from U(0, 1)."""
    return QMatrix(rng.random((rows, cols)), rng.random((rows, cols)),
                   rng.random((rows, cols)), rng.random((rows, cols)))


# -- QMAT text format -------------------------------------------------------
#
# Line 1: "QMAT <m> <n>", then m*n data lines in row-major order, each holding
# the four components "<a0> <a1> <a2> <a3>" printed with 17 significant digits
# so that finite doubles round-trip bit-exactly.  Blank lines and lines
# starting with '#' are ignored anywhere in the file.

def _format_real(v: float) -> str:
    return format(v, ".17g")


def _significant_lines(text: str):
    """Yield (1-based line number, stripped text) skipping blanks and comments."""
    for number, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        yield number, stripped


def _parse_reals(tokens: list[str], count: int, line: int) -> list[float]:
    if len(tokens) != count:
        raise ParseError(f"expected {count} values, found {len(tokens)}", line=line)
    values = []
    for tok in tokens:
        try:
            v = float(tok)
        except ValueError:
            raise ParseError(f"bad number {tok!r}", line=line) from None
        if not np.isfinite(v):
            raise ParseError(f"non-finite value {tok!r}", line=line)
        values.append(v)
    return values


def save_qmat(A: QMatrix, path, comment: str | None = None) -> None:
    """Write A in the QMAT text format; optional comment lines go on top."""
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"QMAT {A.rows} {A.cols}")
    a0, a1, a2, a3 = A.components()
    for i in range(A.rows):
        for j in range(A.cols):
            lines.append(" ".join(_format_real(c[i, j]) for c in (a0, a1, a2, a3)))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def load_qmat(path) -> QMatrix:
    """Parse a QMAT file; raises ParseError with the offending line number."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    stream = _significant_lines(text)
    try:
        header_line, header = next(stream)
    except StopIteration:
        raise ParseError("empty file, expected 'QMAT <m> <n>' header") from None
    tokens = header.split()
    if len(tokens) != 3 or tokens[0] != "QMAT":
        raise ParseError(f"expected 'QMAT <m> <n>' header, found {header!r}",
                         line=header_line)
    try:
        rows, cols = int(tokens[1]), int(tokens[2])
    except ValueError:
        raise ParseError(f"bad dimensions in header {header!r}",
                         line=header_line) from None
    if rows < 1 or cols < 1:
        raise ParseError(f"dimensions must be positive, got {rows}x{cols}",
                         line=header_line)
    expected = rows * cols
    comps = [np.zeros((rows, cols), order="F") for _ in range(4)]
    count = 0
    last_line = header_line
    for number, content in stream:
        if count >= expected:
            raise ParseError(
                f"expected {expected} entries, found more data", line=number)
        values = _parse_reals(content.split(), 4, number)
        i, j = divmod(count, cols)
        for c, v in zip(comps, values):
            c[i, j] = v
        count += 1
        last_line = number
    if count != expected:
        raise ParseError(f"expected {expected} entries, found {count}",
                         line=last_line)
    return QMatrix(*comps)
