"""Dense complex matrices at qubit scale with deterministic factorizations.

Matrices are immutable, row-major, and small (everything downstream is 2x2
to 4x4 plus Gram matrices of Kraus sets). The hot loops, products and the
cyclic Jacobi eigensolver, live in :mod:`blochiso._kernels`, which selects
the compiled backend when it is built.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from math import sqrt
from typing import Iterable, Sequence

from . import _kernels
from .errors import DimensionError, DomainError

#: Absolute entrywise tolerance used by default everywhere in the library.
DEFAULT_TOL = 1e-9

_PHASE_CUTOFF = 1e-12
_SVD_RELATIVE_CUTOFF = 1e-12


@dataclass(frozen=True)
class ComplexMatrix:
    """Immutable row-major complex matrix with finite entries."""

    rows: int
    cols: int
    entries: tuple[complex, ...]

    def __post_init__(self) -> None:
        if self.rows <= 0 or self.cols <= 0:
            raise DimensionError(f"matrix shape must be positive, got {self.rows}x{self.cols}")
        ents = tuple(complex(e) for e in self.entries)
        if len(ents) != self.rows * self.cols:
            raise DimensionError(
                f"expected {self.rows * self.cols} entries for a "
                f"{self.rows}x{self.cols} matrix, got {len(ents)}"
            )
        for e in ents:
            if not cmath.isfinite(e):
                raise DomainError("matrix entries must be finite")
        object.__setattr__(self, "entries", ents)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[complex]]) -> "ComplexMatrix":
        nrows = len(rows)
        if nrows == 0:
            raise DimensionError("matrix needs at least one row")
        ncols = len(rows[0])
        flat: list[complex] = []
        for row in rows:
            if len(row) != ncols:
                raise DimensionError("ragged rows")
            flat.extend(row)
        return cls(nrows, ncols, tuple(flat))

    @classmethod
    def identity(cls, n: int) -> "ComplexMatrix":
        return cls(n, n, tuple(1.0 + 0j if i == j else 0j for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ComplexMatrix":
        return cls(rows, cols, (0j,) * (rows * cols))

    @classmethod
    def column(cls, values: Iterable[complex]) -> "ComplexMatrix":
        vals = tuple(complex(v) for v in values)
        return cls(len(vals), 1, vals)

    def at(self, i: int, j: int) -> complex:
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list[complex]]:
        return [
            list(self.entries[i * self.cols : (i + 1) * self.cols]) for i in range(self.rows)
        ]

    def is_square(self) -> bool:
        return self.rows == self.cols

    def frobenius_norm(self) -> float:
        return sqrt(sum(e.real * e.real + e.imag * e.imag for e in self.entries))

    def __add__(self, other: "ComplexMatrix") -> "ComplexMatrix":
        return add(self, other)

    def __sub__(self, other: "ComplexMatrix") -> "ComplexMatrix":
        return sub(self, other)

    def __matmul__(self, other: "ComplexMatrix") -> "ComplexMatrix":
        return mul(self, other)

    def __mul__(self, z: complex) -> "ComplexMatrix":
        return scale(self, z)

    __rmul__ = __mul__

    def __neg__(self) -> "ComplexMatrix":
        return ComplexMatrix(self.rows, self.cols, tuple(-e for e in self.entries))


@dataclass(frozen=True)
class HermitianEigenResult:
    """Spectral factorization A = V diag(eigenvalues) V*.

    Eigenvalues are sorted descending; eigenvector columns are orthonormal,
    each with its first non-negligible component made real positive.
    """

    eigenvalues: tuple[float, ...]
    eigenvectors: ComplexMatrix


@dataclass(frozen=True)
class SvdResult:
    """Factorization A = left diag(singular_values) right*."""

    left: ComplexMatrix
    singular_values: tuple[float, ...]
    right: ComplexMatrix


def _require_same_shape(a: ComplexMatrix, b: ComplexMatrix) -> None:
    if a.rows != b.rows or a.cols != b.cols:
        raise DimensionError(f"shape mismatch: {a.rows}x{a.cols} vs {b.rows}x{b.cols}")


def add(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    _require_same_shape(a, b)
    return ComplexMatrix(a.rows, a.cols, tuple(x + y for x, y in zip(a.entries, b.entries)))


def sub(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    _require_same_shape(a, b)
    return ComplexMatrix(a.rows, a.cols, tuple(x - y for x, y in zip(a.entries, b.entries)))


def scale(a: ComplexMatrix, z: complex) -> ComplexMatrix:
    return ComplexMatrix(a.rows, a.cols, tuple(e * z for e in a.entries))


def mul(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    if a.cols != b.rows:
        raise DimensionError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    out = _kernels.matmul(a.rows, a.cols, a.entries, b.cols, b.entries)
    return ComplexMatrix(a.rows, b.cols, tuple(out))


def adjoint(a: ComplexMatrix) -> ComplexMatrix:
    ents = tuple(a.entries[i * a.cols + j].conjugate() for j in range(a.cols) for i in range(a.rows))
    return ComplexMatrix(a.cols, a.rows, ents)


def trace(a: ComplexMatrix) -> complex:
    if not a.is_square():
        raise DimensionError("trace needs a square matrix")
    t = 0j
    for i in range(a.rows):
        t += a.entries[i * a.cols + i]
    return t


def kron(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    rows = a.rows * b.rows
    cols = a.cols * b.cols
    ents = [0j] * (rows * cols)
    for i in range(a.rows):
        for j in range(a.cols):
            aij = a.at(i, j)
            for k in range(b.rows):
                for l in range(b.cols):
                    ents[(i * b.rows + k) * cols + (j * b.cols + l)] = aij * b.at(k, l)
    return ComplexMatrix(rows, cols, tuple(ents))


def max_abs_diff(a: ComplexMatrix, b: ComplexMatrix) -> float:
    _require_same_shape(a, b)
    return max(abs(x - y) for x, y in zip(a.entries, b.entries))


def allclose(a: ComplexMatrix, b: ComplexMatrix, tol: float = DEFAULT_TOL) -> bool:
    return max_abs_diff(a, b) <= tol


def hermitian_deviation(a: ComplexMatrix) -> float:
    """Largest entrywise deviation from A = A*."""
    if not a.is_square():
        raise DimensionError("hermitian_deviation needs a square matrix")
    return max_abs_diff(a, adjoint(a))


def _phase_fix_columns(n: int, v: list[complex]) -> list[complex]:
    for k in range(n):
        pivot = 0j
        prow = -1
        for i in range(n):
            z = v[i * n + k]
            if abs(z) > _PHASE_CUTOFF:
                pivot = z
                prow = i
                break
        if prow < 0:
            continue
        w = pivot.conjugate() / abs(pivot)
        for i in range(n):
            v[i * n + k] *= w
    return v


def hermitian_eig(m: ComplexMatrix, tol: float = DEFAULT_TOL) -> HermitianEigenResult:
    """Spectral decomposition of a Hermitian matrix via cyclic Jacobi.

    Deterministic: eigenvalues descending (stable order on ties), eigenvector
    phases pinned. Raises :class:`DomainError` when the input departs from
    Hermiticity by more than ``tol``.
    """
    if not m.is_square():
        raise DimensionError("hermitian_eig needs a square matrix")
    dev = hermitian_deviation(m)
    if dev > tol:
        raise DomainError(f"matrix is not Hermitian within {tol:g} (deviation {dev:.3e})")
    n = m.rows
    sym = scale(add(m, adjoint(m)), 0.5)
    diag, vflat = _kernels.jacobi_hermitian(n, sym.entries)
    order = sorted(range(n), key=diag.__getitem__, reverse=True)
    eigenvalues = tuple(diag[k] for k in order)
    reordered = [0j] * (n * n)
    for new_col, old_col in enumerate(order):
        for i in range(n):
            reordered[i * n + new_col] = vflat[i * n + old_col]
    vectors = _phase_fix_columns(n, reordered)
    return HermitianEigenResult(eigenvalues, ComplexMatrix(n, n, tuple(vectors)))


def _column(m: ComplexMatrix, k: int) -> ComplexMatrix:
    return ComplexMatrix(m.rows, 1, tuple(m.at(i, k) for i in range(m.rows)))


def _vec_norm(v: ComplexMatrix) -> float:
    return sqrt(sum(e.real * e.real + e.imag * e.imag for e in v.entries))


def _complete_orthonormal(n: int, columns: list[ComplexMatrix | None]) -> list[ComplexMatrix]:
    """Fill the ``None`` slots with unit vectors orthogonal to the rest."""
    fixed = [c for c in columns if c is not None]
    for k, col in enumerate(columns):
        if col is not None:
            continue
        for cand in range(n):
            v = [0j] * n
            v[cand] = 1.0 + 0j
            # Two Gram-Schmidt passes keep the result orthonormal to roundoff.
            for _ in range(2):
                for u in fixed:
                    overlap = sum(u.entries[i].conjugate() * v[i] for i in range(n))
                    for i in range(n):
                        v[i] -= overlap * u.entries[i]
            nrm = sqrt(sum(e.real * e.real + e.imag * e.imag for e in v))
            if nrm > 1e-6:
                unit = ComplexMatrix(n, 1, tuple(e / nrm for e in v))
                columns[k] = unit
                fixed.append(unit)
                break
        else:
            raise DomainError("failed to complete an orthonormal basis")
    return columns  # type: ignore[return-value]


def svd(m: ComplexMatrix) -> SvdResult:
    """Singular value decomposition of a square matrix.

    Built from the Jacobi eigendecomposition of m* m; left singular vectors
    for negligible singular values are completed to a unitary basis.
    """
    if not m.is_square():
        raise DimensionError("svd supports square matrices only")
    n = m.rows
    gram = mul(adjoint(m), m)
    eig = hermitian_eig(gram)
    right = eig.eigenvectors

    svals: list[float] = []
    images: list[ComplexMatrix] = []
    for k in range(n):
        image = mul(m, _column(right, k))
        svals.append(_vec_norm(image))
        images.append(image)

    smax = max(svals) if svals else 0.0
    cutoff = _SVD_RELATIVE_CUTOFF * smax
    left_cols: list[ComplexMatrix | None] = []
    for k in range(n):
        if svals[k] > cutoff:
            left_cols.append(scale(images[k], 1.0 / svals[k]))
        else:
            left_cols.append(None)
    completed = _complete_orthonormal(n, left_cols)

    # Eigenvalue order already sorts the singular values up to roundoff;
    # a stable re-sort pins the documented descending invariant.
    order = sorted(range(n), key=svals.__getitem__, reverse=True)
    singular_values = tuple(svals[k] for k in order)
    left_entries = tuple(completed[k].entries[i] for i in range(n) for k in order)
    right_entries = tuple(right.at(i, k) for i in range(n) for k in order)
    return SvdResult(
        ComplexMatrix(n, n, left_entries),
        singular_values,
        ComplexMatrix(n, n, right_entries),
    )


def expm_taylor(m: ComplexMatrix, terms: int) -> ComplexMatrix:
    """Truncated series sum_{k < terms} m^k / k!.

    Brute-force exponential used as an independent oracle for the closed-form
    rotation and unitary constructions; not meant to be fast or clever.
    """
    if not m.is_square():
        raise DimensionError("expm_taylor needs a square matrix")
    if terms < 1:
        raise DomainError("terms must be >= 1")
    acc = ComplexMatrix.identity(m.rows)
    term = ComplexMatrix.identity(m.rows)
    for k in range(1, terms):
        term = scale(mul(term, m), 1.0 / k)
        acc = add(acc, term)
    return acc
