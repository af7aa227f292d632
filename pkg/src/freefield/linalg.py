"""Fraction-free (Bareiss) elimination over :class:`~freefield.scalar.Scalar`."""
from __future__ import annotations

from dataclasses import dataclass, field

from .scalar import ONE, ZERO, as_scalar

__all__ = [
    "LinearSolution",
    "bareiss_echelon",
    "determinant",
    "cofactor_determinant",
    "solve_linear",
    "nullspace",
    "rank",
    "rref",
]


def _matrix(A):
    return [[as_scalar(x) for x in row] for row in A]


def bareiss_echelon(A):
    """Fraction-free row echelon form.

    Returns ``(M, pivots, sign)`` where ``M`` is the reduced integer-preserving
    echelon matrix (entries stay in the ring generated by the inputs when the
    inputs are polynomial), ``pivots`` the pivot columns, and ``sign`` the
    permutation sign accumulated by row swaps.
    """
    M = _matrix(A)
    nrows = len(M)
    ncols = len(M[0]) if M else 0
    prev = ONE
    pivots = []
    sign = 1
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        piv = next((i for i in range(r, nrows) if M[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            M[r], M[piv] = M[piv], M[r]
            sign = -sign
        p = M[r][c]
        for i in range(r + 1, nrows):
            a = M[i][c]
            row_i, row_r = M[i], M[r]
            for j in range(c + 1, ncols):
                row_i[j] = (p * row_i[j] - a * row_r[j]) / prev
            row_i[c] = ZERO
        # entries left of c in lower rows are already zero
        prev = p
        pivots.append(c)
        r += 1
    return M, pivots, sign


def determinant(A):
    """Bareiss determinant of a square matrix."""
    n = len(A)
    if n == 0:
        return ONE
    if any(len(row) != n for row in A):
        raise ValueError("determinant needs a square matrix")
    M, pivots, sign = bareiss_echelon(A)
    if len(pivots) < n:
        return ZERO
    return M[n - 1][n - 1] * sign


def cofactor_determinant(A):
    """Laplace expansion along the first row; a slow independent oracle."""
    A = _matrix(A)
    n = len(A)
    if n == 0:
        return ONE
    if n == 1:
        return A[0][0]
    acc = ZERO
    for j in range(n):
        if not A[0][j]:
            continue
        minor = [row[:j] + row[j + 1:] for row in A[1:]]
        term = A[0][j] * cofactor_determinant(minor)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


@dataclass
class LinearSolution:
    """Outcome of :func:`solve_linear`.

    ``consistent`` is False when ``A x = b`` has no solution; otherwise
    ``solution`` is one particular solution (free variables set to zero) and
    ``nullspace`` a basis of ``ker A``.
    """

    consistent: bool
    rank: int
    solution: list | None = None
    nullspace: list = field(default_factory=list)

    @property
    def unique(self):
        return self.consistent and not self.nullspace


def _rref_from_echelon(M, pivots, ncols):
    # normalize pivots to 1 and clear above; field division is exact here
    R = [row[:] for row in M[: len(pivots)]]
    for i in range(len(pivots) - 1, -1, -1):
        c = pivots[i]
        p = R[i][c]
        R[i] = [x / p for x in R[i]]
        for k in range(i):
            f = R[k][c]
            if f:
                R[k] = [a - f * b for a, b in zip(R[k], R[i])]
    return R


def solve_linear(A, b=None):
    """Solve ``A x = b`` exactly; with ``b=None`` only the nullspace is computed."""
    A = _matrix(A)
    nrows = len(A)
    ncols = len(A[0]) if A else 0
    if b is None:
        aug = [row + [ZERO] for row in A]
    else:
        if len(b) != nrows:
            raise ValueError("right-hand side length does not match the matrix")
        aug = [row + [as_scalar(x)] for row, x in zip(A, b)]
    M, pivots, _ = bareiss_echelon(aug)
    if pivots and pivots[-1] == ncols:
        return LinearSolution(consistent=False, rank=len(pivots) - 1)
    R = _rref_from_echelon(M, pivots, ncols + 1)
    x = [ZERO] * ncols
    for i, c in enumerate(pivots):
        x[c] = R[i][ncols]
    free = [c for c in range(ncols) if c not in pivots]
    kernel = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for i, c in enumerate(pivots):
            v[c] = -R[i][f]
        kernel.append(v)
    return LinearSolution(consistent=True, rank=len(pivots), solution=x, nullspace=kernel)


def rref(A):
    """Reduced row echelon form ``(R, pivots)``; zero rows are dropped."""
    if not A:
        return [], []
    M, pivots, _ = bareiss_echelon(A)
    return _rref_from_echelon(M, pivots, len(M[0])), pivots


def nullspace(A):
    return solve_linear(A).nullspace


def rank(A):
    if not A:
        return 0
    return len(bareiss_echelon(A)[1])
