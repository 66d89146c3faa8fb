from fractions import Fraction

import numpy as np

from utils import PreconditionError, SingularMatrixError


def as_rational(matrix):
    """Copy any 2-D array-like into a numpy object array of Fractions."""
    rows = [[Fraction(x) for x in row] for row in np.asarray(matrix, dtype=object).tolist()]
    if not rows:
        return np.empty((0, 0), dtype=object)
    return np.array(rows, dtype=object)


def identity_matrix(n):
    """Construct an identity matrix I."""
    out = np.empty((n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            out[i, j] = Fraction(int(i == j))
    return out


def zeros(n, m):
    out = np.empty((n, m), dtype=object)
    out.fill(Fraction(0))
    return out


def matmul(x, y):
    """Exact matrix product of two Fraction matrices."""
    if x.shape[1] != y.shape[0]:
        raise PreconditionError(f"shape mismatch {x.shape} x {y.shape}")
    out = zeros(x.shape[0], y.shape[1])
    for i in range(x.shape[0]):
        for j in range(y.shape[1]):
            total = Fraction(0)
            for k in range(x.shape[1]):
                if x[i, k] and y[k, j]:
                    total += x[i, k] * y[k, j]
            out[i, j] = total
    return out


def equal(x, y):
    return x.shape == y.shape and all(a == b for a, b in zip(x.flat, y.flat))


def _pivot_row(work, col, start):
    # Largest magnitude pivot; exactness does not need it but it keeps numbers small
    best = None
    for r in range(start, work.shape[0]):
        value = work[r, col]
        if value != 0 and (best is None or abs(value) > abs(work[best, col])):
            best = r
    return best


def rank(matrix):
    """Rank over the rationals by fraction-exact Gaussian elimination."""
    work = as_rational(matrix)
    if work.size == 0:
        return 0
    rows, cols = work.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = _pivot_row(work, c, r)
        if p is None:
            continue
        if p != r:
            work[[r, p]] = work[[p, r]]
        pivot = work[r, c]
        for k in range(r + 1, rows):
            if work[k, c] != 0:
                factor = work[k, c] / pivot
                work[k, c:] = work[k, c:] - factor * work[r, c:]
        r += 1
    return r


def inverse(matrix):
    """Exact inverse by Gauss-Jordan on [X I].

    Raises PreconditionError for non-square input and SingularMatrixError when
    no pivot exists in some column.
    """
    x = as_rational(matrix)
    if x.ndim != 2 or x.shape[0] != x.shape[1]:
        raise PreconditionError("matrix is not square (shape = {})".format(x.shape))
    n = x.shape[0]
    xi = np.hstack((x, identity_matrix(n)))

    # Downward elimination: lower triangle to zero, diagonal to one
    for i in range(n):
        p = _pivot_row(xi, i, i)
        if p is None:
            raise SingularMatrixError("matrix is singular")
        if p != i:
            xi[[i, p]] = xi[[p, i]]
        xi[i, :] = xi[i, :] / xi[i, i]
        for j in range(i + 1, n):
            if xi[j, i] != 0:
                xi[j, :] = xi[j, :] - xi[j, i] * xi[i, :]

    # Upward elimination
    for j in range(n - 2, -1, -1):
        for i in range(j + 1, n):
            if xi[j, i] != 0:
                xi[j, :] = xi[j, :] - xi[j, i] * xi[i, :]

    return xi[:, n:].copy()
