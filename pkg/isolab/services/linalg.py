"""
Dense linear algebra over finite-precision p-adic fields.

Matrices are lists of rows. Entries are any field elements offering
``+ - *``, ``inverse()``, ``valuation()`` and ``is_zero()`` (so
:class:`ExtensionElement` and :class:`PadicScalar`); ``is_zero`` means zero
at the entry's precision. Pivots are always chosen of minimal valuation.

:func:`qp_kernel` works on exact rational representatives instead, for the
Q_p-linear maps obtained by restriction of scalars.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Callable, List, Optional, Sequence, Tuple

from isolab.errors import DivisionByZeroError, InputError, PrecisionError
from isolab.services.padic_core import INF, reduce_rational, valuation_of_rational

Matrix = List[List[Any]]


def _zero_like(x):
    return x - x


def _one_like(x):
    return _zero_like(x) + 1


def shape(A: Sequence[Sequence[Any]]) -> Tuple[int, int]:
    return len(A), (len(A[0]) if A else 0)


def identity(d: int, one) -> Matrix:
    zero = _zero_like(one)
    return [[one if i == j else zero for j in range(d)] for i in range(d)]


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    n, k = shape(A)
    k2, m = shape(B)
    if k != k2:
        raise InputError(f"cannot multiply {n}x{k} by {k2}x{m}")
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = A[i][0] * B[0][j]
            for t in range(1, k):
                acc = acc + A[i][t] * B[t][j]
            row.append(acc)
        out.append(row)
    return out


def mat_vec(A: Matrix, v: Sequence[Any]) -> List[Any]:
    return [row[0] for row in mat_mul(A, [[x] for x in v])]


def mat_sub(A: Matrix, B: Matrix) -> Matrix:
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_map(A: Matrix, f: Callable[[Any], Any]) -> Matrix:
    return [[f(a) for a in row] for row in A]


def mat_sigma(A: Matrix, times: int = 1) -> Matrix:
    """Apply the Frobenius lift entrywise."""
    return mat_map(A, lambda a: a.frobenius(times))


def transpose(A: Matrix) -> Matrix:
    n, m = shape(A)
    return [[A[i][j] for i in range(n)] for j in range(m)]


def columns(A: Matrix) -> List[List[Any]]:
    return transpose(A)


def from_columns(cols: Sequence[Sequence[Any]]) -> Matrix:
    return transpose([list(c) for c in cols])


def kronecker(A: Matrix, B: Matrix) -> Matrix:
    n, m = shape(A)
    k, l = shape(B)
    return [[A[i // k][j // l] * B[i % k][j % l] for j in range(m * l)] for i in range(n * k)]


def block_diag(blocks: Sequence[Matrix], zero) -> Matrix:
    size = sum(len(b) for b in blocks)
    out = [[zero for _ in range(size)] for _ in range(size)]
    offset = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[offset + i][offset + j] = x
        offset += len(b)
    return out


def min_valuation(A: Matrix):
    return min((a.valuation() for row in A for a in row if not a.is_zero()), default=INF)


# ---------------------------------------------------------------------------
# elimination
# ---------------------------------------------------------------------------

def eliminate(A: Matrix) -> Tuple[int, List[Tuple[int, int]], Matrix, int]:
    """
    Full-pivoting elimination.

    Returns
    -------
    (rank, pivots, reduced, sign)
        ``pivots`` lists (row, column) positions in the original matrix;
        ``sign`` is the permutation sign accumulated by row and column swaps.
    """
    n, m = shape(A)
    M = [list(row) for row in A]
    rows = list(range(n))
    cols = list(range(m))
    pivots: List[Tuple[int, int]] = []
    sign = 1
    r = 0
    while r < min(n, m):
        best = None
        for i in range(r, n):
            for j in range(r, m):
                x = M[i][j]
                if x.is_zero():
                    continue
                v = x.valuation()
                if best is None or v < best[0]:
                    best = (v, i, j)
        if best is None:
            break
        _, i, j = best
        if i != r:
            M[r], M[i] = M[i], M[r]
            rows[r], rows[i] = rows[i], rows[r]
            sign = -sign
        if j != r:
            for row in M:
                row[r], row[j] = row[j], row[r]
            cols[r], cols[j] = cols[j], cols[r]
            sign = -sign
        pivot_inv = M[r][r].inverse()
        for i2 in range(r + 1, n):
            if M[i2][r].is_zero():
                continue
            factor = M[i2][r] * pivot_inv
            for j2 in range(r, m):
                M[i2][j2] = M[i2][j2] - factor * M[r][j2]
        pivots.append((rows[r], cols[r]))
        r += 1
    return r, pivots, M, sign


def rank(A: Matrix) -> int:
    if not A or not A[0]:
        return 0
    return eliminate(A)[0]


def det(A: Matrix):
    """Determinant by elimination; zero at precision when the rank drops."""
    n, m = shape(A)
    if n != m:
        raise InputError("determinant of a non-square matrix")
    r, _, M, sign = eliminate(A)
    if r < n:
        return _zero_like(A[0][0])
    result = M[0][0]
    for i in range(1, n):
        result = result * M[i][i]
    return result if sign > 0 else -result


def inverse(A: Matrix) -> Matrix:
    """Gauss-Jordan inverse with minimal-valuation row pivots."""
    n, m = shape(A)
    if n != m:
        raise InputError("inverse of a non-square matrix")
    one = _one_like(A[0][0])
    zero = _zero_like(one)
    M = [list(row) + [one if i == j else zero for j in range(n)] for i, row in enumerate(A)]
    for c in range(n):
        candidates = [(M[i][c].valuation(), i) for i in range(c, n) if not M[i][c].is_zero()]
        if not candidates:
            raise DivisionByZeroError("matrix is singular at this precision")
        _, i = min(candidates)
        M[c], M[i] = M[i], M[c]
        pivot_inv = M[c][c].inverse()
        M[c] = [x * pivot_inv for x in M[c]]
        for i2 in range(n):
            if i2 != c and not M[i2][c].is_zero():
                factor = M[i2][c]
                M[i2] = [a - factor * b for a, b in zip(M[i2], M[c])]
    return [row[n:] for row in M]


def independent_rows(A: Matrix) -> List[int]:
    """Indices of rows carrying the pivots of a full-column-rank matrix."""
    r, pivots, _, _ = eliminate(A)
    if r < shape(A)[1]:
        raise PrecisionError("columns are dependent at this precision")
    return sorted(i for i, _ in pivots)


def charpoly(A: Matrix) -> List[Any]:
    """
    Coefficients (low to high) of det(T I - A), by Berkowitz's division-free
    recursion over leading principal submatrices.
    """
    n, _ = shape(A)
    one = _one_like(A[0][0])
    zero = _zero_like(one)
    poly = [one]  # high to low
    for k in range(1, n + 1):
        a = A[k - 1][k - 1]
        R = [A[k - 1][j] for j in range(k - 1)]
        C = [A[i][k - 1] for i in range(k - 1)]
        M = [row[: k - 1] for row in A[: k - 1]]
        column = [one, -a]
        vec = C
        for _ in range(k - 1):
            acc = zero
            for r_j, c_j in zip(R, vec):
                acc = acc + r_j * c_j
            column.append(-acc)
            vec = mat_vec(M, vec) if vec else vec
        new_poly = []
        for i in range(k + 1):
            acc = zero
            for j in range(k):
                if 0 <= i - j < len(column) and j < len(poly):
                    acc = acc + column[i - j] * poly[j]
            new_poly.append(acc)
        poly = new_poly
    return list(reversed(poly))


# ---------------------------------------------------------------------------
# exact kernels over Q_p
# ---------------------------------------------------------------------------

def qp_kernel(M: Sequence[Sequence[Fraction]], p: int, prec: int) -> Tuple[List[List[Fraction]], int]:
    """
    Kernel of a Q_p-matrix known modulo p^prec.

    Entries that vanish modulo p^prec during full-pivoting elimination are
    treated as zero. Returns primitive kernel vectors (minimal coordinate
    valuation 0) and the precision they are known to.
    """
    n = len(M)
    m = len(M[0]) if n else 0
    A = [[reduce_rational(x, p, prec) for x in row] for row in M]
    cols = list(range(m))
    r = 0
    loss = 0
    while r < min(n, m):
        best = None
        for i in range(r, n):
            for j in range(r, m):
                if A[i][j] != 0:
                    v = valuation_of_rational(A[i][j], p)
                    if best is None or v < best[0]:
                        best = (v, i, j)
        if best is None:
            break
        v, i, j = best
        A[r], A[i] = A[i], A[r]
        for row in A:
            row[r], row[j] = row[j], row[r]
        cols[r], cols[j] = cols[j], cols[r]
        loss += max(int(v), 0)
        for i2 in range(r + 1, n):
            if A[i2][r] != 0:
                factor = A[i2][r] / A[r][r]
                A[i2] = [reduce_rational(a - factor * b, p, prec) for a, b in zip(A[i2], A[r])]
        r += 1

    kernel_prec = prec - loss
    vectors: List[List[Fraction]] = []
    for free in range(r, m):
        x = [Fraction(0)] * m
        x[free] = Fraction(1)
        for k in range(r - 1, -1, -1):
            acc = sum((A[k][j] * x[j] for j in range(k + 1, m)), Fraction(0))
            x[k] = -acc / A[k][k]
        v = min(valuation_of_rational(c, p) for c in x if c != 0)
        scale = Fraction(p) ** (-int(v))
        permuted = [Fraction(0)] * m
        for pos, col in enumerate(cols):
            permuted[col] = reduce_rational(x[pos] * scale, p, kernel_prec) if kernel_prec > 0 else x[pos] * scale
        vectors.append(permuted)
    return vectors, kernel_prec
