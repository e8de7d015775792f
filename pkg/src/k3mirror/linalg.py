"""Small exact linear algebra over Z and Q.

Matrices are immutable tuples of row tuples, vectors are plain tuples;
entries are ints or Fractions.  Nothing here ever touches floating point.
Sizes stay tiny (rank <= 24), so plain Gaussian elimination over Fraction
is both exact and fast enough.
"""

from __future__ import annotations

from fractions import Fraction

Vec = tuple
Mat = tuple


def freeze_vec(v) -> Vec:
    return tuple(v)


def freeze_mat(rows) -> Mat:
    return tuple(tuple(r) for r in rows)


def identity(n: int) -> Mat:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def transpose(a: Mat) -> Mat:
    return tuple(zip(*a))


def mat_mul(a: Mat, b: Mat) -> Mat:
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def mat_vec(a: Mat, v: Vec) -> Vec:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def dot(v: Vec, w: Vec) -> int | Fraction:
    return sum(x * y for x, y in zip(v, w))


def scale_mat(c, a: Mat) -> Mat:
    return tuple(tuple(c * x for x in row) for row in a)


def neg_mat(a: Mat) -> Mat:
    return scale_mat(-1, a)


def block_diag(a: Mat, b: Mat) -> Mat:
    na, nb = len(a), len(b)
    rows = [tuple(a[i]) + (0,) * nb for i in range(na)]
    rows += [(0,) * na + tuple(b[i]) for i in range(nb)]
    return tuple(rows)


def congruent(g: Mat, m: Mat) -> Mat:
    """m^T g m, the pullback of the form g along m."""
    return mat_mul(transpose(m), mat_mul(g, m))


def det(a: Mat) -> int | Fraction:
    """Exact determinant by fraction-free-ish Gaussian elimination."""
    n = len(a)
    rows = [[Fraction(x) for x in row] for row in a]
    sign = 1
    result = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if piv is None:
            return 0
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            sign = -sign
        pivot = rows[col][col]
        result *= pivot
        for r in range(col + 1, n):
            f = rows[r][col] / pivot
            if f:
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[col])]
    result *= sign
    return int(result) if result.denominator == 1 else result


def solve(a: Mat, rhs: Mat) -> Mat:
    """Solve a X = rhs exactly; rhs is a matrix (use column vectors).

    Raises ValueError on a singular matrix.
    """
    n = len(a)
    w = len(rhs[0])
    aug = [[Fraction(x) for x in a[i]] + [Fraction(x) for x in rhs[i]] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        pivot = aug[col][col]
        aug[col] = [x / pivot for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(aug[i][n:n + w]) for i in range(n))


def inverse(a: Mat) -> Mat:
    return solve(a, identity(len(a)))


def is_integral(a) -> bool:
    if isinstance(a[0], tuple):
        return all(is_integral(row) for row in a)
    return all(Fraction(x).denominator == 1 for x in a)


def as_int_mat(a: Mat) -> Mat:
    return tuple(tuple(int(x) for x in row) for row in a)


def as_int_vec(v: Vec) -> Vec:
    return tuple(int(x) for x in v)
