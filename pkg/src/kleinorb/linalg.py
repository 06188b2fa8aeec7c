"""Dense exact linear algebra on lists of lists.

Rational matrices are ranked with fraction-free (Bareiss) elimination after
clearing denominators row by row.  Matrices with Gaussian-rational entries go
through ordinary Gauss-Jordan elimination over Q(sqrt(-1)).
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from .scalars import GaussRational

Matrix = list  # list[list[scalar]]


def zeros(rows: int, cols: int) -> Matrix:
    return [[0] * cols for _ in range(rows)]


def identity(n: int) -> Matrix:
    return [[1 if r == c else 0 for c in range(n)] for r in range(n)]


def shape(a: Matrix) -> tuple[int, int]:
    return (len(a), len(a[0]) if a else 0)


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)] if a else []


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if not a or not b:
        return [[] for _ in a] if a else []
    bt = transpose(b)
    out = []
    for row in a:
        nz = [(k, x) for k, x in enumerate(row) if x]
        out.append([sum((x * col[k] for k, x in nz), 0) for col in bt])
    return out


def matvec(a: Matrix, v: list) -> list:
    return [sum((x * v[k] for k, x in enumerate(row) if x), 0) for row in a]


def scale(a: Matrix, c) -> Matrix:
    return [[c * x for x in row] for row in a]


def add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def sub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def equal(a: Matrix, b: Matrix) -> bool:
    return shape(a) == shape(b) and all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def is_zero(a: Matrix) -> bool:
    return all(not x for row in a for x in row)


def _is_gaussian(a: Matrix) -> bool:
    return any(isinstance(x, GaussRational) and x.im != 0 for row in a for x in row)


def _integer_rows(a: Matrix) -> list[list[int]]:
    rows = []
    for row in a:
        fr = [x.re if isinstance(x, GaussRational) else Fraction(x) for x in row]
        m = lcm(*(f.denominator for f in fr)) if fr else 1
        rows.append([int(f * m) for f in fr])
    return rows


def bareiss_rank(a: Matrix) -> int:
    """Rank of a rational matrix by fraction-free elimination."""
    m = _integer_rows(a)
    nrows, ncols = shape(m)
    if nrows == 0 or ncols == 0:
        return 0
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        for i in range(r + 1, nrows):
            mi = m[i]
            a_ic = mi[c]
            if a_ic == 0:
                # rows with a zero pivot column still need the division step
                mi[:] = [(p * x) // prev for x in mi]
                continue
            mr = m[r]
            mi[:] = [(p * x - a_ic * y) // prev for x, y in zip(mi, mr)]
        prev = p
        r += 1
    return r


def rref(a: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form over the field of the entries, plus pivot columns."""
    m = [list(row) for row in a]
    nrows, ncols = shape(m)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c] if isinstance(m[r][c], GaussRational) else Fraction(1) / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a: Matrix) -> int:
    if not a or not a[0]:
        return 0
    if _is_gaussian(a):
        return len(rref(a)[1])
    return bareiss_rank(a)


def nullspace(a: Matrix, ncols: int | None = None) -> list[list]:
    """Basis of the right kernel, one vector per free column."""
    if ncols is None:
        ncols = shape(a)[1]
    if not a:
        return [[1 if r == c else 0 for r in range(ncols)] for c in range(ncols)]
    red, pivots = rref(a)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [Fraction(0)] * ncols
        v[fcol] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[fcol]
        basis.append(v)
    return basis


def column_space_basis(cols: list[list]) -> list[list]:
    """Independent subset of the given column vectors."""
    if not cols:
        return []
    a = transpose(cols)
    _, pivots = rref(a)
    return [cols[p] for p in pivots]


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    aug = [list(row) + [1 if r == c else 0 for c in range(n)] for r, row in enumerate(a)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red]
