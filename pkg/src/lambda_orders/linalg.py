"""Exact linear algebra over Q on lists of Fractions."""
from fractions import Fraction


def to_fractions(rows):
    return [[Fraction(x) for x in row] for row in rows]


def rref(rows):
    """Reduced row echelon form; returns ``(matrix, pivot_columns)``."""
    m = to_fractions(rows)
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][col]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows):
    return len(rref(rows)[1])


def independent_rows(rows):
    """Indices of a greedy maximal independent subset, in input order."""
    chosen, basis = [], []
    for i, row in enumerate(rows):
        if rank(basis + [row]) > len(basis):
            basis.append(row)
            chosen.append(i)
    return chosen


def solve_left(basis, v):
    """Coefficients ``x`` with ``sum x_i basis[i] == v`` (basis rows assumed
    independent), or None if ``v`` is outside their span."""
    k = len(basis)
    if k == 0:
        return [] if all(x == 0 for x in v) else None
    # columns of the augmented system are the coordinates
    aug = [[basis[i][j] for i in range(k)] + [v[j]] for j in range(len(v))]
    m, piv = rref(aug)
    if k in piv:
        return None
    x = [Fraction(0)] * k
    for row, col in zip(m, piv):
        x[col] = row[k]
    return x


def inverse(mat):
    n = len(mat)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(to_fractions(mat))]
    m, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in m]


def matmul(a, b):
    bt = list(zip(*b)) if b else []
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def matvec(a, v):
    return [sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a]
