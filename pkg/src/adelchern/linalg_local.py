"""Exact matrix arithmetic over a two-dimensional local field.

Matrices are tuples of tuples of Local2DElement.  Inversion is Gaussian
elimination with the pivot chosen of lexicographically minimal rank-2
valuation, which keeps precision loss minimal and certifies invertibility.
"""

from .errors import InsufficientPrecision, NonInvertible, ZeroElement


def identity(field, n):
    one = field.one()
    zero = field.zero()
    return tuple(
        tuple(one if i == j else zero for j in range(n)) for i in range(n)
    )


def from_rows(rows):
    return tuple(tuple(r) for r in rows)


def mat_mul(a, b):
    n = len(a)
    m = len(b[0])
    k = len(b)
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = None
            for l in range(k):
                term = a[i][l] * b[l][j]
                acc = term if acc is None else acc + term
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def mat_scale(a, c):
    return tuple(tuple(x * c for x in row) for row in a)


def _pivot_key(entry):
    try:
        return entry.rank2_valuation()
    except ZeroElement:
        return None


def mat_inv(a):
    """Inverse over K; raises NonInvertible when the matrix is singular."""
    n = len(a)
    field = a[0][0].field
    work = [list(row) for row in a]
    inv = [list(row) for row in identity(field, n)]
    col_of_row = [None] * n
    used_cols = set()
    for step in range(n):
        best = None
        for i in range(n):
            if col_of_row[i] is not None:
                continue
            for j in range(n):
                if j in used_cols:
                    continue
                e = work[i][j]
                if e.is_exactly_zero():
                    continue
                key = _pivot_key(e)
                if key is None:
                    continue
                if best is None or key < best[0]:
                    best = (key, i, j)
        if best is None:
            raise NonInvertible("matrix is singular over the local field")
        _, pi, pj = best
        col_of_row[pi] = pj
        used_cols.add(pj)
        pinv = work[pi][pj].inverse()
        work[pi] = [x * pinv for x in work[pi]]
        inv[pi] = [x * pinv for x in inv[pi]]
        for i in range(n):
            if i == pi:
                continue
            c = work[i][pj]
            if c.is_exactly_zero():
                continue
            work[i] = [x - c * y for x, y in zip(work[i], work[pi])]
            inv[i] = [x - c * y for x, y in zip(inv[i], inv[pi])]
    # work is now a permutation-like matrix: row i has 1 in col_of_row[i]
    out = [None] * n
    for i in range(n):
        out[col_of_row[i]] = tuple(inv[i])
    return tuple(out)


def det(a):
    """Determinant via expansion (small n) keeping exactness."""
    n = len(a)
    if n == 1:
        return a[0][0]
    if n == 2:
        return a[0][0] * a[1][1] - a[0][1] * a[1][0]
    acc = None
    for j in range(n):
        if a[0][j].is_exactly_zero():
            continue
        minor = tuple(
            tuple(a[i][l] for l in range(n) if l != j) for i in range(1, n)
        )
        term = a[0][j] * det(minor)
        if j % 2:
            term = -term
        acc = term if acc is None else acc + term
    if acc is None:
        field = a[0][0].field
        return field.zero()
    return acc


def min_t_valuation(a):
    """Certified lower bound on the t-valuation over all entries."""
    vals = []
    for row in a:
        for e in row:
            lb = e.t_valuation_lower_bound()
            if lb is not None:
                vals.append(lb)
    if not vals:
        raise NonInvertible("zero matrix")
    return min(vals)


def max_t_denominator(a):
    """Smallest M with t^M * a integral: max over entries of -nu_t."""
    return max(0, -min_t_valuation(a))


def lattice_depth(a_inv):
    """M such that t^M O^n is contained in the lattice with inverse matrix
    a_inv: certified from the denominators of the inverse."""
    return max_t_denominator(a_inv)


def t_coefficient_matrix(a, e):
    """The n x n matrix over k'((u)) of t^e-coefficients."""
    return tuple(tuple(x.coefficient_series(e) for x in row) for row in a)


def is_t_integral(a):
    try:
        return min_t_valuation(a) >= 0
    except NonInvertible:
        return True


def transpose(a):
    return tuple(tuple(a[i][j] for i in range(len(a))) for j in range(len(a[0])))
