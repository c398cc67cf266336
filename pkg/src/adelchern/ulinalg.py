"""Exact linear algebra over F = k'((u)) and its valuation ring R = k'[[u]].

Vectors and matrices hold LaurentSeries entries.  Pivoting always certifies
valuations; anything that would need to guess raises InsufficientPrecision.
Two module-theoretic primitives drive the dimension-torsor engine:

* integral_preimage: R-generators and F-kernel of {c : P c in R^N};
* rel_index: the relative index of two commensurable graded modules,
  each given as an F-subspace part plus finitely many R-generators.
"""

from .errors import IncompatibleReferences, InsufficientPrecision
from .series import LaurentSeries


def _is_zero(s):
    if s.is_exact:
        return s.is_zero()
    if s.coeffs:
        return False
    raise InsufficientPrecision(
        "entry is 0 mod O(u^%d); elimination cannot certify a zero" % s.prec
    )


def vec_sub_scaled(v, w, c):
    return [a - w_i * c for a, w_i in zip(v, w)]


def mat_vec(m, v):
    out = []
    for row in m:
        acc = None
        for a, x in zip(row, v):
            if _is_zero(a) or _is_zero(x):
                continue
            term = a * x
            acc = term if acc is None else acc + term
        out.append(acc if acc is not None else _zero_like(row[0]))
    return out


def _zero_like(s):
    return LaurentSeries.zero(s.field, s.var)


def f_kernel(rows, ncols):
    """Basis of the null space of the matrix with the given rows over F."""
    if not rows:
        field = None
        raise ValueError("f_kernel needs at least the ambient field; pass rows")
    work = [list(r) for r in rows]
    zero = _zero_like(rows[0][0])
    pivots = {}  # col -> row index
    row_used = set()
    for _ in range(min(len(work), ncols)):
        best = None
        for i, row in enumerate(work):
            if i in row_used:
                continue
            for j in range(ncols):
                if j in pivots:
                    continue
                e = row[j]
                if _is_zero(e):
                    continue
                v = e.valuation()
                if best is None or v < best[0]:
                    best = (v, i, j)
        if best is None:
            break
        _, pi, pj = best
        row_used.add(pi)
        pivots[pj] = pi
        pinv = work[pi][pj].inverse()
        work[pi] = [x * pinv for x in work[pi]]
        for i in range(len(work)):
            if i == pi:
                continue
            c = work[i][pj]
            if _is_zero(c):
                continue
            work[i] = vec_sub_scaled(work[i], work[pi], c)
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    one = LaurentSeries.one(rows[0][0].field, rows[0][0].var)
    for j in free:
        vec = [zero] * ncols
        vec[j] = one
        for pc, pr in pivots.items():
            coeff = work[pr][j]
            if not _is_zero(coeff):
                vec[pc] = -coeff
        basis.append(vec)
    return basis


def integral_preimage(p_rows, ncols):
    """For the map P: F^ncols -> F^N given by rows, compute the set
    {c : P c in R^N} as (F-kernel basis, R-lattice generators).

    Uses a Smith-style reduction: integral row operations (which preserve
    membership of the image in R^N) and arbitrary F-column operations
    mirrored on a tracked c-basis.
    """
    work = [list(r) for r in p_rows]
    nrows = len(work)
    field = None
    for row in p_rows:
        for e in row:
            field, var = e.field, e.var
            break
        break
    one = LaurentSeries.one(field, var)
    zero = LaurentSeries.zero(field, var)
    basis = [[one if i == j else zero for i in range(ncols)] for j in range(ncols)]
    # basis[j] is the c-vector currently labelling column j
    done_rows = set()
    done_cols = set()
    pivots = []  # (row, col, val)
    while True:
        best = None
        for i in range(nrows):
            if i in done_rows:
                continue
            for j in range(ncols):
                if j in done_cols:
                    continue
                e = work[i][j]
                if _is_zero(e):
                    continue
                v = e.valuation()
                if best is None or v < best[0]:
                    best = (v, i, j)
        if best is None:
            break
        v, pi, pj = best
        # clear pivot row with F-column ops
        pivot = work[pi][pj]
        for j in range(ncols):
            if j == pj or _is_zero(work[pi][j]):
                continue
            c = work[pi][j] * pivot.inverse()
            for i in range(nrows):
                work[i][j] = work[i][j] - work[i][pj] * c
            basis[j] = vec_sub_scaled(basis[j], basis[pj], c)
        # clear pivot column with integral row ops
        for i in range(nrows):
            if i == pi or _is_zero(work[i][pj]):
                continue
            c = work[i][pj] * pivot.inverse()  # valuation >= 0 by pivot choice
            if c.valuation() < 0:
                raise AssertionError("non-integral row multiplier in saturation")
            work[i] = vec_sub_scaled(work[i], work[pi], c)
        done_rows.add(pi)
        done_cols.add(pj)
        pivots.append((pi, pj, v))
    r_gens = []
    for pi, pj, v in pivots:
        scale = work[pi][pj].inverse()
        r_gens.append([x * scale for x in basis[pj]])
    kernel = [basis[j] for j in range(ncols) if j not in done_cols]
    return kernel, r_gens


def _echelon_columns(vectors, n):
    """Reduce vectors (in F^n) to an independent echelon set; returns the
    reduced vectors and their pivot coordinates."""
    basis = []
    pivots = []
    for v in vectors:
        v = list(v)
        for b, p in zip(basis, pivots):
            c = v[p]
            if not _is_zero(c):
                v = vec_sub_scaled(v, b, c * b[p].inverse())
        pivot = None
        bestval = None
        for i in range(n):
            if _is_zero(v[i]):
                continue
            val = v[i].valuation()
            if bestval is None or val < bestval:
                bestval, pivot = val, i
        if pivot is None:
            continue
        basis.append(v)
        pivots.append(pivot)
    return basis, pivots


class GradedModule:
    """An R-submodule of F^n of the form (F-subspace) + (R-lattice part)."""

    def __init__(self, n, field, var, f_part=(), r_gens=()):
        self.n = n
        self.field = field
        self.var = var
        self.f_part = [list(v) for v in f_part]
        self.r_gens = [list(v) for v in r_gens]

    def canonical(self):
        f_basis, f_pivots = _echelon_columns(self.f_part, self.n)
        reduced = []
        for g in self.r_gens:
            v = list(g)
            for b, p in zip(f_basis, f_pivots):
                c = v[p]
                if not _is_zero(c):
                    v = vec_sub_scaled(v, b, c * b[p].inverse())
            if any(not _is_zero(x) for x in v):
                reduced.append(v)
        r_basis = _hermite_r(reduced, self.n)
        out = GradedModule(self.n, self.field, self.var, f_basis, r_basis)
        out._f_pivots = f_pivots
        return out


def _hermite_r(vectors, n):
    """Reduce R-generators to an independent set spanning the same R-module:
    repeatedly pick the minimum-valuation pivot coordinate and clear it from
    the other generators with integral multipliers."""
    work = [list(v) for v in vectors]
    out = []
    used_coords = set()
    while work:
        best = None
        for idx, v in enumerate(work):
            for i in range(n):
                if i in used_coords or _is_zero(v[i]):
                    continue
                val = v[i].valuation()
                if best is None or val < best[0]:
                    best = (val, idx, i)
        if best is None:
            break
        _, idx, coord = best
        pivot_vec = work.pop(idx)
        pinv = pivot_vec[coord].inverse()
        rest = []
        for v in work:
            c = v[coord]
            if not _is_zero(c):
                v = vec_sub_scaled(v, pivot_vec, c * pinv)
            if any(not _is_zero(x) for x in v):
                rest.append(v)
        work = rest
        used_coords.add(coord)
        out.append(pivot_vec)
    return out


def _det_valuation(rows):
    """u-valuation of det of a square matrix over F via elimination."""
    n = len(rows)
    work = [list(r) for r in rows]
    total = 0
    used_rows = set()
    used_cols = set()
    for _ in range(n):
        best = None
        for i in range(n):
            if i in used_rows:
                continue
            for j in range(n):
                if j in used_cols:
                    continue
                e = work[i][j]
                if _is_zero(e):
                    continue
                v = e.valuation()
                if best is None or v < best[0]:
                    best = (v, i, j)
        if best is None:
            raise IncompatibleReferences("singular change of basis between modules")
        v, pi, pj = best
        total += v
        used_rows.add(pi)
        used_cols.add(pj)
        pinv = work[pi][pj].inverse()
        for i in range(n):
            if i in used_rows or _is_zero(work[i][pj]):
                continue
            c = work[i][pj] * pinv
            work[i] = vec_sub_scaled(work[i], work[pi], c)
    return total


def rel_index(big, small, weight=1):
    """[big : small] for commensurable graded modules: the integer d(big) -
    d(small) for any dimension theory d, i.e. + dim(big/small) when nested.

    Both modules must have the same F-part span and R-parts spanning the
    same quotient subspace; otherwise IncompatibleReferences is raised.
    """
    B = big.canonical()
    A = small.canonical()
    if len(B.f_part) != len(A.f_part):
        raise IncompatibleReferences("graded modules with different flat parts")
    # check F-span equality: A's f-part reduces to zero against B's
    f_basis, f_pivots = _echelon_columns(B.f_part + A.f_part, B.n)
    if len(f_basis) != len(B.f_part):
        raise IncompatibleReferences("graded modules with different flat parts")
    if len(B.r_gens) != len(A.r_gens):
        raise IncompatibleReferences(
            "graded modules of different rank: %d vs %d"
            % (len(B.r_gens), len(A.r_gens))
        )
    r = len(B.r_gens)
    if r == 0:
        return 0
    # verify common span of (f_part + r_gens)
    all_b, _ = _echelon_columns(B.f_part + B.r_gens, B.n)
    mixed, _ = _echelon_columns(B.f_part + B.r_gens + A.r_gens, B.n)
    if len(mixed) != len(all_b):
        raise IncompatibleReferences("graded modules span different subspaces")
    # pick r independent rows of B's reduced generators in quotient coords
    #   (coordinates not used as F-part pivots)
    coords = [i for i in range(B.n) if i not in getattr(B, "_f_pivots", [])]
    bmat_rows = []
    amat_rows = []
    chosen = []
    for i in coords:
        cand = [g[i] for g in B.r_gens]
        if all(_is_zero(c) for c in cand):
            continue
        chosen.append(i)
    # reduce to exactly r rows forming an invertible minor of B
    bcols = B.r_gens
    acols = A.r_gens
    rows = _independent_rows(bcols, chosen, r)
    bsq = [[g[i] for g in bcols] for i in rows]
    asq = [[g[i] for g in acols] for i in rows]
    return weight * (_det_valuation(asq) - _det_valuation(bsq))


def _independent_rows(cols, candidates, r):
    """Choose r coordinate rows on which the column family has full rank."""
    chosen = []
    basis = []
    pivots = []
    for i in candidates:
        row = [g[i] for g in cols]
        v = list(row)
        for b, p in zip(basis, pivots):
            c = v[p]
            if not _is_zero(c):
                v = vec_sub_scaled(v, b, c * b[p].inverse())
        pivot = None
        for j in range(len(cols)):
            if not _is_zero(v[j]):
                pivot = j
                break
        if pivot is None:
            continue
        basis.append(v)
        pivots.append(pivot)
        chosen.append(i)
        if len(chosen) == r:
            return chosen
    raise IncompatibleReferences("generators do not have full rank")
