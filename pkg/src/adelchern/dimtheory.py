"""Dimension theories as integer offsets and the central extension of
GL_n over the adeles.

The Z-torsor of dimension theories on each lattice quotient is trivialized
by a fixed reference: the dimension theory vanishing on the block of
u-integral vectors (the image of k'[[u]]-coefficient tails).  A lifted
element is then a pair (matrix, integer offset), and the group law needs
one nontrivial ingredient: the 2-cocycle

    c(g1, g2) = (transport by g1 of the reference on (O^n, g2 O^n))
                - (reference on (g1 O^n, g1 g2 O^n)),

a finite integer computed per place and branch by comparing graded
u-lattices of the two block structures across a certified t-window.  The
quotient reduction follows the generating matrices by rank-2-valuation
pivoting (here: minimal t-level first, then minimal u-valuation inside each
graded slice).
"""

from . import linalg_local as lml
from . import ulinalg
from .adeles import AdelicMatrix
from .errors import IncompatibleReferences
from .series import LaurentSeries
from .ulinalg import GradedModule


# ---------------------------------------------------------------------------
# graded pieces of constrained block images
# ---------------------------------------------------------------------------


class _Block:
    """One variable group y in O^m feeding the output z via `out`,
    optionally subject to u-integrality of (cons * y) below degree j_top."""

    def __init__(self, out, cons, j_top, y_len):
        self.out = out
        self.cons = cons
        self.j_top = j_top
        self.y_len = y_len
        self.m = len(out[0])


def _coeff_cache(mat):
    cache = {}

    def get(e):
        if e not in cache:
            cache[e] = lml.t_coefficient_matrix(mat, e)
        return cache[e]

    return get


def _graded_piece(n, ufield, uvar, blocks, vanish_lo, delta):
    """The R-module of achievable t^delta coefficients of
    z = sum_b out_b * y_b subject to z vanishing below delta and the
    blocks' integrality constraints."""
    zero = LaurentSeries.zero(ufield, uvar)
    slots = []
    offset = 0
    for b in blocks:
        b._slot = offset
        offset += b.m * b.y_len
    nvars = offset
    outs = [_coeff_cache(b.out) for b in blocks]
    conss = [_coeff_cache(b.cons) if b.cons is not None else None for b in blocks]

    def z_row(d, i):
        row = [zero] * nvars
        for bi, b in enumerate(blocks):
            get = outs[bi]
            for j in range(b.y_len):
                cm = get(d - j)
                for l in range(b.m):
                    row[b._slot + j * b.m + l] = cm[i][l]
        return row

    vanish = [z_row(d, i) for d in range(vanish_lo, delta) for i in range(n)]
    if vanish:
        kernel = ulinalg.f_kernel(vanish, nvars)
    else:
        one = LaurentSeries.one(ufield, uvar)
        kernel = [
            [one if i == j else zero for i in range(nvars)] for j in range(nvars)
        ]
    if not kernel:
        return GradedModule(n, ufield, uvar)

    def on_kernel(row):
        out = []
        for vec in kernel:
            acc = None
            for a, x in zip(row, vec):
                try:
                    if a.is_zero() or x.is_zero():
                        continue
                except Exception:
                    pass
                term = a * x
                acc = term if acc is None else acc + term
            out.append(acc if acc is not None else zero)
        return out

    p_rows = []
    for bi, b in enumerate(blocks):
        if b.cons is None:
            continue
        get = conss[bi]
        lam_c = lml.min_t_valuation(b.cons)
        kdim = len(b.cons)
        for d in range(lam_c, b.j_top):
            for i in range(kdim):
                row = [zero] * nvars
                for j in range(b.y_len):
                    cmj = get(d - j)
                    for l in range(b.m):
                        row[b._slot + j * b.m + l] = cmj[i][l]
                p_rows.append(on_kernel(row))
    q_rows = [on_kernel(z_row(delta, i)) for i in range(n)]

    ncols = len(kernel)
    if p_rows:
        kern2, rgens = ulinalg.integral_preimage(p_rows, ncols)
    else:
        one = LaurentSeries.one(ufield, uvar)
        kern2 = [
            [one if i == j else zero for i in range(ncols)] for j in range(ncols)
        ]
        rgens = []

    def out_vec(cvec):
        vec = []
        for i in range(n):
            acc = None
            for a, x in zip(q_rows[i], cvec):
                try:
                    if a.is_zero() or x.is_zero():
                        continue
                except Exception:
                    pass
                term = a * x
                acc = term if acc is None else acc + term
            vec.append(acc if acc is not None else zero)
        return vec

    f_part = [out_vec(v) for v in kern2]
    r_gens = [out_vec(v) for v in rgens]
    return GradedModule(n, ufield, uvar, f_part, r_gens)


# ---------------------------------------------------------------------------
# transport defects and the cocycle (single branch field)
# ---------------------------------------------------------------------------


def _t_monomial_matrix(field, n, k):
    tk = field.monomial(k, 0)
    zero = field.zero()
    return tuple(
        tuple(tk if i == j else zero for j in range(n)) for i in range(n)
    )


def tau_nested(h, g, m_depth, weight=1, force_general=False):
    """Transport defect of the reference dimension theory under h on the
    nested pair t^M O^n inside the lattice spanned by g: the integer
    d(u-block of h(lattice)) - d(h(u-block of lattice)) on the quotient.
    """
    n = len(g)
    field = g[0][0].field
    ufield, uvar = field.residue_base, field.u_name
    hg = lml.mat_mul(h, g)
    h_inv = lml.mat_inv(h)
    g_inv = lml.mat_inv(g)
    hg_inv = lml.mat_mul(g_inv, h_inv)
    lam_h = lml.min_t_valuation(h)
    lam_g = lml.min_t_valuation(g)
    lam_hg = lml.min_t_valuation(hg)
    if n == 1 and not force_general:
        # direct graded count: both block images are principal u-ideals,
        # constant across the t-window of the quotient
        a = g[0][0].t_valuation()
        v = h[0][0].leading_series().valuation()
        return (m_depth - a) * v * weight

    th = lml.mat_mul(_t_monomial_matrix(field, n, m_depth), h)
    lam_th = m_depth + lam_h
    vanish_lo = min(lam_hg, lam_th)
    top = m_depth + lml.max_t_denominator(h_inv)
    den_hg = lml.max_t_denominator(hg_inv)
    den_g = lml.max_t_denominator(g_inv)
    total = 0
    for delta in range(vanish_lo, top):
        j_b = max(delta + 1, den_hg)
        y_b = max(j_b - lam_hg, delta + 1 - lam_hg)
        j_a = max(delta + 1 - lam_h, den_g)
        y_a = max(j_a - lam_g, delta + 1 - lam_hg)
        w_len = max(0, delta + 1 - lam_th)
        cap = _Block(th, None, 0, w_len)
        side_b = _graded_piece(
            n, ufield, uvar,
            [_Block(hg, hg, j_b, y_b), cap],
            vanish_lo, delta,
        )
        side_a = _graded_piece(
            n, ufield, uvar,
            [_Block(hg, g, j_a, y_a), cap],
            vanish_lo, delta,
        )
        total += ulinalg.rel_index(side_b, side_a, weight)
    return total


def _is_theta_stable(mat):
    """Sufficient check that the matrix preserves the u-integral block
    structure: all entries exact with t-polynomial shape and u-integral
    coefficients, for the matrix and its inverse."""

    def entry_ok(e):
        if not e.is_exact:
            return False
        sh, num, den = e.frac
        if sh < 0 or len(den) != 1:
            return False
        rf = e.field.ratfield
        for c in list(num) + list(den):
            v = c.valuation()
            if v is not None and v < 0:
                return False
            # u-integral power series requires a unit denominator
            if c.num and e.field.residue_base.is_zero(c.den[0]):
                return False
        return True

    try:
        if not all(entry_ok(e) for row in mat for e in row):
            return False
        inv = lml.mat_inv(mat)
        return all(entry_ok(e) for row in inv for e in row)
    except Exception:
        return False


def _is_diagonal(mat):
    n = len(mat)
    for i in range(n):
        for j in range(n):
            if i != j and not mat[i][j].is_exactly_zero():
                return False
    return True


def cocycle_branch(g1, g2, weight=1, fast=True, force_general=False):
    """The 2-cocycle c(g1, g2) of the central extension at one branch."""
    n = len(g1)
    if fast and not force_general:
        if _is_diagonal(g1) and _is_diagonal(g2):
            total = 0
            for i in range(n):
                f, g = g1[i][i], g2[i][i]
                total += -g.t_valuation() * f.leading_series().valuation() * weight
            return total
        g2_inv = lml.mat_inv(g2)
        if lml.is_t_integral(g2) and lml.is_t_integral(g2_inv):
            return 0  # g2 O^n = O^n: the pair torsor is canonically trivial
        if _is_theta_stable(g1):
            return 0  # g1 preserves the reference block structure
    else:
        g2_inv = lml.mat_inv(g2)
    m_depth = max(0, lml.max_t_denominator(g2_inv))
    field = g1[0][0].field
    ident = lml.identity(field, n)
    return -tau_nested(g1, ident, m_depth, weight, force_general) + tau_nested(
        g1, g2, m_depth, weight, force_general
    )


def cocycle_adelic(m1, m2, fast=True):
    """Sum of per-place, per-branch cocycles; places where m2 acts by the
    identity contribute nothing."""
    total = 0
    for place in m2.support:
        a_mats = m1.matrices_at(place)
        b_mats = m2.matrices_at(place)
        for bf, a, b in zip(place.branches, a_mats, b_mats):
            total += cocycle_branch(a, b, bf.extension_degree, fast)
    return total


# ---------------------------------------------------------------------------
# lifted elements of the central extension
# ---------------------------------------------------------------------------


class LiftedElement:
    """Element of the central extension: an adelic matrix together with a
    dimension-theory offset against the canonical u-block reference."""

    __slots__ = ("matrix", "offset", "fast")

    def __init__(self, matrix, offset=0, fast=True):
        self.matrix = matrix
        self.offset = offset
        self.fast = fast

    def theta(self):
        return self.matrix

    def __mul__(self, other):
        if not isinstance(other, LiftedElement):
            return NotImplemented
        fast = self.fast and other.fast
        off = self.offset + other.offset + cocycle_adelic(
            self.matrix, other.matrix, fast
        )
        return LiftedElement(self.matrix * other.matrix, off, fast)

    def inverse(self):
        inv = self.matrix.inverse()
        c = cocycle_adelic(self.matrix, inv, self.fast)
        return LiftedElement(inv, -self.offset - c, self.fast)

    def central_shift(self, k):
        return LiftedElement(self.matrix, self.offset + k, self.fast)

    def commutator(self, other):
        """[self, other] as a LiftedElement; central when the images commute."""
        return self * other * self.inverse() * other.inverse()

    def central_value(self):
        if not self.matrix.is_identity():
            raise ValueError("element does not lie over the identity")
        return self.offset

    def __repr__(self):
        return "LiftedElement(%r, offset=%d)" % (self.matrix, self.offset)


def reference_lift(matrix, fast=True):
    """The canonical u-block reference lift (matrix, 0)."""
    return LiftedElement(matrix, 0, fast)


def extension_multiply(a, b):
    """Group law of the central extension; theta is a homomorphism and the
    central Z acts by shifting offsets."""
    return a * b


def commutator_central(f, g, fast=True):
    """Central value of the commutator of (any) lifts of two commuting
    adelic matrices."""
    lf, lg = LiftedElement(f, 0, fast), LiftedElement(g, 0, fast)
    return lf.commutator(lg).central_value()


# ---------------------------------------------------------------------------
# lattices and the relative index
# ---------------------------------------------------------------------------


class Lattice:
    """A finite-support adelic lattice g * O^n with remembered generating
    matrices (the reference bookkeeping is sensitive to the generator, not
    only to the lattice it spans)."""

    def __init__(self, matrix):
        if not isinstance(matrix, AdelicMatrix):
            raise TypeError("Lattice wraps an AdelicMatrix generator")
        self.matrix = matrix

    @classmethod
    def standard(cls, n):
        return cls(AdelicMatrix.identity(n))

    @classmethod
    def from_divisor_shifts(cls, shifts):
        """O_A(D)-style lattice: {place: nu_C(D)} giving t^(-nu) scalings."""
        entries = {}
        for place, nu in shifts.items():
            mats = tuple(
                (( bf.monomial(-nu, 0),),) for bf in place.branches
            )
            entries[place] = mats
        return cls(AdelicMatrix(1, entries))

    @property
    def n(self):
        return self.matrix.n

    def support(self):
        return self.matrix.support


class ReferencePolicy:
    """Box policy for relative-index bookkeeping: compare u-block images
    inside the window [t_low, t_depth) x [0, u_cap) against the standard
    reference block."""

    def __init__(self, u_cap=8, t_depth=4):
        self.u_cap = u_cap
        self.t_depth = t_depth


def _theta_block_graded(g, delta):
    """Graded piece at t-level delta of the u-integral block spanned by the
    columns of g: the R-span of all column coefficients at levels <= delta."""
    n = len(g)
    field = g[0][0].field
    ufield, uvar = field.residue_base, field.u_name
    gens = []
    lam = lml.min_t_valuation(g)
    for j in range(n):
        for e in range(lam, delta + 1):
            vec = [g[i][j].coefficient_series(e) for i in range(n)]
            if any(v.coeffs or (v.is_exact and not v.is_zero()) for v in vec):
                gens.append(vec)
    return GradedModule(n, ufield, uvar, (), gens)


def _boxdim(module, u_cap, weight):
    """dim_k of (module + u^cap R^n) / (u^cap R^n)."""
    n = module.n
    ufield, uvar = module.field, module.var
    zero = LaurentSeries.zero(ufield, uvar)
    cap_vec = []
    capm = LaurentSeries.monomial(ufield, u_cap, var=uvar)
    for i in range(n):
        vec = [zero] * n
        vec[i] = capm
        cap_vec.append(vec)
    big = GradedModule(n, ufield, uvar, module.f_part, module.r_gens + cap_vec)
    small = GradedModule(n, ufield, uvar, module.f_part, cap_vec)
    return ulinalg.rel_index(big, small, weight)


def relative_index(lat1, lat2, policy=None):
    """Position of the reference dimension theory of lat2 against lat1,
    measured through u-block images in the policy box; satisfies the exact
    triangle law relative_index(a,b) + relative_index(b,c) =
    relative_index(a,c) at a fixed policy."""
    if policy is None:
        policy = ReferencePolicy()
    if lat1.n != lat2.n:
        raise IncompatibleReferences("lattices of different rank")
    total = 0
    for place in lat1.support() | lat2.support():
        m1 = lat1.matrix.matrices_at(place)
        m2 = lat2.matrix.matrices_at(place)
        for bf, g1, g2 in zip(place.branches, m1, m2):
            w = bf.extension_degree
            lam = min(lml.min_t_valuation(g1), lml.min_t_valuation(g2))
            for delta in range(lam, policy.t_depth):
                b2 = _theta_block_graded(g2, delta)
                b1 = _theta_block_graded(g1, delta)
                total += _boxdim(b2, policy.u_cap, w) - _boxdim(b1, policy.u_cap, w)
    return total


# ---------------------------------------------------------------------------
# DimOffset and the torsor tensor law
# ---------------------------------------------------------------------------


class DimOffset:
    """A dimension theory encoded as an integer against a named reference."""

    __slots__ = ("reference", "offset")

    def __init__(self, reference, offset):
        if isinstance(reference, str):
            reference = (reference,)
        self.reference = tuple(reference)
        self.offset = int(offset)

    def shifted(self, k):
        return DimOffset(self.reference, self.offset + k)

    def __eq__(self, other):
        return (
            isinstance(other, DimOffset)
            and other.reference == self.reference
            and other.offset == self.offset
        )

    def __repr__(self):
        return "DimOffset(%s, %+d)" % ("*".join(self.reference), self.offset)


def torsor_tensor(d1, d3):
    """Compose dimension theories along an exact sequence: offsets add and
    the reference labels concatenate.  Associative across nested sequences."""
    if not isinstance(d1, DimOffset) or not isinstance(d3, DimOffset):
        raise TypeError("torsor_tensor expects DimOffset values")
    overlap = set(d1.reference) & set(d3.reference)
    if overlap:
        raise IncompatibleReferences(
            "references reused across the sequence: %s" % sorted(overlap)
        )
    return DimOffset(d1.reference + d3.reference, d1.offset + d3.offset)
