"""Finite-support adelic matrices over the places of a surface.

A place is an incidence (x, C) carrying one two-dimensional local field per
formal branch of C at x.  An adelic matrix is the identity outside a finite
declared support; at each supporting place it is an invertible matrix over
K_{x,C} = prod of the branch fields, stored as one matrix per branch.

Subring membership (the 01 / 02 / 12 subrings and the rational diagonal) is
tracked by constructive provenance tags, which products and inverses
intersect; it is never decided a posteriori.
"""

from . import linalg_local as lml
from .errors import BranchMismatch, OverlapError


class Place:
    """An incidence x in C with its branch fields."""

    def __init__(self, point, curve, branches):
        if not branches:
            raise ValueError("a place needs at least one branch field")
        self.point = point
        self.curve = curve
        self.branches = tuple(branches)

    @property
    def key(self):
        return (self.point, self.curve)

    def __eq__(self, other):
        return (
            isinstance(other, Place)
            and other.key == self.key
            and other.branches == self.branches
        )

    def __hash__(self):
        return hash((self.key, self.branches))

    def __repr__(self):
        return "(%s in %s)" % (self.point, self.curve)


TAG_01 = "01"
TAG_02 = "02"
TAG_12 = "12"
TAG_RATIONAL = "k(X)"

ALL_TAGS = frozenset({TAG_01, TAG_02, TAG_12, TAG_RATIONAL})


def _normalize_entries(entries):
    out = {}
    for place, mats in entries.items():
        mats = tuple(tuple(tuple(row) for row in m) for m in mats)
        if len(mats) != len(place.branches):
            raise BranchMismatch(
                "place %r has %d branches but %d matrices given"
                % (place, len(place.branches), len(mats))
            )
        if all(_is_identity(m) for m in mats):
            continue
        out[place] = mats
    return out


def _is_identity(m):
    n = len(m)
    for i in range(n):
        for j in range(n):
            e = m[i][j]
            target = e.field.one() if i == j else e.field.zero()
            if not e.is_exact:
                return False
            if not (e - target).is_exactly_zero():
                return False
    return True


class AdelicMatrix:
    """Invertible n x n matrix over the adeles, identity off a finite support."""

    def __init__(self, n, entries, tags=frozenset()):
        self.n = n
        self.entries = _normalize_entries(entries)
        self.tags = frozenset(tags)

    # -- construction helpers -------------------------------------------------

    @classmethod
    def identity(cls, n, tags=ALL_TAGS):
        return cls(n, {}, tags)

    @classmethod
    def from_place_matrix(cls, place, matrices, tags=frozenset()):
        n = len(matrices[0])
        return cls(n, {place: tuple(matrices)}, tags)

    @classmethod
    def unit_from_place_elements(cls, data, tags=frozenset()):
        """Rank-1 matrix from {place: tuple of branch elements}."""
        entries = {
            place: tuple(((e,),) for e in elems) for place, elems in data.items()
        }
        return cls(1, entries, tags)

    @property
    def support(self):
        return set(self.entries)

    def matrices_at(self, place):
        """Per-branch matrices at a place; identity when off-support."""
        if place in self.entries:
            return self.entries[place]
        return tuple(
            lml.identity(bf, self.n) for bf in place.branches
        )

    def unit_at(self, place):
        """For n = 1: the per-branch scalars at a place."""
        if self.n != 1:
            raise ValueError("unit_at is for rank-1 adeles")
        return tuple(m[0][0] for m in self.matrices_at(place))

    # -- group operations ------------------------------------------------------

    def __mul__(self, other):
        if not isinstance(other, AdelicMatrix):
            return NotImplemented
        if other.n != self.n:
            raise ValueError("rank mismatch: %d vs %d" % (self.n, other.n))
        places = self.support | other.support
        entries = {}
        for p in places:
            a = self.matrices_at(p)
            b = other.matrices_at(p)
            entries[p] = tuple(lml.mat_mul(x, y) for x, y in zip(a, b))
        return AdelicMatrix(self.n, entries, self.tags & other.tags)

    def inverse(self):
        entries = {
            p: tuple(lml.mat_inv(m) for m in mats)
            for p, mats in self.entries.items()
        }
        return AdelicMatrix(self.n, entries, self.tags)

    def power(self, k):
        if k == 0:
            return AdelicMatrix.identity(self.n, self.tags)
        base = self if k > 0 else self.inverse()
        k = abs(k)
        out = None
        while k:
            if k & 1:
                out = base if out is None else out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def det(self):
        entries = {
            p: tuple(((lml.det(m),),) for m in mats)
            for p, mats in self.entries.items()
        }
        return AdelicMatrix(1, entries, self.tags)

    def is_identity(self):
        return not self.entries

    def is_integral(self):
        """All entries t-integral at every branch of every place."""
        return all(
            lml.is_t_integral(m) for mats in self.entries.values() for m in mats
        )

    def is_integral_invertible(self):
        """In GL_n(O_A): both the matrix and its inverse are t-integral."""
        return self.is_integral() and self.inverse().is_integral()

    def with_tags(self, tags):
        return AdelicMatrix(self.n, self.entries, frozenset(tags))

    def restrict(self, places):
        entries = {p: m for p, m in self.entries.items() if p in places}
        return AdelicMatrix(self.n, entries, self.tags)

    def eq_to_precision(self, other):
        if self.n != other.n:
            return False
        for p in self.support | other.support:
            for a, b in zip(self.matrices_at(p), other.matrices_at(p)):
                for ra, rb in zip(a, b):
                    for ea, eb in zip(ra, rb):
                        if not ea.eq_to_precision(eb):
                            return False
        return True

    def __repr__(self):
        if not self.entries:
            return "AdelicMatrix(n=%d, identity)" % self.n
        return "AdelicMatrix(n=%d, support=%s, tags=%s)" % (
            self.n,
            sorted(p.key for p in self.entries),
            sorted(self.tags),
        )

    # -- serialization ----------------------------------------------------------

    def to_data(self):
        """JSON-compatible: list of (place key, per-branch matrix of literals)."""
        out = []
        for place in sorted(self.entries, key=lambda p: p.key):
            mats = [
                [[repr(e) for e in row] for row in m]
                for m in self.entries[place]
            ]
            out.append({"point": place.point, "curve": place.curve, "matrices": mats})
        return out


AdelicUnit = AdelicMatrix  # rank-1 case, same machinery


def split_support(m, places1, places2):
    """Split an adelic matrix over a disjoint cover of its support.

    Returns the two restrictions; recombining them by multiplication gives
    back the original matrix.
    """
    places1, places2 = set(places1), set(places2)
    inter = places1 & places2
    if inter:
        raise OverlapError("place sets overlap: %s" % sorted(p.key for p in inter))
    missing = m.support - places1 - places2
    if missing:
        raise OverlapError(
            "support not covered: %s" % sorted(p.key for p in missing)
        )
    return m.restrict(places1), m.restrict(places2)
