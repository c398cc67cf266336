"""Rank-2 local symbols and the adelic commutator pairing.

Two independent routes compute the same integers:

* nu_K and its branch and place sums evaluate the explicit valuation
  formula [k':k] * nu(residue of f^{nu(g)} g^{-nu(f)}) by honest series
  arithmetic;
* pairing_via_commutator lifts the adelic units into the central extension
  and takes the commutator of the lifts.

Their agreement is a theorem, and a test, never an assumption.
"""

from .dimtheory import LiftedElement
from .errors import BranchMismatch, ZeroElement


class SymbolValue:
    """An exact integer symbol; no modular reduction ever happens."""

    __slots__ = ("value",)

    def __init__(self, value):
        self.value = int(value)

    def __eq__(self, other):
        if isinstance(other, SymbolValue):
            return self.value == other.value
        return self.value == other

    def __add__(self, other):
        other = other.value if isinstance(other, SymbolValue) else other
        return SymbolValue(self.value + other)

    def __neg__(self):
        return SymbolValue(-self.value)

    def __int__(self):
        return self.value

    def __hash__(self):
        return hash(self.value)

    def __repr__(self):
        return "SymbolValue(%d)" % self.value


def nu_K(f, g):
    """The bilinear alternating symbol on K^* x K^*:
    [k':k] * nu_res(pi(f^{nu(g)} * g^{-nu(f)}))."""
    if f.is_exactly_zero() or g.is_exactly_zero():
        raise ZeroElement("symbol of zero element")
    a = f.t_valuation()
    c = g.t_valuation()
    h = f.power(c) * g.power(-a)
    res = h.residue()
    deg = f.field.extension_degree
    return SymbolValue(deg * res.valuation())


def nu_xC(fs, gs):
    """Branchwise sum over K_{x,C} = prod K_i."""
    if len(fs) != len(gs) or not fs:
        raise BranchMismatch(
            "branch lists of lengths %d and %d" % (len(fs), len(gs))
        )
    total = 0
    for f, g in zip(fs, gs):
        if f.field != g.field:
            raise BranchMismatch("branch fields differ: %r vs %r" % (f.field, g.field))
        total += int(nu_K(f, g))
    return SymbolValue(total)


def pairing(f, g):
    """The adelic pairing <f, g> = sum over places of -nu_{x,C}; places
    where both arguments act by units contribute 0 and are skipped."""
    total = 0
    for place in f.support | g.support:
        fs = f.unit_at(place)
        gs = g.unit_at(place)
        total -= int(nu_xC(fs, gs))
    return SymbolValue(total)


def pairing_via_commutator(f, g, fast=True):
    """The same integer through the central extension: the commutator of
    lifts of f and g, which is central and independent of the lifts."""
    lf = LiftedElement(f, 0, fast)
    lg = LiftedElement(g, 0, fast)
    return SymbolValue(lf.commutator(lg).central_value())
