"""Field of rational functions in one variable over an exact base field.

Serves as the exact coefficient field for the outer (t-) expansions of
two-dimensional local elements: a t-series with RatElem coefficients loses
nothing, and each coefficient expands on demand into a u-Laurent series.
RatElem implements the same raw-element protocol as the base fields, so the
generic polynomial and series machinery works over it unchanged.
"""

from . import polyring
from .errors import DivisionByZero
from .series import LaurentSeries


class RatElem:
    __slots__ = ("field", "num", "den")

    def __init__(self, field, num, den, reduce=True):
        base = field.base
        if not den:
            raise DivisionByZero("zero denominator in rational function")
        if reduce and num:
            g = polyring.gcd(base, num, den)
            if len(g) > 1:
                num, _ = polyring.divmod_poly(base, num, g)
                den, _ = polyring.divmod_poly(base, den, g)
        if not num:
            den = [base.one]
        elif not base.is_zero(den[-1]) and den[-1] != base.one:
            c = base.inv(den[-1])
            num = polyring.scale(base, num, c)
            den = polyring.scale(base, den, c)
        self.field = field
        self.num = num
        self.den = den

    def __add__(self, other):
        other = self.field.coerce(other)
        base = self.field.base
        num = polyring.add(
            base,
            polyring.mul(base, self.num, other.den),
            polyring.mul(base, other.num, self.den),
        )
        return RatElem(self.field, num, polyring.mul(base, self.den, other.den))

    __radd__ = __add__

    def __neg__(self):
        return RatElem(self.field, polyring.neg(self.field.base, self.num), self.den, reduce=False)

    def __sub__(self, other):
        return self + (-self.field.coerce(other))

    def __rsub__(self, other):
        return self.field.coerce(other) - self

    def __mul__(self, other):
        other = self.field.coerce(other)
        base = self.field.base
        return RatElem(
            self.field,
            polyring.mul(base, self.num, other.num),
            polyring.mul(base, self.den, other.den),
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self.field.coerce(other)
        if not other.num:
            raise DivisionByZero("division by zero rational function")
        base = self.field.base
        return RatElem(
            self.field,
            polyring.mul(base, self.num, other.den),
            polyring.mul(base, self.den, other.num),
        )

    def __eq__(self, other):
        if isinstance(other, RatElem):
            base = self.field.base
            lhs = polyring.mul(base, self.num, other.den)
            rhs = polyring.mul(base, other.num, self.den)
            return lhs == rhs
        if other == 0:
            return not self.num
        return NotImplemented

    def __bool__(self):
        return bool(self.num)

    def __hash__(self):
        return hash((tuple(self.num), tuple(self.den)))

    def valuation(self):
        """Order of vanishing at var = 0 (negative for a pole)."""
        base = self.field.base
        if not self.num:
            return None
        vn = polyring.valuation(base, self.num)
        vd = polyring.valuation(base, self.den)
        return vn - vd

    def to_series(self, var=None):
        """Exact Laurent expansion at var = 0."""
        base = self.field.base
        var = var or self.field.var
        return LaurentSeries.from_fraction(
            base,
            {e: c for e, c in enumerate(self.num)},
            {e: c for e, c in enumerate(self.den)},
            var=var,
        )

    def __repr__(self):
        var = self.field.var
        num = _poly_str(self.field.base, self.num, var)
        if self.den == [self.field.base.one]:
            return num
        return "(%s)/(%s)" % (num, _poly_str(self.field.base, self.den, var))


def _poly_str(base, coeffs, var):
    parts = []
    for e, c in enumerate(coeffs):
        if base.is_zero(c):
            continue
        if e == 0:
            parts.append("%s" % (c,))
        elif e == 1:
            parts.append("%s*%s" % (c, var))
        else:
            parts.append("%s*%s^%d" % (c, var, e))
    return " + ".join(parts) if parts else "0"


class RationalFunctionField:
    """k(var) with the raw-element field protocol."""

    kind = "ratfunc"

    def __init__(self, base, var="u"):
        self.base = base
        self.var = var
        self.char = base.char
        self.zero = RatElem(self, [], [base.one], reduce=False)
        self.one = RatElem(self, [base.one], [base.one], reduce=False)

    def degree_over_prime(self):
        raise TypeError("rational function fields have no finite degree")

    def coerce(self, x):
        if isinstance(x, RatElem):
            return x
        if isinstance(x, int):
            return self.from_int(x)
        raise TypeError("cannot coerce %r into %r" % (x, self))

    def gen(self):
        return RatElem(self, [self.base.zero, self.base.one], [self.base.one], reduce=False)

    def constant(self, c):
        if self.base.is_zero(c):
            return self.zero
        return RatElem(self, [c], [self.base.one], reduce=False)

    def from_poly_dict(self, d):
        return RatElem(self, polyring.from_dict(self.base, d), [self.base.one])

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def sub(self, a, b):
        return a - b

    def inv(self, a):
        if not a.num:
            raise DivisionByZero("inverse of zero rational function")
        return RatElem(self, a.den, a.num)

    def div(self, a, b):
        return a / b

    def is_zero(self, a):
        return not a.num

    def from_int(self, n):
        return self.constant(self.base.from_int(n))

    def random(self, rng, nonzero=False):
        base = self.base
        while True:
            num = [base.random(rng) for _ in range(rng.randint(1, 3))]
            num = polyring.normalize(base, num)
            if num or not nonzero:
                den_choices = [[base.one], [base.one, base.one]]
                return RatElem(self, num, den_choices[rng.randrange(2)])

    def __repr__(self):
        return "%r(%s)" % (self.base, self.var)

    def __eq__(self, other):
        return (
            isinstance(other, RationalFunctionField)
            and other.base == self.base
            and other.var == self.var
        )

    def __hash__(self):
        return hash(("ratfunc", self.base, self.var))
