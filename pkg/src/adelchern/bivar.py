"""Bivariate polynomials and rational functions over an exact field.

These carry the symbolic side of a surface model: chart transition maps,
curve equations, divisor equations and rational transition matrices.  A
rational function expands exactly into a two-dimensional local element by
Horner evaluation at the coordinate images of a place.
"""

import re

from .errors import DivisionByZero, ExpansionFailure


class Poly2:
    """Polynomial in two variables: {(i, j): coeff} with no zero entries."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = {k: c for k, c in coeffs.items() if not field.is_zero(c)}

    @classmethod
    def zero(cls, field):
        return cls(field, {})

    @classmethod
    def const(cls, field, c):
        return cls(field, {(0, 0): c})

    @classmethod
    def variable(cls, field, which):
        e = (1, 0) if which == 0 else (0, 1)
        return cls(field, {e: field.one})

    def is_zero(self):
        return not self.coeffs

    def __add__(self, other):
        field = self.field
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = field.add(out.get(k, field.zero), c)
        return Poly2(field, out)

    def __neg__(self):
        return Poly2(self.field, {k: self.field.neg(c) for k, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        field = self.field
        out = {}
        for (i1, j1), c1 in self.coeffs.items():
            for (i2, j2), c2 in other.coeffs.items():
                k = (i1 + i2, j1 + j2)
                out[k] = field.add(out.get(k, field.zero), field.mul(c1, c2))
        return Poly2(field, out)

    def scale(self, c):
        return Poly2(self.field, {k: self.field.mul(v, c) for k, v in self.coeffs.items()})

    def pow(self, n):
        r = Poly2.const(self.field, self.field.one)
        b = self
        while n:
            if n & 1:
                r = r * b
            b = b * b
            n >>= 1
        return r

    def derivative(self, which):
        field = self.field
        out = {}
        for (i, j), c in self.coeffs.items():
            e = i if which == 0 else j
            if e == 0:
                continue
            k = (i - 1, j) if which == 0 else (i, j - 1)
            out[k] = field.add(out.get(k, field.zero), field.mul(c, field.from_int(e)))
        return Poly2(field, out)

    def evaluate(self, x, y):
        """Evaluate at field elements."""
        field = self.field
        acc = field.zero
        for (i, j), c in self.coeffs.items():
            acc = field.add(acc, field.mul(c, field.mul(field.pow(x, i), field.pow(y, j))))
        return acc

    def eval_generic(self, x, y, one):
        """Horner-style evaluation at elements of any commutative ring with
        +, * and scalar action via coefficient multiplication (Local2D)."""
        acc = None
        xpow = {}
        ypow = {}

        def pw(base, n, cache):
            if n not in cache:
                cache[n] = one if n == 0 else pw(base, n - 1, cache) * base
            return cache[n]

        for (i, j), c in self.coeffs.items():
            term = pw(x, i, xpow) * pw(y, j, ypow)
            term = term.scale_coeff(c) if hasattr(term, "scale_coeff") else term.scale(c)
            acc = term if acc is None else acc + term
        if acc is None:
            return one - one if hasattr(one, "__sub__") else None
        return acc

    def substitute(self, fx, fy):
        """Compose with rational functions: returns a Frac2."""
        num = Poly2.zero(self.field)
        # common denominator: dx^max_i * dy^max_j
        max_i = max((i for (i, j) in self.coeffs), default=0)
        max_j = max((j for (i, j) in self.coeffs), default=0)
        den = fx.den.pow(max_i) * fy.den.pow(max_j)
        for (i, j), c in self.coeffs.items():
            term = (
                fx.num.pow(i)
                * fx.den.pow(max_i - i)
                * fy.num.pow(j)
                * fy.den.pow(max_j - j)
            ).scale(c)
            num = num + term
        return Frac2(num, den)

    def __eq__(self, other):
        return isinstance(other, Poly2) and other.coeffs == self.coeffs

    def __repr__(self):
        return poly2_str(self, "x", "y")


def poly2_str(p, xn, yn):
    parts = []
    for (i, j) in sorted(p.coeffs):
        c = p.coeffs[(i, j)]
        bits = []
        if (i, j) == (0, 0) or c != p.field.one:
            bits.append(str(c))
        if i:
            bits.append(xn if i == 1 else "%s^%d" % (xn, i))
        if j:
            bits.append(yn if j == 1 else "%s^%d" % (yn, j))
        parts.append("*".join(bits))
    return " + ".join(parts) if parts else "0"


class Frac2:
    """Quotient of bivariate polynomials (not reduced; degrees stay small)."""

    __slots__ = ("num", "den")

    def __init__(self, num, den):
        if den.is_zero():
            raise DivisionByZero("zero denominator in rational function")
        self.num = num
        self.den = den

    @classmethod
    def from_poly(cls, p):
        return cls(p, Poly2.const(p.field, p.field.one))

    @classmethod
    def const(cls, field, c):
        return cls.from_poly(Poly2.const(field, c))

    @classmethod
    def variable(cls, field, which):
        return cls.from_poly(Poly2.variable(field, which))

    @property
    def field(self):
        return self.num.field

    def is_zero(self):
        return self.num.is_zero()

    def __add__(self, other):
        return Frac2(self.num * other.den + other.num * self.den, self.den * other.den)

    def __neg__(self):
        return Frac2(-self.num, self.den)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        return Frac2(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        if other.num.is_zero():
            raise DivisionByZero("division by zero rational function")
        return Frac2(self.num * other.den, self.den * other.num)

    def inverse(self):
        if self.num.is_zero():
            raise DivisionByZero("inverse of zero rational function")
        return Frac2(self.den, self.num)

    def pow(self, n):
        if n < 0:
            return self.inverse().pow(-n)
        return Frac2(self.num.pow(n), self.den.pow(n))

    def derivative(self, which):
        num = self.num.derivative(which) * self.den - self.num * self.den.derivative(which)
        return Frac2(num, self.den * self.den)

    def substitute(self, fx, fy):
        a = self.num.substitute(fx, fy)
        b = self.den.substitute(fx, fy)
        return a / b

    def __eq__(self, other):
        if not isinstance(other, Frac2):
            return NotImplemented
        return (self.num * other.den) == (other.num * self.den)

    def __repr__(self):
        if self.den == Poly2.const(self.field, self.field.one):
            return repr(self.num)
        return "(%r)/(%r)" % (self.num, self.den)


def expand_at(frac, x_image, y_image, field_local):
    """Exact expansion of a rational function at a place, given the local
    images of the two chart coordinates as Local2DElement values."""
    one = field_local.one()
    num = _eval_poly2(frac.num, x_image, y_image, field_local)
    den = _eval_poly2(frac.den, x_image, y_image, field_local)
    if den.is_exactly_zero():
        raise ExpansionFailure("denominator vanishes identically at the place")
    try:
        return num * den.inverse()
    except Exception as exc:
        raise ExpansionFailure("cannot expand at place: %s" % exc) from exc


def _eval_poly2(p, x_image, y_image, field_local):
    acc = field_local.zero()
    xcache = {0: field_local.one()}
    ycache = {0: field_local.one()}

    def pw(base, n, cache):
        if n not in cache:
            cache[n] = pw(base, n - 1, cache) * base
        return cache[n]

    for (i, j), c in p.coeffs.items():
        term = pw(x_image, i, xcache) * pw(y_image, j, ycache)
        term = term * field_local.monomial(0, 0, c)
        acc = acc + term
    return acc


def parse_poly2(field, text, xname="x", yname="y"):
    """Parse a bivariate polynomial literal: sum of c*x^i*y^j terms."""
    text = text.replace(" ", "")
    if text in ("", "0"):
        return Poly2.zero(field)
    out = {}
    for piece in re.split(r"(?<![\^eE/*(])(?=[+-])", text):
        if piece in ("", "+"):
            continue
        sign = 1
        if piece.startswith("+"):
            piece = piece[1:]
        elif piece.startswith("-"):
            sign = -1
            piece = piece[1:]
        ij = [0, 0]
        coeff = field.one
        for factor in piece.split("*"):
            if not factor:
                raise ValueError("empty factor in %r" % piece)
            matched = False
            for idx, name in ((0, xname), (1, yname)):
                if factor == name:
                    ij[idx] += 1
                    matched = True
                    break
                if factor.startswith(name + "^"):
                    ij[idx] += int(factor[len(name) + 1:])
                    matched = True
                    break
            if not matched:
                coeff = field.mul(coeff, field.parse(factor))
        key = (ij[0], ij[1])
        c = field.neg(coeff) if sign < 0 else coeff
        out[key] = field.add(out.get(key, field.zero), c)
    return Poly2(field, out)


def parse_frac2(field, text, xname="x", yname="y"):
    text = text.strip()
    m = re.match(r"^\((.*)\)\s*/\s*\((.*)\)$", text)
    if m:
        return Frac2(
            parse_poly2(field, m.group(1), xname, yname),
            parse_poly2(field, m.group(2), xname, yname),
        )
    return Frac2.from_poly(parse_poly2(field, text, xname, yname))
