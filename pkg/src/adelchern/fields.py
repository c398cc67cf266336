"""Exact coefficient fields: Q, prime fields F_p, and finite extensions.

All arithmetic is exact; there is no floating point anywhere in the engine.
Elements are kept in raw form for speed: Fraction for Q, int in [0, p) for
F_p, and ExtElem (a thin polynomial wrapper with operator overloads) for
extensions.  Field objects expose uniform operations on those raw values.
"""

from fractions import Fraction

from .errors import DivisionByZero


class BaseField:
    """Common interface of the concrete fields below."""

    kind = None  # "Q" | "Fp" | "ext"
    char = 0

    def degree_over_prime(self):
        """[k' : k] over the prime field inside, an O(1) lookup."""
        raise NotImplementedError

    def is_zero(self, a):
        return a == self.zero

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n):
        if n < 0:
            return self.pow(self.inv(a), -n)
        r = self.one
        while n:
            if n & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            n >>= 1
        return r


class RationalField(BaseField):
    kind = "Q"
    char = 0

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def degree_over_prime(self):
        return 1

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of 0 in Q")
        return 1 / a

    def from_int(self, n):
        return Fraction(n)

    def parse(self, text):
        return Fraction(text)

    def random(self, rng, nonzero=False):
        while True:
            a = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
            if a or not nonzero:
                return a

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")


class PrimeField(BaseField):
    kind = "Fp"

    def __init__(self, p):
        if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
            raise ValueError("characteristic must be prime, got %d" % p)
        self.p = p
        self.char = p
        self.zero = 0
        self.one = 1 % p

    def degree_over_prime(self):
        return 1

    def add(self, a, b):
        return (a + b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise DivisionByZero("inverse of 0 in F_%d" % self.p)
        return pow(a, self.p - 2, self.p)

    def from_int(self, n):
        return n % self.p

    def parse(self, text):
        return int(text) % self.p

    def random(self, rng, nonzero=False):
        lo = 1 if nonzero else 0
        return rng.randrange(lo, self.p)

    def __repr__(self):
        return "GF(%d)" % self.p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))


class ExtElem:
    """Element of a finite extension, reduced mod the defining polynomial.

    Supports ring operators so it can flow through the generic kernels.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = coeffs  # tuple over the base prime field, fixed length

    def _binop(self, other, fn):
        base = self.field.base
        if isinstance(other, ExtElem):
            oc = other.coeffs
        else:
            oc = self.field.from_int(int(other)).coeffs
        return ExtElem(
            self.field,
            tuple(fn(a, b) for a, b in zip(self.coeffs, oc)),
        )

    def __add__(self, other):
        return self._binop(other, self.field.base.add)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binop(other, self.field.base.sub)

    def __neg__(self):
        base = self.field.base
        return ExtElem(self.field, tuple(base.neg(a) for a in self.coeffs))

    def __mul__(self, other):
        if not isinstance(other, ExtElem):
            other = self.field.from_int(int(other))
        return self.field._mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, ExtElem):
            other = self.field.from_int(int(other))
        return self * self.field.inv(other)

    def __eq__(self, other):
        if isinstance(other, ExtElem):
            return self.coeffs == other.coeffs
        if other == 0:
            return not any(self.coeffs)
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return any(self.coeffs)

    def __repr__(self):
        gen = self.field.gen_name
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append("%s*%s" % (c, gen))
            else:
                parts.append("%s*%s^%d" % (c, gen, i))
        return " + ".join(parts) if parts else "0"


class ExtensionField(BaseField):
    """k = prime field, k' = k[w]/(m(w)) for an irreducible monic m."""

    kind = "ext"

    def __init__(self, base, modulus, gen_name="w"):
        if not isinstance(base, (PrimeField, RationalField)):
            raise ValueError("extension base must be a prime field or Q")
        if len(modulus) < 3 or modulus[-1] != base.one:
            raise ValueError("modulus must be monic of degree >= 2")
        self.base = base
        self.modulus = tuple(modulus)  # dense, low degree first, monic
        self.gen_name = gen_name
        self.char = base.char
        self._deg = len(modulus) - 1
        self.zero = ExtElem(self, (base.zero,) * self._deg)
        one = [base.zero] * self._deg
        one[0] = base.one
        self.one = ExtElem(self, tuple(one))

    def degree_over_prime(self):
        return self._deg * self.base.degree_over_prime()

    def gen(self):
        coeffs = [self.base.zero] * self._deg
        coeffs[1] = self.base.one
        return ExtElem(self, tuple(coeffs))

    def _mul(self, a, b):
        base = self.base
        d = self._deg
        prod = [base.zero] * (2 * d - 1)
        for i, x in enumerate(a.coeffs):
            if base.is_zero(x):
                continue
            for j, y in enumerate(b.coeffs):
                prod[i + j] = base.add(prod[i + j], base.mul(x, y))
        # reduce mod the monic modulus
        for k in range(2 * d - 2, d - 1, -1):
            top = prod[k]
            if base.is_zero(top):
                continue
            prod[k] = base.zero
            for j in range(d):
                prod[k - d + j] = base.sub(
                    prod[k - d + j], base.mul(top, self.modulus[j])
                )
        return ExtElem(self, tuple(prod[:d]))

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return self._mul(a, b)

    def neg(self, a):
        return -a

    def inv(self, a):
        if not a:
            raise DivisionByZero("inverse of 0 in %r" % self)
        # extended Euclid on dense polynomials over the base field
        base = self.base

        def degree(v):
            for i in range(len(v) - 1, -1, -1):
                if not base.is_zero(v[i]):
                    return i
            return -1

        def scale(v, c):
            return [base.mul(x, c) for x in v]

        def sub_shift(v, w, c, s):
            out = list(v)
            while len(out) < len(w) + s:
                out.append(base.zero)
            for i, x in enumerate(w):
                out[i + s] = base.sub(out[i + s], base.mul(c, x))
            return out

        r0, r1 = list(self.modulus), list(a.coeffs)
        s0, s1 = [base.zero], [base.one]
        while degree(r1) > 0:
            d0, d1 = degree(r0), degree(r1)
            if d0 < d1:
                r0, r1, s0, s1 = r1, r0, s1, s0
                continue
            c = base.div(r0[d0], r1[d1])
            r0 = sub_shift(r0, r1, c, d0 - d1)
            s0 = sub_shift(s0, s1, c, d0 - d1)
            if degree(r0) < degree(r1):
                r0, r1, s0, s1 = r1, r0, s1, s0
        lead = r1[degree(r1)]
        inv_lead = base.inv(lead)
        coeffs = [base.zero] * self._deg
        for i, x in enumerate(scale(s1, inv_lead)):
            if i < self._deg:
                coeffs[i] = x
            elif not base.is_zero(x):
                raise AssertionError("inverse reduction failed")
        return ExtElem(self, tuple(coeffs))

    def from_int(self, n):
        coeffs = [self.base.zero] * self._deg
        coeffs[0] = self.base.from_int(n)
        return ExtElem(self, tuple(coeffs))

    def parse(self, text):
        return self.from_int(int(text))

    def random(self, rng, nonzero=False):
        while True:
            e = ExtElem(
                self,
                tuple(self.base.random(rng) for _ in range(self._deg)),
            )
            if e or not nonzero:
                return e

    def __repr__(self):
        return "%r[%s]/(deg %d)" % (self.base, self.gen_name, self._deg)

    def __eq__(self, other):
        return (
            isinstance(other, ExtensionField)
            and other.base == self.base
            and other.modulus == self.modulus
        )

    def __hash__(self):
        return hash(("ext", self.base, self.modulus))


QQ = RationalField()


def GF(p, modulus=None, gen_name="w"):
    """Prime field F_p, or its extension by a monic irreducible polynomial
    given dense with lowest degree first."""
    field = PrimeField(p)
    if modulus is None:
        return field
    return ExtensionField(field, tuple(field.from_int(c) for c in modulus), gen_name)


def field_from_spec(text):
    """Parse a field descriptor: "Q" or "Fp:7"."""
    if text == "Q":
        return QQ
    if text.startswith("Fp:"):
        return GF(int(text[3:]))
    raise ValueError("unknown field spec %r (expected Q or Fp:<p>)" % text)
