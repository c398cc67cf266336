"""Dense univariate polynomial arithmetic over an exact base field.

Polynomials are plain lists of raw field elements, lowest degree first, with
no trailing zeros.  These are the work lists behind rational functions and
the exact series backend; multiplication dispatches to the kernel backend.
"""

from . import kernels
from .errors import DivisionByZero


def normalize(field, coeffs):
    n = len(coeffs)
    while n and field.is_zero(coeffs[n - 1]):
        n -= 1
    return list(coeffs[:n])


def degree(coeffs):
    return len(coeffs) - 1  # -1 for the zero polynomial


def valuation(field, coeffs):
    for i, c in enumerate(coeffs):
        if not field.is_zero(c):
            return i
    return None


def add(field, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = field.add(out[i], c)
    return normalize(field, out)


def neg(field, a):
    return [field.neg(c) for c in a]


def sub(field, a, b):
    return add(field, a, neg(field, b))


def mul(field, a, b, nmax=-1):
    if not a or not b:
        return []
    if field.kind == "Fp":
        return normalize(field, kernels.polymul_mod(a, b, field.p, nmax))
    return normalize(field, kernels.polymul_obj(a, b, nmax, field.zero))


def scale(field, a, c):
    if field.is_zero(c):
        return []
    return normalize(field, [field.mul(x, c) for x in a])


def divmod_poly(field, a, b):
    """Quotient and remainder of dense polynomials; b nonzero."""
    b = normalize(field, b)
    if not b:
        raise DivisionByZero("polynomial division by zero")
    a = normalize(field, a)
    db = len(b) - 1
    inv_lead = field.inv(b[db])
    rem = list(a)
    quot = [field.zero] * max(len(a) - db, 0)
    for k in range(len(a) - db - 1, -1, -1):
        c = field.mul(rem[k + db], inv_lead)
        if field.is_zero(c):
            continue
        quot[k] = c
        for j in range(db + 1):
            rem[k + j] = field.sub(rem[k + j], field.mul(c, b[j]))
    return normalize(field, quot), normalize(field, rem)


def gcd(field, a, b):
    """Monic gcd."""
    a = normalize(field, a)
    b = normalize(field, b)
    while b:
        _, r = divmod_poly(field, a, b)
        a, b = b, r
    if not a:
        return []
    return scale(field, a, field.inv(a[-1]))


def pow_poly(field, a, n):
    r = [field.one]
    while n:
        if n & 1:
            r = mul(field, r, a)
        a = mul(field, a, a)
        n >>= 1
    return r


def evaluate(field, a, x):
    acc = field.zero
    for c in reversed(a):
        acc = field.add(field.mul(acc, x), c)
    return acc


def shift(field, a, k):
    """Multiply by var^k (k >= 0)."""
    if not a:
        return []
    return [field.zero] * k + list(a)


def from_dict(field, d):
    if not d:
        return []
    n = max(d) + 1
    out = [field.zero] * n
    for e, c in d.items():
        if e < 0:
            raise ValueError("negative exponent in polynomial data")
        out[e] = field.add(out[e], c)
    return normalize(field, out)
