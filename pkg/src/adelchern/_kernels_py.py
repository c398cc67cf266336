"""Pure-Python reference kernels for dense truncated series arithmetic.

Same signatures as the compiled module `_kernels_c`; `kernels` picks one at
import time.  Coefficients are either machine ints reduced mod a prime, or
arbitrary objects supporting ring arithmetic (Fraction, extension-field
elements).
"""

BACKEND = "python"


def polymul_mod(a, b, p, nmax):
    """Truncated product of dense int coefficient lists mod p.

    nmax < 0 means the full product.
    """
    la, lb = len(a), len(b)
    if la == 0 or lb == 0:
        return []
    n = la + lb - 1
    if 0 <= nmax < n:
        n = nmax
    out = [0] * n
    for i in range(min(la, n)):
        ai = a[i]
        if ai == 0:
            continue
        top = min(lb, n - i)
        for j in range(top):
            out[i + j] = (out[i + j] + ai * b[j]) % p
    return out


def polymul_obj(a, b, nmax, zero):
    la, lb = len(a), len(b)
    if la == 0 or lb == 0:
        return []
    n = la + lb - 1
    if 0 <= nmax < n:
        n = nmax
    out = [zero] * n
    for i in range(min(la, n)):
        ai = a[i]
        if ai == zero:
            continue
        top = min(lb, n - i)
        for j in range(top):
            out[i + j] = out[i + j] + ai * b[j]
    return out


def series_inv_mod(a, p, n):
    """First n coefficients of 1/a for a dense unit series mod p."""
    inv0 = pow(a[0], p - 2, p)
    out = [0] * n
    out[0] = inv0
    la = len(a)
    for k in range(1, n):
        acc = 0
        top = min(k, la - 1)
        for i in range(1, top + 1):
            acc += a[i] * out[k - i]
        out[k] = (-inv0 * acc) % p
    return out


def series_inv_obj(a, n, one):
    inv0 = one / a[0]
    out = [one - one] * n
    out[0] = inv0
    zero = one - one
    la = len(a)
    for k in range(1, n):
        acc = zero
        top = min(k, la - 1)
        for i in range(1, top + 1):
            acc = acc + a[i] * out[k - i]
        out[k] = zero - inv0 * acc
    return out
