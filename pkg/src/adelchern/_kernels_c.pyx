# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for dense truncated series arithmetic.

Mirrors `_kernels_py`.  The mod-p paths run on C integers; the object paths
keep Python objects but move the loop bookkeeping into C.
"""

BACKEND = "cython"


def polymul_mod(a, b, long p, long nmax):
    cdef Py_ssize_t la = len(a), lb = len(b)
    if la == 0 or lb == 0:
        return []
    cdef Py_ssize_t n = la + lb - 1
    if 0 <= nmax < n:
        n = nmax
    cdef long[::1] av = _as_long_array(a)
    cdef long[::1] bv = _as_long_array(b)
    cdef long[::1] out = _zero_long_array(n)
    cdef Py_ssize_t i, j, top
    cdef long ai
    for i in range(min(la, n)):
        ai = av[i]
        if ai == 0:
            continue
        top = lb
        if n - i < top:
            top = n - i
        for j in range(top):
            out[i + j] = (out[i + j] + ai * bv[j]) % p
    return [out[i] for i in range(n)]


def polymul_obj(a, b, long nmax, zero):
    cdef Py_ssize_t la = len(a), lb = len(b)
    if la == 0 or lb == 0:
        return []
    cdef Py_ssize_t n = la + lb - 1
    if 0 <= nmax < n:
        n = nmax
    out = [zero] * n
    cdef Py_ssize_t i, j, top
    for i in range(min(la, n)):
        ai = a[i]
        if ai == zero:
            continue
        top = lb
        if n - i < top:
            top = n - i
        for j in range(top):
            out[i + j] = out[i + j] + ai * b[j]
    return out


def series_inv_mod(a, long p, long n):
    cdef long inv0 = _pow_mod(a[0], p - 2, p)
    cdef long[::1] av = _as_long_array(a)
    cdef long[::1] out = _zero_long_array(n)
    out[0] = inv0
    cdef Py_ssize_t la = len(a)
    cdef Py_ssize_t k, i, top
    cdef long acc
    for k in range(1, n):
        acc = 0
        top = k
        if la - 1 < top:
            top = la - 1
        for i in range(1, top + 1):
            acc = (acc + av[i] * out[k - i]) % p
        out[k] = (-inv0 * acc) % p
        if out[k] < 0:
            out[k] += p
    return [out[i] for i in range(n)]


def series_inv_obj(a, long n, one):
    inv0 = one / a[0]
    zero = one - one
    out = [zero] * n
    out[0] = inv0
    cdef Py_ssize_t la = len(a)
    cdef Py_ssize_t k, i, top
    for k in range(1, n):
        acc = zero
        top = k
        if la - 1 < top:
            top = la - 1
        for i in range(1, top + 1):
            acc = acc + a[i] * out[k - i]
        out[k] = zero - inv0 * acc
    return out


cdef long[::1] _as_long_array(a):
    cdef Py_ssize_t n = len(a)
    import array
    arr = array.array("l", a)
    cdef long[::1] view = arr
    return view


cdef long[::1] _zero_long_array(Py_ssize_t n):
    import array
    arr = array.array("l", bytes(8 * n)) if n else array.array("l")
    cdef long[::1] view = arr
    return view


cdef long _pow_mod(long base, long e, long p):
    cdef long r = 1
    base %= p
    while e > 0:
        if e & 1:
            r = (r * base) % p
        base = (base * base) % p
        e >>= 1
    return r
