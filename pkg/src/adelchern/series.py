"""Formal Laurent series in one variable over an exact field.

Two backends coexist:

* exact: the series is the expansion of var^shift * num(var)/den(var) for
  dense polynomials with den(0) != 0; every coefficient is computable on
  demand and nothing is ever lost;
* truncated: finitely many stored coefficients plus a precision bound N
  meaning the series is known modulo O(var^N).

Operations propagate precision honestly and raise InsufficientPrecision
instead of guessing whenever a valuation or leading coefficient cannot be
certified.  Values are immutable after construction (the expansion cache of
an exact series only memoizes already-determined coefficients).
"""

import re

from . import polyring
from .config import default_precision
from .errors import DivisionByZero, InsufficientPrecision, ZeroElement


class LaurentSeries:
    __slots__ = ("field", "var", "coeffs", "prec", "frac", "_cache_hi")

    def __init__(self, field, coeffs, prec, var="u", frac=None):
        """Low-level constructor; prefer the class methods.

        coeffs: dict {exponent: nonzero raw coefficient}.
        prec: known modulo O(var^prec); None means exact (frac is set, or the
        series is an exactly known finite sum).
        frac: optional (shift, num, den) with num, den valuation-0 dense
        polynomials, den a unit at 0.
        """
        self.field = field
        self.var = var
        self.coeffs = {e: c for e, c in coeffs.items() if not field.is_zero(c)}
        self.prec = prec
        self.frac = frac
        self._cache_hi = None
        if prec is not None:
            for e in self.coeffs:
                if e >= prec:
                    raise ValueError("stored exponent %d >= precision %d" % (e, prec))

    # ----- constructors -------------------------------------------------

    @classmethod
    def zero(cls, field, var="u"):
        return cls(field, {}, None, var, frac=(0, [], [field.one]))

    @classmethod
    def one(cls, field, var="u"):
        return cls.monomial(field, 0, var=var)

    @classmethod
    def monomial(cls, field, e, coeff=None, var="u"):
        c = field.one if coeff is None else coeff
        if field.is_zero(c):
            return cls.zero(field, var)
        return cls(field, {e: c}, None, var, frac=(e, [c], [field.one]))

    @classmethod
    def from_dict(cls, field, coeffs, prec=None, var="u"):
        """Exact finite sum when prec is None, truncated otherwise."""
        coeffs = {e: c for e, c in coeffs.items() if not field.is_zero(c)}
        if prec is None:
            shift = min(coeffs) if coeffs else 0
            num = polyring.from_dict(field, {e - shift: c for e, c in coeffs.items()})
            return cls(field, coeffs, None, var, frac=(shift, num, [field.one]))
        return cls(field, coeffs, prec, var)

    @classmethod
    def from_fraction(cls, field, num_dict, den_dict, var="u"):
        """Exact series var-expansion of (sum num) / (sum den)."""
        num = {e: c for e, c in num_dict.items() if not field.is_zero(c)}
        den = {e: c for e, c in den_dict.items() if not field.is_zero(c)}
        if not den:
            raise DivisionByZero("zero denominator")
        if not num:
            return cls.zero(field, var)
        ns, ds = min(num), min(den)
        np_ = polyring.from_dict(field, {e - ns: c for e, c in num.items()})
        dp = polyring.from_dict(field, {e - ds: c for e, c in den.items()})
        g = polyring.gcd(field, np_, dp)
        if len(g) > 1:
            np_, _ = polyring.divmod_poly(field, np_, g)
            dp, _ = polyring.divmod_poly(field, dp, g)
        out = cls(field, {}, None, var, frac=(ns - ds, np_, dp))
        out._expand_to(default_precision() + max(0, ns - ds) + 1)
        return out

    # ----- backend plumbing ----------------------------------------------

    @property
    def is_exact(self):
        return self.prec is None

    def _expand_to(self, hi):
        """Fill the coefficient dict of an exact series up to exponent < hi."""
        if self.frac is None:
            raise AssertionError("truncated series has no expansion backend")
        if self._cache_hi is not None and self._cache_hi >= hi:
            return
        shift, num, den = self.frac
        n = hi - shift
        if n <= 0:
            self._cache_hi = hi
            return
        field = self.field
        if not num:
            self._cache_hi = hi
            return
        if len(den) == 1:
            inv = [field.inv(den[0])]
        elif field.kind == "Fp":
            from . import kernels

            inv = kernels.series_inv_mod(den, field.p, n)
        else:
            from . import kernels

            inv = kernels.series_inv_obj(den, n, field.one)
        prod = polyring.mul(field, num, inv, nmax=n)
        coeffs = {}
        for i, c in enumerate(prod):
            if not field.is_zero(c):
                coeffs[i + shift] = c
        self.coeffs = coeffs
        self._cache_hi = hi

    def known_prec(self):
        """Exponent bound below which every coefficient is determined."""
        return self.prec if self.prec is not None else None

    def coefficient(self, e):
        """Coefficient of var^e; raises InsufficientPrecision past the bound."""
        if self.prec is not None and e >= self.prec:
            raise InsufficientPrecision(
                "coefficient of %s^%d requested at precision O(%s^%d)"
                % (self.var, e, self.var, self.prec)
            )
        if self.is_exact and self.frac is not None:
            self._expand_to(e + 1)
        return self.coeffs.get(e, self.field.zero)

    def dense_window(self, lo, hi):
        """Coefficients for exponents in [lo, hi) as a list; certified."""
        if self.prec is not None and hi > self.prec:
            raise InsufficientPrecision(
                "window [%d, %d) exceeds precision O(%s^%d)"
                % (lo, hi, self.var, self.prec)
            )
        if self.is_exact and self.frac is not None:
            self._expand_to(hi)
        zero = self.field.zero
        return [self.coeffs.get(e, zero) for e in range(lo, hi)]

    # ----- structure queries ---------------------------------------------

    def is_zero(self):
        """True when the series is certifiably zero; exact zero only."""
        if self.is_exact:
            if self.frac is not None:
                return not self.frac[1]
            return not self.coeffs
        if self.coeffs:
            return False
        raise InsufficientPrecision(
            "series is 0 mod O(%s^%d); cannot certify exact zero" % (self.var, self.prec)
        )

    def valuation(self):
        """Smallest exponent with nonzero coefficient, certified."""
        if self.is_exact:
            if self.frac is not None:
                if not self.frac[1]:
                    raise ZeroElement("valuation of the zero series")
                return self.frac[0]
            if not self.coeffs:
                raise ZeroElement("valuation of the zero series")
            return min(self.coeffs)
        if self.coeffs:
            return min(self.coeffs)
        raise InsufficientPrecision(
            "no nonzero coefficient below O(%s^%d)" % (self.var, self.prec)
        )

    def valuation_lower_bound(self):
        if self.is_exact:
            try:
                return self.valuation()
            except ZeroElement:
                return None  # +infinity
        return min(self.coeffs) if self.coeffs else self.prec

    def leading_coefficient(self):
        return self.coefficient(self.valuation())

    # ----- arithmetic -----------------------------------------------------

    def _check_compat(self, other):
        if self.field != other.field or self.var != other.var:
            raise ValueError("series over different fields or variables")

    def __add__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        self._check_compat(other)
        field = self.field
        if self.is_exact and other.is_exact:
            s1, n1, d1 = self.frac
            s2, n2, d2 = other.frac
            s = min(s1, s2)
            a = polyring.mul(field, polyring.shift(field, n1, s1 - s), d2)
            b = polyring.mul(field, polyring.shift(field, n2, s2 - s), d1)
            num = polyring.add(field, a, b)
            den = polyring.mul(field, d1, d2)
            return _from_frac_raw(field, s, num, den, self.var)
        prec = min(p for p in (self.prec, other.prec) if p is not None)
        coeffs = dict(_window_dict(self, prec))
        for e, c in _window_dict(other, prec).items():
            coeffs[e] = field.add(coeffs.get(e, field.zero), c)
        return LaurentSeries(field, coeffs, prec, self.var)

    def __neg__(self):
        field = self.field
        coeffs = {e: field.neg(c) for e, c in self.coeffs.items()}
        frac = None
        if self.frac is not None:
            s, n, d = self.frac
            frac = (s, polyring.neg(field, n), d)
        out = LaurentSeries(field, coeffs, self.prec, self.var, frac)
        out._cache_hi = self._cache_hi
        return out

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        self._check_compat(other)
        field = self.field
        if self.is_exact and other.is_exact:
            s1, n1, d1 = self.frac
            s2, n2, d2 = other.frac
            return _from_frac_raw(
                field,
                s1 + s2,
                polyring.mul(field, n1, n2),
                polyring.mul(field, d1, d2),
                self.var,
            )
        va, vb = self.valuation_lower_bound(), other.valuation_lower_bound()
        if va is None or vb is None:  # one factor exactly zero
            return LaurentSeries.zero(field, self.var)
        pa = self.prec if self.prec is not None else None
        pb = other.prec if other.prec is not None else None
        bounds = []
        if pa is not None:
            bounds.append(pa + vb)
        if pb is not None:
            bounds.append(pb + va)
        prec = min(bounds)
        wa = _window_dict(self, prec - vb)
        wb = _window_dict(other, prec - va)
        coeffs = {}
        for e1, c1 in wa.items():
            for e2, c2 in wb.items():
                e = e1 + e2
                if e < prec:
                    coeffs[e] = field.add(coeffs.get(e, field.zero), field.mul(c1, c2))
        return LaurentSeries(field, coeffs, prec, self.var)

    def scale(self, c):
        field = self.field
        if field.is_zero(c):
            return (
                LaurentSeries.zero(field, self.var)
                if self.is_exact
                else LaurentSeries(field, {}, self.prec, self.var)
            )
        coeffs = {e: field.mul(x, c) for e, x in self.coeffs.items()}
        frac = None
        if self.frac is not None:
            s, n, d = self.frac
            frac = (s, polyring.scale(field, n, c), d)
        out = LaurentSeries(field, coeffs, self.prec, self.var, frac)
        out._cache_hi = self._cache_hi
        return out

    def shift(self, k):
        """Multiply by var^k."""
        coeffs = {e + k: c for e, c in self.coeffs.items()}
        prec = None if self.prec is None else self.prec + k
        frac = None
        if self.frac is not None:
            s, n, d = self.frac
            frac = (s + k, n, d)
        out = LaurentSeries(self.field, coeffs, prec, self.var, frac)
        out._cache_hi = None if self._cache_hi is None else self._cache_hi + k
        return out

    def inverse(self):
        """Multiplicative inverse; the input must be a certified unit."""
        field = self.field
        if self.is_exact:
            s, n, d = self.frac
            if not n:
                raise DivisionByZero("inverse of the zero series")
            v = polyring.valuation(field, n)
            n2 = n[v:]
            return _from_frac_raw(field, -(s + v), d, n2, self.var)
        v = self.valuation()  # raises when not certifiable
        lead = self.coeffs[v]
        n_rel = self.prec - v
        dense = [self.coeffs.get(v + i, field.zero) for i in range(n_rel)]
        from . import kernels

        if field.kind == "Fp":
            inv = kernels.series_inv_mod(dense, field.p, n_rel)
        else:
            inv = kernels.series_inv_obj(dense, n_rel, field.one)
        out_prec = self.prec - 2 * v
        coeffs = {}
        for i, c in enumerate(inv):
            e = i - v
            if e < out_prec and not field.is_zero(c):
                coeffs[e] = c
        return LaurentSeries(field, coeffs, out_prec, self.var)

    def __truediv__(self, other):
        return self * other.inverse()

    def power(self, n):
        if n == 0:
            return LaurentSeries.one(self.field, self.var)
        base = self if n > 0 else self.inverse()
        n = abs(n)
        r = None
        while n:
            if n & 1:
                r = base if r is None else r * base
            n >>= 1
            if n:
                base = base * base
        return r

    def truncate(self, prec):
        """Forget coefficients at and above prec (a weaker-precision view)."""
        if self.prec is not None and self.prec <= prec:
            return self
        window = _window_dict(self, prec)
        return LaurentSeries(self.field, window, prec, self.var)

    # ----- comparisons and display ----------------------------------------

    def eq_to_precision(self, other):
        """Equality on all coefficients below the shared certified bound."""
        self._check_compat(other)
        if self.is_exact and other.is_exact:
            diff = self - other
            return diff.is_zero()
        prec = min(p for p in (self.prec, other.prec) if p is not None)
        return _window_dict(self, prec) == _window_dict(other, prec)

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        if self.is_exact and other.is_exact:
            return (self - other).is_zero()
        return (
            self.prec == other.prec
            and _window_dict(self, self.prec) == _window_dict(other, other.prec)
        )

    def __repr__(self):
        parts = []
        show = self.coeffs
        if self.is_exact and self.frac is not None:
            hi = (self._cache_hi if self._cache_hi is not None else 0)
            lo = self.frac[0]
            if hi <= lo:
                self._expand_to(lo + 6)
            show = self.coeffs
        for e in sorted(show):
            c = show[e]
            if e == 0:
                parts.append("%s" % (c,))
            elif e == 1:
                parts.append("%s*%s" % (c, self.var))
            else:
                parts.append("%s*%s^%d" % (c, self.var, e))
        body = " + ".join(parts) if parts else "0"
        if self.prec is not None:
            return "%s + O(%s^%d)" % (body, self.var, self.prec)
        if self.frac is not None and len(self.frac[2]) > 1:
            return "%s + ... (exact)" % body
        return body


def _from_frac_raw(field, shift, num, den, var):
    if not num:
        return LaurentSeries.zero(field, var)
    v = polyring.valuation(field, num)
    num = num[v:]
    g = polyring.gcd(field, num, den)
    if len(g) > 1:
        num, _ = polyring.divmod_poly(field, num, g)
        den, _ = polyring.divmod_poly(field, den, g)
    return LaurentSeries(field, {}, None, var, frac=(shift + v, num, den))


def _window_dict(s, prec):
    """All (certified) nonzero coefficients with exponent < prec."""
    if s.is_exact and s.frac is not None:
        s._expand_to(prec)
        return {e: c for e, c in s.coeffs.items() if e < prec}
    if s.prec is not None and s.prec < prec:
        raise InsufficientPrecision(
            "window up to %d exceeds precision O(%s^%d)" % (prec, s.var, s.prec)
        )
    return {e: c for e, c in s.coeffs.items() if e < prec}


_TERM_RE = re.compile(r"\s*([+-])?\s*([^+-]+(?:[eE][+-]?\d+)?)")


def parse_series(field, text, var="u"):
    """Parse a series literal: sum of terms ``c*u^e`` with an optional
    ``O(u^N)`` precision marker; without the marker the result is exact.

    Examples: ``"1 - u + 3/2*u^2 + O(u^5)"``, ``"u^-2 + 1"``.
    """
    text = text.strip()
    prec = None
    m = re.search(r"O\(\s*%s\s*(?:\^\s*(-?\d+))?\s*\)\s*$" % re.escape(var), text)
    if m:
        prec = int(m.group(1)) if m.group(1) is not None else 1
        text = text[: m.start()].rstrip()
        text = text.rstrip("+").rstrip()
    coeffs = {}
    if text in ("", "0"):
        return LaurentSeries.from_dict(field, {}, prec, var)
    pos = 0
    sign = 1
    token = ""
    pieces = []
    for chunk in re.split(r"(?<![\^eE/*])(?=[+-])", text.replace(" ", "")):
        if chunk in ("", "+"):
            continue
        pieces.append(chunk)
    for piece in pieces:
        sign = 1
        if piece.startswith("+"):
            piece = piece[1:]
        elif piece.startswith("-"):
            sign = -1
            piece = piece[1:]
        if not piece:
            raise ValueError("dangling sign in series literal")
        e, c = _parse_term(field, piece, var)
        if sign < 0:
            c = field.neg(c)
        coeffs[e] = field.add(coeffs.get(e, field.zero), c)
    return LaurentSeries.from_dict(field, coeffs, prec, var)


def _parse_term(field, piece, var):
    if var in piece:
        head, _, tail = piece.partition(var)
        head = head.rstrip("*")
        coeff = field.one if head == "" else field.parse(head)
        if tail == "":
            return 1, coeff
        if not tail.startswith("^"):
            raise ValueError("bad term %r" % piece)
        return int(tail[1:]), coeff
    return 0, field.parse(piece)
