"""Elements of two-dimensional local fields K = k'((u))((t)).

An element is a t-series whose coefficients are u-Laurent series.  Storage
is t-outer, u-inner, mirroring the field tower.  Like the one-variable
layer there are two backends: an exact one (t-rational function with
u-rational-function coefficients) and a truncated one with an explicit
t-precision, with per-coefficient u-precision tracked by the coefficient
series themselves.

A t-coefficient that is zero modulo its u-precision but not certifiably
zero stays in the expansion as an "uncertain" entry; valuation queries that
would have to guess across such an entry raise instead.
"""

import re

from . import polyring
from .config import default_precision
from .errors import (
    BranchMismatch,
    DivisionByZero,
    InsufficientPrecision,
    NotIntegral,
    ZeroElement,
)
from .ratfunc import RatElem, RationalFunctionField
from .series import LaurentSeries, parse_series


class Local2DField:
    """Descriptor of K = k'((u))((t)) over the ground field k.

    Two descriptors compare equal iff all structure matches; places are
    identified structurally.
    """

    def __init__(self, residue_base, extension_degree=1, uniformizers=("u", "t"), label=""):
        if extension_degree < 1:
            raise ValueError("extension degree must be >= 1")
        self.residue_base = residue_base
        self.extension_degree = extension_degree
        self.u_name, self.t_name = uniformizers
        self.label = label
        self.ratfield = RationalFunctionField(residue_base, self.u_name)

    def __eq__(self, other):
        return (
            isinstance(other, Local2DField)
            and other.residue_base == self.residue_base
            and other.extension_degree == self.extension_degree
            and (other.u_name, other.t_name) == (self.u_name, self.t_name)
            and other.label == self.label
        )

    def __hash__(self):
        return hash(
            (self.residue_base, self.extension_degree, self.u_name, self.t_name, self.label)
        )

    def __repr__(self):
        tag = " %s" % self.label if self.label else ""
        return "%r((%s))((%s))%s" % (self.residue_base, self.u_name, self.t_name, tag)

    # -- constructors ------------------------------------------------------

    def zero(self):
        return Local2DElement(self, {}, None, frac=(0, [], [self.ratfield.one]))

    def one(self):
        return self.monomial(0, 0)

    def monomial(self, t_exp, u_exp, coeff=None):
        c = self.residue_base.one if coeff is None else coeff
        if self.residue_base.is_zero(c):
            return self.zero()
        rf = self.ratfield
        num = [rf.from_poly_dict({max(u_exp, 0): c})]
        den = [rf.from_poly_dict({max(-u_exp, 0): self.residue_base.one})]
        return Local2DElement(self, {}, None, frac=(t_exp, num, den))

    def from_u_series(self, series, t_exp=0):
        """The element series * t^t_exp."""
        if series.is_exact and series.frac is not None:
            shift, num, den = series.frac
            rf = self.ratfield
            u_num = {e + shift if shift >= 0 else e: c for e, c in enumerate(num)}
            nume = RatElem(
                rf,
                polyring.shift(self.residue_base, num, max(shift, 0)),
                polyring.shift(self.residue_base, den, max(-shift, 0)),
            )
            return Local2DElement(self, {}, None, frac=(t_exp, [nume], [rf.one]))
        return Local2DElement(self, {t_exp: series}, t_exp + 1)

    def from_tu_dict(self, data, t_prec=None, u_prec=None):
        """Element from {(t_exp, u_exp): coeff}; exact when no precision given."""
        base = self.residue_base
        per_t = {}
        for (te, ue), c in data.items():
            per_t.setdefault(te, {})[ue] = c
        if t_prec is None and u_prec is None:
            rf = self.ratfield
            if not per_t:
                return self.zero()
            shift = min(per_t)
            num = [rf.zero] * (max(per_t) - shift + 1)
            for te, ud in per_t.items():
                neg = -min(min(ud), 0)
                num[te - shift] = RatElem(
                    rf,
                    polyring.from_dict(base, {e + neg: c for e, c in ud.items()}),
                    polyring.from_dict(base, {neg: base.one}),
                )
            num = _strip_t(rf, num)
            return Local2DElement(self, {}, None, frac=(shift, num, [rf.one]))
        coeffs = {
            te: LaurentSeries.from_dict(base, ud, u_prec, var=self.u_name)
            for te, ud in per_t.items()
        }
        if t_prec is None:
            t_prec = (max(per_t) + 1) if per_t else 1
        coeffs = {te: s for te, s in coeffs.items() if te < t_prec}
        return Local2DElement(self, coeffs, t_prec)

    def parse(self, text):
        return parse_local2d(self, text)


def _strip_t(rf, coeffs):
    n = len(coeffs)
    while n and rf.is_zero(coeffs[n - 1]):
        n -= 1
    lo = 0
    return list(coeffs[:n])


class Local2DElement:
    __slots__ = ("field", "coeffs", "t_prec", "frac", "_cache_hi")

    def __init__(self, field, coeffs, t_prec, frac=None):
        self.field = field
        self.t_prec = t_prec
        self.frac = frac
        self._cache_hi = None
        clean = {}
        for e, s in coeffs.items():
            if s.is_exact:
                try:
                    if s.is_zero():
                        continue
                except InsufficientPrecision:
                    pass
            clean[e] = s
        self.coeffs = clean
        if t_prec is not None:
            for e in clean:
                if e >= t_prec:
                    raise ValueError("stored t-exponent %d >= t-precision %d" % (e, t_prec))

    # -- backend -----------------------------------------------------------

    @property
    def is_exact(self):
        return self.t_prec is None

    def _expand_to(self, hi):
        if self.frac is None:
            raise AssertionError("truncated element has no expansion backend")
        if self._cache_hi is not None and self._cache_hi >= hi:
            return
        shift, num, den = self.frac
        n = hi - shift
        if n <= 0 or not num:
            self._cache_hi = hi
            return
        rf = self.field.ratfield
        from . import kernels

        if len(den) == 1:
            inv = [rf.inv(den[0])]
        else:
            inv = kernels.series_inv_obj(den, n, rf.one)
        prod = kernels.polymul_obj(num, inv, n, rf.zero)
        coeffs = {}
        for i, c in enumerate(prod):
            if not rf.is_zero(c):
                coeffs[i + shift] = c.to_series(self.field.u_name)
        self.coeffs = coeffs
        self._cache_hi = hi

    def coefficient_series(self, t_exp):
        """The u-series coefficient of t^t_exp, certified."""
        if self.t_prec is not None and t_exp >= self.t_prec:
            raise InsufficientPrecision(
                "t-coefficient %d requested at precision O(%s^%d)"
                % (t_exp, self.field.t_name, self.t_prec)
            )
        if self.is_exact:
            self._expand_to(t_exp + 1)
        s = self.coeffs.get(t_exp)
        if s is None:
            return LaurentSeries.zero(self.field.residue_base, self.field.u_name)
        return s

    # -- valuations ---------------------------------------------------------

    def t_valuation(self):
        """nu_K: the t-adic valuation, certified."""
        if self.is_exact:
            if not self.frac[1]:
                raise ZeroElement("valuation of zero")
            return self.frac[0]
        for e in sorted(self.coeffs):
            s = self.coeffs[e]
            if s.coeffs:
                return e
            if not s.is_exact:
                raise InsufficientPrecision(
                    "leading t-coefficient at %s^%d is 0 mod O(%s^%d); "
                    "cannot certify the t-valuation"
                    % (self.field.t_name, e, self.field.u_name, s.prec)
                )
        raise InsufficientPrecision(
            "element is 0 mod O(%s^%d)" % (self.field.t_name, self.t_prec)
        )

    def t_valuation_lower_bound(self):
        if self.is_exact:
            if not self.frac[1]:
                return None
            return self.frac[0]
        return min(self.coeffs) if self.coeffs else self.t_prec

    def leading_series(self):
        return self.coefficient_series(self.t_valuation())

    def rank2_valuation(self):
        """(nu_K, nu of the leading u-series): the lexicographic rank-2
        valuation."""
        v = self.t_valuation()
        return (v, self.leading_series().valuation())

    def residue(self):
        """Image in the residue field k'((u)); requires nu_K >= 0."""
        try:
            v = self.t_valuation()
        except ZeroElement:
            return LaurentSeries.zero(self.field.residue_base, self.field.u_name)
        if v < 0:
            raise NotIntegral("element has a pole along t (nu_K = %d < 0)" % v)
        return self.coefficient_series(0)

    def is_integral(self):
        try:
            return self.t_valuation() >= 0
        except ZeroElement:
            return True

    def is_unit(self):
        """Unit of O_K: nu_K = 0 and the residue a unit of k'((u))[[u]]-part.

        For the full DVR O_K = k'((u))[[t]] a unit is exactly nu_K = 0."""
        try:
            return self.t_valuation() == 0
        except ZeroElement:
            return False

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other):
        if self.field != other.field:
            raise BranchMismatch(
                "elements of different local fields: %r vs %r" % (self.field, other.field)
            )

    def __add__(self, other):
        if not isinstance(other, Local2DElement):
            return NotImplemented
        self._check(other)
        rf = self.field.ratfield
        if self.is_exact and other.is_exact:
            s1, n1, d1 = self.frac
            s2, n2, d2 = other.frac
            s = min(s1, s2)
            a = polyring.mul(rf, _tshift(rf, n1, s1 - s), d2)
            b = polyring.mul(rf, _tshift(rf, n2, s2 - s), d1)
            return _exact(self.field, s, polyring.add(rf, a, b), polyring.mul(rf, d1, d2))
        prec = min(p for p in (self.t_prec, other.t_prec) if p is not None)
        coeffs = dict(_t_window(self, prec))
        for e, s in _t_window(other, prec).items():
            if e in coeffs:
                coeffs[e] = coeffs[e] + s
            else:
                coeffs[e] = s
        return Local2DElement(self.field, coeffs, prec)

    def __neg__(self):
        coeffs = {e: -s for e, s in self.coeffs.items()}
        frac = None
        if self.frac is not None:
            sh, n, d = self.frac
            frac = (sh, [-c for c in n], d)
        out = Local2DElement(self.field, coeffs, self.t_prec, frac)
        out._cache_hi = self._cache_hi
        return out

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Local2DElement):
            return NotImplemented
        self._check(other)
        rf = self.field.ratfield
        if self.is_exact and other.is_exact:
            s1, n1, d1 = self.frac
            s2, n2, d2 = other.frac
            return _exact(
                self.field, s1 + s2, polyring.mul(rf, n1, n2), polyring.mul(rf, d1, d2)
            )
        va = self.t_valuation_lower_bound()
        vb = other.t_valuation_lower_bound()
        if va is None or vb is None:
            return self.field.zero()
        bounds = []
        if self.t_prec is not None:
            bounds.append(self.t_prec + vb)
        if other.t_prec is not None:
            bounds.append(other.t_prec + va)
        prec = min(bounds)
        wa = _t_window(self, prec - vb)
        wb = _t_window(other, prec - va)
        coeffs = {}
        for e1, c1 in wa.items():
            for e2, c2 in wb.items():
                e = e1 + e2
                if e >= prec:
                    continue
                term = c1 * c2
                if e in coeffs:
                    coeffs[e] = coeffs[e] + term
                else:
                    coeffs[e] = term
        return Local2DElement(self.field, coeffs, prec)

    def inverse(self):
        rf = self.field.ratfield
        if self.is_exact:
            sh, n, d = self.frac
            if not n:
                raise DivisionByZero("inverse of zero element")
            return _exact(self.field, -sh, d, n)
        v = self.t_valuation()
        lead = self.coefficient_series(v)
        n_rel = self.t_prec - v
        lead_inv = lead.inverse()
        # t-adic long division on u-series coefficients
        a = [self.coefficient_series(v + i) for i in range(n_rel)]
        out = [None] * n_rel
        out[0] = lead_inv
        for k in range(1, n_rel):
            acc = None
            for i in range(1, min(k, n_rel - 1) + 1):
                term = a[i] * out[k - i]
                acc = term if acc is None else acc + term
            out[k] = -(lead_inv * acc) if acc is not None else LaurentSeries.zero(
                self.field.residue_base, self.field.u_name
            )
        out_prec = self.t_prec - 2 * v
        coeffs = {}
        for i, s in enumerate(out):
            e = i - v
            if e < out_prec:
                coeffs[e] = s
        return Local2DElement(self.field, coeffs, out_prec)

    def __truediv__(self, other):
        return self * other.inverse()

    def power(self, n):
        if n == 0:
            return self.field.one()
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

    def truncate(self, t_prec, u_prec=None):
        window = _t_window(self, t_prec)
        if u_prec is not None:
            window = {e: s.truncate(u_prec) for e, s in window.items()}
        return Local2DElement(self.field, window, t_prec)

    def eq_to_precision(self, other):
        self._check(other)
        if self.is_exact and other.is_exact:
            diff = self - other
            return not diff.frac[1]
        prec = min(p for p in (self.t_prec, other.t_prec) if p is not None)
        wa, wb = _t_window(self, prec), _t_window(other, prec)
        for e in set(wa) | set(wb):
            a = wa.get(e)
            b = wb.get(e)
            if a is None:
                a = LaurentSeries.zero(self.field.residue_base, self.field.u_name)
            if b is None:
                b = LaurentSeries.zero(self.field.residue_base, self.field.u_name)
            if not a.eq_to_precision(b):
                return False
        return True

    def is_exactly_zero(self):
        if self.is_exact:
            return not self.frac[1]
        return False

    def __repr__(self):
        if self.is_exact:
            self._expand_to(self.frac[0] + 4 if self.frac[1] else 1)
        parts = []
        tn = self.field.t_name
        for e in sorted(self.coeffs):
            s = self.coeffs[e]
            if e == 0:
                parts.append("(%r)" % s)
            elif e == 1:
                parts.append("(%r)*%s" % (s, tn))
            else:
                parts.append("(%r)*%s^%d" % (s, tn, e))
        body = " + ".join(parts) if parts else "0"
        if self.t_prec is not None:
            return "%s + O(%s^%d)" % (body, tn, self.t_prec)
        return body + (" + ..." if self.frac and len(self.frac[2]) > 1 else "")


def _tshift(rf, coeffs, k):
    if not coeffs:
        return []
    return [rf.zero] * k + list(coeffs)


def _exact(field, shift, num, den):
    rf = field.ratfield
    num = list(num)
    den = list(den)
    if not den:
        raise DivisionByZero("zero denominator")
    vd = 0
    while vd < len(den) and rf.is_zero(den[vd]):
        vd += 1
    den = den[vd:]
    vn = 0
    while vn < len(num) and rf.is_zero(num[vn]):
        vn += 1
    num = num[vn:]
    if not num:
        return field.zero()
    return Local2DElement(field, {}, None, frac=(shift + vn - vd, num, den))


def _t_window(x, prec):
    if x.is_exact:
        x._expand_to(prec)
        return {e: s for e, s in x.coeffs.items() if e < prec}
    if x.t_prec < prec:
        raise InsufficientPrecision(
            "t-window up to %d exceeds precision O(%s^%d)"
            % (prec, x.field.t_name, x.t_prec)
        )
    return {e: s for e, s in x.coeffs.items() if e < prec}


# -- public operations (module level, spec surface) --------------------------


def rank2_valuation(f):
    """(nu_K(f), nu of the leading u-series); fails on zero or uncertain."""
    return f.rank2_valuation()


def residue(f):
    """The residue map pi: O_K -> k'((u))."""
    return f.residue()


# -- parsing ------------------------------------------------------------------


def parse_local2d(field, text):
    """Parse an element literal.

    Grammar: polynomial expressions in u, t with coefficients of the base
    field, optional O(t^N) / O(u^N) markers, and exact quotients written
    (P)/(Q).
    """
    text = text.strip()
    t_prec = None
    u_prec = None
    un, tn = field.u_name, field.t_name
    while True:
        m = re.search(
            r"[+\s]*O\(\s*(%s|%s)\s*(?:\^\s*(-?\d+))?\s*\)\s*$" % (re.escape(un), re.escape(tn)),
            text,
        )
        if not m:
            break
        n = int(m.group(2)) if m.group(2) is not None else 1
        if m.group(1) == un:
            u_prec = n
        else:
            t_prec = n
        text = text[: m.start()].rstrip()
    frac_m = re.match(r"^\((.*)\)\s*/\s*\((.*)\)$", text)
    if frac_m:
        if t_prec is not None or u_prec is not None:
            raise ValueError("exact quotient literals do not take O() markers")
        num = _parse_poly2(field, frac_m.group(1))
        den = _parse_poly2(field, frac_m.group(2))
        return _div_dicts(field, num, den)
    data = _parse_poly2(field, text)
    if t_prec is None and u_prec is None:
        return field.from_tu_dict(data)
    return field.from_tu_dict(data, t_prec=t_prec, u_prec=u_prec)


def _div_dicts(field, num, den):
    a = field.from_tu_dict(num)
    b = field.from_tu_dict(den)
    if b.is_exactly_zero():
        raise DivisionByZero("zero denominator in element literal")
    return a * b.inverse()


def _parse_poly2(field, text):
    base = field.residue_base
    un, tn = field.u_name, field.t_name
    text = text.replace(" ", "")
    if text in ("", "0"):
        return {}
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
        te, ue = 0, 0
        coeff = base.one
        saw_coeff = False
        for factor in piece.split("*"):
            if not factor:
                raise ValueError("empty factor in %r" % piece)
            if factor.startswith(un) or factor.startswith(tn):
                name = un if factor.startswith(un) else tn
                rest = factor[len(name):]
                e = 1
                if rest:
                    if not rest.startswith("^"):
                        raise ValueError("bad factor %r" % factor)
                    e = int(rest[1:])
                if name == un:
                    ue += e
                else:
                    te += e
            else:
                coeff = base.mul(coeff, base.parse(factor))
                saw_coeff = True
        c = base.neg(coeff) if sign < 0 else coeff
        key = (te, ue)
        prev = out.get(key, base.zero)
        out[key] = base.add(prev, c)
    return {k: c for k, c in out.items() if not base.is_zero(c)}
