"""Truncated Laurent series in X and bivariate power series in T, U.

A :class:`LaurentSeries` stores its coefficients from the valuation up to an
exclusive precision bound, ``c_val X^val + ... + c_{prec-1} X^{prec-1}``,
with everything from ``X^prec`` on unknown. Every operation computes the
precision it can actually guarantee. A series that vanishes to its
precision is a distinct state (``val == prec``); asking for its valuation
raises :class:`~wildjet.errors.PrecisionExhausted`.

Coefficients are integer codes of a :class:`~wildjet.field.GF`; use
:meth:`LaurentSeries.coefficient` for :class:`~wildjet.field.FieldElement`
values.
"""
from __future__ import annotations

import re
from math import gcd

from . import kernels
from .errors import PrecisionExhausted
from .field import GF, FieldElement, _polymod

DEFAULT_PRECISION = 256


# -- coefficient-vector arithmetic over F_{p^e} -----------------------------

def _split(F: GF, a):
    p = F.p
    comps = [[0] * len(a) for _ in range(F.e)]
    for k, c in enumerate(a):
        s = 0
        while c:
            comps[s][k] = c % p
            c //= p
            s += 1
    return comps


def _join(F: GF, comps, n):
    p = F.p
    out = [0] * n
    scale = 1
    for comp in comps:
        if scale == 1:
            out = list(comp)
        else:
            for k in range(n):
                if comp[k]:
                    out[k] += comp[k] * scale
        scale *= p
    return out


def mul_codes(F: GF, a, b, n):
    """First ``n`` coefficients of the product of two code vectors."""
    if F.e == 1:
        return kernels.mul_trunc(a, b, n, F.p)
    p, e, m = F.p, F.e, F.modulus
    A, B = _split(F, a[:n]), _split(F, b[:n])
    acc = [[0] * n for _ in range(2 * e - 1)]
    for s in range(e):
        if not any(A[s]):
            continue
        for t in range(e):
            if not any(B[t]):
                continue
            prod = kernels.mul_trunc(A[s], B[t], n, p)
            row = acc[s + t]
            for k in range(n):
                row[k] += prod[k]
    # reduce powers of the generator with y^e = -(m_0 + ... + m_{e-1} y^{e-1})
    for d in range(2 * e - 2, e - 1, -1):
        top = acc[d]
        for i in range(e):
            if m[i]:
                row = acc[d - e + i]
                for k in range(n):
                    row[k] -= m[i] * top[k]
    return _join(F, [[x % p for x in acc[s]] for s in range(e)], n)


def inv_codes(F: GF, a, n):
    """First ``n`` coefficients of ``1/a`` (``a[0]`` nonzero)."""
    if F.e == 1:
        return kernels.inv_trunc(a, n, F.p)
    b = [F.inv(a[0])]
    k = 1
    while k < n:
        k = min(2 * k, n)
        ab = mul_codes(F, a, b, k)
        corr = [F.neg(c) for c in ab]
        corr[0] = F.add(corr[0], 2 % F.p)
        b = mul_codes(F, b, corr, k)
    return b


def add_codes(F: GF, a, b):
    if F.e == 1:
        p = F.p
        return [(x + y) % p for x, y in zip(a, b)]
    return [F.add(x, y) for x, y in zip(a, b)]


def scale_codes(F: GF, c, a):
    if F.e == 1:
        p = F.p
        return [c * x % p for x in a]
    return [F.mul(c, x) for x in a]


class LaurentSeries:
    __slots__ = ("field", "val", "coeffs", "prec")

    def __init__(self, field: GF, val: int, coeffs, prec: int):
        coeffs = list(coeffs)[: max(prec - val, 0)]
        coeffs.extend([0] * (prec - val - len(coeffs)))
        start = 0
        while start < len(coeffs) and coeffs[start] == 0:
            start += 1
        if start == len(coeffs):
            val, coeffs = prec, ()
        else:
            val, coeffs = val + start, tuple(coeffs[start:])
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "val", val)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "prec", prec)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentSeries is immutable")

    def __reduce__(self):
        return (LaurentSeries, (self.field, self.val, self.coeffs, self.prec))

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, F: GF, prec: int = DEFAULT_PRECISION):
        return cls(F, prec, (), prec)

    @classmethod
    def monomial(cls, F: GF, coeff, exponent: int, prec: int = DEFAULT_PRECISION):
        c = F.element(coeff).code
        return cls(F, exponent, [c], prec)

    @classmethod
    def one(cls, F: GF, prec: int = DEFAULT_PRECISION):
        return cls.monomial(F, 1, 0, prec)

    @classmethod
    def gen(cls, F: GF, prec: int = DEFAULT_PRECISION):
        return cls.monomial(F, 1, 1, prec)

    @classmethod
    def from_terms(cls, F: GF, terms, prec: int = DEFAULT_PRECISION):
        """Build from ``{exponent: coefficient}``; terms at or beyond ``prec`` are dropped."""
        terms = {k: F.element(v).code for k, v in dict(terms).items()}
        terms = {k: v for k, v in terms.items() if v and k < prec}
        if not terms:
            return cls.zero(F, prec)
        lo = min(terms)
        coeffs = [0] * (prec - lo)
        for k, v in terms.items():
            coeffs[k - lo] = v
        return cls(F, lo, coeffs, prec)

    @classmethod
    def from_list(cls, F: GF, coeffs, val: int = 0, prec: int | None = None):
        coeffs = [F.element(c).code for c in coeffs]
        return cls(F, val, coeffs, val + len(coeffs) if prec is None else prec)

    # -- inspection --------------------------------------------------------

    @property
    def relprec(self) -> int:
        return self.prec - self.val

    def is_zero(self) -> bool:
        """True when the series vanishes to its precision."""
        return not self.coeffs

    def valuation(self) -> int:
        if not self.coeffs:
            raise PrecisionExhausted(f"series is zero to precision O(X^{self.prec})")
        return self.val

    def coefficient(self, n: int) -> FieldElement:
        if n >= self.prec:
            raise PrecisionExhausted(f"coefficient of X^{n} is beyond precision {self.prec}")
        if n < self.val:
            return FieldElement(self.field, 0)
        return FieldElement(self.field, self.coeffs[n - self.val])

    def code(self, n: int) -> int:
        if n >= self.prec:
            raise PrecisionExhausted(f"coefficient of X^{n} is beyond precision {self.prec}")
        return self.coeffs[n - self.val] if n >= self.val else 0

    def leading_coefficient(self) -> FieldElement:
        self.valuation()
        return FieldElement(self.field, self.coeffs[0])

    def terms(self):
        """Nonzero ``(exponent, code)`` pairs in increasing order."""
        return [(self.val + i, c) for i, c in enumerate(self.coeffs) if c]

    def constant_term(self) -> FieldElement:
        return self.coefficient(0)

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (self.field is other.field and self.val == other.val
                and self.prec == other.prec and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.val, self.prec, self.coeffs))

    def agrees_with(self, other: "LaurentSeries") -> bool:
        """Equality of all coefficients both series know."""
        n = min(self.prec, other.prec)
        return self.truncate(n) == other.truncate(n)

    def __repr__(self):
        return f"LaurentSeries({format_series(self)!r})"

    def __str__(self):
        return format_series(self)

    # -- arithmetic --------------------------------------------------------

    def truncate(self, prec: int) -> "LaurentSeries":
        if prec >= self.prec:
            return self
        return LaurentSeries(self.field, min(self.val, prec), self.coeffs[: max(prec - self.val, 0)], prec)

    def _coerce(self, other):
        if isinstance(other, LaurentSeries):
            if other.field is not self.field:
                raise ValueError("series over different fields")
            return other
        if isinstance(other, (int, FieldElement)):
            return LaurentSeries.monomial(self.field, other, 0, max(self.prec, 0))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        F = self.field
        prec = min(self.prec, other.prec)
        lo = min(self.val, other.val, prec)
        n = prec - lo
        a = [0] * n
        b = [0] * n
        for src, dst in ((self, a), (other, b)):
            off = src.val - lo
            for i, c in enumerate(src.coeffs[: max(n - off, 0)]):
                dst[off + i] = c
        return LaurentSeries(F, lo, add_codes(F, a, b), prec)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return LaurentSeries(F, self.val, [F.neg(c) for c in self.coeffs], self.prec)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            c = self.field.element(other).code
            return LaurentSeries(self.field, self.val, scale_codes(self.field, c, self.coeffs), self.prec)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        if other.field is not self.field:
            raise ValueError("series over different fields")
        val = self.val + other.val
        prec = min(self.prec + other.val, other.prec + self.val)
        if not self.coeffs or not other.coeffs:
            return LaurentSeries.zero(self.field, prec)
        n = prec - val
        return LaurentSeries(self.field, val, mul_codes(self.field, self.coeffs, other.coeffs, n), prec)

    __rmul__ = __mul__

    def shift(self, k: int) -> "LaurentSeries":
        """Multiply by the exact monomial ``X^k``."""
        return LaurentSeries(self.field, self.val + k, self.coeffs, self.prec + k)

    def invert(self) -> "LaurentSeries":
        v = self.valuation()
        n = self.relprec
        return LaurentSeries(self.field, -v, inv_codes(self.field, self.coeffs, n), -v + n)

    def __truediv__(self, other):
        if isinstance(other, (int, FieldElement)):
            return self * self.field.element(other).inverse()
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return self * other.invert()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.invert()

    def __pow__(self, k: int) -> "LaurentSeries":
        if k < 0:
            return self.invert() ** (-k)
        if k == 0:
            return LaurentSeries.one(self.field, self.relprec if self.coeffs else self.prec)
        result = None
        base = self
        while k:
            if k & 1:
                result = base if result is None else result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c) -> "LaurentSeries":
        return self * self.field.element(c)


def valuation(s: LaurentSeries) -> int:
    return s.valuation()


def invert(s: LaurentSeries) -> LaurentSeries:
    return s.invert()


def compose(s: LaurentSeries, inner: LaurentSeries) -> LaurentSeries:
    """``s(inner(X))`` for ``inner`` of positive valuation."""
    F = s.field
    if inner.coeffs and inner.val < 1:
        raise ValueError("inner series must have positive valuation")
    w = inner.val
    if not s.coeffs:
        # s = O(X^P): the composite is O(X^(P*w)) when P >= 0
        if s.prec < 0:
            raise PrecisionExhausted("cannot compose a zero series of negative precision")
        return LaurentSeries.zero(F, s.prec * w)
    n = s.relprec
    if not inner.coeffs:
        # inner is O(X^P): only the constant term survives
        if s.val < 0:
            raise PrecisionExhausted("inner series is zero to precision")
        if s.val > 0:
            return LaurentSeries.zero(F, s.val * inner.prec)
        return LaurentSeries(F, 0, [s.coeffs[0]], inner.prec)
    n_inner = inner.relprec
    target = min(n * w, w + n_inner)
    inner_t = inner.truncate(target)
    acc = LaurentSeries(F, 0, [s.coeffs[-1]], target)
    for c in reversed(s.coeffs[:-1]):
        acc = (acc * inner_t).truncate(target) + LaurentSeries(F, 0, [c], target)
    if s.val == 0:
        return acc
    return acc * inner ** s.val


def reparameterize(s: LaurentSeries, d: int) -> LaurentSeries:
    """``s(Z^d)``: exponents and precision multiplied by ``d``."""
    if d < 1:
        raise ValueError("reparameterization degree must be >= 1")
    if d == 1:
        return s
    coeffs = [0] * (len(s.coeffs) * d)
    for i, c in enumerate(s.coeffs):
        coeffs[i * d] = c
    return LaurentSeries(s.field, s.val * d, coeffs, s.prec * d)


def lth_root_series(s: LaurentSeries, l: int) -> LaurentSeries:
    """An ``l``-th root of ``s`` whose leading coefficient is the field's chosen root."""
    F = s.field
    if gcd(l, F.p) != 1:
        raise ValueError(f"root degree {l} must be prime to the characteristic {F.p}")
    v = s.valuation()
    if v % l:
        raise ValueError(f"valuation {v} is not divisible by {l}")
    lead = s.coeffs[0]
    r0 = F.lth_root(lead, l)  # NoRoot propagates
    n = s.relprec
    unit = LaurentSeries(F, 0, scale_codes(F, F.inv(lead), s.coeffs), n)
    inv_l = F.inv(F.scalar(l))
    y = [1]
    k = 1
    while k < n:
        k = min(2 * k, n)
        Y = LaurentSeries(F, 0, y, k)
        # y <- ((l-1) y + unit * y^(1-l)) / l
        yl1 = Y ** (l - 1)
        step = Y * F.scalar(l - 1) + unit.truncate(k) * yl1.invert()
        y = list((step * FieldElement(F, inv_l)).truncate(k).coeffs)
        y += [0] * (k - len(y))
    root = LaurentSeries(F, 0, y, n)
    return root.scale(FieldElement(F, r0)).shift(v // l)


# -- bivariate series ---------------------------------------------------------

class BiSeries:
    """Power series in T, U truncated by total degree ``prec``.

    ``coeffs`` maps ``(i, j)`` to the nonzero code of ``T^i U^j``.
    """

    __slots__ = ("field", "coeffs", "prec")

    def __init__(self, field: GF, coeffs, prec: int = DEFAULT_PRECISION):
        clean = {}
        for (i, j), c in dict(coeffs).items():
            if i < 0 or j < 0:
                raise ValueError("bivariate series exponents must be nonnegative")
            c = field.element(c).code if not isinstance(c, int) else c
            if c and i + j < prec:
                clean[(i, j)] = c
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", dict(sorted(clean.items())))
        object.__setattr__(self, "prec", prec)

    def __setattr__(self, name, value):
        raise AttributeError("BiSeries is immutable")

    def __reduce__(self):
        return (BiSeries, (self.field, self.coeffs, self.prec))

    @classmethod
    def constant(cls, F: GF, c=1, prec: int = DEFAULT_PRECISION):
        return cls(F, {(0, 0): F.element(c).code}, prec)

    def constant_term(self) -> FieldElement:
        return FieldElement(self.field, self.coeffs.get((0, 0), 0))

    def is_unit(self) -> bool:
        return (0, 0) in self.coeffs

    def __eq__(self, other):
        if not isinstance(other, BiSeries):
            return NotImplemented
        return self.field is other.field and self.prec == other.prec and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.prec, tuple(self.coeffs.items())))

    def __add__(self, other):
        F = self.field
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = F.add(out.get(k, 0), c)
        return BiSeries(F, out, min(self.prec, other.prec))

    def __neg__(self):
        return BiSeries(self.field, {k: self.field.neg(c) for k, c in self.coeffs.items()}, self.prec)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        F = self.field
        if isinstance(other, (int, FieldElement)):
            c = F.element(other).code
            return BiSeries(F, {k: F.mul(c, v) for k, v in self.coeffs.items()}, self.prec)
        # (T,U)-adic orders bound the error terms of each factor
        ord_a = min((i + j for i, j in self.coeffs), default=self.prec)
        ord_b = min((i + j for i, j in other.coeffs), default=other.prec)
        prec = min(self.prec + ord_b, other.prec + ord_a)
        out = {}
        for (i, j), a in self.coeffs.items():
            for (k, l), b in other.coeffs.items():
                if i + j + k + l < prec:
                    key = (i + k, j + l)
                    out[key] = F.add(out.get(key, 0), F.mul(a, b))
        return BiSeries(F, out, prec)

    __rmul__ = __mul__

    def __repr__(self):
        return f"BiSeries({format_biseries(self)!r})"

    def __str__(self):
        return format_biseries(self)


def eval_biseries(f: BiSeries, t: LaurentSeries, u: LaurentSeries) -> LaurentSeries:
    """``sum f_ij t^i u^j`` with the precision the inputs guarantee."""
    F = f.field
    for name, s in (("t", t), ("u", u)):
        if s.coeffs and s.val < 1:
            raise ValueError(f"{name} must have positive valuation")
    # every omitted monomial has total degree >= f.prec, hence X-adic order >= mu * f.prec
    mu = min(t.val, u.val)
    target = mu * f.prec
    if not f.coeffs:
        return LaurentSeries.zero(F, target)
    max_i = max(i for i, _ in f.coeffs)
    max_j = max(j for _, j in f.coeffs)
    t_pows = [LaurentSeries.one(F, target)]
    for _ in range(max_i):
        t_pows.append((t_pows[-1] * t).truncate(target))
    u_pows = [LaurentSeries.one(F, target)]
    for _ in range(max_j):
        u_pows.append((u_pows[-1] * u).truncate(target))
    rows: dict[int, LaurentSeries] = {}
    for (i, j), c in f.coeffs.items():
        term = u_pows[j] * FieldElement(F, c)
        rows[i] = term if i not in rows else rows[i] + term
    result = LaurentSeries.zero(F, target)
    for i, g in rows.items():
        result = result + (t_pows[i] * g if i else g)
    return result.truncate(target)


# -- literals -------------------------------------------------------------------
#
# Grammar (whitespace ignored):
#
#   literal  := expr [ '+' 'O(' X '^' INT ')' ] | 'O(' X '^' INT ')'         univariate
#             | expr [ '+' 'O(' T ',' U ')' '^' INT ] | 'O(' T ',' U ')' '^' INT   bivariate
#   expr     := ['-'] term (('+' | '-') term)*
#   term     := factor ('*' factor)*
#   factor   := atom ['^' ['-'] INT]
#   atom     := INT | 'X' | 'T' | 'U' | 'a' | '(' expr ')'
#
# Integers are reduced mod p. ``a`` is the root of the field's modulus (the
# polynomial-basis generator of F_{p^e}); it may appear only in coefficients.
# Negative exponents are allowed on X alone. Without an O-term the caller's
# default precision applies.

_TOKEN = re.compile(r"\s*(?:(\d+)|([XTUa])|(\^)|(\*)|(\+)|(-)|(\()|(\)))")
_O_UNI = re.compile(r"(?:^|\+)\s*O\(\s*X\s*\^\s*(-?\d+)\s*\)\s*$")
_O_UNI1 = re.compile(r"(?:^|\+)\s*O\(\s*X\s*\)\s*$")
_O_BI = re.compile(r"(?:^|\+)\s*O\(\s*T\s*,\s*U\s*\)\s*\^\s*(\d+)\s*$")


class _Parser:
    # polynomials are dicts {(x, t, u, a): int}
    def __init__(self, text, variables):
        self.tokens = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ValueError(f"unexpected character at {pos} in {text!r}")
            self.tokens.append(next(g for g in m.groups() if g is not None))
            pos = m.end()
            while pos < len(text) and text[pos].isspace():
                pos += 1
        self.i = 0
        self.variables = variables

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise ValueError(f"expected {expected!r}, got {tok!r}")
        self.i += 1
        return tok

    def parse(self):
        if not self.tokens:
            raise ValueError("empty literal")
        poly = self.expr()
        if self.peek() is not None:
            raise ValueError(f"trailing token {self.peek()!r}")
        return poly

    def expr(self):
        sign = 1
        if self.peek() == "-":
            self.take()
            sign = -1
        acc = _pscale(self.term(), sign)
        while self.peek() in ("+", "-"):
            op = self.take()
            acc = _padd(acc, _pscale(self.term(), 1 if op == "+" else -1))
        return acc

    def term(self):
        acc = self.factor()
        while self.peek() == "*":
            self.take()
            acc = _pmul(acc, self.factor())
        return acc

    def factor(self):
        base, is_var = self.atom()
        if self.peek() == "^":
            self.take()
            neg = False
            if self.peek() == "-":
                self.take()
                neg = True
            n = int(self.take())
            if neg:
                if not (is_var and next(iter(base))[0] == 1):
                    raise ValueError("negative exponents are allowed only on X")
                return {(-n, 0, 0, 0): 1}
            out = {(0, 0, 0, 0): 1}
            for _ in range(n):
                out = _pmul(out, base)
            return out
        return base

    def atom(self):
        tok = self.take()
        if tok.isdigit():
            return {(0, 0, 0, 0): int(tok)}, False
        if tok in "XTUa":
            if tok != "a" and tok not in self.variables:
                raise ValueError(f"variable {tok} not allowed here")
            key = {"X": (1, 0, 0, 0), "T": (0, 1, 0, 0), "U": (0, 0, 1, 0), "a": (0, 0, 0, 1)}[tok]
            return {key: 1}, tok != "a"
        if tok == "(":
            inner = self.expr()
            self.take(")")
            return inner, False
        raise ValueError(f"unexpected token {tok!r}")


def _padd(a, b):
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + v
    return {k: v for k, v in out.items() if v}


def _pscale(a, s):
    return {k: s * v for k, v in a.items()}


def _pmul(a, b):
    out = {}
    for k1, v1 in a.items():
        for k2, v2 in b.items():
            k = tuple(x + y for x, y in zip(k1, k2))
            out[k] = out.get(k, 0) + v1 * v2
    return {k: v for k, v in out.items() if v}


def _collect(F: GF, poly, nvars):
    """Group generator powers into field codes per monomial."""
    groups: dict[tuple, list[int]] = {}
    for (x, t, u, a), c in poly.items():
        key = (x, t, u)
        digits = groups.setdefault(key, [])
        digits.extend([0] * (a + 1 - len(digits)))
        digits[a] += c
    out = {}
    m = list(F.modulus)
    for key, digits in groups.items():
        red = _polymod([d % F.p for d in digits], m, F.p)
        code = F._code(red + [0] * (F.e - len(red)))
        if code:
            out[key] = code
    return out


def parse_series(text: str, F: GF, prec: int = DEFAULT_PRECISION) -> LaurentSeries:
    """Parse a univariate literal such as ``"2*X^-1 + 1 + X^3"``."""
    m = _O_UNI.search(text) or _O_UNI1.search(text)
    if m:
        prec = int(m.group(1)) if m.re is _O_UNI else 1
        text = text[: m.start()]
    poly = _Parser(text, "X").parse() if (text.strip() or not m) else {}
    terms = {key[0]: code for key, code in _collect(F, poly, 1).items() if key[0] < prec}
    if not terms:
        return LaurentSeries.zero(F, prec)
    lo = min(terms)
    coeffs = [0] * (prec - lo)
    for k, c in terms.items():
        coeffs[k - lo] = c
    return LaurentSeries(F, lo, coeffs, prec)


def parse_biseries(text: str, F: GF, prec: int = DEFAULT_PRECISION) -> BiSeries:
    """Parse a bivariate literal such as ``"1 + T + 2*T*U^2"``."""
    m = _O_BI.search(text)
    if m:
        prec = int(m.group(1))
        text = text[: m.start()]
    poly = _Parser(text, "TU").parse() if (text.strip() or not m) else {}
    return BiSeries(F, {(k[1], k[2]): c for k, c in _collect(F, poly, 2).items()}, prec)


def _format_term(F: GF, code: int, mono: str) -> str:
    c = F.format_code(code)
    if not mono:
        return c
    return mono if c == "1" else f"{c}*{mono}"


def format_series(s: LaurentSeries, with_precision: bool = True) -> str:
    F = s.field
    parts = []
    for k, c in s.terms():
        mono = "" if k == 0 else ("X" if k == 1 else f"X^{k}")
        parts.append(_format_term(F, c, mono))
    body = " + ".join(parts) if parts else "0"
    if with_precision:
        return f"{body} + O(X^{s.prec})" if parts else f"O(X^{s.prec})"
    return body


def format_biseries(f: BiSeries, with_precision: bool = True) -> str:
    F = f.field
    parts = []
    for (i, j), c in sorted(f.coeffs.items(), key=lambda kv: (kv[0][0] + kv[0][1], kv[0])):
        mono = "*".join(x for x in (
            "" if i == 0 else ("T" if i == 1 else f"T^{i}"),
            "" if j == 0 else ("U" if j == 1 else f"U^{j}")) if x)
        parts.append(_format_term(F, c, mono))
    body = " + ".join(parts) if parts else "0"
    if with_precision:
        return f"{body} + O(T,U)^{f.prec}" if parts else f"O(T,U)^{f.prec}"
    return body
