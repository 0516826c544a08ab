"""Exact arithmetic in the finite field F_{p^e}.

Elements are encoded as integers ``c_0 + c_1 p + ... + c_{e-1} p^{e-1}``
where ``c_0 + c_1 a + ... + c_{e-1} a^{e-1}`` is the element in the
polynomial basis over the chosen modulus. The integer code doubles as the
fixed element ordering used whenever a deterministic choice is needed
(e.g. which l-th root to return).

The field is a desk-scale stand-in for an algebraically closed field, so
operations that need a root the field does not contain raise
:class:`~wildjet.errors.NoRoot` instead of extending the field.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from .errors import NoRoot

MAX_CHARACTERISTIC = 17
MAX_ORDER = 1 << 20


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n**0.5) + 1))


def prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# -- polynomials over F_p as coefficient lists, lowest degree first --------

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _polymod(a, m, p):
    a = _trim(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    while len(a) - 1 >= dm:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        a = _trim(a)
    return a


def _has_root_free_factor(m, p):
    """True if ``m`` is irreducible over F_p (brute-force factor search)."""
    deg = len(m) - 1
    for d in range(1, deg // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            if not _polymod(m, list(tail) + [1], p):
                return False
    return True


def first_irreducible(p: int, e: int) -> tuple[int, ...]:
    """Monic irreducible polynomial of degree ``e`` over F_p.

    Candidates are scanned in increasing order of the integer encoding of
    their lower coefficients, so the result is the same on every machine.
    """
    if e == 1:
        return (0, 1)
    for code in range(p**e):
        tail = [(code // p**i) % p for i in range(e)]
        if tail[0] == 0:
            continue
        m = tuple(tail) + (1,)
        if _has_root_free_factor(m, p):
            return m
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


@dataclass(frozen=True)
class FieldParams:
    p: int
    e: int
    modulus: tuple[int, ...]


class GF:
    """The field F_{p^e} with integer-coded elements.

    Instances are cached per ``(p, e)``; construct them with :func:`field`.
    """

    def __init__(self, p: int, e: int = 1):
        if not is_prime(p) or p > MAX_CHARACTERISTIC:
            raise ValueError(f"characteristic must be a prime <= {MAX_CHARACTERISTIC}, got {p}")
        if e < 1:
            raise ValueError("extension degree must be >= 1")
        if p**e > MAX_ORDER:
            raise ValueError(f"field of order {p}^{e} exceeds the desk-scale limit")
        self.p = p
        self.e = e
        self.q = p**e
        self.modulus = first_irreducible(p, e)
        self.params = FieldParams(p, e, self.modulus)
        self._build_tables()

    def __reduce__(self):
        return (field, (self.p, self.e))

    def __repr__(self):
        return f"GF({self.p}^{self.e})" if self.e > 1 else f"GF({self.p})"

    # -- construction ------------------------------------------------------

    def _digits(self, a: int) -> list[int]:
        p = self.p
        return [(a // p**i) % p for i in range(self.e)]

    def _code(self, digits) -> int:
        p = self.p
        return sum(d * p**i for i, d in enumerate(digits))

    def _slow_mul(self, a: int, b: int) -> int:
        p = self.p
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * self.e - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        r = _polymod(prod, list(self.modulus), p)
        return self._code(r + [0] * (self.e - len(r)))

    def _build_tables(self):
        q = self.q
        order = q - 1
        factors = prime_factors(order)
        gen = None
        for g in range(1, q):
            if all(self._slow_pow(g, order // r) != 1 for r in factors):
                gen = g
                break
        if order == 1:
            gen = 1
        self.generator = gen
        exp = [0] * (2 * order)
        log = [0] * q
        x = 1
        for k in range(order):
            exp[k] = x
            log[x] = k
            x = self._slow_mul(x, gen)
        for k in range(order, 2 * order):
            exp[k] = exp[k - order]
        self._exp = exp
        self._log = log

    def _slow_pow(self, a: int, n: int) -> int:
        r = 1
        while n:
            if n & 1:
                r = self._slow_mul(r, a)
            a = self._slow_mul(a, a)
            n >>= 1
        return r

    # -- arithmetic on codes -----------------------------------------------

    def add(self, a: int, b: int) -> int:
        p = self.p
        if self.e == 1:
            return (a + b) % p
        r, scale = 0, 1
        while a or b:
            r += ((a % p + b % p) % p) * scale
            a //= p
            b //= p
            scale *= p
        return r

    def neg(self, a: int) -> int:
        p = self.p
        if self.e == 1:
            return (-a) % p
        r, scale = 0, 1
        while a:
            r += ((-(a % p)) % p) * scale
            a //= p
            scale *= p
        return r

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.e == 1:
            return a * b % self.p
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        if self.e == 1:
            return pow(a, -1, self.p)
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            return self.pow(self.inv(a), -n)
        if a == 0:
            return 1 if n == 0 else 0
        return self._exp[(self._log[a] * n) % (self.q - 1)]

    def scalar(self, n: int) -> int:
        """Image of the integer ``n`` in the prime subfield."""
        return n % self.p

    def pth_root(self, a: int) -> int:
        # Frobenius has order e on F_{p^e}, so its inverse is x -> x^(p^(e-1)).
        return self.pow(a, self.p ** (self.e - 1))

    def lth_root(self, a: int, l: int) -> int:
        """Smallest-code ``r`` with ``r**l == a``; :class:`NoRoot` if none."""
        if l < 2:
            raise ValueError("root degree must be >= 2")
        if a == 0:
            return 0
        if l % self.p == 0:
            # x -> x^p is bijective: r^(l' p) = a  <=>  r^l' = a^(1/p)
            while l % self.p == 0:
                l //= self.p
                a = self.pth_root(a)
            return a if l == 1 else self.lth_root(a, l)
        n = self.q - 1
        k = self._log[a]
        g = gcd(l, n)
        if k % g:
            raise NoRoot(f"{self.element(a)} has no {l}-th root in {self!r}")
        # solutions of l*x = k (mod n) form a coset of (n/g)Z
        step = n // g
        x0 = (k // g) * pow(l // g, -1, step) % step if step > 1 else 0
        return min(self._exp[x0 + i * step] for i in range(g))

    def roots_of_unity(self, l: int) -> list[int]:
        """All ``l``-th roots of unity, sorted by code."""
        return sorted({self._exp[(self.q - 1) // gcd(l, self.q - 1) * i % (self.q - 1)]
                       for i in range(gcd(l, self.q - 1))})

    def primitive_root_of_unity(self, l: int) -> int:
        """Smallest-code primitive ``l``-th root of unity (NoRoot if absent)."""
        if (self.q - 1) % l:
            raise NoRoot(f"{self!r} has no primitive {l}-th root of unity")
        for z in self.roots_of_unity(l):
            if all(self.pow(z, l // r) != 1 for r in prime_factors(l)):
                return z
        raise AssertionError  # pragma: no cover

    def trace(self, a: int) -> int:
        """Absolute trace to F_p, returned as an integer in [0, p)."""
        t, x = 0, a
        for _ in range(self.e):
            t = self.add(t, x)
            x = self.pow(x, self.p)
        return t % self.p

    # -- element helpers ---------------------------------------------------

    def element(self, a) -> "FieldElement":
        if isinstance(a, FieldElement):
            if a.field is not self:
                raise ValueError("element belongs to a different field")
            return a
        if isinstance(a, int):
            return FieldElement(self, a % self.p)
        if isinstance(a, (tuple, list)):
            if len(a) > self.e:
                raise ValueError("too many coordinates for this field")
            return FieldElement(self, self._code([c % self.p for c in a]))
        raise TypeError(f"cannot coerce {a!r} into {self!r}")

    def from_code(self, code: int) -> "FieldElement":
        if not 0 <= code < self.q:
            raise ValueError("code out of range")
        return FieldElement(self, code)

    def elements(self):
        return [FieldElement(self, c) for c in range(self.q)]

    def format_code(self, c: int) -> str:
        if self.e == 1:
            return str(c)
        digits = self._digits(c)
        terms = []
        for i, d in enumerate(digits):
            if d == 0:
                continue
            if i == 0:
                terms.append(str(d))
            else:
                mono = "a" if i == 1 else f"a^{i}"
                terms.append(mono if d == 1 else f"{d}*{mono}")
        return "(" + " + ".join(terms) + ")" if len(terms) > 1 else (terms[0] if terms else "0")


@lru_cache(maxsize=None)
def _cached_field(p: int, e: int) -> GF:
    return GF(p, e)


def field(p: int, e: int = 1) -> GF:
    """The cached field F_{p^e}; one instance per ``(p, e)``."""
    return _cached_field(int(p), int(e))


@dataclass(frozen=True, eq=False)
class FieldElement:
    field: GF
    code: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(self.field._digits(self.code))

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise ValueError("elements of different fields")
            return other.code
        if isinstance(other, int):
            return other % self.field.p
        return NotImplemented

    def __eq__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return NotImplemented
        return self.code == c

    def __hash__(self):
        return hash((self.field.p, self.field.e, self.code))

    def __bool__(self):
        return self.code != 0

    def __add__(self, other):
        c = self._coerce(other)
        return NotImplemented if c is NotImplemented else FieldElement(self.field, self.field.add(self.code, c))

    __radd__ = __add__

    def __sub__(self, other):
        c = self._coerce(other)
        return NotImplemented if c is NotImplemented else FieldElement(self.field, self.field.sub(self.code, c))

    def __rsub__(self, other):
        c = self._coerce(other)
        return NotImplemented if c is NotImplemented else FieldElement(self.field, self.field.sub(c, self.code))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.code))

    def __mul__(self, other):
        c = self._coerce(other)
        return NotImplemented if c is NotImplemented else FieldElement(self.field, self.field.mul(self.code, c))

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = self._coerce(other)
        return NotImplemented if c is NotImplemented else FieldElement(self.field, self.field.div(self.code, c))

    def __rtruediv__(self, other):
        c = self._coerce(other)
        return NotImplemented if c is NotImplemented else FieldElement(self.field, self.field.div(c, self.code))

    def __pow__(self, n: int):
        return FieldElement(self.field, self.field.pow(self.code, n))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.code))

    def pth_root(self) -> "FieldElement":
        return FieldElement(self.field, self.field.pth_root(self.code))

    def lth_root(self, l: int) -> "FieldElement":
        return FieldElement(self.field, self.field.lth_root(self.code, l))

    def __repr__(self):
        return self.field.format_code(self.code)


def pth_root(a: FieldElement) -> FieldElement:
    return a.pth_root()


def lth_root(a: FieldElement, l: int) -> FieldElement:
    return a.lth_root(l)
