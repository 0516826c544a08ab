"""Ramification of elementary abelian p-extensions of k((X)).

Artin-Schreier classes are reduced to find their jumps, the jumps of all
characters are assembled into lower-numbering filtrations, and filtrations
yield the modified jumps ``w^(i) = h^(i)/e_t``, the piecewise-linear
function ``W`` and Swan conductors. All bookkeeping with breakpoints is done
over :class:`fractions.Fraction`.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import PrecisionExhausted
from .series import LaurentSeries


# -- Artin-Schreier reduction -------------------------------------------------

@dataclass(frozen=True)
class ASClass:
    """Reduced representative of ``a`` modulo ``{b^p - b}``.

    ``split`` is only meaningful when ``trivial_flag`` is set: it records
    whether the constant term is of the form ``c^p - c`` (trace zero).
    """

    reduced: LaurentSeries
    jump: int
    trivial_flag: bool
    split: bool | None = None


def as_reduce(a: LaurentSeries) -> ASClass:
    """Strip pole terms of order divisible by p, then read off the jump."""
    F = a.field
    p = F.p
    while True:
        if a.is_zero():
            if a.prec < 0:
                raise PrecisionExhausted(
                    f"AS representative vanishes to O(X^{a.prec}); its pole order is undetermined")
            return ASClass(a, 0, True, True)
        v = a.val
        if v >= 0:
            split = None
            if a.prec > 0:
                split = F.trace(a.code(0)) == 0
            return ASClass(a, 0, True, split)
        m = -v
        if m % p:
            return ASClass(a, m, False)
        root = F.pth_root(a.coeffs[0])
        rest = LaurentSeries(F, v + 1, a.coeffs[1:], a.prec)
        a = rest + LaurentSeries(F, -(m // p), [root], a.prec)


def as_jump(a: LaurentSeries) -> int:
    return as_reduce(a).jump


# -- filtrations ------------------------------------------------------------------

@dataclass(frozen=True)
class Filtration:
    """Lower-numbering ramification filtration.

    ``segments`` is a tuple of ``(bound, order)``: ``|G_j| = order`` for
    ``previous bound < j <= bound`` (j >= 1), and ``|G_j| = 1`` past the last
    bound. ``|G_0| = e_t * |G_1|``.
    """

    p: int
    e_t: int = 1
    segments: tuple = ()

    def __post_init__(self):
        segs = tuple((int(b), int(o)) for b, o in self.segments)
        object.__setattr__(self, "segments", segs)
        if self.e_t < 1 or self.e_t % self.p == 0:
            raise ValueError("tame index must be a positive integer prime to p")
        prev_b, prev_o = 0, None
        for b, o in segs:
            if b <= prev_b:
                raise ValueError("segment bounds must be positive and strictly increasing")
            if prev_o is not None and o >= prev_o:
                raise ValueError("segment orders must strictly decrease")
            if o <= 1 or not _is_power(o, self.p):
                raise ValueError("wild orders must be powers of p greater than 1")
            prev_b, prev_o = b, o

    def order(self, j: int) -> int:
        """``|G_j|`` for an integer ``j >= 0``."""
        if j <= 0:
            return self.e_t * self.order(1)
        for b, o in self.segments:
            if j <= b:
                return o
        return 1

    @property
    def wild_order(self) -> int:
        return self.order(1)

    @property
    def wild_rank(self) -> int:
        n, o = 0, self.wild_order
        while o > 1:
            o //= self.p
            n += 1
        return n

    def h(self, i: int) -> int:
        """``h^(i) = min{j >= 1 : p^i does not divide |G_j|} - 1``."""
        q = self.p**i
        j = 1
        if self.order(1) % q:
            return 0
        for b, o in self.segments:
            if o % q:
                return j - 1
            j = b + 1
        return j - 1

    def to_dict(self) -> dict:
        return {"p": self.p, "e_t": self.e_t, "segments": [[b, o] for b, o in self.segments]}

    @classmethod
    def from_dict(cls, d) -> "Filtration":
        return cls(d["p"], d.get("e_t", 1), tuple(tuple(s) for s in d.get("segments", ())))

    def scaled(self, e: int) -> "Filtration":
        """The filtration after a tame base change of index ``e``: bounds and ``e_t`` scale."""
        return Filtration(self.p, self.e_t * e, tuple((b * e, o) for b, o in self.segments))


def _is_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def trivial_filtration(p: int, e_t: int = 1) -> Filtration:
    return Filtration(p, e_t, ())


def filtration_cyclic_p(a: LaurentSeries) -> Filtration:
    """Filtration of ``x^p - x = a``."""
    cls = as_reduce(a)
    p = a.field.p
    if cls.jump == 0:
        return trivial_filtration(p)
    return Filtration(p, 1, ((cls.jump, p),))


def character_jumps(chars: Sequence[LaurentSeries]) -> dict[tuple, int]:
    """AS jump of ``sum c_i a_i`` for every ``c`` in ``F_p^n`` (0 for ``c = 0``)."""
    if not chars:
        return {(): 0}
    F = chars[0].field
    p = F.p
    out = {}
    for c in itertools.product(range(p), repeat=len(chars)):
        if not any(c):
            out[c] = 0
            continue
        acc = None
        for ci, a in zip(c, chars):
            if ci:
                term = a * ci
                acc = term if acc is None else acc + term
        out[c] = as_reduce(acc).jump
    return out


def filtration_from_upper(p: int, upper: dict[int, int], total: int, e_t: int = 1) -> Filtration:
    """Lower filtration from upper data.

    ``upper`` maps each upper jump ``u > 0`` to ``|G^u|``; ``total`` is
    ``|G^0|`` of the wild part. Lower jumps come from
    ``l_k = l_{k-1} + (u_k - u_{k-1}) * (G^0 : G^{u_k})``.
    """
    segments = []
    l_prev, u_prev = Fraction(0), Fraction(0)
    for u in sorted(upper):
        order = upper[u]
        l = l_prev + (Fraction(u) - u_prev) * Fraction(total, order)
        if l.denominator != 1:
            raise AssertionError(f"non-integral lower jump {l} from upper jump {u}")
        segments.append((int(l) * e_t, order))
        l_prev, u_prev = l, Fraction(u)
    return Filtration(p, e_t, tuple(segments))


def upper_data(jumps: dict[tuple, int], p: int) -> tuple[int, dict[int, int]]:
    """``(|G^0|, {u: |G^u|})`` from the jumps of every character of the group."""
    size = len(jumps)
    kernel = sum(1 for j in jumps.values() if j == 0)
    g0 = size // kernel
    upper = {}
    for u in sorted({j for j in jumps.values() if j > 0}):
        below = sum(1 for j in jumps.values() if j < u)
        upper[u] = size // below
    return g0, upper


def filtration_elem_abelian(chars: Sequence[LaurentSeries]) -> Filtration:
    """Filtration of ``K(x_1, ..., x_n)`` with ``x_i^p - x_i = a_i``.

    Dependent characters and unramified directions are absorbed by counting
    the characters of jump 0, so the group order is that of the inertia group.
    """
    if not chars:
        raise ValueError("need at least one character")
    p = chars[0].field.p
    jumps = character_jumps(chars)
    g0, upper = upper_data(jumps, p)
    if g0 == 1:
        return trivial_filtration(p)
    return filtration_from_upper(p, upper, g0)


def upper_jumps(f: Filtration) -> list[Fraction]:
    """Upper jumps ``phi(l)`` of the lower jumps ``l``, in increasing order."""
    phi = herbrand_phi(f)
    return [phi(Fraction(b)) for b, _ in f.segments]


def wild_jumps(f: Filtration, count: int | None = None) -> list:
    """``w^(i) = h^(i)/e_t`` for ``i = 1 .. log_p |G_1|``, padded with zeros to ``count``."""
    out = []
    for i in range(1, f.wild_rank + 1):
        w = Fraction(f.h(i), f.e_t)
        out.append(int(w) if w.denominator == 1 else w)
    if count is not None:
        if count < len(out):
            raise ValueError(f"filtration has {len(out)} wild jumps, more than {count}")
        out += [0] * (count - len(out))
    return out


# -- piecewise-linear functions -------------------------------------------------

@dataclass(frozen=True)
class PLFunction:
    """Continuous increasing piecewise-linear function on ``[x_0, inf)``.

    ``breakpoints`` starts at the domain's left end; ``final_slope`` applies
    past the last breakpoint. Collinear breakpoints are merged.
    """

    breakpoints: tuple
    final_slope: Fraction

    def __post_init__(self):
        pts = [(Fraction(x), Fraction(y)) for x, y in self.breakpoints]
        if not pts:
            raise ValueError("PLFunction needs a starting point")
        slope = Fraction(self.final_slope)
        merged = [pts[0]]
        for x, y in pts[1:]:
            px, py = merged[-1]
            if x < px:
                raise ValueError("breakpoints must be sorted")
            if x == px:
                if y != py:
                    raise ValueError("discontinuous breakpoints")
                continue
            merged.append((x, y))
        # drop interior points where the slope does not change
        out = [merged[0]]
        for k in range(1, len(merged)):
            x, y = merged[k]
            nxt_slope = slope if k == len(merged) - 1 else _slope(merged[k], merged[k + 1])
            if _slope(out[-1], (x, y)) != nxt_slope:
                out.append((x, y))
        object.__setattr__(self, "breakpoints", tuple(out))
        object.__setattr__(self, "final_slope", slope)

    @property
    def start(self) -> Fraction:
        return self.breakpoints[0][0]

    def slopes(self) -> list[Fraction]:
        pts = self.breakpoints
        return [_slope(pts[k], pts[k + 1]) for k in range(len(pts) - 1)] + [self.final_slope]

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        pts = self.breakpoints
        if x < pts[0][0]:
            raise ValueError(f"{x} is left of the domain start {pts[0][0]}")
        for k in range(len(pts) - 1):
            (x0, y0), (x1, y1) = pts[k], pts[k + 1]
            if x <= x1:
                return y0 + (x - x0) * (y1 - y0) / (x1 - x0)
        x0, y0 = pts[-1]
        return y0 + (x - x0) * self.final_slope

    def inverse_at(self, y) -> Fraction:
        y = Fraction(y)
        pts = self.breakpoints
        if y < pts[0][1]:
            raise ValueError(f"{y} is below the range start {pts[0][1]}")
        for k in range(len(pts) - 1):
            (x0, y0), (x1, y1) = pts[k], pts[k + 1]
            if y <= y1:
                return x0 + (y - y0) * (x1 - x0) / (y1 - y0)
        x0, y0 = pts[-1]
        return x0 + (y - y0) / self.final_slope

    def to_dict(self) -> dict:
        return {
            "breakpoints": [[_frac_str(x), _frac_str(y)] for x, y in self.breakpoints],
            "final_slope": _frac_str(self.final_slope),
        }

    @classmethod
    def from_dict(cls, d) -> "PLFunction":
        return cls(tuple((Fraction(x), Fraction(y)) for x, y in d["breakpoints"]), Fraction(d["final_slope"]))


def _slope(a, b) -> Fraction:
    return (b[1] - a[1]) / (b[0] - a[0])


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _step_function(f: Filtration, x0: Fraction, y0: Fraction, base: int) -> PLFunction:
    # slope |G_t| / base on each lower segment, starting at x0
    pts = [(x0, y0)]
    x, y = x0, y0
    for b, o in f.segments:
        b = Fraction(b)
        if b <= x:
            continue
        y += (b - x) * Fraction(o, base)
        x = b
        pts.append((x, y))
    return PLFunction(tuple(pts), Fraction(1, base))


def w_function(f: Filtration) -> PLFunction:
    """``W(u) = 1 + (1/e_t) * integral_1^u dt / (G_1 : G_t)`` on ``[1, inf)``."""
    g1 = f.wild_order
    return _step_function(f, Fraction(1), Fraction(1), g1 * f.e_t)


def herbrand_phi(f: Filtration) -> PLFunction:
    """Classical ``phi(u) = integral_0^u dt / (G_0 : G_t)`` on ``[0, inf)``."""
    g0 = f.order(0)
    g1 = f.wild_order
    # on (0, 1] the group is G_1
    tail = _step_function(f, Fraction(1), Fraction(g1, g0), g0)
    pts = ((Fraction(0), Fraction(0)),) + tail.breakpoints
    return PLFunction(pts, tail.final_slope)


def compose_w(outer: PLFunction, inner: PLFunction) -> PLFunction:
    """Exact ``outer o inner``."""
    xs = {x for x, _ in inner.breakpoints}
    lo = inner.breakpoints[0][1]
    for x, _ in outer.breakpoints:
        if x >= lo:
            xs.add(inner.inverse_at(x))
    xs = sorted(xs)
    pts = tuple((x, outer(inner(x))) for x in xs)
    return PLFunction(pts, outer.final_slope * inner.final_slope)


# -- Swan conductors --------------------------------------------------------------

def swan_conductor(f: Filtration, char_jumps: Iterable[int]) -> Fraction:
    """Swan conductor of a sum of characters given by their upper jumps.

    ``sum_{i >= 1} #{chi : chi nontrivial on G_i} * |G_i| / |G_0|``, where
    ``chi`` is nontrivial on ``G_i`` exactly when ``phi(i) <= u_chi``.
    """
    jumps = [Fraction(u) for u in char_jumps]
    allowed = set(upper_jumps(f)) | {Fraction(0)}
    for u in jumps:
        if u not in allowed:
            raise ValueError(f"{u} is not an upper jump of the filtration")
    phi = herbrand_phi(f)
    g0 = f.order(0)
    total = Fraction(0)
    last = f.segments[-1][0] if f.segments else 0
    for i in range(1, last + 1):
        v = phi(i)
        dim = sum(1 for u in jumps if u > 0 and v <= u)
        total += Fraction(dim * f.order(i), g0)
    return total


def swan_conductor_of_characters(chars: Sequence[LaurentSeries], coeffs: Iterable[tuple]) -> Fraction:
    """Swan conductor of the characters ``sum c_i a_i`` for each ``c`` in ``coeffs``."""
    f = filtration_elem_abelian(chars)
    table = character_jumps(chars)
    p = chars[0].field.p
    return swan_conductor(f, [table[tuple(ci % p for ci in c)] for c in coeffs])


# -- towers --------------------------------------------------------------------------

@dataclass(frozen=True)
class Tower:
    """``K subset M subset L`` with ``M = K(x_1..x_k)`` inside ``L = K(x_1..x_n)``."""

    total: Filtration
    quotient: Filtration
    sub: Filtration
    jumps: dict = dc_field(repr=False, default_factory=dict)


def tower_filtrations(chars: Sequence[LaurentSeries], k: int) -> Tower:
    """Filtrations of ``L/K``, ``M/K`` and ``L/M`` for the first ``k`` characters.

    ``L/M`` uses ``H_j = H intersect G_j`` with ``H = Gal(L/M)``, the annihilator
    of the characters supported on the first ``k`` coordinates.
    """
    p = chars[0].field.p
    jumps = character_jumps(chars)
    total = filtration_elem_abelian(chars)
    quotient = filtration_elem_abelian(chars[:k])
    phi = herbrand_phi(total)
    size = len(jumps)
    S = [c for c in jumps if not any(c[k:])]

    def h_order(v):
        # |H intersect G^v| = p^n / |S + C_{<v}|
        C = [c for c, j in jumps.items() if (j < v if v > 0 else j == 0)]
        sc = sum(1 for c in C if not any(c[k:]))
        return size * sc // (len(S) * len(C))

    # H_j for j >= 0 changes only at lower jumps of G
    h0 = h_order(Fraction(0))
    segments = []
    for b, _ in total.segments:
        o = h_order(phi(b))
        if segments and segments[-1][1] == o:
            segments[-1] = (b, o)
        elif o > 1:
            segments.append((b, o))
    if h0 == 1:
        sub = trivial_filtration(p)
    else:
        sub = Filtration(p, 1, tuple(segments))
    return Tower(total, quotient, sub, jumps)


__all__ = [
    "ASClass", "as_reduce", "as_jump", "Filtration", "trivial_filtration",
    "filtration_cyclic_p", "character_jumps", "filtration_from_upper", "upper_data",
    "filtration_elem_abelian", "upper_jumps", "wild_jumps", "PLFunction", "w_function",
    "herbrand_phi", "compose_w", "swan_conductor", "swan_conductor_of_characters",
    "Tower", "tower_filtrations",
]
