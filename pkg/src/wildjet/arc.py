"""Arcs on the formal plane Spec k[[T, U]].

An arc is a pair of power series ``(t, u)`` in X, the images of T and U.
The module computes multiplicities, tangents, strict transforms under the
blow-up of the closed point, intersection multiplicities and
Hamburger-Noether expansions.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import InfiniteIntersection, PrecisionExhausted
from .field import GF, FieldElement
from .series import DEFAULT_PRECISION, BiSeries, LaurentSeries, eval_biseries, parse_series


@dataclass(frozen=True)
class Tangent:
    """A point ``[alpha : beta]`` of P^1, normalized so the first nonzero coordinate is 1."""

    alpha: int
    beta: int

    @property
    def direction(self) -> tuple[int, int]:
        return (self.alpha, self.beta)

    def __str__(self):
        return f"[{self.alpha} : {self.beta}]"


@dataclass(frozen=True)
class Arc:
    t: LaurentSeries
    u: LaurentSeries

    def __post_init__(self):
        if self.t.field is not self.u.field:
            raise ValueError("arc coordinates live over different fields")
        if self.t.is_zero() and self.u.is_zero():
            raise PrecisionExhausted("both arc coordinates are zero to precision")
        for name, s in (("t", self.t), ("u", self.u)):
            if not s.is_zero() and s.val < 1:
                raise ValueError(f"arc coordinate {name} must have positive valuation")

    @property
    def field(self) -> GF:
        return self.t.field

    @property
    def prec(self) -> int:
        return min(self.t.prec, self.u.prec)

    @classmethod
    def parse(cls, spec, F: GF, prec: int = DEFAULT_PRECISION) -> "Arc":
        """Build from ``{"t": "...", "u": "..."}`` or a pair of literals."""
        if isinstance(spec, dict):
            t, u = spec["t"], spec["u"]
        else:
            t, u = spec
        return cls(parse_series(t, F, prec), parse_series(u, F, prec))

    def to_dict(self) -> dict:
        return {"t": str(self.t), "u": str(self.u)}

    def swap(self) -> "Arc":
        return Arc(self.u, self.t)

    def reparameterize(self, d: int) -> "Arc":
        from .series import reparameterize
        return Arc(reparameterize(self.t, d), reparameterize(self.u, d))

    def __str__(self):
        return f"({self.t}, {self.u})"



def multiplicity(c: Arc) -> int:
    """``E_C = min(v(t), v(u))``."""
    known = [s.val for s in (c.t, c.u) if not s.is_zero()]
    if not known:
        raise PrecisionExhausted("both arc coordinates are zero to precision")
    e = min(known)
    for s in (c.t, c.u):
        if s.is_zero() and s.prec < e:
            raise PrecisionExhausted("a coordinate vanishes only below the multiplicity")
    return e


def tangent(c: Arc) -> Tangent:
    """The unique ``[alpha : beta]`` with ``v(alpha t + beta u) > E_C``."""
    F = c.field
    e = multiplicity(c)
    te, ue = c.t.code(e), c.u.code(e)
    alpha, beta = ue, F.neg(te)
    if alpha:
        inv = F.inv(alpha)
        return Tangent(1, F.mul(beta, inv))
    return Tangent(0, 1)


def blow_up(c: Arc) -> tuple[Arc, int]:
    """The strict transform and the index (0 for t, 1 for u) of the exceptional coordinate.

    The chart divides by ``u`` when ``v(u) <= v(t)``, otherwise by ``t``.
    """
    F = c.field
    multiplicity(c)
    if c.t.is_zero() or (not c.u.is_zero() and c.u.val <= c.t.val):
        q = c.t / c.u
        q = q - FieldElement(F, q.code(0)) if q.prec > 0 else q
        return Arc(q, c.u), 1
    q = c.u / c.t
    q = q - FieldElement(F, q.code(0)) if q.prec > 0 else q
    return Arc(c.t, q), 0


def strict_transform(c: Arc) -> Arc:
    return blow_up(c)[0]


def intersect(c: Arc, d: Arc) -> int:
    """Intersection multiplicity ``(C.D)`` via the blow-up recursion.

    Raises :class:`InfiniteIntersection` when the arcs do not separate
    within the available precision; its ``lower_bound`` is the partial sum.
    """
    if c.field is not d.field:
        raise ValueError("arcs over different fields")
    total = 0
    cap = c.prec + d.prec + 1
    for _ in range(cap):
        try:
            ec, ed = multiplicity(c), multiplicity(d)
            total += ec * ed
            if tangent(c) != tangent(d):
                return total
            c, d = strict_transform(c), strict_transform(d)
        except PrecisionExhausted:
            raise InfiniteIntersection(
                f"arcs do not separate within precision; (C.D) >= {total}", lower_bound=total
            ) from None
    raise InfiniteIntersection(f"iteration cap reached; (C.D) >= {total}", lower_bound=total)


@dataclass(frozen=True)
class HNExpansion:
    """Hamburger-Noether expansion of an arc.

    ``rows[i] = (h_i, (a_{i,1}, ..., a_{i,h_i}))`` for the ``r`` non-final
    rows, with ``a_{i,1} = 0`` for ``i >= 1``. ``final_row`` holds
    ``(a_{r,1}, a_{r,2}, ...)`` as far as precision allows, so that
    ``z_{r-1} = sum_j a_{r,j} z_r^j`` (with ``z_{-1}, z_0`` the coordinates
    after the optional swap). ``valuations`` lists ``v(z_0), ..., v(z_r)``.
    """

    field: GF
    rows: tuple
    final_row: tuple
    swapped: bool
    valuations: tuple

    @property
    def r(self) -> int:
        return len(self.rows)

    @property
    def d(self) -> int:
        return self.valuations[-1]

    @property
    def M(self) -> int:
        return sum(h for h, _ in self.rows)

    @property
    def multiplicity(self) -> int:
        return self.valuations[0]

    def to_dict(self) -> dict:
        F = self.field
        return {
            "r": self.r,
            "h": [h for h, _ in self.rows],
            "a": [[F.format_code(c) for c in a] for _, a in self.rows],
            "final_row": [F.format_code(c) for c in self.final_row],
            "M": self.M,
            "d": self.d,
            "swapped": self.swapped,
            "valuations": list(self.valuations),
        }


def _divide_out(q: LaurentSeries, w: LaurentSeries, w_inv: LaurentSeries, limit: int | None):
    """Peel constants off ``q / w`` while ``v(q) >= v(w)``.

    Returns ``(coeffs, rest, exhausted)``: ``rest`` is the row's new parameter
    (``None`` if precision ran out first).
    """
    F = q.field
    vw = w.val
    coeffs = []
    while True:
        if limit is not None and len(coeffs) >= limit:
            return coeffs, None, True
        if q.is_zero() or q.val >= vw:
            r = q * w_inv
            if r.prec <= 0:
                return coeffs, None, True
            a = r.code(0)
            coeffs.append(a)
            q = r - FieldElement(F, a) if a else r
            continue
        return coeffs, q, False


def hn_expand(c: Arc, final_terms: int | None = None) -> HNExpansion:
    """Hamburger-Noether expansion by repeated division.

    ``final_terms`` caps the number of final-row coefficients extracted
    (not counting the structural zero ``a_{r,1}`` when ``r > 0``).
    """
    swapped = False
    t, u = c.t, c.u
    multiplicity(c)
    if t.is_zero() is False and (u.is_zero() or t.val < u.val):
        t, u, swapped = u, t, True
    rows = []
    valuations = [u.val]
    prev, w = t, u
    while True:
        if w.val == 1:
            limit = None if final_terms is None else final_terms + (1 if rows else 0)
            w_inv = w.invert()
            coeffs, _, _ = _divide_out(prev, w, w_inv, limit)
            if rows and not any(coeffs) and limit is not None:
                # the cap hit only zeros; extend up to the first nonzero term
                coeffs, _, _ = _divide_out(prev, w, w_inv, None)
                nz = next((i for i, a in enumerate(coeffs) if a), len(coeffs) - 1)
                coeffs = coeffs[: max(limit, nz + 1)]
            if rows and not any(coeffs):
                raise PrecisionExhausted("final row has no coefficients within precision")
            return HNExpansion(c.field, tuple(rows), tuple(coeffs), swapped, tuple(valuations))
        w_inv = w.invert()
        coeffs, rest, exhausted = _divide_out(prev, w, w_inv, None)
        if exhausted:
            # the remainder vanished to precision: prev is a series in w
            if rows and not any(coeffs):
                raise PrecisionExhausted("final row has no coefficients within precision")
            if final_terms is not None:
                coeffs = coeffs[: final_terms + (1 if rows else 0)]
            return HNExpansion(c.field, tuple(rows), tuple(coeffs), swapped, tuple(valuations))
        rows.append((len(coeffs), tuple(coeffs)))
        prev, w = w, rest
        valuations.append(w.val)


def singularity_degree(c: Arc) -> int:
    """``M_C``, the sum of the ``h_i`` over the non-final rows."""
    return hn_expand(c, final_terms=1).M


def degree(c: Arc) -> int:
    """``d_C``, the valuation of the last HN parameter; 1 iff the arc is primitive."""
    return hn_expand(c, final_terms=1).d


def blowups_to_smooth(c: Arc, limit: int = 10_000) -> int:
    """Count strict transforms until multiplicity 1 (an independent check on ``M_C``)."""
    n = 0
    while multiplicity(c) > 1:
        if n >= limit:
            raise PrecisionExhausted("arc did not become smooth within the iteration limit")
        c = strict_transform(c)
        n += 1
    return n


def equation_of_regular_arc(c: Arc) -> BiSeries:
    """``g = -T + sum a_{0j} U^j`` (or with T, U exchanged) vanishing on ``c``."""
    if multiplicity(c) != 1:
        raise ValueError("equation_of_regular_arc needs a smooth arc (multiplicity 1)")
    hn = hn_expand(c)
    if hn.d != 1:
        raise ValueError("equation_of_regular_arc needs a primitive arc")
    F = c.field
    n = len(hn.final_row)
    prec = n + 1
    coeffs = {}
    dep, free = ((0, 1), (1, 0)) if hn.swapped else ((1, 0), (0, 1))
    coeffs[dep] = F.neg(1)
    for j, a in enumerate(hn.final_row, start=1):
        if a:
            key = (free[0] * j, free[1] * j)
            coeffs[key] = F.add(coeffs.get(key, 0), a)
    return BiSeries(F, coeffs, prec)


def intersect_via_equation(c: Arc, d: Arc) -> int:
    """``v_X(g_D(c))`` for a regular ``d``."""
    g = equation_of_regular_arc(d)
    return eval_biseries(g, c.t, c.u).valuation()


def rebuild_arc(hn: HNExpansion, prec: int = DEFAULT_PRECISION) -> Arc:
    """A primitive arc with the given expansion, parameterized by ``z_r = X``."""
    F = hn.field
    X = LaurentSeries.gen(F, prec)

    def poly(coeffs, z, start=1):
        acc = LaurentSeries.zero(F, prec)
        zp = z ** start
        for a in coeffs:
            if a:
                acc = acc + zp * FieldElement(F, a)
            zp = (zp * z).truncate(prec)
        return acc.truncate(prec)

    below = X
    above = poly(hn.final_row, X)
    for h, coeffs in reversed(hn.rows):
        # z_{i-1} = sum_j a_{ij} z_i^j + z_i^{h_i} z_{i+1}
        new = poly(coeffs, above) + (above ** h) * below
        below, above = above, new.truncate(prec)
    t, u = above, below
    if hn.swapped:
        t, u = u, t
    return Arc(t, u)
