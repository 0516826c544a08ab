"""Covers of Spec k[[T, U]] in simple-normal-crossing form.

Three shapes are supported:

* :class:`ASCover`, ``x^p - x = T^-m1 U^-m2 eps(T, U)``;
* :class:`KummerCover`, ``x^l = T^q U^s eps(T, U)`` with ``l`` prime to p;
* :class:`ElemAbelianCover`, a list of AS equations.

``eps`` is a unit of k[[T, U]] given as a :class:`BiSeries`. File formats
are described in :func:`cover_to_dict` and :func:`dumps_cover`.
"""
from __future__ import annotations

import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Union

from .arc import Arc, degree, multiplicity, singularity_degree
from .errors import ArcInBranchLocus
from .field import GF, FieldElement, field as get_field, is_prime
from .localfield import (
    Filtration, filtration_cyclic_p, filtration_elem_abelian, trivial_filtration, wild_jumps,
)
from .series import (
    DEFAULT_PRECISION, BiSeries, LaurentSeries, eval_biseries, format_biseries, lth_root_series,
    parse_biseries, reparameterize,
)

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

F_T = "F_T"
F_U = "F_U"


def _check_unit(eps: BiSeries):
    if not eps.is_unit():
        raise ValueError("eps must have a nonzero constant term")


@dataclass(frozen=True)
class ASCover:
    """``x^p - x = T^-m1 U^-m2 eps``.

    At least one positive pole order must be prime to p; otherwise the
    leading term could be removed by an AS change of variable.
    ``m1 = m2 = 0`` is allowed and describes a cover unbranched at the origin.
    """

    m1: int
    m2: int
    eps: BiSeries

    variant = "as"

    def __post_init__(self):
        p = self.eps.field.p
        if self.m1 < 0 or self.m2 < 0:
            raise ValueError("pole orders m1, m2 must be >= 0")
        poles = [m for m in (self.m1, self.m2) if m > 0]
        if poles and all(m % p == 0 for m in poles):
            raise ValueError(
                f"pole orders {self.m1}, {self.m2} are all divisible by p = {p}, so the leading "
                f"term is a p-th power; subtract b^p - b for b its p-th root to lower them")
        _check_unit(self.eps)

    @property
    def field(self) -> GF:
        return self.eps.field


@dataclass(frozen=True)
class KummerCover:
    """``x^l = T^q U^s eps`` with ``l`` a prime different from p."""

    l: int
    q: int
    s: int
    eps: BiSeries

    variant = "kummer"

    def __post_init__(self):
        if not is_prime(self.l) or self.l == self.eps.field.p:
            raise ValueError("l must be a prime different from the characteristic")
        if self.q < 0 or self.s < 0:
            raise ValueError("Kummer exponents must be >= 0")
        _check_unit(self.eps)

    @property
    def field(self) -> GF:
        return self.eps.field

    @property
    def normalized(self) -> bool:
        """True for ``x^l = T``."""
        return (self.q, self.s) == (1, 0) and self.eps.coeffs == {(0, 0): 1}


@dataclass(frozen=True)
class ElemAbelianCover:
    """Compositum of the AS covers in ``components``."""

    components: tuple

    variant = "elem_abelian"

    def __post_init__(self):
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        if not comps:
            raise ValueError("need at least one AS component")
        if any(not isinstance(c, ASCover) for c in comps):
            raise TypeError("components must be ASCover values")
        if len({id(c.field) for c in comps}) != 1:
            raise ValueError("components live over different fields")

    @property
    def field(self) -> GF:
        return self.components[0].field


CoverSpec = Union[ASCover, KummerCover, ElemAbelianCover]


@dataclass(frozen=True)
class BranchData:
    components: tuple
    r0: tuple

    def to_dict(self) -> dict:
        return {"components": [list(c) for c in self.components], "r0": [list(c) for c in self.r0]}


def _as_exponents(cv: CoverSpec) -> dict[str, int]:
    """Per-divisor pole order; for several characters the largest one."""
    comps = cv.components if isinstance(cv, ElemAbelianCover) else (cv,)
    out = {F_T: 0, F_U: 0}
    for c in comps:
        out[F_T] = max(out[F_T], c.m1)
        out[F_U] = max(out[F_U], c.m2)
    return out


def branch_data(cv: CoverSpec) -> BranchData:
    """Branch components and ``R_0 = sum (m_i + 1) F_i`` (empty for Kummer covers)."""
    if isinstance(cv, KummerCover):
        comps = tuple((d, e) for d, e in ((F_T, cv.q), (F_U, cv.s)) if e % cv.l)
        return BranchData(comps, ())
    ms = _as_exponents(cv)
    comps = tuple((d, m) for d, m in ms.items() if m > 0)
    return BranchData(comps, tuple((d, m + 1) for d, m in comps))


# -- restriction to arcs ---------------------------------------------------------

def _monomial_unit(c: Arc, a: int, b: int, eps: BiSeries, sign: int) -> LaurentSeries:
    # t^(sign*a) u^(sign*b) eps(t, u)
    out = eval_biseries(eps, c.t, c.u)
    for s, e, div in ((c.t, a, F_T), (c.u, b, F_U)):
        if e == 0:
            continue
        if s.is_zero():
            raise ArcInBranchLocus(f"the arc lies inside {div}")
        out = out * s ** (sign * e)
    return out


def restrict_to_arc(cv: CoverSpec, c: Arc):
    """Pull back the defining function(s) along ``c``.

    Returns one series for AS and Kummer covers and a list for elementary
    abelian ones.
    """
    if c.field is not cv.field:
        raise ValueError("arc and cover live over different fields")
    if isinstance(cv, ASCover):
        return _monomial_unit(c, cv.m1, cv.m2, cv.eps, -1)
    if isinstance(cv, KummerCover):
        return _monomial_unit(c, cv.q, cv.s, cv.eps, 1)
    return [restrict_to_arc(comp, c) for comp in cv.components]


def cover_rank(cv: CoverSpec) -> int:
    """``log_p`` of the degree for AS-type covers; 0 for Kummer covers."""
    if isinstance(cv, ASCover):
        return 1
    if isinstance(cv, ElemAbelianCover):
        return len(cv.components)
    return 0


def filtration_on_arc(cv: CoverSpec, c: Arc) -> Filtration:
    """Ramification filtration of the extension of k((X)) cut out along ``c``.

    The computation runs over k((X)) itself, so a non-primitive arc sees the
    pole orders of its own parameterization.
    """
    a = restrict_to_arc(cv, c)
    if isinstance(cv, ASCover):
        return filtration_cyclic_p(a)
    if isinstance(cv, ElemAbelianCover):
        return filtration_elem_abelian(a)
    p = cv.field.p
    return trivial_filtration(p, cv.l if a.valuation() % cv.l else 1)


def wild_jumps_on_arc(cv: CoverSpec, c: Arc) -> list:
    """``w_C^(i)``, one entry per AS equation (zeros for unramified directions)."""
    if isinstance(cv, KummerCover):
        restrict_to_arc(cv, c)
        return []
    return wild_jumps(filtration_on_arc(cv, c), count=cover_rank(cv))


# -- jet orders ---------------------------------------------------------------------

def arc_dot_divisor(c: Arc, divisor: str) -> int:
    s = c.t if divisor == F_T else c.u
    if s.is_zero():
        raise ArcInBranchLocus(f"the arc lies inside {divisor}")
    return s.valuation()


def arc_dot_r0(cv: CoverSpec, c: Arc) -> int:
    """``(C.R_0) = sum (m_i + 1) (C.F_i)``."""
    return sum(coef * arc_dot_divisor(c, d) for d, coef in branch_data(cv).r0)


def jet_threshold(cv: CoverSpec, c: Arc, d: Arc) -> int:
    """``(C.R_0) E_D + E_C E_D max(M_C, M_D)``."""
    ec, ed = multiplicity(c), multiplicity(d)
    mc = 0 if ec == 1 else singularity_degree(c)
    md = 0 if ed == 1 else singularity_degree(d)
    return arc_dot_r0(cv, c) * ed + ec * ed * max(mc, md)


def delta(cv: CoverSpec, i: int) -> int:
    """``i * max(m_1 + 1, ..., m_s + 1, i)``."""
    if isinstance(cv, KummerCover):
        raise ValueError("delta is defined for Artin-Schreier type covers")
    if i < 1:
        raise ValueError("i must be >= 1")
    bound = max([coef for _, coef in branch_data(cv).r0] + [i])
    return i * bound


# -- Kummer lifting ------------------------------------------------------------------

def kummer_lift_count(cv: KummerCover, c: Arc) -> int:
    """``n_C``: 1 when ``l`` does not divide ``v_X(f^C(a))``, else ``l``."""
    if not isinstance(cv, KummerCover):
        raise TypeError("kummer_lift_count needs a Kummer cover")
    v = restrict_to_arc(cv, c).valuation()
    return 1 if v % cv.l else cv.l


def lift_arc_kummer(cv: KummerCover, c: Arc, check_primitive: bool = True) -> list[Arc]:
    """Pairwise non-equivalent liftings of ``c`` to the cover ``x^l = T``.

    For ``n_C = l`` the lifts are ``(zeta^k t^(1/l), u)``; for ``n_C = 1`` the
    single lift is parameterized by ``Z`` with ``X = Z^l``.
    """
    if not cv.normalized:
        raise ValueError("lifting is implemented for the normalized cover x^l = T only")
    if c.t.is_zero():
        raise ArcInBranchLocus("the arc lies inside F_T")
    if check_primitive and degree(c) != 1:
        raise ValueError("lifting needs a primitive arc")
    F = c.field
    l = cv.l
    n = kummer_lift_count(cv, c)
    if n == l:
        zeta = FieldElement(F, F.primitive_root_of_unity(l))
        root = lth_root_series(c.t, l)
        return [Arc(root * zeta**k, c.u) for k in range(l)]
    return [Arc(lth_root_series(reparameterize(c.t, l), l), reparameterize(c.u, l))]


# -- file formats ---------------------------------------------------------------------
#
# JSON / TOML keys:
#   as:           variant, p, ext_degree, p_exponents = [m1, m2], eps
#   kummer:       variant, p, ext_degree, l, exponents = [q, s], eps
#   elem_abelian: variant, p, ext_degree, components = [{p_exponents, eps}, ...]
# ``eps`` is a bivariate literal (default "1"); ``p`` and ``ext_degree`` are
# optional on input. Output is normalized: fixed key order, eps re-printed.

def _eps_str(eps: BiSeries) -> str:
    return format_biseries(eps, with_precision=False)


def cover_to_dict(cv: CoverSpec) -> dict:
    F = cv.field
    head = {"variant": cv.variant, "p": F.p, "ext_degree": F.e}
    if isinstance(cv, ASCover):
        return {**head, "p_exponents": [cv.m1, cv.m2], "eps": _eps_str(cv.eps)}
    if isinstance(cv, KummerCover):
        return {**head, "l": cv.l, "exponents": [cv.q, cv.s], "eps": _eps_str(cv.eps)}
    return {**head, "components": [
        {"p_exponents": [c.m1, c.m2], "eps": _eps_str(c.eps)} for c in cv.components]}


def _field_for(d: dict, F: GF | None) -> GF:
    if F is None:
        if "p" not in d:
            raise ValueError("cover file names no characteristic; pass a field")
        return get_field(int(d["p"]), int(d.get("ext_degree", 1)))
    if "p" in d and (int(d["p"]), int(d.get("ext_degree", 1))) != (F.p, F.e):
        raise ValueError(f"cover file is over GF({d['p']}^{d.get('ext_degree', 1)}), not {F!r}")
    return F


def _as_from(d: dict, F: GF, prec: int) -> ASCover:
    m1, m2 = d["p_exponents"]
    return ASCover(int(m1), int(m2), parse_biseries(str(d.get("eps", "1")), F, prec))


def cover_from_dict(d: dict, F: GF | None = None, prec: int = DEFAULT_PRECISION) -> CoverSpec:
    F = _field_for(d, F)
    variant = d.get("variant")
    if variant == "as":
        return _as_from(d, F, prec)
    if variant == "kummer":
        q, s = d["exponents"]
        return KummerCover(int(d["l"]), int(q), int(s), parse_biseries(str(d.get("eps", "1")), F, prec))
    if variant == "elem_abelian":
        return ElemAbelianCover(tuple(_as_from(c, F, prec) for c in d["components"]))
    raise ValueError(f"unknown cover variant {variant!r}")


def _toml_value(v) -> str:
    if isinstance(v, str):
        return json.dumps(v)
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, list):
        return "[" + ", ".join(_toml_value(x) for x in v) + "]"
    raise TypeError(f"cannot write {v!r} as TOML")


def _toml_dumps(d: dict) -> str:
    lines = [f"{k} = {_toml_value(v)}" for k, v in d.items() if k != "components"]
    for comp in d.get("components", []):
        lines += ["", "[[components]]"] + [f"{k} = {_toml_value(v)}" for k, v in comp.items()]
    return "\n".join(lines) + "\n"


def dumps_cover(cv: CoverSpec, fmt: str = "json") -> str:
    d = cover_to_dict(cv)
    if fmt == "json":
        return json.dumps(d, indent=2) + "\n"
    if fmt == "toml":
        return _toml_dumps(d)
    raise ValueError(f"unknown format {fmt!r}")


def loads_cover(text: str, fmt: str = "json", F: GF | None = None,
                prec: int = DEFAULT_PRECISION) -> CoverSpec:
    d = json.loads(text) if fmt == "json" else tomllib.loads(text)
    return cover_from_dict(d, F, prec)


def load_cover(path, F: GF | None = None, prec: int = DEFAULT_PRECISION) -> CoverSpec:
    path = Path(path)
    fmt = "toml" if path.suffix.lower() == ".toml" else "json"
    return loads_cover(path.read_text(), fmt, F, prec)


def dump_cover(cv: CoverSpec, path) -> None:
    path = Path(path)
    fmt = "toml" if path.suffix.lower() == ".toml" else "json"
    path.write_text(dumps_cover(cv, fmt))
