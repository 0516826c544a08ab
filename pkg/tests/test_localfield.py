import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from wildjet import LaurentSeries, PrecisionExhausted, field, parse_series
from wildjet.localfield import (
    Filtration, PLFunction, as_reduce, character_jumps, compose_w, filtration_cyclic_p,
    filtration_elem_abelian, herbrand_phi, swan_conductor, swan_conductor_of_characters, tower_filtrations,
    trivial_filtration, upper_jumps, w_function, wild_jumps,
)

F3 = field(3)


def S(text, F=F3, prec=40):
    return parse_series(text, F, prec)


def fr(*pts):
    return tuple((Fraction(x), Fraction(y)) for x, y in pts)


def test_as_reduce_examples():
    assert as_reduce(S("X^-2")).jump == 2
    c = as_reduce(S("X^-3"))
    assert c.jump == 1 and c.reduced.agrees_with(S("X^-1", prec=10))
    c = as_reduce(S("1 + X^2"))
    assert c.jump == 0 and c.trivial_flag
    # 1 has trace 1 in F_3, so x^3 - x = 1 is unramified but not split
    assert c.split is False
    assert as_reduce(S("X^2")).split is True


def test_as_reduce_precision():
    # X^-3 - X^-3: nothing known below X^-1 after cancellation
    a = LaurentSeries(F3, -3, [], -1)
    with pytest.raises(PrecisionExhausted):
        as_reduce(a)


def test_cyclic_filtration_examples():
    f = filtration_cyclic_p(S("X^-2"))
    assert f.segments == ((2, 3),) and f.h(1) == 2 and wild_jumps(f) == [2]
    assert filtration_cyclic_p(S("X")) == trivial_filtration(3)
    assert wild_jumps(filtration_cyclic_p(S("X")), 1) == [0]
    assert filtration_cyclic_p(S("X^-3")).h(1) == 1


def test_elem_abelian_examples():
    f = filtration_elem_abelian([S("X^-1"), S("X^-2")])
    assert f.segments == ((1, 9), (4, 3))
    assert (f.h(1), f.h(2)) == (4, 1)
    assert wild_jumps(f) == [4, 1]
    assert upper_jumps(f) == [1, 2]
    table = character_jumps([S("X^-1"), S("X^-2")])
    assert sorted(table.values()).count(1) == 2 and sorted(table.values()).count(2) == 6
    assert filtration_elem_abelian([S("X^-2")]) == filtration_cyclic_p(S("X^-2"))
    assert filtration_elem_abelian([S("X^-2"), S("2*X^-2")]) == filtration_cyclic_p(S("X^-2"))


def test_wild_jumps_with_multiplicity():
    f = Filtration(3, 1, ((5, 9),))
    assert wild_jumps(f) == [5, 5]
    assert wild_jumps(Filtration(3, 2, ((4, 3),))) == [2]


def test_w_function_examples():
    triv = w_function(Filtration(3, 2))
    assert triv.breakpoints == fr((1, 1)) and triv.final_slope == Fraction(1, 2)
    w = w_function(filtration_cyclic_p(S("X^-2")))
    assert w.breakpoints == fr((1, 1), (2, 2)) and w.final_slope == Fraction(1, 3)
    w = w_function(filtration_elem_abelian([S("X^-1"), S("X^-2")]))
    assert w.slopes() == [Fraction(1, 3), Fraction(1, 9)]
    assert w(4) == 2 and w(1) == 1


def test_herbrand_phi():
    phi = herbrand_phi(filtration_elem_abelian([S("X^-1"), S("X^-2")]))
    assert phi(1) == 1 and phi(4) == 2 and phi(7) == Fraction(7, 3)


def test_compose_w_examples():
    ident = w_function(trivial_filtration(3))
    w = w_function(filtration_cyclic_p(S("X^-4")))
    assert compose_w(w, ident) == w and compose_w(ident, w) == w
    g = w_function(Filtration(3, 1, ((2, 3),)))
    comp = compose_w(w, g)
    for x in [Fraction(k, 3) for k in range(3, 40)]:
        assert comp(x) == w(g(x))


def test_swan_examples():
    f = filtration_cyclic_p(S("X^-2"))
    assert swan_conductor(f, [2]) == 2
    assert swan_conductor(f, []) == 0 and swan_conductor(f, [0]) == 0
    f = filtration_elem_abelian([S("X^-1"), S("X^-2")])
    assert swan_conductor(f, [2]) == 2
    assert swan_conductor(f, [1]) == 1
    chars = [S("X^-1"), S("X^-2")]
    every = [c for c in character_jumps(chars) if any(c)]
    assert swan_conductor_of_characters(chars, every) == 14
    with pytest.raises(ValueError):
        swan_conductor(f, [3])


def test_filtration_validation_and_serialization():
    with pytest.raises(ValueError):
        Filtration(3, 1, ((2, 3), (4, 9)))
    with pytest.raises(ValueError):
        Filtration(3, 3)
    with pytest.raises(ValueError):
        Filtration(3, 1, ((2, 6),))
    f = Filtration(3, 2, ((1, 9), (4, 3)))
    assert Filtration.from_dict(f.to_dict()) == f
    w = w_function(f)
    assert PLFunction.from_dict(w.to_dict()) == w
    assert all(isinstance(x, str) and "/" in x for pt in w.to_dict()["breakpoints"] for x in pt)


# -- properties ------------------------------------------------------------------

@st.composite
def characters(draw, max_n=3):
    p = draw(st.sampled_from([2, 3, 5]))
    F = field(p)
    n = draw(st.integers(1, max_n if p < 5 else 2))
    chars = []
    for _ in range(n):
        m = draw(st.integers(0, 9))
        coeffs = draw(st.lists(st.integers(0, p - 1), min_size=m + 3, max_size=m + 3))
        chars.append(LaurentSeries(F, -m, coeffs, 3))
    return chars


@settings(max_examples=80)
@given(characters())
def test_lower_jumps_integral_and_conductor_discriminant(chars):
    f = filtration_elem_abelian(chars)
    table = character_jumps(chars)
    assert all(isinstance(w, int) and w >= 0 for w in wild_jumps(f, len(chars)))
    if all(j > 0 for c, j in table.items() if any(c)):
        # totally ramified: Hilbert's different formula vs conductor-discriminant
        g = f.order(0)
        different = sum(f.order(i) - 1 for i in range(0, (f.segments[-1][0] if f.segments else 0) + 1))
        dup = len(table) // g  # each character of the actual group appears dup times
        conductors = sum(j + 1 for c, j in table.items() if any(c) and j > 0) // dup
        assert different == conductors


@settings(max_examples=60)
@given(characters(max_n=2))
def test_swan_of_single_character_is_its_jump(chars):
    f = filtration_elem_abelian(chars)
    for c, j in character_jumps(chars).items():
        assert swan_conductor(f, [j]) == j
        assert swan_conductor(f, [j]).denominator == 1


def test_tame_scaling_keeps_wild_jumps():
    rnd = random.Random(4)
    for _ in range(30):
        chars = [LaurentSeries(F3, -rnd.randint(1, 8), [rnd.randrange(1, 3)] + [rnd.randrange(3) for _ in range(8)], 2)
                 for _ in range(2)]
        f = filtration_elem_abelian(chars)
        assert f.e_t == 1
        g = f.scaled(2)
        assert g.e_t == 2 and wild_jumps(g) == wild_jumps(f)
        assert w_function(g).breakpoints[0] == (1, 1)
        assert w_function(g).final_slope == w_function(f).final_slope / 2


def test_tower_composition_both_orders():
    chars = [S("X^-1"), S("X^-2")]
    for k, order in ((1, chars), (1, chars[::-1])):
        tw = tower_filtrations(order, k)
        assert compose_w(w_function(tw.quotient), w_function(tw.sub)) == w_function(tw.total)
