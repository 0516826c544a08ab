import random

import pytest

from conftest import rand_arc, rand_regular_arc
from wildjet import Arc, InfiniteIntersection, PrecisionExhausted, field, parse_biseries
from wildjet.arc import (
    Tangent, blow_up, blowups_to_smooth, degree, equation_of_regular_arc, hn_expand, intersect,
    intersect_via_equation, multiplicity, rebuild_arc, singularity_degree, strict_transform, tangent,
)

F3, F5 = field(3), field(5)


def A(t, u, F=F3, prec=40):
    return Arc.parse((t, u), F, prec)


def test_multiplicity_and_tangent_examples():
    assert multiplicity(A("X", "X^3")) == 1
    assert multiplicity(A("X^6 + X^7", "X^4")) == 4
    assert multiplicity(A("X^2", "X^2")) == 2
    assert tangent(A("X", "X^3")) == Tangent(0, 1)
    assert tangent(A("X", "2*X")) == Tangent(1, 1)
    assert tangent(A("X^2", "X^3")) == Tangent(0, 1)


def test_strict_transform_examples():
    st = strict_transform(A("X^3", "X^2"))
    assert st.t.agrees_with(A("X", "X").t) and st.u.agrees_with(A("X", "X^2").u)
    st = strict_transform(A("X^6 + X^7", "X^4"))
    assert st.t.agrees_with(A("X^2 + X^3", "X").t) and st.u == A("X", "X^4").u
    st = strict_transform(A("X", "X"))
    assert st.t.is_zero() and st.u == A("X", "X").u


def test_intersection_examples():
    assert intersect(A("X", "0"), A("X", "X^5")) == 5
    assert intersect(A("X^2", "X^3"), A("X^2", "X^3 + X^4")) == 7
    assert intersect(A("X", "X"), A("X", "2*X")) == 1


def test_weakly_equivalent_arcs_do_not_separate():
    c = A("X^2", "X^3")
    d = Arc.parse(("X^4", "X^6"), F3, 40)
    with pytest.raises(InfiniteIntersection) as info:
        intersect(c, c)
    assert info.value.lower_bound > 0
    with pytest.raises(InfiniteIntersection):
        intersect(c, d)


def test_hn_examples():
    hn = hn_expand(A("X", "X"))
    assert hn.r == 0 and hn.M == 0 and hn.final_row[0] == 1
    hn = hn_expand(A("X^3", "X^2"))
    assert [h for h, _ in hn.rows] == [1] and hn.rows[0][1] == (0,)
    assert hn.final_row[:2] == (0, 1) and not any(hn.final_row[2:])
    assert (hn.r, hn.M, hn.d) == (1, 1, 1)
    hn = hn_expand(A("X^6 + X^7", "X^4", F5, 64))
    assert [h for h, _ in hn.rows] == [1, 2]
    assert hn.rows[1][1] == (0, 1)
    assert (hn.r, hn.M, hn.d) == (2, 3, 1)
    assert list(hn.valuations) == [4, 2, 1]


def test_singularity_degree_and_degree_examples():
    assert singularity_degree(A("X", "X^7")) == 0
    assert singularity_degree(A("X^3", "X^2")) == 1
    assert singularity_degree(A("X^6 + X^7", "X^4", F5, 64)) == 3
    assert degree(A("X", "X^2")) == 1
    assert degree(A("X^2", "X^4")) == 2
    assert degree(A("X^2", "X^3")) == 1


def test_equation_examples():
    assert equation_of_regular_arc(A("X", "X^2")) == parse_biseries("-U + T^2", F3, 40)
    g = equation_of_regular_arc(A("2*X + X^2", "X"))
    assert g.coeffs == {(1, 0): 2, (0, 1): 2, (0, 2): 1}
    assert equation_of_regular_arc(A("X", "0")).coeffs == {(0, 1): 2}
    with pytest.raises(ValueError):
        equation_of_regular_arc(A("X^2", "X^3"))


def test_arc_validation():
    with pytest.raises(ValueError):
        A("1 + X", "X")
    with pytest.raises(PrecisionExhausted):
        A("0", "0")


def test_final_row_cap_skips_zero_coefficients():
    # u = z_1^3: the final row starts 0, 0, 1
    c = A("X^4", "X^3", F5, 64)
    hn = hn_expand(c, final_terms=1)
    assert hn.final_row == (0, 0, 1)
    assert degree(c) == 1 and hn.M == 1


# -- properties ----------------------------------------------------------------------

def _pairs(n, seed):
    rnd = random.Random(seed)
    for _ in range(n):
        F = field(rnd.choice((2, 3, 5)))
        yield rand_arc(F, rnd, prec=48, primitive=False), rand_arc(F, rnd, prec=48, primitive=False)


def test_intersection_symmetric():
    checked = 0
    for c, d in _pairs(200, 11):
        try:
            cd = intersect(c, d)
        except InfiniteIntersection:
            continue
        assert cd == intersect(d, c)
        checked += 1
    assert checked > 150


def test_blow_up_recursion():
    for c, d in _pairs(200, 12):
        try:
            cd = intersect(c, d)
        except InfiniteIntersection:
            continue
        ec, ed = multiplicity(c), multiplicity(d)
        if tangent(c) != tangent(d):
            assert cd == ec * ed
        else:
            assert cd == ec * ed + intersect(strict_transform(c), strict_transform(d))


def test_multiplicity_is_exceptional_contact():
    rnd = random.Random(13)
    for _ in range(100):
        F = field(rnd.choice((2, 3, 5)))
        c = rand_arc(F, rnd, prec=48, primitive=False)
        st, idx = blow_up(c)
        exceptional = st.u if idx == 1 else st.t
        assert exceptional.valuation() == multiplicity(c)


def test_hn_rebuild_is_weakly_equivalent():
    rnd = random.Random(14)
    for _ in range(30):
        F = field(rnd.choice((3, 5)))
        c = rand_arc(F, rnd, prec=96, max_val=6, length=6)
        hn = hn_expand(c)
        r = rebuild_arc(hn, prec=96)
        assert hn_expand(r).M == hn.M
        for _ in range(10):
            probe = rand_regular_arc(F, rnd, prec=96)
            try:
                expected = intersect(c, probe)
            except InfiniteIntersection:
                continue
            assert intersect(r, probe) == expected


def test_equation_oracle_on_singular_arcs():
    rnd = random.Random(15)
    for _ in range(100):
        F = field(rnd.choice((2, 3, 5)))
        d = rand_regular_arc(F, rnd)
        c = rand_arc(F, rnd, max_val=6, primitive=False)
        try:
            cd = intersect(c, d)
        except InfiniteIntersection:
            continue
        assert cd == intersect_via_equation(c, d)


def test_nonprimitive_arc_never_becomes_smooth():
    c = A("X^4", "X^6")
    assert hn_expand(c).d == 2 and hn_expand(c).M == 1
    with pytest.raises(PrecisionExhausted):
        blowups_to_smooth(c)


def test_arc_round_trips_through_dict():
    c = A("X^6 + X^7", "X^4")
    assert Arc.parse(c.to_dict(), F3, 40) == c
    assert c.swap().swap() == c
    assert c.reparameterize(2) == A("X^12 + X^14", "X^8", prec=80)
