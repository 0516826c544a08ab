import pytest
from hypothesis import given, settings, strategies as st

from wildjet import NoRoot, field
from wildjet.field import first_irreducible

FIELDS = [(2, 1), (3, 1), (5, 1), (2, 3), (3, 2), (5, 2), (7, 1)]


@st.composite
def field_and_elements(draw, n=3):
    F = field(*draw(st.sampled_from(FIELDS)))
    return (F, *[draw(st.integers(0, F.q - 1)) for _ in range(n)])


def test_examples():
    F3, F5 = field(3), field(5)
    assert F3.inv(2) == 2
    assert F3.add(2, 2) == 1
    assert F5.mul(3, 4) == 2
    assert F3.pth_root(2) == 2 and F3.pth_root(0) == 0
    assert F5.pth_root(3) == 3
    assert F3.lth_root(1, 2) == 1
    assert F5.lth_root(4, 2) == 2
    with pytest.raises(NoRoot):
        F3.lth_root(2, 2)


def test_inverse_of_zero():
    with pytest.raises(ZeroDivisionError):
        field(3).inv(0)


@pytest.mark.parametrize("p,e", [(17, 1), (2, 8), (3, 4)])
def test_construction_limits(p, e):
    F = field(p, e)
    assert F.q == p**e
    assert field(p, e) is F


@pytest.mark.parametrize("p,e", [(4, 1), (19, 1), (2, 0)])
def test_rejects_bad_parameters(p, e):
    with pytest.raises(ValueError):
        field(p, e)


@pytest.mark.parametrize("p,e", [(2, 2), (2, 3), (3, 2), (3, 3), (5, 2)])
def test_modulus_is_irreducible(p, e):
    m = first_irreducible(p, e)
    # brute force: no monic factor of degree 1..e//2
    from itertools import product
    from wildjet.field import _polymod
    for d in range(1, e // 2 + 1):
        for tail in product(range(p), repeat=d):
            assert any(_polymod(list(m), list(tail) + [1], p))


@given(field_and_elements())
def test_field_axioms(data):
    F, a, b, c = data
    assert F.add(a, F.add(b, c)) == F.add(F.add(a, b), c)
    assert F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, F.neg(a)) == 0
    assert F.mul(a, b) == F.mul(b, a)
    if a:
        assert F.mul(a, F.inv(a)) == 1


@pytest.mark.parametrize("p,e", FIELDS)
def test_frobenius_roots_exhaustive(p, e):
    F = field(p, e)
    roots = {F.pth_root(a) for a in range(F.q)}
    assert len(roots) == F.q
    for a in range(F.q):
        assert F.pow(F.pth_root(a), p) == a


@pytest.mark.parametrize("p,e", FIELDS)
@pytest.mark.parametrize("l", [2, 3, 5])
def test_lth_root_exists_iff_euler_criterion(p, e, l):
    from math import gcd
    F = field(p, e)
    g = gcd(l, F.q - 1)
    for a in range(1, F.q):
        has = F.pow(a, (F.q - 1) // g) == 1
        try:
            r = F.lth_root(a, l)
        except NoRoot:
            assert not has
        else:
            assert has and F.pow(r, l) == a
            assert all(F.pow(x, l) != a for x in range(r))


@settings(max_examples=50)
@given(field_and_elements(2))
def test_element_wrapper_matches_codes(data):
    F, a, b = data
    x, y = F.from_code(a), F.from_code(b)
    assert (x + y).code == F.add(a, b)
    assert (x * y).code == F.mul(a, b)
    assert (x - y).code == F.sub(a, b)
    if b:
        assert (x / y).code == F.div(a, b)


def test_roots_of_unity():
    F9 = field(3, 2)
    z = F9.primitive_root_of_unity(4)
    assert F9.pow(z, 4) == 1 and F9.pow(z, 2) != 1
    assert sorted(F9.roots_of_unity(2)) == [1, 2]
    with pytest.raises(NoRoot):
        field(3).primitive_root_of_unity(4)


def test_trace_is_additive_and_onto_prime_field():
    F = field(3, 2)
    assert {F.trace(a) for a in range(F.q)} == {0, 1, 2}
    for a in range(F.q):
        for b in range(F.q):
            assert F.trace(F.add(a, b)) == (F.trace(a) + F.trace(b)) % 3
