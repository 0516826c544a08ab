import random

import pytest
from hypothesis import given, strategies as st

from wildjet import kernels
from wildjet import _pykernels

pytestmark = pytest.mark.skipif("cython" not in kernels.BACKENDS, reason="compiled extension not built")

primes = st.sampled_from([2, 3, 5, 7, 13, 17])


def naive_mul(a, b, n, p):
    out = [0] * n
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            if i + j < n:
                out[i + j] = (out[i + j] + x * y) % p
    return out


@given(primes, st.data())
def test_mul_backends_agree(p, data):
    a = data.draw(st.lists(st.integers(0, p - 1), max_size=40))
    b = data.draw(st.lists(st.integers(0, p - 1), max_size=40))
    n = data.draw(st.integers(0, 90))
    c = kernels.BACKENDS["cython"]
    assert list(c.mul_trunc(a, b, n, p)) == _pykernels.mul_trunc(a, b, n, p) == naive_mul(a, b, n, p)


@given(primes, st.data())
def test_inv_backends_agree(p, data):
    a = data.draw(st.lists(st.integers(0, p - 1), min_size=1, max_size=40))
    a[0] = a[0] or 1
    n = data.draw(st.integers(1, 70))
    c = kernels.BACKENDS["cython"]
    inv = _pykernels.inv_trunc(a, n, p)
    assert list(c.inv_trunc(a, n, p)) == inv
    prod = naive_mul(a, inv, n, p)
    assert prod == [1] + [0] * (n - 1)


def test_set_backend_switches_series_arithmetic():
    from wildjet import LaurentSeries, field
    F = field(5)
    rnd = random.Random(0)
    s = LaurentSeries(F, -3, [rnd.randrange(1, 5)] + [rnd.randrange(5) for _ in range(60)], 64)
    results = {}
    before = kernels.BACKEND
    try:
        for name in ("python", "cython"):
            kernels.set_backend(name)
            assert kernels.BACKEND == name
            results[name] = (s * s, s.invert())
    finally:
        kernels.set_backend(before)
    assert results["python"] == results["cython"]


def test_unknown_backend():
    with pytest.raises(ValueError):
        kernels.set_backend("fortran")


def test_env_var_forces_python_backend():
    import os
    import subprocess
    import sys
    code = "from wildjet import kernels, field, LaurentSeries as L; F = field(3); " \
           "s = L(F, 0, [1, 2, 1], 8); assert (s * s.invert()).agrees_with(L.one(F, 8)); print(kernels.BACKEND)"
    env = {**os.environ, "WILDJET_PURE_PYTHON": "1"}
    res = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert res.stdout.strip() == "python"
