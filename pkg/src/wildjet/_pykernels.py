"""Pure-Python truncated polynomial kernels over F_p.

Multiplication packs both operands into big integers (Kronecker
substitution) so the quadratic work happens inside CPython's bignum
multiply rather than in interpreted loops.
"""


def _pack(coeffs, width):
    return int.from_bytes(b"".join(c.to_bytes(width, "little") for c in coeffs), "little")


def mul_trunc(a, b, n, p):
    """First ``n`` coefficients of ``a * b`` reduced mod ``p``."""
    if n <= 0:
        return []
    a = a[:n]
    b = b[:n]
    if not a or not b:
        return [0] * n
    bound = min(len(a), len(b)) * (p - 1) ** 2
    width = (bound.bit_length() + 8) // 8
    prod = _pack(a, width) * _pack(b, width)
    raw = prod.to_bytes(width * (len(a) + len(b)), "little")
    out = [int.from_bytes(raw[i * width:(i + 1) * width], "little") % p
           for i in range(min(n, len(a) + len(b) - 1))]
    out.extend([0] * (n - len(out)))
    return out


def inv_trunc(a, n, p):
    """First ``n`` coefficients of ``1/a``; requires ``a[0] % p != 0``."""
    if n <= 0:
        return []
    b = [pow(a[0], -1, p)]
    k = 1
    while k < n:
        k = min(2 * k, n)
        ab = mul_trunc(a, b, k, p)
        # b <- b * (2 - a b)
        corr = [(-c) % p for c in ab]
        corr[0] = (corr[0] + 2) % p
        b = mul_trunc(b, corr, k, p)
    return b
