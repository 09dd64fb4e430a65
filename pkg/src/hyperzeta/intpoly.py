"""Dense univariate polynomial kernels over a prime field F_p.

Polynomials are plain Python lists of ints in [0, p), little-endian, with no
trailing zeros (the zero polynomial is the empty list).  These kernels back
every hot loop in the package: multiplication uses Kronecker substitution
(one big-integer multiply, which CPython performs in C), and long division
of large operands goes through Newton power-series inversion so that the
bulk of the work is again big-integer multiplies.
"""

import numpy as _np

from .errors import DivisionByZero, ZeroPolynomial

_SCHOOL_CUTOFF = 24
_NP_LIMIT = 1 << 62


def znorm(a):
    """Strip trailing zeros in place and return the list."""
    while a and a[-1] == 0:
        a.pop()
    return a


def zadd(a, b, p):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return znorm(out)


def zsub(a, b, p):
    out = list(a) + [0] * (len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return znorm(out)


def zneg(a, p):
    return [(-c) % p for c in a]


def zscale(a, c, p):
    c %= p
    if c == 0:
        return []
    return [(x * c) % p for x in a]


def zshift(a, k):
    """Multiply by x^k."""
    if not a:
        return []
    return [0] * k + list(a)


def _pack(a, width):
    return int.from_bytes(b"".join(c.to_bytes(width, "little") for c in a),
                          "little")


def _unpack(n, width, count, p):
    raw = n.to_bytes(width * count + width, "little")
    mv = memoryview(raw)
    fb = int.from_bytes
    out = [fb(mv[i:i + width], "little") % p
           for i in range(0, width * count, width)]
    return znorm(out)


def zmul(a, b, p):
    if not a or not b:
        return []
    la, lb = len(a), len(b)
    if la < _SCHOOL_CUTOFF and lb < _SCHOOL_CUTOFF:
        out = [0] * (la + lb - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return znorm([c % p for c in out])
    # unreduced convolution entries are < min(la, lb) * (p-1)^2
    bound = min(la, lb) * (p - 1) * (p - 1)
    if bound < _NP_LIMIT and la + lb < 1 << 14:
        out = _np.convolve(_np.array(a, dtype=_np.int64),
                           _np.array(b, dtype=_np.int64))
        return znorm(list((out % p).tolist()))
    # Kronecker substitution: one big-integer multiply
    width = (bound.bit_length() + 8) // 8
    prod = _pack(a, width) * _pack(b, width)
    return _unpack(prod, width, la + lb - 1, p)


def zsquare(a, p):
    return zmul(a, a, p)


def zmul_many(polys, p):
    acc = [1]
    for q in polys:
        acc = zmul(acc, q, p)
        if not acc:
            return []
    return acc


def zeval(a, x, p):
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def zderiv(a, p):
    return znorm([(i * c) % p for i, c in enumerate(a) if i > 0] if len(a) > 1 else [])


def zmonic(a, p):
    if not a:
        return []
    lc = a[-1]
    if lc == 1:
        return list(a)
    inv = pow(lc, p - 2, p)
    return [(c * inv) % p for c in a]


def zinv_series(a, n, p):
    """Inverse of a modulo x^n (a[0] must be nonzero), by Newton iteration."""
    if not a or a[0] == 0:
        raise DivisionByZero("series inversion needs a unit constant term")
    g = [pow(a[0], p - 2, p)]
    k = 1
    while k < n:
        k = min(2 * k, n)
        t = zmul(g, a[:k], p)
        # g <- g*(2 - a*g) mod x^k
        t = [(-c) % p for c in t[:k]]
        if t:
            t[0] = (t[0] + 2) % p
        else:
            t = [2 % p]
        g = zmul(g, t, p)[:k]
        znorm(g)
    return g[:n]


def zdivmod(a, b, p, rev_inv=None):
    """Quotient and remainder; b nonzero.  Uses Newton inversion when big.

    rev_inv, when given, is a precomputed series inverse of reversed(b)
    (at least to the needed quotient length)."""
    if not b:
        raise DivisionByZero("polynomial division by zero")
    da, db = len(a) - 1, len(b) - 1
    if da < db:
        return [], list(a)
    n = da - db + 1
    if db == 0:
        inv = pow(b[0], p - 2, p)
        return [(c * inv) % p for c in a], []
    if rev_inv is None and (n <= _SCHOOL_CUTOFF or db <= _SCHOOL_CUTOFF):
        return _zdivmod_school(a, b, p)
    if rev_inv is None or len(rev_inv) < n:
        rev_inv = zinv_series(list(reversed(b)), n, p)
    ra = list(reversed(a))
    q = zmul(ra[:n], rev_inv[:n], p)[:n]
    q += [0] * (n - len(q))
    q.reverse()
    q = znorm(q)
    r = zsub(a, zmul(q, b, p), p)
    return q, r


def _zdivmod_school(a, b, p):
    r = list(a)
    db = len(b) - 1
    lc_inv = pow(b[-1], p - 2, p)
    q = [0] * (len(a) - db)
    bl = b[:db]
    for i in range(len(a) - 1 - db, -1, -1):
        c = r[i + db]
        if c:
            c = (c * lc_inv) % p
            q[i] = c
            r[i + db] = 0
            r[i:i + db] = [(x - c * y) % p for x, y in zip(r[i:i + db], bl)]
    return znorm(q), znorm(r)


def zmod(a, b, p):
    return zdivmod(a, b, p)[1]


def zdivexact(a, b, p):
    q, r = zdivmod(a, b, p)
    if r:
        raise ZeroPolynomial("division was not exact")
    return q


def zgcd(a, b, p):
    """Monic gcd by the Euclidean algorithm (in-place remainder loop).

    Large degree gaps are first closed with a Newton-division remainder so
    the quadratic loop only ever runs on comparable sizes.
    """
    a, b = list(a), list(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        db = len(b) - 1
        if db == 0:
            return [1]
        if len(a) - len(b) > 64:
            a = zmod(a, b, p)
            a, b = b, a
            continue
        lc_inv = pow(b[-1], p - 2, p)
        bl = b[:db]
        for i in range(len(a) - 1 - db, -1, -1):
            c = a[i + db]
            if c:
                c = (c * lc_inv) % p
                a[i + db] = 0
                a[i:i + db] = [(x - c * y) % p for x, y in zip(a[i:i + db], bl)]
        znorm(a)
        a, b = b, a
    return zmonic(a, p)


def zxgcd(a, b, p):
    """Extended gcd: returns (g, s, t) with g = s*a + t*b, g monic."""
    r0, r1 = list(a), list(b)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = zdivmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, zsub(s0, zmul(q, s1, p), p)
        t0, t1 = t1, zsub(t0, zmul(q, t1, p), p)
    if not r0:
        return [], s0, t0
    lc_inv = pow(r0[-1], p - 2, p)
    return zscale(r0, lc_inv, p), zscale(s0, lc_inv, p), zscale(t0, lc_inv, p)


def zmodinv(a, m, p):
    """Inverse of a modulo m; raises DivisionByZero when gcd(a, m) != 1.

    In-place half-extended Euclid: tracks only the cofactor of a."""
    r0, s0 = list(m), []
    r1, s1 = zmod(a, m, p), [1]
    while True:
        if not r1:
            raise DivisionByZero(
                "element not invertible modulo the given modulus")
        d1 = len(r1) - 1
        if d1 == 0:
            inv = pow(r1[0], p - 2, p)
            return zmod(zscale(s1, inv, p), m, p)
        d0 = len(r0) - 1
        lc_inv = pow(r1[-1], p - 2, p)
        # r0 <- r0 mod r1, s0 <- s0 - q*s1 fused step by step
        while len(r0) - 1 >= d1 and r0:
            c = (r0[-1] * lc_inv) % p
            k = len(r0) - 1 - d1
            if c:
                r0[k:k + d1] = [(x - c * y) % p
                                for x, y in zip(r0[k:k + d1], r1[:d1])]
                # s0 -= c * x^k * s1
                need = k + len(s1)
                if len(s0) < need:
                    s0.extend([0] * (need - len(s0)))
                s0[k:k + len(s1)] = [(x - c * y) % p
                                     for x, y in zip(s0[k:k + len(s1)], s1)]
            r0.pop()
            while r0 and r0[-1] == 0:
                r0.pop()
        znorm(s0)
        r0, r1 = r1, r0
        s0, s1 = s1, s0


def zpowmod(a, e, m, p, rev_inv=None):
    result = [1]
    base = zdivmod(a, m, p, rev_inv=rev_inv)[1]
    while e > 0:
        if e & 1:
            result = zdivmod(zmul(result, base, p), m, p, rev_inv=rev_inv)[1]
        base = zdivmod(zmul(base, base, p), m, p, rev_inv=rev_inv)[1]
        e >>= 1
    return result


def zresultant(a, b, p):
    """Resultant via the Euclidean remainder sequence."""
    if not a or not b:
        return 0
    res = 1
    while True:
        da, db = len(a) - 1, len(b) - 1
        if db == 0:
            return (res * pow(b[0], da, p)) % p
        r = zmod(a, b, p)
        if not r:
            return 0
        dr = len(r) - 1
        res = (res * pow(b[-1], da - dr, p)) % p
        if (da * db) & 1:
            res = (-res) % p
        a, b = b, r


def zint_sqrt_mod(a, p):
    """Square root of a modulo an odd prime p, or None (Tonelli-Shanks)."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = (t2 * t2) % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, (b * b) % p
        t, r = (t * c) % p, (r * b) % p
    return r


def zsqrt_exact(a, p):
    """s with s^2 = a exactly (monic-normalized input up to a square constant),
    or None.  Newton series square root from the low end."""
    if not a:
        return []
    # strip even powers of x
    shift = 0
    while a[shift] == 0:
        shift += 1
    if shift % 2 == 1:
        return None
    a = a[shift:]
    deg = len(a) - 1
    if deg % 2 == 1:
        return None
    c0 = zint_sqrt_mod(a[0], p)
    if c0 is None:
        return None
    n = deg // 2 + 1
    inv2 = pow(2, p - 2, p)
    s = [c0]
    k = 1
    while k < n:
        k = min(2 * k, n)
        # s <- (s + a/s)/2 mod x^k
        inv_s = zinv_series(s, k, p)
        t = zmul(a[:k], inv_s, p)[:k]
        s = [(x + y) % p * inv2 % p for x, y in
             zip(s + [0] * (k - len(s)), t + [0] * (k - len(t)))]
        znorm(s)
    s = s[:n]
    znorm(s)
    if zmul(s, s, p) != znorm(list(a)):
        return None
    return zshift(s, shift // 2)


def zpseudo_divmod(a, b, p):
    """Fraction-free pseudo-division: returns (q, r, L, k) with
    L^k * a = q*b + r, L = leading coeff of b, deg r < deg b."""
    if not b:
        raise DivisionByZero("pseudo-division by zero")
    da, db = len(a) - 1, len(b) - 1
    if da < db:
        return [], list(a), b[-1], 0
    L = b[-1]
    r = list(a)
    q = [0] * (da - db + 1)
    k = 0
    for i in range(da - db, -1, -1):
        c = r[i + db]
        # multiply everything by L, then eliminate
        q = [(x * L) % p for x in q]
        r = [(x * L) % p for x in r]
        c = (c * L) % p
        k += 1
        q[i] = c
        r[i + db] = 0
        r[i:i + db] = [(x - c * y) % p for x, y in zip(r[i:i + db], b[:db])]
    return znorm(q), znorm(r), L, k


def zcrt_pair(a, ma, b, mb, p):
    """Polynomial CRT: the unique c mod ma*mb with c = a (ma), c = b (mb)."""
    g, s, _ = zxgcd(ma, mb, p)
    if g != [1]:
        raise DivisionByZero("CRT moduli are not coprime")
    delta = zmod(zsub(b, a, p), mb, p)
    corr = zmod(zmul(s, delta, p), mb, p)
    return zmod(zadd(a, zmul(ma, corr, p), p), zmul(ma, mb, p), p)


def zsquarefree_part(a, p):
    """Product of the distinct irreducible factors, monic.

    Handles p-th power content (zero derivative) by recursing on the p-th
    root, which is enough for the desk-scale odd-characteristic uses here.
    """
    if not a:
        raise ZeroPolynomial("squarefree part of the zero polynomial")
    a = zmonic(a, p)
    if len(a) == 1:
        return [1]
    d = zderiv(a, p)
    if not d:
        root = [a[i] for i in range(0, len(a), p)]
        return zsquarefree_part(root, p)
    g = zgcd(a, d, p)
    part = zdivexact(a, g, p)
    if len(g) > 1:
        extra = zsquarefree_part(g, p)
        part = zmul(part, zdivexact(extra, zgcd(extra, part, p), p), p)
    return zmonic(part, p)
