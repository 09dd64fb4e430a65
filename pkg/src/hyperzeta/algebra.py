"""Exact arithmetic: prime fields, extension fields, univariate polynomials,
rational functions, integer polynomials, factorization and CRT.

Field elements of F_{p^k} are coefficient tuples of length k (little-endian
in the power basis of the defining modulus).  A FieldCtx owns the modulus
and performs all arithmetic on raw tuples; FieldElement and UniPoly are the
ergonomic wrappers used by the rest of the package.
"""

import random

from . import intpoly as zp
from .errors import (CtxMismatch, DivisionByZero, InsufficientModulus,
                     NoSolution, ZeroPolynomial)

# ---------------------------------------------------------------------------
# primality


def is_probable_prime(n, rounds=32, seed=0):
    """Miller-Rabin with deterministic small bases plus seeded random rounds."""
    if n < 2:
        return False
    small = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]
    for q in small:
        if n % q == 0:
            return n == q
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    rng = random.Random(seed)
    bases = small + [rng.randrange(2, n - 1) for _ in range(max(0, rounds - len(small)))]
    for a in bases:
        a %= n
        if a < 2:
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = (x * x) % n
            if x == n - 1:
                break
        else:
            return False
    return True


def next_prime(n):
    n += 1
    while not is_probable_prime(n):
        n += 1
    return n


# ---------------------------------------------------------------------------
# field context


class FieldCtx:
    """The field F_{p^k} = F_p[X]/(modulus)."""

    def __init__(self, p, k=1, modulus=None, check_prime=True, prime_rounds=32):
        if check_prime and not is_probable_prime(p, rounds=prime_rounds):
            raise ValueError(f"{p} is not prime")
        if k < 1:
            raise ValueError("extension degree must be >= 1")
        self.p = p
        self.k = k
        if k == 1:
            # X - 0 convention: elements are single-coefficient tuples.
            self.modulus = [0, 1] if modulus is None else list(modulus)
        else:
            if modulus is None:
                modulus = find_irreducible_coeffs(p, k, seed=0)
            modulus = [c % p for c in modulus]
            if len(modulus) != k + 1 or modulus[-1] != 1:
                raise ValueError("modulus must be monic of degree k")
            if not _is_irreducible(modulus, p):
                raise ValueError("modulus is not irreducible")
            self.modulus = modulus
        self.q = p ** k
        self.zero = (0,) * k
        self.one = (1,) + (0,) * (k - 1)
        self._embeddings = {}
        # cached series inverse of the reversed modulus, for fast reduction
        self._rev_inv = (zp.zinv_series(list(reversed(self.modulus)), k, p)
                         if k > 1 else None)

    def __repr__(self):
        if self.k == 1:
            return f"F_{self.p}"
        return f"F_{self.p}^{self.k}"

    def __eq__(self, other):
        return (isinstance(other, FieldCtx) and self.p == other.p
                and self.k == other.k and self.modulus == other.modulus)

    def __hash__(self):
        return hash((self.p, self.k, tuple(self.modulus)))

    # -- raw tuple arithmetic ------------------------------------------------

    def el(self, value):
        """Coerce an int or coefficient iterable into a raw element tuple."""
        if isinstance(value, int):
            return (value % self.p,) + (0,) * (self.k - 1)
        t = [c % self.p for c in value]
        if len(t) > self.k:
            t = self._reduce(t)
        return tuple(t) + (0,) * (self.k - len(t))

    def _reduce(self, coeffs):
        out = zp.zdivmod([c % self.p for c in coeffs], self.modulus, self.p,
                         rev_inv=self._rev_inv)[1]
        return out + [0] * (self.k - len(out))

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple((-x) % p for x in a)

    def mul(self, a, b):
        if self.k == 1:
            return ((a[0] * b[0]) % self.p,)
        prod = zp.zmul(zp.znorm(list(a)), zp.znorm(list(b)), self.p)
        return tuple(self._reduce(prod))

    def inv(self, a):
        if not any(a):
            raise DivisionByZero("field inverse of zero")
        if self.k == 1:
            return (pow(a[0], self.p - 2, self.p),)
        inv = zp.zmodinv(zp.znorm(list(a)), self.modulus, self.p)
        return tuple(inv + [0] * (self.k - len(inv)))

    def pow(self, a, e):
        if e < 0:
            return self.pow(self.inv(a), -e)
        if self.k == 1:
            return (pow(a[0], e, self.p),)
        out = zp.zpowmod(zp.znorm(list(a)), e, self.modulus, self.p,
                         rev_inv=self._rev_inv)
        return tuple(out + [0] * (self.k - len(out)))

    def frobenius(self, a):
        """a -> a^p."""
        return self.pow(a, self.p)

    def is_zero(self, a):
        return not any(a)

    def random(self, rng):
        return tuple(rng.randrange(self.p) for _ in range(self.k))

    def elements(self):
        """Iterate over all q field elements (guarded use only)."""
        def rec(i):
            if i == self.k:
                yield ()
                return
            for rest in rec(i + 1):
                for c in range(self.p):
                    yield (c,) + rest
        return rec(0)

    # -- wrapper helpers -----------------------------------------------------

    def __call__(self, value):
        return FieldElement(self, self.el(value))

    def gen(self):
        """Image of X in F_p[X]/(modulus); equals 0 for k = 1."""
        if self.k == 1:
            return FieldElement(self, (0,))
        return FieldElement(self, (0, 1) + (0,) * (self.k - 2))


class FieldElement:
    """Element of a FieldCtx; immutable, coefficient tuple of length k."""

    __slots__ = ("ctx", "c")

    def __init__(self, ctx, coeffs):
        self.ctx = ctx
        self.c = coeffs if isinstance(coeffs, tuple) else ctx.el(coeffs)

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.ctx is not self.ctx and other.ctx != self.ctx:
                raise CtxMismatch("elements from different fields")
            return other.c
        if isinstance(other, int):
            return self.ctx.el(other)
        return NotImplemented

    def __add__(self, other):
        oc = self._coerce(other)
        if oc is NotImplemented:
            return NotImplemented
        return FieldElement(self.ctx, self.ctx.add(self.c, oc))

    __radd__ = __add__

    def __sub__(self, other):
        oc = self._coerce(other)
        if oc is NotImplemented:
            return NotImplemented
        return FieldElement(self.ctx, self.ctx.sub(self.c, oc))

    def __rsub__(self, other):
        oc = self._coerce(other)
        return FieldElement(self.ctx, self.ctx.sub(oc, self.c))

    def __mul__(self, other):
        oc = self._coerce(other)
        if oc is NotImplemented:
            return NotImplemented
        return FieldElement(self.ctx, self.ctx.mul(self.c, oc))

    __rmul__ = __mul__

    def __truediv__(self, other):
        oc = self._coerce(other)
        return FieldElement(self.ctx, self.ctx.mul(self.c, self.ctx.inv(oc)))

    def __rtruediv__(self, other):
        oc = self._coerce(other)
        return FieldElement(self.ctx, self.ctx.mul(oc, self.ctx.inv(self.c)))

    def __neg__(self):
        return FieldElement(self.ctx, self.ctx.neg(self.c))

    def __pow__(self, e):
        return FieldElement(self.ctx, self.ctx.pow(self.c, e))

    def inverse(self):
        return FieldElement(self.ctx, self.ctx.inv(self.c))

    def frobenius(self):
        return FieldElement(self.ctx, self.ctx.frobenius(self.c))

    def is_zero(self):
        return not any(self.c)

    def __bool__(self):
        return any(self.c)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.ctx == other.ctx and self.c == other.c
        if isinstance(other, int):
            return self.c == self.ctx.el(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx.p, self.ctx.k, self.c))

    def __repr__(self):
        if self.ctx.k == 1:
            return str(self.c[0])
        return str(list(self.c))


# ---------------------------------------------------------------------------
# univariate polynomials over a FieldCtx


class UniPoly:
    """Univariate polynomial with FieldCtx coefficients.

    Internally a tuple of raw element tuples (little-endian, canonical: no
    trailing zeros).  Over a prime field the hot operations drop down to
    the intpoly kernels.
    """

    __slots__ = ("ctx", "c")

    def __init__(self, ctx, coeffs):
        self.ctx = ctx
        raw = []
        for c in coeffs:
            if isinstance(c, FieldElement):
                raw.append(c.c)
            elif isinstance(c, int):
                raw.append(ctx.el(c))
            else:
                raw.append(ctx.el(c))
        while raw and not any(raw[-1]):
            raw.pop()
        self.c = tuple(raw)

    # -- construction helpers ------------------------------------------------

    @classmethod
    def from_ints(cls, ctx, ints):
        return cls(ctx, [ctx.el(i) for i in ints])

    @classmethod
    def x(cls, ctx):
        return cls(ctx, [0, 1])

    @classmethod
    def constant(cls, ctx, value):
        return cls(ctx, [value])

    @classmethod
    def _raw(cls, ctx, rawtuple):
        obj = object.__new__(cls)
        obj.ctx = ctx
        obj.c = rawtuple
        return obj

    def to_ints(self):
        """Little-endian int coefficients (prime field only)."""
        if self.ctx.k != 1:
            raise CtxMismatch("to_ints needs a prime field")
        return [c[0] for c in self.c]

    def to_int_lists(self):
        """Little-endian coefficients as lists of ints (any field)."""
        return [list(c) for c in self.c]

    # -- basic queries ---------------------------------------------------

    @property
    def degree(self):
        return len(self.c) - 1

    def is_zero(self):
        return not self.c

    def is_one(self):
        return len(self.c) == 1 and self.c[0] == self.ctx.one

    def is_monic(self):
        return bool(self.c) and self.c[-1] == self.ctx.one

    def leading(self):
        if not self.c:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return FieldElement(self.ctx, self.c[-1])

    def coeff(self, i):
        if i < len(self.c):
            return FieldElement(self.ctx, self.c[i])
        return FieldElement(self.ctx, self.ctx.zero)

    def __eq__(self, other):
        return (isinstance(other, UniPoly) and self.ctx == other.ctx
                and self.c == other.c)

    def __hash__(self):
        return hash((self.ctx.p, self.ctx.k, self.c))

    def __repr__(self):
        if not self.c:
            return "0"
        parts = []
        for i, c in enumerate(self.c):
            if not any(c):
                continue
            cs = str(c[0]) if self.ctx.k == 1 else str(list(c))
            if i == 0:
                parts.append(cs)
            elif i == 1:
                parts.append(f"{cs}*X")
            else:
                parts.append(f"{cs}*X^{i}")
        return " + ".join(reversed(parts))

    # -- arithmetic ------------------------------------------------------

    def _check(self, other):
        if self.ctx != other.ctx:
            raise CtxMismatch("polynomials over different fields")

    def __add__(self, other):
        self._check(other)
        ctx = self.ctx
        if ctx.k == 1:
            out = zp.zadd([c[0] for c in self.c], [c[0] for c in other.c], ctx.p)
            return UniPoly._raw(ctx, tuple((v,) for v in out))
        a, b = list(self.c), list(other.c)
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, cb in enumerate(b):
            out[i] = ctx.add(out[i], cb)
        while out and not any(out[-1]):
            out.pop()
        return UniPoly._raw(ctx, tuple(out))

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        ctx = self.ctx
        return UniPoly._raw(ctx, tuple(ctx.neg(c) for c in self.c))

    def __mul__(self, other):
        ctx = self.ctx
        if isinstance(other, (FieldElement, int)):
            oc = other.c if isinstance(other, FieldElement) else ctx.el(other)
            if not any(oc):
                return UniPoly._raw(ctx, ())
            out = tuple(ctx.mul(c, oc) for c in self.c)
            return UniPoly._raw(ctx, out)
        self._check(other)
        if ctx.k == 1:
            out = zp.zmul([c[0] for c in self.c], [c[0] for c in other.c], ctx.p)
            return UniPoly._raw(ctx, tuple((v,) for v in out))
        if not self.c or not other.c:
            return UniPoly._raw(ctx, ())
        la, lb = len(self.c), len(other.c)
        if (la + lb) * ctx.k > 64:
            return UniPoly._raw(ctx, _ext_poly_mul(ctx, self.c, other.c))
        out = [ctx.zero] * (la + lb - 1)
        for i, a in enumerate(self.c):
            if not any(a):
                continue
            for j, b in enumerate(other.c):
                out[i + j] = ctx.add(out[i + j], ctx.mul(a, b))
        while out and not any(out[-1]):
            out.pop()
        return UniPoly._raw(ctx, tuple(out))

    __rmul__ = __mul__

    def __divmod__(self, other):
        self._check(other)
        ctx = self.ctx
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        if ctx.k == 1:
            q, r = zp.zdivmod([c[0] for c in self.c], [c[0] for c in other.c], ctx.p)
            return (UniPoly._raw(ctx, tuple((v,) for v in q)),
                    UniPoly._raw(ctx, tuple((v,) for v in r)))
        r = list(self.c)
        db = other.degree
        q = [ctx.zero] * max(0, len(r) - db)
        lc_inv = ctx.inv(other.c[-1])
        for i in range(len(r) - 1 - db, -1, -1):
            c = r[i + db]
            if any(c):
                c = ctx.mul(c, lc_inv)
                q[i] = c
                for j, bc in enumerate(other.c):
                    r[i + j] = ctx.sub(r[i + j], ctx.mul(c, bc))
        while r and not any(r[-1]):
            r.pop()
        while q and not any(q[-1]):
            q.pop()
        return UniPoly._raw(ctx, tuple(q)), UniPoly._raw(ctx, tuple(r))

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divexact(self, other):
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ZeroPolynomial("division was not exact")
        return q

    def monic(self):
        if not self.c:
            return self
        if self.is_monic():
            return self
        return self * FieldElement(self.ctx, self.ctx.inv(self.c[-1]))

    def gcd(self, other):
        self._check(other)
        ctx = self.ctx
        if ctx.k == 1:
            g = zp.zgcd([c[0] for c in self.c], [c[0] for c in other.c], ctx.p)
            return UniPoly._raw(ctx, tuple((v,) for v in g))
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def xgcd(self, other):
        """(g, s, t) with g = s*self + t*other, g monic."""
        self._check(other)
        ctx = self.ctx
        r0, r1 = self, other
        s0 = UniPoly.constant(ctx, 1)
        s1 = UniPoly(ctx, [])
        t0 = UniPoly(ctx, [])
        t1 = UniPoly.constant(ctx, 1)
        while not r1.is_zero():
            q, r = divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        if r0.is_zero():
            return r0, s0, t0
        lc = FieldElement(ctx, ctx.inv(r0.c[-1]))
        return r0 * lc, s0 * lc, t0 * lc

    def derivative(self):
        ctx = self.ctx
        out = []
        for i in range(1, len(self.c)):
            out.append(ctx.mul(self.c[i], ctx.el(i)))
        while out and not any(out[-1]):
            out.pop()
        return UniPoly._raw(ctx, tuple(out))

    def __call__(self, x):
        """Evaluate at x (FieldElement, int, or UniPoly composition)."""
        ctx = self.ctx
        if isinstance(x, UniPoly):
            acc = UniPoly(ctx, [])
            for c in reversed(self.c):
                acc = acc * x + UniPoly._raw(ctx, (c,) if any(c) else ())
            return acc
        xc = x.c if isinstance(x, FieldElement) else ctx.el(x)
        acc = ctx.zero
        for c in reversed(self.c):
            acc = ctx.add(ctx.mul(acc, xc), c)
        return FieldElement(ctx, acc)

    def compose_mod(self, g, m):
        """self(g) mod m via Horner on modular products."""
        ctx = self.ctx
        acc = UniPoly(ctx, [])
        gm = g % m
        for c in reversed(self.c):
            acc = (acc * gm + UniPoly._raw(ctx, (c,) if any(c) else ())) % m
        return acc

    def resultant(self, other):
        """Resultant per the Sylvester determinant, via the PRS identity."""
        self._check(other)
        ctx = self.ctx
        if ctx.k == 1:
            r = zp.zresultant([c[0] for c in self.c], [c[0] for c in other.c], ctx.p)
            return FieldElement(ctx, (r,))
        a, b = self, other
        if a.is_zero() or b.is_zero():
            return FieldElement(ctx, ctx.zero)
        res = FieldElement(ctx, ctx.one)
        while True:
            da, db = a.degree, b.degree
            if db == 0:
                return res * (b.leading() ** da)
            r = a % b
            if r.is_zero():
                return FieldElement(ctx, ctx.zero)
            res = res * (b.leading() ** (da - r.degree))
            if (da * db) % 2 == 1:
                res = -res
            a, b = b, r

    def squarefree_part(self):
        ctx = self.ctx
        if ctx.k == 1:
            out = zp.zsquarefree_part([c[0] for c in self.c], ctx.p)
            return UniPoly._raw(ctx, tuple((v,) for v in out))
        if self.is_zero():
            raise ZeroPolynomial("squarefree part of zero")
        a = self.monic()
        d = a.derivative()
        if d.is_zero():
            root = UniPoly(ctx, [a.coeff(i) for i in range(0, a.degree + 1, ctx.p)])
            return root.squarefree_part()
        g = a.gcd(d)
        part = a.divexact(g)
        if g.degree > 0:
            extra = g.squarefree_part()
            part = part * extra.divexact(extra.gcd(part))
        return part.monic()

    def shift_x(self, k):
        """Multiply by X^k."""
        if not self.c:
            return self
        return UniPoly._raw(self.ctx, (self.ctx.zero,) * k + self.c)


def _ext_poly_mul(ctx, ac, bc):
    """Polynomial product over F_{p^k} by two-level Kronecker packing.

    Elements are laid out as blocks of 2k-1 base-field slots so the single
    integer product recovers the exact bivariate convolution; each output
    block is then reduced modulo the field modulus."""
    p, k = ctx.p, ctx.k
    la, lb = len(ac), len(bc)
    block = 2 * k - 1
    bound = min(la, lb) * min(k, k) * (p - 1) * (p - 1) * max(la, lb)
    bound = min(la, lb) * k * (p - 1) * (p - 1)
    width = (bound.bit_length() + 8) // 8

    def pack(cs):
        buf = bytearray(width * block * len(cs))
        pos = 0
        for el in cs:
            off = pos
            for v in el:
                buf[off:off + width] = v.to_bytes(width, "little")
                off += width
            pos += width * block
        return int.from_bytes(bytes(buf), "little")

    prod = pack(ac) * pack(bc)
    nblocks = la + lb - 1
    raw = prod.to_bytes(width * block * nblocks + width * block, "little")
    mv = memoryview(raw)
    fb = int.from_bytes
    out = []
    rev = ctx._rev_inv
    mod = ctx.modulus
    for t in range(nblocks):
        base = t * block * width
        coeffs = [fb(mv[base + j * width: base + (j + 1) * width],
                     "little") % p for j in range(block)]
        red = zp.zdivmod(zp.znorm(coeffs), mod, p, rev_inv=rev)[1]
        out.append(tuple(red + [0] * (k - len(red))))
    while out and not any(out[-1]):
        out.pop()
    return tuple(out)


# ---------------------------------------------------------------------------
# irreducibility / factorization


def _is_irreducible(m, p):
    """Irreducibility of a monic m over F_p (distinct-degree criterion)."""
    k = len(m) - 1
    if k <= 0:
        return False
    if k == 1:
        return True
    x = [0, 1]
    xq = zp.zpowmod(x, p ** k, m, p)
    if zp.zsub(xq, x, p):
        return False
    for r in _prime_divisors(k):
        xe = zp.zpowmod(x, p ** (k // r), m, p)
        if zp.zgcd(zp.zsub(xe, x, p), m, p) != [1]:
            return False
    return True


def _prime_divisors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def find_irreducible_coeffs(p, k, seed=0):
    """Monic irreducible of degree k over F_p as an int list; seeded search."""
    if k == 1:
        return [0, 1]
    rng = random.Random((seed, p, k).__hash__())
    # Deterministic sweep first for tiny fields, then seeded random probes.
    if p ** k <= 4096:
        for tail in _small_tails(p, k):
            m = tail + [1]
            if _is_irreducible(m, p):
                return m
    while True:
        m = [rng.randrange(p) for _ in range(k)] + [1]
        if _is_irreducible(m, p):
            return m


def _small_tails(p, k):
    def rec(i):
        if i == k:
            yield []
            return
        for rest in rec(i + 1):
            for c in range(p):
                yield [c] + rest
    return ([c0] + rest for rest in rec(1) for c0 in range(p))


def find_irreducible(p, k, seed=0):
    """UniPoly version of the seeded irreducible search (over F_p)."""
    ctx = FieldCtx(p, 1)
    return UniPoly.from_ints(ctx, find_irreducible_coeffs(p, k, seed=seed))


def factor(poly, mode="full", seed=0):
    """Factor a UniPoly.

    mode 'roots': list of FieldElement roots in the coefficient field
    (with multiplicity, each root listed once with its multiplicity as a
    (root, multiplicity) pair).
    mode 'squarefree_part': the radical as a UniPoly.
    mode 'full': list of (irreducible UniPoly, multiplicity), plus the
    leading coefficient folded back so the product reproduces the input.
    """
    if poly.is_zero():
        raise ZeroPolynomial("cannot factor the zero polynomial")
    if mode == "squarefree_part":
        return poly.squarefree_part()
    if mode == "roots":
        return _roots(poly, seed)
    if mode == "full":
        return _factor_full(poly, seed)
    raise ValueError(f"unknown factor mode {mode!r}")


def _roots(poly, seed=0):
    """All roots in the coefficient field, as (root, multiplicity) pairs."""
    ctx = poly.ctx
    out = []
    if poly.degree < 1:
        return out
    for fac, mult in _factor_full(poly, seed):
        if fac.degree == 1:
            root = -fac.coeff(0)
            out.append((root, mult))
    return out


def roots(poly, seed=0):
    """Convenience: just the roots (no multiplicities)."""
    return [r for r, _ in _roots(poly, seed)]


def _factor_full(poly, seed=0):
    ctx = poly.ctx
    lc = poly.leading()
    monic = poly.monic()
    result = {}
    for sq, mult in _squarefree_decomposition(monic):
        for deg, prod in _distinct_degree(sq):
            for irr in _equal_degree(prod, deg, seed):
                key = irr
                result[key] = result.get(key, 0) + mult
    factors = sorted(result.items(), key=lambda kv: (kv[0].degree, kv[0].c))
    out = [(f, m) for f, m in factors]
    if not (lc == 1):
        # fold leading coefficient into a degree-0 factor
        out.insert(0, (UniPoly.constant(ctx, lc), 1))
    return out


def _squarefree_decomposition(a):
    """Yun-style decomposition: yields (squarefree factor, multiplicity)."""
    ctx = a.ctx
    p = ctx.p
    out = []
    while a.degree > 0:
        d = a.derivative()
        if d.is_zero():
            # a is a p-th power
            root = UniPoly(ctx, [a.coeff(i) for i in range(0, a.degree + 1, p)])
            for f, m in _squarefree_decomposition(root):
                out.append((f, m * p))
            return out
        g = a.gcd(d)
        w = a.divexact(g)
        i = 1
        while w.degree > 0:
            y = w.gcd(g)
            z = w.divexact(y)
            if z.degree > 0:
                out.append((z, i))
            w = y
            g = g.divexact(y)
            i += 1
        a = g
    return out


def _distinct_degree(a):
    """Yields (d, product of irreducible factors of degree d) for monic squarefree a."""
    ctx = a.ctx
    q = ctx.q
    x = UniPoly.x(ctx)
    h = x
    d = 0
    out = []
    while a.degree > 0:
        d += 1
        if 2 * d > a.degree:
            out.append((a.degree, a))
            break
        h = _powmod_poly(h, q, a)
        g = a.gcd(h - x)
        if g.degree > 0:
            out.append((d, g))
            a = a.divexact(g)
            h = h % a
    return out


def _powmod_poly(base, e, m):
    ctx = base.ctx
    result = UniPoly.constant(ctx, 1)
    b = base % m
    while e > 0:
        if e & 1:
            result = (result * b) % m
        b = (b * b) % m
        e >>= 1
    return result


def _equal_degree(a, d, seed=0):
    """Cantor-Zassenhaus split of a product of degree-d irreducibles."""
    ctx = a.ctx
    n = a.degree
    if n == d:
        return [a.monic()]
    rng = random.Random((seed, ctx.p, ctx.k, tuple(a.c).__hash__(), d).__hash__())
    q = ctx.q
    while True:
        r = UniPoly(ctx, [ctx.random(rng) for _ in range(n)])
        if r.degree < 1:
            continue
        g = a.gcd(r)
        if 0 < g.degree < n:
            break
        if q % 2 == 1:
            h = _powmod_poly(r, (q ** d - 1) // 2, a)
            g = a.gcd(h - UniPoly.constant(ctx, 1))
            if 0 < g.degree < n:
                break
        else:
            # char 2: trace map splitting
            t = r
            acc = r
            for _ in range(d * ctx.k - 1):
                t = (t * t) % a
                acc = acc + t
            g = a.gcd(acc)
            if 0 < g.degree < n:
                break
    left = _equal_degree(g.monic(), d, seed)
    right = _equal_degree(a.divexact(g).monic(), d, seed)
    return left + right


# ---------------------------------------------------------------------------
# rational functions


class RationalFunction:
    """Quotient num/den of UniPoly with monic denominator and gcd 1."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, reduce=True):
        ctx = num.ctx
        if den is None:
            den = UniPoly.constant(ctx, 1)
        if den.is_zero():
            raise DivisionByZero("rational function with zero denominator")
        if reduce:
            if not num.is_zero():
                g = num.gcd(den)
                if g.degree > 0:
                    num = num.divexact(g)
                    den = den.divexact(g)
            else:
                den = UniPoly.constant(ctx, 1)
            if not den.is_monic():
                lc = FieldElement(ctx, ctx.inv(den.c[-1]))
                num = num * lc
                den = den * lc
        self.num = num
        self.den = den

    @classmethod
    def constant(cls, ctx, value):
        return cls(UniPoly.constant(ctx, value))

    @property
    def ctx(self):
        return self.num.ctx

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def __add__(self, other):
        other = self._coerce(other)
        g = self.den.gcd(other.den)
        if g.degree == 0:
            num = self.num * other.den + other.num * self.den
            return RationalFunction(num, self.den * other.den)
        da = self.den.divexact(g)
        db = other.den.divexact(g)
        num = self.num * db + other.num * da
        return RationalFunction(num, da * other.den)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return RationalFunction(-self.num, self.den, reduce=False)

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, UniPoly):
            return RationalFunction(other)
        if isinstance(other, (int, FieldElement)):
            return RationalFunction(UniPoly.constant(self.ctx, other))
        raise TypeError(f"cannot coerce {other!r}")

    def __mul__(self, other):
        other = self._coerce(other)
        # cross-cancel before multiplying to keep gcd inputs operand-sized
        a, d = self.num, other.den
        g = a.gcd(d)
        if g.degree > 0:
            a, d = a.divexact(g), d.divexact(g)
        b, c = other.num, self.den
        g = b.gcd(c)
        if g.degree > 0:
            b, c = b.divexact(g), c.divexact(g)
        return RationalFunction(a * b, c * d)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other.num.is_zero():
            raise DivisionByZero("rational function division by zero")
        return self * RationalFunction(other.den, other.num)

    def inverse(self):
        if self.num.is_zero():
            raise DivisionByZero("inverse of the zero rational function")
        return RationalFunction(self.den, self.num)

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            try:
                other = self._coerce(other)
            except TypeError:
                return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        if self.den.is_one():
            return repr(self.num)
        return f"({self.num!r})/({self.den!r})"

    def __call__(self, x):
        dv = self.den(x)
        if not dv:
            raise DivisionByZero("denominator vanishes at evaluation point")
        return self.num(x) / dv


# ---------------------------------------------------------------------------
# integer polynomials (for chi and P_C)


class IntPoly:
    """Polynomial with arbitrary-precision integer coefficients."""

    __slots__ = ("c",)

    def __init__(self, coeffs):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.c = tuple(c)

    @property
    def degree(self):
        return len(self.c) - 1

    def coeff(self, i):
        return self.c[i] if i < len(self.c) else 0

    def __eq__(self, other):
        return isinstance(other, IntPoly) and self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __add__(self, other):
        n = max(len(self.c), len(other.c))
        return IntPoly([self.coeff(i) + other.coeff(i) for i in range(n)])

    def __sub__(self, other):
        n = max(len(self.c), len(other.c))
        return IntPoly([self.coeff(i) - other.coeff(i) for i in range(n)])

    def __mul__(self, other):
        if not self.c or not other.c:
            return IntPoly([])
        out = [0] * (len(self.c) + len(other.c) - 1)
        for i, a in enumerate(self.c):
            for j, b in enumerate(other.c):
                out[i + j] += a * b
        return IntPoly(out)

    def __neg__(self):
        return IntPoly([-a for a in self.c])

    def __call__(self, x):
        acc = 0
        for c in reversed(self.c):
            acc = acc * x + c
        return acc

    def reduce_mod(self, ell):
        return [c % ell for c in self.c]

    def __repr__(self):
        return f"IntPoly({list(self.c)})"


# ---------------------------------------------------------------------------
# CRT


def crt_reconstruct(residues, bound):
    """Unique integer in [-bound, bound] matching all (residue, modulus) pairs.

    Raises NoSolution on inconsistent residues and InsufficientModulus when
    the combined modulus cannot separate the symmetric range.
    """
    x = 0
    m = 1
    for r, mod in residues:
        if mod <= 0:
            raise NoSolution("moduli must be positive")
        # combine x mod m with r mod mod
        g, s, _ = _int_xgcd(m, mod)
        if (r - x) % g != 0:
            raise NoSolution("inconsistent residues")
        lcm = m // g * mod
        x = (x + (r - x) // g * s % (mod // g) * m) % lcm
        m = lcm
    if m <= 2 * bound:
        raise InsufficientModulus(
            f"modulus product {m} cannot separate [-{bound}, {bound}]")
    x %= m
    if x > m // 2:
        x -= m
    if abs(x) > bound:
        raise NoSolution(f"reconstructed value {x} exceeds bound {bound}")
    return x


def _int_xgcd(a, b):
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


# ---------------------------------------------------------------------------
# embeddings between extension fields


def embed(src, dst, seed=0):
    """Embedding map F_{p^a} -> F_{p^b} (a | b); returns a callable on raw tuples.

    Computed by locating a root of src's modulus in dst; cached on src.
    """
    if src.p != dst.p:
        raise CtxMismatch("embeddings need a common characteristic")
    if dst.k % src.k != 0:
        raise CtxMismatch("no embedding: source degree does not divide target")
    key = (dst.p, dst.k, tuple(dst.modulus))
    if key in src._embeddings:
        return src._embeddings[key]
    if src.k == 1:
        def emb(t):
            return (t[0],) + (0,) * (dst.k - 1)
        src._embeddings[key] = emb
        return emb
    mod_in_dst = UniPoly(dst, [dst.el(c) for c in src.modulus])
    rts = roots(mod_in_dst, seed=seed)
    if not rts:
        raise CtxMismatch("modulus has no root in the target field")
    root = min(rts, key=lambda r: r.c)
    powers = [dst.el(1)]
    for _ in range(src.k - 1):
        powers.append(dst.mul(powers[-1], root.c))

    def emb(t):
        acc = dst.zero
        for c, pw in zip(t, powers):
            if c:
                acc = dst.add(acc, dst.mul(dst.el(c), pw))
        return acc

    src._embeddings[key] = emb
    return emb
