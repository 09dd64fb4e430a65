"""Hyperelliptic curves y^2 = f(x), Mumford divisors and Cantor's group law.

The composition/reduction core works on plain lists of coefficient objects
(anything with +, -, *, inverse() and is_zero()), so the same code serves
ordinary field elements, function-field elements and quotient-ring elements
with dynamic evaluation.
"""

import random

from .algebra import FieldCtx, FieldElement, UniPoly, embed
from .errors import CtxMismatch, TooLarge, ZeroPolynomial

ENUM_GUARD = 1 << 24


# ---------------------------------------------------------------------------
# generic polynomial helpers over a coefficient domain
#
# A domain is any object with attributes `zero` and `one` holding coefficient
# objects; coefficients support +, -, *, .inverse(), .is_zero().


def xp_trim(c):
    while c and c[-1].is_zero():
        c.pop()
    return c


def xp_add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, cb in enumerate(b):
        out[i] = out[i] + cb
    return xp_trim(out)


def xp_sub(a, b, dom):
    out = list(a) + [dom.zero] * (len(b) - len(a))
    for i, cb in enumerate(b):
        out[i] = out[i] - cb
    return xp_trim(out)


def xp_neg(a):
    return [-c for c in a]


def xp_mul(a, b, dom):
    if not a or not b:
        return []
    out = [dom.zero] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca.is_zero():
            continue
        for j, cb in enumerate(b):
            out[i + j] = out[i + j] + ca * cb
    return xp_trim(out)


def xp_scale(a, c):
    return xp_trim([x * c for x in a])


def xp_divmod(a, b, dom):
    if not b:
        raise ZeroPolynomial("division by the zero polynomial")
    r = list(a)
    db = len(b) - 1
    if len(r) - 1 < db:
        return [], xp_trim(r)
    inv = b[-1].inverse()
    q = [dom.zero] * (len(r) - db)
    for i in range(len(r) - 1 - db, -1, -1):
        c = r[i + db]
        if not c.is_zero():
            c = c * inv
            q[i] = c
            for j in range(db + 1):
                r[i + j] = r[i + j] - c * b[j]
    return xp_trim(q), xp_trim(r)


def xp_mod(a, b, dom):
    return xp_divmod(a, b, dom)[1]


def xp_monic(a):
    if not a:
        return a
    inv = a[-1].inverse()
    return [c * inv for c in a]


def xp_xgcd(a, b, dom):
    """(g, s, t) with g = s*a + t*b; g monic."""
    r0, r1 = list(a), list(b)
    s0, s1 = [dom.one], []
    t0, t1 = [], [dom.one]
    while r1:
        q, r = xp_divmod(r0, r1, dom)
        r0, r1 = r1, r
        s0, s1 = s1, xp_sub(s0, xp_mul(q, s1, dom), dom)
        t0, t1 = t1, xp_sub(t0, xp_mul(q, t1, dom), dom)
    if not r0:
        return [], s0, t0
    inv = r0[-1].inverse()
    return xp_scale(r0, inv), xp_scale(s0, inv), xp_scale(t0, inv)


def xp_eval(a, x, dom):
    acc = dom.zero
    for c in reversed(a):
        acc = acc * x + c
    return acc


# ---------------------------------------------------------------------------
# Cantor composition and reduction over a domain


def cantor_compose(u1, v1, u2, v2, f, dom):
    """Composition step: semi-reduced ⟨U, V⟩ representing the divisor sum."""
    d0, e1, e2 = xp_xgcd(u1, u2, dom)
    vsum = xp_add(v1, v2)
    d, c1, c2 = xp_xgcd(d0, vsum, dom)
    # d = s1 u1 + s2 u2 + s3 (v1+v2)
    s1 = xp_mul(c1, e1, dom)
    s2 = xp_mul(c1, e2, dom)
    s3 = c2
    u = xp_mul(u1, u2, dom)
    dd = xp_mul(d, d, dom)
    u, rem = xp_divmod(u, dd, dom)
    assert not rem, "composition gcd does not divide u1*u2"
    # V = (s1 u1 v2 + s2 u2 v1 + s3 (v1 v2 + f)) / d  mod U
    t = xp_mul(xp_mul(s1, u1, dom), v2, dom)
    t = xp_add(t, xp_mul(xp_mul(s2, u2, dom), v1, dom))
    t = xp_add(t, xp_mul(s3, xp_add(xp_mul(v1, v2, dom), f), dom))
    t, rem = xp_divmod(t, d, dom)
    assert not rem, "composition gcd does not divide the v-combination"
    v = xp_mod(t, u, dom)
    return xp_monic(u), v


def cantor_reduce(u, v, f, g, dom):
    """Reduction to the unique weight <= g representative."""
    while len(u) - 1 > g:
        unew = xp_sub(f, xp_mul(v, v, dom), dom)
        unew, rem = xp_divmod(unew, u, dom)
        assert not rem, "reduction division not exact"
        unew = xp_monic(unew)
        v = xp_neg(xp_mod(v, unew, dom))
        u = unew
    if not u:
        u = [dom.one]
    return u, v


class FieldDomain:
    """Domain adapter for FieldCtx coefficients."""

    __slots__ = ("ctx", "zero", "one")

    def __init__(self, ctx):
        self.ctx = ctx
        self.zero = FieldElement(ctx, ctx.zero)
        self.one = FieldElement(ctx, ctx.one)


# ---------------------------------------------------------------------------
# curves and points


class HyperellipticCurve:
    """y^2 = f(x) with f monic squarefree of odd degree 2g+1, odd char."""

    def __init__(self, ctx, f, q0=None, check=True):
        if not isinstance(f, UniPoly):
            f = UniPoly.from_ints(ctx, f)
        if f.ctx != ctx:
            raise CtxMismatch("f not over the given field")
        if check:
            if ctx.p == 2:
                raise ValueError("odd characteristic required")
            if f.degree < 3 or f.degree % 2 == 0:
                raise ValueError("f must have odd degree 2g+1 >= 3")
            if not f.is_monic():
                raise ValueError("f must be monic")
            if f.gcd(f.derivative()).degree != 0:
                raise ValueError("f must be squarefree")
        self.ctx = ctx
        self.f = f
        self.g = (f.degree - 1) // 2
        self.q0 = q0 if q0 is not None else ctx.q
        self._dom = FieldDomain(ctx)

    def __repr__(self):
        return f"y^2 = {self.f!r} over {self.ctx!r}"

    def __eq__(self, other):
        return (isinstance(other, HyperellipticCurve) and self.ctx == other.ctx
                and self.f == other.f and self.q0 == other.q0)

    def lift(self, ext_ctx, seed=0):
        """The same curve base-changed to an extension field."""
        emb = embed(self.ctx, ext_ctx, seed=seed)
        f_ext = UniPoly(ext_ctx, [FieldElement(ext_ctx, emb(c)) for c in self.f.c])
        return HyperellipticCurve(ext_ctx, f_ext, q0=self.q0, check=False)

    def identity(self):
        return MumfordDivisor(self, UniPoly.constant(self.ctx, 1),
                              UniPoly(self.ctx, []), check=False)

    def point(self, x, y):
        return CurvePoint(self, self.ctx(x) if isinstance(x, int) else x,
                          self.ctx(y) if isinstance(y, int) else y)

    def is_on_curve(self, x, y):
        return y * y == self.f(x)


class CurvePoint:
    """Affine point (x, y) with y^2 = f(x), or the point at infinity."""

    __slots__ = ("curve", "x", "y", "infinite")

    def __init__(self, curve, x=None, y=None, infinite=False):
        self.curve = curve
        self.infinite = infinite
        if not infinite:
            if not curve.is_on_curve(x, y):
                raise ValueError("point not on curve")
            self.x = x
            self.y = y

    @classmethod
    def infinity(cls, curve):
        return cls(curve, infinite=True)

    def to_divisor(self):
        """The class of P - infinity in Mumford form."""
        if self.infinite:
            return self.curve.identity()
        ctx = self.curve.ctx
        u = UniPoly(ctx, [-self.x, ctx(1)])
        v = UniPoly(ctx, [self.y])
        return MumfordDivisor(self.curve, u, v)

    def __neg__(self):
        if self.infinite:
            return self
        return CurvePoint(self.curve, self.x, -self.y)

    def __eq__(self, other):
        if not isinstance(other, CurvePoint):
            return NotImplemented
        if self.infinite or other.infinite:
            return self.infinite and other.infinite
        return self.x == other.x and self.y == other.y

    def __repr__(self):
        return "Inf" if self.infinite else f"({self.x!r}, {self.y!r})"


class MumfordDivisor:
    """Reduced divisor ⟨u, v⟩: u monic, deg v < deg u <= g, u | v^2 - f."""

    __slots__ = ("curve", "u", "v")

    def __init__(self, curve, u, v, check=True):
        ctx = curve.ctx
        if not u.is_monic():
            if u.is_zero():
                raise ValueError("u must be nonzero")
            u = u.monic()
        if check:
            if u.degree > curve.g:
                raise ValueError("weight exceeds genus")
            if v.degree >= max(u.degree, 1) and u.degree > 0:
                v = v % u
            if not ((v * v - curve.f) % u).is_zero():
                raise ValueError("u does not divide v^2 - f")
            if u.degree == 0:
                v = UniPoly(ctx, [])
        self.curve = curve
        self.u = u
        self.v = v

    @property
    def weight(self):
        return self.u.degree

    def is_identity(self):
        return self.u.degree == 0

    def __eq__(self, other):
        return (isinstance(other, MumfordDivisor) and self.curve == other.curve
                and self.u == other.u and self.v == other.v)

    def __hash__(self):
        return hash((self.u, self.v))

    def __repr__(self):
        return f"<{self.u!r}, {self.v!r}>"

    def __neg__(self):
        # -⟨u, v⟩ = ⟨u, -v mod u⟩
        if self.is_identity():
            return self
        return MumfordDivisor(self.curve, self.u, (-self.v) % self.u, check=False)

    def __add__(self, other):
        return compose_reduce(self, other)

    def __sub__(self, other):
        return compose_reduce(self, -other)

    def __rmul__(self, n):
        if isinstance(n, int):
            return scalar_mul(n, self)
        return NotImplemented

    def serialize(self):
        return {"u": [list(c) for c in self.u.c], "v": [list(c) for c in self.v.c]}

    def key(self):
        """Canonical hashable form for dictionaries."""
        return (self.u.c, self.v.c)


def compose_semi_reduced(d1, d2):
    """Cantor composition only: the semi-reduced ⟨U, V⟩ before reduction."""
    if d1.curve != d2.curve:
        raise CtxMismatch("divisors on different curves")
    curve = d1.curve
    dom = curve._dom
    u, v = cantor_compose(list(d1.u.c_elems()), list(d1.v.c_elems()),
                          list(d2.u.c_elems()), list(d2.v.c_elems()),
                          list(curve.f.c_elems()), dom)
    return (UniPoly(curve.ctx, u), UniPoly(curve.ctx, v))


def compose_reduce(d1, d2):
    if d1.curve != d2.curve:
        raise CtxMismatch("divisors on different curves")
    curve = d1.curve
    if d1.is_identity():
        return d2
    if d2.is_identity():
        return d1
    dom = curve._dom
    f = list(curve.f.c_elems())
    u, v = cantor_compose(list(d1.u.c_elems()), list(d1.v.c_elems()),
                          list(d2.u.c_elems()), list(d2.v.c_elems()), f, dom)
    u, v = cantor_reduce(u, v, f, curve.g, dom)
    return MumfordDivisor(curve, UniPoly(curve.ctx, u), UniPoly(curve.ctx, v),
                          check=False)


def scalar_mul(n, d):
    """n * D by double-and-add; scalar_mul(0, D) is the identity."""
    if n < 0:
        return scalar_mul(-n, -d)
    result = d.curve.identity()
    base = d
    while n > 0:
        if n & 1:
            result = compose_reduce(result, base)
        n >>= 1
        if n:
            base = compose_reduce(base, base)
    return result


def frobenius_divisor(d):
    """Coefficientwise x -> x^q0 where q0 is the base-curve field size."""
    curve = d.curve
    ctx = curve.ctx
    q0 = curve.q0

    def fr(poly):
        return UniPoly(ctx, [FieldElement(ctx, ctx.pow(c, q0)) for c in poly.c])

    return MumfordDivisor(curve, fr(d.u), fr(d.v), check=False)


# helper: expose UniPoly coefficients as FieldElement list


def _c_elems(self):
    return [FieldElement(self.ctx, c) for c in self.c]


UniPoly.c_elems = _c_elems


# ---------------------------------------------------------------------------
# naive enumeration oracles


def extension_ctx(ctx, e, seed=0):
    """F_{q^e} as an extension of ctx = F_{p^k} (a fresh F_{p^{k e}} ctx)."""
    if e == 1:
        return ctx
    from .algebra import find_irreducible_coeffs
    mod = find_irreducible_coeffs(ctx.p, ctx.k * e, seed=seed)
    return FieldCtx(ctx.p, ctx.k * e, mod, check_prime=False)


def count_points_naive(curve, i=1, guard=ENUM_GUARD, seed=0):
    """#C(F_{q^i}) by enumeration: 1 + sum over x of (1 + chi2(f(x)))."""
    ctx = curve.ctx
    qi = ctx.q ** i
    if qi > guard:
        raise TooLarge(f"q^i = {qi} exceeds enumeration guard {guard}")
    if i == 1:
        ext = curve
    else:
        ext = curve.lift(extension_ctx(ctx, i, seed=seed), seed=seed)
    ectx = ext.ctx
    half = (ectx.q - 1) // 2
    count = 1
    f = ext.f
    for xt in ectx.elements():
        fx = f(FieldElement(ectx, xt))
        if fx.is_zero():
            count += 1
        elif fx ** half == 1:
            count += 2
    return count


def enumerate_jacobian(curve, e=1, guard=ENUM_GUARD, seed=0):
    """All reduced divisors over F_{q^e}; exponential, guarded."""
    ctx = curve.ctx
    if (ctx.q ** e) ** curve.g > guard:
        raise TooLarge("jacobian enumeration guard exceeded")
    ext = curve if e == 1 else curve.lift(extension_ctx(ctx, e, seed=seed), seed=seed)
    ectx = ext.ctx
    out = [ext.identity()]
    for w in range(1, ext.g + 1):
        for u_tail in _tuples(ectx, w):
            u = UniPoly(ectx, list(u_tail) + [FieldElement(ectx, ectx.one)])
            # solve v^2 = f mod u over all candidate v
            for v_tail in _tuples(ectx, w):
                v = UniPoly(ectx, list(v_tail))
                if ((v * v - ext.f) % u).is_zero():
                    out.append(MumfordDivisor(ext, u, v, check=False))
    return out


def _tuples(ctx, n):
    if n == 0:
        yield ()
        return
    for rest in _tuples(ctx, n - 1):
        for ct in ctx.elements():
            yield (FieldElement(ctx, ct),) + rest


def random_divisor(curve, rng):
    """Uniform-ish random reduced divisor of weight g (rejection sampling)."""
    ctx = curve.ctx
    g = curve.g
    while True:
        u = UniPoly(ctx, [FieldElement(ctx, ctx.random(rng)) for _ in range(g)]
                    + [FieldElement(ctx, ctx.one)])
        v = _sqrt_mod(curve.f % u, u, rng)
        if v is not None:
            return MumfordDivisor(curve, u, v, check=False)


def _sqrt_mod(a, u, rng):
    """A square root of a modulo monic u (u squarefree enough in practice);
    None when no root exists.  Works factor by factor."""
    from .algebra import factor as _factor
    ctx = u.ctx
    fac = _factor(u, "full", seed=rng.randrange(1 << 30))
    parts = []
    for m, mult in fac:
        if m.degree == 0:
            continue
        mm = m
        for _ in range(mult - 1):
            mm = mm * m
        r = _sqrt_mod_irred(a % mm, m, mult, rng)
        if r is None:
            return None
        parts.append((r, mm))
    # CRT combine
    out = UniPoly(ctx, [])
    modulus = UniPoly.constant(ctx, 1)
    for r, mm in parts:
        g, s, t = modulus.xgcd(mm)
        # new = out + modulus * s * (r - out)  mod modulus*mm
        delta = (r - out) % mm
        out = out + modulus * ((s * delta) % mm)
        modulus = modulus * mm
        out = out % modulus
    return out


def _sqrt_mod_irred(a, m, mult, rng):
    """Square root of a modulo m^mult, m irreducible (odd q)."""
    ctx = m.ctx
    if mult > 1:
        # Hensel lift from the residue field; desk scale uses mult == 1 almost
        # always, so a simple search fallback is acceptable here.
        base = _sqrt_mod_irred(a % m, m, 1, rng)
        if base is None:
            return None
        mm = m
        r = base
        for _ in range(mult - 1):
            mm_next = mm * m
            # r' = r + c*mm with (r^2 - a)/mm = -2rc mod m
            diff = (r * r - a) % mm_next
            quo = diff.divexact(mm)
            inv2r = _inv_mod_poly(r + r, m)
            if inv2r is None:
                return None
            c = (-(quo * inv2r)) % m
            r = r + mm * c
            mm = mm_next
        return r % mm
    if a.is_zero():
        return UniPoly(ctx, [])
    qd = ctx.q ** m.degree
    am = a % m
    # Euler criterion in the residue field
    from .algebra import _powmod_poly
    half = (qd - 1) // 2
    if _powmod_poly(am, half, m) != UniPoly.constant(ctx, 1):
        return None
    # Tonelli-Shanks in F_q[X]/m via random factorization of Y^2 - a:
    # gcd((Y+r)^((qd-1)/2) - 1, Y^2 - a) splits; emulate by CZ on Y^2-a.
    while True:
        r = UniPoly(ctx, [FieldElement(ctx, ctx.random(rng)) for _ in range(m.degree)])
        # compute (r + sqrt(a)) power via polynomial arithmetic mod (m, Y^2-am)
        c0, c1 = _ext_pow(r, am, half, m)
        # c0 + c1*Y = (r+Y)^half; if c1 invertible, Y = (±1 - c0)/c1
        inv = _inv_mod_poly(c1, m)
        if inv is None:
            continue
        one = UniPoly.constant(ctx, 1)
        cand = ((one - c0) * inv) % m
        if ((cand * cand - am) % m).is_zero():
            return cand
        cand = ((-one - c0) * inv) % m
        if ((cand * cand - am) % m).is_zero():
            return cand


def _ext_pow(r, a, e, m):
    """(r + Y)^e in (F_q[X]/m)[Y]/(Y^2 - a); returns (c0, c1)."""
    ctx = m.ctx
    one = UniPoly.constant(ctx, 1)
    b0, b1 = r % m, one
    c0, c1 = one, UniPoly(ctx, [])
    while e > 0:
        if e & 1:
            c0, c1 = ((c0 * b0 + c1 * b1 * a) % m, (c0 * b1 + c1 * b0) % m)
        b0, b1 = ((b0 * b0 + b1 * b1 * a) % m, (b0 * b1 + b0 * b1) % m)
        e >>= 1
    return c0, c1


def _inv_mod_poly(a, m):
    g, s, _ = a.xgcd(m)
    if g.degree != 0 or g.is_zero():
        return None
    return (s * FieldElement(g.ctx, g.ctx.inv(g.c[0]))) % m
