"""Bi-homogeneous polynomial systems and a desk-scale geometric-resolution
solver.

A geometric resolution of a finite variety V is ((l_1..l_n), Q, (Q_1..Q_n))
with Q(T) = prod over points of (T - l(point)), squarefree, and coordinate
parametrizations Q_i of degree < deg Q evaluating to the points at the roots
of Q.  The desk solver materializes solution points (enumeration for tiny
systems, resultant elimination plus back-substitution for structured ones)
and assembles the resolution from them; verification is pure algebra and
never needs the points again.
"""

import math
import random

from .algebra import FieldCtx, FieldElement, UniPoly, embed, factor
from .curve import extension_ctx
from .errors import (CtxMismatch, GuardExceeded, InvalidArgs, NoSolution,
                     NotZeroDimensional, PrimitiveFormFailure)

DESK_GUARD = 1 << 21
TOWER_GUARD = 512


# ---------------------------------------------------------------------------
# sparse multivariate polynomials


class SparseMPoly:
    """Multivariate polynomial as {exponent tuple: raw coefficient tuple}."""

    __slots__ = ("ctx", "n", "terms")

    def __init__(self, ctx, n, terms=None):
        self.ctx = ctx
        self.n = n
        self.terms = {}
        if terms:
            for e, c in terms.items():
                if isinstance(c, FieldElement):
                    c = c.c
                elif isinstance(c, int):
                    c = ctx.el(c)
                if any(c):
                    self.terms[tuple(e)] = c

    # -- constructors ------------------------------------------------------

    @classmethod
    def constant(cls, ctx, n, value):
        return cls(ctx, n, {(0,) * n: value})

    @classmethod
    def variable(cls, ctx, n, i):
        e = [0] * n
        e[i] = 1
        return cls(ctx, n, {tuple(e): 1})

    @classmethod
    def from_unipoly(cls, poly, n, i):
        """Univariate poly placed on variable i of an n-variable ring."""
        out = {}
        for d, c in enumerate(poly.c):
            if any(c):
                e = [0] * n
                e[i] = d
                out[tuple(e)] = c
        return cls(poly.ctx, n, out)

    def copy(self):
        p = SparseMPoly(self.ctx, self.n)
        p.terms = dict(self.terms)
        return p

    # -- queries -------------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def degree_on(self, idxs):
        """Total degree restricted to the given variable indices."""
        if not self.terms:
            return -1
        return max(sum(e[i] for i in idxs) for e in self.terms)

    def degree_var(self, i):
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def variables_used(self):
        used = set()
        for e in self.terms:
            for i, d in enumerate(e):
                if d:
                    used.add(i)
        return used

    def __eq__(self, other):
        return (isinstance(other, SparseMPoly) and self.ctx == other.ctx
                and self.n == other.n and self.terms == other.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items()):
            mono = "*".join(f"v{i}^{d}" for i, d in enumerate(e) if d) or "1"
            cv = c[0] if self.ctx.k == 1 else list(c)
            parts.append(f"{cv}*{mono}")
        return " + ".join(parts)

    # -- arithmetic ----------------------------------------------------------

    def _binop(self, other, sign):
        ctx = self.ctx
        out = dict(self.terms)
        for e, c in other.terms.items():
            if e in out:
                s = ctx.add(out[e], c) if sign > 0 else ctx.sub(out[e], c)
                if any(s):
                    out[e] = s
                else:
                    del out[e]
            else:
                out[e] = c if sign > 0 else ctx.neg(c)
        p = SparseMPoly(ctx, self.n)
        p.terms = out
        return p

    def __add__(self, other):
        if isinstance(other, (int, FieldElement)):
            other = SparseMPoly.constant(self.ctx, self.n, other)
        return self._binop(other, +1)

    def __sub__(self, other):
        if isinstance(other, (int, FieldElement)):
            other = SparseMPoly.constant(self.ctx, self.n, other)
        return self._binop(other, -1)

    def __neg__(self):
        p = SparseMPoly(self.ctx, self.n)
        p.terms = {e: self.ctx.neg(c) for e, c in self.terms.items()}
        return p

    def __mul__(self, other):
        ctx = self.ctx
        if isinstance(other, (int, FieldElement)):
            cc = other.c if isinstance(other, FieldElement) else ctx.el(other)
            if not any(cc):
                return SparseMPoly(ctx, self.n)
            p = SparseMPoly(ctx, self.n)
            p.terms = {e: ctx.mul(c, cc) for e, c in self.terms.items()}
            return p
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = ctx.mul(c1, c2)
                if e in out:
                    s = ctx.add(out[e], c)
                    if any(s):
                        out[e] = s
                    else:
                        del out[e]
                elif any(c):
                    out[e] = c
        p = SparseMPoly(ctx, self.n)
        p.terms = out
        return p

    __rmul__ = __mul__

    def pow(self, k):
        result = SparseMPoly.constant(self.ctx, self.n, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def eval(self, point):
        """Full evaluation; point is a list of raw tuples (or FieldElements)."""
        ctx = self.ctx
        pt = [c.c if isinstance(c, FieldElement) else c for c in point]
        acc = ctx.zero
        powcache = [dict() for _ in range(self.n)]
        for e, c in self.terms.items():
            term = c
            for i, d in enumerate(e):
                if d:
                    cache = powcache[i]
                    if d not in cache:
                        cache[d] = ctx.pow(pt[i], d)
                    term = ctx.mul(term, cache[d])
            acc = ctx.add(acc, term)
        return FieldElement(ctx, acc)

    def eval_partial(self, assignment):
        """Substitute some variables (index -> raw tuple/FieldElement)."""
        ctx = self.ctx
        assign = {i: (v.c if isinstance(v, FieldElement) else v)
                  for i, v in assignment.items()}
        out = {}
        for e, c in self.terms.items():
            term = c
            newe = list(e)
            for i, v in assign.items():
                d = e[i]
                if d:
                    term = ctx.mul(term, ctx.pow(v, d))
                newe[i] = 0
            if not any(term):
                continue
            key = tuple(newe)
            if key in out:
                s = ctx.add(out[key], term)
                if any(s):
                    out[key] = s
                else:
                    del out[key]
            else:
                out[key] = term
        p = SparseMPoly(ctx, self.n)
        p.terms = out
        return p

    def to_unipoly(self, i):
        """Interpret as univariate in variable i (others must be absent)."""
        deg = self.degree_var(i)
        coeffs = [self.ctx.zero] * (deg + 1)
        for e, c in self.terms.items():
            if any(d for j, d in enumerate(e) if j != i and d):
                raise InvalidArgs("polynomial is not univariate in the pivot")
            coeffs[e[i]] = c
        return UniPoly(self.ctx, [FieldElement(self.ctx, c) for c in coeffs])

    def map_coeffs(self, new_ctx, fn):
        p = SparseMPoly(new_ctx, self.n)
        p.terms = {e: fn(c) for e, c in self.terms.items()}
        return p

    def subs_unipoly(self, assignment, modulus=None):
        """Substitute UniPoly values for ALL variables; returns a UniPoly.

        assignment: list of UniPoly (length n).  With a modulus, arithmetic
        is done mod it (used by verify_resolution).
        """
        ctx = self.ctx
        acc = UniPoly(ctx, [])
        powcache = [dict() for _ in range(self.n)]
        for e, c in self.terms.items():
            term = UniPoly.constant(ctx, FieldElement(ctx, c))
            for i, d in enumerate(e):
                if d:
                    cache = powcache[i]
                    if d not in cache:
                        b = assignment[i]
                        r = UniPoly.constant(ctx, 1)
                        bb = b if modulus is None else b % modulus
                        dd = d
                        while dd:
                            if dd & 1:
                                r = r * bb
                                if modulus is not None:
                                    r = r % modulus
                            bb = bb * bb
                            if modulus is not None:
                                bb = bb % modulus
                            dd >>= 1
                        cache[d] = r
                    term = term * cache[d]
                    if modulus is not None:
                        term = term % modulus
            acc = acc + term
        if modulus is not None:
            acc = acc % modulus
        return acc

    def serialize(self):
        return {"terms": [[list(e), [int(x) for x in c]]
                          for e, c in sorted(self.terms.items())]}

    @classmethod
    def deserialize(cls, ctx, n, data):
        return cls(ctx, n, {tuple(e): tuple(c) for e, c in data["terms"]})


# ---------------------------------------------------------------------------
# bi-homogeneous systems


class BiHomSystem:
    """Equations/inequations over ctx in two variable blocks (sizes n_x, n_y).

    Variables 0..n_x-1 form the first block, n_x..n_x+n_y-1 the second.
    """

    def __init__(self, ctx, n_x, n_y, equations=(), inequations=(),
                 names=None, metadata=None):
        self.ctx = ctx
        self.n_x = n_x
        self.n_y = n_y
        self.n = n_x + n_y
        self.equations = list(equations)
        self.inequations = list(inequations)
        self.names = list(names) if names else [f"v{i}" for i in range(self.n)]
        self.metadata = list(metadata) if metadata else [""] * len(self.equations)
        self.degree_records = [self._degs(eq) for eq in self.equations]

    def _degs(self, poly):
        dx = poly.degree_on(range(self.n_x))
        dy = poly.degree_on(range(self.n_x, self.n))
        return (max(dx, 0), max(dy, 0))

    @property
    def d_x(self):
        return max((d for d, _ in self.degree_records), default=0)

    @property
    def d_y(self):
        return max((d for _, d in self.degree_records), default=0)

    @property
    def m(self):
        return len(self.equations)

    def check_records(self):
        return self.degree_records == [self._degs(eq) for eq in self.equations]

    def with_t_trick(self):
        """Inequations converted to equations T_j * f_j - 1 = 0 (new block-2
        variables appended)."""
        ctx = self.ctx
        extra = len(self.inequations)
        n_new = self.n + extra
        def widen(p):
            q = SparseMPoly(ctx, n_new)
            q.terms = {e + (0,) * extra: c for e, c in p.terms.items()}
            return q
        eqs = [widen(e) for e in self.equations]
        names = self.names + [f"t{j}" for j in range(extra)]
        meta = list(self.metadata)
        for j, ineq in enumerate(self.inequations):
            t = SparseMPoly.variable(ctx, n_new, self.n + j)
            eqs.append(widen(ineq) * t - SparseMPoly.constant(ctx, n_new, 1))
            meta.append(f"t_trick({j})")
        return BiHomSystem(ctx, self.n_x, self.n_y + extra, eqs, [],
                           names=names, metadata=meta)

    def lift(self, ext_ctx, seed=0):
        emb = embed(self.ctx, ext_ctx, seed=seed)
        def lift_poly(p):
            q = SparseMPoly(ext_ctx, self.n)
            q.terms = {e: emb(c) for e, c in p.terms.items()}
            return q
        return BiHomSystem(ext_ctx, self.n_x, self.n_y,
                           [lift_poly(e) for e in self.equations],
                           [lift_poly(i) for i in self.inequations],
                           names=self.names, metadata=self.metadata)

    def serialize(self):
        return {
            "schema": "hyperzeta/1", "kind": "bihom_system",
            "p": self.ctx.p, "k": self.ctx.k, "modulus": list(self.ctx.modulus),
            "n_x": self.n_x, "n_y": self.n_y, "names": self.names,
            "equations": [eq.serialize() for eq in self.equations],
            "inequations": [iq.serialize() for iq in self.inequations],
            "metadata": self.metadata,
        }

    @classmethod
    def deserialize(cls, data):
        ctx = FieldCtx(data["p"], data["k"],
                       data["modulus"] if data["k"] > 1 else None,
                       check_prime=False)
        n = data["n_x"] + data["n_y"]
        eqs = [SparseMPoly.deserialize(ctx, n, e) for e in data["equations"]]
        iqs = [SparseMPoly.deserialize(ctx, n, e) for e in data["inequations"]]
        return cls(ctx, data["n_x"], data["n_y"], eqs, iqs,
                   names=data.get("names"), metadata=data.get("metadata"))


# ---------------------------------------------------------------------------
# Bezout bounds


class BezoutProfile:
    __slots__ = ("n_x", "n_y", "d_x", "d_y", "m", "exact", "coarse")

    def __init__(self, n_x, n_y, d_x, d_y, m, exact, coarse):
        self.n_x, self.n_y = n_x, n_y
        self.d_x, self.d_y = d_x, d_y
        self.m = m
        self.exact = exact
        self.coarse = coarse

    def serialize(self):
        return {"n_x": self.n_x, "n_y": self.n_y, "d_x": self.d_x,
                "d_y": self.d_y, "m": self.m, "exact": self.exact,
                "coarse": self.coarse}

    def __repr__(self):
        return f"BezoutProfile(exact={self.exact}, coarse={self.coarse})"


def bezout_bound(n_x, n_y, d_x, d_y, m):
    """Multi-homogeneous bound: sum over j1+j2=m of C(m,j1) d_x^j1 d_y^j2,
    with 0 <= j1 <= n_x, 0 <= j2 <= n_y; plus the coarse cap."""
    if min(n_x, n_y, d_x, d_y, m) < 0:
        raise InvalidArgs("all bezout parameters must be >= 0")
    if m > n_x + n_y:
        raise InvalidArgs("m exceeds n_x + n_y (not a regular sequence)")
    exact = 0
    for j1 in range(max(0, m - n_y), min(n_x, m) + 1):
        j2 = m - j1
        exact += math.comb(m, j1) * d_x ** j1 * d_y ** j2
    coarse = 2 ** (n_x + n_y) * d_x ** n_x * d_y ** n_y
    return BezoutProfile(n_x, n_y, d_x, d_y, m, exact, coarse)


def prep_extension_degree(n, d, q):
    """Smallest e with q^e >= 11 * (d+1)^(2n+1): exact integer ceiling of
    (2n+1) log_q(d+1) + log_q(11)."""
    if d < 1 or q < 2:
        raise InvalidArgs("need d >= 1 and q >= 2")
    target = 11 * (d + 1) ** (2 * n + 1)
    e = 1
    qe = q
    while qe < target:
        e += 1
        qe *= q
    return e


def prepare_square_system(system, seed=0, forced_matrix=None):
    """Random n x m combinations over F_{q^e} (Bertini preparation).

    Returns (square BiHomSystem with n = n_x + n_y equations, M record).
    """
    n = system.n
    m = system.m
    d = system.d_x + system.d_y
    rng = random.Random(seed)
    e = prep_extension_degree(n, max(d, 1), system.ctx.q)
    ectx = extension_ctx(system.ctx, e, seed=seed) if e > 1 else system.ctx
    lifted = system.lift(ectx, seed=seed) if e > 1 else system
    if forced_matrix is not None:
        M = [[ectx.el(x) for x in row] for row in forced_matrix]
    else:
        M = [[ectx.random(rng) for _ in range(m)] for _ in range(n)]
    eqs = []
    for row in M:
        acc = SparseMPoly(ectx, n)
        for coef, eq in zip(row, lifted.equations):
            acc = acc + eq * FieldElement(ectx, coef)
        eqs.append(acc)
    combined = BiHomSystem(ectx, system.n_x, system.n_y, eqs,
                           lifted.inequations, names=system.names,
                           metadata=[f"combo({i})" for i in range(n)])
    record = {"e": e, "matrix": [[list(x) for x in row] for row in M],
              "seed": seed}
    return combined, record


# ---------------------------------------------------------------------------
# geometric resolutions


class GeometricResolution:
    """((l_1..l_n), Q, (Q_1..Q_n)) over a field ctx."""

    def __init__(self, ctx, form, Q, params, check=True):
        self.ctx = ctx
        self.form = [c.c if isinstance(c, FieldElement) else tuple(c)
                     for c in form]
        self.Q = Q
        self.params = list(params)
        if check:
            if Q.gcd(Q.derivative()).degree != 0:
                raise InvalidArgs("Q must be squarefree")
            for qi in params:
                if qi.degree >= max(Q.degree, 1):
                    raise InvalidArgs("parametrization degree must be < deg Q")

    @property
    def degree(self):
        return self.Q.degree

    @property
    def n(self):
        return len(self.params)

    def points(self, seed=0, tower_guard=TOWER_GUARD):
        """Materialize all solution points over splitting extensions.

        Returns a list of (ctx_ext, [coordinates as FieldElement]) pairs,
        one per root of Q.
        """
        out = []
        for fac, _ in factor(self.Q, "full", seed=seed):
            if fac.degree == 0:
                continue
            d = fac.degree
            if self.ctx.k * d > tower_guard:
                raise GuardExceeded("splitting field exceeds tower guard")
            if d == 1:
                ectx = self.ctx
                root = -fac.coeff(0)
                params = self.params
            else:
                ectx = extension_ctx(self.ctx, d, seed=seed)
                emb = embed(self.ctx, ectx, seed=seed)
                fac_e = UniPoly(ectx, [FieldElement(ectx, emb(c)) for c in fac.c])
                from .algebra import roots as _roots
                rts = _roots(fac_e, seed=seed)
                params = [UniPoly(ectx, [FieldElement(ectx, emb(c)) for c in qi.c])
                          for qi in self.params]
                for root in rts:
                    coords = [qi(root) for qi in params]
                    out.append((ectx, coords))
                continue
            coords = [qi(root) for qi in params]
            out.append((ectx, coords))
        return out

    def serialize(self):
        return {
            "schema": "hyperzeta/1", "kind": "geometric_resolution",
            "p": self.ctx.p, "k": self.ctx.k, "modulus": list(self.ctx.modulus),
            "form": [[int(x) for x in c] for c in self.form],
            "Q": [[int(x) for x in c] for c in self.Q.c],
            "params": [[[int(x) for x in c] for c in qi.c] for qi in self.params],
        }

    @classmethod
    def deserialize(cls, data):
        ctx = FieldCtx(data["p"], data["k"],
                       data["modulus"] if data["k"] > 1 else None,
                       check_prime=False)
        Q = UniPoly(ctx, [tuple(c) for c in data["Q"]])
        params = [UniPoly(ctx, [tuple(c) for c in qi]) for qi in data["params"]]
        return cls(ctx, [tuple(c) for c in data["form"]], Q, params)


def resolution_from_points(ctx, points, seed=0, max_tries=16):
    """Build a resolution of an explicit finite point set over ctx.

    points: list of coordinate lists (FieldElements over ctx), deduplicated
    here; a random primitive form is drawn until it separates the points.
    When the field is too small to separate the set, everything is lifted
    to an extension first."""
    pts = []
    seen = set()
    for coords in points:
        key = tuple(c.c for c in coords)
        if key not in seen:
            seen.add(key)
            pts.append([FieldElement(ctx, c) for c in key])
    if not pts:
        raise NoSolution("cannot build a resolution of an empty set")
    # a random form collides with probability ~ #pairs/q: lift until comfortable
    need = max(4 * len(pts) * (len(pts) - 1) // 2, 2)
    extra = 1
    while ctx.q ** extra < need:
        extra += 1
    if extra > 1:
        base = ctx if ctx.k == 1 else FieldCtx(ctx.p, 1, check_prime=False)
        target = extension_ctx(base, ctx.k * extra, seed=seed)
        emb = embed(ctx, target, seed=seed)
        pts = [[FieldElement(target, emb(c.c)) for c in coords]
               for coords in pts]
        ctx = target
    n = len(pts[0])
    rng = random.Random(seed)
    for _ in range(max_tries):
        form = [ctx.random(rng) for _ in range(n)]
        vals = []
        for coords in pts:
            acc = ctx.zero
            for li, c in zip(form, coords):
                acc = ctx.add(acc, ctx.mul(li, c.c))
            vals.append(FieldElement(ctx, acc))
        if len({v.c for v in vals}) != len(vals):
            continue
        Q = UniPoly.constant(ctx, 1)
        for v in vals:
            Q = Q * UniPoly(ctx, [-v, ctx(1)])
        params = [_interpolate(ctx, vals, [pt[i] for pt in pts])
                  for i in range(n)]
        return GeometricResolution(ctx, form, Q, params)
    raise PrimitiveFormFailure(f"no separating form after {max_tries} tries")


def _interpolate(ctx, xs, ys):
    """Lagrange interpolation through (xs[i], ys[i]), O(n^2) via the master
    polynomial M = prod(X - x_i) and synthetic division per node."""
    n = len(xs)
    if n == 0:
        return UniPoly(ctx, [])
    master = UniPoly.constant(ctx, 1)
    for x in xs:
        master = master * UniPoly(ctx, [-x, ctx(1)])
    mc = list(master.c)
    acc = [ctx.zero] * n
    for i in range(n):
        # num_i = master / (X - x_i) by synthetic division (little-endian)
        xi = xs[i].c
        coeffs = [ctx.zero] * n
        carry = mc[n]  # leading coefficient (1)
        for j in range(n - 1, -1, -1):
            coeffs[j] = carry
            carry = ctx.add(mc[j], ctx.mul(carry, xi))
        # den = num_i(x_i)
        den = ctx.zero
        for c in reversed(coeffs):
            den = ctx.add(ctx.mul(den, xi), c)
        scale = (ys[i] / FieldElement(ctx, den)).c
        for j in range(n):
            acc[j] = ctx.add(acc[j], ctx.mul(coeffs[j], scale))
    return UniPoly(ctx, [FieldElement(ctx, c) for c in acc])


def verify_resolution(resolution, system, seed=0):
    """Full algebraic verification; returns (ok, report)."""
    report = {"squarefree": True, "equations": True, "inequations": True,
              "form_consistent": True, "reason": ""}
    ctx = resolution.ctx
    Q = resolution.Q
    if Q.degree < 1:
        report["squarefree"] = Q.degree == 0
    elif Q.gcd(Q.derivative()).degree != 0:
        report["squarefree"] = False
        report["reason"] = "Q not squarefree"
        return False, report
    if system.ctx != ctx:
        if system.ctx.p != ctx.p or ctx.k % system.ctx.k != 0:
            raise CtxMismatch("resolution field does not extend the system field")
        system = system.lift(ctx, seed=seed)
    params = resolution.params
    for idx, eq in enumerate(system.equations):
        val = eq.subs_unipoly(params, modulus=Q)
        if not val.is_zero():
            report["equations"] = False
            report["reason"] = f"equation residue nonzero (equation {idx})"
            return False, report
    for idx, ineq in enumerate(system.inequations):
        val = ineq.subs_unipoly(params, modulus=Q)
        if val.is_zero() or val.gcd(Q).degree != 0:
            report["inequations"] = False
            report["reason"] = f"inequation vanishes on a root (inequation {idx})"
            return False, report
    # form consistency: sum l_i Q_i = T mod Q
    acc = UniPoly(ctx, [])
    for li, qi in zip(resolution.form, params):
        acc = acc + qi * FieldElement(ctx, li)
    if (acc - UniPoly.x(ctx)) % Q != UniPoly(ctx, []) and Q.degree > 0:
        report["form_consistent"] = False
        report["reason"] = "linear form does not reproduce T"
        return False, report
    return True, report


# ---------------------------------------------------------------------------
# desk solver


def solve_desk(system, seed=0, expected_count=None, guard=DESK_GUARD,
               strategy="auto", max_ladder=4, verify=True, with_points=False):
    """Solve a 0-dimensional system; returns a GeometricResolution.

    Strategy 'enumerate': exhaustive scan of F_{q^j}^n for j = 1..max_ladder
    until the count stabilizes at the Bezout-certified value or the supplied
    expected count.  Strategy 'eliminate': recursive resultant elimination
    with back-substitution over splitting towers.  'auto' picks by size.
    With with_points=True, returns (resolution, ectx, points) so callers do
    not have to re-split Q to recover the solutions.
    """
    n = system.n
    if strategy == "auto":
        cost1 = system.ctx.q ** n
        strategy = "enumerate" if cost1 <= guard else "eliminate"
    if strategy == "enumerate":
        ectx, pts = _solve_enumerate(system, seed, expected_count, guard,
                                     max_ladder)
    elif strategy == "eliminate":
        ectx, pts = _solve_eliminate(system, seed, guard)
    else:
        raise InvalidArgs(f"unknown strategy {strategy!r}")
    if not pts:
        # empty variety: represented with Q = 1 (degree 0), no roots
        res = GeometricResolution(ectx, [ectx.zero] * n,
                                  UniPoly.constant(ectx, 1),
                                  [UniPoly(ectx, []) for _ in range(n)],
                                  check=False)
        return (res, ectx, []) if with_points else res
    res = resolution_from_points(ectx, pts, seed=seed)
    if verify:
        ok, report = verify_resolution(res, system, seed=seed)
        if not ok:
            raise NoSolution(f"resolution failed verification: {report['reason']}")
    return (res, ectx, pts) if with_points else res


def _solve_enumerate(system, seed, expected_count, guard, max_ladder):
    profile = bezout_bound(system.n_x, system.n_y,
                           max(system.d_x, 1), max(system.d_y, 1),
                           min(system.m, system.n))
    cap = profile.exact
    prev = None
    best = (system.ctx, [])
    for j in range(1, max_ladder + 1):
        size = system.ctx.q ** (j * system.n)
        if size > guard:
            break
        ectx = extension_ctx(system.ctx, j, seed=seed) if j > 1 else system.ctx
        lifted = system.lift(ectx, seed=seed) if j > 1 else system
        pts = []
        for assignment in _grid(ectx, system.n):
            if all(lifted.equations[i].eval(assignment).is_zero()
                   for i in range(len(lifted.equations))):
                if all(not iq.eval(assignment).is_zero()
                       for iq in lifted.inequations):
                    pts.append([FieldElement(ectx, c) for c in assignment])
        count = len(pts)
        if count > cap:
            raise NotZeroDimensional(
                f"{count} solutions over F_q^{j} exceed the Bezout bound {cap}")
        best = (ectx, pts)
        if expected_count is not None and count == expected_count:
            return best
        if count == cap:
            return best
        if prev is not None and count == len(prev[1]) and j >= 2:
            return prev  # stabilized: the smaller field already holds them all
        prev = best
    return best


def _grid(ctx, n):
    if n == 0:
        yield []
        return
    for rest in _grid(ctx, n - 1):
        for ct in ctx.elements():
            yield rest + [ct]


# -- elimination strategy -----------------------------------------------------


def _subres_resultant_prime(A, B, i_keep, i_elim, p):
    """Resultant over F_p[x_keep] by the subresultant PRS (prime field)."""
    from . import intpoly as zp
    from .divpoly import _xpoly_pseudo

    def to_xpoly(P):
        d = max(P.degree_var(i_elim), 0)
        out = [[] for _ in range(d + 1)]
        for e, c in P.terms.items():
            entry = out[e[i_elim]]
            k = e[i_keep]
            if len(entry) <= k:
                entry.extend([0] * (k + 1 - len(entry)))
            entry[k] = (entry[k] + c[0]) % p
        return [zp.znorm(c) for c in out]

    Ax, Bx = to_xpoly(A), to_xpoly(B)
    while Ax and not Ax[-1]:
        Ax.pop()
    while Bx and not Bx[-1]:
        Bx.pop()
    if not Ax or not Bx:
        return []
    sign = 1
    if len(Ax) < len(Bx):
        Ax, Bx = Bx, Ax
        if ((len(Ax) - 1) * (len(Bx) - 1)) % 2 == 1:
            sign = -sign
    g, h = [1], [1]
    while True:
        da, db = len(Ax) - 1, len(Bx) - 1
        if db == 0:
            # finish: res = lc(B)^da / h^(da-1), all exact in F_p[x]
            num = [1]
            for _ in range(da):
                num = zp.zmul(num, Bx[0], p)
            den = [1]
            for _ in range(max(da - 1, 0)):
                den = zp.zmul(den, h, p)
            res = zp.zdivexact(num, den, p) if len(den) > 1 else \
                zp.zscale(num, pow(den[0], p - 2, p), p)
            return zp.zscale(res, sign % p, p)
        delta = da - db
        _, R, L, kcount = _xpoly_pseudo(Ax, Bx, p)
        # normalize pseudo-remainder to the standard L^(delta+1) scaling
        for _ in range(delta + 1 - kcount):
            R = [zp.zmul(c, L, p) if c else [] for c in R]
        if not R:
            return []
        if (da * db) % 2 == 1:
            sign = -sign
        divisor = list(g)
        for _ in range(delta):
            divisor = zp.zmul(divisor, h, p)
        Ax = Bx
        Bx = [zp.zdivexact(c, divisor, p) if c else [] for c in R]
        while Bx and not Bx[-1]:
            Bx.pop()
        if not Bx:
            return []
        g = Ax[-1]
        if delta > 0:
            # Collins: h <- g^delta / h^(delta-1), exact
            num = [1]
            for _ in range(delta):
                num = zp.zmul(num, g, p)
            den = [1]
            for _ in range(delta - 1):
                den = zp.zmul(den, h, p)
            h = zp.zdivexact(num, den, p) if len(den) > 1 else \
                zp.zscale(num, pow(den[0], p - 2, p), p)


def resultant_bivariate(A, B, i_keep, i_elim, seed=0):
    """Res_{x_elim}(A, B) for SparseMPolys supported on {i_keep, i_elim},
    as a UniPoly in x_keep.  Prime fields use the subresultant PRS; other
    fields fall back to evaluation-interpolation."""
    ctx = A.ctx
    da_e, db_e = A.degree_var(i_elim), B.degree_var(i_elim)
    da_k, db_k = max(A.degree_var(i_keep), 0), max(B.degree_var(i_keep), 0)
    if da_e <= 0 and db_e <= 0:
        raise InvalidArgs("nothing to eliminate")
    if ctx.k == 1:
        res = _subres_resultant_prime(A, B, i_keep, i_elim, ctx.p)
        return UniPoly.from_ints(ctx, res), ctx
    dbound = da_e * db_k + db_e * da_k + 1
    # need dbound+1 distinct evaluation points
    e = 1
    while ctx.q ** e <= dbound + 1:
        e += 1
    ectx = extension_ctx(ctx, e, seed=seed) if e > 1 else ctx
    emb = embed(ctx, ectx, seed=seed)
    A_l = A.map_coeffs(ectx, emb)
    B_l = B.map_coeffs(ectx, emb)
    xs, ys = [], []
    it = iter(ectx.elements())
    while len(xs) <= dbound:
        a = next(it)
        ua = _to_unipoly_at(A_l, i_keep, i_elim, a)
        ub = _to_unipoly_at(B_l, i_keep, i_elim, a)
        # skip points where leading terms drop (degree-unfaithful evaluations)
        if ua.degree != da_e or ub.degree != db_e:
            continue
        xs.append(FieldElement(ectx, a))
        ys.append(ua.resultant(ub))
    R = _interpolate(ectx, xs, ys)
    if ectx != ctx:
        # the true resultant lives over the input field
        down = _descend(R, ctx, ectx)
        if down is not None:
            return down, ctx
    return R, ectx


def _to_unipoly_at(P, i_keep, i_elim, a):
    """P(x_keep = a, x_elim = T) as a UniPoly in T."""
    ctx = P.ctx
    deg = max(P.degree_var(i_elim), 0)
    coeffs = [ctx.zero] * (deg + 1)
    powcache = {0: ctx.one}
    for e, c in P.terms.items():
        dk = e[i_keep]
        if dk not in powcache:
            powcache[dk] = ctx.pow(a, dk)
        coeffs[e[i_elim]] = ctx.add(coeffs[e[i_elim]], ctx.mul(c, powcache[dk]))
    return UniPoly(ctx, [FieldElement(ctx, c) for c in coeffs])


def _expand_frobenius_orbits(ctx_base, points):
    """Close a set of (ectx, coords) points under coordinate-wise q-power
    Frobenius (q = the base system field size)."""
    q0 = ctx_base.q
    out = []
    seen = set()
    for ectx, coords in points:
        cur = [c.c for c in coords]
        for _ in range(max(ectx.k // max(ctx_base.k, 1), 1)):
            key = (ectx.k, tuple(cur))
            if key in seen:
                break
            seen.add(key)
            out.append((ectx, [FieldElement(ectx, c) for c in cur]))
            cur = [ectx.pow(c, q0) for c in cur]
    return out


def _solve_eliminate(system, seed, guard, tower_guard=TOWER_GUARD):
    """Recursive elimination: project to one variable, factor, back-substitute."""
    ctx = system.ctx
    n = system.n
    eqs = [e for e in system.equations if not e.is_zero()]
    if not eqs:
        raise NotZeroDimensional("no nontrivial equations")
    points = _eliminate_rec(ctx, eqs, list(range(n)), seed, guard, tower_guard)
    # filter each candidate over its own field first (junk roots from the
    # resultant cascade would otherwise blow up the compositum degree)
    lifted_cache = {}
    survivors = []
    for ectx, coords in points:
        key = (ectx.k, tuple(ectx.modulus))
        if key not in lifted_cache:
            lifted_cache[key] = (system.lift(ectx, seed=seed)
                                 if ectx != ctx else system)
        lifted = lifted_cache[key]
        assignment = [c.c for c in coords]
        if not all(eq.eval(assignment).is_zero() for eq in lifted.equations):
            continue
        if not all(not iq.eval(assignment).is_zero()
                   for iq in lifted.inequations):
            continue
        survivors.append((ectx, coords))
    survivors = _expand_frobenius_orbits(ctx, survivors)
    K = ctx.k
    for ectx, _ in survivors:
        K = _lcm(K, ectx.k)
    if K > tower_guard:
        raise GuardExceeded("compositum exceeds the tower guard")
    if K == ctx.k:
        best_ctx = ctx
    else:
        prime_base = ctx if ctx.k == 1 else FieldCtx(ctx.p, 1,
                                                     check_prime=False)
        best_ctx = extension_ctx(prime_base, K, seed=seed)
    final = []
    seen = set()
    for ectx, coords in survivors:
        if ectx != best_ctx:
            emb = embed(ectx, best_ctx, seed=seed)
            coords = [FieldElement(best_ctx, emb(c.c)) for c in coords]
        key = tuple(c.c for c in coords)
        if key in seen:
            continue
        seen.add(key)
        final.append(coords)
    return best_ctx, final


def _eliminate_rec(ctx, eqs, varidx, seed, guard, tower_guard):
    """Returns candidate points as (ctx_ext, [FieldElement coords in varidx
    order]).  eqs are SparseMPolys over ctx on the full variable set; only
    indices in varidx are active."""
    active = [i for i in varidx if any(eq.degree_var(i) > 0 for eq in eqs)]
    if not active:
        if all(eq.is_zero() or not any(eq.terms) or _constant_is_zero(eq)
               for eq in eqs):
            return [(ctx, [FieldElement(ctx, ctx.zero) for _ in varidx])]
        return []
    if len(active) == 1:
        i = active[0]
        return _solve_univariate(ctx, eqs, varidx, i, seed, tower_guard)
    # choose elimination variable: smallest max degree
    elim = min(active, key=lambda i: max(eq.degree_var(i) for eq in eqs))
    keep = [i for i in active if i != elim]
    involving = [eq for eq in eqs if eq.degree_var(elim) > 0]
    others = [eq for eq in eqs if eq.degree_var(elim) == 0]
    if len(involving) < 2 and not others:
        raise NotZeroDimensional("under-determined during elimination")
    projected = list(others)
    if len(involving) >= 2 and len(keep) == 1 and \
            all(set(eq.variables_used()) <= {keep[0], elim} for eq in involving):
        # bivariate block: gcd of pairwise resultants projects onto x_keep
        rs = []
        base = involving[0]
        for other in involving[1:]:
            R, rctx = resultant_bivariate(base, other, keep[0], elim, seed=seed)
            if rctx != ctx:
                raise GuardExceeded("resultant needed an extension; unsupported here")
            rs.append(R)
        G = rs[0]
        for R in rs[1:]:
            G = G.gcd(R)
        if G.is_zero():
            raise NotZeroDimensional("resultants vanish identically")
        projected.append(SparseMPoly.from_unipoly(G.squarefree_part(),
                                                  involving[0].n, keep[0]))
    elif len(involving) >= 2:
        base = involving[0]
        for other in involving[1:]:
            R = _resultant_generic(base, other, elim)
            if not R.is_zero():
                projected.append(R)
        if len(projected) == len(others):
            raise NotZeroDimensional("projection produced nothing")
    # with a single involving equation, the eliminated variable is recovered
    # purely by back-substitution below
    sub_points = _eliminate_rec(ctx, projected, varidx, seed, guard, tower_guard)
    # back-substitute the eliminated variable
    out = []
    for ectx, coords in sub_points:
        assignment = {}
        for pos, i in enumerate(varidx):
            if i != elim:
                assignment[i] = coords[pos].c if isinstance(coords[pos], FieldElement) else coords[pos]
        lifted_eqs = []
        for eq in involving + others:
            le = (eq.map_coeffs(ectx, embed(ctx, ectx, seed=seed))
                  if ectx != ctx else eq)
            lifted_eqs.append(le.eval_partial(assignment))
        cand = None
        for le in lifted_eqs:
            if le.is_zero():
                continue
            try:
                up = le.to_unipoly(elim)
            except InvalidArgs:
                continue
            if up.degree < 1:
                if not up.is_zero():
                    cand = UniPoly.constant(ectx, 1)  # inconsistent
                    break
                continue
            cand = up if cand is None else cand.gcd(up)
            if cand.degree == 0:
                break
        if cand is None or cand.is_zero():
            continue
        if cand.degree == 0:
            continue
        for rctx, root in _roots_over_towers(cand, seed, tower_guard):
            if rctx == ectx:
                cc = coords
            else:
                emb2 = embed(ectx, rctx, seed=seed)
                cc = [FieldElement(rctx, emb2(c.c)) for c in coords]
            newcoords = []
            pos_map = {i: idx for idx, i in enumerate(varidx)}
            for i in varidx:
                if i == elim:
                    newcoords.append(root)
                else:
                    newcoords.append(cc[pos_map[i]])
            out.append((rctx, newcoords))
    return out


def _constant_is_zero(eq):
    return all(not any(c) for c in eq.terms.values())


def _resultant_generic(A, B, elim):
    """Sylvester-determinant resultant in variable `elim` over the remaining
    polynomial ring, via Bareiss-free expansion on small matrices."""
    ctx = A.ctx
    n = A.n
    da = A.degree_var(elim)
    db = B.degree_var(elim)
    if da < 1 or db < 1:
        if da == 0 and db >= 1:
            return A.pow(db)
        if db == 0 and da >= 1:
            return B.pow(da)
        return SparseMPoly(ctx, n)
    ac = _coeffs_in_var(A, elim)
    bc = _coeffs_in_var(B, elim)
    size = da + db
    if size > 8:
        raise GuardExceeded("generic resultant matrix too large for desk solve")
    rows = []
    for sh in range(db):
        row = [SparseMPoly(ctx, n)] * sh + list(reversed(ac)) \
            + [SparseMPoly(ctx, n)] * (db - 1 - sh)
        rows.append(row)
    for sh in range(da):
        row = [SparseMPoly(ctx, n)] * sh + list(reversed(bc)) \
            + [SparseMPoly(ctx, n)] * (da - 1 - sh)
        rows.append(row)
    return _det_expand(rows, ctx, n)


def _coeffs_in_var(P, i):
    d = P.degree_var(i)
    out = [SparseMPoly(P.ctx, P.n) for _ in range(d + 1)]
    for e, c in P.terms.items():
        ee = list(e)
        k = ee[i]
        ee[i] = 0
        out[k].terms[tuple(ee)] = c
    return out


def _det_expand(rows, ctx, n):
    """Determinant by expansion along rows, memoized on column subsets."""
    size = len(rows)
    memo = {}

    def rec(i, cols):
        if i == size:
            return SparseMPoly.constant(ctx, n, 1)
        key = (i, cols)
        if key in memo:
            return memo[key]
        acc = SparseMPoly(ctx, n)
        for pos, j in enumerate(cols):
            entry = rows[i][j]
            if entry.is_zero():
                continue
            sub = rec(i + 1, cols[:pos] + cols[pos + 1:])
            term = entry * sub
            acc = acc + term if pos % 2 == 0 else acc - term
        memo[key] = acc
        return acc

    return rec(0, tuple(range(size)))


def _solve_univariate(ctx, eqs, varidx, i, seed, tower_guard):
    cand = None
    for eq in eqs:
        if eq.is_zero():
            continue
        if eq.degree_var(i) == 0:
            if not _constant_is_zero(eq):
                return []
            continue
        up = eq.to_unipoly(i)
        cand = up if cand is None else cand.gcd(up)
        if cand.degree == 0:
            return []
    if cand is None or cand.is_zero():
        raise NotZeroDimensional("univariate stage found no constraint")
    if cand.degree == 0:
        return []
    out = []
    for rctx, root in _roots_over_towers(cand, seed, tower_guard):
        coords = []
        for j in varidx:
            if j == i:
                coords.append(root)
            else:
                coords.append(FieldElement(rctx, rctx.zero))
        out.append((rctx, coords))
    return out


def _roots_over_towers(poly, seed, tower_guard):
    """One root per irreducible factor of a squarefree-reduced poly, over
    splitting extensions.

    Conjugate roots are recovered afterwards by Frobenius orbits of whole
    solution points (see _expand_frobenius_orbits); over a prime field each
    factor becomes the modulus of its own residue field so that the class
    of x is a root with no further search."""
    from .algebra import roots as _roots
    poly = poly.squarefree_part()
    ctx = poly.ctx
    out = []
    for fac, _ in factor(poly, "full", seed=seed):
        d = fac.degree
        if d == 0:
            continue
        if ctx.k * d > tower_guard:
            raise GuardExceeded("root tower exceeds guard")
        if d == 1:
            out.append((ctx, -fac.coeff(0)))
        elif ctx.k == 1:
            ectx = FieldCtx(ctx.p, d, fac.monic().to_ints(),
                            check_prime=False)
            out.append((ectx, ectx.gen()))
        else:
            ectx = extension_ctx(ctx, d, seed=seed)
            emb = embed(ctx, ectx, seed=seed)
            fe = UniPoly(ectx, [FieldElement(ectx, emb(c)) for c in fac.c])
            rts = _roots(fe, seed=seed)
            if rts:
                out.append((ectx, rts[0]))
    return out


# ---------------------------------------------------------------------------
# unions


def change_primitive_form(res, new_form, seed=0):
    """Re-express a resolution with a different primitive linear form."""
    ctx = res.ctx
    Q = res.Q
    delta = Q.degree
    if delta == 0:
        return GeometricResolution(ctx, new_form, Q, res.params, check=False)
    s = UniPoly(ctx, [])
    for li, qi in zip(new_form, res.params):
        s = s + qi * FieldElement(ctx, li)
    s = s % Q
    # new Q' = prod (S - s(t)) over roots t of Q: charpoly of mult-by-s
    Qp = _charpoly_mod(s, Q)
    if Qp.gcd(Qp.derivative()).degree != 0:
        raise PrimitiveFormFailure("candidate form does not separate points")
    # solve for params: Qp_i(s(T)) = Q_i(T) mod Q, in coefficients of Qp_i
    basis = [UniPoly.constant(ctx, 1)]
    for _ in range(delta - 1):
        basis.append((basis[-1] * s) % Q)
    cols = [_poly_to_vec(b, delta) for b in basis]
    new_params = []
    for qi in res.params:
        target = _poly_to_vec(qi % Q, delta)
        sol = _solve_linear(ctx, cols, target)
        if sol is None:
            raise PrimitiveFormFailure("parametrization transfer failed")
        new_params.append(UniPoly(ctx, [FieldElement(ctx, c) for c in sol]))
    return GeometricResolution(ctx, new_form, Qp, new_params)


def _poly_to_vec(poly, n):
    out = [poly.ctx.zero] * n
    for i, c in enumerate(poly.c):
        out[i] = c
    return out


def _solve_linear(ctx, cols, target):
    """Solve sum_j x_j cols[j] = target over ctx; vectors are raw tuples."""
    n = len(target)
    m = len(cols)
    A = [[cols[j][i] for j in range(m)] + [target[i]] for i in range(n)]
    piv_cols = []
    r = 0
    for c in range(m):
        piv = None
        for i in range(r, n):
            if any(A[i][c]):
                piv = i
                break
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = ctx.inv(A[r][c])
        A[r] = [ctx.mul(x, inv) for x in A[r]]
        for i in range(n):
            if i != r and any(A[i][c]):
                f = A[i][c]
                A[i] = [ctx.sub(x, ctx.mul(f, y)) for x, y in zip(A[i], A[r])]
        piv_cols.append(c)
        r += 1
        if r == n:
            break
    # check consistency
    for i in range(r, n):
        if any(A[i][m]):
            return None
    sol = [ctx.zero] * m
    for row, c in enumerate(piv_cols):
        sol[c] = A[row][m]
    return sol


def _charpoly_mod(s, Q):
    """prod over roots t of Q of (S - s(t)), via evaluation-interpolation."""
    ctx = Q.ctx
    delta = Q.degree
    # need delta+1 evaluation points sigma: R(sigma) = Res_T(Q, sigma - s)
    needed = delta + 1
    e = 1
    while ctx.q ** e < needed + 2:
        e += 1
    if e > 1:
        ectx = extension_ctx(ctx, e)
        emb = embed(ctx, ectx)
        Ql = UniPoly(ectx, [FieldElement(ectx, emb(c)) for c in Q.c])
        sl = UniPoly(ectx, [FieldElement(ectx, emb(c)) for c in s.c])
    else:
        ectx, Ql, sl = ctx, Q, s
    xs, ys = [], []
    lead = Ql.leading()
    it = iter(ectx.elements())
    while len(xs) < needed:
        sigma = next(it)
        val = (UniPoly.constant(ectx, FieldElement(ectx, sigma)) - sl)
        r = Ql.resultant(val) if val.degree >= 1 else \
            (val.coeff(0) ** Ql.degree)
        # Res_T(Q, sigma - s(T)) = lc(sigma-s)^degQ * prod Q... use direct:
        xs.append(FieldElement(ectx, sigma))
        ys.append(r)
    R = _interpolate(ectx, xs, ys)
    # normalize monic and descend to ctx if possible
    R = R.monic()
    if ectx != ctx:
        desc = _descend(R, ctx, ectx)
        if desc is not None:
            return desc
        raise PrimitiveFormFailure("charpoly did not descend to the base field")
    return R


def _descend(poly, ctx, ectx):
    """Rewrite a poly over ectx with all coefficients in the image of ctx."""
    emb = embed(ctx, ectx)
    # build lookup of embedded base elements (desk-size fields only)
    if ctx.q > 1 << 16:
        return None
    table = {}
    for t in ctx.elements():
        table[emb(t)] = t
    out = []
    for c in poly.c:
        if c not in table:
            return None
        out.append(FieldElement(ctx, table[c]))
    return UniPoly(ctx, out)


def union_resolutions(r1, r2, seed=0, max_tries=16):
    """Resolution of V1 ∪ V2: shared random primitive form, LCM of the Qs,
    CRT-interpolated parametrizations."""
    if r1.n != r2.n:
        raise InvalidArgs("ambient variable counts differ")
    # bring to a common field
    if r1.ctx != r2.ctx:
        if r1.ctx.p != r2.ctx.p:
            raise CtxMismatch("different characteristics")
        if r2.ctx.k % r1.ctx.k == 0:
            r1 = _lift_resolution(r1, r2.ctx, seed)
        elif r1.ctx.k % r2.ctx.k == 0:
            r2 = _lift_resolution(r2, r1.ctx, seed)
        else:
            target = extension_ctx(FieldCtx(r1.ctx.p, 1, check_prime=False),
                                   _lcm(r1.ctx.k, r2.ctx.k), seed=seed)
            r1 = _lift_resolution(r1, target, seed)
            r2 = _lift_resolution(r2, target, seed)
    ctx = r1.ctx
    if r1.degree == 0:
        return r2
    if r2.degree == 0:
        return r1
    # make sure the field is large enough to separate the union
    total = r1.degree + r2.degree
    need = max(4 * total * (total - 1) // 2, 2)
    extra = 1
    while ctx.q ** extra < need:
        extra += 1
    if extra > 1:
        base = ctx if ctx.k == 1 else FieldCtx(ctx.p, 1, check_prime=False)
        target = extension_ctx(base, ctx.k * extra, seed=seed)
        r1 = _lift_resolution(r1, target, seed)
        r2 = _lift_resolution(r2, target, seed)
        ctx = target
    rng = random.Random(seed)
    last = None
    for _ in range(max_tries):
        form = [ctx.random(rng) for _ in range(r1.n)]
        try:
            a = change_primitive_form(r1, form, seed=seed)
            b = change_primitive_form(r2, form, seed=seed)
        except PrimitiveFormFailure as exc:
            last = exc
            continue
        g = a.Q.gcd(b.Q)
        if g.degree > 0:
            # overlapping part must agree on every coordinate
            ok = all((pa - pb) % g == UniPoly(ctx, [])
                     for pa, pb in zip(a.params, b.params))
            if not ok:
                last = PrimitiveFormFailure("form collides across varieties")
                continue
        Qu = a.Q * b.Q.divexact(g)
        params = []
        failed = False
        for pa, pb in zip(a.params, b.params):
            pu = _crt_poly(pa, a.Q, pb, b.Q, g)
            if pu is None:
                failed = True
                break
            params.append(pu)
        if failed:
            last = PrimitiveFormFailure("parametrization CRT failed")
            continue
        return GeometricResolution(ctx, form, Qu, params)
    raise PrimitiveFormFailure(f"union failed after {max_tries} forms: {last}")


def _crt_poly(pa, Qa, pb, Qb, g):
    """p with p = pa mod Qa and p = pb mod Qb (compatible on gcd g)."""
    ctx = pa.ctx
    Qb_red = Qb.divexact(g)
    gg, s, t = Qa.xgcd(Qb_red)
    if gg.degree != 0:
        return None
    # p = pa + Qa * s * (pb - pa) mod Qa*Qb_red
    mod = Qa * Qb_red
    delta = (pb - pa) % Qb_red
    corr = (s * delta) % Qb_red
    return (pa + Qa * corr) % mod


def _lift_resolution(res, ectx, seed=0):
    emb = embed(res.ctx, ectx, seed=seed)
    def lp(poly):
        return UniPoly(ectx, [FieldElement(ectx, emb(c)) for c in poly.c])
    return GeometricResolution(ectx, [emb(c) for c in res.form],
                               lp(res.Q), [lp(p) for p in res.params],
                               check=False)


def _lcm(a, b):
    return a * b // math.gcd(a, b)
