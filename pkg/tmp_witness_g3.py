import random, time
from hyperzeta.algebra import FieldCtx, UniPoly, FieldElement, roots as aroots
from hyperzeta.curve import HyperellipticCurve, extension_ctx, random_divisor, scalar_mul
from hyperzeta.divpoly import generic_division_data
from hyperzeta.zeta import naive_zeta
import hyperzeta.torsion as T

t00 = time.time()
q, cs, ell, eT = 13, [6, 9, 4, 11, 4, 7, 12, 1], 5, 12
Fq = FieldCtx(q)
C = HyperellipticCurve(Fq, UniPoly.from_ints(Fq, cs))
P = naive_zeta(C)
N = P.jacobian_order(eT)
while N % ell == 0:
    N //= ell
E = extension_ctx(Fq, eT)
CE = C.lift(E)
rng2 = random.Random(0)
D5 = None
while D5 is None:
    D = random_divisor(CE, rng2)
    Tq = scalar_mul(N, D)
    ok, T5 = T._order_divides_power(Tq, ell)
    if ok and T5 is not None and not T5.is_identity() and T5.weight == 3:
        try:
            tup, info = T.classify_divisor(T5, ell)
        except (T.Decomposable, T.NotTorsion):
            continue
        if tup.t == (3, 3, 3) and tup.lam == (1, 1, 1):
            D5 = T5
print('got generic element in %.1fs' % (time.time() - t00))

# support points over the splitting field
fctx = None
u = D5.u
rts = aroots(u)
assert len(rts) == 3, len(rts)
support = [CE.point(r, D5.v(r)) for r in rts]
pp, qq = T.recover_function(support, C, ell)
print('recovered P deg %d, Q deg %d' % (pp.degree, qq.degree))
# witness satisfies P^2 - f Q^2 of degree g^2 = 9
E9 = pp * pp - CE.f * qq * qq
print('deg(P^2 - f Q^2) =', E9.degree, '(expect 9)')
assert E9.degree == 9

# tamper: move one point -> NoSolution
bad = list(support)
x0 = bad[0].x
found_other = None
for c in range(q):
    xx = E(c)
    fx = CE.f(xx)
    if fx.is_zero():
        continue
    if fx ** ((E.q - 1) // 2) == 1:
        from hyperzeta.divpoly import _field_sqrt
        found_other = CE.point(xx, _field_sqrt(fx))
        break
bad[0] = found_other
try:
    T.recover_function(bad, C, ell)
    print('tamper NOT detected (bad)')
except Exception as exc:
    print('tamper detected:', type(exc).__name__)

# build the generic system and plug the full witness in
data = generic_division_data(C, ell)
gts = T.build_generic_system(C, ell, data)
S = gts.system.lift(E)
assign = []
for pt in support:
    assign += [pt.x.c, pt.y.c]
# P coefficients (non-leading; P monic? layout)
lay = gts.pq_layout
print('layout:', lay)
pp_m, qq_m = pp, qq
if lay["monic"] == "Q":
    lead = qq.leading()
    pp_m = pp * lead.inverse()
    qq_m = qq * lead.inverse()
else:
    lead = pp.leading()
    pp_m = pp * lead.inverse()
    qq_m = qq * lead.inverse()
for j in range(lay["p_count"]):
    assign.append(pp_m.coeff(j).c)
for j in range(lay["q_count"]):
    assign.append(qq_m.coeff(j).c)
assert len(assign) == S.n
ok_eq = all(eq.eval(assign).is_zero() for eq in S.equations)
ok_iq = all(not iq.eval(assign).is_zero() for iq in S.inequations)
print('generic-system witness: equations %s, genericity inequation %s' % (ok_eq, ok_iq))
print('total %.1fs' % (time.time() - t00))
