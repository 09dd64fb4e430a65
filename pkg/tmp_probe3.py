import time
from hyperzeta.algebra import FieldCtx, UniPoly, FieldElement, roots as aroots
from hyperzeta.curve import HyperellipticCurve, scalar_mul, compose_reduce
import hyperzeta.torsion as T
from hyperzeta.divpoly import generic_division_data

Fq = FieldCtx(5)
C = HyperellipticCurve(Fq, UniPoly.from_ints(Fq, [3, 4, 0, 3, 0, 1]))
# classify a brute-forced 3-torsion element
G = T.brute_force_torsion(C, 3, seed=1)
els = [d for d in G.elements() if not d.is_identity()]
from collections import Counter
shapes = Counter()
infos = []
for D in els:
    try:
        tup, info = T.classify_divisor(D, 3)
        shapes[tup.key()] += 1
        infos.append((D, tup, info))
    except T.Decomposable:
        shapes["decomposable"] += 1
for k, v in shapes.items():
    print(v, '->', k if isinstance(k, str) else T.NonGenericityTuple(*k))

# build the nongeneric system for the dominant tuple and check a witness
main_tup = None
for k, v in shapes.items():
    if not isinstance(k, str) and v == max(x for kk, x in shapes.items() if not isinstance(kk, str)):
        main_tup = T.NonGenericityTuple(*k)
        break
print('main tuple:', main_tup)
bundle = T.DivDataBundle(C, seed=0)
sys_obj = T.build_nongeneric_system(C, 3, main_tup, bundle=bundle)
print('system: n_x=%d n_y=%d eqs=%d ineqs=%d names=%s' % (
    sys_obj.n_x, sys_obj.n_y, sys_obj.m, len(sys_obj.inequations), sys_obj.names))

# witness: take a classified element with this tuple; assemble assignment
D, tup, info = next(x for x in infos if x[1] == main_tup)
ectx = info["field"]
supp = info["support"]
sys_l = sys_obj.lift(ectx) if ectx != Fq else sys_obj
# coordinates x_i, y_i
assign = []
for P, m in supp:
    assign += [P.x.c, P.y.c]
# xi_j: shared abscissae: recompute the multiples' supports
mults = [scalar_mul(m * 3, P.to_divisor()) for P, m in supp]
xs = set()
for Dm in mults:
    for r in aroots(Dm.u):
        xs.add(r.c)
xis = sorted(xs)
print('shared xi count:', len(xis), 'tuple s =', tup.s)
assign += list(xis)
# no u-tilde/V/P/Q variables expected for deg U = 0 tuples
assert len(assign) == sys_l.n, (len(assign), sys_l.n)
ok_eq = all(eq.eval(assign).is_zero() for eq in sys_l.equations)
ok_iq = all(not iq.eval(assign).is_zero() for iq in sys_l.inequations)
print('witness satisfies equations:', ok_eq, 'inequations:', ok_iq)
