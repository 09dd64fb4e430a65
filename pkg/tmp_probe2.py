import time
from hyperzeta.algebra import FieldCtx, UniPoly
from hyperzeta.curve import HyperellipticCurve
import hyperzeta.torsion as T

Fq = FieldCtx(5)
C = HyperellipticCurve(Fq, UniPoly.from_ints(Fq, [3, 4, 0, 3, 0, 1]))
t0 = time.time()
out = T.solve_torsion_via_systems(C, 3, seed=1, collect=True)
print('systems: %.1fs count=%d' % (time.time() - t0, out['count']))
t0 = time.time()
G = T.brute_force_torsion(C, 3, seed=1)
print('brute: %.1fs over deg %d' % (time.time() - t0, G.curve.ctx.k))
bf = [d for d in G.elements() if not d.is_identity()]
curve_t = out['curve']
print('systems field deg:', curve_t.ctx.k)
# embed brute-force set into the systems field (or vice versa)
kA, kB = G.curve.ctx.k, curve_t.ctx.k
if kB % kA == 0:
    target = curve_t
    bfm = {T._move_divisor(d, target, 0).key() for d in bf}
    sysm = {d.key() for d in out['elements']}
elif kA % kB == 0:
    target = G.curve
    bfm = {d.key() for d in bf}
    sysm = {T._move_divisor(d, target, 0).key() for d in out['elements']}
else:
    import math
    K = kA * kB // math.gcd(kA, kB)
    from hyperzeta.curve import extension_ctx
    E = extension_ctx(FieldCtx(5), K)
    target = C.lift(E)
    bfm = {T._move_divisor(d, target, 0).key() for d in bf}
    sysm = {T._move_divisor(d, target, 0).key() for d in out['elements']}
print('sets equal:', bfm == sysm, len(bfm), len(sysm))
chi_b = T.frobenius_charpoly(G)
chi_s = T.chi_mod_ell(C, 3, backend='systems', seed=1)
print('chi mod 3 brute:', chi_b, 'systems:', chi_s, 'match:', chi_b == chi_s)
