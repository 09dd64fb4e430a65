import faulthandler, sys, time
faulthandler.dump_traceback_later(150, exit=True, file=sys.stdout)
from hyperzeta.algebra import FieldCtx, UniPoly
from hyperzeta.curve import HyperellipticCurve
import hyperzeta.torsion as T
Fq = FieldCtx(5)
C = HyperellipticCurve(Fq, UniPoly.from_ints(Fq, [3, 4, 0, 3, 0, 1]))
t0 = time.time()
out = T.solve_torsion_via_systems(C, 3, seed=1, collect=True)
print('systems: %.1fs count=%d' % (time.time() - t0, out['count']))
print('per weight:', {w: r.degree for w, r in out['resolutions'].items()})
