import cProfile, pstats, io, time
from hyperzeta.algebra import FieldCtx, UniPoly
from hyperzeta.curve import HyperellipticCurve
from hyperzeta.divpoly import generic_division_data
import hyperzeta.torsion as T

q, cs, ell = 13, [6, 9, 4, 11, 4, 7, 12, 1], 5
Fq = FieldCtx(q)
C = HyperellipticCurve(Fq, UniPoly.from_ints(Fq, cs))
data = generic_division_data(C, ell)
pr = cProfile.Profile()
pr.enable()
t0 = time.time()
gts = T.build_generic_system(C, ell, data)
print('build: %.1f s' % (time.time() - t0), flush=True)
pr.disable()
s = io.StringIO()
ps = pstats.Stats(pr, stream=s).sort_stats('tottime')
ps.print_stats(10)
print(s.getvalue(), flush=True)
