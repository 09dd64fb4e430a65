import random, time
from hyperzeta.algebra import FieldCtx, UniPoly
from hyperzeta.curve import HyperellipticCurve, random_divisor, scalar_mul
from hyperzeta.zeta import naive_zeta
import hyperzeta.torsion as T

def frob_order_mod(P, ell):
    g = P.g
    chi = P.chi_mod(ell)
    n = 2 * g
    M = [[0] * n for _ in range(n)]
    for i in range(1, n):
        M[i][i - 1] = 1
    for i in range(n):
        M[i][n - 1] = (-chi[i]) % ell
    def matmul(A, B):
        return [[sum(A[i][k] * B[k][j] for k in range(n)) % ell
                 for j in range(n)] for i in range(n)]
    I = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    X = [row[:] for row in M]
    for e in range(1, 40000):
        if X == I:
            return e
        X = matmul(X, M)
    return None

rng = random.Random(17)
ell = 5
for trial in range(4000):
    q = rng.choice([3, 7, 11, 13])
    if q == ell:
        continue
    Fq = FieldCtx(q)
    cs = [rng.randrange(q) for _ in range(7)] + [1]
    try:
        C = HyperellipticCurve(Fq, UniPoly.from_ints(Fq, cs))
    except ValueError:
        continue
    P = naive_zeta(C)
    eT = frob_order_mod(P, ell)
    if eT is None or eT > 12:
        continue
    print('q=%d f=%s e_T(5)=%d' % (q, cs, eT))
    # find a single weight-3 5-torsion element and check ell-genericity
    t0 = time.time()
    try:
        # sample directly at e = eT
        N = P.jacobian_order(eT)
        v = 0
        while N % ell == 0:
            N //= ell
            v += 1
        from hyperzeta.curve import extension_ctx
        E = extension_ctx(Fq, eT)
        CE = C.lift(E)
        rng2 = random.Random(trial)
        good = None
        for _ in range(14):
            D = random_divisor(CE, rng2)
            Tq = scalar_mul(N, D)
            ok, T5 = T._order_divides_power(Tq, ell)
            if not ok or T5 is None or T5.is_identity():
                continue
            if T5.weight != 3:
                continue
            try:
                tup, info = T.classify_divisor(T5, ell)
            except (T.Decomposable, T.NotTorsion):
                continue
            generic = (tup.w == 3 and tup.lam == (1, 1, 1)
                       and tup.t == (3, 3, 3) and all(e == 0 for e in tup.eps)
                       and all(sum(1 for x in col if x) == 1
                               for col in zip(*tup.M)))
            print('  found weight-3 torsion, tuple:', tup, 'generic:', generic,
                  '%.1fs' % (time.time() - t0))
            if generic:
                good = T5
                break
        if good is not None:
            print('FROZEN INSTANCE: q=%d f=%s ell=%d eT=%d' % (q, cs, ell, eT))
            break
    except Exception as exc:
        print('  error:', type(exc).__name__, exc)
        continue
