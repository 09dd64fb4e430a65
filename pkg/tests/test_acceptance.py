"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Budgets and tolerances are pinned here, not deferred.  Criterion 2 runs its
instances in subprocesses so the stated wall-clock budget can be enforced
even when an instance's torsion field is out of desk reach.
"""

import json
import math
import random
import subprocess
import sys
import time

import pytest

from hyperzeta.algebra import FieldCtx, UniPoly
from hyperzeta.curve import (HyperellipticCurve, compose_reduce,
                             enumerate_jacobian, random_divisor, scalar_mul)
from hyperzeta.divpoly import degree_table
from hyperzeta.geomres import (BiHomSystem, GeometricResolution, SparseMPoly,
                               bezout_bound, resolution_from_points,
                               solve_desk, verify_resolution)
from hyperzeta.zeta import naive_zeta, schoof_pila, weil_verify
import hyperzeta.torsion as T
from tests.conftest import random_curve

ZETA_OUTPUTS = []


def _report(criterion, ok, detail):
    print(f"\nCRITERION {criterion}: {'PASS' if ok else 'FAIL'} - {detail}")
    return ok


def test_criterion_1_end_to_end_genus1():
    ctx = FieldCtx(5)
    curve = HyperellipticCurve(ctx, UniPoly.from_ints(ctx, [1, 1, 0, 1]))
    t0 = time.time()
    P = schoof_pila(curve, backend="bruteforce", seed=0)
    elapsed = time.time() - t0
    Pn = naive_zeta(curve)
    ZETA_OUTPUTS.append(P)
    ZETA_OUTPUTS.append(Pn)
    ok = list(P.a) == [1, 3, 5] and P == Pn and elapsed < 5.0
    assert _report(1, ok,
                   f"P={list(P.a)} naive={list(Pn.a)} in {elapsed:.2f}s (< 5s)")


@pytest.mark.slow
def test_criterion_2_end_to_end_genus2_random():
    """5 random squarefree quintics over q in {5,7,11}: schoof == naive,
    < 10 min total, enforced via per-instance subprocess deadlines."""
    rng = random.Random(0)
    qs = [5, 7, 11, 5, 7]
    budget = 600.0
    t0 = time.time()
    results = []
    for idx, q in enumerate(qs):
        ctx = FieldCtx(q)
        while True:
            coeffs = [rng.randrange(q) for _ in range(5)] + [1]
            try:
                curve = HyperellipticCurve(ctx, UniPoly.from_ints(ctx, coeffs))
                break
            except ValueError:
                continue
        remaining = budget - (time.time() - t0)
        if remaining <= 0:
            results.append((q, coeffs, "no-time-left", None))
            continue
        expected = list(naive_zeta(curve).a)
        code = (
            "import json\n"
            "from hyperzeta.algebra import FieldCtx, UniPoly\n"
            "from hyperzeta.curve import HyperellipticCurve\n"
            "from hyperzeta.zeta import schoof_pila\n"
            f"ctx = FieldCtx({q})\n"
            f"curve = HyperellipticCurve(ctx, UniPoly.from_ints(ctx, {coeffs}))\n"
            "P = schoof_pila(curve, backend='bruteforce', seed=0)\n"
            "print(json.dumps(list(P.a)))\n")
        try:
            out = subprocess.run([sys.executable, "-c", code],
                                 capture_output=True, text=True,
                                 timeout=remaining)
            if out.returncode == 0:
                got = json.loads(out.stdout.strip().splitlines()[-1])
                results.append((q, coeffs, "ok" if got == expected else "mismatch", got))
            else:
                results.append((q, coeffs,
                                "error: " + out.stderr.strip()[-120:], None))
        except subprocess.TimeoutExpired:
            results.append((q, coeffs, "timeout", None))
    elapsed = time.time() - t0
    ok = all(r[2] == "ok" for r in results) and elapsed < budget
    detail = (f"{sum(1 for r in results if r[2] == 'ok')}/5 instances in "
              f"{elapsed:.0f}s (< 600s); outcomes: {[r[2] for r in results]}")
    _report(2, ok, detail)
    if not ok:
        pytest.fail(
            "criterion 2 is blocked at desk scale for typical random curves: "
            "the l-torsion field degree (the order of the Frobenius matrix "
            "in GSp_4(F_l)) reaches several hundred for l in {7,11,13}, "
            "putting the brute-force backend far beyond the stated budget; "
            f"outcomes: {[(r[0], r[2]) for r in results]}")


@pytest.mark.slow
def test_criterion_3_torsion_backend_equivalence():
    # instance choice is free here: frozen curves with desk-reachable
    # 3-torsion fields (and a 5-torsion-reachable one for the l=5 leg)
    instances = [(5, [3, 4, 0, 3, 0, 1]), (5, [0, 4, 0, 4, 3, 1]),
                 (11, [1, 0, 4, 3, 3, 1])]
    all_ok = True
    details = []
    for q, coeffs in instances:
        ctx = FieldCtx(q)
        curve = HyperellipticCurve(ctx, UniPoly.from_ints(ctx, coeffs))
        out = T.solve_torsion_via_systems(curve, 3, seed=1, collect=True)
        group = T.brute_force_torsion(curve, 3, seed=1)
        bf = [d for d in group.elements() if not d.is_identity()]
        target = out["curve"]
        kA, kB = group.curve.ctx.k, target.ctx.k
        if kB % kA == 0:
            bfk = {T._move_divisor(d, target, 0).key() for d in bf}
            ssk = {d.key() for d in out["elements"]}
        else:
            K = kA * kB // math.gcd(kA, kB)
            from hyperzeta.curve import extension_ctx
            E = extension_ctx(FieldCtx(q), K)
            big = curve.lift(E)
            bfk = {T._move_divisor(d, big, 0).key() for d in bf}
            ssk = {T._move_divisor(d, big, 0).key() for d in out["elements"]}
        total = sum(r.degree for r in out["resolutions"].values())
        inst_ok = bfk == ssk and total == 3 ** 4 - 1
        all_ok = all_ok and inst_ok
        details.append(f"q={q}: sets{'==' if bfk == ssk else '!='} "
                       f"degsum={total}")
    # l = 5 where guards allow: the q=7 instance has e_T(5) = 4
    ctx7 = FieldCtx(7)
    curve7 = HyperellipticCurve(ctx7, UniPoly.from_ints(ctx7, [6, 2, 4, 2, 6, 1]))
    out5 = T.solve_torsion_via_systems(curve7, 5, seed=1, collect=True)
    group5 = T.brute_force_torsion(curve7, 5, seed=1, dict_guard=700)
    bf5 = {T._move_divisor(d, out5["curve"], 0).key()
           for d in group5.elements() if not d.is_identity()}
    ss5 = {d.key() for d in out5["elements"]}
    total5 = sum(r.degree for r in out5["resolutions"].values())
    ok5 = bf5 == ss5 and total5 == 5 ** 4 - 1
    all_ok = all_ok and ok5
    details.append(f"l=5 q=7: sets{'==' if bf5 == ss5 else '!='} degsum={total5}")
    assert _report(3, all_ok, "; ".join(details))


@pytest.mark.slow
def test_criterion_4_degree_table():
    t0 = time.time()
    all_ok = True
    rows = 0
    for g in (1, 2, 3):
        mults = [n for n in range(g + 1, g + 11)]
        p = (1 << 31) - 1
        mults = [n for n in mults if n % p != 0]
        reports = degree_table(g, mults, seed=0, curves=3)
        for r in reports:
            rows += 1
            if not r.passes():
                all_ok = False
    elapsed = time.time() - t0
    ok = all_ok and elapsed < 900
    assert _report(4, ok, f"{rows} (g, ell) rows checked in {elapsed:.0f}s (< 900s)")


def test_criterion_5_bezout():
    t0 = time.time()
    rng = random.Random(5)
    ok = True
    # 100 random parameter tuples against an independent brute sum
    for _ in range(100):
        n_x, n_y = rng.randrange(0, 5), rng.randrange(0, 5)
        if n_x + n_y == 0:
            continue
        m = rng.randrange(0, n_x + n_y + 1)
        d_x, d_y = rng.randrange(1, 9), rng.randrange(1, 9)
        brute = 0
        for j1 in range(0, m + 1):
            j2 = m - j1
            if j1 <= n_x and j2 <= n_y:
                brute += (math.factorial(m)
                          // (math.factorial(j1) * math.factorial(j2))
                          * d_x ** j1 * d_y ** j2)
        prof = bezout_bound(n_x, n_y, d_x, d_y, m)
        if prof.exact != brute or prof.exact > prof.coarse:
            ok = False
    # 25 random bilinear systems over F_31: exhaustive counts <= exact bound
    F31 = FieldCtx(31)
    checked = 0
    for trial in range(60):
        if checked >= 25:
            break
        terms_a = {e: rng.randrange(31) for e in [(0, 0), (1, 0), (0, 1), (1, 1)]}
        terms_b = {e: rng.randrange(31) for e in [(0, 0), (1, 0), (0, 1), (1, 1)]}
        S = BiHomSystem(F31, 1, 1, [SparseMPoly(F31, 2, terms_a),
                                    SparseMPoly(F31, 2, terms_b)])
        if S.d_x < 1 or S.d_y < 1:
            continue
        bound = bezout_bound(1, 1, S.d_x, S.d_y, 2).exact
        count = 0
        for a in range(31):
            for b in range(31):
                pt = [F31.el(a), F31.el(b)]
                if all(eq.eval(pt).is_zero() for eq in S.equations):
                    count += 1
        if count > bound:
            ok = False
        checked += 1
    elapsed = time.time() - t0
    ok = ok and checked >= 25 and elapsed < 60
    assert _report(5, ok, f"100 tuples + {checked} systems in {elapsed:.1f}s (< 60s)")


def test_criterion_6_algorithm2_properties():
    t0 = time.time()
    rng = random.Random(6)
    ok = True
    for _ in range(1000):
        g = rng.randrange(1, 5)
        k = rng.randrange(1, g + 1)
        s = rng.randrange(1, g * k + 1)
        M = [[rng.randrange(-g, g + 1) for _ in range(s)] for _ in range(k)]
        for j in range(s):
            if sum(M[i][j] for i in range(k)) < 0:
                for i in range(k):
                    M[i][j] = -M[i][j]
        Mt = T.semi_reduce(M)
        for j in range(s):
            if sum(Mt[i][j] for i in range(k)) != sum(M[i][j] for i in range(k)):
                ok = False
            for i in range(k):
                if Mt[i][j] < 0:
                    ok = False
                if M[i][j] >= 0 and Mt[i][j] > M[i][j]:
                    ok = False
    elapsed = time.time() - t0
    ok = ok and elapsed < 10
    assert _report(6, ok, f"1000 matrices in {elapsed:.2f}s (< 10s)")


def test_criterion_7_resolution_contract():
    ok = True
    F7 = FieldCtx(7)
    x = SparseMPoly.variable(F7, 2, 0)
    y = SparseMPoly.variable(F7, 2, 1)
    suite = [
        BiHomSystem(F7, 1, 1, [x - 3, y - 4]),
        BiHomSystem(F7, 1, 1, [x * x - 1, y - x], [x - 1]),
        BiHomSystem(F7, 1, 1, [x * x - 3, y - x]),
        BiHomSystem(F7, 1, 1, [x * x * x - 1, y * y - x], [y]),
    ]
    res_list = []
    for i, S in enumerate(suite):
        res = solve_desk(S, seed=i)
        good, rep = verify_resolution(res, S)
        if not good:
            ok = False
        res_list.append((S, res))
    # tamper class 1: Q made non-squarefree
    S, res = res_list[1]
    bad = GeometricResolution(res.ctx, res.form, res.Q * res.Q, res.params,
                              check=False)
    good, rep = verify_resolution(bad, S)
    t1 = (not good) and "squarefree" in rep["reason"]
    # tamper class 2: perturbed parametrization
    bump = UniPoly.constant(res.ctx, 1)
    bad = GeometricResolution(res.ctx, res.form, res.Q,
                              [res.params[0] + bump] + res.params[1:],
                              check=False)
    good, rep = verify_resolution(bad, S)
    t2 = not good
    # tamper class 3: inequation filtering dropped (excluded root included)
    pts = [[F7(1), F7(1)], [F7(6), F7(6)]]
    bad = resolution_from_points(F7, pts, seed=3)
    good, rep = verify_resolution(bad, S)
    t3 = (not good) and "inequation" in rep["reason"]
    ok = ok and t1 and t2 and t3
    assert _report(7, ok,
                   f"4 solves verified; tampers detected: Q={t1} params={t2} ineq={t3}")


def test_criterion_8_group_law_suite():
    t0 = time.time()
    rng = random.Random(8)
    checks = 0
    ok = True
    pools = []
    for p, genus in ((7, 1), (5, 2), (3, 3)):
        curve = random_curve(rng, p, genus)
        pool = enumerate_jacobian(curve, 1)
        pools.append((curve, pool))
    # mixed-weight associativity / inverse / identity checks
    while checks < 10 ** 4:
        curve, pool = pools[rng.randrange(len(pools))]
        a = pool[rng.randrange(len(pool))]
        b = pool[rng.randrange(len(pool))]
        mode = checks % 5
        if mode == 0:
            c = pool[rng.randrange(len(pool))]
            if compose_reduce(compose_reduce(a, b), c) != \
                    compose_reduce(a, compose_reduce(b, c)):
                ok = False
        elif mode == 1:
            if not compose_reduce(a, -a).is_identity():
                ok = False
        elif mode == 2:
            if compose_reduce(a, curve.identity()) != a:
                ok = False
        elif mode == 3:
            if compose_reduce(a, b) != compose_reduce(b, a):
                ok = False
        else:
            out = compose_reduce(a, b)
            if not ((out.v * out.v - curve.f) % out.u).is_zero():
                ok = False
        checks += 1
    elapsed = time.time() - t0
    ok = ok and elapsed < 60
    assert _report(8, ok, f"{checks} checks in {elapsed:.1f}s (< 60s)")


def test_criterion_9_weil_checks():
    rng = random.Random(9)
    outputs = list(ZETA_OUTPUTS)
    for p, genus in ((5, 1), (7, 1), (5, 2), (7, 2), (3, 3)):
        outputs.append(naive_zeta(random_curve(rng, p, genus)))
    ok = True
    worst = 0.0
    for P in outputs:
        rep = weil_verify(P, tol=1e-6)
        if not (rep["functional_equation"] and rep["coeff_bounds"]
                and rep["positivity"]):
            ok = False
        if not rep["root_moduli_ok"]:
            ok = False
        worst = max(worst, rep["max_relative_modulus_error"])
    assert _report(9, ok,
                   f"{len(outputs)} zeta outputs; worst |u|-error {worst:.2e} (< 1e-6)")
