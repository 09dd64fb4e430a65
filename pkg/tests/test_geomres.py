import itertools
import math
import random

import pytest

from hyperzeta.algebra import FieldCtx, FieldElement, UniPoly
from hyperzeta.errors import InvalidArgs, NotZeroDimensional
from hyperzeta.geomres import (BezoutProfile, BiHomSystem,
                               GeometricResolution, SparseMPoly,
                               bezout_bound, change_primitive_form,
                               prep_extension_degree, prepare_square_system,
                               resolution_from_points, resultant_bivariate,
                               solve_desk, union_resolutions,
                               verify_resolution)


def brute_bezout_sum(n_x, n_y, d_x, d_y, m):
    """Independent reimplementation of the bound by explicit enumeration."""
    total = 0
    for j1 in range(0, m + 1):
        j2 = m - j1
        if j1 <= n_x and j2 <= n_y:
            total += math.factorial(m) // (math.factorial(j1) * math.factorial(j2)) \
                * d_x ** j1 * d_y ** j2
    return total


def test_bezout_examples():
    b = bezout_bound(1, 1, 2, 3, 2)
    assert (b.exact, b.coarse) == (12, 24)
    assert bezout_bound(2, 0, 4, 7, 2).exact == 16  # classical d^2
    assert bezout_bound(1, 1, 2, 3, 0).exact == 1


def test_bezout_against_brute_sum():
    rng = random.Random(8)
    for _ in range(100):
        n_x, n_y = rng.randrange(0, 5), rng.randrange(0, 5)
        if n_x + n_y == 0:
            continue
        m = rng.randrange(0, n_x + n_y + 1)
        d_x, d_y = rng.randrange(1, 9), rng.randrange(1, 9)
        b = bezout_bound(n_x, n_y, d_x, d_y, m)
        assert b.exact == brute_bezout_sum(n_x, n_y, d_x, d_y, m)
        assert b.exact <= b.coarse


def test_bezout_invalid():
    with pytest.raises(InvalidArgs):
        bezout_bound(1, 1, 2, 2, 3)


def test_prep_extension_degree():
    assert prep_extension_degree(3, 2, 5) == 7
    assert prep_extension_degree(1, 1, 1024) == 1
    # monotonicity
    prev = 0
    for n in range(1, 5):
        e = prep_extension_degree(n, 3, 5)
        assert e >= prev
        prev = e
    prev = 0
    for d in range(1, 8):
        e = prep_extension_degree(2, d, 5)
        assert e >= prev
        prev = e
    # boundary: q^e >= 11 (d+1)^(2n+1) > q^(e-1)
    for n, d, q in ((3, 2, 5), (2, 4, 7), (1, 6, 3)):
        e = prep_extension_degree(n, d, q)
        target = 11 * (d + 1) ** (2 * n + 1)
        assert q ** e >= target
        assert q ** (e - 1) < target


def _simple_system(ctx):
    x = SparseMPoly.variable(ctx, 2, 0)
    y = SparseMPoly.variable(ctx, 2, 1)
    return x, y


def test_solve_explicit_point(F7):
    x, y = _simple_system(F7)
    S = BiHomSystem(F7, 1, 1, [x - 3, y - 4])
    res = solve_desk(S, seed=1)
    assert res.degree == 1
    (ctx, coords), = res.points()
    assert [c.c[0] for c in coords] == [3, 4]


def test_solve_with_inequation_filter(F7):
    x, y = _simple_system(F7)
    S = BiHomSystem(F7, 1, 1, [x * x - 1, y - x], [x - 1])
    res = solve_desk(S, seed=1)
    assert res.degree == 1
    (ctx, coords), = res.points()
    assert [c.c[0] for c in coords] == [6, 6]
    ok, rep = verify_resolution(res, S)
    assert ok, rep


def test_solve_roots_in_extension(F5):
    x, y = _simple_system(F5)
    S = BiHomSystem(F5, 1, 1, [x * x - 2, y - x - 1])
    res = solve_desk(S, seed=1, strategy="eliminate")
    assert res.degree == 2
    ok, rep = verify_resolution(res, S)
    assert ok, rep


def test_enumerate_vs_eliminate_bilinear():
    F31 = FieldCtx(31)
    rng = random.Random(7)
    for trial in range(6):
        terms_a = {e: rng.randrange(31) for e in [(0, 0), (1, 0), (0, 1), (1, 1)]}
        terms_b = {e: rng.randrange(31) for e in [(0, 0), (1, 0), (0, 1), (1, 1)]}
        A = SparseMPoly(F31, 2, terms_a)
        B = SparseMPoly(F31, 2, terms_b)
        S = BiHomSystem(F31, 1, 1, [A, B])
        try:
            r1 = solve_desk(S, seed=trial, strategy="enumerate", max_ladder=2)
            r2 = solve_desk(S, seed=trial, strategy="eliminate")
        except NotZeroDimensional:
            continue
        assert r1.degree == r2.degree


def test_count_bounded_by_bezout_exhaustive():
    F31 = FieldCtx(31)
    rng = random.Random(4)
    for trial in range(10):
        terms_a = {e: rng.randrange(31) for e in [(0, 0), (1, 0), (0, 1), (1, 1)]}
        terms_b = {e: rng.randrange(31) for e in [(0, 0), (1, 0), (0, 1), (1, 1)]}
        S = BiHomSystem(F31, 1, 1,
                        [SparseMPoly(F31, 2, terms_a), SparseMPoly(F31, 2, terms_b)])
        bound = bezout_bound(1, 1, max(S.d_x, 1), max(S.d_y, 1), 2).exact
        count = 0
        for a in range(31):
            for b in range(31):
                pt = [F31.el(a), F31.el(b)]
                if all(eq.eval(pt).is_zero() for eq in S.equations):
                    count += 1
        assert count <= bound


def test_verify_catches_tampering(F7):
    x, y = _simple_system(F7)
    S = BiHomSystem(F7, 1, 1, [x * x - 1, y - x], [x - 1])
    res = solve_desk(S, seed=1)
    # tamper 1: non-squarefree Q
    Qbad = res.Q * res.Q
    bad = GeometricResolution(res.ctx, res.form, Qbad, res.params, check=False)
    ok, rep = verify_resolution(bad, S)
    assert not ok and "squarefree" in rep["reason"]
    # tamper 2: perturbed parametrization
    bump = UniPoly.constant(res.ctx, 1)
    params = [res.params[0] + bump] + res.params[1:]
    bad = GeometricResolution(res.ctx, res.form, res.Q, params, check=False)
    ok, rep = verify_resolution(bad, S)
    assert not ok and rep["reason"]
    # tamper 3: drop the inequation filtering (include the excluded root 1)
    pts = [[F7(1), F7(1)], [F7(6), F7(6)]]
    res2 = resolution_from_points(F7, pts, seed=2)
    ok, rep = verify_resolution(res2, S)
    assert not ok and "inequation" in rep["reason"]


def test_union_idempotent_and_disjoint(F7):
    x, y = _simple_system(F7)
    r1 = solve_desk(BiHomSystem(F7, 1, 1, [x - 1, y - 1]), seed=2)
    r2 = solve_desk(BiHomSystem(F7, 1, 1, [x - 2, y - 2]), seed=2)
    u = union_resolutions(r1, r2, seed=3)
    assert u.degree == 2
    again = union_resolutions(u, u, seed=4)
    assert again.degree == 2
    merged = union_resolutions(u, r1, seed=5)
    assert merged.degree == 2


def test_union_degree_additivity_random(F7, rng):
    # random disjoint point sets: degree of the union is the set-union size
    for _ in range(6):
        pts1 = {(rng.randrange(7), rng.randrange(7)) for _ in range(rng.randrange(1, 4))}
        pts2 = {(rng.randrange(7), rng.randrange(7)) for _ in range(rng.randrange(1, 4))}
        r1 = resolution_from_points(F7, [[F7(a), F7(b)] for a, b in pts1], seed=1)
        r2 = resolution_from_points(F7, [[F7(a), F7(b)] for a, b in pts2], seed=1)
        u = union_resolutions(r1, r2, seed=6)
        assert u.degree == len(pts1 | pts2)


def test_change_primitive_form(F7):
    pts = [[F7(1), F7(2)], [F7(3), F7(4)], [F7(5), F7(5)]]
    res = resolution_from_points(F7, pts, seed=1)
    # values 1*x + 3*y: 0, 1, 6 -- separating
    new = change_primitive_form(res, [res.ctx.el(1), res.ctx.el(3)], seed=2)
    got = {tuple(c.c[0] for c in coords) for _, coords in new.points()}
    assert got == {(1, 2), (3, 4), (5, 5)}
    # a colliding form is rejected: 2x + 3y takes the value 4 twice
    from hyperzeta.errors import PrimitiveFormFailure
    with pytest.raises(PrimitiveFormFailure):
        change_primitive_form(res, [res.ctx.el(2), res.ctx.el(3)], seed=2)
    # linear-form consistency is part of verification
    sys_trivial = BiHomSystem(res.ctx, 1, 1, [])
    ok, rep = verify_resolution(new, sys_trivial)
    assert ok, rep


def test_prepare_square_system(F7):
    x, y = _simple_system(F7)
    S = BiHomSystem(F7, 1, 1, [x * x - 1, y - x])
    sq, rec = prepare_square_system(S, seed=0, forced_matrix=[[1, 0], [0, 1]])
    assert sq.m == 2
    assert rec["e"] == prep_extension_degree(2, S.d_x + S.d_y, 7)
    # identity hook: equations agree up to the field lift
    lifted = S.lift(sq.ctx)
    for a, b in zip(sq.equations, lifted.equations):
        assert a.terms == b.terms
    # distinct seeds give distinct matrices
    _, rec1 = prepare_square_system(S, seed=1)
    _, rec2 = prepare_square_system(S, seed=2)
    assert rec1["matrix"] != rec2["matrix"]
    assert rec1["seed"] == 1


def test_bivariate_resultant_matches_evaluations():
    rng = random.Random(0)
    for _ in range(25):
        p = rng.choice([5, 7, 31])
        ctx = FieldCtx(p)
        def rnd():
            t = {}
            for i in range(rng.randrange(1, 4) + 1):
                for j in range(rng.randrange(1, 4) + 1):
                    if rng.random() < 0.7:
                        t[(i, j)] = rng.randrange(p)
            return SparseMPoly(ctx, 2, t)
        A, B = rnd(), rnd()
        da, db = A.degree_var(1), B.degree_var(1)
        if da < 1 or db < 1:
            continue
        R, rctx = resultant_bivariate(A, B, 0, 1)
        assert rctx == ctx
        for a in range(p):
            av = ctx.el(a)
            ua = [ctx.zero] * (da + 1)
            ub = [ctx.zero] * (db + 1)
            for e, c in A.terms.items():
                ua[e[1]] = ctx.add(ua[e[1]], ctx.mul(c, ctx.pow(av, e[0])))
            for e, c in B.terms.items():
                ub[e[1]] = ctx.add(ub[e[1]], ctx.mul(c, ctx.pow(av, e[0])))
            pa = UniPoly(ctx, [FieldElement(ctx, c) for c in ua])
            pb = UniPoly(ctx, [FieldElement(ctx, c) for c in ub])
            if pa.degree != da or pb.degree != db:
                continue
            direct = pa.resultant(pb)
            ours = R(FieldElement(ctx, av)) if not R.is_zero() else direct * 0
            assert direct == ours


def test_system_serialization_roundtrip(F7):
    x, y = _simple_system(F7)
    S = BiHomSystem(F7, 1, 1, [x * x - 1, y - x], [x - 1])
    data = S.serialize()
    S2 = BiHomSystem.deserialize(data)
    assert S2.equations[0].terms == S.equations[0].terms
    assert S2.inequations[0].terms == S.inequations[0].terms
    res = solve_desk(S, seed=1)
    r2 = GeometricResolution.deserialize(res.serialize())
    ok, _ = verify_resolution(r2, S2)
    assert ok


def test_degree_records_and_t_trick(F7):
    x, y = _simple_system(F7)
    S = BiHomSystem(F7, 1, 1, [x * x * y - 1, y - x], [x])
    assert S.degree_records[0] == (2, 1)
    assert S.check_records()
    St = S.with_t_trick()
    assert St.m == 3 and not St.inequations
    assert St.n == 3
