import random

import pytest

from hyperzeta.algebra import FieldCtx, UniPoly
from hyperzeta.curve import HyperellipticCurve


@pytest.fixture
def F5():
    return FieldCtx(5)


@pytest.fixture
def F7():
    return FieldCtx(7)


@pytest.fixture
def e_curve(F5):
    """y^2 = x^3 + x + 1 over F_5: the running example (9 points)."""
    return HyperellipticCurve(F5, UniPoly.from_ints(F5, [1, 1, 0, 1]))


@pytest.fixture
def g2_curve(F7):
    """y^2 = x^5 + 1 over F_7 (genus 2)."""
    return HyperellipticCurve(F7, UniPoly.from_ints(F7, [1, 0, 0, 0, 0, 1]))


def random_curve(rng, p, genus):
    """A random squarefree monic odd-degree curve over F_p."""
    ctx = FieldCtx(p)
    while True:
        coeffs = [rng.randrange(p) for _ in range(2 * genus + 1)] + [1]
        try:
            return HyperellipticCurve(ctx, UniPoly.from_ints(ctx, coeffs))
        except ValueError:
            continue


@pytest.fixture
def rng():
    return random.Random(20240817)
