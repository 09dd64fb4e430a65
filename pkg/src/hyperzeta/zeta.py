"""Zeta numerators: naive computation from point counts, Weil verification,
and the prime-by-prime Schoof-Pila driver with CRT reconstruction.

Conventions (fixed once):
    P(T) = prod (1 - u_i T) = 1 + a_1 T + ... + q^g T^{2g}
    chi(T) = T^{2g} P(1/T)  (monic, the Frobenius characteristic polynomial)
so a_i of P equals the coefficient of T^{2g-i} in chi.
"""

import cmath
import math
import time

from .algebra import IntPoly, crt_reconstruct, next_prime
from .curve import count_points_naive
from .errors import BackendFailure, InvariantViolation, TooLarge


class ZetaNumerator:
    """P(T) = 1 + a_1 T + ... + a_2g T^2g with the Weil invariants."""

    __slots__ = ("g", "q", "a")

    def __init__(self, g, q, coeffs, check=True):
        self.g = g
        self.q = q
        self.a = tuple(int(c) for c in coeffs)
        if check:
            self.validate()

    def validate(self):
        g, q, a = self.g, self.q, self.a
        if len(a) != 2 * g + 1:
            raise InvariantViolation("wrong number of coefficients")
        if a[0] != 1:
            raise InvariantViolation("a_0 must be 1")
        for i in range(g + 1):
            if a[2 * g - i] != q ** (g - i) * a[i]:
                raise InvariantViolation(
                    f"functional equation fails at i={i}: "
                    f"a_{2*g-i}={a[2*g-i]} vs q^{g-i}*a_{i}={q**(g-i)*a[i]}")
        bound = math.comb(2 * g, g) * q ** g
        for i, c in enumerate(a):
            if abs(c) > bound:
                raise InvariantViolation(f"|a_{i}| = {abs(c)} exceeds {bound}")
        if self(1) <= 0:
            raise InvariantViolation("P(1) must be positive")

    def __call__(self, t):
        acc = 0
        for c in reversed(self.a):
            acc = acc * t + c
        return acc

    def __eq__(self, other):
        return (isinstance(other, ZetaNumerator) and self.g == other.g
                and self.q == other.q and self.a == other.a)

    def __repr__(self):
        return f"ZetaNumerator(g={self.g}, q={self.q}, a={list(self.a)})"

    def chi(self):
        """The characteristic polynomial chi(T) = T^2g P(1/T) as an IntPoly."""
        return IntPoly(list(reversed(self.a)))

    def chi_mod(self, ell):
        return [c % ell for c in reversed(self.a)]

    def jacobian_order(self, e=1):
        """#J(F_{q^e}) = prod (1 - u_i^e), exactly."""
        return self.extension(e)(1)

    def power_sums(self, n):
        """s_k = sum u_i^k for k = 1..n via the chi recurrence."""
        g, q = self.g, self.q
        # chi(T) = T^2g + c_{2g-1} T^{2g-1} + ... + c_0, c_j = a_{2g-j}
        c = list(reversed(self.a))  # c[j] = coeff of T^j
        s = [0] * (n + 1)
        for k in range(1, n + 1):
            if k <= 2 * g:
                acc = -k * c[2 * g - k]
                for i in range(1, k):
                    acc -= c[2 * g - i] * s[k - i]
            else:
                acc = 0
                for i in range(1, 2 * g + 1):
                    acc -= c[2 * g - i] * s[k - i]
            s[k] = acc
        return s[1:]

    def curve_count(self, i=1):
        """#C(F_{q^i}) predicted by this numerator."""
        s = self.power_sums(i)
        return self.q ** i + 1 - s[i - 1]

    def extension(self, e):
        """The numerator for the same curve over F_{q^e} (roots u_i^e)."""
        if e == 1:
            return self
        g = self.g
        s = self.power_sums(2 * g * e)
        se = [s[e * k - 1] for k in range(1, 2 * g + 1)]
        coeffs = _newton_to_coeffs(se, 2 * g)
        return ZetaNumerator(g, self.q ** e, coeffs)

    def serialize(self):
        return {"g": self.g, "q": self.q, "P": list(self.a)}


def _newton_to_coeffs(power_sums, n):
    """From s_1..s_n to the coefficients of prod(1 - u_i T) (length n+1)."""
    e = [1] + [0] * n
    for k in range(1, n + 1):
        acc = 0
        for i in range(1, k + 1):
            acc += (-1) ** (i - 1) * e[k - i] * power_sums[i - 1]
        if acc % k != 0:
            raise InvariantViolation("Newton identities gave a non-integer")
        e[k] = acc // k
    return [(-1) ** k * e[k] for k in range(n + 1)]


def naive_zeta(curve, guard=1 << 24, seed=0):
    """Zeta numerator from exhaustive point counts over F_{q^i}, i <= g."""
    g = curve.g
    q = curve.ctx.q
    if q ** g > guard:
        raise TooLarge("naive zeta enumeration guard exceeded")
    sums = []
    for i in range(1, g + 1):
        n_i = count_points_naive(curve, i, guard=guard, seed=seed)
        sums.append(q ** i + 1 - n_i)
    half = _newton_to_coeffs(sums, g)
    coeffs = list(half[: g + 1])
    for i in range(g - 1, -1, -1):
        coeffs.append(q ** (g - i) * coeffs[i])
    return ZetaNumerator(g, q, coeffs)


# ---------------------------------------------------------------------------
# Weil verification


def _poly_roots_complex(coeffs, iters=400):
    """Durand-Kerner roots of a polynomial given little-endian int coeffs."""
    n = len(coeffs) - 1
    lead = coeffs[-1]
    cs = [c / lead for c in coeffs]
    roots = [cmath.exp(2j * cmath.pi * k / n) * (0.4 + 0.9j) ** 0 * (1.1 ** k)
             for k in range(n)]
    roots = [0.4 + 0.9j * 0 + r * 0.7 for r in roots]
    for _ in range(iters):
        done = True
        new = []
        for i, r in enumerate(roots):
            num = _horner_c(cs, r)
            den = 1.0
            for j, s in enumerate(roots):
                if j != i:
                    den *= (r - s)
            if den == 0:
                den = 1e-30
            delta = num / den
            if abs(delta) > 1e-14 * max(1.0, abs(r)):
                done = False
            new.append(r - delta)
        roots = new
        if done:
            break
    return roots


def _horner_c(cs, x):
    acc = 0j
    for c in reversed(cs):
        acc = acc * x + c
    return acc


def weil_verify(P, tol=1e-6):
    """Exact functional-equation/bound checks; advisory |u_i| = sqrt(q) check."""
    report = {"functional_equation": True, "coeff_bounds": True,
              "positivity": True, "root_moduli_ok": True,
              "max_relative_modulus_error": 0.0}
    g, q, a = P.g, P.q, P.a
    try:
        P.validate()
    except InvariantViolation as exc:
        msg = str(exc)
        if "functional" in msg:
            report["functional_equation"] = False
        elif "exceeds" in msg:
            report["coeff_bounds"] = False
        else:
            report["positivity"] = False
        report["error"] = msg
        return report
    # advisory floating-point check of reciprocal-root moduli
    roots = _poly_roots_complex(list(a))
    target = math.sqrt(q)
    worst = 0.0
    for r in roots:
        # roots of P are 1/u_i, so |r| should be 1/sqrt(q)
        m = abs(r)
        if m == 0:
            report["root_moduli_ok"] = False
            continue
        err = abs(1.0 / m - target) / target
        worst = max(worst, err)
    report["max_relative_modulus_error"] = worst
    if worst > tol:
        report["root_moduli_ok"] = False
    return report


# ---------------------------------------------------------------------------
# Schoof-Pila driver


def schoof_pila(curve, backend="bruteforce", seed=0, policy="fail",
                guards=None, max_retries=3, collect_report=False):
    """Algorithm-1 driver: accumulate chi mod ell over primes ell until the
    CRT modulus exceeds 2*C(2g,g)*q^g + 1, then reconstruct P.

    backend: 'bruteforce' or 'systems' (per-ell torsion computation).
    policy: on systems-backend failure, 'fallback' (to brute force),
    'skip' (move to the next prime) or 'fail'.
    """
    from . import torsion as _torsion

    g = curve.g
    q = curve.ctx.q
    bound = math.comb(2 * g, g) * q ** g
    target = 2 * bound + 1
    last_error = None
    for attempt in range(max_retries):
        attempt_seed = (seed, attempt).__hash__() & 0x7FFFFFFF
        records = []
        residues = [[] for _ in range(2 * g + 1)]
        R = 1
        ell = 1
        try:
            while R <= target:
                ell = next_prime(ell)
                if q % ell == 0:
                    continue
                t0 = time.time()
                used_backend = backend
                try:
                    chi_l = _torsion.chi_mod_ell(curve, ell, backend=backend,
                                                 seed=attempt_seed, guards=guards)
                except Exception as exc:  # noqa: BLE001 - policy dispatch
                    if backend == "systems" and policy == "fallback":
                        used_backend = "bruteforce"
                        chi_l = _torsion.chi_mod_ell(curve, ell,
                                                     backend="bruteforce",
                                                     seed=attempt_seed,
                                                     guards=guards)
                    elif policy == "skip":
                        records.append({"ell": ell, "backend": backend,
                                        "skipped": True, "reason": str(exc)})
                        continue
                    else:
                        raise BackendFailure(f"ell={ell}: {exc}") from exc
                elapsed = time.time() - t0
                records.append({"ell": ell, "backend": used_backend,
                                "chi_mod_ell": list(chi_l),
                                "seconds": round(elapsed, 6)})
                # chi_l is monic of degree 2g: chi coefficients c_0..c_2g
                for j in range(2 * g + 1):
                    residues[j].append((chi_l[j], ell))
                R *= ell
            chi_coeffs = [crt_reconstruct(residues[j], bound)
                          for j in range(2 * g + 1)]
            # P coefficients are chi reversed
            a = list(reversed(chi_coeffs))
            P = ZetaNumerator(g, q, a)
            # residue consistency
            for j in range(2 * g + 1):
                for r, m in residues[j]:
                    if (chi_coeffs[j] - r) % m != 0:
                        raise InvariantViolation("CRT residue mismatch")
            if collect_report:
                return P, {"schema": "hyperzeta/1", "kind": "zeta_schoof",
                           "g": g, "q": q, "P": list(P.a),
                           "target_R": target, "R": R, "per_ell": records,
                           "seed": seed, "attempt": attempt}
            return P
        except (InvariantViolation, BackendFailure) as exc:
            last_error = exc
            if isinstance(exc, BackendFailure):
                raise
            continue
    raise InvariantViolation(
        f"schoof_pila failed after {max_retries} attempts: {last_error}")
