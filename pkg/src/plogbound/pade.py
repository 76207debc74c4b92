"""Exact construction of the simultaneous (second-kind) Pade system for the
functions log(1 + alpha_j z), the associated integer combinations T(k, mu),
and the determinant of the B-value matrix.

Everything here is exact rational arithmetic; the p-adic remainder values
S_{k,mu,j}(1) are produced through the certified p-adic logarithm.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from math import comb, factorial

from .errors import InternalConsistencyError
from .lcm import lcm_upto
from .padic import PadicValue, _ilog, _vp_int, padic_log_residue, padic_valuation

Poly = tuple[Fraction, ...]  # coefficients, ascending degree


@dataclass(frozen=True)
class AlphaVector:
    """The rational arguments alpha_1..alpha_m with their shared data.

    Q is a positive integer with Q*alpha_i integral for every i; M is the
    maximum archimedean absolute value (never 1).  When a prime is attached,
    min_valuation is the smallest v_p(alpha_i), so the maximum p-adic
    absolute value is p^(-min_valuation) < 1; a prime-free vector supports
    the purely archimedean operations (construction, determinant, orders).
    """

    prime: int | None
    entries: tuple[Fraction, ...]
    Q: int
    M: Fraction
    min_valuation: int | None

    @classmethod
    def build(cls, prime: int | None, entries, Q: int | None = None) -> "AlphaVector":
        entries = tuple(Fraction(a) for a in entries)
        if not entries:
            raise ValueError("need at least one alpha")
        if any(a == 0 for a in entries):
            raise ValueError("alphas must be nonzero")
        if len(set(entries)) != len(entries):
            raise ValueError("alphas must be pairwise distinct")
        min_val = None
        if prime is not None:
            vals = []
            for a in entries:
                v = padic_valuation(a, prime)
                if v < 1:
                    raise ValueError(f"|{a}|_{prime} >= 1; all alphas need v_p >= 1")
                vals.append(int(v))
            min_val = min(vals)
        if Q is None:
            Q = 1
            for a in entries:
                Q = Q * a.denominator // _gcd(Q, a.denominator)
        if Q < 1:
            raise ValueError("Q must be a positive integer")
        for a in entries:
            if (Q * a).denominator != 1:
                raise ValueError(f"Q={Q} does not clear the denominator of {a}")
        M = max(abs(a) for a in entries)
        if M == 1:
            raise ValueError("max |alpha_i| must differ from 1")
        return cls(prime, entries, Q, M, min_val)

    @property
    def m(self) -> int:
        return len(self.entries)

    def alpha_p(self) -> Fraction:
        """max_i |alpha_i|_p = p^(-min_valuation), as an exact rational."""
        if self.prime is None:
            raise ValueError("no prime attached to this alpha vector")
        return Fraction(1, self.prime ** self.min_valuation)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _poly_mul(a: Poly, b: Poly) -> Poly:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca == 0:
            continue
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return tuple(out)


def sigma_coeffs(k: int, alphas: AlphaVector) -> tuple[Fraction, ...]:
    """Coefficients sigma_0..sigma_mk of prod_j (alpha_j - z)^k."""
    if k < 1:
        raise ValueError("k must be >= 1")
    poly: Poly = (Fraction(1),)
    for a in alphas.entries:
        factor: Poly = (a, Fraction(-1))
        for _ in range(k):
            poly = _poly_mul(poly, factor)
    return poly


@dataclass(frozen=True)
class PadePolynomials:
    """The denominator A0 and numerators A_j for one (k, mu)."""

    alphas: AlphaVector
    k: int
    mu: int
    sigma: tuple[Fraction, ...]
    A0: Poly
    Aj: tuple[Poly, ...]  # index j-1 for j = 1..m


def build_pade(k: int, mu: int, alphas: AlphaVector) -> PadePolynomials:
    """Construct A0 of degree mk and the m numerators of degree <= mk+mu-1."""
    m = alphas.m
    if not 0 <= mu <= m:
        raise ValueError("mu must lie in [0, m]")
    sigma = sigma_coeffs(k, alphas)
    mk = m * k
    sign = -1 if mk % 2 else 1
    a0 = tuple(sign * comb(mk - h + k + mu, k) * sigma[mk - h] for h in range(mk + 1))
    if a0[mk] == 0:
        raise InternalConsistencyError("leading coefficient of A0 vanished")
    numerators = []
    for a in alphas.entries:
        coeffs = []
        for n_deg in range(mk + mu):
            total = Fraction(0)
            for i in range(mk - min(n_deg, mk), mk + 1):
                e = n_deg - mk + i
                total += comb(i + k + mu, k) * sigma[i] * a ** e / (e + 1)
            coeffs.append(sign * total)
        numerators.append(tuple(coeffs))
    return PadePolynomials(alphas, k, mu, sigma, a0, tuple(numerators))


@dataclass(frozen=True)
class OrderCheck:
    ok: bool
    first_nonzero: int | None
    target: int


def order_check(poly: PadePolynomials, j: int, order_target: int | None = None) -> OrderCheck:
    """Verify that A0(z) * sum_n (alpha_j z)^n/(n+1) - A_j(z) has formal order
    at least order_target (default mk + k + mu), by exact series expansion.
    """
    m, k, mu = poly.alphas.m, poly.k, poly.mu
    mk = m * k
    if order_target is None:
        order_target = mk + k + mu
    a = poly.alphas.entries[j - 1]
    numer = poly.Aj[j - 1]
    for n_deg in range(order_target):
        total = Fraction(0)
        for h in range(min(n_deg, mk) + 1):
            if poly.A0[h] == 0:
                continue
            e = n_deg - h
            total += poly.A0[h] * a ** e / (e + 1)
        if n_deg < len(numer):
            total -= numer[n_deg]
        if total != 0:
            return OrderCheck(False, n_deg, order_target)
    return OrderCheck(True, None, order_target)


@dataclass(frozen=True)
class PadeSystem:
    """B values at t=1 for one (k, mu), their integer scalings, and T."""

    k: int
    mu: int
    B_values: tuple[Fraction, ...]   # index 0..m
    scaled_B: tuple[int, ...]        # Q^(mk+m) * B_values, exact integers
    T: int | None = None             # sum_j lambda_j * scaled_B[j]
    S_val_lower_bounds: tuple[int, ...] = ()


def _eval_poly(coeffs: Poly, x: Fraction) -> Fraction:
    total = Fraction(0)
    for c in reversed(coeffs):
        total = total * x + c
    return total


def B_values_at(poly: PadePolynomials, t: Fraction) -> tuple[Fraction, ...]:
    """(B_0(t), ..., B_m(t)) with the lcm scaling d_{mk+mu} applied."""
    t = Fraction(t)
    d = lcm_upto(poly.alphas.m * poly.k + poly.mu) if poly.alphas.m * poly.k + poly.mu >= 1 else 1
    b0 = d * _eval_poly(poly.A0, -t)
    rest = [d * a * t * _eval_poly(numer, -t)
            for a, numer in zip(poly.alphas.entries, poly.Aj)]
    return (b0, *rest)


def s_valuation_lower_bound(k: int, alphas: AlphaVector) -> int:
    """Certified lower bound on v_p(S_{k,mu,j}(1)) from the remainder estimate
    |S|_p <= (mk+k+1) * alpha^(mk+k+1), uniform in mu and j.
    """
    if alphas.prime is None:
        raise ValueError("no prime attached to this alpha vector")
    n = alphas.m * k + k + 1
    return n * alphas.min_valuation - _ilog(n, alphas.prime)


def eval_B_at_one(poly: PadePolynomials) -> PadeSystem:
    """B values at t=1 plus their Q^(mk+m)-scalings, verified integral."""
    alphas = poly.alphas
    m, k = alphas.m, poly.k
    b_values = B_values_at(poly, Fraction(1))
    scale = alphas.Q ** (m * k + m)
    scaled = []
    for j, b in enumerate(b_values):
        s = scale * b
        if s.denominator != 1:
            raise InternalConsistencyError(
                f"Q^(mk+m)*B_{j}(1) = {s} is not an integer (k={k}, mu={poly.mu})")
        scaled.append(s.numerator)
    s_bounds = ()
    if alphas.prime is not None:
        bound = s_valuation_lower_bound(k, alphas)
        s_bounds = tuple(bound for _ in range(m))
    return PadeSystem(k, poly.mu, b_values, tuple(scaled),
                      S_val_lower_bounds=s_bounds)


def _p_integral_residue(x: Fraction, p: int, k_abs: int) -> int:
    """x mod p^k_abs for a rational with denominator coprime to p."""
    mod = p ** k_abs
    den = x.denominator
    if den % p == 0:
        raise ValueError("value is not p-integral")
    return x.numerator % mod * pow(den, -1, mod) % mod


def remainder_S(k: int, mu: int, j: int, alphas: AlphaVector,
                target_precision: int = 8, escalation_cap: int = 16) -> PadicValue:
    """S_{k,mu,j}(1) = B_0(1)*log(1+alpha_j) - B_j(1) as a PadicValue.

    Computed through the certified p-adic logarithm (identity route) and
    checked against the remainder estimate; precision escalates until the
    valuation is pinned with target_precision digits beyond it.
    """
    p = alphas.prime
    poly = build_pade(k, mu, alphas)
    b = B_values_at(poly, Fraction(1))
    b0, bj = b[0], b[j]
    alpha_j = alphas.entries[j - 1]
    v_bound = s_valuation_lower_bound(k, alphas)
    k_abs = v_bound + target_precision
    for _ in range(escalation_cap):
        log_res = padic_log_residue(alpha_j, p, k_abs)
        mod = p ** k_abs
        r = (_p_integral_residue(b0, p, k_abs) * log_res
             - _p_integral_residue(bj, p, k_abs)) % mod
        if r != 0:
            v = _vp_int(r, p)
            if k_abs - v >= target_precision:
                if v < v_bound:
                    raise InternalConsistencyError(
                        f"v_p(S) = {v} below the remainder estimate {v_bound}")
                unit = r // p ** v
                return PadicValue(p, v, unit, k_abs - v)
            k_abs = v + target_precision
        else:
            k_abs *= 2
    raise InternalConsistencyError(
        f"could not pin v_p(S) within {escalation_cap} precision escalations")


def remainder_S_series(k: int, mu: int, j: int, alphas: AlphaVector,
                       abs_precision: int) -> int:
    """Residue of S_{k,mu,j}(1) modulo p^abs_precision by direct summation of
    the defining tail series (independent oracle for the identity route).

    Term N has valuation >= (N+1)*a - floor(log_p(N+1)) with a the minimum
    valuation of the alphas, which is nondecreasing in N, so truncation is
    certified the same way as for the logarithm series.
    """
    p = alphas.prime
    m = alphas.m
    mk = m * k
    a_min = alphas.min_valuation
    sigma = sigma_coeffs(k, alphas)
    alpha_j = alphas.entries[j - 1]
    d = lcm_upto(mk + mu) if mk + mu >= 1 else 1
    sign = -1 if mk % 2 else 1

    n_end = mk + k + mu
    while (n_end + 1) * a_min - _ilog(n_end + 1, p) <= abs_precision:
        n_end += 1

    total = Fraction(0)
    for n_deg in range(mk + k + mu, n_end):
        r_n = Fraction(0)
        for i in range(mk + 1):
            e = n_deg - mk + i
            r_n += comb(i + k + mu, k) * sigma[i] * alpha_j ** e / (e + 1)
        r_n *= sign
        term = d * alpha_j * r_n
        total += term if n_deg % 2 == 0 else -term
    if total == 0:
        return 0
    return _p_integral_residue(total, p, abs_precision)


def determinant_delta(k: int, alphas: AlphaVector, t) -> Fraction:
    """Exact determinant of the (m+1)x(m+1) matrix of B values at t,
    rows indexed by mu = 0..m, by fraction-exact Gaussian elimination.
    """
    t = Fraction(t)
    m = alphas.m
    rows = [list(B_values_at(build_pade(k, mu, alphas), t)) for mu in range(m + 1)]
    n = m + 1
    det = Fraction(1)
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != col:
            rows[col], rows[pivot_row] = rows[pivot_row], rows[col]
            det = -det
        pivot = rows[col][col]
        det *= pivot
        for r in range(col + 1, n):
            factor = rows[r][col] / pivot
            if factor == 0:
                continue
            for c in range(col, n):
                rows[r][c] -= factor * rows[col][c]
    return det


def closed_form_delta(k: int, alphas: AlphaVector, t) -> Fraction:
    """The closed form for the determinant, up to sign:

        prod_{mu=0}^{m} d_{mk+mu} * (k!)^m / (mk+m)!
        * (t^(m(m+1)/2) * alpha_1...alpha_m * prod_{i<j}(alpha_i - alpha_j))^(2k+1)

    The lcm product is the scaling the d_{mk+mu} factors contribute row by
    row; it is pinned empirically by the m=1, k=1 hand value and the exact
    determinant tests, and deliberately kept separate from the bare formula.
    """
    t = Fraction(t)
    m = alphas.m
    mk = m * k
    d_product = 1
    for mu in range(m + 1):
        d_product *= lcm_upto(mk + mu) if mk + mu >= 1 else 1
    core = t ** (m * (m + 1) // 2)
    for a in alphas.entries:
        core *= a
    for i in range(m):
        for j in range(i + 1, m):
            core *= alphas.entries[i] - alphas.entries[j]
    return d_product * Fraction(factorial(k) ** m, factorial(mk + m)) * core ** (2 * k + 1)


def select_nonzero_row(k: int, alphas: AlphaVector,
                       lambdas: tuple[int, ...]) -> PadeSystem:
    """Smallest mu with T(k, mu) = sum_j lambda_j * Q^(mk+m) B_j(1) nonzero.

    Existence is guaranteed by the nonvanishing determinant; exhausting all
    rows is an internal-consistency failure.
    """
    m = alphas.m
    if len(lambdas) != m + 1:
        raise ValueError(f"need {m + 1} lambdas, got {len(lambdas)}")
    if all(l == 0 for l in lambdas):
        raise ValueError("lambdas must not all vanish")
    for mu in range(m + 1):
        system = eval_B_at_one(build_pade(k, mu, alphas))
        t_val = sum(l * s for l, s in zip(lambdas, system.scaled_B))
        if t_val != 0:
            return replace(system, T=t_val)
    raise InternalConsistencyError(
        "T(k, mu) vanished for every mu despite a nonzero determinant")
