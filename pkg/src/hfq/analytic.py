"""Exact restricted totient-ratio sums and their per-degree growth rate.

The object of interest is the sum of phi(B)/|B|^2 over non-zero B of degree
at most k whose shared prime support with a fixed W = W2*W3 is exactly the
primes of W3.  Each partial sum is an exact rational; the per-degree
increment approaches the closed-form slope
(q-1)^2/q * prod_{P|W}(1+|P|^-1)^-1 * prod_{P|W3}|P|^-1, and the
verification suite checks that numerically since the approach rate carries
an unspecified constant.

phi is computed for every monic polynomial up to the cutoff with a linear
sieve (each composite is produced exactly once from its smallest-factor
decomposition), keyed by the base-q digit code of the coefficient vector.
Unit multiples share phi, absolute value, and the support condition, so the
sum over all B is (q-1) times the sum over monic B; that equivalence is
enforced against the literal all-B enumeration in the tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List

import numpy as np

from .errors import NotCoprimeError, NotMonicError, TooLargeError
from .field import FieldCtx
from .polyring import Poly, factor, gcd

_SIEVE_CACHE: dict = {}


def _encode(ctx: FieldCtx, coeffs) -> int:
    code = 0
    for c in reversed(coeffs):
        code = code * ctx.q + ctx.to_int(c)
    return code


def _decode_digits(code: int, q: int, width: int):
    out = []
    for _ in range(width):
        code, r = divmod(code, q)
        out.append(r)
    return out


def _phi_array(ctx: FieldCtx, kmax: int) -> np.ndarray:
    """phi for every monic polynomial of degree <= kmax, indexed by digit code."""
    key = (ctx.p, ctx.k, ctx.modulus)
    cached = _SIEVE_CACHE.get(key)
    if cached is not None and cached[0] >= kmax:
        return cached[1]
    q = ctx.q
    phi = np.zeros(q ** (kmax + 1), dtype=np.int64)
    phi[1] = 1  # the polynomial 1
    primes: list = []  # (degree, code, element tuple) in discovery order
    for d in range(1, kmax + 1):
        prime_phi = q**d - 1
        for code in range(q**d, 2 * q**d):
            digits = _decode_digits(code, q, d + 1)
            if phi[code] == 0:
                phi[code] = prime_phi
                primes.append((d, code, tuple(ctx.from_int(r) for r in digits)))
            phi_b = int(phi[code])
            b_elems = None
            for dp, _pcode, ptup in primes:
                if dp + d > kmax:
                    break
                if b_elems is None:
                    b_elems = tuple(ctx.from_int(r) for r in digits)
                m_code = _encode(ctx, _tuple_mul(ctx, ptup, b_elems))
                divides = _divides(ctx, ptup, b_elems)
                phi[m_code] = phi_b * (q**dp if divides else q**dp - 1)
                if divides:
                    break
    _SIEVE_CACHE[key] = (kmax, phi)
    return phi


def _tuple_mul(ctx: FieldCtx, a, b):
    if ctx.k == 1:
        p = ctx.p
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return [x % p for x in out]
    out = [ctx.zero] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai != ctx.zero:
            for j, bj in enumerate(b):
                out[i + j] = ctx.add(out[i + j], ctx.mul(ai, bj))
    return out


def _divides(ctx: FieldCtx, den, num) -> bool:
    if len(den) > len(num):
        return False
    if ctx.k == 1 and len(den) == 2:
        # degree-one divisor: evaluate at its root
        p = ctx.p
        root = (-den[0] * pow(den[1], p - 2, p)) % p
        val = 0
        for c in reversed(num):
            val = (val * root + c) % p
        return val == 0
    rem = list(num)
    dd = len(den) - 1
    inv_lead = ctx.inv(den[-1])
    for i in range(len(rem) - 1, dd - 1, -1):
        c = rem[i]
        if c == ctx.zero:
            continue
        f = ctx.mul(c, inv_lead)
        for j in range(dd + 1):
            rem[i - dd + j] = ctx.sub(rem[i - dd + j], ctx.mul(f, den[j]))
    return all(c == ctx.zero for c in rem[:dd])


def _validate(w2: Poly, w3: Poly) -> None:
    if w2.is_zero or not w2.is_monic or w3.is_zero or not w3.is_monic:
        raise NotMonicError("W2 and W3 must be monic and non-zero")
    if gcd(w2, w3).degree != 0:
        raise NotCoprimeError("W2 and W3 must be coprime")


def _support_flags(ctx: FieldCtx, w2: Poly, w3: Poly):
    """The primes of W = W2 W3 with a flag: must they divide B or must they not."""
    w3_primes = {p for p, _ in factor(w3)} if w3.degree > 0 else set()
    w = w2 * w3
    out = []
    if w.degree > 0:
        for p, _ in factor(w):
            out.append((p, p in w3_primes))
    return out


def _degree_numerators(ctx: FieldCtx, w2: Poly, w3: Poly, kmax: int) -> List[int]:
    """num[d] = sum of phi(B) over qualifying monic B of degree d."""
    phi = _phi_array(ctx, kmax)
    flags = _support_flags(ctx, w2, w3)
    q = ctx.q
    nums = [0] * (kmax + 1)
    nums[0] = 1 if all(not need for _, need in flags) else 0
    simple = ctx.k == 1 and all(p.degree == 1 for p, _ in flags)
    for d in range(1, kmax + 1):
        codes = np.arange(q**d, 2 * q**d, dtype=np.int64)
        if simple:
            digits = []
            rest = codes.copy()
            for _ in range(d + 1):
                rest, dig = np.divmod(rest, q)
                digits.append(dig)
            mask = np.ones(len(codes), dtype=bool)
            for p, need in flags:
                root = (-p.coeff(0)) % ctx.p
                val = np.zeros(len(codes), dtype=np.int64)
                for dig in reversed(digits):
                    val = (val * root + dig) % ctx.p
                mask &= (val == 0) if need else (val != 0)
            nums[d] = int(phi[codes[mask]].sum())
        else:
            total = 0
            for code in range(q**d, 2 * q**d):
                digits = _decode_digits(code, q, d + 1)
                b = Poly(ctx, tuple(ctx.from_int(r) for r in digits))
                ok = True
                for p, need in flags:
                    if ((b % p).is_zero) != need:
                        ok = False
                        break
                if ok:
                    total += int(phi[code])
            nums[d] = total
    return nums


def phi_ratio_sum(w2: Poly, w3: Poly, k: int, guard: int = 10**8) -> Fraction:
    """Exact sum of phi(B)/|B|^2 over non-zero B of degree <= k whose prime
    support inside W = W2 W3 is exactly the primes of W3."""
    _validate(w2, w3)
    if k < 0:
        raise ValueError("need k >= 0")
    ctx = w2.ctx
    if ctx.q ** (k + 1) > guard:
        raise TooLargeError(f"enumeration space q^{k + 1} exceeds the cap {guard}")
    nums = _degree_numerators(ctx, w2, w3, k)
    q = ctx.q
    return sum(Fraction((q - 1) * nums[d], q ** (2 * d)) for d in range(k + 1))


def phi_slope(w2: Poly, w3: Poly) -> Fraction:
    """Per-degree limit rate of the restricted sum, as an exact rational."""
    _validate(w2, w3)
    ctx = w2.ctx
    q = ctx.q
    out = Fraction((q - 1) ** 2, q)
    w = w2 * w3
    if w.degree > 0:
        for p, _ in factor(w):
            ap = q**p.degree
            out *= Fraction(ap, ap + 1)
    if w3.degree > 0:
        for p, _ in factor(w3):
            out *= Fraction(1, q**p.degree)
    return out


@dataclass
class PhiSumReport:
    """Partial sums S(0..k_max), their increments, and the predicted slope."""

    w2: Poly
    w3: Poly
    k_max: int
    partial_sums: List[Fraction]
    increments: List[Fraction]
    slope: Fraction

    def csv_rows(self):
        """One row per k: k, S(k), increment(k), slope (rationals as num/den)."""
        rows = []
        for k in range(self.k_max + 1):
            s = self.partial_sums[k]
            inc = self.increments[k]
            rows.append(
                (
                    k,
                    s.numerator,
                    s.denominator,
                    inc.numerator,
                    inc.denominator,
                    self.slope.numerator,
                    self.slope.denominator,
                )
            )
        return rows


def convergence_report(
    w2: Poly, w3: Poly, k_max: int, guard: int = 10**8
) -> PhiSumReport:
    """Partial sums with increments; increment(0) is S(0) itself."""
    _validate(w2, w3)
    if k_max < 0:
        raise ValueError("need k_max >= 0")
    ctx = w2.ctx
    if ctx.q ** (k_max + 1) > guard:
        raise TooLargeError(f"enumeration space q^{k_max + 1} exceeds the cap {guard}")
    nums = _degree_numerators(ctx, w2, w3, k_max)
    q = ctx.q
    partial: List[Fraction] = []
    increments: List[Fraction] = []
    acc = Fraction(0)
    for d in range(k_max + 1):
        inc = Fraction((q - 1) * nums[d], q ** (2 * d))
        acc += inc
        increments.append(inc)
        partial.append(acc)
    return PhiSumReport(w2, w3, k_max, partial, increments, phi_slope(w2, w3))
