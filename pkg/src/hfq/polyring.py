"""Polynomial arithmetic over F_q with the conventions used throughout.

Polynomials are immutable coefficient tuples, constant term first, with no
trailing zeros; the zero polynomial has an empty tuple and degree NEG_INF.
|A| denotes q^(deg A) with |0| = 0.  Greatest common divisors are monic and
gcd(0, V) is the monic normalization of V.

Enumeration order everywhere is lexicographic on the coefficient tuple with
the constant term varying fastest, so iteration is reproducible.
"""

from __future__ import annotations

from typing import Iterator, Optional

from .errors import (
    BothZeroError,
    DegreeTooLargeError,
    DivideByZeroError,
    NotMonicError,
    ZeroDenominatorError,
    ZeroPolynomialError,
)
from .field import FieldCtx, FqElem

NEG_INF = float("-inf")


class Poly:
    """Polynomial over F_q; supports +, -, *, //, %, divmod, ** and hashing."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs=()):
        cs = tuple(coeffs)
        n = len(cs)
        zero = ctx.zero
        while n and cs[n - 1] == zero:
            n -= 1
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "coeffs", cs[:n])

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # construction helpers

    @classmethod
    def zero(cls, ctx: FieldCtx) -> "Poly":
        return cls(ctx, ())

    @classmethod
    def one(cls, ctx: FieldCtx) -> "Poly":
        return cls(ctx, (ctx.one,))

    @classmethod
    def t(cls, ctx: FieldCtx) -> "Poly":
        return cls(ctx, (ctx.zero, ctx.one))

    @classmethod
    def monomial(cls, ctx: FieldCtx, deg: int, coeff: Optional[FqElem] = None) -> "Poly":
        c = ctx.one if coeff is None else coeff
        return cls(ctx, (ctx.zero,) * deg + (c,))

    @classmethod
    def from_ints(cls, ctx: FieldCtx, ints) -> "Poly":
        """Coefficients given as plain ints, valid for prime fields only."""
        if ctx.k != 1:
            raise ValueError("from_ints needs a prime field")
        return cls(ctx, tuple(c % ctx.p for c in ints))

    @classmethod
    def from_literal(cls, ctx: FieldCtx, text: str) -> "Poly":
        """Parse a comma-separated literal, low-to-high; k>1 entries bracketed."""
        text = text.strip()
        if not text:
            return cls.zero(ctx)
        if ctx.k == 1:
            return cls(ctx, tuple(int(x) % ctx.p for x in text.split(",")))
        parts = []
        depth = 0
        cur = ""
        for ch in text:
            if ch == "," and depth == 0:
                parts.append(cur)
                cur = ""
                continue
            if ch == "[":
                depth += 1
            elif ch == "]":
                depth -= 1
            cur += ch
        parts.append(cur)
        return cls(ctx, tuple(ctx.parse_elem(x) for x in parts))

    # basic queries

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.ctx.one

    @property
    def leading(self) -> FqElem:
        if not self.coeffs:
            raise ZeroPolynomialError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def abs_value(self) -> int:
        """|A| = q^(deg A), with |0| = 0."""
        return 0 if self.is_zero else self.ctx.q ** (len(self.coeffs) - 1)

    def coeff(self, i: int) -> FqElem:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.ctx.zero

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Poly)
            and self.ctx == other.ctx
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        if self.is_zero:
            return "Poly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == self.ctx.zero:
                continue
            cs = self.ctx.format_elem(c)
            if i == 0:
                terms.append(cs)
            elif i == 1:
                terms.append(f"{cs}*T" if c != self.ctx.one else "T")
            else:
                terms.append(f"{cs}*T^{i}" if c != self.ctx.one else f"T^{i}")
        return "Poly(" + " + ".join(terms) + ")"

    def literal(self) -> str:
        """Low-to-high coefficient literal, inverse of from_literal."""
        if self.is_zero:
            return "0"
        return ",".join(self.ctx.format_elem(c) for c in self.coeffs)

    # arithmetic

    def __add__(self, other: "Poly") -> "Poly":
        ctx = self.ctx
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = ctx.add(out[i], c)
        return Poly(ctx, out)

    def __sub__(self, other: "Poly") -> "Poly":
        ctx = self.ctx
        a, b = self.coeffs, other.coeffs
        out = list(a) + [ctx.zero] * (len(b) - len(a))
        for i, c in enumerate(b):
            out[i] = ctx.sub(out[i], c)
        return Poly(ctx, out)

    def __neg__(self) -> "Poly":
        return Poly(self.ctx, tuple(self.ctx.neg(c) for c in self.coeffs))

    def __mul__(self, other: "Poly") -> "Poly":
        ctx = self.ctx
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.zero(ctx)
        if ctx.k == 1:
            p = ctx.p
            out = [0] * (len(a) + len(b) - 1)
            for i, ai in enumerate(a):
                if ai:
                    for j, bj in enumerate(b):
                        out[i + j] += ai * bj
            return Poly(ctx, tuple(c % p for c in out))
        out = [ctx.zero] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai != ctx.zero:
                for j, bj in enumerate(b):
                    out[i + j] = ctx.add(out[i + j], ctx.mul(ai, bj))
        return Poly(ctx, out)

    def scale(self, c: FqElem) -> "Poly":
        ctx = self.ctx
        return Poly(ctx, tuple(ctx.mul(c, x) for x in self.coeffs))

    def shift(self, k: int) -> "Poly":
        """Multiply by T^k."""
        if self.is_zero or k == 0:
            return self
        return Poly(self.ctx, (self.ctx.zero,) * k + self.coeffs)

    def __divmod__(self, other: "Poly"):
        ctx = self.ctx
        if other.is_zero:
            raise DivideByZeroError("polynomial division by zero")
        if self.is_zero or len(self.coeffs) < len(other.coeffs):
            return Poly.zero(ctx), self
        rem = list(self.coeffs)
        dd = len(other.coeffs) - 1
        inv_lead = ctx.inv(other.coeffs[-1])
        quot = [ctx.zero] * (len(rem) - dd)
        for i in range(len(rem) - 1, dd - 1, -1):
            c = rem[i]
            if c == ctx.zero:
                continue
            f = ctx.mul(c, inv_lead)
            quot[i - dd] = f
            for j in range(dd + 1):
                rem[i - dd + j] = ctx.sub(rem[i - dd + j], ctx.mul(f, other.coeffs[j]))
        return Poly(ctx, quot), Poly(ctx, rem[:dd])

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def __pow__(self, e: int) -> "Poly":
        acc = Poly.one(self.ctx)
        base = self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    def monic(self) -> "Poly":
        if self.is_zero:
            raise ZeroPolynomialError("cannot normalize the zero polynomial")
        if self.is_monic:
            return self
        return self.scale(self.ctx.inv(self.coeffs[-1]))

    def evaluate(self, a: FqElem) -> FqElem:
        ctx = self.ctx
        acc = ctx.zero
        for c in reversed(self.coeffs):
            acc = ctx.add(ctx.mul(acc, a), c)
        return acc

    def divides(self, other: "Poly") -> bool:
        if self.is_zero:
            return other.is_zero
        return (other % self).is_zero


def gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor; gcd(0, V) is monic-normalized V."""
    if a.is_zero and b.is_zero:
        raise BothZeroError("gcd(0, 0) is undefined")
    while not b.is_zero:
        a, b = b, a % b
    return a.monic()


def xgcd(a: Poly, b: Poly):
    """(g, s, t) with s*a + t*b = g = gcd(a, b), g monic."""
    if a.is_zero and b.is_zero:
        raise BothZeroError("gcd(0, 0) is undefined")
    ctx = a.ctx
    r0, r1 = a, b
    s0, s1 = Poly.one(ctx), Poly.zero(ctx)
    t0, t1 = Poly.zero(ctx), Poly.one(ctx)
    while not r1.is_zero:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    lead_inv = ctx.inv(r0.leading)
    return r0.monic(), s0.scale(lead_inv), t0.scale(lead_inv)


def coprime(a: Poly, b: Poly) -> bool:
    return gcd(a, b).degree == 0


# enumeration


def polys_of_degree(ctx: FieldCtx, n: int) -> Iterator[Poly]:
    """All polynomials of exact degree n (empty for n < 0)."""
    if n < 0:
        return
    elems = list(ctx.elements())
    nonzero = elems[1:] if ctx.k == 1 else [e for e in elems if e != ctx.zero]
    for lead in nonzero:
        for code in range(ctx.q**n):
            tail = []
            c = code
            for _ in range(n):
                c, r = divmod(c, ctx.q)
                tail.append(elems[r])
            yield Poly(ctx, tuple(tail) + (lead,))


def monics(ctx: FieldCtx, n: int) -> Iterator[Poly]:
    """All monic polynomials of exact degree n (empty for n < 0)."""
    if n < 0:
        return
    elems = list(ctx.elements())
    for code in range(ctx.q**n):
        tail = []
        c = code
        for _ in range(n):
            c, r = divmod(c, ctx.q)
            tail.append(elems[r])
        yield Poly(ctx, tuple(tail) + (ctx.one,))


def polys_upto(ctx: FieldCtx, n: int) -> Iterator[Poly]:
    """All polynomials of degree <= n, including 0; just {0} for n < 0."""
    yield Poly.zero(ctx)
    for d in range(max(n + 1, 0)):
        yield from polys_of_degree(ctx, d)


def monics_upto(ctx: FieldCtx, n: int) -> Iterator[Poly]:
    """All monic polynomials of degree <= n; empty for n < 0."""
    for d in range(max(n + 1, 0)):
        yield from monics(ctx, d)


def enumerate_polys(ctx: FieldCtx, kind: str, n: int) -> Iterator[Poly]:
    """Dispatch by family name: 'A_n' (exact degree), 'M_n' (monic exact),
    'A_<=n' (degree at most n, with 0), 'M_<=n' (monic at most n)."""
    table = {
        "A_n": polys_of_degree,
        "M_n": monics,
        "A_<=n": polys_upto,
        "M_<=n": monics_upto,
    }
    if kind not in table:
        raise ValueError(f"unknown family {kind!r}")
    return table[kind](ctx, n)


def in_interval(b: Poly, a: Poly, h: int) -> bool:
    """True iff deg(B - A) < h; the interval around A has exactly q^h members."""
    if h < 0:
        raise ValueError("interval radius must be >= 0")
    return (b - a).degree < h


def coeff_vector(b: Poly, k: int) -> tuple:
    """Width-(k+1) coefficient vector of B, requiring deg B <= k."""
    if b.degree > k:
        raise DegreeTooLargeError(f"deg {b.degree} exceeds vector width {k}")
    ctx = b.ctx
    return b.coeffs + (ctx.zero,) * (k + 1 - len(b.coeffs))


def laurent_expand(b: Poly, a: Poly, depth: int):
    """Coefficients alpha_0..alpha_depth of B/A = sum alpha_i T^(-i) + O(T^(-depth-1)).

    Synthetic long division; requires A monic nonzero and deg B <= deg A so
    the series starts at T^0 or later.
    """
    if a.is_zero:
        raise ZeroDenominatorError("expansion denominator is zero")
    if not a.is_monic:
        raise NotMonicError("expansion denominator must be monic")
    if b.degree > a.degree:
        from .errors import DegreeMismatchError

        raise DegreeMismatchError("numerator degree exceeds denominator degree")
    ctx = b.ctx
    da = a.degree
    rem = list(coeff_vector(b, da))
    out = []
    for _ in range(depth + 1):
        c = rem[da]
        out.append(c)
        if c != ctx.zero:
            for j in range(da + 1):
                rem[j] = ctx.sub(rem[j], ctx.mul(c, a.coeffs[j]))
        rem = [ctx.zero] + rem[:da]
    return out


# factorization and arithmetic functions


def irreducible(a: Poly) -> bool:
    """Irreducibility by trial division over monic polynomials of degree <= deg/2."""
    d = a.degree
    if d is NEG_INF or d == 0:
        return False
    for e in range(1, d // 2 + 1):
        for cand in monics(a.ctx, e):
            if (a % cand).is_zero:
                return False
    return True


def factor(a: Poly):
    """Monic prime factorization [(P, multiplicity), ...] in enumeration order.

    Trial division over monic polynomials in degree order; the leading unit
    is discarded (factors multiply to the monic normalization of A).
    """
    if a.is_zero:
        raise ZeroPolynomialError("cannot factor 0")
    ctx = a.ctx
    rem = a.monic()
    out = []
    d = 1
    while rem.degree >= 2 * d:
        for cand in monics(ctx, d):
            if rem.degree < 2 * d:
                break
            if (rem % cand).is_zero:
                mult = 0
                while (rem % cand).is_zero:
                    rem = rem // cand
                    mult += 1
                out.append((cand, mult))
        d += 1
    if rem.degree >= 1:
        out.append((rem, 1))
    return out


def prime_multiplicity(a: Poly, prime: Poly) -> int:
    """Largest e with prime^e dividing A; A nonzero, prime monic irreducible."""
    if a.is_zero:
        raise ZeroPolynomialError("multiplicity in 0 is undefined")
    if not prime.is_monic or not irreducible(prime):
        from .errors import NotPrimeError

        raise NotPrimeError(f"{prime!r} is not a monic irreducible")
    e = 0
    while True:
        q, r = divmod(a, prime)
        if not r.is_zero:
            return e
        a = q
        e += 1


def rad(a: Poly) -> Poly:
    """Product of the distinct monic prime divisors of A (rad of a unit is 1)."""
    out = Poly.one(a.ctx)
    for prime, _ in factor(a):
        out = out * prime
    return out


def phi(a: Poly) -> int:
    """Count of C with deg C < deg A and gcd(C, A) = 1, for monic A != 0.

    Computed through the Euler product over the factorization; the counting
    definition is enforced against this in the tests.  phi(1) = 1 by the
    empty-product convention so that phi is multiplicative.
    """
    if a.is_zero:
        raise ZeroPolynomialError("phi(0) is undefined")
    if not a.is_monic:
        raise NotMonicError("phi is defined for monic polynomials")
    q = a.ctx.q
    out = q**a.degree
    for prime, _ in factor(a):
        pd = q**prime.degree
        out = out // pd * (pd - 1)
    return out


def divisors(a: Poly):
    """All monic divisors of A != 0, from the factorization."""
    if a.is_zero:
        raise ZeroPolynomialError("0 has no divisor lattice")
    out = [Poly.one(a.ctx)]
    for prime, mult in factor(a):
        powers = [Poly.one(a.ctx)]
        for _ in range(mult):
            powers.append(powers[-1] * prime)
        out = [d * pw for d in out for pw in powers]
    return out
