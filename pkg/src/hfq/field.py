"""Arithmetic in F_q (q = p^k, p an odd prime) and in Z[zeta_p].

Field elements are kept as plain Python data rather than wrapper objects:
an element of a prime field is an int in [0, p), and an element of an
extension field is a tuple of k ints (constant term first) reduced modulo
the defining polynomial.  All operations live on FieldCtx so the same code
path serves both cases.

CycInt implements the ring Z[zeta] for zeta a primitive p-th root of unity,
with coefficient vectors over the full index set 0..p-1.  Canonical form
zeroes the last coefficient (using 1 + zeta + ... + zeta^{p-1} = 0), so
equality is plain coefficient comparison and no floating point ever enters
character-sum values.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Union

from .errors import (
    EvenCharacteristicError,
    MixedCharacteristicError,
    NotPrimeError,
    ReducibleModulusError,
)

FqElem = Union[int, tuple]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# Small helpers for F_p[x] on raw int tuples (low-to-high, trailing zeros
# trimmed).  polyring builds the full-featured ring on top of FieldCtx, so
# the modulus validation here keeps its own minimal copies.


def _modp_trim(c: tuple, p: int) -> tuple:
    c = tuple(x % p for x in c)
    n = len(c)
    while n and c[n - 1] == 0:
        n -= 1
    return c[:n]


def _modp_rem(num: tuple, den: tuple, p: int) -> tuple:
    num = list(num)
    dd = len(den) - 1
    inv_lead = pow(den[-1], p - 2, p)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i] % p
        if c == 0:
            continue
        f = (c * inv_lead) % p
        for j in range(dd + 1):
            num[i - dd + j] = (num[i - dd + j] - f * den[j]) % p
    return _modp_trim(tuple(num[:dd]), p)


def _modp_mul(a: tuple, b: tuple, p: int) -> tuple:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _modp_trim(tuple(out), p)


def _modulus_is_irreducible(modulus: tuple, p: int) -> bool:
    """Trial-divide by every monic polynomial of degree 1..k//2 over F_p."""
    k = len(modulus) - 1
    for d in range(1, k // 2 + 1):
        for code in range(p**d):
            cand = []
            c = code
            for _ in range(d):
                c, r = divmod(c, p)
                cand.append(r)
            cand.append(1)
            if not _modp_rem(modulus, tuple(cand), p):
                return False
    return True


@dataclass(frozen=True)
class FieldCtx:
    """Immutable description of F_q with q = p^k; safe to share freely."""

    p: int
    k: int
    modulus: Optional[tuple]  # monic, length k+1, present iff k > 1

    @property
    def q(self) -> int:
        return self.p**self.k

    @property
    def zero(self) -> FqElem:
        return 0 if self.k == 1 else (0,) * self.k

    @property
    def one(self) -> FqElem:
        return 1 if self.k == 1 else (1,) + (0,) * (self.k - 1)

    def elements(self) -> Iterator[FqElem]:
        """All q elements, lexicographic with the constant residue fastest."""
        if self.k == 1:
            yield from range(self.p)
            return
        for code in range(self.q):
            yield self.from_int(code)

    def from_int(self, code: int) -> FqElem:
        """Element with base-p digits of ``code`` as residues (little-endian)."""
        if self.k == 1:
            return code % self.p
        digits = []
        for _ in range(self.k):
            code, r = divmod(code, self.p)
            digits.append(r)
        return tuple(digits)

    def to_int(self, a: FqElem) -> int:
        if self.k == 1:
            return a
        code = 0
        for r in reversed(a):
            code = code * self.p + r
        return code

    def add(self, a: FqElem, b: FqElem) -> FqElem:
        if self.k == 1:
            return (a + b) % self.p
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def sub(self, a: FqElem, b: FqElem) -> FqElem:
        if self.k == 1:
            return (a - b) % self.p
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def neg(self, a: FqElem) -> FqElem:
        if self.k == 1:
            return (-a) % self.p
        return tuple((-x) % self.p for x in a)

    def mul(self, a: FqElem, b: FqElem) -> FqElem:
        if self.k == 1:
            return (a * b) % self.p
        prod = _modp_mul(a, b, self.p)
        prod = _modp_rem(prod, self.modulus, self.p)
        return prod + (0,) * (self.k - len(prod))

    def inv(self, a: FqElem) -> FqElem:
        if a == self.zero:
            raise ZeroDivisionError("inverse of 0 in F_q")
        return self.pow(a, self.q - 2)

    def pow(self, a: FqElem, e: int) -> FqElem:
        if self.k == 1:
            return pow(a, e, self.p)
        acc = self.one
        base = a
        while e:
            if e & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            e >>= 1
        return acc

    def is_zero(self, a: FqElem) -> bool:
        return a == self.zero

    def trace(self, a: FqElem) -> int:
        """Absolute trace Tr(a) = sum of a^(p^i) for i < k, as a residue mod p.

        The result lies in the prime field, so it is returned as an int even
        for extension fields.
        """
        if self.k == 1:
            return a % self.p
        acc = a
        total = a
        for _ in range(self.k - 1):
            acc = self.pow(acc, self.p)
            total = self.add(total, acc)
        if any(total[1:]):
            raise AssertionError("trace left the prime field")
        return total[0]

    def psi_exponent(self, a: FqElem) -> int:
        """Exponent e with psi(a) = zeta_p^e for the canonical character."""
        return self.trace(a)

    def psi(self, a: FqElem) -> "CycInt":
        return CycInt.zeta_pow(self.p, self.psi_exponent(a))

    def format_elem(self, a: FqElem) -> str:
        if self.k == 1:
            return str(a)
        return "[" + ",".join(str(x) for x in a) + "]"

    def parse_elem(self, text: str) -> FqElem:
        text = text.strip()
        if self.k == 1:
            return int(text) % self.p
        if not (text.startswith("[") and text.endswith("]")):
            raise ValueError(f"extension-field element must be bracketed: {text!r}")
        parts = text[1:-1].split(",")
        if len(parts) != self.k:
            raise ValueError(f"expected {self.k} residues, got {len(parts)}")
        return tuple(int(x) % self.p for x in parts)


def ctx_new(p: int, k: int = 1, modulus=None) -> FieldCtx:
    """Validated context for F_{p^k}; k > 1 requires an irreducible modulus."""
    if not _is_prime(p):
        raise NotPrimeError(f"{p} is not prime")
    if p == 2:
        raise EvenCharacteristicError("characteristic 2 is not supported")
    if k < 1:
        raise ValueError("extension degree must be >= 1")
    if k == 1:
        if modulus is not None:
            raise ValueError("prime field takes no modulus")
        return FieldCtx(p, 1, None)
    if modulus is None:
        raise ReducibleModulusError("extension field requires an explicit modulus")
    modulus = tuple(int(c) % p for c in modulus)
    if len(modulus) != k + 1 or modulus[-1] != 1:
        raise ReducibleModulusError(f"modulus must be monic of degree {k}")
    if not _modulus_is_irreducible(modulus, p):
        raise ReducibleModulusError("modulus has a factor of degree <= k/2")
    return FieldCtx(p, k, modulus)


class CycInt:
    """Element of Z[zeta_p], stored as p integer coefficients of zeta^0..zeta^{p-1}.

    Canonical form has last coefficient 0; construction canonicalizes, so
    instances compare by coefficient tuple.
    """

    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs):
        coeffs = tuple(coeffs)
        if len(coeffs) != p:
            raise ValueError(f"need {p} coefficients, got {len(coeffs)}")
        last = coeffs[-1]
        if last:
            coeffs = tuple(c - last for c in coeffs)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):  # immutable
        raise AttributeError("CycInt is immutable")

    @classmethod
    def zero(cls, p: int) -> "CycInt":
        return cls(p, (0,) * p)

    @classmethod
    def from_int(cls, p: int, n: int) -> "CycInt":
        return cls(p, (n,) + (0,) * (p - 1))

    @classmethod
    def zeta_pow(cls, p: int, e: int) -> "CycInt":
        coeffs = [0] * p
        coeffs[e % p] = 1
        return cls(p, coeffs)

    def _check(self, other: "CycInt") -> None:
        if self.p != other.p:
            raise MixedCharacteristicError(
                f"cannot combine Z[zeta_{self.p}] with Z[zeta_{other.p}]"
            )

    def __add__(self, other: "CycInt") -> "CycInt":
        self._check(other)
        return CycInt(self.p, (a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "CycInt") -> "CycInt":
        self._check(other)
        return CycInt(self.p, (a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "CycInt":
        return CycInt(self.p, (-a for a in self.coeffs))

    def __mul__(self, other) -> "CycInt":
        if isinstance(other, int):
            return CycInt(self.p, (a * other for a in self.coeffs))
        self._check(other)
        p = self.p
        out = [0] * p
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[(i + j) % p] += a * b
        return CycInt(p, out)

    __rmul__ = __mul__

    def conj(self) -> "CycInt":
        """Complex conjugate: zeta^i -> zeta^{p-i}."""
        p = self.p
        out = [0] * p
        for i, a in enumerate(self.coeffs):
            out[(p - i) % p] = a
        return CycInt(p, out)

    def mag_sq(self) -> "CycInt":
        """z * conj(z); real and non-negative as a complex number."""
        return self * self.conj()

    def as_integer(self) -> Optional[int]:
        """The rational integer this equals, or None if it is not one."""
        if any(self.coeffs[1:]):
            return None
        return self.coeffs[0]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CycInt)
            and self.p == other.p
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.p, self.coeffs))

    def __repr__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}*z^{i}" if i else str(c))
        return "CycInt(p=%d: %s)" % (self.p, " + ".join(terms) if terms else "0")


def mag_sq_from_counts(p: int, counts) -> int:
    """|sum_j counts[j] * zeta^j|^2 as an exact integer.

    Raises if the squared magnitude is not a rational integer; for the sums
    this package produces it always is.
    """
    out = [0] * p
    for i, a in enumerate(counts):
        if a:
            for j, b in enumerate(counts):
                if b:
                    out[(i - j) % p] += a * b
    last = out[-1]
    val = [c - last for c in out]
    if any(val[1:]):
        raise AssertionError("squared magnitude is not a rational integer")
    return val[0]
