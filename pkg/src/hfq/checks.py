"""Exhaustive identity checks shared by the CLI and the acceptance suite.

Each check enumerates a full parameter envelope, compares an independently
computed quantity against its closed form or contract, and reports exact
pass/fail counts.  A CheckResult never hides a failure: the first few
offending instances are kept verbatim in the lines.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iter_product
from typing import List

from . import charsum, variance
from .field import FieldCtx
from .hankel import (
    Seq,
    bijection_inverse,
    bijection_map,
    census_enumerate,
    census_formula,
    census_formula_total,
    char_polys,
    kernel_basis,
    HankelView,
    odot,
    profile,
    reduction_profile,
    reduction_strict_class,
)
from .polyring import Poly, coeff_vector, gcd, monics, polys_upto

_MAX_DETAIL = 8


@dataclass
class CheckResult:
    name: str
    checked: int = 0
    failed: int = 0
    lines: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failed == 0 and self.checked > 0

    def count(self, good: bool, detail: str = "") -> None:
        self.checked += 1
        if not good:
            self.failed += 1
            if len(self.lines) < _MAX_DETAIL:
                self.lines.append(detail or "unspecified failure")

    def summary(self) -> str:
        state = "PASS" if self.ok else "FAIL"
        return f"[{state}] {self.name}: {self.checked - self.failed}/{self.checked}"


def _all_seqs(ctx: FieldCtx, n: int, h: int = 0):
    q = ctx.q
    free = n + 1 - h
    prefix = (ctx.zero,) * h
    for code in range(q**free):
        digits = []
        c = code
        for _ in range(free):
            c, r = divmod(c, q)
            digits.append(ctx.from_int(r))
        yield Seq(ctx, prefix + tuple(digits))


def check_census(
    ctx: FieldCtx, ns, hs, cap: int = 10**8, workers: int = 1, rows: list = None
) -> CheckResult:
    """Class sizes: every (n, h, class) formula against the exhaustive tally,
    the per-rank aggregates, and the partition total.

    When a list is passed as ``rows`` it collects one entry per attained
    class and per rank aggregate: (n, h, kind, key, formula, enumerated).
    """
    res = CheckResult("census formulas vs enumeration")
    q = ctx.q
    for n in ns:
        n1 = (n + 2) // 2
        for h in hs:
            if h > n + 1:
                continue
            tally = census_enumerate(ctx, n, h, cap=cap, workers=workers)
            res.count(
                sum(tally.standard.values()) == q ** (n + 1 - h),
                f"partition total off at n={n} h={h}",
            )
            by_r: dict = {}
            for (r, rho, pi), cnt in tally.standard.items():
                by_r[r] = by_r.get(r, 0) + cnt
            for rho in range(n1 + 1):
                for pi in range(n1 + 1):
                    r = rho + pi
                    want = census_formula(n, h, r, rho, pi, q)
                    got = tally.standard.get((r, rho, pi), 0)
                    res.count(
                        want == got,
                        f"class (n={n},h={h},r={r},rho={rho},pi={pi}): formula {want} != tally {got}",
                    )
                    if rows is not None and (want or got):
                        rows.append((n, h, "class", (r, rho, pi), want, got))
            for r in range(n1 + 2):
                want = census_formula_total(n, h, r, q)
                got = by_r.get(r, 0)
                res.count(
                    want == got,
                    f"aggregate (n={n},h={h},r={r}): formula {want} != tally {got}",
                )
                if rows is not None and (want or got):
                    rows.append((n, h, "rank", r, want, got))
    return res


def _kernel_vectors(view) -> frozenset:
    basis = kernel_basis(view)
    ctx = view.seq.ctx
    if not basis:
        return frozenset({(ctx.zero,) * view.cols})
    out = set()
    for coeffs in iter_product(list(ctx.elements()), repeat=len(basis)):
        vec = [ctx.zero] * view.cols
        for c, b in zip(coeffs, basis):
            if c != ctx.zero:
                vec = [ctx.add(x, ctx.mul(c, y)) for x, y in zip(vec, b)]
        out.add(tuple(vec))
    return frozenset(out)


def check_kernel_structure(ctx: FieldCtx, n_max: int) -> CheckResult:
    """Kernel law: for every sequence and split, the kernel equals the set of
    bounded-degree combinations of the two kernel polynomials."""
    res = CheckResult("kernel structure law")
    for n in range(n_max + 1):
        for seq in _all_seqs(ctx, n):
            prof = profile(seq)
            cp = char_polys(seq)
            good_pair = (
                cp.a1.is_monic
                and cp.a1.degree == prof.rho
                and (cp.a2.is_zero or gcd(cp.a1, cp.a2).degree == 0)
            )
            if not cp.a2.is_zero and cp.a2.degree > n - prof.r + 2:
                good_pair = False
            res.count(good_pair, f"pair contract broken at {seq!r}")
            for m in range(n + 1):
                l = n - m
                view = HankelView(seq, l + 1, m + 1)
                got = _kernel_vectors(view)
                span = set()
                for b1 in polys_upto(ctx, m - prof.r):
                    pa = b1 * cp.a1
                    for b2 in polys_upto(ctx, m - (n - prof.r + 2)):
                        span.add(coeff_vector(pa + b2 * cp.a2, m))
                res.count(
                    got == frozenset(span),
                    f"kernel mismatch at {seq!r} split {l + 1}x{m + 1}",
                )
    return res


def check_quadform(ctx: FieldCtx, l_max: int, l_min: int = 0) -> CheckResult:
    """Squared magnitudes of both quadratic-form sums against the closed
    forms, exhaustively."""
    res = CheckResult(f"quadratic form magnitudes (q={ctx.q})")
    q = ctx.q
    for l in range(l_min, l_max + 1):
        for seq in _all_seqs(ctx, 2 * l):
            prof = profile(seq)
            r_all = charsum.quad_sum_all(seq, l)
            want_all = q ** (2 * l + 2 - prof.r)
            res.count(
                r_all.mag_sq == want_all
                and r_all.mag_sq == charsum.magsq_via_profile(seq, l, False),
                f"all-sum magnitude at {seq!r}: {r_all.mag_sq} != {want_all}",
            )
            r_mon = charsum.quad_sum_monic(seq, l)
            if prof.strict_pi == 0:
                want_mon = q ** (2 * l - prof.r)
            elif prof.strict_pi == 1:
                want_mon = q ** (2 * l + 1 - prof.r)
            else:
                want_mon = 0
            res.count(
                r_mon.mag_sq == want_mon
                and r_mon.mag_sq == charsum.magsq_via_profile(seq, l, True),
                f"monic-sum magnitude at {seq!r}: {r_mon.mag_sq} != {want_mon}",
            )
    return res


def check_reduction(ctx: FieldCtx, n_max: int, ws=None) -> CheckResult:
    """Predicted characteristic and first kernel polynomial of the sliding
    products, against direct computation, over every valid width."""
    res = CheckResult("sliding-product reduction law")
    if ws is None:
        ws = [
            Poly.one(ctx),
            Poly.t(ctx),
            Poly(ctx, (ctx.one, ctx.one)),
            Poly(ctx, (ctx.one, ctx.zero, ctx.one)),
        ]
    for n in range(2, n_max + 1):
        for seq in _all_seqs(ctx, n):
            prof = profile(seq)
            for w in ws:
                for s in range(w.degree, n + 1):
                    if n >= 2 * prof.r + s - 1:
                        pred = reduction_profile(seq, w, s)
                        reduced = odot(seq, w, s)
                        actual = profile(reduced)
                        actual_a1 = char_polys(reduced).a1
                        res.count(
                            (pred.r, pred.rho, pred.pi) == actual.standard
                            and pred.a1 == actual_a1,
                            f"claim 1 at {seq!r}, W={w!r}, s={s}: "
                            f"predicted {(pred.r, pred.rho, pred.pi)}/{pred.a1!r}, "
                            f"got {actual.standard}/{actual_a1!r}",
                        )
                s = w.degree
                half = (n - s) // 2 + 1
                if n - s >= 2 and (n - s) % 2 == 0 and prof.strict == (half, 0, half):
                    pred_class = reduction_strict_class(seq, w, s)
                    actual = profile(odot(seq, w, s))
                    res.count(
                        actual.strict == pred_class,
                        f"claim 2 at {seq!r}, W={w!r}: got {actual.strict}",
                    )
    return res


def check_bijection(ctx: FieldCtx, n: int, r: int, hs) -> CheckResult:
    """Forward map into the coprime pairs, the inverse roundtrip, injectivity,
    and both cardinalities."""
    res = CheckResult(f"class/pair bijection (n={n}, r={r})")
    q = ctx.q
    for h in hs:
        image = set()
        members = 0
        for seq in _all_seqs(ctx, n, h):
            if profile(seq).standard != (r, r, 0):
                continue
            members += 1
            a, b = bijection_map(seq, h)
            ok = (
                a.is_monic
                and a.degree == r
                and b.degree < r - h
                and not b.is_zero
                and gcd(a, b).degree == 0
            )
            back = bijection_inverse(a, b, n, h)
            res.count(
                ok and back == seq,
                f"roundtrip failed at {seq!r} (h={h}) -> ({a!r}, {b!r})",
            )
            image.add((a, b))
        want = (q - 1) * q ** (2 * r - h - 1)
        pairs = set()
        for a in monics(ctx, r):
            for b in polys_upto(ctx, r - h - 1):
                if not b.is_zero and gcd(a, b).degree == 0:
                    pairs.add((a, b))
        res.count(
            members == want and len(image) == members and image == pairs,
            f"counts at h={h}: class {members}, image {len(image)}, "
            f"pairs {len(pairs)}, formula {want}",
        )
    return res


def check_kernel_sum(u: Poly, v: Poly, n: int, h: int, guard: int = 10**8) -> CheckResult:
    """kernel_sum_identity at every feasible rank for one (n, h)."""
    res = CheckResult(f"kernel-sum identity (n={n}, h={h})")
    par = variance.ThmParams.compute(u, v, n, h)
    if h < par.n2 - 1:
        return res  # below the identity's domain: nothing to check
    lo, hi = variance._r1_range(par)
    for r1 in range(lo, hi + 1):
        lhs, rhs = variance.kernel_sum_identity(u, v, n, h, r1, guard=guard)
        res.count(lhs == rhs, f"r1={r1}: lhs {lhs} != rhs {rhs}")
    return res


def check_w_sum(u: Poly, v: Poly, n: int, h: int, guard: int = 10**8) -> CheckResult:
    """w_sum_identity at every feasible rank for one (n, h)."""
    res = CheckResult(f"w-sum identity (n={n}, h={h})")
    par = variance.ThmParams.compute(u, v, n, h)
    mn = min(par.s_prime, par.t_prime)
    n2_seq = ((n - 1) + 3) // 2
    for r in range(max(h + 1, 3), min(mn, n2_seq - 1) + 1):
        lhs, rhs = variance.w_sum_identity(u, v, n, h, r, guard=guard)
        res.count(lhs == rhs, f"r={r}: lhs {lhs} != rhs {rhs}")
    return res


def check_variance_pair(
    u: Poly, v: Poly, n: int, h: int, guard: int = 10**8, fast: bool = False
) -> CheckResult:
    """Brute-force variance against the character-sum value, exactly."""
    res = CheckResult(f"variance oracle vs character sum (n={n}, h={h})")
    oracle = variance.variance_bruteforce(u, v, n, h, guard=guard)
    cs = charsum.variance_charsum(u, v, n, h, mode="fast" if fast else "exact", guard=guard)
    res.count(oracle == cs, f"oracle {oracle} != charsum {cs}")
    return res
