"""Vectorized exact mod-p linear algebra for the large enumeration loops.

Everything here is integer arithmetic on numpy arrays; no floating point.
Only prime fields are served (extension fields fall back to the scalar
implementations, which these routines must agree with -- the test suite
checks that on exhaustive small envelopes).
"""

from __future__ import annotations

import numpy as np


def _inverse_table(p: int) -> np.ndarray:
    inv = np.zeros(p, dtype=np.int64)
    for x in range(1, p):
        inv[x] = pow(x, p - 2, p)
    return inv


def batched_rank(mats: np.ndarray, p: int) -> np.ndarray:
    """Ranks of a batch of matrices over F_p; consumes its input."""
    n_mats, n_rows, n_cols = mats.shape
    inv = _inverse_table(p)
    row = np.zeros(n_mats, dtype=np.int64)
    rows_idx = np.arange(n_rows)
    for c in range(n_cols):
        avail = (mats[:, :, c] != 0) & (rows_idx[None, :] >= row[:, None])
        has = avail.any(axis=1)
        if not has.any():
            continue
        sel = np.nonzero(has)[0]
        k = len(sel)
        ar = np.arange(k)
        sub = mats[sel]
        piv = np.argmax(avail[sel], axis=1)
        cur = row[sel]
        pivot_rows = sub[ar, piv].copy()
        sub[ar, piv] = sub[ar, cur]
        pivot_rows = (pivot_rows * inv[pivot_rows[:, c]][:, None]) % p
        sub[ar, cur] = pivot_rows
        below = rows_idx[None, :] > cur[:, None]
        factors = sub[:, :, c] * below
        sub -= factors[:, :, None] * pivot_rows[:, None, :]
        sub %= p
        mats[sel] = sub
        row[sel] = cur + 1
    return row


def hankel_batch(seqs: np.ndarray, rows: int, cols: int) -> np.ndarray:
    """[N, rows, cols] Hankel matrices of a batch of sequences."""
    idx = np.arange(rows)[:, None] + np.arange(cols)[None, :]
    return seqs[:, idx]


def batched_rank_invariant(seqs: np.ndarray, p: int) -> np.ndarray:
    """r of each sequence: rank of its n1 x n2 Hankel matrix."""
    top = seqs.shape[1] - 1
    n1, n2 = (top + 2) // 2, (top + 3) // 2
    return batched_rank(hankel_batch(seqs, n1, n2).astype(np.int64), p)


def batched_strict_rho(seqs: np.ndarray, p: int) -> np.ndarray:
    """Largest k <= n2 - 1 with the leading k x k square invertible."""
    n_seqs = seqs.shape[0]
    top = seqs.shape[1] - 1
    cap = (top + 3) // 2 - 1
    out = np.zeros(n_seqs, dtype=np.int64)
    for k in range(1, cap + 1):
        ranks = batched_rank(hankel_batch(seqs, k, k).astype(np.int64), p)
        out = np.where(ranks == k, k, out)
    return out


def batched_odot(seqs: np.ndarray, wvec, p: int) -> np.ndarray:
    """Sliding dot products against the padded coefficient vector wvec."""
    s = len(wvec) - 1
    out_len = seqs.shape[1] - s
    out = np.zeros((seqs.shape[0], out_len), dtype=np.int64)
    for j, wj in enumerate(wvec):
        if wj:
            out += wj * seqs[:, j : j + out_len]
    return out % p


def digits_block(start: int, stop: int, width: int, p: int) -> np.ndarray:
    """Base-p digit rows for codes in [start, stop), least significant first."""
    codes = np.arange(start, stop, dtype=np.int64)
    out = np.empty((stop - start, width), dtype=np.int64)
    for j in range(width):
        codes, out[:, j] = np.divmod(codes, p)[0], codes % p
    return out


def variance_exponent_counts(
    p: int,
    n: int,
    h: int,
    monic_wvec,
    all_wvec,
    chunk: int = 20000,
):
    """For every sequence with h leading zeros, the exponent e such that the
    product of the two squared character-sum magnitudes is q^e, tallied.

    Sequences whose monic-side strict pi exceeds 1 contribute zero and are
    left out of the tally.  Nothing is excluded beyond that; the caller
    removes the near-zero classes itself.
    """
    free = n + 1 - h
    total = p**free
    sm = len(monic_wvec) - 1
    sa = len(all_wvec) - 1
    l_m = (n - sm) // 2
    l_a = (n - sa) // 2
    max_e = (2 * l_m + 1) + (2 * l_a + 2) + 1
    counts = np.zeros(max_e + 1, dtype=np.int64)
    for start in range(0, total, chunk):
        stop = min(start + chunk, total)
        block = digits_block(start, stop, free, p)
        if h:
            seqs = np.concatenate(
                [np.zeros((stop - start, h), dtype=np.int64), block], axis=1
            )
        else:
            seqs = block
        x = batched_odot(seqs, monic_wvec, p)
        y = batched_odot(seqs, all_wvec, p)
        r_x = batched_rank_invariant(x, p)
        srho_x = batched_strict_rho(x, p)
        spi_x = r_x - srho_x
        r_y = batched_rank_invariant(y, p)
        mask = spi_x <= 1
        exps = (2 * l_m + spi_x - r_x) + (2 * l_a + 2 - r_y)
        counts += np.bincount(exps[mask], minlength=max_e + 1)
    return counts


_QFORM_CACHE: dict = {}


def qform_vectors(p: int, l: int, monic: bool) -> np.ndarray:
    """All coefficient vectors of A_{<= l} (or of the monic degree-l set)."""
    key = (p, l, monic)
    got = _QFORM_CACHE.get(key)
    if got is not None:
        return got
    if monic:
        vecs = np.concatenate(
            [digits_block(0, p**l, l, p), np.ones((p**l, 1), dtype=np.int64)],
            axis=1,
        )
    else:
        vecs = digits_block(0, p ** (l + 1), l + 1, p)
    _QFORM_CACHE[key] = vecs
    return vecs


def qform_value_counts(p: int, entries, l: int, monic: bool):
    """Histogram of the quadratic form values over the vector family."""
    e = np.asarray(entries, dtype=np.int64)
    mat = hankel_batch(e[None, :], l + 1, l + 1)[0]
    vecs = qform_vectors(p, l, monic)
    vals = ((vecs @ mat) * vecs).sum(axis=1) % p
    return np.bincount(vals, minlength=p).tolist()
