"""Batched dense kernel for the neighborhood search.

A batch is an array ``A`` of shape (n, D, D) holding n polynomials, entry
``A[k, i, j]`` being the coefficient of x^i y^j.  Every polynomial in a stored
batch is normalized: no monomial factor, content 1, positive grlex leading
coefficient.  The eight atomic operations are applied to a whole batch at once.

Arithmetic is int64 whenever a coefficient bound proves it cannot overflow and
falls back to Python-int object arrays otherwise, so results are always exact.
"""
from __future__ import annotations

from functools import reduce
from math import comb, gcd

import numpy as np

from .poly import BiPoly

_LIMIT = 1 << 62
_PASCAL: dict[tuple[int, int, str], np.ndarray] = {}


def _pascal(D: int, sign: int, dtype) -> np.ndarray:
    """P with (P @ a)_k = sum_i a_i C(i, k) sign^(i-k): coefficients of f(t + sign)."""
    key = (D, sign, np.dtype(dtype).str)
    P = _PASCAL.get(key)
    if P is None:
        P = np.zeros((D, D), dtype=object)
        for i in range(D):
            for k in range(i + 1):
                P[k, i] = comb(i, k) * sign ** (i - k)
        P = P.astype(dtype)
        _PASCAL[key] = P
    return P


class Batch:
    """Normalized polynomials with their degree data."""

    __slots__ = ("A", "dx", "dy", "tot")

    def __init__(self, A, dx, dy, tot):
        self.A = A
        self.dx = dx
        self.dy = dy
        self.tot = tot

    def __len__(self):
        return self.A.shape[0]

    def take(self, idx) -> "Batch":
        sub = Batch(self.A[idx], self.dx[idx], self.dy[idx], self.tot[idx])
        return sub.trimmed()

    def trimmed(self) -> "Batch":
        if len(self) == 0:
            return self
        D = int(max(self.dx.max(), self.dy.max())) + 1
        if D < self.A.shape[1]:
            return Batch(np.ascontiguousarray(self.A[:, :D, :D]), self.dx, self.dy, self.tot)
        return self

    def poly(self, k: int, vars=("x", "y")) -> BiPoly:
        a = self.A[k, : self.dx[k] + 1, : self.dy[k] + 1]
        i, j = np.nonzero(a)
        return BiPoly({(int(p), int(q)): int(a[p, q]) for p, q in zip(i, j)}, vars)

    def key(self, k: int):
        a = self.A[k, : self.dx[k] + 1, : self.dy[k] + 1]
        if a.dtype == object:
            return (int(self.dx[k]), int(self.dy[k]), tuple(a.ravel().tolist()))
        return (int(self.dx[k]), int(self.dy[k]), a.tobytes())


def from_polys(polys: list[BiPoly]) -> Batch:
    D = max(max(f.degree(0), f.degree(1)) for f in polys) + 1
    big = any(abs(c) >= _LIMIT for f in polys for c in f.terms.values())
    A = np.zeros((len(polys), D, D), dtype=object if big else np.int64)
    for k, f in enumerate(polys):
        for (i, j), c in f.terms.items():
            A[k, i, j] = c
    return normalize(A)


def _pad(A: np.ndarray, D: int) -> np.ndarray:
    n, d, _ = A.shape
    if d >= D:
        return A
    out = np.zeros((n, D, D), dtype=A.dtype)
    out[:, :d, :d] = A
    return out


def _maxabs(A: np.ndarray) -> int:
    if A.dtype == object:
        return max((abs(v) for v in A.ravel().tolist()), default=0)
    return int(np.abs(A).max()) if A.size else 0


def _safe_dtype(A: np.ndarray, growth_bits: int, D: int) -> np.ndarray:
    """Switch to object dtype when a translation could overflow int64."""
    if A.dtype == object:
        return A
    if _maxabs(A) * D << growth_bits >= _LIMIT:
        return A.astype(object)
    return A


def _reflect_rows(A: np.ndarray, deg: np.ndarray) -> np.ndarray:
    """B[k, i, :] = A[k, deg_k - i, :] for i <= deg_k, zero above."""
    n, D, _ = A.shape
    idx = deg[:, None] - np.arange(D)[None, :]
    valid = idx >= 0
    B = A[np.arange(n)[:, None], np.clip(idx, 0, None)]
    return B * valid[:, :, None].astype(A.dtype)


def _separate_x(A: np.ndarray, tot: np.ndarray) -> np.ndarray:
    """x -> 1/x, y -> y/x: x^i y^j becomes x^(tot - i - j) y^j."""
    n, D, _ = A.shape
    r = np.arange(D)
    idx = tot[:, None, None] - r[None, :, None] - r[None, None, :]
    valid = idx >= 0
    B = A[np.arange(n)[:, None, None], np.clip(idx, 0, None), r[None, None, :]]
    return B * valid.astype(A.dtype)


def apply_op(batch: Batch, code: int) -> np.ndarray:
    """Raw (un-normalized) images of a batch under one atomic operation."""
    A, dx, dy, tot = batch.A, batch.dx, batch.dy, batch.tot
    D = int((dx + dy).max()) + 1
    D = max(D, A.shape[1])
    if code in (1, 2, 3, 4):
        A = _safe_dtype(A, int(max(dx.max(), dy.max())) + 1, D)
        d = A.shape[1]
        P = _pascal(d, 1 if code in (1, 3) else -1, A.dtype)
        if code in (1, 2):
            return np.matmul(P, A)
        return np.matmul(A, P.T)
    A = _pad(A, D)
    if code == 5:
        return _reflect_rows(A, dx)
    if code == 6:
        return _reflect_rows(A.transpose(0, 2, 1), dy).transpose(0, 2, 1)
    if code == 7:
        return _separate_x(A, tot)
    if code == 8:
        return _separate_x(A.transpose(0, 2, 1), tot).transpose(0, 2, 1)
    raise ValueError(f"unknown operation {code}")


def _gcd_rows(flat: np.ndarray) -> np.ndarray:
    if flat.dtype == object:
        return np.array([reduce(gcd, row, 0) for row in flat.tolist()], dtype=object)
    return np.gcd.reduce(flat, axis=1)


def normalize(B: np.ndarray) -> Batch:
    """Strip monomial factors and content, fix the sign; returns degree data too.

    Zero polynomials must not be present.
    """
    n, D, _ = B.shape
    nz = B != 0
    rows_any = nz.any(axis=2)
    cols_any = nz.any(axis=1)
    r0 = rows_any.argmax(axis=1)
    c0 = cols_any.argmax(axis=1)
    r1 = D - 1 - rows_any[:, ::-1].argmax(axis=1)
    c1 = D - 1 - cols_any[:, ::-1].argmax(axis=1)
    if r0.any() or c0.any():
        ar = np.arange(D)
        ri = ar[None, :] + r0[:, None]
        ci = ar[None, :] + c0[:, None]
        B = B[np.arange(n)[:, None, None], np.clip(ri, 0, D - 1)[:, :, None], np.clip(ci, 0, D - 1)[:, None, :]]
        mask = (ri < D)[:, :, None] & (ci < D)[:, None, :]
        B = B * mask.astype(B.dtype)
        nz = B != 0
    dx = (r1 - r0).astype(np.int64)
    dy = (c1 - c0).astype(np.int64)
    g = _gcd_rows(B.reshape(n, -1))
    if B.dtype == object or (g != 1).any():
        B = B // g[:, None, None]
    ar = np.arange(D)
    deg = ar[:, None] + ar[None, :]
    tot = np.where(nz, deg[None], -1).max(axis=(1, 2)).astype(np.int64)
    score = np.where(nz, (deg * D + ar[:, None])[None], -1).reshape(n, -1)
    lead = np.take_along_axis(B.reshape(n, -1), score.argmax(axis=1)[:, None], axis=1)[:, 0]
    neg = lead < 0
    if neg.any():
        B = B.copy() if not B.flags.writeable else B
        B[neg] = -B[neg]
    if B.dtype == object and _maxabs(B) < _LIMIT:
        B = B.astype(np.int64)
    return Batch(np.ascontiguousarray(B), dx, dy, tot).trimmed()


DEGENERATE = 1 << 62


def vectors(batch: Batch):
    """Curve vectors of a batch as column arrays plus the swap flag.

    Returns (cols, swapped) where cols is a tuple of six integer arrays
    (d_y, m_y, d_x, d_tot, t, S) of the minimal orientation.
    """
    A, dx, dy, tot = batch.A, batch.dx, batch.dy, batch.tot
    n = len(batch)
    nr = np.arange(n)
    nz = A != 0
    t = nz.reshape(n, -1).sum(axis=1)
    if A.dtype == object:
        S = np.array([sum(abs(v) for v in row) for row in A.reshape(n, -1).tolist()], dtype=object)
    else:
        S = np.abs(A).reshape(n, -1).sum(axis=1)
    col = nz[nr, :, dy]
    m_y = col[:, 1:].any(axis=1).astype(np.int64)
    row = nz[nr, dx, :]
    m_x = row[:, 1:].any(axis=1).astype(np.int64)
    # swapped wins only when (dx, m_x, dy) < (dy, m_y, dx) lexicographically
    swapped = (dx < dy) | ((dx == dy) & ((m_x < m_y) | ((m_x == m_y) & (dy < dx))))
    d1 = np.where(swapped, dx, dy)
    m1 = np.where(swapped, m_x, m_y)
    d2 = np.where(swapped, dy, dx)
    # a nonzero constant is not a curve; keep it out of every minimum
    d1 = np.where(tot == 0, DEGENERATE, d1)
    return (d1, m1, d2, tot, t, S), swapped


def argmin_lex(cols) -> int:
    """First index attaining the lexicographic minimum of the column tuple."""
    idx = np.arange(len(cols[0]))
    for c in cols:
        sub = c[idx]
        m = sub.min()
        idx = idx[sub == m]
        if len(idx) == 1:
            break
    return int(idx[0])
