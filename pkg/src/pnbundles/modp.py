"""Exact dense linear algebra over a prime field F_p.

Matrices are numpy int64 arrays with entries reduced into [0, p).  All
routines are deterministic: row reduction always picks the first usable
pivot, so echelon forms, pivot lists and kernel bases never depend on
anything but the input.

The default field is F_32003; p must be an odd prime small enough that
p**2 fits comfortably in int64 (p < 2**31 is safe).
"""

from __future__ import annotations

import numpy as np

DEFAULT_PRIME = 32003


def is_probable_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for n < 3.3e24."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def check_prime(p: int) -> int:
    if p < 3 or p % 2 == 0 or not is_probable_prime(p):
        raise ValueError(f"modulus must be an odd prime, got {p}")
    return p


def inv_mod(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroDivisionError("inverse of 0 in F_p")
    return pow(a, p - 2, p)


def as_matrix(rows, p: int) -> np.ndarray:
    """Coerce nested lists / arrays to an int64 matrix reduced mod p."""
    m = np.asarray(rows, dtype=np.int64)
    if m.ndim != 2:
        m = m.reshape(m.shape[0], -1) if m.ndim > 2 else np.atleast_2d(m)
    return np.mod(m, p)


def zeros(nrows: int, ncols: int) -> np.ndarray:
    return np.zeros((nrows, ncols), dtype=np.int64)


def rref(mat: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over F_p.

    Returns (R, pivot_cols).  Pivot entries are normalized to 1 and are
    the only nonzero entries in their columns.
    """
    r = np.mod(np.asarray(mat, dtype=np.int64), p).copy()
    nrows, ncols = r.shape
    pivots: list[int] = []
    row = 0
    for col in range(ncols):
        if row >= nrows:
            break
        nz = np.nonzero(r[row:, col])[0]
        if nz.size == 0:
            continue
        pr = row + int(nz[0])
        if pr != row:
            r[[row, pr]] = r[[pr, row]]
        r[row] = r[row] * inv_mod(int(r[row, col]), p) % p
        other = np.nonzero(r[:, col])[0]
        other = other[other != row]
        if other.size:
            r[other] = (r[other] - np.outer(r[other, col], r[row])) % p
        pivots.append(col)
        row += 1
    return r, pivots


def rank(mat: np.ndarray, p: int) -> int:
    if mat.size == 0:
        return 0
    return len(rref(mat, p)[1])


def kernel_basis(mat: np.ndarray, p: int) -> np.ndarray:
    """Deterministic echelon basis of the right kernel, one row per vector.

    The k-th basis vector has a 1 in the k-th free column and zeros in the
    later free columns, so the result is unique given the input.
    """
    mat = np.asarray(mat, dtype=np.int64)
    nrows, ncols = mat.shape
    if ncols == 0:
        return zeros(0, 0)
    if nrows == 0:
        return np.eye(ncols, dtype=np.int64)
    r, pivots = rref(mat, p)
    free = [c for c in range(ncols) if c not in pivots]
    basis = zeros(len(free), ncols)
    for k, fc in enumerate(free):
        basis[k, fc] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = (-int(r[i, fc])) % p
    return basis


def solve(mat: np.ndarray, rhs: np.ndarray, p: int) -> np.ndarray | None:
    """One solution x of mat @ x = rhs over F_p, or None if inconsistent.

    rhs may be a vector or a matrix of stacked right-hand columns; the
    particular solution has zeros in all free coordinates.
    """
    mat = np.asarray(mat, dtype=np.int64)
    rhs = np.mod(np.asarray(rhs, dtype=np.int64), p)
    vec_in = rhs.ndim == 1
    if vec_in:
        rhs = rhs[:, None]
    nrows, ncols = mat.shape
    aug = np.concatenate([np.mod(mat, p), rhs], axis=1)
    r, pivots = rref(aug, p)
    sol_pivots = [c for c in pivots if c < ncols]
    if len(sol_pivots) != len(pivots):
        return None
    x = zeros(ncols, rhs.shape[1])
    for i, pc in enumerate(sol_pivots):
        x[pc] = r[i, ncols:]
    return x[:, 0] if vec_in else x


def row_space_contains(space: np.ndarray, vectors: np.ndarray, p: int) -> bool:
    """True when every row of `vectors` lies in the row span of `space`."""
    if vectors.size == 0:
        return True
    if space.size == 0:
        return not np.mod(vectors, p).any()
    base = rank(space, p)
    return rank(np.concatenate([space, vectors]), p) == base


class Echelon:
    """Incremental row-echelon container for repeated span queries.

    Rows are reduced against the stored pivots on insertion; `add` returns
    True iff the row enlarged the span.  Deterministic: pivots are always
    the first nonzero coordinate after reduction.
    """

    def __init__(self, ncols: int, p: int):
        self.ncols = ncols
        self.p = p
        self.pivots: dict[int, np.ndarray] = {}

    def reduce(self, row: np.ndarray) -> np.ndarray:
        r = np.mod(np.asarray(row, dtype=np.int64), self.p).copy()
        while True:
            nz = np.nonzero(r)[0]
            if nz.size == 0:
                return r
            j = int(nz[0])
            piv = self.pivots.get(j)
            if piv is None:
                return r
            r = (r - int(r[j]) * piv) % self.p
        return r

    def add(self, row: np.ndarray) -> bool:
        r = self.reduce(row)
        nz = np.nonzero(r)[0]
        if nz.size == 0:
            return False
        j = int(nz[0])
        self.pivots[j] = r * inv_mod(int(r[j]), self.p) % self.p
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)


def extend_to_complement(image_rows: np.ndarray, space_rows: np.ndarray | None,
                         p: int, ncols: int | None = None) -> np.ndarray:
    """Coset representatives for span(space_rows)/span(image_rows).

    space_rows = None means the full coordinate space; the representatives
    are then the unit vectors at the non-pivot columns of the image, which
    avoids materializing an identity matrix.  Otherwise space_rows are
    scanned in order and kept iff they enlarge the span (deterministic).
    """
    if space_rows is None:
        if ncols is None:
            raise ValueError("need the ambient dimension for a full space")
        if image_rows.size == 0:
            return np.eye(ncols, dtype=np.int64)
        _, piv = rref(image_rows, p)
        free = [c for c in range(ncols) if c not in piv]
        out = zeros(len(free), ncols)
        for k, c in enumerate(free):
            out[k, c] = 1
        return out
    ech = Echelon(space_rows.shape[1], p)
    for row in image_rows:
        ech.add(row)
    picked = [row for row in space_rows if ech.add(row)]
    if picked:
        return np.array(picked, dtype=np.int64)
    return zeros(0, space_rows.shape[1])


def batched_rank(stack: np.ndarray, p: int) -> np.ndarray:
    """Ranks of a stack of small matrices, shape (N, m, n) -> (N,).

    Vectorized Gaussian elimination across the batch; intended for m, n
    up to a few dozen (point-evaluation fibers, tiny field tables).
    """
    a = np.mod(np.asarray(stack, dtype=np.int64), p).copy()
    nbatch, m, n = a.shape
    ranks = np.zeros(nbatch, dtype=np.int64)
    row = np.zeros(nbatch, dtype=np.int64)
    for col in range(n):
        live = row < m
        if not live.any():
            break
        cols = a[:, :, col].copy()
        idx = np.arange(m)[None, :]
        below = (idx >= row[:, None]) & (cols != 0) & live[:, None]
        has_piv = below.any(axis=1)
        piv_row = np.where(has_piv, below.argmax(axis=1), 0)
        sel = np.nonzero(has_piv)[0]
        if sel.size == 0:
            continue
        # swap pivot row up
        r0 = row[sel]
        pr = piv_row[sel]
        tmp = a[sel, r0, :].copy()
        a[sel, r0, :] = a[sel, pr, :]
        a[sel, pr, :] = tmp
        # normalize pivot rows (Fermat inverse, vectorized via pow on python ints
        # is slow; use repeated squaring on the array)
        piv = a[sel, r0, col]
        inv = _pow_mod_array(piv, p - 2, p)
        a[sel, r0, :] = a[sel, r0, :] * inv[:, None] % p
        # eliminate every other row in the batch entries that have a pivot
        factors = a[sel, :, col].copy()
        factors[np.arange(sel.size), r0] = 0
        a[sel] = (a[sel] - factors[:, :, None] * a[sel, r0, :][:, None, :]) % p
        row[sel] += 1
        ranks[sel] += 1
    return ranks


def _pow_mod_array(base: np.ndarray, exp: int, p: int) -> np.ndarray:
    result = np.ones_like(base)
    b = np.mod(base, p)
    e = exp
    while e > 0:
        if e & 1:
            result = result * b % p
        b = b * b % p
        e >>= 1
    return result
