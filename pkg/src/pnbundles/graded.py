"""Matrices of homogeneous forms between twisted free modules.

A GradedMatrix records a map  ⊕_j O(src[j]) → ⊕_i O(tgt[i])  on projective
space P^{nvars-1}; entry (i, j) is homogeneous of degree tgt[i] - src[j]
(the zero form when that is negative).  Twists are written exactly as they
appear in displayed sequences; dualizing negates twists and transposes.

graded_piece(M, l) assembles the induced linear map on degree-l global
sections, H^0(⊕O(src+l)) → H^0(⊕O(tgt+l)), in the fixed monomial order of
:mod:`pnbundles.forms`.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .forms import Form, multiplication_matrix, parse_form, space_dim
from .modp import DEFAULT_PRIME


@dataclass(frozen=True)
class GradedMatrix:
    nvars: int
    src: tuple  # twists a_j of the source summands O(a_j)
    tgt: tuple  # twists b_i of the target summands O(b_i)
    entries: tuple  # tuple of rows, each a tuple of Form
    p: int = DEFAULT_PRIME

    @staticmethod
    def make(nvars: int, src, tgt, entries, p: int = DEFAULT_PRIME) -> "GradedMatrix":
        src = tuple(int(a) for a in src)
        tgt = tuple(int(b) for b in tgt)
        if len(entries) != len(tgt):
            raise ValueError("row count must match target twists")
        rows = []
        for i, row in enumerate(entries):
            if len(row) != len(src):
                raise ValueError("column count must match source twists")
            out = []
            for j, f in enumerate(row):
                want = tgt[i] - src[j]
                if isinstance(f, str):
                    f = parse_form(f, nvars, p, degree=max(want, 0))
                if f.is_zero():
                    f = Form.zero(nvars, max(want, 0), p)
                elif f.degree != want:
                    raise ValueError(
                        f"entry ({i},{j}) has degree {f.degree}, expected {want}")
                out.append(f)
            rows.append(tuple(out))
        return GradedMatrix(nvars, src, tgt, tuple(rows), p)

    @staticmethod
    def row(nvars: int, src, tgt0: int, forms, p: int = DEFAULT_PRIME) -> "GradedMatrix":
        """Single-row matrix ⊕O(src[j]) → O(tgt0)."""
        return GradedMatrix.make(nvars, src, (tgt0,), [list(forms)], p)

    @staticmethod
    def column(nvars: int, src0: int, tgt, forms, p: int = DEFAULT_PRIME) -> "GradedMatrix":
        """Single-column matrix O(src0) → ⊕O(tgt[i])."""
        return GradedMatrix.make(nvars, (src0,), tgt, [[f] for f in forms], p)

    @property
    def nrows(self) -> int:
        return len(self.tgt)

    @property
    def ncols(self) -> int:
        return len(self.src)

    def entry(self, i: int, j: int) -> Form:
        return self.entries[i][j]

    def twist(self, l: int) -> "GradedMatrix":
        return GradedMatrix(self.nvars, tuple(a + l for a in self.src),
                            tuple(b + l for b in self.tgt), self.entries, self.p)

    def dual(self) -> "GradedMatrix":
        """Transpose with negated twists: map ⊕O(-tgt) → ⊕O(-src)."""
        rows = tuple(tuple(self.entries[i][j] for i in range(self.nrows))
                     for j in range(self.ncols))
        return GradedMatrix(self.nvars, tuple(-b for b in self.tgt),
                            tuple(-a for a in self.src), rows, self.p)

    def compose(self, other: "GradedMatrix") -> "GradedMatrix":
        """self ∘ other, requiring other.tgt == self.src."""
        if other.tgt != self.src or other.nvars != self.nvars or other.p != self.p:
            raise ValueError("shapes do not compose")
        rows = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc = Form.zero(self.nvars, max(other.src[j] - self.tgt[i], 0), self.p)
                for k in range(self.ncols):
                    f, g = self.entries[i][k], other.entries[k][j]
                    if f.is_zero() or g.is_zero():
                        continue
                    acc = acc + f * g
                row.append(acc)
            rows.append(row)
        return GradedMatrix.make(self.nvars, other.src, self.tgt, rows, self.p)

    def is_zero(self) -> bool:
        return all(f.is_zero() for row in self.entries for f in row)

    def stack(self, other: "GradedMatrix") -> "GradedMatrix":
        """Stack targets: same source, concatenated target summands."""
        if other.src != self.src:
            raise ValueError("stack needs identical sources")
        return GradedMatrix(self.nvars, self.src, self.tgt + other.tgt,
                            self.entries + other.entries, self.p)

    def source_dim(self, l: int) -> int:
        return sum(space_dim(self.nvars, a + l) for a in self.src)

    def target_dim(self, l: int) -> int:
        return sum(space_dim(self.nvars, b + l) for b in self.tgt)

    def graded_piece(self, l: int) -> np.ndarray:
        """Linear map on degree-l sections, target-rows x source-columns."""
        nv = self.nvars
        row_dims = [space_dim(nv, b + l) for b in self.tgt]
        col_dims = [space_dim(nv, a + l) for a in self.src]
        mat = np.zeros((sum(row_dims), sum(col_dims)), dtype=np.int64)
        r0 = 0
        for i, rd in enumerate(row_dims):
            c0 = 0
            for j, cd in enumerate(col_dims):
                if rd and cd:
                    f = self.entries[i][j]
                    if not f.is_zero():
                        mat[r0:r0 + rd, c0:c0 + cd] = multiplication_matrix(
                            f, self.src[j] + l)
                c0 += cd
            r0 += rd
        return mat

    def evaluate(self, point) -> np.ndarray:
        """Entrywise value at a point, in the standard trivialization."""
        return np.array([[f.evaluate(point) for f in row] for row in self.entries],
                        dtype=np.int64) % self.p

    def maximal_minors(self) -> list[Form]:
        """All t×t minors (t = min(nrows, ncols)) as forms."""
        t = min(self.nrows, self.ncols)
        if t == 0:
            return []
        minors = []
        if self.nrows <= self.ncols:
            rows = range(self.nrows)
            for cols in combinations(range(self.ncols), t):
                minors.append(self._det(tuple(rows), cols))
        else:
            cols = range(self.ncols)
            for rows in combinations(range(self.nrows), t):
                minors.append(self._det(rows, tuple(cols)))
        return minors

    def _det(self, rows, cols) -> Form:
        # Laplace expansion; minors here are at most 4x4.
        if len(rows) == 1:
            return self.entries[rows[0]][cols[0]]
        acc = None
        for k, c in enumerate(cols):
            f = self.entries[rows[0]][c]
            sub_rows = rows[1:]
            sub_cols = cols[:k] + cols[k + 1:]
            if f.is_zero():
                continue
            term = f * self._det(sub_rows, sub_cols)
            if k % 2 == 1:
                term = term.scale(-1)
            acc = term if acc is None else acc + term
        if acc is None:
            deg = sum(self.tgt[r] for r in rows) - sum(self.src[c] for c in cols)
            return Form.zero(self.nvars, max(deg, 0), self.p)
        return acc

    def describe(self) -> str:
        src = " + ".join(f"O({a})" for a in self.src)
        tgt = " + ".join(f"O({b})" for b in self.tgt)
        return f"{src} -> {tgt}"


def hn_matrix(m: GradedMatrix, l: int) -> np.ndarray:
    """Matrix of the induced map on top cohomology H^n(·(l)), n = nvars-1.

    H^n(O(a)(l)) is the dual of H^0(O(-a-l-n-1)); in dual monomial
    coordinates the induced map is the transpose of the degree
    (-l-n-1) piece of the dual matrix.
    """
    n = m.nvars - 1
    return m.dual().graded_piece(-l - n - 1).T


def identity_matrix(nvars: int, twists, p: int = DEFAULT_PRIME) -> GradedMatrix:
    twists = tuple(twists)
    rows = [[Form.constant(nvars, 1, p) if i == j else Form.zero(nvars, 0, p)
             for j in range(len(twists))] for i in range(len(twists))]
    return GradedMatrix.make(nvars, twists, twists, rows, p)
