"""Sheaf expression DAG on P^n and its exact cohomology engine.

Nodes are built from sums of line bundles by kernels of certified
surjections, quotients by certified subbundle inclusions, twists, direct
sums and duals.  Every node with section support carries, twist by twist,
an explicit model of H^0 (vectors of forms inside an ambient line-bundle
sum) and of H^n (a subquotient of the dual monomial model of the ambient
top cohomology); long-exact-sequence splices then compute full tables
with every connecting rank explicit.

Cells whose splice would require a model the chain cannot provide are
reported as closed intervals, never guessed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .chern import (ChernVector, dual_chern, line_sum_chern, whitney_div,
                    whitney_mul)
from .forms import Form, random_points, space_dim
from .graded import GradedMatrix, hn_matrix
from .modp import (DEFAULT_PRIME, extend_to_complement, kernel_basis, rank,
                   zeros)

DEFAULT_CERT_SEED = 200001
DEFAULT_CERT_SAMPLES = 24


class CertificationError(ValueError):
    """A node's epi/mono certificate failed."""


# -- node variants -----------------------------------------------------------

@dataclass(frozen=True)
class LineSum:
    nvars: int
    twists: tuple
    p: int = DEFAULT_PRIME

    @staticmethod
    def make(nvars, twists, p=DEFAULT_PRIME):
        return LineSum(nvars, tuple(int(a) for a in twists), p)


@dataclass(frozen=True)
class KerNode:
    """Kernel of a map from a line-bundle sum onto a target node.

    The matrix maps ⊕O(src) into the target's ambient sum; the image must
    be the whole target (epi), which the engine certifies before any
    cohomology beyond H^0 is produced.
    """
    matrix: GradedMatrix
    target: object  # LineSum or KerNode


@dataclass(frozen=True)
class QuotNode:
    """Quotient of a node by an injective map from a line-bundle sum."""
    matrix: GradedMatrix
    inner: object  # LineSum or KerNode


@dataclass(frozen=True)
class SumNode:
    parts: tuple


@dataclass(frozen=True)
class DualNode:
    """Dual of a node: Chern data flips sign, tables flip by top-duality.

    No section models are available through this wrapper; use an explicit
    presentation of the dual when sections or fibers are needed.
    """
    inner: object


Node = object


def nvars_of(node) -> int:
    if isinstance(node, LineSum):
        return node.nvars
    if isinstance(node, KerNode):
        return node.matrix.nvars
    if isinstance(node, QuotNode):
        return node.matrix.nvars
    if isinstance(node, SumNode):
        return nvars_of(node.parts[0])
    if isinstance(node, DualNode):
        return nvars_of(node.inner)
    raise TypeError(f"not a sheaf node: {node!r}")


def prime_of(node) -> int:
    if isinstance(node, LineSum):
        return node.p
    if isinstance(node, (KerNode, QuotNode)):
        return node.matrix.p
    if isinstance(node, SumNode):
        return prime_of(node.parts[0])
    if isinstance(node, DualNode):
        return prime_of(node.inner)
    raise TypeError(f"not a sheaf node: {node!r}")


def rank_of(node) -> int:
    if isinstance(node, LineSum):
        return len(node.twists)
    if isinstance(node, KerNode):
        return len(node.matrix.src) - rank_of(node.target)
    if isinstance(node, QuotNode):
        return rank_of(node.inner) - len(node.matrix.src)
    if isinstance(node, SumNode):
        return sum(rank_of(q) for q in node.parts)
    if isinstance(node, DualNode):
        return rank_of(node.inner)
    raise TypeError(f"not a sheaf node: {node!r}")


def ambient_twists(node) -> tuple | None:
    """Twists of the line-bundle sum through which sections are written."""
    if isinstance(node, LineSum):
        return node.twists
    if isinstance(node, KerNode):
        return node.matrix.src
    if isinstance(node, QuotNode):
        return ambient_twists(node.inner)
    if isinstance(node, SumNode):
        twists = []
        for q in node.parts:
            t = ambient_twists(q)
            if t is None:
                return None
            twists.extend(t)
        return tuple(twists)
    if isinstance(node, DualNode):
        return None
    raise TypeError(f"not a sheaf node: {node!r}")


def ker_node(matrix: GradedMatrix, target=None) -> KerNode:
    """Kernel of matrix onto `target` (default: the line sum of its rows)."""
    if target is None:
        target = LineSum.make(matrix.nvars, matrix.tgt, matrix.p)
    amb = ambient_twists(target)
    if amb is None or tuple(matrix.tgt) != tuple(amb):
        raise ValueError("matrix target twists must match the target's ambient")
    if not isinstance(target, (LineSum, KerNode, QuotNode)):
        raise ValueError("unsupported kernel target")
    return KerNode(matrix, target)


def quot_node(matrix: GradedMatrix, inner) -> QuotNode:
    amb = ambient_twists(inner)
    if amb is None or tuple(matrix.tgt) != tuple(amb):
        raise ValueError("matrix target twists must match the inner ambient")
    if not isinstance(inner, (LineSum, KerNode)):
        raise ValueError("quotients are taken in line sums or kernel nodes")
    return QuotNode(matrix, inner)


def twist_node(node, t: int):
    """Twist by O(t), pushed through the expression tree."""
    if t == 0:
        return node
    if isinstance(node, LineSum):
        return LineSum(node.nvars, tuple(a + t for a in node.twists), node.p)
    if isinstance(node, KerNode):
        return KerNode(node.matrix.twist(t), twist_node(node.target, t))
    if isinstance(node, QuotNode):
        return QuotNode(node.matrix.twist(t), twist_node(node.inner, t))
    if isinstance(node, SumNode):
        return SumNode(tuple(twist_node(q, t) for q in node.parts))
    if isinstance(node, DualNode):
        return DualNode(twist_node(node.inner, -t))
    raise TypeError(f"not a sheaf node: {node!r}")


def sum_node(*parts) -> SumNode:
    flat = []
    for q in parts:
        if isinstance(q, SumNode):
            flat.extend(q.parts)
        else:
            flat.append(q)
    return SumNode(tuple(flat))


def chern_of_node(node) -> ChernVector:
    """Whitney-formula Chern data, truncated at H^{n+1}."""
    n = nvars_of(node) - 1
    if isinstance(node, LineSum):
        return line_sum_chern(n, node.twists)
    if isinstance(node, KerNode):
        src = line_sum_chern(n, node.matrix.src)
        return whitney_div(src, chern_of_node(node.target))
    if isinstance(node, QuotNode):
        sub = line_sum_chern(n, node.matrix.src)
        return whitney_div(chern_of_node(node.inner), sub)
    if isinstance(node, SumNode):
        acc = chern_of_node(node.parts[0])
        for q in node.parts[1:]:
            acc = whitney_mul(acc, chern_of_node(q))
        return acc
    if isinstance(node, DualNode):
        return dual_chern(chern_of_node(node.inner))
    raise TypeError(f"not a sheaf node: {node!r}")


# -- presented subquotient spaces ---------------------------------------------

@dataclass(frozen=True)
class Presented:
    """A subquotient span(space)/span(quot) of a coordinate space.

    space is None for the full ambient space; quot is None for zero.  All
    stored rows are over F_p.
    """
    ambient_dim: int
    space: np.ndarray | None
    quot: np.ndarray | None

    def space_rows(self) -> np.ndarray:
        if self.space is None:
            return np.eye(self.ambient_dim, dtype=np.int64)
        return self.space

    def quot_rows(self) -> np.ndarray:
        if self.quot is None:
            return zeros(0, self.ambient_dim)
        return self.quot

    def dim(self, p: int) -> int:
        q = self.quot_rows()
        if self.space is None:
            return self.ambient_dim - rank(q, p)
        stack = np.concatenate([self.space, q]) if q.size else self.space
        return rank(stack, p) - rank(q, p)


def map_rank_into(T: np.ndarray, target: Presented, p: int) -> int:
    """Rank of a linear map into a presented subquotient.

    T has ambient-target rows and source columns; its image is assumed to
    lie in span(space) + span(quot) (guaranteed by the certificates).
    """
    img = T.T
    q = target.quot_rows()
    if q.size == 0:
        return rank(img, p)
    return rank(np.concatenate([img, q]), p) - rank(q, p)


def kernel_into(T: np.ndarray, target: Presented, p: int) -> np.ndarray:
    """Rows spanning ker(source -> subquotient) for the map above."""
    q = target.quot_rows()
    m = T.shape[1]
    if q.size == 0:
        return kernel_basis(T, p)
    aug = np.concatenate([T, q.T], axis=1)
    full = kernel_basis(aug, p)
    return full[:, :m] if full.size else zeros(0, m)


# -- cohomology cells ----------------------------------------------------------

Cell = object  # int (exact) or (lo, hi) interval for indeterminate cells


def is_exact_cell(v) -> bool:
    return isinstance(v, (int, np.integer))


@dataclass
class CohTable:
    n: int
    lo: int
    hi: int
    cells: dict  # (i, l) -> Cell

    def h(self, i: int, l: int) -> Cell:
        if i < 0 or i > self.n:
            return 0
        return self.cells[(i, l)]

    def euler(self, l: int):
        total = 0
        for i in range(self.n + 1):
            v = self.h(i, l)
            if not is_exact_cell(v):
                return None
            total += v if i % 2 == 0 else -v
        return total

    def exact_columns(self) -> list[int]:
        return [l for l in range(self.lo, self.hi + 1)
                if all(is_exact_cell(self.h(i, l)) for i in range(self.n + 1))]

    def render(self) -> str:
        width = max(len(str(self.h(i, l)))
                    for i in range(self.n + 1) for l in range(self.lo, self.hi + 1))
        lines = ["l:    " + "  ".join(f"{l:>{width}}" for l in range(self.lo, self.hi + 1))]
        for i in range(self.n, -1, -1):
            row = []
            for l in range(self.lo, self.hi + 1):
                v = self.h(i, l)
                row.append(f"{v if is_exact_cell(v) else '?':>{width}}")
            lines.append(f"h^{i}:  " + "  ".join(row))
        return "\n".join(lines)


@dataclass
class SectionModel:
    """Explicit basis of H^0(E(l)) as vectors of forms in the ambient sum."""
    node: object
    l: int
    ambient: tuple
    coefficient_rows: np.ndarray  # dim x sum(h^0(O(a_j + l)))

    @property
    def dim(self) -> int:
        return self.coefficient_rows.shape[0]

    def forms(self, p: int) -> list[list[Form]]:
        nv = nvars_of(self.node)
        out = []
        for row in self.coefficient_rows:
            vec = []
            off = 0
            for a in self.ambient:
                d = space_dim(nv, a + self.l)
                vec.append(Form.from_coeff_vector(nv, a + self.l, row[off:off + d], p))
                off += d
            out.append(vec)
        return out


def default_window(n: int) -> range:
    return range(-n - 3, 5)


class Cohomology:
    """Cohomology engine with per-(node, twist) caching and certification."""

    def __init__(self, p: int = DEFAULT_PRIME, cert_seed: int = DEFAULT_CERT_SEED,
                 cert_samples: int = DEFAULT_CERT_SAMPLES):
        self.p = p
        self.cert_seed = cert_seed
        self.cert_samples = cert_samples
        self._values: dict = {}
        self._h0: dict = {}
        self._hn: dict = {}
        self._cert: dict = {}

    # -- certificates ---------------------------------------------------------

    def certify(self, node) -> None:
        """Validate all epi/mono certificates in the DAG (cached)."""
        if node in self._cert:
            if self._cert[node] is not True:
                raise CertificationError(self._cert[node])
            return
        try:
            self._certify(node)
        except CertificationError as exc:
            self._cert[node] = str(exc)
            raise
        self._cert[node] = True

    def _sample_points(self, nv: int):
        pts = random_points(nv, self.cert_samples, self.cert_seed, self.p)
        for i in range(nv):
            pts.append(tuple(1 if j == i else 0 for j in range(nv)))
        return pts

    def _certify(self, node) -> None:
        from .idealtests import epi_certificate

        if isinstance(node, LineSum):
            return
        if isinstance(node, SumNode):
            for q in node.parts:
                self.certify(q)
            return
        if isinstance(node, DualNode):
            self.certify(node.inner)
            return
        if isinstance(node, KerNode):
            self.certify(node.target)
            m = node.matrix
            if isinstance(node.target, LineSum):
                ok, _deg = epi_certificate(m, max_degree=self._cert_degree(m))
                if not ok:
                    raise CertificationError(
                        f"matrix onto {node.target.twists} is not surjective "
                        f"(minor ideal never fills a full degree)")
            elif isinstance(node.target, KerNode):
                inner = node.target.matrix
                if not inner.compose(m).is_zero():
                    raise CertificationError("kernel map does not land in the target")
                want = rank_of(node.target)
                for x in self._sample_points(m.nvars):
                    if rank(m.evaluate(x), self.p) != want:
                        raise CertificationError(
                            f"map is not onto the target at sample point {x}")
            else:  # quotient target: compare ranks modulo the subobject fibers
                tgt = node.target
                if isinstance(tgt.inner, KerNode):
                    if not tgt.inner.matrix.compose(m).is_zero():
                        raise CertificationError(
                            "kernel map does not land in the quotient's carrier")
                want = rank_of(tgt)
                for x in self._sample_points(m.nvars):
                    sub = tgt.matrix.evaluate(x).T
                    both = np.concatenate([m.evaluate(x).T, sub])
                    if rank(both, self.p) - rank(sub, self.p) != want:
                        raise CertificationError(
                            f"map is not onto the quotient at sample point {x}")
            return
        if isinstance(node, QuotNode):
            self.certify(node.inner)
            m = node.matrix
            if isinstance(node.inner, KerNode):
                if not node.inner.matrix.compose(m).is_zero():
                    raise CertificationError("subobject map does not land in the node")
            cols = len(m.src)
            for x in self._sample_points(m.nvars):
                if rank(m.evaluate(x), self.p) != cols:
                    raise CertificationError(
                        f"subobject map drops rank at sample point {x}")
            lmin = -max(m.src)
            for l in range(lmin, lmin + 5):
                G = m.graded_piece(l)
                if G.shape[1] and rank(G, self.p) != G.shape[1]:
                    raise CertificationError(
                        f"subobject map has section kernel in degree {l}")
            return
        raise TypeError(f"not a sheaf node: {node!r}")

    @staticmethod
    def _cert_degree(m: GradedMatrix) -> int:
        spread = max(m.src) - min(m.tgt)
        return max(2 * spread + 2, 8)

    # -- cell computation ------------------------------------------------------

    def values(self, node, l: int) -> tuple:
        key = (node, l)
        if key not in self._values:
            self.certify(node)
            self._values[key] = self._compute_values(node, l)
        return self._values[key]

    def h(self, node, i: int, l: int):
        n = nvars_of(node) - 1
        if i < 0 or i > n:
            return 0
        return self.values(node, l)[i]

    def h0_presented(self, node, l: int) -> Presented:
        key = (node, l)
        if key not in self._h0:
            self.values(node, l)
        ps = self._h0.get(key)
        if ps is None:
            raise ValueError(f"no section model available for {type(node).__name__}")
        return ps

    def hn_presented(self, node, l: int) -> Presented | None:
        key = (node, l)
        if key not in self._hn:
            self.values(node, l)
        return self._hn.get(key)

    def _amb_dim0(self, node, l: int) -> int:
        nv = nvars_of(node)
        return sum(space_dim(nv, a + l) for a in ambient_twists(node))

    def _amb_dimn(self, node, l: int) -> int:
        nv = nvars_of(node)
        n = nv - 1
        return sum(space_dim(nv, -a - l - n - 1) for a in ambient_twists(node))

    def _compute_values(self, node, l: int) -> tuple:
        nv = nvars_of(node)
        n = nv - 1
        p = self.p
        key = (node, l)

        if isinstance(node, LineSum):
            h0 = sum(space_dim(nv, a + l) for a in node.twists)
            hn = sum(space_dim(nv, -a - l - n - 1) for a in node.twists)
            vals = [h0] + [0] * (n - 1) + [hn]
            self._h0[key] = Presented(h0, None, None)
            self._hn[key] = Presented(hn, None, None)
            return tuple(vals)

        if isinstance(node, SumNode):
            parts = [self.values(q, l) for q in node.parts]
            vals = []
            for i in range(n + 1):
                cells = [pv[i] for pv in parts]
                if all(is_exact_cell(c) for c in cells):
                    vals.append(int(sum(cells)))
                else:
                    lo = sum(c if is_exact_cell(c) else c[0] for c in cells)
                    hi = sum(c if is_exact_cell(c) else c[1] for c in cells)
                    vals.append((lo, hi))
            self._h0[key] = self._block_presented(
                [self._h0.get((q, l)) for q in node.parts],
                [self._amb_dim0(q, l) for q in node.parts])
            self._hn[key] = self._block_presented(
                [self._hn.get((q, l)) for q in node.parts],
                [self._amb_dimn(q, l) for q in node.parts])
            return tuple(vals)

        if isinstance(node, DualNode):
            inner_vals = self.values(node.inner, -l - n - 1)
            self._h0[key] = None
            self._hn[key] = None
            return tuple(reversed(inner_vals))

        if isinstance(node, KerNode):
            return self._values_kernel(node, l)
        if isinstance(node, QuotNode):
            return self._values_quotient(node, l)
        raise TypeError(f"not a sheaf node: {node!r}")

    @staticmethod
    def _block_presented(parts, dims) -> Presented | None:
        if any(q is None for q in parts):
            return None
        total = sum(dims)
        space_blocks, quot_blocks = [], []
        off = 0
        for q, d in zip(parts, dims):
            s = q.space_rows()
            if s.size:
                blk = zeros(s.shape[0], total)
                blk[:, off:off + d] = s
                space_blocks.append(blk)
            qq = q.quot_rows()
            if qq.size:
                blk = zeros(qq.shape[0], total)
                blk[:, off:off + d] = qq
                quot_blocks.append(blk)
            off += d
        space = np.concatenate(space_blocks) if space_blocks else zeros(0, total)
        quot = np.concatenate(quot_blocks) if quot_blocks else None
        return Presented(total, space, quot)

    def _values_kernel(self, node: KerNode, l: int) -> tuple:
        p = self.p
        m = node.matrix
        nv = m.nvars
        n = nv - 1
        key = (node, l)
        tvals = self.values(node.target, l)
        t0 = self.h0_presented(node.target, l)
        tn = self.hn_presented(node.target, l)

        dim_a0 = sum(space_dim(nv, a + l) for a in m.src)
        G = m.graded_piece(l)
        rank0 = map_rank_into(G, t0, p)
        h0 = dim_a0 - rank0
        self._h0[key] = Presented(dim_a0, kernel_into(G, t0, p), None)

        vals: list = [h0]
        # h^1 = coker on the section strand
        if is_exact_cell(tvals[0]):
            vals.append(int(tvals[0]) - rank0)
        else:
            vals.append((tvals[0][0] - rank0, tvals[0][1] - rank0))
        # middle range
        for i in range(2, n):
            vals.append(tvals[i - 1])
        # top: h^n = h^{n-1}(target) + dim ker on the top strand
        T = hn_matrix(m, l)
        dim_an = T.shape[1]
        if tn is not None:
            kerdim = dim_an - map_rank_into(T, tn, p)
            if is_exact_cell(tvals[n - 1]):
                vals.append(int(tvals[n - 1]) + kerdim)
            else:
                vals.append((tvals[n - 1][0] + kerdim, tvals[n - 1][1] + kerdim))
            if tvals[n - 1] == 0:
                self._hn[key] = Presented(dim_an, kernel_into(T, tn, p), None)
            else:
                self._hn[key] = None
        else:
            lo = tvals[n - 1] if is_exact_cell(tvals[n - 1]) else tvals[n - 1][0]
            hi = (tvals[n - 1] if is_exact_cell(tvals[n - 1])
                  else tvals[n - 1][1]) + dim_an
            vals.append(int(lo) if lo == hi else (int(lo), int(hi)))
            self._hn[key] = None
        return tuple(vals)

    def _values_quotient(self, node: QuotNode, l: int) -> tuple:
        p = self.p
        m = node.matrix
        nv = m.nvars
        n = nv - 1
        key = (node, l)
        ivals = self.values(node.inner, l)
        i0 = self.h0_presented(node.inner, l)
        inn = self.hn_presented(node.inner, l)

        dim_a0 = sum(space_dim(nv, a + l) for a in m.src)
        dim_an = sum(space_dim(nv, -a - l - n - 1) for a in m.src)
        G = m.graded_piece(l)

        vals: list = []
        if is_exact_cell(ivals[0]):
            vals.append(int(ivals[0]) - dim_a0)
        else:
            vals.append((ivals[0][0] - dim_a0, ivals[0][1] - dim_a0))
        # section model: coset representatives extending im(G) inside H^0(inner)
        img = G.T
        if i0.quot is not None and i0.quot.size:
            img = np.concatenate([img, i0.quot])
        reps = extend_to_complement(img, i0.space, p, ncols=i0.ambient_dim)
        self._h0[key] = Presented(i0.ambient_dim, reps,
                                  np.mod(img, p) if img.size else None)

        for i in range(1, n - 1):
            vals.append(ivals[i])

        T = hn_matrix(m, l)
        if inn is not None:
            kerdim = dim_an - map_rank_into(T, inn, p)
            for idx, delta in ((n - 1, kerdim), (n, kerdim - dim_an)):
                v = ivals[idx]
                if is_exact_cell(v):
                    vals.append(int(v) + delta)
                else:
                    vals.append((v[0] + delta, v[1] + delta))
            new_quot = np.concatenate([inn.quot_rows(), T.T]) if T.size else inn.quot_rows()
            self._hn[key] = Presented(inn.ambient_dim, inn.space,
                                      new_quot if new_quot.size else None)
        else:
            for idx in (n - 1, n):
                v = ivals[idx]
                lo = (v if is_exact_cell(v) else v[0]) - (dim_an if idx == n else 0)
                hi = (v if is_exact_cell(v) else v[1]) + (dim_an if idx == n - 1 else 0)
                vals.append(int(lo) if lo == hi else (int(lo), int(hi)))
            self._hn[key] = None
        return tuple(vals)

    # -- public operations -----------------------------------------------------

    def table(self, node, window=None) -> CohTable:
        n = nvars_of(node) - 1
        if window is None:
            window = default_window(n)
        window = list(window)
        cells = {}
        for l in window:
            vals = self.values(node, l)
            for i in range(n + 1):
                cells[(i, l)] = vals[i]
        return CohTable(n, min(window), max(window), cells)

    def h0_basis(self, node, l: int) -> SectionModel:
        """Explicit section basis; for quotients these are coset reps."""
        ps = self.h0_presented(node, l)
        amb = ambient_twists(node)
        rows = ps.space_rows()
        if ps.quot is not None and ps.quot.size and isinstance(node, (KerNode, LineSum, SumNode)):
            raise AssertionError("unexpected quotient in a subspace model")
        return SectionModel(node, l, amb, np.mod(rows, self.p))

    def p_transform(self, node) -> KerNode:
        """Kernel-of-evaluation node whose dual is the transform of `node`.

        Requires the node to be globally generated (certified elsewhere);
        the returned node is Ker(H^0 ⊗ O -> node) with the section basis
        as its matrix.
        """
        secs = self.h0_basis(node, 0)
        nv = nvars_of(node)
        amb = ambient_twists(node)
        cols = secs.forms(self.p)
        rows = [[cols[j][i] for j in range(secs.dim)] for i in range(len(amb))]
        m = GradedMatrix.make(nv, (0,) * secs.dim, amb, rows, self.p)
        return ker_node(m, node)


def serre_flip(table: CohTable) -> CohTable:
    """Table of the dual bundle via top-degree duality on P^n."""
    n = table.n
    cells = {}
    lo, hi = -table.hi - n - 1, -table.lo - n - 1
    for l in range(lo, hi + 1):
        for i in range(n + 1):
            cells[(i, l)] = table.h(n - i, -l - n - 1)
    return CohTable(n, lo, hi, cells)
