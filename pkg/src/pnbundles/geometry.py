"""Geometric predicates: global generation, splitting types on lines,
Cayley-Bacharach, tetrahedron edge avoidance, and the base-component test
for line systems on a smooth quadric.

Negative answers always come with a witness that re-verifies
deterministically; positive global-generation verdicts are sampled
(trials and seed recorded in the verdict).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .forms import (Form, monomial_basis, normalize_point, random_points,
                    space_dim)
from .graded import GradedMatrix
from .idealtests import epi_certificate  # re-exported: certificate lives here
from .modp import DEFAULT_PRIME, batched_rank, inv_mod, kernel_basis, rank
from .sheaves import (Cohomology, KerNode, LineSum, QuotNode, SumNode,
                      ambient_twists, nvars_of, rank_of)

__all__ = [
    "LineParam", "GGVerdict", "epi_certificate", "cayley_bacharach",
    "cayley_bacharach_oracle", "splitting_type_on_line", "restrict_to_line",
    "is_globally_generated", "gg_of_raw_kernel", "edge_avoidance",
    "quadric_line_component_test", "DegenerateRestriction",
]


@dataclass(frozen=True)
class LineParam:
    """A line through two independent points; substitutes x_i <- u0 p_i + u1 q_i."""
    a: tuple
    b: tuple
    p: int = DEFAULT_PRIME

    @staticmethod
    def make(a, b, p: int = DEFAULT_PRIME) -> "LineParam":
        a = normalize_point(a, p)
        b = normalize_point(b, p)
        m = np.array([a, b], dtype=np.int64)
        if rank(m, p) != 2:
            raise ValueError("points do not span a line")
        return LineParam(a, b, p)

    def images(self) -> list[Form]:
        out = []
        for pi, qi in zip(self.a, self.b):
            out.append(Form.make(2, 1, {(1, 0): pi, (0, 1): qi}, self.p))
        return out

    def point(self, u0: int, u1: int) -> tuple:
        return tuple((u0 * pi + u1 * qi) % self.p for pi, qi in zip(self.a, self.b))


class DegenerateRestriction(ValueError):
    """The defining matrix drops rank somewhere along the line."""

    def __init__(self, msg, divisor=None):
        super().__init__(msg)
        self.divisor = divisor


def restrict_to_line(m: GradedMatrix, line: LineParam) -> GradedMatrix:
    images = line.images()
    rows = [[f.substitute(images) for f in row] for row in m.entries]
    return GradedMatrix.make(2, m.src, m.tgt, rows, m.p)


# -- binary-form gcd tools ----------------------------------------------------

def _binary_coeffs(f: Form) -> np.ndarray:
    """Coefficients c_k of sum c_k u0^{d-k} u1^k for a binary form."""
    d = f.degree
    v = np.zeros(d + 1, dtype=np.int64)
    for e, c in f.terms:
        v[e[1]] = c
    return v


def _poly_gcd(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Monic gcd of univariate coefficient vectors (lowest degree first)."""

    def trim(v):
        k = len(v)
        while k > 0 and v[k - 1] % p == 0:
            k -= 1
        return v[:k] % p

    a, b = trim(a.copy()), trim(b.copy())
    while len(b):
        # a mod b
        while len(a) >= len(b):
            c = a[-1] * inv_mod(int(b[-1]), p) % p
            shift = len(a) - len(b)
            a[shift:] = (a[shift:] - c * b) % p
            a = trim(a)
            if not len(a):
                break
        a, b = b, a
    if not len(a):
        return a
    return a * inv_mod(int(a[-1]), p) % p


def binary_gcd(forms: list[Form], p: int) -> tuple[int, int]:
    """(chart gcd degree, multiplicity of the common zero at (0:1)).

    Common zeros of a family of binary forms over the algebraic closure
    are exactly: the roots of the gcd on the chart u0 = 1, plus the point
    (0:1) when every form misses its top u1-power.  Both numbers are 0
    iff the family has empty common vanishing locus.
    """
    nonzero = [f for f in forms if not f.is_zero()]
    if not nonzero:
        return -1, -1  # identically zero family
    # chart u0 = 1: polynomial in u1, coefficients low-to-high in u1-degree
    chart = None
    for f in nonzero:
        v = _binary_coeffs(f)
        chart = v if chart is None else _poly_gcd(chart, v, p)
    chart_deg = len(chart) - 1 if len(chart) else 0
    # the chart misses (0:1); a form vanishes there iff its u1^deg
    # coefficient is zero, i.e. its chart polynomial drops degree
    inf_mult = min(f.degree - int(np.nonzero(_binary_coeffs(f))[0][-1])
                   for f in nonzero)
    return chart_deg, inf_mult


# -- splitting types -----------------------------------------------------------

def splitting_type_on_line(node, line: LineParam,
                           eng: Cohomology | None = None) -> list[int]:
    """Splitting degrees of a kernel-type node restricted to a line.

    Computed from the section-dimension jumps of the restricted kernel
    over the binary-form ring.  Raises DegenerateRestriction when the
    restricted matrix drops rank somewhere on the line (the honest
    failure mode: the restriction is then not locally free of the
    expected rank).
    """
    p = line.p
    if isinstance(node, LineSum):
        return sorted(node.twists, reverse=True)
    if isinstance(node, SumNode):
        out = []
        for q in node.parts:
            out.extend(splitting_type_on_line(q, line, eng))
        return sorted(out, reverse=True)
    if not isinstance(node, KerNode):
        raise ValueError("splitting types are computed for kernel-type nodes")

    m_l = restrict_to_line(node.matrix, line)
    need = rank_of(node.target)
    minors = _minors_of_size(m_l, need)
    gdeg, ginf = binary_gcd(minors, p)
    if gdeg != 0 or ginf != 0:
        raise DegenerateRestriction(
            f"matrix drops below rank {need} along the line", (gdeg, ginf))
    r = rank_of(node)
    c1 = sum(node.matrix.src) - _target_c1(node.target)
    emax = max(node.matrix.src)
    emin = min(c1 - (r - 1) * emax, -emax) - 1

    def h0(l):
        g = m_l.graded_piece(l)
        return g.shape[1] - rank(g, p)

    counts = {}
    prev_delta = 0
    found = 0
    l = -emax - 1
    prev = h0(l)  # zero: every summand degree is negative here
    while found < r and l < -emin + 1:
        l += 1
        cur = h0(l)
        delta = cur - prev
        n_here = delta - prev_delta  # count of summands with e = -l
        if n_here:
            counts[-l] = n_here
            found += n_here
        prev, prev_delta = cur, delta
    if found != r:
        raise DegenerateRestriction("could not recover a full splitting type")
    out = []
    for e in sorted(counts, reverse=True):
        out.extend([e] * counts[e])
    if sum(out) != c1:
        raise DegenerateRestriction("splitting degrees do not sum to c1")
    return out


def _minors_of_size(m: GradedMatrix, size: int) -> list[Form]:
    from itertools import combinations
    out = []
    for rows in combinations(range(m.nrows), size):
        for cols in combinations(range(m.ncols), size):
            out.append(m._det(rows, cols))
    return out


def _target_c1(target) -> int:
    if isinstance(target, LineSum):
        return sum(target.twists)
    if isinstance(target, KerNode):
        return sum(target.matrix.src) - _target_c1(target.target)
    if isinstance(target, QuotNode):
        return _target_c1(target.inner) - sum(target.matrix.src)
    raise ValueError("unsupported target")


# -- global generation ----------------------------------------------------------

@dataclass
class GGVerdict:
    generated: bool
    tag: str                      # "generated-up-to-sampling" / "not-generated"
    trials: int
    seed: int
    witness_point: tuple | None = None
    witness_line: LineParam | None = None
    witness_splitting: list | None = None

    def __bool__(self):
        return self.generated


def _monomial_values(nv: int, d: int, pts: np.ndarray, p: int) -> np.ndarray:
    monos = monomial_basis(nv, d)
    out = np.ones((pts.shape[0], len(monos)), dtype=np.int64)
    for j, e in enumerate(monos):
        col = np.ones(pts.shape[0], dtype=np.int64)
        for i, k in enumerate(e):
            for _ in range(k):
                col = col * pts[:, i] % p
        out[:, j] = col
    return out


def _eval_sections(ambient, l, rows, pts, nv, p):
    """Section values at points: array (npoints, nsections, nsummands)."""
    npts, nsec = pts.shape[0], rows.shape[0]
    out = np.zeros((npts, nsec, len(ambient)), dtype=np.int64)
    off = 0
    for j, a in enumerate(ambient):
        d = space_dim(nv, a + l)
        if d:
            vals = _monomial_values(nv, a + l, pts, p)  # npts x d
            out[:, :, j] = vals @ rows[:, off:off + d].T % p
        off += d
    return out


def _eval_matrix_batch(m: GradedMatrix, pts: np.ndarray, p: int) -> np.ndarray:
    """Entrywise values at many points: array (npoints, nrows, ncols)."""
    npts = pts.shape[0]
    out = np.zeros((npts, m.nrows, m.ncols), dtype=np.int64)
    for i in range(m.nrows):
        for j in range(m.ncols):
            f = m.entry(i, j)
            if f.is_zero():
                continue
            col = np.zeros(npts, dtype=np.int64)
            for e, c in f.terms:
                term = np.full(npts, c, dtype=np.int64)
                for k, ek in enumerate(e):
                    for _ in range(ek):
                        term = term * pts[:, k] % p
                col = (col + term) % p
            out[:, i, j] = col
    return out


def _fiber_quot_rows(node, pts, p) -> np.ndarray:
    """Rows to quotient out of the ambient fiber, stacked per point."""
    npts = pts.shape[0]
    amb = ambient_twists(node)
    s = len(amb)
    if isinstance(node, (LineSum, KerNode)):
        return np.zeros((npts, 0, s), dtype=np.int64)
    if isinstance(node, QuotNode):
        ev = _eval_matrix_batch(node.matrix, pts, p)  # npts x s x cols
        return np.transpose(ev, (0, 2, 1))
    if isinstance(node, SumNode):
        blocks = [_fiber_quot_rows(q, pts, p) for q in node.parts]
        widths = [len(ambient_twists(q)) for q in node.parts]
        total_q = sum(b.shape[1] for b in blocks)
        out = np.zeros((npts, total_q, s), dtype=np.int64)
        qoff = woff = 0
        for b, w in zip(blocks, widths):
            out[:, qoff:qoff + b.shape[1], woff:woff + w] = b
            qoff += b.shape[1]
            woff += w
        return out
    raise ValueError("unsupported node for fiber evaluation")


def _fiber_dims(node, pts, p) -> np.ndarray:
    """Fiber dimensions at each point (detects degeneracy)."""
    npts = pts.shape[0]
    if isinstance(node, LineSum):
        return np.full(npts, len(node.twists), dtype=np.int64)
    if isinstance(node, KerNode):
        ev = _eval_matrix_batch(node.matrix, pts, p)
        tgt = node.target
        if isinstance(tgt, QuotNode):
            sub = np.transpose(_eval_matrix_batch(tgt.matrix, pts, p), (0, 2, 1))
            both = np.concatenate([np.transpose(ev, (0, 2, 1)), sub], axis=1)
            rk = batched_rank(both, p) - batched_rank(sub, p)
        else:
            rk = batched_rank(ev, p)
        return len(node.matrix.src) - rk
    if isinstance(node, QuotNode):
        sub = _eval_matrix_batch(node.matrix, pts, p)
        return _fiber_dims(node.inner, pts, p) - batched_rank(sub, p)
    if isinstance(node, SumNode):
        return sum(_fiber_dims(q, pts, p) for q in node.parts)
    raise ValueError("unsupported node for fiber evaluation")


def is_globally_generated(node, trials: int = 500, seed: int = 90021,
                          hint_points=(), hint_lines=(),
                          eng: Cohomology | None = None) -> GGVerdict:
    """Sampled global-generation test with exact negative witnesses.

    Every hint line is checked first through its splitting type (a
    negative summand is a proof of failure); then sections are evaluated
    at the hint points plus `trials` seeded random points and required to
    span each fiber.
    """
    eng = eng or Cohomology()
    p = eng.p
    nv = nvars_of(node)
    r = rank_of(node)

    for line in hint_lines:
        st = splitting_type_on_line(node, line, eng)
        if st and min(st) < 0:
            return GGVerdict(False, "not-generated", trials, seed,
                             witness_line=line, witness_splitting=st)

    secs = eng.h0_basis(node, 0)
    pts = list(hint_points) + random_points(nv, trials, seed, p)
    pts = np.array([normalize_point(q, p) for q in pts], dtype=np.int64)

    dims = _fiber_dims(node, pts, p)
    bad = np.nonzero(dims != r)[0]
    if bad.size:
        x = tuple(int(c) for c in pts[bad[0]])
        return GGVerdict(False, "not-generated", trials, seed, witness_point=x)

    amb = ambient_twists(node)
    vals = _eval_sections(amb, 0, secs.coefficient_rows, pts, nv, p)
    quot = _fiber_quot_rows(node, pts, p)
    if quot.shape[1]:
        stacked = np.concatenate([vals, quot], axis=1)
        spans = batched_rank(stacked, p) - batched_rank(quot, p)
    else:
        spans = batched_rank(vals, p)
    bad = np.nonzero(spans != r)[0]
    if bad.size:
        x = tuple(int(c) for c in pts[bad[0]])
        return GGVerdict(False, "not-generated", trials, seed, witness_point=x)
    return GGVerdict(True, "generated-up-to-sampling", trials, seed)


def reverify_witness(node, verdict: GGVerdict, eng: Cohomology | None = None) -> bool:
    """Check that a negative witness still fails the span test."""
    if verdict.generated:
        return True
    eng = eng or Cohomology()
    if verdict.witness_line is not None:
        st = splitting_type_on_line(node, verdict.witness_line, eng)
        return bool(st and min(st) < 0)
    if verdict.witness_point is not None:
        again = is_globally_generated(node, trials=0, seed=verdict.seed,
                                      hint_points=[verdict.witness_point], eng=eng)
        return not again.generated
    return False


def gg_of_raw_kernel(matrix: GradedMatrix, expected_rank: int,
                     trials: int = 500, seed: int = 90021,
                     p: int = DEFAULT_PRIME) -> GGVerdict:
    """Global generation of the kernel sheaf of an arbitrary matrix.

    Uses only left exactness: sections are the graded kernel in degree 0
    and the fiber at x is the kernel of the evaluated matrix, so no epi
    certificate is needed.  The fiber dimension is required to equal
    expected_rank at every sample (degenerate points are failures).
    """
    nv = matrix.nvars
    g0 = matrix.graded_piece(0)
    rows = kernel_basis(g0, p)
    pts = np.array(random_points(nv, trials, seed, p), dtype=np.int64)
    ev = _eval_matrix_batch(matrix, pts, p)
    dims = matrix.ncols - batched_rank(ev, p)
    bad = np.nonzero(dims != expected_rank)[0]
    if bad.size:
        return GGVerdict(False, "not-generated", trials, seed,
                         witness_point=tuple(int(c) for c in pts[bad[0]]))
    vals = _eval_sections(matrix.src, 0, rows, pts, nv, p)
    spans = batched_rank(vals, p)
    bad = np.nonzero(spans != expected_rank)[0]
    if bad.size:
        return GGVerdict(False, "not-generated", trials, seed,
                         witness_point=tuple(int(c) for c in pts[bad[0]]))
    return GGVerdict(True, "generated-up-to-sampling", trials, seed)


# -- Cayley-Bacharach ------------------------------------------------------------

def cayley_bacharach(points, d: int, p: int = DEFAULT_PRIME) -> bool:
    """Degree-d Cayley-Bacharach test for distinct points in P^2.

    True iff for every point z the degree-d forms vanishing on all the
    other points already vanish at z (kernel dimensions compared).
    """
    pts = [normalize_point(q, p) for q in points]
    if len(set(pts)) != len(pts):
        raise ValueError("points must be distinct")
    arr = np.array(pts, dtype=np.int64)
    ev = _monomial_values(3, d, arr, p)  # k x dim S_d
    full = rank(ev, p)
    for z in range(len(pts)):
        rest = np.delete(ev, z, axis=0)
        if rank(rest, p) != full:
            return False
    return True


def cayley_bacharach_oracle(points, d: int, q: int = 5) -> bool:
    """Brute-force oracle over a tiny field: enumerate all degree-d forms.

    Counts forms rather than dimensions; a point set satisfies the
    condition iff for each z every form through the others passes
    through z.
    """
    pts = [normalize_point(x, q) for x in points]
    arr = np.array(pts, dtype=np.int64)
    ev = _monomial_values(3, d, arr, q)   # k x m
    m = ev.shape[1]
    coeffs = np.array(list(product(range(q), repeat=m)), dtype=np.int64)
    vals = coeffs @ ev.T % q              # q^m x k
    nonzero = vals != 0
    through_all = ~nonzero.any(axis=1)
    for z in range(len(pts)):
        others = [j for j in range(len(pts)) if j != z]
        through_rest = ~nonzero[:, others].any(axis=1)
        if through_rest.sum() != through_all.sum():
            return False
    return True


# -- incidence tests --------------------------------------------------------------

def edge_avoidance(line: LineParam, z_points, p: int = DEFAULT_PRIME) -> bool:
    """True iff the line misses all six lines through pairs of the 4 points.

    The points must span P^3 and the line must avoid them; two lines in
    P^3 meet iff the 4x4 determinant of their spanning points vanishes.
    """
    z = [normalize_point(q, p) for q in z_points]
    if len(z) != 4:
        raise ValueError("need exactly 4 points")
    zm = np.array(z, dtype=np.int64)
    if rank(zm, p) != 4:
        raise ValueError("the four points must span P^3")
    for q in z:
        m = np.array([line.a, line.b, q], dtype=np.int64)
        if rank(m, p) != 3:
            raise ValueError("line passes through one of the points")
    from itertools import combinations
    for i, j in combinations(range(4), 2):
        m = np.array([line.a, line.b, z[i], z[j]], dtype=np.int64)
        if _det_mod(m, p) == 0:
            return False
    return True


def _det_mod(m: np.ndarray, p: int) -> int:
    a = np.mod(m.astype(np.int64), p).copy()
    n = a.shape[0]
    det = 1
    for col in range(n):
        piv = None
        for row in range(col, n):
            if a[row, col] % p:
                piv = row
                break
        if piv is None:
            return 0
        if piv != col:
            a[[col, piv]] = a[[piv, col]]
            det = -det
        det = det * int(a[col, col]) % p
        inv = inv_mod(int(a[col, col]), p)
        for row in range(col + 1, n):
            if a[row, col]:
                a[row] = (a[row] - int(a[row, col]) * inv * a[col]) % p
    return det % p


# -- line systems on a smooth quadric ----------------------------------------------

def quadric_line_component_test(lam, p: int = DEFAULT_PRIME) -> bool:
    """No nonzero element of a 3-space of (1,3)-forms has a (1,0) factor.

    Each element is F = u0*F0(v) + u1*F1(v) with F0, F1 binary cubics;
    divisibility by mu0*u0 + mu1*u1 means mu1*F0 - mu0*F1 = 0, a linear
    condition on the coefficients.  The test whether this happens for
    some mu in the closure reduces to the gcd of the 3x3 minors of a
    4x3 matrix of linear binary forms in mu: a nonconstant gcd means a
    bad ruling line exists.
    """
    mats = [np.asarray(f, dtype=np.int64) % p for f in lam]
    if len(mats) != 3 or any(m.shape != (2, 4) for m in mats):
        raise ValueError("expected three (2,4) coefficient arrays")
    stack = np.stack([m.reshape(-1) for m in mats])
    if rank(stack, p) != 3:
        raise ValueError("the three elements must be independent")
    # 4x3 matrix over k[mu0, mu1]_1: row k, column e has entry
    # mu1*F0_e[k] - mu0*F1_e[k]; coefficient vectors are indexed by
    # mu0-degree (so [a, -b] stands for a*mu1 - b*mu0).
    f0 = np.stack([m[0] for m in mats], axis=1)  # 4 x 3
    f1 = np.stack([m[1] for m in mats], axis=1)
    minors = []
    from itertools import combinations
    for rows in combinations(range(4), 3):
        coeffs = np.zeros(4, dtype=np.int64)
        for perm, sign in _perms3():
            prod_poly = None
            for t in range(3):
                a = int(f0[rows[t], perm[t]])
                b = int(f1[rows[t], perm[t]])
                cur = np.array([a % p, (-b) % p], dtype=np.int64)
                prod_poly = cur if prod_poly is None else _lin_mul(prod_poly, cur, p)
            coeffs = (coeffs + sign * np.pad(prod_poly, (0, 4 - len(prod_poly)))) % p
        minors.append(coeffs % p)
    nonzero = [m for m in minors if m.any()]
    if not nonzero:
        return False  # every mu gives a divisible element
    g = None
    for m in nonzero:
        g = m if g is None else _poly_gcd(g, m, p)
    # common root at mu0-chart infinity (0:1)... the chart mu1 = 1 misses
    # (1:0), where a cubic vanishes iff its mu0^3 coefficient is zero
    inf_mult = min(3 - int(np.nonzero(m)[0][-1]) for m in nonzero)
    return len(g) - 1 == 0 and inf_mult == 0


def _lin_mul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    out = np.zeros(len(a) + len(b) - 1, dtype=np.int64)
    for i, ai in enumerate(a):
        out[i:i + len(b)] = (out[i:i + len(b)] + ai * b) % p
    return out


def _perms3():
    return [((0, 1, 2), 1), ((1, 2, 0), 1), ((2, 0, 1), 1),
            ((0, 2, 1), -1), ((2, 1, 0), -1), ((1, 0, 2), -1)]
