"""Homogeneous multivariate forms over F_p and their monomial bases.

A Form is an immutable sparse polynomial: a map from exponent tuples
(length nvars, entries summing to the declared degree) to nonzero
coefficients in [0, p).  The zero form keeps its declared degree and an
empty term table.

Monomial bases are graded reverse lexicographic, with x0 > x1 > ... ;
ordering a degree-d basis by ``tuple(reversed(e))`` ascending realizes
exactly that order, and every routine in the package relies on this one
fixed ordering for reproducibility.
"""

from __future__ import annotations

import ast
import re
from dataclasses import dataclass
from functools import lru_cache
from math import comb

import numpy as np

from .modp import DEFAULT_PRIME, check_prime, inv_mod


@lru_cache(maxsize=4096)
def monomial_basis(nvars: int, d: int) -> tuple[tuple[int, ...], ...]:
    """All exponent vectors of total degree d, graded reverse-lex order."""
    if d < 0:
        return ()
    if nvars == 0:
        return ((),) if d == 0 else ()

    def gen(nv, total):
        if nv == 1:
            yield (total,)
            return
        for first in range(total, -1, -1):
            for rest in gen(nv - 1, total - first):
                yield (first,) + rest

    monos = list(gen(nvars, d))
    monos.sort(key=lambda e: tuple(reversed(e)))
    return tuple(monos)


@lru_cache(maxsize=4096)
def monomial_index(nvars: int, d: int) -> dict:
    return {m: i for i, m in enumerate(monomial_basis(nvars, d))}


def space_dim(nvars: int, d: int) -> int:
    """dim of the degree-d piece of a polynomial ring in nvars variables."""
    if d < 0:
        return 0
    return comb(nvars + d - 1, d)


@dataclass(frozen=True)
class Form:
    """Homogeneous form of fixed degree over F_p."""

    nvars: int
    degree: int
    terms: tuple  # ((exponents, coeff), ...) sorted by exponents
    p: int = DEFAULT_PRIME

    @staticmethod
    def make(nvars: int, degree: int, coeffs: dict, p: int = DEFAULT_PRIME) -> "Form":
        clean = {}
        for expo, c in coeffs.items():
            expo = tuple(int(e) for e in expo)
            if len(expo) != nvars or any(e < 0 for e in expo) or sum(expo) != degree:
                raise ValueError(f"exponent {expo} invalid for degree {degree}")
            c = int(c) % p
            if c:
                clean[expo] = c
        return Form(nvars, degree, tuple(sorted(clean.items())), p)

    @staticmethod
    def zero(nvars: int, degree: int, p: int = DEFAULT_PRIME) -> "Form":
        return Form(nvars, degree, (), p)

    @staticmethod
    def variable(nvars: int, i: int, p: int = DEFAULT_PRIME) -> "Form":
        expo = tuple(1 if j == i else 0 for j in range(nvars))
        return Form(nvars, 1, ((expo, 1),), p)

    @staticmethod
    def constant(nvars: int, c: int, p: int = DEFAULT_PRIME) -> "Form":
        c = int(c) % p
        z = tuple(0 for _ in range(nvars))
        return Form(nvars, 0, ((z, c),) if c else (), p)

    @staticmethod
    def monomial(nvars: int, expo, c: int = 1, p: int = DEFAULT_PRIME) -> "Form":
        return Form.make(nvars, sum(expo), {tuple(expo): c}, p)

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, expo) -> int:
        for e, c in self.terms:
            if e == tuple(expo):
                return c
        return 0

    def _compat(self, other: "Form"):
        if self.nvars != other.nvars or self.p != other.p:
            raise ValueError("forms live in different rings")

    def __add__(self, other: "Form") -> "Form":
        self._compat(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.degree != other.degree:
            raise ValueError("cannot add forms of different degrees")
        acc = dict(self.terms)
        for e, c in other.terms:
            acc[e] = (acc.get(e, 0) + c) % self.p
        return Form.make(self.nvars, self.degree, acc, self.p)

    def __neg__(self) -> "Form":
        return self.scale(-1)

    def __sub__(self, other: "Form") -> "Form":
        return self + other.scale(-1)

    def scale(self, c: int) -> "Form":
        c = int(c) % self.p
        if c == 0:
            return Form.zero(self.nvars, self.degree, self.p)
        return Form(self.nvars, self.degree,
                    tuple((e, (k * c) % self.p) for e, k in self.terms), self.p)

    def __mul__(self, other: "Form") -> "Form":
        self._compat(other)
        if self.is_zero() or other.is_zero():
            return Form.zero(self.nvars, self.degree + other.degree, self.p)
        acc: dict = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = (acc.get(e, 0) + c1 * c2) % self.p
        return Form.make(self.nvars, self.degree + other.degree, acc, self.p)

    def evaluate(self, point) -> int:
        """Value at a coordinate tuple (ints mod p)."""
        coords = [int(c) % self.p for c in point]
        if len(coords) != self.nvars:
            raise ValueError("wrong number of coordinates")
        total = 0
        for e, c in self.terms:
            v = c
            for xi, ei in zip(coords, e):
                if ei:
                    v = v * pow(xi, ei, self.p) % self.p
            total = (total + v) % self.p
        return total

    def substitute(self, images: list["Form"]) -> "Form":
        """Substitute x_i -> images[i]; all images share degree e.

        Used to restrict forms to a parametrized line (images linear in two
        new variables) or to apply a linear change of coordinates.
        """
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        degs = {f.degree for f in images}
        if len(degs) != 1:
            raise ValueError("images must share a degree")
        e = degs.pop()
        nv2 = images[0].nvars
        out = Form.zero(nv2, self.degree * e, self.p)
        for expo, c in self.terms:
            part = Form.constant(nv2, c, self.p)
            for img, k in zip(images, expo):
                for _ in range(k):
                    part = part * img
            out = out + part
        return out

    def coeff_vector(self) -> np.ndarray:
        """Coefficients over monomial_basis(nvars, degree), len = space_dim."""
        idx = monomial_index(self.nvars, self.degree)
        v = np.zeros(len(idx), dtype=np.int64)
        for e, c in self.terms:
            v[idx[e]] = c
        return v

    @staticmethod
    def from_coeff_vector(nvars: int, degree: int, vec,
                          p: int = DEFAULT_PRIME) -> "Form":
        basis = monomial_basis(nvars, degree)
        return Form.make(nvars, degree,
                         {m: int(c) for m, c in zip(basis, vec)}, p)

    def __str__(self) -> str:
        return format_form(self)

    def __repr__(self) -> str:
        return f"Form({format_form(self)!r}, deg={self.degree})"


def multiplication_matrix(f: Form, d_src: int) -> np.ndarray:
    """Matrix of g -> f*g from degree d_src to degree d_src + deg f.

    Rows are indexed by the target monomial basis, columns by the source
    basis, both in the fixed graded reverse-lex order.
    """
    nv, p = f.nvars, f.p
    d_tgt = d_src + f.degree
    src = monomial_basis(nv, d_src)
    tgt_idx = monomial_index(nv, d_tgt)
    mat = np.zeros((len(tgt_idx), len(src)), dtype=np.int64)
    if d_src < 0 or f.is_zero():
        return mat
    for j, m in enumerate(src):
        for e, c in f.terms:
            key = tuple(a + b for a, b in zip(e, m))
            mat[tgt_idx[key], j] = c
    return mat


# -- parsing / printing ------------------------------------------------------
#
# Catalog files and the CLI write forms as plain strings in variables
# x0..x9, e.g. "x0^2*x1 - 3*x3^2".  Python's ** is accepted alongside ^.

_VAR_RE = re.compile(r"^x(\d+)$")


def parse_form(text: str, nvars: int, p: int = DEFAULT_PRIME,
               degree: int | None = None) -> Form:
    """Parse a homogeneous form from a string.

    Raises ValueError on malformed input, inhomogeneous expressions, or a
    degree mismatch with the optional expected degree (used for zero
    entries, whose degree is not inferable from "0").
    """
    check_prime(p)
    cleaned = text.replace("^", "**").strip()
    if not cleaned:
        raise ValueError("empty form string")
    try:
        tree = ast.parse(cleaned, mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse form {text!r}: {exc}") from None

    def ev(node) -> tuple[dict, int | None]:
        # returns ({expo: coeff}, degree or None for 0)
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant):
            if not isinstance(node.value, int):
                raise ValueError("only integer coefficients allowed")
            c = node.value % p
            z = tuple(0 for _ in range(nvars))
            return ({z: c} if c else {}, 0 if c else None)
        if isinstance(node, ast.Name):
            m = _VAR_RE.match(node.id)
            if not m or int(m.group(1)) >= nvars:
                raise ValueError(f"unknown variable {node.id!r}")
            i = int(m.group(1))
            return ({tuple(1 if j == i else 0 for j in range(nvars)): 1}, 1)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            terms, d = ev(node.operand)
            if isinstance(node.op, ast.USub):
                terms = {e: (-c) % p for e, c in terms.items()}
            return terms, d
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, (ast.Add, ast.Sub)):
                lt, ld = ev(node.left)
                rt, rd = ev(node.right)
                if isinstance(node.op, ast.Sub):
                    rt = {e: (-c) % p for e, c in rt.items()}
                if ld is not None and rd is not None and ld != rd:
                    raise ValueError(f"inhomogeneous expression {text!r}")
                acc = dict(lt)
                for e, c in rt.items():
                    acc[e] = (acc.get(e, 0) + c) % p
                acc = {e: c for e, c in acc.items() if c}
                return acc, ld if ld is not None else rd
            if isinstance(node.op, ast.Mult):
                lt, ld = ev(node.left)
                rt, rd = ev(node.right)
                if ld is None or rd is None:
                    return {}, None
                acc: dict = {}
                for e1, c1 in lt.items():
                    for e2, c2 in rt.items():
                        e = tuple(a + b for a, b in zip(e1, e2))
                        acc[e] = (acc.get(e, 0) + c1 * c2) % p
                acc = {e: c for e, c in acc.items() if c}
                return acc, ld + rd
            if isinstance(node.op, ast.Pow):
                if not (isinstance(node.right, ast.Constant)
                        and isinstance(node.right.value, int)
                        and node.right.value >= 0):
                    raise ValueError("exponent must be a nonnegative integer")
                k = node.right.value
                lt, ld = ev(node.left)
                if ld is None:
                    return ({}, None) if k else ev(ast.Constant(1))
                acc = {tuple(0 for _ in range(nvars)): 1}
                dd = 0
                for _ in range(k):
                    nxt: dict = {}
                    for e1, c1 in acc.items():
                        for e2, c2 in lt.items():
                            e = tuple(a + b for a, b in zip(e1, e2))
                            nxt[e] = (nxt.get(e, 0) + c1 * c2) % p
                    acc = {e: c for e, c in nxt.items() if c}
                    dd += ld
                return acc, dd
        raise ValueError(f"unsupported syntax in form {text!r}")

    terms, d = ev(tree)
    if not terms:
        if degree is None:
            raise ValueError(f"zero form {text!r} needs an explicit degree")
        return Form.zero(nvars, degree, p)
    if degree is not None and d != degree:
        raise ValueError(f"form {text!r} has degree {d}, expected {degree}")
    return Form.make(nvars, d, terms, p)


def format_form(f: Form) -> str:
    if f.is_zero():
        return "0"
    parts = []
    for e, c in f.terms:
        factors = []
        if c != 1 or not any(e):
            factors.append(str(c))
        for i, k in enumerate(e):
            if k == 1:
                factors.append(f"x{i}")
            elif k > 1:
                factors.append(f"x{i}^{k}")
        parts.append("*".join(factors))
    return " + ".join(parts)


# -- projective points -------------------------------------------------------

def normalize_point(coords, p: int = DEFAULT_PRIME) -> tuple[int, ...]:
    """Scale a nonzero coordinate vector so its last nonzero entry is 1."""
    vec = [int(c) % p for c in coords]
    last = max((i for i, c in enumerate(vec) if c), default=None)
    if last is None:
        raise ValueError("projective point needs a nonzero coordinate")
    s = inv_mod(vec[last], p)
    return tuple(c * s % p for c in vec)


def random_points(nvars: int, count: int, seed: int,
                  p: int = DEFAULT_PRIME) -> list[tuple[int, ...]]:
    """Deterministic sample of projective points, uniform over P^{nvars-1}(F_p)."""
    rng = np.random.default_rng(seed)
    pts = []
    while len(pts) < count:
        block = rng.integers(0, p, size=(count, nvars))
        for row in block:
            if row.any():
                pts.append(normalize_point(row, p))
                if len(pts) == count:
                    break
    return pts
