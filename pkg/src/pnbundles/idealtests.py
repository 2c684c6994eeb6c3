"""Graded-piece tests on ideals generated by lists of forms.

The central certificate: a map of line-bundle sums is surjective as a
sheaf map iff its maximal-minor ideal has empty vanishing locus, which is
verified positively by exhibiting a degree d in which the ideal contains
every form.
"""

from __future__ import annotations

import numpy as np

from .forms import Form, multiplication_matrix, space_dim
from .graded import GradedMatrix
from .modp import rank, zeros


def ideal_piece_rows(gens: list[Form], d: int) -> np.ndarray:
    """Rows spanning the degree-d piece of the ideal generated by `gens`."""
    if not gens:
        return zeros(0, 1)
    nv = gens[0].nvars
    dim = space_dim(nv, d)
    blocks = []
    for f in gens:
        if f.is_zero() or f.degree > d:
            continue
        blocks.append(multiplication_matrix(f, d - f.degree).T)
    if not blocks:
        return zeros(0, dim)
    return np.concatenate(blocks)


def ideal_piece_dim(gens: list[Form], d: int, p: int) -> int:
    return rank(ideal_piece_rows(gens, d), p)


def ideal_pieces_equal(gens_a: list[Form], gens_b: list[Form], degree_bound: int,
                       p: int) -> bool:
    """Graded pieces of the two ideals agree in all degrees <= degree_bound."""
    for d in range(0, degree_bound + 1):
        ra = ideal_piece_rows(gens_a, d)
        rb = ideal_piece_rows(gens_b, d)
        da = rank(ra, p)
        db = rank(rb, p)
        if da != db:
            return False
        if da and rank(np.concatenate([ra, rb]), p) != da:
            return False
    return True


def epi_certificate(m: GradedMatrix, max_degree: int = 8) -> tuple[bool, int | None]:
    """Certify surjectivity of a map of line-bundle sums.

    Returns (True, d) with the smallest d <= max_degree such that the
    maximal-minor ideal contains every degree-d form (hence has empty
    vanishing locus), or (False, None).
    """
    minors = [f for f in m.maximal_minors() if not f.is_zero()]
    if not minors:
        return False, None
    p = m.p
    nv = m.nvars
    start = min(f.degree for f in minors)
    for d in range(start, max_degree + 1):
        if ideal_piece_dim(minors, d, p) == space_dim(nv, d):
            return True, d
    return False, None
