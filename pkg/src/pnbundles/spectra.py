"""Spectra of stable rank-2 reflexive sheaves on P^3.

A spectrum is a nonincreasing integer sequence (k_1..k_c), c = c_2.  The
enumerator applies only the necessary connectivity/occurrence rules; the
cohomological exclusions the classification uses downstream are separate
assertions, never baked in here.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement


@dataclass(frozen=True)
class Spectrum:
    k: tuple

    @staticmethod
    def make(values) -> "Spectrum":
        k = tuple(int(v) for v in values)
        if not k:
            raise ValueError("spectrum must be nonempty")
        if any(a < b for a, b in zip(k, k[1:])):
            raise ValueError(f"spectrum must be nonincreasing: {k}")
        return Spectrum(k)

    def __iter__(self):
        return iter(self.k)

    def __len__(self):
        return len(self.k)

    def __str__(self):
        return "(" + ",".join(map(str, self.k)) + ")"


def satisfies_occurrence_rules(k: tuple) -> bool:
    """Occurrence rules: positive runs reach down to 0, negative runs reach
    up to -1, and a spectrum avoiding 0 contains -1 at least twice."""
    present = set(k)
    for v in present:
        if v > 0 and any(j not in present for j in range(0, v)):
            return False
        if v < 0 and any(-j not in present for j in range(1, -v)):
            return False
    if 0 not in present and list(k).count(-1) < 2:
        return False
    return True


def satisfies_strict_tail_rule(k: tuple) -> bool:
    """Sharper rule: a strict descent k_{i-1} > k_i > k_{i+1} starting at a
    nonpositive k_{i-1} forces strict descent through the end."""
    c = len(k)
    for i in range(1, c - 1):  # spectrum positions 2..c-1, zero-based i
        if k[i - 1] <= 0 and k[i - 1] > k[i] > k[i + 1]:
            tail = k[i + 1:]
            if any(a <= b for a, b in zip(tail, tail[1:])):
                return False
    return True


def is_symmetric(k: tuple) -> bool:
    return sorted(k) == sorted(-v for v in k)


def enumerate_spectra(c: int, kmin: int, kmax: int, *,
                      spectrum2: bool = False, symmetric: bool = False,
                      c3_nonneg: bool = False,
                      exclude_ge_1: bool = False) -> list[Spectrum]:
    """All admissible spectra of length c with entries in [kmin, kmax].

    Deterministic order: lexicographically decreasing sequences.  Optional
    filters add the strict-tail rule, the locally-free symmetry, c_3 >= 0,
    and the exclusion of any entry >= 1 (the twisted-vanishing filter).
    """
    if c < 1 or kmin > kmax:
        raise ValueError("need c >= 1 and kmin <= kmax")
    out = []
    values = range(kmax, kmin - 1, -1)
    for k in combinations_with_replacement(values, c):
        if not satisfies_occurrence_rules(k):
            continue
        if spectrum2 and not satisfies_strict_tail_rule(k):
            continue
        if symmetric and not is_symmetric(k):
            continue
        if c3_nonneg and c3_from_spectrum(Spectrum(k)) < 0:
            continue
        if exclude_ge_1 and any(v >= 1 for v in k):
            continue
        out.append(Spectrum(k))
    return out


def h1_from_spectrum(s: Spectrum, l: int) -> int:
    """h^1 of the twist l <= -1, as sections of a split bundle on a line."""
    if l > -1:
        raise ValueError("h1 evaluator is valid for l <= -1 only")
    return sum(max(0, ki + l + 2) for ki in s)


def h2_from_spectrum(s: Spectrum, l: int) -> int:
    """h^2 of the twist l >= -3, as h^1 of the same split bundle."""
    if l < -3:
        raise ValueError("h2 evaluator is valid for l >= -3 only")
    return sum(max(0, -(ki + l + 2)) for ki in s)


def c3_from_spectrum(s: Spectrum) -> int:
    return -2 * sum(s.k)


def genus_from_c3(c3: int) -> int:
    """Arithmetic genus of the curve section: p_a = c3/2 + 1."""
    if c3 % 2:
        raise ValueError("c3 must be even")
    return c3 // 2 + 1
