"""Sums of multiplicative functions over unitary ideals, and the extremal value Psi(r, c)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from .errors import CapacityError, DomainError
from .ideal import Face, FVector, SimplicialComplex, UnitaryIdeal, iter_complexes, mask_of
from .multfunc import MultiplicativeFunction, to_rational

DEFAULT_FACET_CAP = 20
BRUTE_FORCE_MAX_R = 5


def g_sum_direct(S: UnitaryIdeal, g: MultiplicativeFunction) -> Fraction:
    return sum((g.evaluate(s) for s in S), Fraction(0))


def g_sum_fvector(f: FVector | Sequence[int], c) -> Fraction:
    """``1 + sum_i c**(i+1) f_i`` for a function constant on prime powers."""
    c = to_rational(c)
    total = Fraction(1)
    power = Fraction(1)
    for fi in f:
        power *= c
        total += power * fi
    return total


def g_sum_inclusion_exclusion(
    facets: Sequence[Face], g: MultiplicativeFunction, cap: int = DEFAULT_FACET_CAP
) -> Fraction:
    """Sum over the complex generated by ``facets`` via inclusion-exclusion.

    Each facet-subset intersection ``I`` contributes ``prod_{a in I} (1 + g(a))``
    with sign ``(-1)**(k+1)``. Subsets are walked depth-first so each
    intersection costs one AND; contributions are grouped by intersection.
    """
    if len(facets) > cap:
        raise CapacityError(f"{len(facets)} facets exceeds the inclusion-exclusion cap {cap}")
    if not facets:
        return Fraction(0)
    labels = sorted({q for f in facets for q in f.vertices})
    pos = {q: i for i, q in enumerate(labels)}
    masks = [mask_of(pos[q] for q in f.vertices) for f in facets]
    one_plus = [1 + g.value_at(q) for q in labels]

    coeff: dict[int, int] = {}
    ell = len(masks)
    stack = [(i, masks[i], 1) for i in range(ell)]
    while stack:
        last, inter, k = stack.pop()
        coeff[inter] = coeff.get(inter, 0) + (1 if k % 2 else -1)
        for j in range(last + 1, ell):
            stack.append((j, inter & masks[j], k + 1))

    total = Fraction(0)
    for inter, c in coeff.items():
        if c == 0:
            continue
        term = Fraction(1)
        i = 0
        m = inter
        while m:
            if m & 1:
                term *= one_plus[i]
            m >>= 1
            i += 1
        total += c * term
    return total


@dataclass(frozen=True)
class KozlovVertex:
    r: int
    i: int
    vector: tuple[int, ...]


def kozlov_vertex(r: int, i: int) -> KozlovVertex:
    """f-vector of the ``(i-1)``-skeleton of the ``(r-1)``-simplex."""
    if r < 1 or not 1 <= i <= r:
        raise DomainError(f"need 1 <= i <= r, got r={r}, i={i}")
    vec = tuple(comb(r, j) if j <= i else 0 for j in range(1, r + 1))
    return KozlovVertex(r, i, vec)


@dataclass(frozen=True)
class PsiResult:
    value: Fraction
    argmax_level: int
    k_values: tuple[Fraction, ...]


def k_values(r: int, c) -> tuple[Fraction, ...]:
    """``K_i = sum_{j<=i} c**j C(r, j)`` for ``i = 1..r``."""
    c = to_rational(c)
    out = []
    acc = Fraction(0)
    power = Fraction(1)
    for j in range(1, r + 1):
        power *= c
        acc += power * comb(r, j)
        out.append(acc)
    return tuple(out)


def psi(r: int, c) -> PsiResult:
    """Maximum of ``sum_S g`` over ideals with ``r`` prime powers and ``g = c`` on them.

    Ties in the argmax go to the smallest level.
    """
    if r < 1:
        raise DomainError("r must be >= 1")
    ks = k_values(r, c)
    best = max(ks)
    level = ks.index(best) + 1
    return PsiResult(1 + best, level, ks)


def psi_threshold(r: int, i: int) -> Fraction:
    """``-(2i+2)/(r-2i-1)``: below it, ``K_{2i+2}`` beats ``K_{2i}``."""
    return Fraction(-(2 * i + 2), r - 2 * i - 1)


def psi_piecewise_level(r: int, c) -> int:
    """Truncation level selected by the closed-form case analysis."""
    if r < 1:
        raise DomainError("r must be >= 1")
    c = to_rational(c)
    if c == 0:
        raise DomainError("ambiguous boundary: c = 0")
    if c > 0 or r == 1:
        return r
    level = 2
    i = 1
    while 2 * i + 2 <= r:
        t = psi_threshold(r, i)
        if c == t:
            raise DomainError(f"ambiguous boundary: c = {t} separates levels {2 * i} and {2 * i + 2}")
        if c < t:
            level = 2 * i + 2
        else:
            # thresholds decrease with i, so no later one can be crossed
            break
        i += 1
    return level


def psi_piecewise(r: int, c) -> Fraction:
    level = psi_piecewise_level(r, c)
    return 1 + k_values(r, c)[level - 1]


def complexes_with_all_vertices(r: int):
    """Yield the f-vector of every complex on ``r`` labelled vertices that
    contains every singleton (one yield per complex)."""
    if r < 1:
        raise DomainError("r must be >= 1")
    if r > BRUTE_FORCE_MAX_R:
        raise CapacityError(f"brute force is limited to r <= {BRUTE_FORCE_MAX_R}")
    for faces in iter_complexes(r):
        yield SimplicialComplex(r, faces, check=False).f_vector().entries


def psi_bruteforce(r: int, c) -> Fraction:
    """Exhaustive maximum of ``1 + f . (c, ..., c**r)`` over all complexes on ``r`` vertices."""
    c = to_rational(c)
    seen = set(complexes_with_all_vertices(r))
    return max(g_sum_fvector(f, c) for f in seen)
