"""Facets of Delta([n]) without materializing the complex.

``m <= n`` is a facet iff no prime power coprime to ``m`` can be adjoined
while staying ``<= n``. The cheapest such prime power is the smallest prime
not dividing ``m``, so the test is ``m * spnd(m) > n``.
"""

from __future__ import annotations

import csv
import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import numpy as np

from .arith import (
    _SMALL_PRIMES,
    SpfTable,
    build_spf_table,
    iter_primes,
    prime_powers_up_to,
    smallest_prime_not_dividing,
)
from .errors import DomainError
from .ideal import Face
from .multfunc import MultiplicativeFunction, first_below, to_rational

DEFAULT_BLOCK = 1 << 20


def is_facet_in_interval(m: int, n: int) -> bool:
    if m < 1 or n < 1:
        raise DomainError("m and n must be positive")
    if m > n:
        raise DomainError(f"m = {m} is not in [1, {n}]")
    return m * smallest_prime_not_dividing(m) > n


def _facets_in_block(lo: int, hi: int, n: int) -> np.ndarray:
    """Facets of Delta([n]) among ``lo..hi`` inclusive."""
    m = np.arange(lo, hi + 1, dtype=np.int64)
    spnd = np.zeros_like(m)
    open_ = np.ones(m.shape, dtype=bool)
    primorial = 1
    for p in _SMALL_PRIMES:
        hit = open_ & (m % p != 0)
        spnd[hit] = p
        open_ &= ~hit
        primorial *= p
        if primorial > hi:
            break
    return m[m * spnd > n]


def _blocks(n: int, block: int):
    lo = 1
    while lo <= n:
        hi = min(n, lo + block - 1)
        yield lo, hi
        lo = hi + 1


def enumerate_facets(n: int, block: int = DEFAULT_BLOCK, workers: int = 1) -> Iterator[int]:
    """Stream the facets of Delta([n]) in increasing order.

    ``[1, n]`` is cut into blocks tested independently; with ``workers > 1``
    blocks run on a thread pool and are merged in block order.
    """
    if n < 1:
        raise DomainError("n must be >= 1")
    blocks = _blocks(n, block)
    if workers <= 1:
        for lo, hi in blocks:
            yield from _facets_in_block(lo, hi, n).tolist()
        return
    with ThreadPoolExecutor(max_workers=workers) as pool:
        for arr in pool.map(lambda b: _facets_in_block(b[0], b[1], n), blocks):
            yield from arr.tolist()


def facet_count(n: int, block: int = DEFAULT_BLOCK, workers: int = 1) -> int:
    if n < 1:
        raise DomainError("n must be >= 1")
    blocks = list(_blocks(n, block))
    if workers <= 1:
        return sum(len(_facets_in_block(lo, hi, n)) for lo, hi in blocks)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return sum(pool.map(lambda b: len(_facets_in_block(b[0], b[1], n)), blocks))


def facet_density(n: int, workers: int = 1) -> Fraction:
    return Fraction(facet_count(n, workers=workers), n)


@dataclass(frozen=True)
class GammaEstimate:
    series_value: Fraction
    terms_used: int
    truncation_bound: Fraction

    def __float__(self) -> float:
        return float(self.series_value)


def gamma_terms() -> Iterator[Fraction]:
    """Terms ``(1/p_i - 1/p_{i+1}) / (p_1 ... p_i)`` for ``i = 1, 2, ...``."""
    primes = iter_primes()
    p = next(primes)
    primorial = 1
    for q in primes:
        primorial *= p
        yield (Fraction(1, p) - Fraction(1, q)) / primorial
        p = q


def gamma_constant(truncation_bound=Fraction(1, 10**12)) -> GammaEstimate:
    """Partial sum of the facet-density series, stopping at the first term below the bound."""
    bound = to_rational(truncation_bound)
    if bound <= 0:
        raise DomainError("truncation bound must be positive")
    total = Fraction(1, 2)
    used = 0
    for term in gamma_terms():
        if term < bound:
            break
        total += term
        used += 1
    return GammaEstimate(total, used, bound)


@dataclass(frozen=True)
class FacetMatrix:
    """Facets of Delta([n]) and their prime-power columns.

    Every entry of the exponent matrix is 0 or 1, so rows are stored sparsely
    as the tuple of columns holding a 1.
    """

    n: int
    prime_powers: tuple[int, ...]
    facets: tuple[int, ...]
    rows: tuple[tuple[int, ...], ...]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.facets), len(self.prime_powers)

    def dense(self) -> np.ndarray:
        out = np.zeros(self.shape, dtype=np.int8)
        for i, row in enumerate(self.rows):
            out[i, list(row)] = 1
        return out

    def row_of(self, w: int) -> tuple[int, ...]:
        return self.rows[self.facets.index(w)]

    def face(self, i: int) -> Face:
        row = self.rows[i]
        return Face(row, tuple(self.prime_powers[j] for j in row))

    def write_csv(self, fh) -> None:
        """Header ``w, q_1, ..., q_r`` then one ``w_i, a_i1, ..., a_ir`` row per facet."""
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["w", *self.prime_powers])
        r = len(self.prime_powers)
        for w, row in zip(self.facets, self.rows):
            dense = [0] * r
            for j in row:
                dense[j] = 1
            writer.writerow([w, *dense])

    def to_csv(self) -> str:
        buf = io.StringIO()
        self.write_csv(buf)
        return buf.getvalue()


def _table_for(n: int) -> SpfTable | None:
    return build_spf_table(n) if n >= 2 else None


def facet_matrix(n: int, table: SpfTable | None = None, workers: int = 1) -> FacetMatrix:
    if n < 1:
        raise DomainError("n must be >= 1")
    if table is None or table.limit < n:
        table = _table_for(n)
    pps = tuple(prime_powers_up_to(n))
    col = {q: j for j, q in enumerate(pps)}
    facets = tuple(enumerate_facets(n, workers=workers))
    rows = []
    for w in facets:
        comps = table.factorize(w) if w > 1 else {}
        rows.append(tuple(sorted(col[p**a] for p, a in comps.items())))
    return FacetMatrix(n, pps, facets, tuple(rows))


def facet_peak_function(
    face_vertices, prime_powers, strict: bool = False, epsilon=Fraction(1, 100)
) -> MultiplicativeFunction:
    """Log-positive function maximized exactly on the given facet.

    Takes 2 on the facet's vertices and 1 elsewhere; with ``strict`` the
    off-facet value is ``1 + epsilon`` so the function is strictly log-positive.
    """
    inside = set(face_vertices)
    off = 1 + to_rational(epsilon) if strict else Fraction(1)
    values = {q: (Fraction(2) if q in inside else off) for q in prime_powers}
    missing = inside - set(values)
    if missing:
        raise DomainError(f"facet vertices {sorted(missing)} are not among the prime powers")
    return MultiplicativeFunction(values, name="facet-peak")


def maximize_on_interval(
    n: int,
    g: MultiplicativeFunction,
    strategy: str = "facet",
    matrix: FacetMatrix | None = None,
    table: SpfTable | None = None,
) -> tuple[int, Fraction]:
    """``(argmax, max)`` of ``g`` over ``1..n``; ties go to the smallest ``m``.

    The ``facet`` strategy evaluates only the facet rows, which is correct
    only when ``g >= 1`` on every prime power ``<= n``.
    """
    if n < 1:
        raise DomainError("n must be >= 1")
    if strategy not in ("facet", "naive"):
        raise DomainError(f"unknown strategy {strategy!r}")
    pps = matrix.prime_powers if matrix is not None else tuple(prime_powers_up_to(n))
    vals = [g.value_at(q) for q in pps]
    col = {q: j for j, q in enumerate(pps)}

    if strategy == "facet":
        bad = first_below(g, pps)
        if bad is not None:
            raise DomainError(
                f"facet strategy needs a log-positive function; g({bad}) = {g.value_at(bad)} < 1"
            )
        if matrix is None or matrix.n != n:
            matrix = facet_matrix(n, table)
        best_m, best = 1, Fraction(1)
        first = True
        for w, row in zip(matrix.facets, matrix.rows):
            v = Fraction(1)
            for j in row:
                v *= vals[j]
            if first or v > best:
                best_m, best, first = w, v, False
        return best_m, best

    if table is None or table.limit < n:
        table = _table_for(n)
    best_m, best = 1, Fraction(1)
    for m in range(2, n + 1):
        v = Fraction(1)
        for p, a in table.factorize(m).items():
            v *= vals[col[p**a]]
        if v > best:
            best_m, best = m, v
    return best_m, best
