"""Unitary ideals and their simplicial complexes.

A unitary ideal ``S`` is a set of positive integers closed under unitary
divisors. Its vertices are the prime powers in ``S``; a set of pairwise
coprime vertices is a face iff their product lies in ``S``. Faces are kept
as integer bitmasks over vertex positions, so every face of ``Delta(S)``
corresponds to exactly one element of ``S``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .arith import (
    first_primes,
    is_prime_power,
    prime_powers_up_to,
    unitary_components,
    unitary_divisors,
)
from .errors import CapacityError, DomainError

#: Ideals larger than this are never expanded into explicit face lists.
MATERIALIZATION_THRESHOLD = 10**6


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def indices_of(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


class UnitaryIdeal:
    """A finite set of positive integers closed under unitary divisors."""

    def __init__(self, elements: Iterable[int], *, check: bool = True):
        elems = frozenset(int(s) for s in elements)
        if check:
            bad = find_closure_violation(elems)
            if bad is not None:
                s, d = bad
                raise DomainError(f"not a unitary ideal: {d} is a unitary divisor of {s} but is missing")
        self._elements = elems
        self._vertices: tuple[int, ...] | None = None

    @property
    def elements(self) -> frozenset[int]:
        return self._elements

    @property
    def vertices(self) -> tuple[int, ...]:
        """The prime powers in the ideal, ascending (the vertex list)."""
        if self._vertices is None:
            self._vertices = tuple(sorted(s for s in self.elements if is_prime_power(s)))
        return self._vertices

    @property
    def r(self) -> int:
        return len(self.vertices)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, m) -> bool:
        return m in self.elements

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.elements))

    def __eq__(self, other) -> bool:
        if isinstance(other, UnitaryIdeal):
            return self.elements == other.elements
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.elements)

    def __repr__(self) -> str:
        if len(self) <= 12:
            return f"UnitaryIdeal({sorted(self.elements)})"
        return f"UnitaryIdeal(<{len(self)} elements, r={self.r}>)"

    def to_json(self) -> str:
        return json.dumps({"elements": sorted(self.elements)})

    @classmethod
    def from_json(cls, text: str) -> "UnitaryIdeal":
        data = json.loads(text)
        return cls(data["elements"])


class IntervalIdeal(UnitaryIdeal):
    """The ideal ``[n] = {1, ..., n}``; elements are only expanded on demand."""

    def __init__(self, n: int, threshold: int = MATERIALIZATION_THRESHOLD):
        if n < 1:
            raise DomainError("n must be >= 1")
        self.n = n
        self.threshold = threshold
        self._elements = None
        self._vertices = None

    @property
    def elements(self) -> frozenset[int]:
        if self._elements is None:
            if self.n > self.threshold:
                raise CapacityError(
                    f"[{self.n}] exceeds the materialization threshold {self.threshold}; "
                    "use the streaming facet routines"
                )
            self._elements = frozenset(range(1, self.n + 1))
        return self._elements

    @property
    def vertices(self) -> tuple[int, ...]:
        if self._vertices is None:
            self._vertices = tuple(prime_powers_up_to(self.n))
        return self._vertices

    def __len__(self) -> int:
        return self.n

    def __contains__(self, m) -> bool:
        return isinstance(m, int) and 1 <= m <= self.n

    def __iter__(self) -> Iterator[int]:
        return iter(range(1, self.n + 1))

    def __eq__(self, other) -> bool:
        if isinstance(other, IntervalIdeal):
            return self.n == other.n
        return super().__eq__(other)

    def __hash__(self) -> int:
        return hash(("interval", self.n))

    def __repr__(self) -> str:
        return f"IntervalIdeal({self.n})"


def close_under_unitary_divisors(generators: Iterable[int]) -> UnitaryIdeal:
    """Smallest unitary ideal containing ``generators``."""
    elems: set[int] = set()
    for g in generators:
        if g < 1:
            raise DomainError(f"generators must be positive, got {g}")
        elems.update(unitary_divisors(g))
    return UnitaryIdeal(elems, check=False)


def interval_ideal(n: int, threshold: int = MATERIALIZATION_THRESHOLD) -> IntervalIdeal:
    return IntervalIdeal(n, threshold)


def find_closure_violation(candidate: Iterable[int]) -> tuple[int, int] | None:
    """First ``(s, d)`` with ``d || s``, ``s`` in the set, ``d`` not; else None.

    Elements are scanned in increasing order. Nontrivial divisors are tried
    before 1 so the witness names a missing prime-power-level piece.
    """
    elems = set(candidate)
    for s in sorted(elems):
        if s < 1:
            raise DomainError(f"elements must be positive, got {s}")
        divs = unitary_divisors(s)
        for d in divs[1:] + divs[:1]:
            if d not in elems:
                return s, d
    return None


def is_unitary_ideal(candidate: Iterable[int]) -> bool:
    return find_closure_violation(candidate) is None


@dataclass(frozen=True)
class Face:
    """A face given by vertex positions; ``vertices`` holds the labels if known."""

    indices: tuple[int, ...]
    vertices: tuple[int, ...] | None = None

    @property
    def mask(self) -> int:
        return mask_of(self.indices)

    @property
    def value(self) -> int | None:
        """Product of the vertex labels (the element of ``S`` for ideal complexes)."""
        if self.vertices is None:
            return None
        return math.prod(self.vertices)

    def __len__(self) -> int:
        return len(self.indices)


@dataclass(frozen=True)
class FVector:
    """``(f_0, ..., f_{r-1})``; ``f_i`` counts faces with ``i + 1`` vertices."""

    entries: tuple[int, ...]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    @property
    def face_count(self) -> int:
        """Total number of faces, the empty face included."""
        return 1 + sum(self.entries)


class SimplicialComplex:
    """A downward-closed family of subsets of ``{0, ..., vertex_count - 1}``.

    ``faces`` may be given as bitmasks or as iterables of vertex indices.
    ``labels``, when present, are the prime powers attached to the vertices.
    """

    def __init__(
        self,
        vertex_count: int,
        faces: Iterable,
        labels: Sequence[int] | None = None,
        *,
        check: bool = True,
    ):
        self.vertex_count = vertex_count
        masks = set()
        for f in faces:
            masks.add(f if isinstance(f, int) else mask_of(f))
        masks.add(0)
        self.faces = frozenset(masks)
        self.labels = tuple(labels) if labels is not None else None
        if self.labels is not None and len(self.labels) != vertex_count:
            raise DomainError("labels must have one entry per vertex")
        if check:
            self._check()

    def _check(self):
        full = (1 << self.vertex_count) - 1
        for f in self.faces:
            if f & ~full:
                raise DomainError(f"face {indices_of(f)} uses a vertex outside 0..{self.vertex_count - 1}")
            rest = f
            while rest:
                low = rest & -rest
                if f ^ low not in self.faces:
                    raise DomainError(
                        f"not downward closed: {indices_of(f)} is a face but {indices_of(f ^ low)} is not"
                    )
                rest ^= low

    @classmethod
    def from_facets(cls, vertex_count: int, facets: Iterable, labels=None) -> "SimplicialComplex":
        """Downward closure of the given facets."""
        faces: set[int] = {0}
        for f in facets:
            top = f if isinstance(f, int) else mask_of(f)
            sub = top
            while True:
                faces.add(sub)
                if sub == 0:
                    break
                sub = (sub - 1) & top
        return cls(vertex_count, faces, labels, check=False)

    @classmethod
    def full_simplex(cls, vertex_count: int, labels=None) -> "SimplicialComplex":
        return cls.from_facets(vertex_count, [(1 << vertex_count) - 1], labels)

    def __len__(self) -> int:
        return len(self.faces)

    def __contains__(self, face) -> bool:
        return (face if isinstance(face, int) else mask_of(face)) in self.faces

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.vertex_count == other.vertex_count and self.faces == other.faces

    def __hash__(self) -> int:
        return hash((self.vertex_count, self.faces))

    def __repr__(self) -> str:
        return f"SimplicialComplex(vertex_count={self.vertex_count}, faces={len(self.faces)})"

    def face(self, mask: int) -> Face:
        idx = indices_of(mask)
        verts = tuple(self.labels[i] for i in idx) if self.labels is not None else None
        return Face(idx, verts)

    def f_vector(self) -> FVector:
        counts = [0] * self.vertex_count
        for f in self.faces:
            if f:
                counts[f.bit_count() - 1] += 1
        return FVector(tuple(counts))

    def facet_masks(self) -> list[int]:
        out = []
        n = self.vertex_count
        faces = self.faces
        for f in faces:
            if not any(not (f >> i) & 1 and (f | (1 << i)) in faces for i in range(n)):
                out.append(f)
        return out

    def facets(self) -> list[Face]:
        """Inclusion-maximal faces, ordered by value for labelled complexes."""
        fs = [self.face(m) for m in self.facet_masks()]
        if self.labels is not None:
            fs.sort(key=lambda f: f.value)
        else:
            fs.sort(key=lambda f: (len(f), f.indices))
        return fs

    def to_json(self) -> str:
        verts = list(self.labels) if self.labels is not None else list(range(self.vertex_count))
        facets = sorted(list(f.indices) for f in self.facets())
        return json.dumps({"vertices": verts, "facets": facets})

    @classmethod
    def from_json(cls, text: str) -> "SimplicialComplex":
        data = json.loads(text)
        verts = data["vertices"]
        return cls.from_facets(len(verts), [tuple(f) for f in data["facets"]], labels=verts)


def complex_of(ideal: UnitaryIdeal, threshold: int = MATERIALIZATION_THRESHOLD) -> SimplicialComplex:
    """``Delta(S)``: one face per element, labelled by the ideal's prime powers."""
    if len(ideal) > threshold:
        raise CapacityError(f"ideal has {len(ideal)} elements, above the threshold {threshold}")
    verts = ideal.vertices
    pos = {q: i for i, q in enumerate(verts)}
    faces = []
    for s in ideal.elements:
        faces.append(mask_of(pos[q.value] for q in unitary_components(s)))
    return SimplicialComplex(len(verts), faces, verts, check=False)


def f_vector(cx: SimplicialComplex) -> FVector:
    return cx.f_vector()


def facets(cx: SimplicialComplex) -> list[Face]:
    return cx.facets()


def realize(cx: SimplicialComplex) -> UnitaryIdeal:
    """Realize an abstract complex as an ideal: vertex ``i`` becomes the ``i+1``-th prime."""
    cx._check()
    for i in range(cx.vertex_count):
        if (1 << i) not in cx.faces:
            raise DomainError(f"vertex {i} is not a face of the complex")
    primes = first_primes(cx.vertex_count)
    elems = [math.prod(primes[i] for i in indices_of(f)) for f in cx.faces]
    return UnitaryIdeal(elems, check=False)


def facet_values_text(cx: SimplicialComplex) -> str:
    """Newline-delimited integer values of the facets."""
    return "".join(f"{f.value}\n" for f in cx.facets())


def iter_complexes(r: int) -> Iterator[frozenset[int]]:
    """Every downward-closed family on ``r`` vertices containing all singletons,
    as a frozenset of face masks. Depth-first over subsets by size."""
    big = sorted((m for m in range(1 << r) if m.bit_count() >= 2), key=lambda m: (m.bit_count(), m))
    chosen = {0} | {1 << i for i in range(r)}

    def rec(k):
        if k == len(big):
            yield frozenset(chosen)
            return
        yield from rec(k + 1)
        m = big[k]
        rest = m
        while rest:
            low = rest & -rest
            if m ^ low not in chosen:
                return
            rest ^= low
        chosen.add(m)
        yield from rec(k + 1)
        chosen.discard(m)

    yield from rec(0)
