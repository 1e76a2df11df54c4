"""Total orders on faces induced by multiplicative functions.

Faces are subsets of the vertices ``v_1..v_r``, stored as bitmasks with bit
``i - 1`` standing for ``v_i``. An order induced by a strictly log-positive
multiplicative ``g`` compares faces by ``sum log g(v_i)``, so realizability
reduces to feasibility of strict subset-sum inequalities with positive
weights (coherence), decided exactly by :mod:`.lp`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, NamedTuple, Sequence

from .arith import first_primes, unitary_components
from .errors import CapacityError, DomainError, NotInjectiveError
from .ideal import UnitaryIdeal, indices_of, mask_of
from .lp import strict_feasible
from .multfunc import MultiplicativeFunction

MAX_Y_RANK = 16
MAX_EXTENSION_SIZE = 24
MAX_WITNESS_RANK = 12
MAX_CANDIDATE_ORDERS = 10**4
MAX_ENUMERATION_RANK = 8


def face_label(mask: int) -> str:
    """``0b1010`` -> ``"24"``; the empty face is ``"{}"``. Indices above 9 are comma separated."""
    idx = [i + 1 for i in indices_of(mask)]
    if not idx:
        return "{}"
    if max(idx) > 9:
        return "{" + ",".join(map(str, idx)) + "}"
    return "".join(map(str, idx))


def face_of(vertices: Iterable[int]) -> int:
    """Mask of a face given by 1-based vertex numbers."""
    return mask_of(v - 1 for v in vertices)


def k_subsets(r: int, k: int) -> list[int]:
    """All ``k``-subsets of ``v_1..v_r`` in lexicographic order."""
    return [face_of(c) for c in combinations(range(1, r + 1), k)]


def rank_of(faces: Iterable[int]) -> int:
    return max((f.bit_length() for f in faces), default=0)


@dataclass(frozen=True)
class TotalOrder:
    """Faces listed smallest first. ``labels`` optionally names the vertices."""

    sequence: tuple[int, ...]
    r: int
    labels: tuple[int, ...] | None = None

    def __post_init__(self):
        if len(set(self.sequence)) != len(self.sequence):
            raise DomainError("a total order lists each face once")
        if rank_of(self.sequence) > self.r:
            raise DomainError(f"faces use vertices beyond v_{self.r}")

    @property
    def ground(self) -> frozenset[int]:
        return frozenset(self.sequence)

    def __len__(self) -> int:
        return len(self.sequence)

    def position(self) -> dict[int, int]:
        return {f: i for i, f in enumerate(self.sequence)}

    def values(self) -> list[int]:
        """The faces as integers, using ``labels`` as the vertex values."""
        if self.labels is None:
            raise DomainError("order has no vertex labels")
        return [math.prod(self.labels[i] for i in indices_of(f)) for f in self.sequence]

    def __str__(self) -> str:
        if self.labels is not None:
            return " < ".join(map(str, self.values()))
        return " < ".join(face_label(f) for f in self.sequence)


@dataclass(frozen=True)
class WeightVector:
    """Positive weights ``w_1..w_r``; a face weighs the sum over its vertices."""

    weights: tuple[Fraction, ...]

    def __post_init__(self):
        if any(w <= 0 for w in self.weights):
            raise DomainError("weights must be strictly positive")

    def __bool__(self) -> bool:
        return True

    def weight(self, mask: int) -> Fraction:
        return sum((self.weights[i] for i in indices_of(mask)), Fraction(0))

    def order(self, faces: Iterable[int]) -> TotalOrder:
        """Ascending order of ``faces`` by weight; ties are an error."""
        faces = list(faces)
        keyed = sorted(faces, key=self.weight)
        for a, b in zip(keyed, keyed[1:]):
            if self.weight(a) == self.weight(b):
                raise DomainError(f"weights tie on {face_label(a)} and {face_label(b)}")
        return TotalOrder(tuple(keyed), len(self.weights))

    def to_function(self, labels: Sequence[int] | None = None) -> MultiplicativeFunction:
        """Multiplicative ``g`` with ``g(v_i) = 2 ** w_i`` (weights must be integers)."""
        if any(w.denominator != 1 for w in self.weights):
            raise DomainError("integer weights required for an exact 2**w encoding")
        labels = labels if labels is not None else default_labels(len(self.weights))
        return MultiplicativeFunction({q: 2 ** int(w) for q, w in zip(labels, self.weights)}, name="2^w")


@dataclass(frozen=True)
class Infeasible:
    """No positive weights realize the order.

    ``certificate`` lists ``(multiplier, lower, upper)`` for the consecutive
    comparisons ``lower < upper`` (and the side constraints, as
    ``(multiplier, description)`` in ``side``) whose weighted sum of
    ``weight(upper) - weight(lower)`` vanishes identically, a contradiction.
    """

    certificate: tuple[tuple[Fraction, int, int], ...]
    side: tuple[tuple[Fraction, str], ...] = ()
    contradiction: tuple[tuple[int, int], tuple[int, int]] | None = None

    def __bool__(self) -> bool:
        return False

    def describe(self, labels: Sequence[int] | None = None) -> str:
        def name(f):
            if labels is None:
                return face_label(f)
            return str(math.prod(labels[i] for i in indices_of(f)))

        lines = ["INFEASIBLE"]
        if self.contradiction is not None:
            (a, b), (c, d) = self.contradiction
            lines.append(
                f"contradiction: {name(a)} < {name(b)} and {name(c)} < {name(d)} "
                "demand opposite signs of the same weight difference"
            )
        lines.append("certificate (multiplier: lower < upper):")
        for y, lo, hi in self.certificate:
            lines.append(f"  {y}: {name(lo)} < {name(hi)}")
        for y, what in self.side:
            lines.append(f"  {y}: {what}")
        return "\n".join(lines)


def default_labels(r: int) -> tuple[int, ...]:
    return tuple(first_primes(r))


# --------------------------------------------------------------------------
# the poset Y


@dataclass
class CoverPoset:
    """Finite poset given by cover pairs; comparability via reachability bitsets."""

    elements: tuple[int, ...]
    covers: tuple[tuple[int, int], ...]
    _above: list[int] = field(init=False, repr=False)
    _below: list[int] = field(init=False, repr=False)

    def __post_init__(self):
        idx = {e: i for i, e in enumerate(self.elements)}
        if len(idx) != len(self.elements):
            raise DomainError("poset elements must be distinct")
        n = len(self.elements)
        succ = [[] for _ in range(n)]
        indeg = [0] * n
        for a, b in self.covers:
            succ[idx[a]].append(idx[b])
            indeg[idx[b]] += 1
        order = [i for i in range(n) if indeg[i] == 0]
        for i in order:
            for j in succ[i]:
                indeg[j] -= 1
                if indeg[j] == 0:
                    order.append(j)
        if len(order) != n:
            raise DomainError("cover relations contain a cycle")
        above = [0] * n
        for i in reversed(order):
            acc = 0
            for j in succ[i]:
                acc |= (1 << j) | above[j]
            above[i] = acc
        below = [0] * n
        for i in range(n):
            a = above[i]
            while a:
                low = a & -a
                below[low.bit_length() - 1] |= 1 << i
                a ^= low
        self._above = above
        self._below = below
        self._index = idx

    def __len__(self) -> int:
        return len(self.elements)

    def less(self, a: int, b: int) -> bool:
        """Strict comparison ``a < b``."""
        return bool(self._above[self._index[a]] >> self._index[b] & 1)

    def comparable(self, a: int, b: int) -> bool:
        return a == b or self.less(a, b) or self.less(b, a)

    def is_linear_extension(self, order: Sequence[int]) -> bool:
        if sorted(order) != sorted(self.elements):
            return False
        pos = {e: i for i, e in enumerate(order)}
        return all(pos[a] < pos[b] for a, b in self.covers)


def poset_Y(r: int) -> CoverPoset:
    """Poset on all subsets of ``v_1..v_r`` generated by adding a vertex and
    by bumping a vertex ``v_i`` to ``v_{i+1}`` when ``v_{i+1}`` is absent."""
    if not 1 <= r <= MAX_Y_RANK:
        raise DomainError(f"r must be in 1..{MAX_Y_RANK}")
    covers = []
    for s in range(1 << r):
        for k in range(r):
            bit = 1 << k
            if not s & bit:
                covers.append((s, s | bit))
            elif k + 1 < r and not s & (bit << 1):
                covers.append((s, s ^ bit ^ (bit << 1)))
    return CoverPoset(tuple(range(1 << r)), tuple(covers))


def restrict_poset(P: CoverPoset, T: Iterable[int]) -> CoverPoset:
    """Induced subposet on ``T`` (comparabilities may pass through elements outside ``T``)."""
    T = list(dict.fromkeys(T))
    for t in T:
        if t not in P._index:
            raise DomainError(f"{face_label(t)} is not an element of the poset")
    rel = {(a, b) for a in T for b in T if a != b and P.less(a, b)}
    covers = [
        (a, b) for a, b in rel if not any((a, c) in rel and (c, b) in rel for c in T if c != a and c != b)
    ]
    covers.sort()
    return CoverPoset(tuple(T), tuple(covers))


def count_linear_extensions(P: CoverPoset, max_size: int = MAX_EXTENSION_SIZE) -> int:
    """Number of linear extensions, by dynamic programming over down-sets."""
    n = len(P)
    if n > max_size:
        raise CapacityError(f"poset has {n} elements; extension counting is limited to {max_size}")
    below = P._below
    full = (1 << n) - 1
    layer = {0: 1}
    for _ in range(n):
        nxt: dict[int, int] = {}
        for down, ways in layer.items():
            for x in range(n):
                bit = 1 << x
                if not down & bit and below[x] & ~down == 0:
                    key = down | bit
                    nxt[key] = nxt.get(key, 0) + ways
        layer = nxt
    return layer.get(full, 0)


# --------------------------------------------------------------------------
# term orders and coherence


def find_termorder_violation(order: TotalOrder):
    """First violation of the boolean term order axioms, or None.

    Returns ``(empty, sigma, None)`` if some nonempty ``sigma`` precedes the
    empty set, else ``(sigma, tau, gamma)`` with ``sigma < tau`` but
    ``sigma | gamma > tau | gamma`` for ``gamma`` disjoint from both.
    Singleton ``gamma`` suffice: larger ones are reached one vertex at a time.
    """
    r = order.r
    if order.ground != frozenset(range(1 << r)):
        raise DomainError("a boolean term order must list all 2**r subsets")
    seq = order.sequence
    if seq[0] != 0:
        return 0, seq[0], None
    pos = order.position()
    n = len(seq)
    for i in range(n):
        s = seq[i]
        for j in range(i + 1, n):
            t = seq[j]
            used = s | t
            for k in range(r):
                g = 1 << k
                if not used & g and pos[s | g] > pos[t | g]:
                    return s, t, g
    return None


def is_boolean_termorder(order: TotalOrder) -> bool:
    return find_termorder_violation(order) is None


def is_sorted_order(order: TotalOrder) -> bool:
    """True iff ``v_1 < v_2 < ... < v_r`` in the order."""
    pos = order.position()
    singles = [1 << i for i in range(order.r)]
    missing = [s for s in singles if s not in pos]
    if missing:
        raise DomainError(f"singleton {face_label(missing[0])} is not in the ground set")
    return all(pos[a] < pos[b] for a, b in zip(singles, singles[1:]))


def _indicator(mask: int, r: int) -> list[int]:
    return [(mask >> i) & 1 for i in range(r)]


def _constraint_rows(sequence: Sequence[int], r: int, sorted_only: bool):
    rows = []
    for a, b in zip(sequence, sequence[1:]):
        rows.append([y - x for x, y in zip(_indicator(a, r), _indicator(b, r))])
    side = []
    for i in range(r):
        row = [0] * r
        row[i] = 1
        rows.append(row)
        side.append(f"w_{i + 1} > 0")
    if sorted_only:
        for i in range(r - 1):
            row = [0] * r
            row[i], row[i + 1] = -1, 1
            rows.append(row)
            side.append(f"w_{i + 1} < w_{i + 2}")
    return rows, side


def two_pair_contradiction(sequence: Sequence[int]):
    """Two comparisons implied by the order whose weight differences are negatives.

    Returns ``((a, b), (c, d))`` with ``a < b`` and ``c < d`` in the order and
    ``b - a`` equal to ``c - d`` as vertex multisets, or None.
    """
    r = rank_of(sequence)
    diffs = {}
    for i, a in enumerate(sequence):
        for b in sequence[i + 1 :]:
            key = tuple(y - x for x, y in zip(_indicator(a, r), _indicator(b, r)))
            neg = tuple(-v for v in key)
            if neg in diffs:
                return diffs[neg], (a, b)
            diffs.setdefault(key, (a, b))
    return None


def coherence_witness(order: TotalOrder, sorted_only: bool = False) -> WeightVector | Infeasible:
    """Positive integer weights realizing ``order`` by subset sums, or a proof that none exist.

    Only consecutive comparisons are imposed; transitivity gives the rest.
    """
    r = order.r
    if r > MAX_WITNESS_RANK:
        raise CapacityError(f"coherence is limited to r <= {MAX_WITNESS_RANK}")
    seq = order.sequence
    rows, side = _constraint_rows(seq, r, sorted_only)
    res = strict_feasible(rows, r)
    if res.feasible:
        return WeightVector(res.point)
    y = res.certificate
    k = len(seq) - 1
    cert = tuple((y[c], seq[c], seq[c + 1]) for c in range(k) if y[c])
    side_cert = tuple((y[k + j], side[j]) for j in range(len(side)) if y[k + j])
    return Infeasible(cert, side_cert, two_pair_contradiction(seq))


def _faces_for(T, vertices: Sequence[int] | None):
    elements = sorted(T.elements if isinstance(T, UnitaryIdeal) else set(T))
    if vertices is None:
        vertices = sorted({q.value for s in elements for q in unitary_components(s)})
    pos = {q: i for i, q in enumerate(vertices)}
    faces = []
    for s in elements:
        try:
            faces.append(mask_of(pos[q.value] for q in unitary_components(s)))
        except KeyError as exc:
            raise DomainError(f"{s} has prime power {exc.args[0]} outside the vertex list") from None
    return elements, faces, tuple(vertices)


def induced_order(T, g: MultiplicativeFunction, vertices: Sequence[int] | None = None) -> TotalOrder:
    """Order on the integers in ``T`` (or an ideal) by the value of ``g``.

    Faces are taken over ``vertices`` (default: the prime powers occurring in
    ``T``, ascending). ``g`` must exceed 1 on every vertex and separate ``T``.
    """
    elements, faces, verts = _faces_for(T, vertices)
    for q in verts:
        if g.value_at(q) <= 1:
            raise DomainError(f"g must be strictly log-positive; g({q}) = {g.value_at(q)}")
    vals = {s: g.evaluate(s) for s in elements}
    ranked = sorted(zip(elements, faces), key=lambda p: vals[p[0]])
    for (s, _), (t, _) in zip(ranked, ranked[1:]):
        if vals[s] == vals[t]:
            raise NotInjectiveError(s, t, vals[s])
    return TotalOrder(tuple(f for _, f in ranked), len(verts), verts)


def order_from_integers(values: Sequence[int], vertices: Sequence[int] | None = None) -> TotalOrder:
    """Interpret integers listed in ascending order as faces over a common vertex set."""
    if len(set(values)) != len(values):
        raise DomainError("integers in an order must be distinct")
    _, faces, verts = _faces_for(values, vertices)
    pos = {s: f for s, f in zip(sorted(values), faces)}
    return TotalOrder(tuple(pos[s] for s in values), len(verts), verts)


def realizable_orders(
    T: Iterable[int],
    sorted_only: bool = False,
    r: int | None = None,
    max_candidates: int = MAX_CANDIDATE_ORDERS,
) -> list[TotalOrder]:
    """All total orders of the face family ``T`` induced by some admissible ``g``.

    With ``sorted_only`` the weights must also satisfy ``w_1 < ... < w_r``.
    Candidates are grown one face at a time and a prefix is abandoned as soon
    as its constraints become infeasible, which visits every feasible order
    of the full permutation space; output is in lexicographic order of
    positions in ``T``.
    """
    T = list(dict.fromkeys(T))
    r = rank_of(T) if r is None else r
    if math.factorial(len(T)) > max_candidates:
        raise CapacityError(f"{len(T)}! candidate orders exceeds the limit {max_candidates}")
    if r > MAX_ENUMERATION_RANK:
        raise CapacityError(f"enumeration is limited to r <= {MAX_ENUMERATION_RANK}")
    out: list[TotalOrder] = []
    prefix: list[int] = []
    used = [False] * len(T)

    def feasible(seq):
        rows, _ = _constraint_rows(seq, r, sorted_only)
        return strict_feasible(rows, r).feasible

    def rec():
        if len(prefix) == len(T):
            out.append(TotalOrder(tuple(prefix), r))
            return
        for i, x in enumerate(T):
            if used[i]:
                continue
            # an unplaced proper subset of x must come first under positive weights
            if any(not used[j] and j != i and z & x == z for j, z in enumerate(T)):
                continue
            used[i] = True
            prefix.append(x)
            if feasible(prefix):
                rec()
            prefix.pop()
            used[i] = False

    rec()
    return out


class NordBound(NamedTuple):
    t: int
    bound: int
    holds: bool
    sorted_count: int
    extensions: int


def check_nord_bound(T: Iterable[int], r: int) -> NordBound:
    """Compare the number of realizable orders with ``r! * e(Y_T)``."""
    T = list(dict.fromkeys(T))
    t = len(realizable_orders(T, sorted_only=False, r=r))
    s = len(realizable_orders(T, sorted_only=True, r=r))
    ext = count_linear_extensions(restrict_poset(poset_Y(r), T))
    bound = math.factorial(r) * ext
    return NordBound(t, bound, t <= bound, s, ext)


@dataclass(frozen=True)
class ImpossibleReport:
    order: TotalOrder
    result: WeightVector | Infeasible
    integers_descending: tuple[int, ...]

    @property
    def infeasible(self) -> bool:
        return isinstance(self.result, Infeasible)

    def describe(self) -> str:
        head = "g(" + ") > g(".join(map(str, self.integers_descending)) + ")"
        if isinstance(self.result, Infeasible):
            return head + "\n" + self.result.describe(self.order.labels)
        return head + "\nFEASIBLE with weights " + ", ".join(map(str, self.result.weights))


def verify_impossible_example(descending: Sequence[int] = (6, 21, 10, 15, 14, 35)) -> ImpossibleReport:
    """Check that no multiplicative ``g`` has ``g(6) > g(21) > g(10) > g(15) > g(14) > g(35)``."""
    order = order_from_integers(list(reversed(descending)), vertices=(2, 3, 5, 7))
    return ImpossibleReport(order, coherence_witness(order), tuple(descending))
