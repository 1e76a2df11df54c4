"""Exact rational feasibility for strict homogeneous systems ``R w > 0``.

Because the system is homogeneous, ``R w > 0`` is solvable iff ``R w >= 1``
is. By Farkas' lemma exactly one of these holds:

* there is ``w`` with ``R w >= 1``;
* there is ``y >= 0``, ``sum(y) = 1`` with ``y^T R = 0``.

We run a Phase-I simplex (Bland's rule, ``Fraction`` arithmetic) on the
second system, which has only ``len(w) + 1`` rows. If it is feasible we get
the certificate ``y``; otherwise the optimal Phase-I duals give ``w``.
Either answer is checked exactly before it is returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence


@dataclass(frozen=True)
class LPResult:
    feasible: bool
    point: tuple[Fraction, ...] | None = None  # w with R w >= 1
    certificate: tuple[Fraction, ...] | None = None  # y >= 0, y^T R = 0, sum y = 1


def phase_one(B: Sequence[Sequence[Fraction]], d: Sequence[Fraction]):
    """Find ``x >= 0`` with ``B x = d``.

    Returns ``(x, None)`` when feasible, else ``(None, u)`` where ``u``
    satisfies ``B^T u >= 0`` and ``d . u < 0`` (a Farkas certificate).
    """
    m = len(B)
    n = len(B[0]) if m else 0
    sign = [(-1 if d[i] < 0 else 1) for i in range(m)]
    # tableau columns: n originals, m artificials, then rhs
    T = []
    for i in range(m):
        s = sign[i]
        row = [Fraction(s * v) for v in B[i]]
        row += [Fraction(1) if k == i else Fraction(0) for k in range(m)]
        row.append(Fraction(s * d[i]))
        T.append(row)
    width = n + m + 1
    # reduced costs for min sum(artificials); last entry is -objective
    z = [Fraction(0)] * width
    for i in range(m):
        for j in range(n):
            z[j] -= T[i][j]
        z[-1] -= T[i][-1]
    basis = [n + i for i in range(m)]

    while True:
        enter = next((j for j in range(n + m) if z[j] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:  # pragma: no cover - Phase I is bounded below by 0
            raise AssertionError("unbounded phase one")
        prow = T[leave]
        piv = prow[enter]
        if piv != 1:
            prow = [v / piv for v in prow]
            T[leave] = prow
        nz = [(j, v) for j, v in enumerate(prow) if v]
        for i in range(m):
            if i != leave:
                f = T[i][enter]
                if f:
                    row = T[i]
                    for j, v in nz:
                        row[j] -= f * v
        f = z[enter]
        for j, v in nz:
            z[j] -= f * v
        basis[leave] = enter

    if z[-1] == 0:
        x = [Fraction(0)] * n
        for i, b in enumerate(basis):
            if b < n:
                x[b] = T[i][-1]
        return tuple(x), None
    # dual multipliers of the sign-normalized rows: pi_i = 1 - reduced cost
    u = tuple(-sign[i] * (1 - z[n + i]) for i in range(m))
    return None, u


def _integerize(w: Sequence[Fraction]) -> tuple[Fraction, ...]:
    den = lcm(*(v.denominator for v in w)) if w else 1
    ints = [int(v * den) for v in w]
    g = 0
    for v in ints:
        g = gcd(g, v)
    g = g or 1
    return tuple(Fraction(v // g) for v in ints)


def strict_feasible(R: Sequence[Sequence[int]], nvars: int) -> LPResult:
    """Decide ``R w > 0``; a found ``w`` is scaled to coprime integers."""
    rows = [[Fraction(v) for v in r] for r in R]
    if not rows:
        return LPResult(True, point=tuple(Fraction(1) for _ in range(nvars)))
    k = len(rows)
    B = [[rows[c][i] for c in range(k)] for i in range(nvars)]
    B.append([Fraction(1)] * k)
    d = [Fraction(0)] * nvars + [Fraction(1)]
    y, u = phase_one(B, d)
    if y is not None:
        ok = all(v >= 0 for v in y) and sum(y) == 1
        ok = ok and all(sum(y[c] * rows[c][i] for c in range(k)) == 0 for i in range(nvars))
        if not ok:  # pragma: no cover
            raise ArithmeticError("infeasibility certificate failed verification")
        return LPResult(False, certificate=y)
    t = u[nvars]
    if t >= 0:  # pragma: no cover
        raise ArithmeticError("phase one returned a malformed dual vector")
    w = _integerize([v / -t for v in u[:nvars]])
    if not all(sum(a * b for a, b in zip(r, w)) > 0 for r in rows):  # pragma: no cover
        raise ArithmeticError("dual weights failed verification")
    return LPResult(True, point=w)
