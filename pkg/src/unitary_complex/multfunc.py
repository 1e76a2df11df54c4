"""Multiplicative functions described by their values on prime powers."""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Callable, Iterable, Mapping, NamedTuple

from .arith import PrimePower, SpfTable, as_prime_power, unitary_components
from .errors import DomainError, UnsupportedVertexError
from .ideal import Face, UnitaryIdeal

Rule = Callable[[PrimePower], Fraction]


def to_rational(x) -> Fraction:
    """Exact conversion: ints, Fractions, and strings like ``"3/2"`` or ``"0.1"``.

    Floats are converted via their shortest decimal repr, so ``0.1`` becomes 1/10.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise DomainError(f"not a number: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise DomainError(f"not a finite number: {x!r}")
        return Fraction(repr(x))
    try:
        return Fraction(str(x).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"cannot read {x!r} as an exact rational") from exc


def _as_key(q) -> int:
    if isinstance(q, PrimePower):
        return q.value
    if isinstance(q, str):
        q = parse_prime_power(q)
        return q.value
    q = int(q)
    if as_prime_power(q) is None:
        raise DomainError(f"{q} is not a prime power")
    return q


def parse_prime_power(text: str) -> PrimePower:
    """Read ``"p^a"`` or a plain prime-power integer."""
    text = text.strip()
    m = re.fullmatch(r"(\d+)\s*(?:\^\s*(\d+))?", text)
    if not m:
        raise DomainError(f"cannot parse prime power {text!r}")
    p = int(m.group(1))
    a = int(m.group(2)) if m.group(2) else 1
    q = as_prime_power(p**a)
    if q is None:
        raise DomainError(f"{text} is not a prime power")
    return q


class MultiplicativeFunction:
    """``g`` with ``g(ab) = g(a) g(b)`` for coprime ``a, b`` and ``g(1) = 1``.

    Values come from an explicit map keyed by prime-power value, or lazily from
    ``rule`` for prime powers not in the map. With neither, the prime power is
    unsupported and evaluation raises :class:`UnsupportedVertexError`.
    """

    def __init__(self, values: Mapping | None = None, rule: Rule | None = None, name: str | None = None):
        self._values: dict[int, Fraction] = {}
        for q, v in (values or {}).items():
            self._values[_as_key(q)] = to_rational(v)
        self._rule = rule
        self.name = name

    def __repr__(self) -> str:
        if self.name:
            return f"MultiplicativeFunction({self.name!r})"
        return f"MultiplicativeFunction({len(self._values)} values)"

    @property
    def support(self) -> frozenset[int]:
        """Explicitly stored prime powers (rule-backed functions cover more)."""
        return frozenset(self._values)

    @property
    def is_total(self) -> bool:
        return self._rule is not None

    def value_at(self, q) -> Fraction:
        key = _as_key(q) if not isinstance(q, int) else q
        v = self._values.get(key)
        if v is not None:
            return v
        if self._rule is None:
            raise UnsupportedVertexError(key)
        pp = q if isinstance(q, PrimePower) else as_prime_power(key)
        if pp is None:
            raise DomainError(f"{key} is not a prime power")
        return to_rational(self._rule(pp))

    def evaluate(self, m: int, table: SpfTable | None = None) -> Fraction:
        out = Fraction(1)
        for q in unitary_components(m, table):
            out *= self.value_at(q.value if self._rule is None else q)
        return out

    __call__ = evaluate

    def evaluate_face(self, face: Face) -> Fraction:
        if face.vertices is None:
            raise DomainError("face has no prime-power labels")
        out = Fraction(1)
        for q in face.vertices:
            out *= self.value_at(q)
        return out

    def values_on(self, prime_powers: Iterable[int]) -> dict[int, Fraction]:
        return {q: self.value_at(q) for q in prime_powers}

    def to_text(self, prime_powers: Iterable[int] | None = None) -> str:
        """Serialize in the ``p^a = value`` file format."""
        keys = sorted(self._values) if prime_powers is None else sorted(prime_powers)
        lines = []
        for q in keys:
            lines.append(f"{as_prime_power(q)} = {self.value_at(q)}")
        return "\n".join(lines) + "\n"


def from_text(text: str, name: str | None = None) -> MultiplicativeFunction:
    """Parse newline-delimited ``p^a = value`` entries; ``#`` starts a comment."""
    values: dict[int, Fraction] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise DomainError(f"line {lineno}: expected 'p^a = value', got {raw!r}")
        lhs, rhs = line.split("=", 1)
        q = parse_prime_power(lhs).value
        if q in values:
            raise DomainError(f"line {lineno}: duplicate entry for {lhs.strip()}")
        values[q] = to_rational(rhs)
    return MultiplicativeFunction(values, name=name)


def constant(c, name: str | None = None) -> MultiplicativeFunction:
    c = to_rational(c)
    return MultiplicativeFunction(rule=lambda q: c, name=name or f"const:{c}")


def _sigma_over_n(q: PrimePower) -> Fraction:
    p, a = q
    return Fraction(p ** (a + 1) - 1, p**a * (p - 1))


BUILTINS: dict[str, Rule] = {
    "two_omega": lambda q: Fraction(2),
    "sigma_over_n": _sigma_over_n,
    "identity": lambda q: Fraction(q.value),
}


def builtin(name: str) -> MultiplicativeFunction:
    """Built-in function by name: ``two_omega``, ``sigma_over_n``, ``identity``, ``const:c``."""
    if name.startswith("const:"):
        return constant(name.split(":", 1)[1], name=name)
    try:
        rule = BUILTINS[name]
    except KeyError:
        known = ", ".join(sorted(BUILTINS) + ["const:<c>"])
        raise DomainError(f"unknown builtin function {name!r} (known: {known})") from None
    return MultiplicativeFunction(rule=rule, name=name)


class Classification(NamedTuple):
    log_positive: bool
    strictly_log_positive: bool
    injective_on_S: bool


def classify(g: MultiplicativeFunction, S: UnitaryIdeal) -> Classification:
    vals = [g.value_at(q) for q in S.vertices]
    log_pos = all(v >= 1 for v in vals)
    strict = all(v > 1 for v in vals)
    seen: set[Fraction] = set()
    injective = True
    for s in S:
        v = g.evaluate(s)
        if v in seen:
            injective = False
            break
        seen.add(v)
    return Classification(log_pos, strict, injective)


def first_below(g: MultiplicativeFunction, prime_powers: Iterable[int], bound=1, strict=False) -> int | None:
    """First prime power whose value is below ``bound`` (or ``<=`` when ``strict``)."""
    for q in prime_powers:
        v = g.value_at(q)
        if v < bound or (strict and v == bound):
            return q
    return None
