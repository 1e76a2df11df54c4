"""Integer kernels: primality, sieves, unitary factorization."""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Iterator, NamedTuple

import numpy as np

from .errors import CapacityError, DomainError

#: Upper bound for sieve-backed tables; above it factorization uses trial division.
DEFAULT_SIEVE_LIMIT = 10**8

# Deterministic Miller-Rabin bases, valid for n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_LIMIT = 3_317_044_064_679_887_385_961_981


class PrimePower(NamedTuple):
    """A vertex ``prime ** exponent`` with ``exponent >= 1``."""

    prime: int
    exponent: int

    @property
    def value(self) -> int:
        return self.prime**self.exponent

    def __int__(self) -> int:
        return self.value

    def __str__(self) -> str:
        if self.exponent == 1:
            return str(self.prime)
        return f"{self.prime}^{self.exponent}"


def _check_positive(m, name="m"):
    if not isinstance(m, (int, np.integer)) or isinstance(m, bool):
        raise DomainError(f"{name} must be an integer, got {m!r}")
    if m < 1:
        raise DomainError(f"{name} must be a positive integer, got {m}")
    return int(m)


def is_prime(n: int) -> bool:
    """Deterministic primality test (Miller-Rabin with a fixed base set)."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    if n >= _MR_LIMIT:
        raise DomainError(f"primality of {n} is outside the deterministic range")
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_up_to(limit: int) -> np.ndarray:
    """All primes ``<= limit`` as an int64 array (plain Eratosthenes)."""
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    sieve[4::2] = False
    for p in range(3, math.isqrt(limit) + 1, 2):
        if sieve[p]:
            sieve[p * p :: 2 * p] = False
    return np.flatnonzero(sieve).astype(np.int64)


def iter_primes() -> Iterator[int]:
    """Unbounded stream of primes in increasing order."""
    limit = 1024
    start = 0
    while True:
        ps = primes_up_to(limit)
        for p in ps[start:]:
            yield int(p)
        start = len(ps)
        limit *= 2


@lru_cache(maxsize=None)
def nth_prime(i: int) -> int:
    """The ``i``-th prime, 1-based (``nth_prime(1) == 2``)."""
    if i < 1:
        raise DomainError("prime index must be >= 1")
    limit = max(16, int(i * (math.log(i + 1) + math.log(math.log(i + 2)) + 2)))
    while True:
        ps = primes_up_to(limit)
        if len(ps) >= i:
            return int(ps[i - 1])
        limit *= 2


def first_primes(k: int) -> list[int]:
    return [nth_prime(i) for i in range(1, k + 1)]


class SpfTable:
    """Smallest-prime-factor lookup for ``2..limit``. Immutable after construction."""

    __slots__ = ("limit", "_spf")

    def __init__(self, limit: int, spf: np.ndarray):
        self.limit = limit
        self._spf = spf
        self._spf.setflags(write=False)

    def __getitem__(self, m: int) -> int:
        if not 2 <= m <= self.limit:
            raise IndexError(f"{m} outside table range 2..{self.limit}")
        return int(self._spf[m])

    @property
    def array(self) -> np.ndarray:
        """Read-only view; entries 0 and 1 are 0."""
        return self._spf

    def factorize(self, m: int) -> dict[int, int]:
        out: dict[int, int] = {}
        spf = self._spf
        while m > 1:
            p = int(spf[m])
            a = 0
            while m % p == 0:
                m //= p
                a += 1
            out[p] = a
        return out


def build_spf_table(limit: int, max_limit: int = DEFAULT_SIEVE_LIMIT) -> SpfTable:
    """Sieve the smallest prime factor of every integer in ``2..limit``."""
    limit = _check_positive(limit, "limit")
    if limit < 2:
        raise DomainError("limit must be >= 2")
    if limit > max_limit:
        raise CapacityError(f"sieve limit {limit} exceeds configured maximum {max_limit}")
    dtype = np.int32 if limit < 2**31 else np.int64
    try:
        spf = np.zeros(limit + 1, dtype=dtype)
    except MemoryError as exc:
        raise CapacityError(f"not enough memory for a sieve up to {limit}") from exc
    spf[2::2] = 2
    for p in range(3, math.isqrt(limit) + 1, 2):
        if spf[p] == 0:
            block = spf[p * p :: 2 * p]
            block[block == 0] = p
    rest = np.flatnonzero(spf == 0)
    spf[rest[rest >= 2]] = rest[rest >= 2]
    return SpfTable(limit, spf)


@lru_cache(maxsize=4)
def _shared_table(limit: int) -> SpfTable:
    return build_spf_table(limit)


def factorize(m: int, table: SpfTable | None = None) -> dict[int, int]:
    """Prime factorization ``{p: a}`` of ``m``; ``{}`` for 1."""
    m = _check_positive(m)
    if table is not None and m <= table.limit:
        return table.factorize(m)
    out: dict[int, int] = {}
    for p in (2, 3):
        if m % p == 0:
            a = 0
            while m % p == 0:
                m //= p
                a += 1
            out[p] = a
    d = 5
    while d * d <= m:
        for q in (d, d + 2):
            if m % q == 0:
                a = 0
                while m % q == 0:
                    m //= q
                    a += 1
                out[q] = a
        d += 6
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def unitary_components(m: int, table: SpfTable | None = None) -> tuple[PrimePower, ...]:
    """The block factors ``p^a || m``, sorted by prime. Empty for ``m == 1``."""
    return tuple(PrimePower(p, a) for p, a in sorted(factorize(m, table).items()))


def as_prime_power(m: int) -> PrimePower | None:
    """Return ``m`` as a PrimePower, or None if it is not one."""
    if m < 2:
        return None
    comps = factorize(m)
    if len(comps) != 1:
        return None
    ((p, a),) = comps.items()
    return PrimePower(p, a)


def is_prime_power(m: int) -> bool:
    return as_prime_power(m) is not None


def is_unitary_divisor(d: int, m: int) -> bool:
    """True iff ``d | m`` and ``gcd(d, m/d) == 1``."""
    d = _check_positive(d, "d")
    m = _check_positive(m)
    return m % d == 0 and math.gcd(d, m // d) == 1


def unitary_divisors(m: int) -> list[int]:
    """All ``2**omega(m)`` unitary divisors of ``m``, ascending."""
    divs = [1]
    for q in unitary_components(m):
        v = q.value
        divs += [d * v for d in divs]
    return sorted(divs)


_SMALL_PRIMES = tuple(primes_up_to(1000).tolist())


def smallest_prime_not_dividing(m: int) -> int:
    m = _check_positive(m)
    for p in _SMALL_PRIMES:
        if m % p:
            return p
    # primorial(168 primes) is far beyond any practical m
    for p in iter_primes():
        if m % p:
            return p
    raise AssertionError("unreachable")  # pragma: no cover


def prime_powers_up_to(n: int) -> list[int]:
    """Sorted list of prime powers ``<= n``."""
    out = []
    for p in primes_up_to(n).tolist():
        q = p
        while q <= n:
            out.append(q)
            q *= p
    out.sort()
    return out
