"""Unitary ideals of positive integers viewed as simplicial complexes.

Submodules: ``arith`` (integer kernels), ``ideal`` (ideals, complexes,
f-vectors, facets), ``multfunc`` (multiplicative functions), ``summation``
(sums over ideals, Psi), ``facets_n`` (streaming facets of [n]), ``orders``
(coherent orders, the poset Y), ``cli``.
"""

from .arith import PrimePower, unitary_components, unitary_divisors
from .errors import CapacityError, DomainError, UnsupportedVertexError
from .ideal import SimplicialComplex, UnitaryIdeal, close_under_unitary_divisors, complex_of, interval_ideal
from .multfunc import MultiplicativeFunction, builtin

__version__ = "0.1.0"

__all__ = [
    "CapacityError",
    "DomainError",
    "MultiplicativeFunction",
    "PrimePower",
    "SimplicialComplex",
    "UnitaryIdeal",
    "UnsupportedVertexError",
    "builtin",
    "close_under_unitary_divisors",
    "complex_of",
    "interval_ideal",
    "unitary_components",
    "unitary_divisors",
]
