"""Exception hierarchy shared by every module."""


class UnitaryError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(UnitaryError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class CapacityError(UnitaryError):
    """The requested computation exceeds a configured size limit."""


class UnsupportedVertexError(DomainError, KeyError):
    """A multiplicative function has no value at a required prime power."""

    def __init__(self, prime_power):
        self.prime_power = prime_power
        super().__init__(f"unsupported vertex: no value given for prime power {prime_power}")

    def __str__(self):
        return self.args[0]


class NotInjectiveError(DomainError):
    """Two distinct faces received the same function value."""

    def __init__(self, first, second, value):
        self.pair = (first, second)
        self.value = value
        super().__init__(f"not injective on T: {first} and {second} both map to {value}")
