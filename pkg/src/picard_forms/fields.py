"""Exact coefficient fields: the rationals and word-sized prime fields.

Rational elements are `fractions.Fraction`; prime-field elements are plain
ints in [0, p).  A Field value is immutable and shared by every polynomial,
matrix and point of a computation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import IncompatibleOperands

# Primes must fit comfortably in a machine word; big p adds nothing here.
MAX_PRIME = 1 << 63

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24 (covers MAX_PRIME)."""
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def next_prime(n: int) -> int:
    """Smallest prime strictly greater than n."""
    k = n + 1
    if k <= 2:
        return 2
    if k % 2 == 0:
        k += 1
    while not is_prime(k):
        k += 2
    return k


@dataclass(frozen=True)
class Field:
    """Descriptor of an exact field: characteristic 0 (rationals) or prime p."""

    characteristic: int

    def __post_init__(self):
        c = self.characteristic
        if c == 0:
            return
        if not (2 <= c < MAX_PRIME and is_prime(c)):
            raise ValueError(f"characteristic must be 0 or a prime < 2^63, got {c}")

    @classmethod
    def rationals(cls) -> "Field":
        return cls(0)

    @classmethod
    def prime(cls, p: int) -> "Field":
        return cls(p)

    @property
    def kind(self) -> str:
        return "rationals" if self.characteristic == 0 else "prime-field"

    def describe(self) -> str:
        return "rationals" if self.characteristic == 0 else f"prime:{self.characteristic}"

    @classmethod
    def from_description(cls, text: str) -> "Field":
        if text == "rationals":
            return cls.rationals()
        if text.startswith("prime:"):
            return cls.prime(int(text.split(":", 1)[1]))
        raise ValueError(f"unknown field description {text!r}")

    # -- element operations ------------------------------------------------

    def zero(self):
        return Fraction(0) if self.characteristic == 0 else 0

    def one(self):
        return Fraction(1) if self.characteristic == 0 else 1

    def coerce(self, value):
        """Normalize an int/Fraction/element into this field.

        Rational values entering a prime field use modular division; a
        denominator divisible by p is rejected by the ZeroDivisionError from
        the modular inverse.
        """
        p = self.characteristic
        if p == 0:
            if isinstance(value, (int, Fraction)):
                return Fraction(value)
            raise IncompatibleOperands(f"cannot coerce {value!r} into the rationals")
        if isinstance(value, int):
            return value % p
        if isinstance(value, Fraction):
            return value.numerator * pow(value.denominator, -1, p) % p
        raise IncompatibleOperands(f"cannot coerce {value!r} into GF({p})")

    def add(self, a, b):
        return (a + b) % self.characteristic if self.characteristic else a + b

    def sub(self, a, b):
        return (a - b) % self.characteristic if self.characteristic else a - b

    def mul(self, a, b):
        return (a * b) % self.characteristic if self.characteristic else a * b

    def neg(self, a):
        return (-a) % self.characteristic if self.characteristic else -a

    def inv(self, a):
        if self.characteristic:
            return pow(a, -1, self.characteristic)
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a == 0

    def format(self, a) -> str:
        return str(a)

    def parse_scalar(self, text: str):
        """Parse 'n' or 'n/d' into a field element."""
        text = text.strip()
        if "/" in text:
            num, den = text.split("/", 1)
            return self.coerce(Fraction(int(num), int(den)))
        return self.coerce(int(text))


QQ = Field.rationals()
