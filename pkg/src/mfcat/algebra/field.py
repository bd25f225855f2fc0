"""Coefficient fields: the rationals (arbitrary precision) and prime fields."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from gmpy2 import is_prime, mpq

from ..errors import MFError


@dataclass(frozen=True)
class FieldSpec:
    kind: str
    characteristic: int = 0

    def __post_init__(self):
        if self.kind == "rationals":
            if self.characteristic != 0:
                raise MFError("the rationals have characteristic 0")
        elif self.kind == "prime_field":
            p = self.characteristic
            if not (2 <= p < 2**31 and is_prime(p)):
                raise MFError(f"characteristic {p} is not a prime below 2^31")
        else:
            raise MFError(f"unknown field kind {self.kind!r}")

    @classmethod
    def rationals(cls) -> FieldSpec:
        return cls("rationals", 0)

    @classmethod
    def prime(cls, p: int) -> FieldSpec:
        return cls("prime_field", int(p))

    @property
    def p(self) -> int:
        return self.characteristic

    def __call__(self, value):
        """Coerce an int, Fraction, mpq or ``"p/q"`` string into the field."""
        p = self.characteristic
        if isinstance(value, str):
            num, _, den = value.partition("/")
            value = Fraction(int(num), int(den) if den else 1)
        if p == 0:
            if isinstance(value, Fraction):
                return mpq(value.numerator, value.denominator)
            return mpq(value)
        if isinstance(value, int):
            return value % p
        q = mpq(value)
        den = int(q.denominator) % p
        if den == 0:
            raise ZeroDivisionError(f"{value} has no image in GF({p})")
        return int(q.numerator) * pow(den, -1, p) % p

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.characteristic:
            return pow(a, -1, self.characteristic)
        return 1 / a

    def fmt(self, a) -> str:
        """Signed text for a coefficient; prime fields use the symmetric range."""
        p = self.characteristic
        if p:
            a = int(a)
            if a > p // 2:
                a -= p
            return str(a)
        if a.denominator == 1:
            return str(a.numerator)
        return f"{a.numerator}/{a.denominator}"

    def to_fraction(self, a) -> Fraction:
        if self.characteristic:
            return Fraction(int(a))
        return Fraction(int(a.numerator), int(a.denominator))

    def __str__(self) -> str:
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"
