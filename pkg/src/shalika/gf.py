"""Prime fields F_p and their elements."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

MAX_MODULUS = 1 << 16


class FieldMismatchError(ValueError):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def inv_mod(a: int, p: int) -> int:
    """Inverse of a modulo p by the extended Euclidean algorithm."""
    a %= p
    if a == 0:
        raise ZeroDivisionError(f"0 has no inverse mod {p}")
    r0, r1 = p, a
    t0, t1 = 0, 1
    while r1:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    # r0 == 1 since p is prime
    return t0 % p


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not 2 <= self.p < MAX_MODULUS:
            raise ValueError(f"modulus must be an int in [2, 2^16), got {self.p!r}")
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    def __call__(self, value: int) -> "FieldElement":
        return FieldElement(value % self.p, self)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(0, self)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(1, self)

    def elements(self):
        return [FieldElement(v, self) for v in range(self.p)]

    def inv(self, a: int) -> int:
        return _inv_table(self.p)[a % self.p]

    def primitive_root(self) -> int:
        return _primitive_root(self.p)

    def __repr__(self):
        return f"GF({self.p})"


@lru_cache(maxsize=None)
def _inv_table(p: int) -> tuple:
    return (0,) + tuple(inv_mod(a, p) for a in range(1, p))


@lru_cache(maxsize=None)
def _primitive_root(p: int) -> int:
    if p == 2:
        return 1
    order = p - 1
    factors = {q for q in range(2, order + 1) if order % q == 0 and is_prime(q)}
    for g in range(2, p):
        if all(pow(g, order // q, p) != 1 for q in factors):
            return g
    raise AssertionError("unreachable for prime p")


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


@dataclass(frozen=True)
class FieldElement:
    value: int
    field: PrimeField

    def __post_init__(self):
        if not 0 <= self.value < self.field.p:
            raise ValueError(f"residue {self.value} out of range for {self.field}")

    def _check(self, other: "FieldElement") -> int:
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.field.p != self.field.p:
            raise FieldMismatchError(f"{self.field} vs {other.field}")
        return other.value

    def __add__(self, other):
        b = self._check(other)
        if b is NotImplemented:
            return b
        return FieldElement((self.value + b) % self.field.p, self.field)

    def __sub__(self, other):
        b = self._check(other)
        if b is NotImplemented:
            return b
        return FieldElement((self.value - b) % self.field.p, self.field)

    def __mul__(self, other):
        b = self._check(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.value * b % self.field.p, self.field)

    def __truediv__(self, other):
        b = self._check(other)
        if b is NotImplemented:
            return b
        return self * FieldElement(b, self.field).inv()

    def __neg__(self):
        return FieldElement(-self.value % self.field.p, self.field)

    def __pow__(self, e: int):
        if e < 0:
            return self.inv() ** (-e)
        return FieldElement(pow(self.value, e, self.field.p), self.field)

    def inv(self) -> "FieldElement":
        return FieldElement(inv_mod(self.value, self.field.p), self.field)

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.field.p})"


# module-level aliases mirroring the operation names
def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def sub(a: FieldElement, b: FieldElement) -> FieldElement:
    return a - b


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def inv(a: FieldElement) -> FieldElement:
    return a.inv()
