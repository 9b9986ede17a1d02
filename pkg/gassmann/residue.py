"""Exact arithmetic in Z/p^kZ for an odd prime p and k in {1, 2}."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from sympy import isprime, primitive_root

from gassmann.errors import BadParameter, ModulusMismatch, NotAUnit


@dataclass(frozen=True, order=True)
class Modulus:
    p: int
    k: int = 2

    def __post_init__(self):
        if not isinstance(self.p, int) or self.p < 3 or self.p % 2 == 0 or not isprime(self.p):
            raise BadParameter(f"p must be an odd prime, got {self.p!r}")
        if self.k not in (1, 2):
            raise BadParameter(f"k must be 1 or 2, got {self.k!r}")

    @property
    def m(self) -> int:
        return self.p**self.k

    @property
    def unit_count(self) -> int:
        """|(Z/p^kZ)^x| = p^(k-1)(p-1)."""
        return self.p ** (self.k - 1) * (self.p - 1)

    def reduced(self) -> Modulus:
        return Modulus(self.p, 1)

    def lifted(self) -> Modulus:
        return Modulus(self.p, 2)

    def __call__(self, value: int) -> Residue:
        return Residue(value, self)

    def __str__(self):
        return f"Z/{self.m}Z"


@dataclass(frozen=True)
class Residue:
    value: int
    modulus: Modulus

    def __post_init__(self):
        # canonical representative in [0, m)
        object.__setattr__(self, "value", int(self.value) % self.modulus.m)

    def _coerce(self, other) -> int:
        if isinstance(other, Residue):
            if other.modulus != self.modulus:
                raise ModulusMismatch(f"cannot combine {self.modulus} with {other.modulus}")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return Residue(self.value + v, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return Residue(self.value - v, self.modulus)

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return Residue(v - self.value, self.modulus)

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return Residue(self.value * v, self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return Residue(-self.value, self.modulus)

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        return Residue(pow(self.value, n, self.modulus.m), self.modulus)

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return self * Residue(v, self.modulus).inv()

    def __int__(self):
        return self.value

    def __index__(self):
        return self.value

    def __str__(self):
        return str(self.value)

    def is_unit(self) -> bool:
        return gcd(self.value, self.modulus.p) == 1

    def inv(self) -> Residue:
        if not self.is_unit():
            raise NotAUnit(f"{self.value} is not a unit in {self.modulus}")
        # Euler: a^(phi(m) - 1) = a^-1
        return Residue(pow(self.value, self.modulus.unit_count - 1, self.modulus.m), self.modulus)

    def reduce(self) -> Residue:
        """Image under Z/p^2Z -> Z/pZ."""
        return Residue(self.value, self.modulus.reduced())


def inv(a: Residue) -> Residue:
    return a.inv()


def is_square(a: Residue) -> bool:
    """True iff a = x^2 for some x in Z/pZ (k = 1 only)."""
    if a.modulus.k != 1:
        raise BadParameter("is_square is defined on Z/pZ only")
    if a.value == 0:
        return True
    return pow(a.value, (a.modulus.p - 1) // 2, a.modulus.p) == 1


@lru_cache(maxsize=None)
def smallest_nonsquare(p: int) -> Residue:
    """The canonical epsilon: least positive quadratic nonresidue mod p."""
    modulus = Modulus(p, 1)
    for x in range(2, p):
        if not is_square(Residue(x, modulus)):
            return Residue(x, modulus)
    raise BadParameter(f"no nonsquare mod {p}")


def epsilon(p: int) -> int:
    return smallest_nonsquare(p).value


def teichmuller_lift(a: Residue) -> Residue:
    """Multiplicative section (Z/pZ)^x -> (Z/p^2Z)^x, a -> a^p."""
    if a.modulus.k != 1:
        raise BadParameter("teichmuller_lift takes a residue mod p")
    if not a.is_unit():
        raise NotAUnit(f"{a.value} is not a unit mod {a.modulus.p}")
    lifted = a.modulus.lifted()
    return Residue(pow(a.value, a.modulus.p, lifted.m), lifted)


def teichmuller_value(x: int, p: int) -> int:
    return pow(x % p, p, p * p)


def integer_lift(a: Residue) -> Residue:
    """The section Z/pZ -> Z/p^2Z sending a to its least nonnegative representative."""
    return Residue(a.value, a.modulus.lifted())


@lru_cache(maxsize=None)
def unit_generator(p: int, k: int) -> int:
    """A generator of the cyclic group (Z/p^kZ)^x."""
    return int(primitive_root(p**k))


def half(p: int) -> int:
    return (p + 1) // 2
