"""Arithmetic in the residue rings Z/l^n Z for an odd prime l."""

from __future__ import annotations

from dataclasses import dataclass, field


class ModulusError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def require_odd_prime(n, name="l"):
    if not isinstance(n, int) or isinstance(n, bool) or not is_prime(n) or n == 2:
        raise ModulusError(f"{name} must be an odd prime, got {n!r}")


@dataclass(frozen=True)
class Modulus:
    """The ring Z/ell^level Z.

    ``value`` is cached as a Python int, so levels far past 64 bits are fine.
    """

    ell: int
    level: int
    value: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        require_odd_prime(self.ell, "ell")
        if not isinstance(self.level, int) or self.level < 1:
            raise ModulusError(f"level must be an integer >= 1, got {self.level!r}")
        object.__setattr__(self, "value", self.ell ** self.level)

    def __call__(self, value: int) -> "Residue":
        return Residue(value, self)

    def lower(self) -> "Modulus":
        if self.level == 1:
            raise ModulusError("level 1 has no lower level")
        return Modulus(self.ell, self.level - 1)

    def is_unit(self, value: int) -> bool:
        return value % self.ell != 0

    def inverse(self, value: int) -> int:
        if value % self.ell == 0:
            raise ZeroDivisionError(f"{value} is not a unit mod {self.ell}^{self.level}")
        return pow(value, -1, self.value)

    def __str__(self):
        return f"Z/{self.ell}^{self.level}"


@dataclass(frozen=True)
class Residue:
    value: int
    modulus: Modulus

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.modulus.value)

    def _coerce(self, other) -> int:
        if isinstance(other, Residue):
            if other.modulus != self.modulus:
                raise ModulusError(f"modulus mismatch: {self.modulus} vs {other.modulus}")
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

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def is_unit(self) -> bool:
        return self.modulus.is_unit(self.value)

    def inverse(self) -> "Residue":
        return Residue(self.modulus.inverse(self.value), self.modulus)

    def valuation(self) -> int | None:
        """l-adic valuation of the value; None for zero."""
        if self.value == 0:
            return None
        v, x = 0, self.value
        while x % self.modulus.ell == 0:
            x //= self.modulus.ell
            v += 1
        return v

    def reduce_level(self) -> "Residue":
        return Residue(self.value, self.modulus.lower())

    def __repr__(self):
        return f"{self.value} mod {self.modulus.ell}^{self.modulus.level}"
