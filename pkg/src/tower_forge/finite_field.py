"""F_p and F_{p^2} = F_p[w]/(w^2 - d) with d the least quadratic non-residue.

Element encoding for text I/O is ``c0+c1*w`` with decimal coefficients.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

from .residue_ring import is_prime

MAX_SCAN = 10**6


class FieldError(ValueError):
    pass


def _require_odd_prime(p):
    if not isinstance(p, int) or isinstance(p, bool) or p == 2 or not is_prime(p):
        raise FieldError(f"p must be an odd prime, got {p!r}")


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        _require_odd_prime(self.p)

    @property
    def size(self):
        return self.p

    def __call__(self, value) -> "PrimeFieldElem":
        if isinstance(value, PrimeFieldElem):
            return value
        return PrimeFieldElem(int(value) % self.p, self.p)

    def elements(self) -> Iterator["PrimeFieldElem"]:
        return (PrimeFieldElem(v, self.p) for v in range(self.p))


@dataclass(frozen=True)
class PrimeFieldElem:
    value: int
    p: int

    def _v(self, other):
        if isinstance(other, PrimeFieldElem):
            if other.p != self.p:
                raise FieldError("characteristic mismatch")
            return other.value
        if isinstance(other, int):
            return other
        return None

    def __add__(self, other):
        v = self._v(other)
        return NotImplemented if v is None else PrimeFieldElem((self.value + v) % self.p, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._v(other)
        return NotImplemented if v is None else PrimeFieldElem((self.value - v) % self.p, self.p)

    def __rsub__(self, other):
        v = self._v(other)
        return NotImplemented if v is None else PrimeFieldElem((v - self.value) % self.p, self.p)

    def __mul__(self, other):
        v = self._v(other)
        return NotImplemented if v is None else PrimeFieldElem(self.value * v % self.p, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return PrimeFieldElem(-self.value % self.p, self.p)

    def inverse(self):
        if self.value == 0:
            raise ZeroDivisionError("inverse of 0 in F_p")
        return PrimeFieldElem(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        v = self._v(other)
        if v is None:
            return NotImplemented
        return self * PrimeFieldElem(v % self.p, self.p).inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** -e
        return PrimeFieldElem(pow(self.value, e, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, int):
            return (self.value - other) % self.p == 0
        if isinstance(other, PrimeFieldElem):
            return self.value == other.value and self.p == other.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, 0, self.p))

    def __bool__(self):
        return self.value != 0

    def frobenius(self):
        return self

    def is_square(self) -> bool:
        return self.value == 0 or pow(self.value, (self.p - 1) // 2, self.p) == 1

    def sort_key(self):
        return (self.value, 0)

    def __str__(self):
        return str(self.value)

    __repr__ = __str__


@dataclass(frozen=True)
class QuadField:
    """F_{p^2} presented as F_p[w]/(w^2 - d)."""

    p: int
    d: int

    @property
    def size(self):
        return self.p * self.p

    @cached_property
    def w(self) -> "QuadExtElem":
        return QuadExtElem(0, 1, self)

    def __call__(self, c0, c1=0) -> "QuadExtElem":
        if isinstance(c0, QuadExtElem):
            return c0
        if isinstance(c0, PrimeFieldElem):
            c0 = c0.value
        return QuadExtElem(int(c0) % self.p, int(c1) % self.p, self)

    def elements(self) -> Iterator["QuadExtElem"]:
        p = self.p
        return (QuadExtElem(a, b, self) for a in range(p) for b in range(p))

    def parse(self, text: str) -> "QuadExtElem":
        """Parse ``c0+c1*w``; forms like ``6``, ``3*w``, ``w``, ``2-w`` are accepted."""
        s = text.replace(" ", "")
        if not s:
            raise FieldError("empty element")
        c0 = c1 = 0
        for sign, body in re.findall(r"([+-]?)([^+-]+)", s):
            k = -1 if sign == "-" else 1
            if body == "w":
                c1 += k
            elif body.endswith("*w") and body[:-2].isdigit():
                c1 += k * int(body[:-2])
            elif body.isdigit():
                c0 += k * int(body)
            else:
                raise FieldError(f"cannot parse field element {text!r}")
        if re.sub(r"([+-]?)([^+-]+)", "", s):
            raise FieldError(f"cannot parse field element {text!r}")
        return self(c0, c1)


def least_nonresidue(p: int) -> int:
    return next(d for d in range(2, p) if pow(d, (p - 1) // 2, p) == p - 1)


def make_quad_ext(p: int) -> QuadField:
    _require_odd_prime(p)
    return QuadField(p, least_nonresidue(p))


@dataclass(frozen=True)
class QuadExtElem:
    c0: int
    c1: int
    field: QuadField

    def _pair(self, other):
        if isinstance(other, QuadExtElem):
            if other.field != self.field:
                raise FieldError("field mismatch")
            return other.c0, other.c1
        if isinstance(other, PrimeFieldElem):
            if other.p != self.field.p:
                raise FieldError("characteristic mismatch")
            return other.value, 0
        if isinstance(other, int):
            return other, 0
        return None

    def __add__(self, other):
        o = self._pair(other)
        if o is None:
            return NotImplemented
        p = self.field.p
        return QuadExtElem((self.c0 + o[0]) % p, (self.c1 + o[1]) % p, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._pair(other)
        if o is None:
            return NotImplemented
        p = self.field.p
        return QuadExtElem((self.c0 - o[0]) % p, (self.c1 - o[1]) % p, self.field)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._pair(other)
        if o is None:
            return NotImplemented
        p, d = self.field.p, self.field.d
        a, b = self.c0, self.c1
        c, e = o
        return QuadExtElem((a * c + d * b * e) % p, (a * e + b * c) % p, self.field)

    __rmul__ = __mul__

    def __neg__(self):
        p = self.field.p
        return QuadExtElem(-self.c0 % p, -self.c1 % p, self.field)

    def norm(self) -> int:
        p, d = self.field.p, self.field.d
        return (self.c0 * self.c0 - d * self.c1 * self.c1) % p

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of 0 in F_{p^2}")
        p = self.field.p
        ninv = pow(n, -1, p)
        return QuadExtElem(self.c0 * ninv % p, -self.c1 * ninv % p, self.field)

    def __truediv__(self, other):
        o = self._pair(other)
        if o is None:
            return NotImplemented
        return self * self.field(*o).inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** -e
        result, base = self.field(1), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        o = self._pair(other)
        if o is None:
            return NotImplemented
        p = self.field.p
        return self.c0 == o[0] % p and self.c1 == o[1] % p

    def __hash__(self):
        return hash((self.c0, self.c1, self.field.p))

    def __bool__(self):
        return bool(self.c0 or self.c1)

    def frobenius(self):
        """x -> x^p, i.e. c0 + c1*w -> c0 - c1*w."""
        return QuadExtElem(self.c0, -self.c1 % self.field.p, self.field)

    def in_prime_field(self) -> bool:
        return self.c1 == 0

    def is_square(self) -> bool:
        # z^((p^2-1)/2) equals the Legendre symbol of the norm z^(p+1).
        n = self.norm()
        p = self.field.p
        return n == 0 or pow(n, (p - 1) // 2, p) == 1

    def sort_key(self):
        return (self.c0, self.c1)

    def __str__(self):
        if self.c1 == 0:
            return str(self.c0)
        w = "w" if self.c1 == 1 else f"{self.c1}*w"
        return w if self.c0 == 0 else f"{self.c0}+{w}"

    __repr__ = __str__


Field = PrimeField | QuadField


class FieldPoly:
    """Dense polynomial, coefficients low to high degree."""

    def __init__(self, coeffs: Sequence, field: Field):
        cs = [field(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)
        self.field = field

    @classmethod
    def parse(cls, text: str, field: Field) -> "FieldPoly":
        if isinstance(field, QuadField):
            return cls([field.parse(t) for t in text.split(",")], field)
        return cls([int(t) for t in text.split(",")], field)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def over(self, field: QuadField) -> "FieldPoly":
        return FieldPoly([field(c) for c in self.coeffs], field)

    def __call__(self, x):
        acc = self.field(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        return isinstance(other, FieldPoly) and self.coeffs == other.coeffs

    def __mul__(self, other: "FieldPoly") -> "FieldPoly":
        if self.is_zero() or other.is_zero():
            return FieldPoly([], self.field)
        out = [self.field(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return FieldPoly(out, self.field)

    def derivative(self) -> "FieldPoly":
        return FieldPoly([c * i for i, c in enumerate(self.coeffs)][1:], self.field)

    def divmod(self, other: "FieldPoly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [self.field(0)] * max(len(rem) - other.degree, 1)
        lead_inv = other.coeffs[-1].inverse()
        while len(rem) > other.degree and rem:
            k = len(rem) - 1 - other.degree
            f = rem[-1] * lead_inv
            q[k] = f
            for i, c in enumerate(other.coeffs):
                rem[k + i] = rem[k + i] - f * c
            rem.pop()
            while rem and not rem[-1]:
                rem.pop()
        return FieldPoly(q, self.field), FieldPoly(rem, self.field)

    def monic(self) -> "FieldPoly":
        inv = self.coeffs[-1].inverse()
        return FieldPoly([c * inv for c in self.coeffs], self.field)

    def __str__(self):
        return ",".join(str(c) for c in self.coeffs) or "0"

    __repr__ = __str__


def poly_gcd(f: FieldPoly, g: FieldPoly) -> FieldPoly:
    while not g.is_zero():
        f, g = g, f.divmod(g)[1]
    return f.monic() if not f.is_zero() else f


def is_separable(f: FieldPoly) -> bool:
    if f.is_zero():
        raise FieldError("the zero polynomial has no separability")
    return poly_gcd(f, f.derivative()).degree == 0


def roots_in_field(f: FieldPoly, field: Field | None = None, limit: int = MAX_SCAN) -> list:
    """All roots of ``f`` in ``field`` by exhaustive scan, sorted by (c0, c1)."""
    field = field or f.field
    if field.size > limit:
        raise FieldError(f"field of size {field.size} exceeds scan limit {limit}")
    if isinstance(field, QuadField) and isinstance(f.field, PrimeField):
        f = f.over(field)
    return sorted((x for x in field.elements() if not f(x)), key=lambda x: x.sort_key())
