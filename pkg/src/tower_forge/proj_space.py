"""Projectivisations P_n(V) = V*/units for free modules V = (Z/l^n)^b.

A class is stored through its canonical representative: the vector scaled
so that its first unit coordinate equals 1.  Everything before that pivot
is then divisible by l, and everything after it is free.
"""

from __future__ import annotations

import csv
import itertools
from dataclasses import dataclass
from typing import Iterator, NamedTuple, Sequence

from .residue_ring import Modulus, ModulusError, Residue

MAX_POINTS = 10**7


class NotProjectivisable(ValueError):
    """The vector is killed by l^(n-1), so it has no class in P_n."""


class SpaceTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class ProjSpaceParams:
    modulus: Modulus
    rank: int = 2

    def __post_init__(self):
        if not isinstance(self.rank, int) or self.rank < 2:
            raise ModulusError(f"rank must be an integer >= 2, got {self.rank!r}")

    @classmethod
    def of(cls, ell, level, rank=2):
        return cls(Modulus(ell, level), rank)

    @property
    def ell(self):
        return self.modulus.ell

    @property
    def level(self):
        return self.modulus.level


class ProjPoint(NamedTuple):
    coords: tuple[int, ...]
    modulus: Modulus

    @property
    def pivot(self) -> int:
        ell = self.modulus.ell
        for i, c in enumerate(self.coords):
            if c % ell:
                return i
        raise NotProjectivisable(self.coords)

    @property
    def residues(self) -> tuple[Residue, ...]:
        return tuple(Residue(c, self.modulus) for c in self.coords)

    @property
    def rank(self) -> int:
        return len(self.coords)

    def __repr__(self):
        return f"[{':'.join(map(str, self.coords))}] mod {self.modulus.ell}^{self.modulus.level}"


def canonical_coords(coords: Sequence[int], ell: int, mod: int) -> tuple[int, ...]:
    """Raw kernel behind canonicalize(), on plain ints already reduced mod ``mod``."""
    for i, c in enumerate(coords):
        if c % ell:
            if c == 1:
                return tuple(coords)
            inv = pow(c, -1, mod)
            return tuple(x * inv % mod for x in coords)
    raise NotProjectivisable(f"{tuple(coords)} is killed by {ell}^(n-1)")


def canonicalize(v, modulus: Modulus | None = None) -> ProjPoint:
    """Canonical form of the class of ``v``.

    ``v`` is a sequence of Residues (modulus inferred) or of ints together
    with an explicit ``modulus``.
    """
    if modulus is None:
        if not v or not isinstance(v[0], Residue):
            raise TypeError("pass a modulus when canonicalizing plain integers")
        modulus = v[0].modulus
    vals = []
    for x in v:
        if isinstance(x, Residue):
            if x.modulus != modulus:
                raise ModulusError(f"mixed moduli {x.modulus} and {modulus}")
            vals.append(x.value)
        else:
            vals.append(x % modulus.value)
    return ProjPoint(canonical_coords(vals, modulus.ell, modulus.value), modulus)


def cardinality_formula(params: ProjSpaceParams) -> int:
    ell, b, n = params.ell, params.rank, params.level
    c = (ell**b - 1) // (ell - 1)
    return c * ell ** ((b - 1) * (n - 1))


def _check_budget(params, budget):
    size = cardinality_formula(params)
    if size > budget:
        raise SpaceTooLarge(f"|P_{params.level}| = {size} exceeds the budget of {budget} points")
    return size


def iter_canonical(params: ProjSpaceParams, budget: int = MAX_POINTS) -> Iterator[tuple[int, ...]]:
    """Yield canonical coordinate tuples in (pivot, coords) lexicographic order."""
    _check_budget(params, budget)
    ell, mod, b = params.ell, params.modulus.value, params.rank
    divisible = range(0, mod, ell)
    free = range(mod)
    for pivot in range(b):
        ranges = [divisible] * pivot + [(1,)] + [free] * (b - pivot - 1)
        yield from itertools.product(*ranges)


def enumerate_space(params: ProjSpaceParams, budget: int = MAX_POINTS) -> list[ProjPoint]:
    m = params.modulus
    return [ProjPoint(c, m) for c in iter_canonical(params, budget)]


def reduce_point(pt: ProjPoint) -> ProjPoint:
    lower = pt.modulus.lower()
    coords = [c % lower.value for c in pt.coords]
    return ProjPoint(canonical_coords(coords, lower.ell, lower.value), lower)


def reduction_fibers(params: ProjSpaceParams) -> dict[ProjPoint, list[ProjPoint]]:
    """Group P_n by image in P_(n-1)."""
    fibers: dict[ProjPoint, list[ProjPoint]] = {}
    for pt in enumerate_space(params):
        fibers.setdefault(reduce_point(pt), []).append(pt)
    return fibers


def write_space_csv(points, fh):
    points = list(points)
    b = points[0].rank if points else 0
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["pivot"] + [f"coord_{i}" for i in range(b)])
    for pt in points:
        w.writerow([pt.pivot, *pt.coords])
