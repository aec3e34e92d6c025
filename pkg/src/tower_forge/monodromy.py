"""Cyclic monodromy actions on P_n and their orbit decompositions.

A tame local monodromy group is generated by one matrix, so its orbits on
P_n are plain cycles of that matrix.  The orbit lengths over a branch point
are the ramification indices of the points of the cover lying above it.
"""

from __future__ import annotations

import csv
import math
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .proj_space import (
    MAX_POINTS,
    ProjPoint,
    ProjSpaceParams,
    canonical_coords,
    cardinality_formula,
    iter_canonical,
)
from .residue_ring import Modulus, ModulusError


class SingularMatrix(ValueError):
    pass


def _det_mod_prime(rows, p):
    a = [[x % p for x in r] for r in rows]
    n = len(a)
    det = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det = det * a[col][col] % p
        inv = pow(a[col][col], -1, p)
        for r in range(col + 1, n):
            f = a[r][col] * inv % p
            if f:
                a[r] = [(x - f * y) % p for x, y in zip(a[r], a[col])]
    return det % p


@dataclass(frozen=True)
class MonodromyMatrix:
    entries: tuple[tuple[int, ...], ...]
    modulus: Modulus

    def __post_init__(self):
        rows = tuple(tuple(int(x) % self.modulus.value for x in r) for r in self.entries)
        b = len(rows)
        if b < 2 or any(len(r) != b for r in rows):
            raise ModulusError(f"monodromy matrix must be square of size >= 2, got {self.entries!r}")
        if _det_mod_prime(rows, self.modulus.ell) == 0:
            raise SingularMatrix(f"matrix {rows} is not invertible mod {self.modulus.ell}")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def legendre(cls, modulus: Modulus) -> "MonodromyMatrix":
        """The unipotent matrix (1 2 / 0 1) attached to the Legendre branch points."""
        return cls(((1, 2), (0, 1)), modulus)

    @classmethod
    def identity(cls, modulus: Modulus, rank: int = 2) -> "MonodromyMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(rank)) for i in range(rank)), modulus)

    @classmethod
    def parse(cls, text: str, modulus: Modulus) -> "MonodromyMatrix":
        """Parse row-major comma-separated entries, e.g. ``"1,2,0,1"``."""
        vals = [int(t) for t in text.split(",")]
        b = math.isqrt(len(vals))
        if b * b != len(vals):
            raise ModulusError(f"{len(vals)} entries do not form a square matrix")
        return cls(tuple(tuple(vals[i * b:(i + 1) * b]) for i in range(b)), modulus)

    @property
    def rank(self) -> int:
        return len(self.entries)

    def __neg__(self):
        return MonodromyMatrix(tuple(tuple(-x for x in r) for r in self.entries), self.modulus)

    def __matmul__(self, other: "MonodromyMatrix") -> "MonodromyMatrix":
        if other.modulus != self.modulus or other.rank != self.rank:
            raise ModulusError("matrix shape or modulus mismatch")
        cols = list(zip(*other.entries))
        return MonodromyMatrix(
            tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.entries),
            self.modulus,
        )

    def inverse(self) -> "MonodromyMatrix":
        # Gauss-Jordan over Z/l^n: the pivot only needs to be a unit.
        N, ell, b = self.modulus.value, self.modulus.ell, self.rank
        a = [list(r) + [int(i == j) for j in range(b)] for i, r in enumerate(self.entries)]
        for col in range(b):
            piv = next(r for r in range(col, b) if a[r][col] % ell)
            a[col], a[piv] = a[piv], a[col]
            inv = pow(a[col][col], -1, N)
            a[col] = [x * inv % N for x in a[col]]
            for r in range(b):
                if r != col and a[r][col]:
                    f = a[r][col]
                    a[r] = [(x - f * y) % N for x, y in zip(a[r], a[col])]
        return MonodromyMatrix(tuple(tuple(r[b:]) for r in a), self.modulus)

    def conjugate(self, u: "MonodromyMatrix") -> "MonodromyMatrix":
        return u @ self @ u.inverse()

    def is_scalar(self) -> bool:
        d = self.entries[0][0]
        return all(x == (d if i == j else 0) for i, r in enumerate(self.entries) for j, x in enumerate(r))

    def projective_order(self) -> int:
        """Order of the matrix in PGL_b(Z/l^n)."""
        k, p = 1, self
        while not p.is_scalar():
            p = p @ self
            k += 1
        return k

    def apply(self, coords: Sequence[int]) -> tuple[int, ...]:
        N = self.modulus.value
        return tuple(sum(a * x for a, x in zip(r, coords)) % N for r in self.entries)


@dataclass(frozen=True)
class OrbitDecomposition:
    orbits: tuple[tuple[ProjPoint, ...], ...]
    generator: MonodromyMatrix

    def summary(self) -> dict[int, int]:
        return summarize(len(o) for o in self.orbits)


def summarize(lengths) -> dict[int, int]:
    """Orbit-length multiset as {length: multiplicity}, longest first."""
    c = Counter(lengths)
    return {k: c[k] for k in sorted(c, reverse=True)}


def summary_mass(summary: dict[int, int]) -> int:
    return sum(k * m for k, m in summary.items())


def _check(M: MonodromyMatrix, pt: ProjPoint):
    if pt.modulus != M.modulus or len(pt.coords) != M.rank:
        raise ModulusError(f"point {pt!r} does not live where {M} acts")


def act(M: MonodromyMatrix, pt: ProjPoint) -> ProjPoint:
    _check(M, pt)
    m = M.modulus
    return ProjPoint(canonical_coords(M.apply(pt.coords), m.ell, m.value), m)


def projective_order(M: MonodromyMatrix, pt: ProjPoint) -> int:
    """Length of the orbit of ``pt`` under the cyclic group generated by M."""
    _check(M, pt)
    m = M.modulus
    start = pt.coords
    cur, k = canonical_coords(M.apply(start), m.ell, m.value), 1
    while cur != start:
        cur = canonical_coords(M.apply(cur), m.ell, m.value)
        k += 1
    return k


def orbit_decomposition(M: MonodromyMatrix, budget: int = MAX_POINTS) -> OrbitDecomposition:
    m = M.modulus
    ell, N = m.ell, m.value
    params = ProjSpaceParams(m, M.rank)
    rows = M.entries
    seen: set[tuple[int, ...]] = set()
    orbits = []
    # Seeds come in enumeration order, so every seed is the least point of its orbit.
    for seed in iter_canonical(params, budget):
        if seed in seen:
            continue
        orbit = [seed]
        seen.add(seed)
        cur = seed
        while True:
            cur = canonical_coords(
                [sum(a * x for a, x in zip(r, cur)) % N for r in rows], ell, N
            )
            if cur == seed:
                break
            seen.add(cur)
            orbit.append(cur)
        orbits.append(tuple(ProjPoint(c, m) for c in orbit))
    orbits.sort(key=lambda o: (len(o), o[0].pivot, o[0].coords))
    return OrbitDecomposition(tuple(orbits), M)


def classify_even_level(ell: int, n: int) -> dict[int, int]:
    """Closed-form orbit types of the Legendre monodromy on P_n, n even."""
    if n < 2 or n % 2:
        raise ValueError(f"no closed form for odd or non-positive level n={n}")
    counts = Counter({ell**n: 1})
    for i in range(1, n // 2):
        counts[ell ** (n - 2 * i)] += (ell - 1) * ell ** (i - 1)
    counts[1] += ell ** (n // 2)
    return {k: counts[k] for k in sorted(counts, reverse=True)}


def ramification_profile(branch: Sequence[MonodromyMatrix], budget: int = MAX_POINTS) -> list[dict[int, int]]:
    if not branch:
        return []
    m0, b0 = branch[0].modulus, branch[0].rank
    for M in branch:
        if M.modulus != m0 or M.rank != b0:
            raise ModulusError("branch matrices must share modulus and rank")
    return [orbit_decomposition(M, budget).summary() for M in branch]


def expected_mass(M: MonodromyMatrix) -> int:
    return cardinality_formula(ProjSpaceParams(M.modulus, M.rank))


def write_orbits_csv(dec: OrbitDecomposition, fh):
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["orbit_id", "length"] + [f"coord_{i}" for i in range(dec.generator.rank)])
    for i, orb in enumerate(dec.orbits):
        w.writerow([i, len(orb), *orb[0].coords])
