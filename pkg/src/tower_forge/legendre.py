"""Legendre curves y^2 = x(x-1)(x-a) over F_{p^2}.

Covers point counting, Weil data, group structure, the Frobenius scalar
certificate, and the supersingular census.  Point counts are brute force,
so the field size is capped (see ``MAX_COUNT_FIELD``).
"""

from __future__ import annotations

import csv
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

from .finite_field import (
    FieldPoly,
    PrimeField,
    QuadExtElem,
    QuadField,
    is_separable,
    make_quad_ext,
    roots_in_field,
)
from .proj_space import ProjSpaceParams, canonical_coords, cardinality_formula, iter_canonical
from .residue_ring import Modulus, Residue, is_prime

MAX_COUNT_FIELD = 10**6
MAX_GROUP_FIELD = 10**4
CENSUS_MAX_P = 31
CACHE_ENV = "TOWER_FORGE_CACHE_DIR"


class CurveError(ValueError):
    """Invalid curve parameters (bad p, degenerate fiber, budget)."""


class CrossCheckError(AssertionError):
    """A theorem-level identity failed; signals a computation bug."""


class NotStronglySupersingular(CurveError):
    pass


def _require_p(p):
    if not isinstance(p, int) or not is_prime(p) or p <= 3:
        raise CurveError(f"p must be a prime > 3, got {p!r}")


# -- Hasse polynomial and supersingular locus --------------------------------


def hasse_polynomial(p: int) -> FieldPoly:
    _require_p(p)
    m = (p - 1) // 2
    row = [1]
    for _ in range(m):
        row = [1] + [(row[i] + row[i + 1]) % p for i in range(len(row) - 1)] + [1]
    return FieldPoly([c * c for c in row], PrimeField(p))


def supersingular_locus(p: int) -> list[QuadExtElem]:
    h = hasse_polynomial(p)
    F = make_quad_ext(p)
    roots = roots_in_field(h, F)
    if not is_separable(h):
        raise CrossCheckError(f"Hasse polynomial for p={p} is not separable")
    if len(roots) != (p - 1) // 2:
        raise CrossCheckError(f"expected {(p - 1) // 2} Hasse roots for p={p}, found {len(roots)}")
    if any(r == 0 or r == 1 for r in roots):
        raise CrossCheckError(f"Hasse root in {{0, 1}} for p={p}")
    return roots


# -- curves and point counts -------------------------------------------------


@dataclass(frozen=True)
class LegendreCurve:
    p: int
    a: QuadExtElem

    def __post_init__(self):
        _require_p(self.p)
        if self.a.field.p != self.p:
            raise CurveError("parameter lives in the wrong field")
        if self.a == 0 or self.a == 1:
            raise CurveError(f"a = {self.a} gives a degenerate fiber")

    @classmethod
    def of(cls, p: int, a) -> "LegendreCurve":
        _require_p(p)
        F = make_quad_ext(p)
        if isinstance(a, str):
            a = F.parse(a)
        elif isinstance(a, tuple):
            a = F(*a)
        elif not isinstance(a, QuadExtElem):
            a = F(a)
        return cls(p, a)

    @property
    def field(self) -> QuadField:
        return self.a.field

    @property
    def q(self) -> int:
        return self.p * self.p

    def rhs(self, x):
        return x * (x - 1) * (x - self.a)

    def __str__(self):
        return f"y^2 = x(x-1)(x-({self.a})) over F_{self.p}^2"


@lru_cache(maxsize=64)
def _square_table(p: int, d: int) -> bytes:
    """Flag per element c0*p + c1 of F_{p^2}: 1 iff it is a nonzero square."""
    legendre = [0] + [int(pow(v, (p - 1) // 2, p) == 1) for v in range(1, p)]
    return bytes(
        legendre[(c0 * c0 - d * c1 * c1) % p] if (c0 or c1) else 0
        for c0 in range(p)
        for c1 in range(p)
    )


def _count(p: int, d: int, a0: int, a1: int) -> int:
    sq = _square_table(p, d)
    n = 1  # point at infinity
    for x0 in range(p):
        base0 = x0 * (x0 - 1)
        v0 = x0 - a0
        t = 2 * x0 - 1
        for x1 in range(p):
            # x(x-1) = u0 + u1*w, times (x - a) = v0 + v1*w
            u0 = base0 + d * x1 * x1
            u1 = x1 * t
            v1 = x1 - a1
            f0 = (u0 * v0 + d * u1 * v1) % p
            f1 = (u0 * v1 + u1 * v0) % p
            if f0 == 0 and f1 == 0:
                n += 1
            elif sq[f0 * p + f1]:
                n += 2
    return n


class PointCountCache:
    """Append-only CSV ``p,a_c0,a_c1,N``, one single-write line per entry."""

    HEADER = "p,a_c0,a_c1,N\n"

    def __init__(self, path):
        self.path = Path(path)
        self._entries: dict[tuple[int, int, int], int] | None = None

    @classmethod
    def from_env(cls) -> "PointCountCache | None":
        root = os.environ.get(CACHE_ENV)
        if not root:
            return None
        Path(root).mkdir(parents=True, exist_ok=True)
        return cls(Path(root) / "point_counts.csv")

    def _load(self):
        self._entries = {}
        if self.path.exists():
            with open(self.path, newline="") as fh:
                for row in csv.DictReader(fh):
                    self._entries[(int(row["p"]), int(row["a_c0"]), int(row["a_c1"]))] = int(row["N"])
        return self._entries

    def get(self, p, a0, a1):
        entries = self._entries if self._entries is not None else self._load()
        return entries.get((p, a0, a1))

    def put(self, p, a0, a1, n):
        try:
            fd = os.open(self.path, os.O_WRONLY | os.O_CREAT | os.O_EXCL, 0o644)
            os.write(fd, self.HEADER.encode())
            os.close(fd)
        except FileExistsError:
            pass
        fd = os.open(self.path, os.O_WRONLY | os.O_APPEND)
        try:
            os.write(fd, f"{p},{a0},{a1},{n}\n".encode())
        finally:
            os.close(fd)
        if self._entries is not None:
            self._entries[(p, a0, a1)] = n


def count_points(curve: LegendreCurve, cache: PointCountCache | None = None, verify: bool = False) -> int:
    """Number of F_{p^2}-points, including the point at infinity."""
    F = curve.field
    if F.size > MAX_COUNT_FIELD:
        raise CurveError(f"F_{curve.p}^2 is too large to scan")
    key = (curve.p, curve.a.c0, curve.a.c1)
    if cache is not None:
        hit = cache.get(*key)
        if hit is not None and not verify:
            return hit
    n = _count(curve.p, F.d, curve.a.c0, curve.a.c1)
    if cache is not None:
        if hit is None:
            cache.put(*key, n)
        elif hit != n:
            raise CrossCheckError(f"cached count {hit} for {key} disagrees with recount {n}")
    return n


# -- Weil data ---------------------------------------------------------------


@dataclass(frozen=True)
class WeilData:
    point_count: int
    trace: int
    q: int
    supersingular: bool
    strongly_supersingular: bool
    scalar: int | None

    @property
    def weil_poly(self) -> tuple[int, int, int]:
        """Coefficients (1, -a_q, q) of t^2 - a_q t + q."""
        return (1, -self.trace, self.q)

    def weil_poly_str(self) -> str:
        if self.scalar is not None:
            c = -self.scalar
            return f"(t{'+' if c > 0 else '-'}{abs(c)})^2"
        t = self.trace
        mid = "" if t == 0 else f" {'-' if t > 0 else '+'} {abs(t)}*t"
        return f"t^2{mid} + {self.q}"


def weil_data(curve: LegendreCurve, cache: PointCountCache | None = None) -> WeilData:
    p, q = curve.p, curve.q
    n = count_points(curve, cache)
    t = q + 1 - n
    if abs(t) > 2 * p:
        raise CrossCheckError(f"trace {t} violates the Weil bound for q={q}")
    strong = abs(t) == 2 * p
    return WeilData(n, t, q, t % p == 0, strong, t // 2 if strong else None)


# -- group structure ---------------------------------------------------------


class LegendreGroup:
    """Brute-force group of F_{p^2}-points; ``None`` is the identity."""

    def __init__(self, curve: LegendreCurve):
        F = curve.field
        if F.size > MAX_GROUP_FIELD:
            raise CurveError(f"F_{curve.p}^2 is too large to enumerate points")
        self.curve = curve
        self.a2 = -(curve.a + 1)
        self.a4 = curve.a
        roots: dict[QuadExtElem, list[QuadExtElem]] = {}
        for y in F.elements():
            roots.setdefault(y * y, []).append(y)
        self.points = [None]
        for x in F.elements():
            for y in roots.get(curve.rhs(x), ()):
                self.points.append((x, y))

    def add(self, P, Q):
        if P is None:
            return Q
        if Q is None:
            return P
        (x1, y1), (x2, y2) = P, Q
        if x1 == x2:
            if y1 + y2 == 0:
                return None
            lam = (x1 * x1 * 3 + self.a2 * x1 * 2 + self.a4) / (y1 * 2)
        else:
            lam = (y2 - y1) / (x2 - x1)
        x3 = lam * lam - self.a2 - x1 - x2
        return (x3, lam * (x1 - x3) - y1)

    def mul(self, k: int, P):
        R = None
        while k:
            if k & 1:
                R = self.add(R, P)
            P = self.add(P, P)
            k >>= 1
        return R

    def order(self, P) -> int:
        k, R = 1, P
        while R is not None:
            R = self.add(R, P)
            k += 1
        return k

    def structure(self) -> tuple[int, int]:
        n = len(self.points)
        exponent = 1
        for P in self.points:
            if self.mul(exponent, P) is not None:
                exponent = math.lcm(exponent, self.order(P))
        n1 = n // exponent
        if n1 * exponent != n or exponent % n1:
            raise CrossCheckError(f"inconsistent group data N={n}, exponent={exponent}")
        return n1, exponent


def group_structure(curve: LegendreCurve) -> tuple[int, int]:
    return LegendreGroup(curve).structure()


@dataclass(frozen=True)
class FrobeniusCertificate:
    curve: LegendreCurve
    scalar: int
    structure: tuple[int, int]


def verify_scalar_frobenius(curve: LegendreCurve, wd: WeilData | None = None) -> FrobeniusCertificate:
    """Certify that Frobenius acts on all l-power torsion as the scalar c.

    With Weil polynomial (t - c)^2 and semisimple Frobenius, F = c, hence
    E(F_{p^2}) = ker(1 - F) = E[|1 - c|] has structure (|1-c|, |1-c|).
    """
    wd = wd or weil_data(curve)
    if not wd.strongly_supersingular:
        raise NotStronglySupersingular(f"{curve} has trace {wd.trace}")
    k = abs(1 - wd.scalar)
    s = group_structure(curve)
    if s != (k, k):
        raise CrossCheckError(f"{curve}: structure {s} is not ({k}, {k})")
    return FrobeniusCertificate(curve, wd.scalar, s)


@dataclass(frozen=True)
class Prop31Report:
    applicable: bool
    criteria: tuple[int, ...] = ()
    conclusion_holds: bool | None = None

    def label(self) -> str:
        return "".join(f"({c})" for c in self.criteria) if self.applicable else "n/a"


def prop31_check(curve: LegendreCurve, wd: WeilData | None = None) -> Prop31Report:
    wd = wd or weil_data(curve)
    if not wd.supersingular:
        return Prop31Report(False)
    p = curve.p
    crit = []
    if p % 12 == 11:
        crit.append(1)
    if curve.a.in_prime_field() and p != 3:
        crit.append(2)
    crit.append(3)  # Legendre form always has rational 2-torsion
    holds = abs(wd.trace) == 2 * p
    if not holds:
        raise CrossCheckError(f"{curve}: criteria {crit} hold but trace is {wd.trace}")
    return Prop31Report(True, tuple(crit), holds)


# -- split fiber model -------------------------------------------------------


@dataclass(frozen=True)
class FiberModel:
    """Fiber P_n((Z/l^n)^2) over a strongly supersingular parameter."""

    curve: LegendreCurve
    params: ProjSpaceParams
    frobenius_scalar: Residue
    scalar: int

    @property
    def size(self) -> int:
        return cardinality_formula(self.params)

    def fixed_points(self) -> int:
        """Classes fixed by Frobenius, counted by applying the scalar to every class."""
        m = self.params.modulus
        c = self.frobenius_scalar.value
        return sum(
            1
            for v in iter_canonical(self.params)
            if canonical_coords([c * x % m.value for x in v], m.ell, m.value) == v
        )

    def torsion_rational(self) -> bool:
        """True when l^n divides c - 1, so E[l^n] sits inside E(F_{p^2})."""
        return (self.scalar - 1) % self.params.modulus.value == 0


def split_fiber_model(curve: LegendreCurve, ell: int, n: int, wd: WeilData | None = None) -> FiberModel:
    wd = wd or weil_data(curve)
    if not wd.strongly_supersingular:
        raise NotStronglySupersingular(f"{curve} is not strongly supersingular")
    if ell == curve.p:
        raise CurveError("ell must differ from p")
    m = Modulus(ell, n)
    return FiberModel(curve, ProjSpaceParams(m, 2), Residue(wd.scalar, m), wd.scalar)


# -- census ------------------------------------------------------------------


@dataclass(frozen=True)
class CensusRow:
    a: QuadExtElem
    weil: WeilData
    prop31: Prop31Report
    certificate: FrobeniusCertificate | None = None


@dataclass
class Census:
    p: int
    rows: list[CensusRow] = field(default_factory=list)
    hasse_roots: list[QuadExtElem] = field(default_factory=list)

    @property
    def strong(self) -> list[CensusRow]:
        return [r for r in self.rows if r.weil.strongly_supersingular]

    @property
    def supersingular(self) -> list[CensusRow]:
        return [r for r in self.rows if r.weil.supersingular]


def _count_chunk(args):
    p, d, params = args
    return [_count(p, d, a0, a1) for a0, a1 in params]


def ss_census(
    p: int,
    max_p: int = CENSUS_MAX_P,
    certify: bool | None = None,
    threads: int = 1,
    cache: PointCountCache | None = None,
) -> Census:
    """Weil data for every a in F_{p^2} minus {0, 1}; checks the strong set against the Hasse roots.

    ``certify`` runs the group-structure certificate on each strongly
    supersingular curve (default: when p^2 fits the group budget).
    """
    _require_p(p)
    if p > max_p:
        raise CurveError(f"census for p={p} exceeds the cap p <= {max_p}")
    F = make_quad_ext(p)
    if certify is None:
        certify = F.size <= MAX_GROUP_FIELD
    params = [(a.c0, a.c1) for a in F.elements() if not (a == 0 or a == 1)]
    if threads > 1 and cache is None:
        chunks = [params[i::threads] for i in range(threads)]
        with ProcessPoolExecutor(threads) as ex:
            parts = list(ex.map(_count_chunk, [(p, F.d, c) for c in chunks]))
        counts = {}
        for chunk, res in zip(chunks, parts):
            counts.update(zip(chunk, res))
    else:
        counts = {
            ab: count_points(LegendreCurve(p, F(*ab)), cache) for ab in params
        }
    census = Census(p, hasse_roots=supersingular_locus(p))
    q = p * p
    for ab in params:
        curve = LegendreCurve(p, F(*ab))
        n = counts[ab]
        t = q + 1 - n
        if abs(t) > 2 * p:
            raise CrossCheckError(f"trace {t} violates the Weil bound")
        strong = abs(t) == 2 * p
        wd = WeilData(n, t, q, t % p == 0, strong, t // 2 if strong else None)
        cert = verify_scalar_frobenius(curve, wd) if (certify and strong) else None
        census.rows.append(CensusRow(curve.a, wd, prop31_check(curve, wd), cert))
    strong_set = {r.a for r in census.strong}
    if strong_set != set(census.hasse_roots):
        raise CrossCheckError(f"p={p}: strongly supersingular set differs from the Hasse roots")
    return census
