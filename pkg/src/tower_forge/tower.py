"""Levels of the Legendre tower: degrees, genera, point bounds and beta ratios.

All ratios are exact ``Fraction`` values.  The base curve is P^1 with three
tame branch points 0, 1, infinity; every other fiber is unramified.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .monodromy import MonodromyMatrix, ramification_profile, summary_mass
from .residue_ring import Modulus, is_prime, require_odd_prime

BRANCH_POINTS = ("0", "1", "inf")
# Largest |P_n| for which tower reports cross-check against brute-force orbits.
CROSS_CHECK_BUDGET = 10**5


class TowerError(ValueError):
    pass


class GenusError(TowerError):
    pass


@dataclass(frozen=True)
class TowerParams:
    p: int
    ell: int
    rank: int = 2
    branch_points: tuple[str, ...] = BRANCH_POINTS
    base_genus: int = 0

    def __post_init__(self):
        if not isinstance(self.p, int) or not is_prime(self.p) or self.p <= 3:
            raise TowerError(f"p must be a prime > 3, got {self.p!r}")
        require_odd_prime(self.ell, "ell")
        if self.ell == self.p:
            raise TowerError("ell must differ from p")
        if self.rank != 2:
            raise TowerError("only rank-2 towers are supported")

    @property
    def q(self):
        return self.p * self.p

    @property
    def split_point_count(self) -> int:
        """Number of split rational fibers: the (p-1)/2 supersingular parameters."""
        return (self.p - 1) // 2

    @property
    def dv_bound(self) -> int:
        return self.p - 1

    def monodromy(self, n: int) -> list[MonodromyMatrix]:
        m = Modulus(self.ell, n)
        return [MonodromyMatrix.legendre(m) for _ in self.branch_points]


def level_degree(ell: int, n: int) -> int:
    if n < 1:
        raise TowerError("levels start at 1")
    return (ell + 1) * ell ** (n - 1)


def hurwitz_genus(degree: int, profiles: Sequence[dict[int, int]], base_genus: int = 0) -> int:
    """Genus of a tame cover from its ramification profiles."""
    total = 0
    for prof in profiles:
        mass = summary_mass(prof)
        if mass != degree:
            raise GenusError(f"profile {prof} has mass {mass}, expected {degree}")
        total += sum((e - 1) * m for e, m in prof.items())
    two_g_minus_2 = degree * (2 * base_genus - 2) + total
    if two_g_minus_2 % 2 or two_g_minus_2 < -2:
        raise GenusError(f"2g - 2 = {two_g_minus_2} is not admissible")
    return two_g_minus_2 // 2 + 1


def genus_closed_form(ell: int, n: int) -> int:
    if n < 2 or n % 2:
        raise TowerError(f"no closed-form genus for level n={n}")
    twice = ell ** (n - 1) * (ell + 1) - 3 * (ell + 1) * ell ** (n // 2 - 1)
    return twice // 2 + 1


def points_lower_bound(p: int, ell: int, n: int) -> int:
    if p <= 3:
        raise TowerError("p must exceed 3")
    return (p - 1) // 2 * level_degree(ell, n)


def brute_force_genus(params: TowerParams, n: int) -> int:
    profiles = ramification_profile(params.monodromy(n))
    return hurwitz_genus(level_degree(params.ell, n), profiles, params.base_genus)


@dataclass(frozen=True)
class LevelReport:
    n: int
    degree: int
    genus: int
    points_lower_bound: int
    dv_bound: int
    cross_checked: bool = False

    @property
    def ratio(self) -> Fraction:
        if self.genus == 0:
            raise ZeroDivisionError(f"genus 0 at level {self.n}")
        return Fraction(self.points_lower_bound, self.genus)

    def as_json(self) -> dict:
        r = self.ratio
        return {
            "n": self.n,
            "degree": self.degree,
            "genus": self.genus,
            "points_lower_bound": self.points_lower_bound,
            "ratio": f"{r.numerator}/{r.denominator}",
        }


def level_report(params: TowerParams, n: int, cross_check: bool | None = None) -> LevelReport:
    """Report for one level.

    Even levels use the closed-form genus, cross-checked by brute-force
    orbits when ``|P_n|`` fits ``CROSS_CHECK_BUDGET``.  Odd levels have no
    closed form and always use brute force.
    """
    deg = level_degree(params.ell, n)
    if cross_check is None:
        cross_check = deg <= CROSS_CHECK_BUDGET
    if n % 2:
        g = brute_force_genus(params, n)
        checked = False
    else:
        g = genus_closed_form(params.ell, n)
        checked = False
        if cross_check:
            bf = brute_force_genus(params, n)
            if bf != g:
                raise AssertionError(f"level {n}: closed-form genus {g} != brute force {bf}")
            checked = True
    lb = params.split_point_count * deg
    return LevelReport(n, deg, g, lb, params.dv_bound, checked)


def beta_limit(p: int, ell: int) -> Fraction:
    """Limit of points_lower_bound / genus as n -> infinity.

    Both are polynomials in l^(n-1) with leading coefficients
    (p-1)/2 * (l+1) and (l+1)/2 respectively.
    """
    lead_points = Fraction((p - 1) // 2 * (ell + 1))
    lead_genus = Fraction(ell + 1, 2)
    return lead_points / lead_genus


@dataclass
class TowerReport:
    params: TowerParams
    levels: list[LevelReport] = field(default_factory=list)

    @property
    def limit(self) -> Fraction:
        return beta_limit(self.params.p, self.params.ell)

    @property
    def optimal(self) -> bool:
        # sqrt(q) - 1 = p - 1 over F_{p^2}
        return self.limit == self.params.p - 1 == self.params.dv_bound

    def as_json(self) -> dict:
        return {
            "p": self.params.p,
            "ell": self.params.ell,
            "dv_bound": self.params.dv_bound,
            "optimal": self.optimal,
            "levels": [lv.as_json() for lv in self.levels],
            "limit": str(self.limit),
            "assumptions": [
                "monodromy at 0, 1, inf is tame and conjugate to +-(1 2 / 0 1)",
                "C_n geometrically irreducible (surjective l-adic monodromy)",
            ],
        }


def beta_report(p: int, ell: int, n_max: int, cross_check: bool | None = False) -> TowerReport:
    """Reports for the even levels 2, 4, ..., n_max."""
    if n_max < 2 or n_max % 2:
        raise TowerError(f"n_max must be even and >= 2, got {n_max}")
    params = TowerParams(p, ell)
    rep = TowerReport(params)
    for n in range(2, n_max + 1, 2):
        rep.levels.append(level_report(params, n, cross_check))
    return rep
