"""Exit criteria for the package, one test per criterion.

Run ``pytest tests/test_acceptance.py`` for a PASS/FAIL line per criterion
in the terminal summary.  Every comparison is exact; wall-clock limits are
asserted where a criterion states one.
"""

import random
import time
from fractions import Fraction

import pytest

from oracles import orbit_lengths_on_classes
from tower_forge.finite_field import is_separable, make_quad_ext
from tower_forge.legendre import (
    LegendreCurve,
    hasse_polynomial,
    ss_census,
    supersingular_locus,
    verify_scalar_frobenius,
    weil_data,
)
from tower_forge.monodromy import (
    MonodromyMatrix,
    SingularMatrix,
    act,
    classify_even_level,
    orbit_decomposition,
    ramification_profile,
)
from tower_forge.proj_space import (
    ProjSpaceParams,
    cardinality_formula,
    enumerate_space,
    iter_canonical,
    reduction_fibers,
)
from tower_forge.residue_ring import Modulus
from tower_forge.tower import beta_report, genus_closed_form, hurwitz_genus, level_degree, points_lower_bound

criterion = pytest.mark.criterion


@criterion(1, "projectivisation counts match c_l(b) * l^((b-1)(n-1))")
def test_ac1_projectivisation_counts():
    start = time.perf_counter()
    for ell in (3, 5, 7):
        for n in (1, 2, 3, 4):
            for b in (2, 3):
                params = ProjSpaceParams.of(ell, n, b)
                count, prev = 0, None
                for v in iter_canonical(params):
                    key = (v.index(1), v)
                    assert v[key[0]] == 1 and all(c % ell == 0 for c in v[: key[0]])
                    assert prev is None or key > prev  # strictly increasing, hence distinct
                    prev = key
                    count += 1
                c = (ell**b - 1) // (ell - 1)
                assert count == c * ell ** ((b - 1) * (n - 1)) == cardinality_formula(params)
    assert time.perf_counter() - start < 10


@criterion(2, "every fiber of P_n -> P_(n-1) has l^(b-1) elements")
def test_ac2_reduction_degree():
    for ell in (3, 5):
        for n in (2, 3):
            fibers = reduction_fibers(ProjSpaceParams.of(ell, n, 2))
            assert len(fibers) == cardinality_formula(ProjSpaceParams.of(ell, n - 1, 2))
            assert all(len(f) == ell for f in fibers.values())


@criterion(3, "brute-force Legendre orbits equal the three-type closed form")
def test_ac3_orbit_lemma():
    start = time.perf_counter()
    for ell, n in [(3, 2), (3, 4), (5, 2), (5, 4), (7, 2), (7, 4)]:
        brute = orbit_decomposition(MonodromyMatrix.legendre(Modulus(ell, n))).summary()
        assert brute == classify_even_level(ell, n)
    assert time.perf_counter() - start < 30


@criterion(4, "M and -M act identically; orbit types invariant under 50 conjugations")
def test_ac4_sign_and_conjugation():
    for ell in (3, 5):
        for n in (1, 2, 3):
            m = Modulus(ell, n)
            M = MonodromyMatrix.legendre(m)
            for pt in enumerate_space(ProjSpaceParams(m, 2)):
                assert act(M, pt) == act(-M, pt)
    rng = random.Random(50)
    m = Modulus(5, 2)
    M = MonodromyMatrix.legendre(m)
    base = orbit_decomposition(M).summary()
    done = 0
    while done < 50:
        try:
            U = MonodromyMatrix(tuple(tuple(rng.randrange(m.value) for _ in range(2)) for _ in range(2)), m)
        except SingularMatrix:
            continue
        assert orbit_decomposition(M.conjugate(U)).summary() == base
        done += 1


@criterion(5, "Hurwitz genus from orbits equals the closed-form genus")
def test_ac5_genus():
    spot = {(5, 2): 7, (5, 4): 331, (3, 2): 1, (3, 4): 37}
    for ell in (3, 5, 7):
        for n in (2, 4):
            m = Modulus(ell, n)
            profiles = ramification_profile([MonodromyMatrix.legendre(m), -MonodromyMatrix.legendre(m),
                                             MonodromyMatrix.legendre(m)])
            g = hurwitz_genus(level_degree(ell, n), profiles)
            assert g == genus_closed_form(ell, n)
            if (ell, n) in spot:
                assert g == spot[(ell, n)]
    # independent class-level oracle for the spot values
    for (ell, n), g in spot.items():
        total = sum(e - 1 for e in orbit_lengths_on_classes(((1, 2), (0, 1)), ell, n).elements())
        assert (-2 * level_degree(ell, n) + 3 * total) // 2 + 1 == g


@criterion(6, "Hasse polynomial separable with (p-1)/2 roots in F_{p^2} minus {0,1}")
def test_ac6_hasse_locus():
    start = time.perf_counter()
    for p in (5, 7, 11, 13, 17, 19, 23, 29, 31):
        h = hasse_polynomial(p)
        assert is_separable(h)
        roots = supersingular_locus(p)
        assert len(roots) == (p - 1) // 2
        assert all(not (r == 0 or r == 1) and not h.over(make_quad_ext(p))(r) for r in roots)
    assert time.perf_counter() - start < 60


@criterion(7, "strongly supersingular set equals Hasse roots; Frobenius scalar certificate")
def test_ac7_census():
    start = time.perf_counter()
    for p in (5, 7, 11, 13):
        census = ss_census(p, certify=True)
        strong = {r.a for r in census.rows if r.weil.point_count in ((p - 1) ** 2, (p + 1) ** 2)}
        assert strong == set(supersingular_locus(p))
        for a in strong:
            cert = verify_scalar_frobenius(LegendreCurve(p, a))
            k = abs(1 - cert.scalar)
            assert cert.structure == (k, k)
    assert time.perf_counter() - start < 120


@criterion(8, "p = -1 mod 12: every supersingular parameter has a_q = +-2p")
def test_ac8_prop31_criterion1():
    for p in (11, 23):
        assert p % 12 == 11
        F = make_quad_ext(p)
        ss = 0
        for a in F.elements():
            if a == 0 or a == 1:
                continue
            wd = weil_data(LegendreCurve(p, a))
            if wd.trace % p == 0:
                ss += 1
                assert abs(wd.trace) == 2 * p
        assert ss == (p - 1) // 2


@criterion(9, "exact ratios 90/7, 2250/331, 56250/9151, 1406250/233251; limit 6 = p-1, optimal")
def test_ac9_optimality_replay():
    start = time.perf_counter()
    rep = beta_report(7, 5, 8)
    assert [lv.n for lv in rep.levels] == [2, 4, 6, 8]
    assert [lv.ratio for lv in rep.levels] == [
        Fraction(90, 7), Fraction(2250, 331), Fraction(56250, 9151), Fraction(1406250, 233251)
    ]
    assert rep.limit == 6 == rep.params.p - 1 == rep.params.dv_bound
    assert rep.optimal is True
    assert time.perf_counter() - start < 1


@criterion(10, "points lower bound = (#Hasse roots) x |P_n|, both factors enumerated")
def test_ac10_lower_bound_identity():
    for p, ell, n in [(5, 3, 2), (7, 5, 2), (7, 5, 4), (11, 7, 2), (13, 3, 4), (13, 5, 3)]:
        F = make_quad_ext(p)
        h = hasse_polynomial(p).over(F)
        roots = sum(1 for a in F.elements() if not h(a))
        size = sum(1 for _ in iter_canonical(ProjSpaceParams.of(ell, n)))
        assert roots * size == points_lower_bound(p, ell, n) == (p - 1) // 2 * (ell + 1) * ell ** (n - 1)
