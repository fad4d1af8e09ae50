"""Acceptance criteria 1-12.

Each test prints one ``[PASS]``/``[FAIL]`` line; the lines are also collected
and repeated in the terminal summary.  Run directly with
``python3 tests/test_acceptance.py`` for just the criteria lines.
"""

import random
import time

import pytest

from bsbcert import (
    G_BUCHSBAUM,
    INPUT_SANITY_FAIL,
    CertifyConfig,
    Ideal,
    PolyRing,
    QuotientRing,
    adic,
    artinian_length,
    certify_buchsbaum_G,
    equivalence_selftest,
    find_reduction,
    fit_coefficients,
    invariant_of_sop,
    is_parameter_ideal,
    local_cohomology_lengths,
    parse_polynomial,
    ratliff_rush,
    ratliff_rush_filtration,
    validate_goodness,
)
from bsbcert.certifier import corso_boundary_check
from bsbcert.invariants import intersection_equalities, invariant_on_G, random_sop
from bsbcert.invariants import random_form as ring_form
from conftest import SUITE_START
from oracles import MembershipOracle, random_form, random_homogeneous_ideal, translate, truncated_colength

RESULTS: list = []
SUITE_BUDGET = 300.0
MONO = ("x^4", "x^3*y", "x*y^3", "y^4")


def report(num: int, ok: bool, detail: str):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {num:>2}: {detail}"
    RESULTS.append(line)
    print(line)
    assert ok, line


def ring(vs, rels=()):
    P = PolyRing(tuple(vs))
    return QuotientRing(P, [parse_polynomial(r, P) for r in rels])


def polys(R, *ss):
    return [parse_polynomial(s, R.ambient) for s in ss]


class Battery:
    """The rings and filtrations shared by criteria 5-10, built once."""

    def __init__(self):
        rng = random.Random(2024)
        self.plane = ring("xy")
        self.fat_line = ring("xy", ["x^2", "x*y"])
        self.two_planes = ring("xyzw", ["x*z", "x*w", "y*z", "y*w"])
        self.plane_and_line = ring("xyz", ["x*y", "x*z"])
        P3 = PolyRing(("x", "y", "z"))
        self.quadric = QuotientRing(P3, [random_form(P3, 2, rng)])
        self.rings = {
            "F_p[x,y]": self.plane,
            "F_p[x,y]/(x^2,xy)": self.fat_line,
            "two planes": self.two_planes,
            "quadric surface": self.quadric,
            "plane and line": self.plane_and_line,
        }
        self.buchsbaum = ["F_p[x,y]", "F_p[x,y]/(x^2,xy)", "two planes", "quadric surface"]
        mono = self.plane.ideal(polys(self.plane, *MONO))
        self.entries = []
        for name, R in self.rings.items():
            self.entries.append((f"{name}, m-adic", adic(R, R.maximal_ideal)))
        for name in ("F_p[x,y]", "F_p[x,y]/(x^2,xy)", "two planes"):
            R = self.rings[name]
            self.entries.append((f"{name}, parameter-adic", adic(R, R.ideal(random_sop(R, rng)))))
        self.entries.append(("F_p[x,y], Ratliff-Rush of monomial I", ratliff_rush_filtration(self.plane, mono)))
        self.entries.append(("F_p[x,y], monomial I-adic", adic(self.plane, mono)))
        self._reductions: dict = {}

    def reduction(self, name, F):
        if name not in self._reductions:
            self._reductions[name] = find_reduction(F, rng=random.Random(7))
        return self._reductions[name]


@pytest.fixture(scope="module")
def battery():
    return Battery()


# 1 -----------------------------------------------------------------------------------

def test_criterion_01_groebner_membership_oracle():
    rng = random.Random(1)
    start = time.perf_counter()
    agree = total = members = 0
    for _ in range(100):
        P = PolyRing(("x", "y", "z")[: rng.randint(1, 3)], 32003)
        gens = random_homogeneous_ideal(P, rng, max_gens=3, max_degree=3)
        G = Ideal(P, gens).groebner()
        oracle = MembershipOracle(gens)
        for j in range(50):
            t = rng.randint(0, 6)
            if j % 2 == 0:
                f = sum((random_form(P, t - g.degree(), rng) * g for g in gens if g.degree() <= t), P.zero())
                if j % 4 == 0:
                    f = f + random_form(P, rng.randint(0, 6), rng, 0.2)
            else:
                f = random_form(P, t, rng, 0.3)
            mine = G.reduce(f).is_zero()
            theirs = oracle.contains(f)
            agree += mine == theirs
            members += theirs
            total += 1
    elapsed = time.perf_counter() - start
    report(1, agree == total and elapsed < 60,
           f"{agree}/{total} membership probes agree ({members} members) on 100 ideals in {elapsed:.1f}s")


# 2 -----------------------------------------------------------------------------------

def test_criterion_02_length_oracle():
    rng = random.Random(2)
    agree = 0
    for i in range(50):
        n = rng.randint(2, 3)
        P = PolyRing(("x", "y", "z")[:n], 32003)
        gens = [random_form(P, rng.randint(1, 3 if n == 2 else 2), rng) for _ in range(n)]
        gens += [random_form(P, rng.randint(1, 3), rng, 0.5) for _ in range(rng.randint(0, 2))]
        gens = [g for g in gens if g]
        expected = truncated_colength(gens)
        if i % 2:
            # translated copies are inhomogeneous; global colength is translation invariant
            shifts = [rng.randrange(1, 50) for _ in range(n)]
            gens = [translate(g, shifts) for g in gens]
        agree += artinian_length(Ideal(P, gens)) == expected
    report(2, agree == 50, f"{agree}/50 zero-dimensional colengths match the truncated oracle")


# 3 -----------------------------------------------------------------------------------

def _random_parameters(R, rng):
    while True:
        gens = [ring_form(R, rng.choice((1, 1, 2)), rng) for _ in range(R.dim)]
        if is_parameter_ideal(R, gens):
            return gens


def test_criterion_03_cm_battery():
    rng = random.Random(3)
    P3 = PolyRing(("x", "y", "z"))
    rings = {
        "F_p[x,y]": ring("xy"),
        "F_p[x,y,z]": ring("xyz"),
        "F_p[x,y,z]/(quadric)": QuotientRing(P3, [random_form(P3, 2, rng)]),
    }
    counts = {}
    for name, R in rings.items():
        counts[name] = sum(invariant_of_sop(R, _random_parameters(R, rng)).value == 0 for _ in range(20))
    ok = all(c == 20 for c in counts.values())
    report(3, ok, "I(Q;A) = 0 for " + ", ".join(f"{c}/20 in {n}" for n, c in counts.items()))


# 4 -----------------------------------------------------------------------------------

def test_criterion_04_buchsbaum_exact_values(battery):
    rng = random.Random(4)
    details = []
    ok = True
    for R, h, e in ((battery.fat_line, [1], (1, -1)), (battery.two_planes, [0, 1], (2, 0, -1))):
        vals = [invariant_of_sop(R, random_sop(R, rng)).value for _ in range(20)]
        prof = local_cohomology_lengths(R, random.Random(4))
        F = adic(R, R.maximal_ideal)
        coeffs = fit_coefficients(F, R.dim, find_reduction(F, rng=rng).r)
        this = vals == [1] * 20 and prof.h == h and coeffs.e == e and coeffs.verified
        ok &= this
        details.append(f"{R!r}: I={set(vals)} h={prof.h} e={list(coeffs.e)}")
    report(4, ok, "; ".join(details))


# 5 -----------------------------------------------------------------------------------

def test_criterion_05_equivalence_selftest(battery):
    start = time.perf_counter()
    rep = equivalence_selftest(battery.entries, CertifyConfig(seed=5))
    elapsed = time.perf_counter() - start
    checked = [e for e in rep.entries if not e.skipped]
    agree = sum(e.agree is True for e in checked)
    both_false = sum(e.agree and not e.invariant_equal for e in checked)
    ok = rep.ok and len(checked) >= 6 and agree == len(checked) and elapsed < 300
    report(5, ok, f"{agree}/{len(checked)} entries agree ({both_false} with both false, "
                  f"{len(rep.entries) - len(checked)} skipped) in {elapsed:.1f}s")


# 6 -----------------------------------------------------------------------------------

def test_criterion_06_parameter_adic_is_buchsbaum(battery):
    rng = random.Random(6)
    verdicts = []
    for R in (battery.fat_line, battery.two_planes):
        for k in range(5):
            Q = random_sop(R, rng, degree=1 + k % 2)
            verdicts.append(certify_buchsbaum_G(adic(R, R.ideal(Q)), CertifyConfig(seed=k)).verdict)
    good = verdicts.count(G_BUCHSBAUM)
    report(6, good == 10, f"{good}/10 parameter-adic filtrations certified G_BUCHSBAUM")


# 7 -----------------------------------------------------------------------------------

def test_criterion_07_graded_fixed_point(battery):
    ok = True
    parts = []
    for name, R in battery.rings.items():
        F = adic(R, R.maximal_ideal)
        Q = battery.reduction(f"{name}, m-adic", F)
        same = all(
            invariant_on_G(F, Q, [n] * Q.d).value
            == invariant_of_sop(R, [a ** n for a in Q.generators]).value
            for n in (1, 2)
        )
        ok &= same
        if name in battery.buchsbaum:
            cert = certify_buchsbaum_G(F, CertifyConfig(seed=7))
            same_inv = cert.invariants["I_G"] == cert.invariants["I_A"]
            ok &= cert.verdict == G_BUCHSBAUM and same_inv
            parts.append(f"{name}: {cert.verdict}")
    report(7, ok, "I on G equals I on A for every m-adic battery ring; " + ", ".join(parts))


# 8 -----------------------------------------------------------------------------------

def test_criterion_08_corso(battery):
    ok = True
    exact = []
    for R, expected in ((battery.plane, (0, 0)), (battery.fat_line, (0, -1)), (battery.two_planes, (1, 0))):
        F = adic(R, R.maximal_ideal)
        out = corso_boundary_check(R, R.maximal_ideal, find_reduction(F, rng=random.Random(8)))
        ok &= (out["lhs"], out["rhs"]) == expected and out["holds_geq"]
        exact.append(f"{out['lhs']}/{out['rhs']}")
    sane = 0
    for name, F in battery.entries:
        if F.kind != "adic" or name.startswith("plane and line"):
            continue
        out = corso_boundary_check(F.ring, F.data["base"], battery.reduction(name, F))
        ok &= out["holds_geq"]
        sane += 1
    report(8, ok, f"lhs/rhs = {', '.join(exact)}; >= holds on {sane} sane adic entries")


# 9 -----------------------------------------------------------------------------------

def test_criterion_09_ratliff_rush(battery):
    R = battery.plane
    I = R.ideal(polys(R, *MONO))
    closure = ratliff_rush(R, I)
    strict = closure.contains_ideal(I) and not I.contains_ideal(closure)
    has = closure.contains(parse_polynomial("x^2*y^2", R.ambient))
    good = validate_goodness(ratliff_rush_filtration(R, I), 6).ok
    report(9, strict and has and good,
           f"closure {closure!r}: strictly larger {strict}, contains x^2*y^2 {has}, good to 6 {good}")


# 10 ----------------------------------------------------------------------------------

def test_criterion_10_monotonicity(battery):
    ok = True
    equal_cases = strict_cases = 0
    for name, F in battery.entries:
        Q = battery.reduction(name, F)
        on_G = invariant_on_G(F, Q, [1] * Q.d).value
        on_A = invariant_of_sop(F.ring, Q.generators).value
        holds = all(h for _, h in intersection_equalities(F, Q.generators, Q.r))
        ok &= on_G >= on_A and (on_G == on_A) == holds
        equal_cases += on_G == on_A
        strict_cases += on_G > on_A
    report(10, ok, f"I on G >= I on A on {len(battery.entries)} entries "
                   f"({equal_cases} equal, {strict_cases} strict); equality matches the intersections")


# 11 ----------------------------------------------------------------------------------

def test_criterion_11_negative_control(battery):
    R = battery.plane_and_line
    cert = certify_buchsbaum_G(adic(R, R.maximal_ideal), CertifyConfig(trials=12, seed=11))
    values = sorted({s["value"] for s in cert.buchsbaum_sample["sops"]})
    ok = cert.verdict == INPUT_SANITY_FAIL and len(values) >= 2
    report(11, ok, f"{cert.verdict}; sampled I values {values} in 12 trials")


# 12 ----------------------------------------------------------------------------------

def test_criterion_12_suite_time(request):
    """Moved to the end of the run by conftest, so this measures the whole suite."""
    start = request.config.stash.get(SUITE_START, None)
    elapsed = time.perf_counter() - start if start is not None else 0.0
    report(12, elapsed < SUITE_BUDGET, f"test suite wall-clock {elapsed:.1f}s (budget {SUITE_BUDGET:.0f}s)")



if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
