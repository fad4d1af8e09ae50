import random

import pytest

from bsbcert.filtration import (
    FiltrationError,
    ReductionNotFound,
    adic,
    filtration_ideal,
    find_reduction,
    quotient_filtration,
    ratliff_rush,
    ratliff_rush_filtration,
    reduction_number,
    table,
    validate_goodness,
    verify_reduction,
)
from bsbcert.session import parse_polynomial
from conftest import make_ring


def handle(R, *polys):
    return R.ideal([parse_polynomial(s, R.ambient) for s in polys])


def poly(R, s):
    return parse_polynomial(s, R.ambient)


MONO = ("x^4", "x^3*y", "x*y^3", "y^4")


def test_adic_powers(plane):
    F = adic(plane, plane.maximal_ideal)
    assert filtration_ideal(F, 2) == handle(plane, "x^2", "x*y", "y^2")
    assert F.ideal(0).is_unit()
    with pytest.raises(FiltrationError):
        F.ideal(-1)
    I = handle(plane, "x^2", "y^3")
    G = adic(plane, I)
    for n in range(1, 6):
        assert G.ideal(n) == I.power(n)


def test_table_tail(fat_line):
    F = table(fat_line, [fat_line.maximal_ideal], handle(fat_line, "y"), 1)
    assert F.ideal(2) == handle(fat_line, "y^2")
    with pytest.raises(FiltrationError):
        table(fat_line, [fat_line.maximal_ideal], handle(fat_line, "y"), 3)


def test_goodness(plane, two_planes):
    assert validate_goodness(adic(plane, plane.maximal_ideal), 5).ok
    assert validate_goodness(adic(two_planes, handle(two_planes, "x^2", "z")), 3).ok
    bad = table(plane, [handle(plane, "x^2", "y"), handle(plane, "x", "y^2")], handle(plane, "x", "y"), 2)
    rep = validate_goodness(bad, 3)
    assert not rep.ok and rep.failed_at == 1
    with pytest.raises(FiltrationError):
        validate_goodness(bad, 0)


def test_ratliff_rush_examples(plane):
    I = handle(plane, *MONO)
    Rt = ratliff_rush(plane, I)
    assert Rt.contains_ideal(I) and not I.contains_ideal(Rt)
    assert Rt.contains(poly(plane, "x^2*y^2"))
    assert ratliff_rush(plane, plane.maximal_ideal) == plane.maximal_ideal
    ci = handle(plane, "x^2", "y^2")
    assert ratliff_rush(plane, ci) == ci


def test_ratliff_rush_filtration_good(plane):
    F = ratliff_rush_filtration(plane, handle(plane, *MONO))
    assert validate_goodness(F, 6).ok
    for n in range(1, 4):
        assert F.ideal(n).contains_ideal(handle(plane, *MONO).power(n))


def test_find_reduction_examples(plane, fat_line, two_planes):
    cases = [(plane, 0, 2), (fat_line, 1, 1), (two_planes, 1, 2)]
    for R, r, d in cases:
        cert = find_reduction(adic(R, R.maximal_ideal), rng=random.Random(2))
        assert cert.r == r and cert.d == d
        assert all(g.degree() == 1 for g in cert.generators)
    # Q = (ax + by) must have b != 0
    cert = find_reduction(adic(fat_line, fat_line.maximal_ideal), rng=random.Random(7))
    assert cert.generators[0].coeffs.get((0, 1), 0) != 0


def test_reduction_number_seed_independent(fat_line, two_planes):
    for R in (fat_line, two_planes):
        rs = {find_reduction(adic(R, R.maximal_ideal), rng=random.Random(s)).r for s in range(20)}
        assert len(rs) == 1


def test_reduction_certificate_replays(two_planes):
    F = adic(two_planes, two_planes.maximal_ideal)
    cert = find_reduction(F, rng=random.Random(3))
    again = verify_reduction(adic(two_planes, two_planes.maximal_ideal), cert.generators, cert.r, cert.verified_up_to)
    assert again == cert
    assert reduction_number(F, cert.generators, cert.verified_up_to) == cert.r


def test_mixed_degree_reduction(plane):
    F = adic(plane, handle(plane, "x", "y^2"))
    cert = find_reduction(F, rng=random.Random(1))
    assert cert.r == 0
    assert sorted(g.degree() for g in cert.generators) == [1, 2]


def test_reduction_not_found(plane):
    F = adic(plane, handle(plane, "x^2", "x*y^3", "y^5"))
    with pytest.raises(ReductionNotFound):
        find_reduction(F, trials=1, n_max=1, rng=random.Random(0))


def test_quotient_filtration(plane, two_planes):
    F = adic(plane, plane.maximal_ideal)
    G = quotient_filtration(F, poly(plane, "x"))
    assert G.ring.dim == 1
    assert G.ideal(2) == G.ring.ideal([poly(plane, "y^2")])
    T = adic(two_planes, two_planes.maximal_ideal)
    assert quotient_filtration(T, poly(two_planes, "x + z")).ring.dim == 1
    assert quotient_filtration(T, poly(two_planes, "x + z"), 2).ring.dim == 1
    with pytest.raises(FiltrationError):
        quotient_filtration(F, poly(plane, "x + 1"))


def test_describe(plane):
    F = adic(plane, plane.maximal_ideal)
    assert F.describe() == {"kind": "adic", "base": ["x", "y"]}
