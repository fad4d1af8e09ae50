import random

import pytest

from bsbcert.filtration import adic, find_reduction
from bsbcert.hilbert import (
    HilbertError,
    HSFunction,
    binom,
    fit_coefficients,
    graded_colength,
    hilbert_coefficients,
    hilbert_polynomial,
    hs_function,
    multiplicity_on_G,
    multiplicity_parameter,
    power_product_multiplicity,
)
from bsbcert.invariants import random_sop
from bsbcert.session import parse_polynomial


def polys(R, *ss):
    return [parse_polynomial(s, R.ambient) for s in ss]


def test_binomial_polynomial():
    assert binom(5, 2) == 10
    assert binom(-1, 2) == 1
    assert binom(3, 0) == 1


def test_hs_values(plane, fat_line, two_planes):
    assert hs_function(adic(plane, plane.maximal_ideal), 5).values == (0, 1, 3, 6, 10, 15)
    # ell(A/m) = 1; ell(A/m^n) = n + 1 from n = 2 on
    assert hs_function(adic(fat_line, fat_line.maximal_ideal), 6).values == (0, 1, 3, 4, 5, 6, 7)
    vals = hs_function(adic(two_planes, two_planes.maximal_ideal), 6).values
    assert vals[1:] == tuple(n * n + n - 1 for n in range(1, 7))


def test_hs_monotone(two_planes):
    v = hs_function(adic(two_planes, two_planes.ideal(polys(two_planes, "x^2", "y", "z", "w^3"))), 5).values
    assert all(a <= b for a, b in zip(v, v[1:]))


def test_coefficients(plane, fat_line, two_planes):
    assert fit_coefficients(adic(plane, plane.maximal_ideal), 2, 0).e == (1, 0, 0)
    c = fit_coefficients(adic(fat_line, fat_line.maximal_ideal), 1, 1)
    assert c.e == (1, -1) and c.verified
    assert fit_coefficients(adic(two_planes, two_planes.maximal_ideal), 2, 1).e == (2, 0, -1)


def test_fit_reproduces_window(two_planes):
    F = adic(two_planes, two_planes.maximal_ideal)
    H = hs_function(F, 10)
    c = hilbert_coefficients(H, 2)
    for n in range(c.fit_window[0] - 2, c.fit_window[1] + 1):
        assert hilbert_polynomial(c.e, n) == H.values[n]


def test_fit_rejects_short_horizon(two_planes):
    F = adic(two_planes, two_planes.maximal_ideal)
    with pytest.raises(HilbertError):
        hilbert_coefficients(hs_function(F, 3), 2)
    fake = HSFunction((0, 1, 2, 4, 8, 16, 32, 64), F, 7)
    with pytest.raises(HilbertError):
        hilbert_coefficients(fake, 1)


def test_multiplicity_examples(plane, fat_line, two_planes):
    assert multiplicity_parameter(plane, polys(plane, "x", "y")) == 1
    assert multiplicity_parameter(fat_line, polys(fat_line, "y")) == 1
    assert multiplicity_parameter(two_planes, polys(two_planes, "x + z", "y + w")) == 2


def test_multiplicity_of_powers(two_planes, fat_line):
    rng = random.Random(6)
    for R in (fat_line, two_planes):
        Q = random_sop(R, rng)
        e = multiplicity_parameter(R, Q)
        for exps in ([1] * R.dim, [2] * R.dim, [1] * (R.dim - 1) + [2]):
            powered = [a ** n for a, n in zip(Q, exps)]
            assert multiplicity_parameter(R, powered) == power_product_multiplicity(e, exps)


def test_multiplicity_is_difference_of_hs(two_planes):
    Q = polys(two_planes, "x + z", "y + w")
    F = adic(two_planes, two_planes.ideal(Q))
    e = fit_coefficients(F, 2, 0).e
    assert e[0] == multiplicity_parameter(two_planes, Q)


def test_graded_colength_examples(plane, fat_line):
    F = adic(fat_line, fat_line.maximal_ideal)
    assert graded_colength(F, polys(fat_line, "y"), 1, (1,), r=1) == 2
    G = adic(plane, plane.maximal_ideal)
    assert graded_colength(G, polys(plane, "x", "y"), 1, (1, 1), r=0) == 1
    assert graded_colength(G, polys(plane, "x", "y"), 1, (2, 2), r=0) == 4


def test_G_multiplicity_identity(fat_line, two_planes):
    for R in (fat_line, two_planes):
        F = adic(R, R.maximal_ideal)
        cert = find_reduction(F, rng=random.Random(1))
        assert multiplicity_on_G(F, cert.generators, 1, cert.r) == multiplicity_parameter(R, cert.generators)
