"""Buchsbaum-type invariants of A and of G(F), and sequence conditions.

``I(Q;A) = ell(A/Q) - e(Q;A)``.  On G the same quantity is obtained from the
graded colength and the identity e((a_i t); G) = e((a_i); A), so no
multiplicity is ever computed on the G side in the production path.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from math import comb, prod

from .filtration import Filtration, ReductionCertificate
from .groebner import Ideal, ideal_colon, ideal_equals, ideal_intersection
from .hilbert import graded_colength, multiplicity_parameter, power_product_multiplicity
from .kernel import Polynomial, monomials_of_degree
from .quotient import IdealHandle, QuotientRing, h0_length, is_parameter_ideal, length

USD_MAX_LENGTH = 4
SLICING_SCHEDULE = (2, 4, 8)
G_EXPONENTS = (1, 2, 4)


class InvariantError(ArithmeticError):
    pass


class CohomologyError(InvariantError):
    pass


@dataclass
class InvariantReport:
    sop: tuple
    length: int
    mult: int
    value: int
    label: str = "A"
    standard: bool | None = None
    usd_checked_to: int | None = None

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "sop": [str(g) for g in self.sop],
            "length": self.length,
            "mult": self.mult,
            "value": self.value,
            "standard": self.standard,
        }


@dataclass
class CohomologyProfile:
    h: list
    bsb_invariant: int
    slicing_exponent: int | None
    sop: tuple = ()

    def to_json(self) -> dict:
        return {"h": list(self.h), "bsb_invariant": self.bsb_invariant,
                "slicing_exponent": self.slicing_exponent}


@dataclass
class GInvariant:
    """I(G(F)) detected by standardness of ((a_i t)^n) on G."""

    value: int
    exponent: int | None
    certified: bool
    values: dict = field(default_factory=dict)


# --- random elements -----------------------------------------------------------------

def random_form(R: QuotientRing, degree: int, rng: random.Random) -> Polynomial:
    P = R.ambient
    f = P.zero()
    for m in monomials_of_degree(P.nvars, degree):
        f = f + P.monomial(m, rng.randrange(R.p))
    return f


def random_sop(R: QuotientRing, rng: random.Random, degree: int = 1, tries: int = 20) -> tuple:
    for _ in range(tries):
        gens = tuple(random_form(R, degree, rng) for _ in range(R.dim))
        if is_parameter_ideal(R, gens):
            return gens
    raise InvariantError("could not draw a system of parameters")


# --- I(Q;A) --------------------------------------------------------------------------

def invariant_of_sop(R: QuotientRing, sop, multiplicity: int | None = None) -> InvariantReport:
    sop = tuple(sop)
    if not is_parameter_ideal(R, sop):
        raise InvariantError("not a system of parameters")
    ell = length(R, IdealHandle(R, sop))
    e = multiplicity_parameter(R, sop) if multiplicity is None else multiplicity
    value = ell - e
    if value < 0:
        raise InvariantError(f"negative invariant {value}: length {ell} < multiplicity {e}")
    return InvariantReport(sop, ell, e, value)


def squares_report(R: QuotientRing, sop, base: InvariantReport) -> InvariantReport:
    """I((a_1^2..a_d^2);A), using e(a_i^2) = 2^d e(a_i)."""
    sq = tuple(a * a for a in sop)
    mult = power_product_multiplicity(base.mult, [2] * len(sop))
    return invariant_of_sop(R, sq, multiplicity=mult)


def is_standard_sop(R: QuotientRing, sop) -> bool:
    base = invariant_of_sop(R, sop)
    return squares_report(R, sop, base).value == base.value


def standard_report(R: QuotientRing, sop) -> InvariantReport:
    base = invariant_of_sop(R, sop)
    base.standard = squares_report(R, sop, base).value == base.value
    return base


# --- sequences ----------------------------------------------------------------------

def _prefix(R: QuotientRing, seq, i: int) -> Ideal:
    return Ideal(R.ambient, tuple(seq[:i]) + R.defining.gens)


def is_d_sequence(R: QuotientRing, seq) -> bool:
    seq = list(seq)
    P = R.ambient
    for i in range(len(seq)):
        q = _prefix(R, seq, i)
        for j in range(i, len(seq)):
            lhs = ideal_colon(q, Ideal(P, [seq[i] * seq[j]]))
            rhs = ideal_colon(q, Ideal(P, [seq[j]]))
            if not ideal_equals(lhs, rhs):
                return False
    return True


def is_weak_sequence(R: QuotientRing, seq) -> bool:
    seq = list(seq)
    P = R.ambient
    m = Ideal(P, P.gens())
    for i in range(len(seq)):
        q = _prefix(R, seq, i)
        if not ideal_equals(ideal_colon(q, Ideal(P, [seq[i]])), ideal_colon(q, m)):
            return False
    return True


def is_usd_sequence(R: QuotientRing, seq, m_bound: int = 2) -> bool:
    """Unconditioned strong d-sequence, checked for exponents 1..m_bound only."""
    seq = list(seq)
    if len(seq) > USD_MAX_LENGTH:
        raise InvariantError(f"u.s.d. check limited to {USD_MAX_LENGTH} elements")
    for exps in itertools.product(range(1, m_bound + 1), repeat=len(seq)):
        powered = [a ** n for a, n in zip(seq, exps)]
        for perm in itertools.permutations(powered):
            if not is_d_sequence(R, perm):
                return False
    return True


# --- local cohomology by slicing ------------------------------------------------------

def find_standard_sop(R: QuotientRing, rng: random.Random, tries: int = 4):
    for _ in range(tries):
        sop = random_sop(R, rng)
        rep = standard_report(R, sop)
        if rep.standard:
            return sop, rep
    raise CohomologyError("no standard system of parameters found; ring not generalized CM?")


def local_cohomology_lengths(R: QuotientRing, rng: random.Random | None = None) -> CohomologyProfile:
    """h^i(A) for 0 <= i < d, by cutting with powers of a standard parameter.

    Works on A/U (U = H^0), where a^m is a non-zero-divisor, so
    h^i(A/U/(a^m)) = h^i(A/U) + h^(i+1)(A/U) once a^m kills the cohomology.
    """
    rng = rng or random.Random(0)
    d = R.dim
    sop, rep = find_standard_sop(R, rng)
    target = rep.value
    h0, U = h0_length(R)
    if d == 1:
        if h0 != target:
            raise CohomologyError(f"h^0 = {h0} disagrees with I(A) = {target}")
        return CohomologyProfile([h0], target, None, sop)
    base = QuotientRing(R.ambient, U.gens + R.defining.gens) if h0 else R
    a = sop[0]
    previous = None
    for m in SLICING_SCHEDULE:
        sliced = base.quotient([a ** m])
        sub = local_cohomology_lengths(sliced, rng)
        h = [0] * d
        for i in range(d - 1):
            h[i + 1] = sub.h[i] - h[i]
        h[0] = h0
        if any(v < 0 for v in h):
            previous = None
            continue
        if previous is not None and previous[1] == h:
            total = sum(comb(d - 1, i) * h[i] for i in range(d))
            if total != target:
                raise CohomologyError(f"sum of h^i = {total} but I(A) = {target}")
            return CohomologyProfile(h, total, previous[0], sop)
        previous = (m, h)
    raise CohomologyError("not generalized CM or slicing schedule exhausted")


# --- invariants of G -----------------------------------------------------------------

def invariant_on_G(F: Filtration, Q: ReductionCertificate, exps, mult: int | None = None) -> InvariantReport:
    exps = tuple(exps)
    if len(set(exps)) != 1 or exps[0] not in G_EXPONENTS:
        raise InvariantError("exponents must be uniform and in {1, 2, 4}")
    if len(exps) != len(Q.generators):
        raise InvariantError("one exponent per reduction generator")
    gens = Q.generators
    ell = graded_colength(F, gens, 1, exps, r=Q.r)
    e_Q = multiplicity_parameter(F.ring, gens) if mult is None else mult
    e = prod(exps) * e_Q
    value = ell - e
    if value < 0:
        raise InvariantError(f"negative invariant on G: {ell} - {e}")
    return InvariantReport(tuple(a ** n for a, n in zip(gens, exps)), ell, e, value, label="G")


def bsb_invariant_of_G(F: Filtration, Q: ReductionCertificate) -> GInvariant:
    """First v(n) with v(n) = v(2n), n in 1, 2, 4; flagged when none is found."""
    e_Q = multiplicity_parameter(F.ring, Q.generators)
    d = len(Q.generators)
    values = {}

    def v(n):
        if n not in values:
            values[n] = invariant_on_G(F, Q, [n] * d, mult=e_Q).value
        return values[n]

    for n in (1, 2):
        if v(n) == v(2 * n):
            return GInvariant(v(n), n, True, dict(values))
    return GInvariant(v(4), None, False, dict(values))


def intersection_equalities(F: Filtration, gens, r: int, p: int = 1) -> list:
    """[(k, Q cap I_k == Q I_(k-p))] for 1 <= k <= r + p; beyond that equality is automatic."""
    R = F.ring
    Qh = IdealHandle(R, gens)
    out = []
    for k in range(1, r + p + 1):
        lhs = ideal_intersection(Qh.full, F.ideal(k).full)
        rhs = (Qh * F.ideal(max(k - p, 0))).full
        out.append((k, ideal_equals(lhs, rhs)))
    return out
