"""I-good filtrations: adic, tabulated with a reduction tail, Ratliff-Rush.

A filtration materializes its ideals lazily and caches them per index.  A
reduction is found by drawing random linear combinations of the generators of
I_1 and verifying I_(n+1) = Q I_n over a window, so a bad draw is never
accepted.
"""

from __future__ import annotations

import itertools
import logging
import random
import threading
from dataclasses import dataclass, field

from .groebner import ideal_colon, ideal_equals
from .kernel import Polynomial
from .quotient import IdealHandle, QuotientRing, h0_length, is_parameter_ideal

log = logging.getLogger(__name__)

RATLIFF_RUSH_CAP = 30


class FiltrationError(ValueError):
    pass


class ReductionNotFound(FiltrationError):
    pass


@dataclass(frozen=True)
class ReductionCertificate:
    generators: tuple
    r: int
    verified_up_to: int

    @property
    def d(self) -> int:
        return len(self.generators)

    def to_json(self) -> dict:
        return {
            "generators": [str(g) for g in self.generators],
            "r": self.r,
            "verified_up_to": self.verified_up_to,
        }


class Filtration:
    """A map n -> I_n on a quotient ring.

    ``kind`` is ``adic``, ``table``, ``ratliff_rush`` or ``quotient``.  Use the
    constructors :func:`adic`, :func:`table` and :func:`ratliff_rush_filtration`.
    """

    def __init__(self, ring: QuotientRing, kind: str, data: dict,
                 reduction: ReductionCertificate | None = None, beta: int | None = None):
        self.ring = ring
        self.kind = kind
        self.data = data
        self.reduction = reduction
        self.beta = beta
        self._cache: dict[int, IdealHandle] = {0: ring.unit_ideal()}
        self._lock = threading.Lock()

    def ideal(self, n: int) -> IdealHandle:
        if n < 0:
            raise FiltrationError("filtration index must be non-negative")
        got = self._cache.get(n)
        if got is None:
            got = self._compute(n)
            with self._lock:
                got = self._cache.setdefault(n, got)
        return got

    def _compute(self, n: int) -> IdealHandle:
        kind = self.kind
        if kind == "adic":
            return self.ideal(n - 1) * self.data["base"]
        if kind == "table":
            stored = self.data["ideals"]
            if n <= len(stored):
                return stored[n - 1]
            return self.data["Q"] * self.ideal(n - 1)
        if kind == "ratliff_rush":
            return ratliff_rush_power(self.ring, self.data["base"], n)
        if kind == "quotient":
            parent = self.data["parent"]
            return IdealHandle(self.ring, parent.ideal(n).gens)
        raise FiltrationError(f"unknown filtration kind {kind!r}")

    def with_reduction(self, cert: ReductionCertificate) -> Filtration:
        self.reduction = cert
        return self

    def describe(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.kind in ("adic", "ratliff_rush"):
            out["base"] = [str(g) for g in self.data["base"].gens]
        elif self.kind == "table":
            out["ideals"] = [[str(g) for g in I.gens] for I in self.data["ideals"]]
            out["Q"] = [str(g) for g in self.data["Q"].gens]
            out["r"] = self.data["r"]
        elif self.kind == "quotient":
            out["parent"] = self.data["parent"].describe()
            out["element"] = str(self.data["element"])
            out["exponent"] = self.data["exponent"]
        return out

    def __repr__(self):
        return f"Filtration({self.kind}, {self.ring!r})"


def adic(ring: QuotientRing, base: IdealHandle) -> Filtration:
    return Filtration(ring, "adic", {"base": base}, beta=1)


def table(ring: QuotientRing, ideals, Q: IdealHandle, r: int) -> Filtration:
    """I_n given for 1 <= n <= len(ideals); I_(n+1) = Q I_n past the table."""
    ideals = list(ideals)
    if not ideals:
        raise FiltrationError("table filtration needs at least I_1")
    if r < 0 or r > len(ideals):
        raise FiltrationError("claimed reduction number must lie in [0, len(table)]")
    return Filtration(ring, "table", {"ideals": ideals, "Q": Q, "r": r})


def ratliff_rush_filtration(ring: QuotientRing, base: IdealHandle) -> Filtration:
    return Filtration(ring, "ratliff_rush", {"base": base})


def filtration_ideal(F: Filtration, n: int) -> IdealHandle:
    return F.ideal(n)


# --- Ratliff-Rush ------------------------------------------------------------------

def _colon(R: QuotientRing, num: IdealHandle, den: IdealHandle) -> IdealHandle:
    # J <= num.full, so colon by the preimage generators alone suffices
    return IdealHandle(R, ideal_colon(num.full, den.preimage).gens)


def ratliff_rush_power(R: QuotientRing, I: IdealHandle, n: int, cap: int = RATLIFF_RUSH_CAP) -> IdealHandle:
    """Closure of I^n: the stable value of (I^(n+k) : I^k) as k grows.

    The chain is increasing; it is taken as stable once two consecutive
    terms with k >= 1 agree.
    """
    if n == 0:
        return R.unit_ideal()
    In = I.power(n)
    prev = In
    Ik = R.unit_ideal()
    top = In
    for k in range(1, cap + 1):
        Ik = Ik * I
        top = top * I
        cur = _colon(R, top, Ik)
        if ideal_equals(cur.full, prev.full) and k > 1:
            return cur
        prev = cur
    raise FiltrationError(f"Ratliff-Rush chain did not stabilise within {cap} steps")


def ratliff_rush(R: QuotientRing, I: IdealHandle, cap: int = RATLIFF_RUSH_CAP) -> IdealHandle:
    if h0_length(R)[0] > 0:
        log.warning("Ratliff-Rush closure requested on a ring of depth 0")
    return ratliff_rush_power(R, I, 1, cap)


# --- goodness --------------------------------------------------------------------

@dataclass
class GoodnessReport:
    ok: bool
    bound: int
    failure: str | None = None
    failed_at: int | None = None
    checks: list = field(default_factory=list)


def validate_goodness(F: Filtration, bound: int) -> GoodnessReport:
    """Check I_(n+1) <= I_n and I_1 I_n <= I_(n+1) for n <= bound, and the reduction tail."""
    if bound < 1:
        raise FiltrationError("bound must be at least 1")
    checks = []
    I1 = F.ideal(1)
    if I1.is_unit():
        return GoodnessReport(False, bound, "I_1 is the unit ideal", 1, checks)
    for n in range(1, bound + 1):
        In, In1 = F.ideal(n), F.ideal(n + 1)
        desc = In.contains_ideal(In1)
        checks.append(("descending", n, desc))
        if not desc:
            return GoodnessReport(False, bound, f"I_{n + 1} not contained in I_{n}", n, checks)
        mult = In1.contains_ideal(I1 * In)
        checks.append(("multiplicative", n, mult))
        if not mult:
            return GoodnessReport(False, bound, f"I_1 I_{n} not contained in I_{n + 1}", n, checks)
    tail = _claimed_reduction(F)
    if tail is not None:
        Q, r = tail
        for n in range(r, bound + 1):
            eq = F.ideal(n + 1) == Q * F.ideal(n)
            checks.append(("reduction", n, eq))
            if not eq:
                return GoodnessReport(False, bound, f"I_{n + 1} != Q I_{n}", n, checks)
    return GoodnessReport(True, bound, None, None, checks)


def _claimed_reduction(F: Filtration):
    if F.reduction is not None:
        return IdealHandle(F.ring, F.reduction.generators), F.reduction.r
    if F.kind == "table":
        return F.data["Q"], F.data["r"]
    return None


# --- reductions ------------------------------------------------------------------

def reduction_window(F: Filtration, Q: IdealHandle, n_max: int) -> list[bool]:
    """eq[n] = (I_(n+1) == Q I_n) for 0 <= n <= n_max."""
    return [F.ideal(n + 1) == Q * F.ideal(n) for n in range(n_max + 1)]


def reduction_number(F: Filtration, gens, n_max: int) -> int | None:
    """Least r with I_(n+1) = Q I_n for r <= n <= n_max, or None."""
    Q = IdealHandle(F.ring, gens)
    r = None
    for n in range(n_max, -1, -1):
        if F.ideal(n + 1) == Q * F.ideal(n):
            r = n
        else:
            break
    return r


def verify_reduction(F: Filtration, gens, r: int, n_max: int) -> ReductionCertificate:
    gens = tuple(gens)
    if not is_parameter_ideal(F.ring, gens):
        raise FiltrationError("reduction generators are not a system of parameters")
    Q = IdealHandle(F.ring, gens)
    for n in range(r, n_max + 1):
        if not F.ideal(n + 1) == Q * F.ideal(n):
            raise FiltrationError(f"I_{n + 1} != Q I_{n}")
    return ReductionCertificate(gens, r, n_max)


def default_n_max(d: int) -> int:
    return 2 * d + 10


def _random_combination(gens, rng: random.Random, p: int) -> Polynomial:
    total = gens[0].ring.zero()
    for g in gens:
        total = total + g.scale(rng.randrange(1, p))
    return total


def _degree_assignments(groups: dict, d: int):
    degrees = sorted(groups)
    out = []
    for combo in itertools.combinations_with_replacement(degrees, d):
        if all(combo.count(deg) <= len(groups[deg]) for deg in set(combo)):
            out.append(combo)
    out.sort(key=lambda c: (sum(c), c))
    return out


def find_reduction(F: Filtration, trials: int = 20, n_max: int | None = None,
                   rng: random.Random | None = None) -> ReductionCertificate:
    """Randomized search for a reduction Q = (a_1..a_d) of F with minimal r.

    Draws are generic combinations of the generators of I_1: within a single
    degree while I_1 is homogeneous (lowest degrees first), then across all
    generators.  Every candidate is verified before it is returned.
    """
    R = F.ring
    d = R.dim
    rng = rng or random.Random(0)
    n_max = default_n_max(d) if n_max is None else n_max
    gens = [g for g in F.ideal(1).gens if g]
    if not gens:
        raise ReductionNotFound("I_1 is zero")
    plans = []
    if all(g.is_homogeneous() for g in gens):
        groups: dict = {}
        for g in gens:
            groups.setdefault(g.degree(), []).append(g)
        plans = [[groups[deg] for deg in combo] for combo in _degree_assignments(groups, d)]
    plans.append([gens] * d)

    attempts = 0
    for plan in plans:
        for _ in range(2):
            if attempts >= trials:
                break
            attempts += 1
            cand = tuple(_random_combination(group, rng, R.p) for group in plan)
            if not is_parameter_ideal(R, cand):
                continue
            r = reduction_number(F, cand, n_max)
            if r is not None:
                return ReductionCertificate(cand, r, n_max)
    raise ReductionNotFound(
        f"no reduction found in {attempts} draws with n_max={n_max}; "
        "a degree-compatible reduction may not exist"
    )


def quotient_filtration(F: Filtration, a: Polynomial, e: int = 1) -> Filtration:
    """The filtration (I_n + (a^e))/(a^e) on A/(a^e)."""
    if e < 1:
        raise FiltrationError("exponent must be positive")
    if not F.ideal(1).contains(a):
        raise FiltrationError("element is not in I_1")
    ae = a ** e
    ring = F.ring.quotient([ae])
    G = Filtration(ring, "quotient", {"parent": F, "element": a, "exponent": e})
    if F.reduction is not None:
        rest = tuple(g for g in F.reduction.generators if g != a)
        if len(rest) < len(F.reduction.generators):
            G.reduction = ReductionCertificate(rest, F.reduction.r, F.reduction.verified_up_to)
    G.beta = F.beta
    return G
