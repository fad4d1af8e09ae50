"""Buchsbaum certificates for associated graded rings of good filtrations.

The pipeline computes both sides of the equivalence independently:

* the intersection condition (a_i^2) cap I_n = (a_i^2) I_(n-2), 2 < n <= d + r;
* I(G) = I(A), with I(G) from graded colengths and I(A) from a standard sop.

A verdict of G_BUCHSBAUM needs both, plus a sampled check that A itself looks
Buchsbaum.  Every boolean in a certificate can be replayed from the recorded
generators.
"""

from __future__ import annotations

import json
import logging
import random
from dataclasses import asdict, dataclass, field

from .filtration import (
    Filtration,
    FiltrationError,
    ReductionCertificate,
    adic,
    find_reduction,
    ratliff_rush_filtration,
    table,
    validate_goodness,
)
from .groebner import ideal_equals, ideal_intersection
from .hilbert import fit_coefficients
from .invariants import (
    bsb_invariant_of_G,
    local_cohomology_lengths,
    random_sop,
    standard_report,
)
from .kernel import PolyRing
from .quotient import IdealHandle, QuotientRing, length

log = logging.getLogger(__name__)

G_BUCHSBAUM = "G_BUCHSBAUM"
EQUALITY_FAILS = "EQUALITY_FAILS"
INPUT_SANITY_FAIL = "INPUT_SANITY_FAIL"
INCONCLUSIVE = "INCONCLUSIVE"
VERDICTS = (G_BUCHSBAUM, EQUALITY_FAILS, INPUT_SANITY_FAIL, INCONCLUSIVE)

DEFAULT_TRIALS = 12


@dataclass(frozen=True)
class CertifyConfig:
    trials: int = DEFAULT_TRIALS
    seed: int = 0
    reduction_trials: int = 20
    n_max: int | None = None
    horizon: int | None = None


@dataclass
class Certificate:
    ring: dict
    filtration: dict
    d: int
    r: int | None
    beta: int | None
    reduction: dict | None
    buchsbaum_sample: dict
    checks: list
    invariants: dict
    verdict: str
    corso: dict | None = None
    notes: list = field(default_factory=list)
    config: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return asdict(self)

    def dumps(self, **kw) -> str:
        return json.dumps(self.to_json(), **kw)

    @classmethod
    def from_json(cls, data: dict) -> Certificate:
        return cls(**data)

    def intersection_holds(self) -> bool:
        return all(c["holds"] for c in self.checks if c["name"] == "intersection")


# --- condition on intersections --------------------------------------------------------

def check_intersection_condition(F: Filtration, Q: ReductionCertificate, m: int = 1) -> list:
    """[{n, holds}] for (a_i^2m) cap I_n == (a_i^2m) I_(n-2m), 2m < n <= d(2m-1) + r."""
    if m < 1:
        raise ValueError("m must be positive")
    R = F.ring
    d, r = Q.d, Q.r
    q = IdealHandle(R, [a ** (2 * m) for a in Q.generators])
    out = []
    for n in range(2 * m + 1, d * (2 * m - 1) + r + 1):
        lhs = ideal_intersection(q.full, F.ideal(n).full)
        rhs = (q * F.ideal(n - 2 * m)).full
        out.append({"n": n, "holds": ideal_equals(lhs, rhs)})
    return out


def stabilization_bound(F: Filtration, r: int) -> int:
    """Least beta >= 1 with I_(n+1) = I_1 I_n for all n >= beta, given a reduction number r."""
    if F.kind == "adic":
        return 1
    I1 = F.ideal(1)
    beta = max(r, 1)
    while beta > 1 and F.ideal(beta) == I1 * F.ideal(beta - 1):
        beta -= 1
    return beta


# --- sampling ------------------------------------------------------------------------

def buchsbaum_sample(R: QuotientRing, trials: int, rng: random.Random) -> dict:
    """Draw sops with generators alternately in m and m^2 and record I(Q;A) and standardness."""
    sops = []
    for t in range(trials):
        sop = random_sop(R, rng, degree=1 + t % 2)
        rep = standard_report(R, sop)
        sops.append({"sop": [str(g) for g in sop], "value": rep.value, "standard": rep.standard})
    values = {s["value"] for s in sops}
    ok = all(s["standard"] for s in sops) and len(values) <= 1
    return {"trials": trials, "all_standard": ok, "sops": sops}


# --- pipeline ------------------------------------------------------------------------

def certify_buchsbaum_G(F: Filtration, config: CertifyConfig | None = None) -> Certificate:
    config = config or CertifyConfig()
    R = F.ring
    rng = random.Random(config.seed)
    cert = Certificate(
        ring=R.describe(),
        filtration=F.describe(),
        d=R.dim,
        r=None,
        beta=None,
        reduction=None,
        buchsbaum_sample={"trials": config.trials, "all_standard": None, "sops": []},
        checks=[],
        invariants={"I_A": None, "I_G": None, "h": None},
        verdict=INCONCLUSIVE,
        config=asdict(config),
    )
    try:
        _run_pipeline(F, config, rng, cert)
    except Exception as exc:  # every failure downgrades the verdict
        log.info("certification aborted: %s", exc)
        cert.verdict = INCONCLUSIVE
        cert.notes.append(f"error: {type(exc).__name__}: {exc}")
    return cert


def _run_pipeline(F: Filtration, config: CertifyConfig, rng: random.Random, cert: Certificate):
    R = F.ring
    d = R.dim

    sample = buchsbaum_sample(R, config.trials, rng)
    cert.buchsbaum_sample = sample
    if not sample["all_standard"]:
        cert.verdict = INPUT_SANITY_FAIL
        cert.notes.append("sampled systems of parameters disagree; A is not Buchsbaum")
        return

    Q = find_reduction(F, trials=config.reduction_trials, n_max=config.n_max, rng=rng)
    cert.r = Q.r
    cert.reduction = Q.to_json()
    cert.beta = stabilization_bound(F, Q.r)
    for n in range(Q.r, Q.verified_up_to + 1):
        cert.checks.append({"name": "reduction", "n": n, "holds": True})

    goodness = validate_goodness(F, max(d + Q.r + 1, 2))
    for name, n, holds in goodness.checks:
        cert.checks.append({"name": name, "n": n, "holds": holds})
    if not goodness.ok:
        cert.verdict = INCONCLUSIVE
        cert.notes.append(f"filtration is not good: {goodness.failure}")
        return

    cond = check_intersection_condition(F, Q, 1)
    for c in cond:
        cert.checks.append({"name": "intersection", "n": c["n"], "m": 1, "holds": c["holds"]})
    cond_ok = all(c["holds"] for c in cond)

    first = sample["sops"][0]["value"]
    I_A = first
    gi = bsb_invariant_of_G(F, Q)
    cert.invariants["I_A"] = I_A
    cert.invariants["I_G"] = gi.value
    cert.invariants["I_G_values"] = {str(k): v for k, v in sorted(gi.values.items())}
    try:
        prof = local_cohomology_lengths(R, random.Random(config.seed))
        cert.invariants["h"] = prof.h
    except Exception as exc:
        cert.notes.append(f"local cohomology not determined: {exc}")
        cert.verdict = INCONCLUSIVE
        return
    if not gi.certified:
        cert.verdict = INCONCLUSIVE
        cert.notes.append("I(G) did not stabilise over exponents 1, 2, 4")
        return

    equal = gi.value == I_A
    if cond_ok and equal:
        cert.verdict = G_BUCHSBAUM
        cert.notes.append("h^i(G) = h^i(A) for 0 <= i < d; the recorded h applies to G")
    else:
        cert.verdict = EQUALITY_FAILS
        if cond_ok != equal:
            cert.notes.append("divergence: intersection condition and invariant equality disagree")


# --- Corso boundary -------------------------------------------------------------------

def corso_boundary_check(R: QuotientRing, I: IdealHandle, Q: ReductionCertificate,
                         horizon: int | None = None) -> dict:
    """e1(I) - e1(Q) >= 2(e0(I) - ell(A/I)) - ell(I/(I^2 + Q))."""
    d = R.dim
    Qh = IdealHandle(R, Q.generators)
    eI = fit_coefficients(adic(R, I), d, Q.r, N=horizon)
    eQ = fit_coefficients(adic(R, Qh), d, 0, N=horizon)
    colen = length(R, I)
    tail = length(R, I * I + Qh) - colen
    lhs = eI.e[1] - eQ.e[1]
    rhs = 2 * (eI.e[0] - colen) - tail
    return {
        "lhs": lhs,
        "rhs": rhs,
        "holds_geq": lhs >= rhs,
        "equal": lhs == rhs,
        "e_I": list(eI.e),
        "e_Q": list(eQ.e),
    }


def run_corso(F: Filtration, config: CertifyConfig | None = None) -> dict:
    """Corso check for an adic filtration, escalating to certification on equality."""
    config = config or CertifyConfig()
    if F.kind != "adic":
        raise FiltrationError("the boundary check applies to adic filtrations only")
    rng = random.Random(config.seed)
    R = F.ring
    Q = find_reduction(F, trials=config.reduction_trials, n_max=config.n_max, rng=rng)
    out = corso_boundary_check(R, F.data["base"], Q, config.horizon)
    out["reduction"] = Q.to_json()
    out["certificate"] = None
    if out["equal"]:
        cert = certify_buchsbaum_G(F, config)
        cert.corso = {k: out[k] for k in ("lhs", "rhs", "equal")}
        if cert.buchsbaum_sample["all_standard"]:
            cert.notes.append("A Buchsbaum and equality in the boundary inequality give I(G) = I(A)")
        out["certificate"] = cert
    return out


# --- self-test ------------------------------------------------------------------------

@dataclass
class SelftestEntry:
    name: str
    verdict: str
    skipped: bool = False
    invariant_equal: bool | None = None
    condition_holds: bool | None = None
    reason: str | None = None

    @property
    def agree(self) -> bool | None:
        if self.skipped or self.invariant_equal is None or self.condition_holds is None:
            return None
        return self.invariant_equal == self.condition_holds


@dataclass
class SelftestReport:
    entries: list

    @property
    def divergences(self) -> list:
        return [e for e in self.entries if e.agree is False]

    @property
    def errors(self) -> list:
        return [e for e in self.entries if not e.skipped and e.agree is None]

    @property
    def ok(self) -> bool:
        return not self.divergences and not self.errors


def equivalence_selftest(battery, config: CertifyConfig | None = None) -> SelftestReport:
    """Compare (I(G) == I(A)) with the intersection condition on each (name, filtration)."""
    entries = []
    for name, F in battery:
        cert = certify_buchsbaum_G(F, config)
        if cert.verdict == INPUT_SANITY_FAIL:
            log.info("self-test: %s skipped, input not Buchsbaum", name)
            entries.append(SelftestEntry(name, cert.verdict, skipped=True, reason="sanity"))
            continue
        inv = cert.invariants
        if inv["I_A"] is None or inv["I_G"] is None or cert.reduction is None:
            entries.append(SelftestEntry(name, cert.verdict, reason="; ".join(cert.notes)))
            continue
        entries.append(SelftestEntry(
            name, cert.verdict,
            invariant_equal=inv["I_A"] == inv["I_G"],
            condition_holds=cert.intersection_holds(),
        ))
    return SelftestReport(entries)


# --- replay ---------------------------------------------------------------------------

def ring_from_description(desc: dict) -> QuotientRing:
    from .session import parse_polynomial

    P = PolyRing(tuple(desc["variables"]), desc["prime"])
    rels = [parse_polynomial(s, P) for s in desc["relations"]]
    return QuotientRing(P, rels)


def _handle(R: QuotientRing, gens) -> IdealHandle:
    from .session import parse_polynomial

    return IdealHandle(R, [parse_polynomial(s, R.ambient) for s in gens])


def filtration_from_description(R: QuotientRing, desc: dict) -> Filtration:
    kind = desc["kind"]
    if kind == "adic":
        return adic(R, _handle(R, desc["base"]))
    if kind == "ratliff_rush":
        return ratliff_rush_filtration(R, _handle(R, desc["base"]))
    if kind == "table":
        return table(R, [_handle(R, g) for g in desc["ideals"]], _handle(R, desc["Q"]), desc["r"])
    raise FiltrationError(f"cannot rebuild a {kind!r} filtration")


@dataclass
class ReplayResult:
    ok: bool
    mismatches: list


def replay_certificate(data) -> ReplayResult:
    """Re-run every recorded check from the recorded generators."""
    if isinstance(data, Certificate):
        data = data.to_json()
    from .session import parse_polynomial

    R = ring_from_description(data["ring"])
    F = filtration_from_description(R, data["filtration"])
    P = R.ambient
    bad = []

    def same(what, recorded, got):
        if recorded != got:
            bad.append(f"{what}: recorded {recorded!r}, replayed {got!r}")

    for i, s in enumerate(data["buchsbaum_sample"]["sops"]):
        sop = [parse_polynomial(g, P) for g in s["sop"]]
        rep = standard_report(R, sop)
        same(f"sop {i} value", s["value"], rep.value)
        same(f"sop {i} standard", s["standard"], rep.standard)

    red = data.get("reduction")
    if red is not None:
        gens = tuple(parse_polynomial(g, P) for g in red["generators"])
        Q = ReductionCertificate(gens, red["r"], red["verified_up_to"])
        Qh = IdealHandle(R, gens)
        goodness = {(n, name): holds for name, n, holds in
                    validate_goodness(F, max(R.dim + Q.r + 1, 2)).checks}
        cond = {c["n"]: c["holds"] for c in check_intersection_condition(F, Q, 1)}
        for c in data["checks"]:
            n = c["n"]
            if c["name"] == "reduction":
                got = F.ideal(n + 1) == Qh * F.ideal(n)
            elif c["name"] == "intersection":
                got = cond.get(n)
            else:
                got = goodness.get((n, c["name"]))
            same(f"{c['name']} n={n}", c["holds"], got)
        inv = data["invariants"]
        if inv.get("I_G") is not None:
            same("I_G", inv["I_G"], bsb_invariant_of_G(F, Q).value)
        same("beta", data["beta"], stabilization_bound(F, Q.r))
    inv = data["invariants"]
    if inv.get("h") is not None:
        prof = local_cohomology_lengths(R, random.Random(data["config"].get("seed", 0)))
        same("h", inv["h"], prof.h)
    return ReplayResult(not bad, bad)


__all__ = [
    "Certificate",
    "CertifyConfig",
    "EQUALITY_FAILS",
    "G_BUCHSBAUM",
    "INCONCLUSIVE",
    "INPUT_SANITY_FAIL",
    "ReplayResult",
    "SelftestReport",
    "VERDICTS",
    "buchsbaum_sample",
    "certify_buchsbaum_G",
    "check_intersection_condition",
    "corso_boundary_check",
    "equivalence_selftest",
    "filtration_from_description",
    "replay_certificate",
    "ring_from_description",
    "run_corso",
    "stabilization_bound",
]
