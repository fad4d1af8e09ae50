"""Command-line front end: ``bsbcert [options] [FILE]``.

Reads a session from FILE (or stdin), runs its commands in order and prints
one table per command.  Exit status: 0 all good or informational, 2 an
equality failure, 3 a sanity failure, inconclusive verdict or runtime error,
4 a usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .certifier import (
    EQUALITY_FAILS,
    G_BUCHSBAUM,
    CertifyConfig,
    certify_buchsbaum_G,
    run_corso,
)
from .filtration import adic, find_reduction, ratliff_rush_filtration, table
from .hilbert import fit_coefficients, hs_function
from .invariants import (
    is_d_sequence,
    is_usd_sequence,
    is_weak_sequence,
    local_cohomology_lengths,
    standard_report,
)
from .quotient import QuotientRing
from .session import IdealExpr, Session, SessionError, parse_session

EXIT_OK, EXIT_EQUALITY, EXIT_SANITY, EXIT_USAGE = 0, 2, 3, 4


class Runtime:
    """Materialized rings, ideals and filtrations of a parsed session."""

    def __init__(self, session: Session):
        self.session = session
        self.rings: dict = {}
        self.filtrations: dict = {}

    def ring(self, name: str) -> QuotientRing:
        if name not in self.rings:
            decl = self.session.rings[name]
            self.rings[name] = QuotientRing(self.session.poly_ring(name), decl.relations)
        return self.rings[name]

    def ideal(self, expr: IdealExpr):
        R = self.ring(expr.ring)
        if expr.kind == "maxideal":
            return R.maximal_ideal
        if expr.kind == "name":
            return self.ideal(self.session.ideals[expr.name].expr)
        return R.ideal(expr.gens)

    def filtration(self, name: str):
        if name not in self.filtrations:
            d = self.session.filtrations[name]
            R = self.ring(d.ring)
            if d.kind == "adic":
                F = adic(R, self.ideal(d.base))
            elif d.kind == "rr":
                F = ratliff_rush_filtration(R, self.ideal(d.base))
            else:
                F = table(R, [self.ideal(e) for e in d.ideals], self.ideal(d.Q), d.r)
            self.filtrations[name] = F
        return self.filtrations[name]


def format_table(rows, header=None) -> str:
    rows = [[str(c) for c in row] for row in rows]
    if header:
        rows.insert(0, [str(h) for h in header])
    if not rows:
        return ""
    widths = [max(len(r[i]) for r in rows if i < len(r)) for i in range(max(map(len, rows)))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]
    if header:
        lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _certificate_rows(cert) -> list:
    inv = cert.invariants
    rows = [
        ("verdict", cert.verdict),
        ("d", cert.d),
        ("r", cert.r),
        ("beta", cert.beta),
        ("reduction", ", ".join(cert.reduction["generators"]) if cert.reduction else "-"),
        ("sample", f"{cert.buchsbaum_sample['trials']} sops, all standard: "
                   f"{cert.buchsbaum_sample['all_standard']}"),
        ("I(A)", inv["I_A"]),
        ("I(G)", inv["I_G"]),
        ("h", inv["h"]),
    ]
    for c in cert.checks:
        if c["name"] == "intersection":
            rows.append((f"intersection n={c['n']}", c["holds"]))
    for note in cert.notes:
        rows.append(("note", note))
    return rows


def _verdict_code(verdict: str) -> int:
    if verdict == G_BUCHSBAUM:
        return EXIT_OK
    if verdict == EQUALITY_FAILS:
        return EXIT_EQUALITY
    return EXIT_SANITY


def run_command(rt: Runtime, cmd, args, out) -> tuple[int, list]:
    """Run one command; returns (exit code contribution, certificates)."""
    config = CertifyConfig(trials=args.trials, seed=args.seed, horizon=args.horizon)
    certs = []
    code = EXIT_OK
    title = f"{cmd.verb} {cmd.target}"
    if cmd.verb == "certify":
        cert = certify_buchsbaum_G(rt.filtration(cmd.target), config)
        certs.append(cert)
        code = _verdict_code(cert.verdict)
        body = format_table(_certificate_rows(cert))
    elif cmd.verb == "hilbert":
        F = rt.filtration(cmd.target)
        H = hs_function(F, cmd.count)
        body = format_table([(n, v) for n, v in enumerate(H.values)], header=("n", "length(A/I_n)"))
        d = F.ring.dim
        Q = find_reduction(F, rng=random.Random(args.seed))
        e = fit_coefficients(F, d, Q.r, N=args.horizon)
        body += "\n" + format_table([(f"e_{i}", v) for i, v in enumerate(e.e)] +
                                    [("fit window", f"{e.fit_window[0]}..{e.fit_window[1]}")])
    elif cmd.verb == "invariant":
        R = rt.ring(cmd.target)
        I = rt.ideal(cmd.ideal)
        rep = standard_report(R, I.gens)
        body = format_table([("length", rep.length), ("multiplicity", rep.mult),
                             ("I(Q;A)", rep.value), ("standard", rep.standard)])
    elif cmd.verb == "dseq":
        R = rt.ring(cmd.target)
        seq = list(cmd.polys)
        rows = [("d-sequence", is_d_sequence(R, seq)), ("weak sequence", is_weak_sequence(R, seq))]
        if len(seq) <= 4:
            rows.append((f"u.s.d. (exponents <= {args.usd_bound})", is_usd_sequence(R, seq, args.usd_bound)))
        body = format_table(rows)
    elif cmd.verb == "corso":
        res = run_corso(rt.filtration(cmd.target), config)
        rows = [("lhs", res["lhs"]), ("rhs", res["rhs"]), ("holds >=", res["holds_geq"]),
                ("equal", res["equal"]), ("reduction", ", ".join(res["reduction"]["generators"]))]
        cert = res["certificate"]
        if cert is not None:
            certs.append(cert)
            code = _verdict_code(cert.verdict)
            rows.append(("escalated verdict", cert.verdict))
        elif not res["holds_geq"]:
            code = EXIT_SANITY
        body = format_table(rows)
    else:  # cohomology
        prof = local_cohomology_lengths(rt.ring(cmd.target), random.Random(args.seed))
        rows = [(f"h^{i}", v) for i, v in enumerate(prof.h)] + [("I(A)", prof.bsb_invariant)]
        body = format_table(rows)
    print(f"== {title}", file=out)
    print(body, file=out)
    return code, certs


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="bsbcert", description="Buchsbaum certificates for associated graded rings.")
    ap.add_argument("file", nargs="?", help="session file (default: stdin)")
    ap.add_argument("--prime", type=int, help="override the characteristic of every ring")
    ap.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    ap.add_argument("--trials", type=int, default=12, help="sops sampled in the Buchsbaum test")
    ap.add_argument("--json", metavar="PATH", help="write certificates as JSON")
    ap.add_argument("--horizon", type=int, help="Hilbert fit horizon")
    ap.add_argument("--usd-bound", type=int, default=2, help="largest exponent in u.s.d. checks")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    if args.trials < 1 or args.usd_bound < 1:
        print("bsbcert: --trials and --usd-bound must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.file and args.file != "-":
            with open(args.file, encoding="utf-8") as fh:
                text = fh.read()
        else:
            text = sys.stdin.read()
    except OSError as exc:
        print(f"bsbcert: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        session = parse_session(text, prime=args.prime)
    except SessionError as exc:
        print(f"bsbcert: parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    rt = Runtime(session)
    codes = [EXIT_OK]
    certs = []
    for cmd in session.commands:
        try:
            code, got = run_command(rt, cmd, args, sys.stdout)
        except Exception as exc:
            print(f"bsbcert: {cmd.line}:{cmd.col}: {cmd.verb} {cmd.target}: {exc}", file=sys.stderr)
            code, got = EXIT_SANITY, []
        codes.append(code)
        certs.extend(got)
    if args.json:
        payload = [c.to_json() for c in certs]
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(payload[0] if len(payload) == 1 else payload, fh, indent=2)
            fh.write("\n")
    return max(codes)


if __name__ == "__main__":
    sys.exit(main())
