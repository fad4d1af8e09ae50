"""Parser for session files.

    ring A = F(32003)[x,y] / (x^2, x*y);
    ideal I = (y);
    filtration M = adic(maxideal(A));
    filtration T = table((x, y), (y^2); Q=(y), r=2);
    certify buchsbaum M;
    hilbert M 8;

Statements end with ``;``; whitespace and ``#`` comments are ignored.  Ideals
and explicit generator lists are read in the most recently declared ring.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .kernel import PolyRing, Polynomial

KEYWORDS = {"ring", "ideal", "filtration", "certify", "hilbert", "invariant",
            "dseq", "corso", "cohomology"}
RING_COMMANDS = {"invariant", "dseq", "cohomology"}
FILTRATION_COMMANDS = {"certify", "hilbert", "corso"}


class SessionError(ValueError):
    def __init__(self, message: str, line: int = 0, col: int = 0, token: str | None = None):
        self.message = message
        self.line = line
        self.col = col
        self.token = token
        where = f"{line}:{col}: " if line else ""
        tok = f" (at {token!r})" if token is not None else ""
        super().__init__(f"{where}{message}{tok}")


# --- lexer -----------------------------------------------------------------------------

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r\n]+|\#[^\n]*)
  | (?P<int>\d+)
  | (?P<id>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<sym>[=()\[\]/;,^*+\-])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str  # int, id, sym, eof
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    out = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        col = pos - line_start + 1
        if not m:
            raise SessionError("unexpected character", line, col, text[pos])
        kind = m.lastgroup
        chunk = m.group()
        if kind != "ws":
            out.append(Token(kind, chunk, line, col))
        nl = chunk.count("\n")
        if nl:
            line += nl
            line_start = pos + chunk.rfind("\n") + 1
        pos = m.end()
    out.append(Token("eof", "", line, pos - line_start + 1))
    return out


# --- session data -----------------------------------------------------------------------

@dataclass(frozen=True)
class IdealExpr:
    """``name``, ``maxideal(ring)`` or an explicit generator list in ``ring``."""

    kind: str  # name | maxideal | explicit
    ring: str
    name: str | None = None
    gens: tuple = ()


@dataclass(frozen=True)
class RingDecl:
    name: str
    prime: int
    variables: tuple
    relations: tuple


@dataclass(frozen=True)
class IdealDecl:
    name: str
    expr: IdealExpr


@dataclass(frozen=True)
class FiltrationDecl:
    name: str
    ring: str
    kind: str  # adic | table | rr
    base: IdealExpr | None = None
    ideals: tuple = ()
    Q: IdealExpr | None = None
    r: int | None = None


@dataclass(frozen=True)
class Command:
    verb: str
    target: str
    ideal: IdealExpr | None = None
    polys: tuple = ()
    count: int | None = None
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass
class Session:
    rings: dict = field(default_factory=dict)
    ideals: dict = field(default_factory=dict)
    filtrations: dict = field(default_factory=dict)
    order: list = field(default_factory=list)  # declaration names in source order, with kind
    commands: list = field(default_factory=list)
    options: dict = field(default_factory=dict, compare=False)

    def poly_ring(self, ring: str) -> PolyRing:
        decl = self.rings[ring]
        return PolyRing(decl.variables, decl.prime)

    def ring_of(self, expr: IdealExpr) -> str:
        return expr.ring


# --- parser ------------------------------------------------------------------------------

class _Parser:
    def __init__(self, text: str, prime: int | None):
        self.toks = tokenize(text)
        self.i = 0
        self.prime_override = prime
        self.session = Session()
        self.current_ring: str | None = None

    # token helpers
    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, msg: str, tok: Token | None = None):
        tok = tok or self.tok
        raise SessionError(msg, tok.line, tok.col, tok.text or "<end of input>")

    def advance(self) -> Token:
        t = self.tok
        self.i += 1
        return t

    def at(self, text: str) -> bool:
        return self.tok.kind in ("sym", "id") and self.tok.text == text

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.error(f"expected {text!r}")
        return self.advance()

    def expect_id(self) -> Token:
        if self.tok.kind != "id":
            self.error("expected a name")
        return self.advance()

    def expect_int(self) -> int:
        if self.tok.kind != "int":
            self.error("expected an integer")
        return int(self.advance().text)

    # statements
    def parse(self) -> Session:
        while self.tok.kind != "eof":
            self.statement()
        return self.session

    def statement(self):
        t = self.tok
        if t.kind != "id":
            self.error("expected a statement")
        handler = {
            "ring": self.ring_decl,
            "ideal": self.ideal_decl,
            "filtration": self.filtration_decl,
        }.get(t.text)
        if handler is not None:
            handler()
        elif t.text in RING_COMMANDS | FILTRATION_COMMANDS:
            self.command()
        else:
            self.error("unknown statement")
        self.expect(";")

    def _declare(self, kind: str, tok: Token):
        table = getattr(self.session, kind)
        if tok.text in table:
            self.error(f"duplicate {kind[:-1]} name", tok)

    def ring_decl(self):
        self.advance()
        name = self.expect_id()
        if name.text in self.session.rings:
            self.error("duplicate ring name", name)
        self.expect("=")
        f = self.expect_id()
        if f.text != "F":
            self.error("expected 'F'", f)
        self.expect("(")
        ptok = self.tok
        prime = self.expect_int()
        self.expect(")")
        if self.prime_override is not None:
            prime = self.prime_override
        self.expect("[")
        variables = [self.expect_id()]
        while self.at(","):
            self.advance()
            variables.append(self.expect_id())
        self.expect("]")
        names = [v.text for v in variables]
        for v in variables:
            if v.text in KEYWORDS or v.text == "F":
                self.error("reserved word used as a variable", v)
            if names.count(v.text) > 1:
                self.error("duplicate variable", v)
        try:
            ring = PolyRing(tuple(names), prime)
        except ValueError as exc:
            self.error(str(exc), ptok)
        relations = ()
        if self.at("/"):
            self.advance()
            self.expect("(")
            relations = tuple(self.poly_list(ring))
            self.expect(")")
        self.session.rings[name.text] = RingDecl(name.text, prime, tuple(names), relations)
        self.session.order.append(("ring", name.text))
        self.current_ring = name.text

    def need_ring(self) -> str:
        if self.current_ring is None:
            self.error("no ring declared yet")
        return self.current_ring

    def ideal_decl(self):
        self.advance()
        name = self.expect_id()
        self._declare("ideals", name)
        self.expect("=")
        expr = self.ideal_expr(allow_name=False)
        self.session.ideals[name.text] = IdealDecl(name.text, expr)
        self.session.order.append(("ideal", name.text))

    def ideal_expr(self, allow_name: bool = True, ring: str | None = None) -> IdealExpr:
        t = self.tok
        if self.at("maxideal"):
            self.advance()
            self.expect("(")
            rt = self.expect_id()
            if rt.text not in self.session.rings:
                self.error("unknown ring", rt)
            self.expect(")")
            if ring is not None and rt.text != ring:
                self.error("ideal belongs to a different ring", rt)
            return IdealExpr("maxideal", rt.text)
        if self.at("("):
            rname = ring or self.need_ring()
            self.advance()
            gens = tuple(self.poly_list(self.session.poly_ring(rname)))
            self.expect(")")
            return IdealExpr("explicit", rname, gens=gens)
        if allow_name and t.kind == "id":
            self.advance()
            decl = self.session.ideals.get(t.text)
            if decl is None:
                self.error("unknown ideal", t)
            if ring is not None and decl.expr.ring != ring:
                self.error("ideal belongs to a different ring", t)
            return IdealExpr("name", decl.expr.ring, name=t.text)
        self.error("expected an ideal")

    def filtration_decl(self):
        self.advance()
        name = self.expect_id()
        self._declare("filtrations", name)
        self.expect("=")
        kind = self.expect_id()
        if kind.text in ("adic", "rr"):
            self.expect("(")
            base = self.ideal_expr()
            self.expect(")")
            decl = FiltrationDecl(name.text, base.ring, kind.text, base=base)
        elif kind.text == "table":
            self.expect("(")
            first = self.ideal_expr()
            ideals = [first]
            while self.at(","):
                self.advance()
                ideals.append(self.ideal_expr(ring=first.ring))
            self.expect(";")
            q = self.expect_id()
            if q.text != "Q":
                self.error("expected 'Q='", q)
            self.expect("=")
            Q = self.ideal_expr(ring=first.ring)
            self.expect(",")
            rt = self.expect_id()
            if rt.text != "r":
                self.error("expected 'r='", rt)
            self.expect("=")
            r = self.expect_int()
            self.expect(")")
            decl = FiltrationDecl(name.text, first.ring, "table", ideals=tuple(ideals), Q=Q, r=r)
        else:
            self.error("expected adic, table or rr", kind)
        self.session.filtrations[name.text] = decl
        self.session.order.append(("filtration", name.text))

    def command(self):
        verb = self.advance()
        v = verb.text
        if v == "certify":
            b = self.expect_id()
            if b.text != "buchsbaum":
                self.error("expected 'buchsbaum'", b)
        target = self.expect_id()
        if v in FILTRATION_COMMANDS:
            if target.text not in self.session.filtrations:
                self.error("unknown filtration", target)
        elif target.text not in self.session.rings:
            self.error("unknown ring", target)
        kw: dict = {}
        if v == "hilbert":
            kw["count"] = self.expect_int()
        elif v == "invariant":
            kw["ideal"] = self.ideal_expr(ring=target.text)
        elif v == "dseq":
            self.expect("(")
            kw["polys"] = tuple(self.poly_list(self.session.poly_ring(target.text)))
            self.expect(")")
        self.session.commands.append(Command(v, target.text, line=verb.line, col=verb.col, **kw))

    # polynomials
    def poly_list(self, ring: PolyRing) -> list:
        out = [self.poly(ring)]
        while self.at(","):
            self.advance()
            out.append(self.poly(ring))
        return out

    def poly(self, ring: PolyRing) -> Polynomial:
        neg = False
        if self.at("-"):
            self.advance()
            neg = True
        elif self.at("+"):
            self.advance()
        acc = self.product(ring)
        if neg:
            acc = -acc
        while self.at("+") or self.at("-"):
            op = self.advance().text
            t = self.product(ring)
            acc = acc + t if op == "+" else acc - t
        return acc

    def product(self, ring: PolyRing) -> Polynomial:
        acc = self.power(ring)
        while self.at("*"):
            self.advance()
            acc = acc * self.power(ring)
        return acc

    def power(self, ring: PolyRing) -> Polynomial:
        base = self.atom(ring)
        if self.at("^"):
            self.advance()
            base = base ** self.expect_int()
        return base

    def atom(self, ring: PolyRing) -> Polynomial:
        t = self.tok
        if t.kind == "int":
            self.advance()
            return ring.const(int(t.text))
        if t.kind == "id":
            if t.text not in ring.variables:
                self.error("unknown variable", t)
            self.advance()
            return ring.var(t.text)
        if self.at("("):
            self.advance()
            inner = self.poly(ring)
            self.expect(")")
            return inner
        if self.at("-"):
            self.advance()
            return -self.atom(ring)
        self.error("expected a polynomial")


def parse_session(text: str, prime: int | None = None) -> Session:
    return _Parser(text, prime).parse()


def parse_polynomial(text: str, ring: PolyRing) -> Polynomial:
    p = _Parser(text, None)
    f = p.poly(ring)
    if p.tok.kind != "eof":
        p.error("trailing input after polynomial")
    return f


# --- pretty printing ----------------------------------------------------------------------

def _fmt_expr(e: IdealExpr) -> str:
    if e.kind == "maxideal":
        return f"maxideal({e.ring})"
    if e.kind == "name":
        return e.name
    return "(" + ", ".join(map(str, e.gens)) + ")"


def format_session(S: Session) -> str:
    """Source text that parses back to an equal session."""
    lines = []
    for kind, name in S.order:
        if kind == "ring":
            d = S.rings[name]
            rel = f" / ({', '.join(map(str, d.relations))})" if d.relations else ""
            lines.append(f"ring {name} = F({d.prime})[{','.join(d.variables)}]{rel};")
        elif kind == "ideal":
            d = S.ideals[name]
            lines.append(f"ideal {name} = {_fmt_expr(d.expr)};")
        else:
            d = S.filtrations[name]
            if d.kind == "table":
                body = ", ".join(_fmt_expr(e) for e in d.ideals)
                lines.append(f"filtration {name} = table({body}; Q={_fmt_expr(d.Q)}, r={d.r});")
            else:
                lines.append(f"filtration {name} = {d.kind}({_fmt_expr(d.base)});")
    # commands keep their own ring context, so emit them after declarations
    for c in S.commands:
        if c.verb == "certify":
            lines.append(f"certify buchsbaum {c.target};")
        elif c.verb == "hilbert":
            lines.append(f"hilbert {c.target} {c.count};")
        elif c.verb == "invariant":
            lines.append(f"invariant {c.target} {_fmt_expr(c.ideal)};")
        elif c.verb == "dseq":
            lines.append(f"dseq {c.target} ({', '.join(map(str, c.polys))});")
        else:
            lines.append(f"{c.verb} {c.target};")
    return "\n".join(lines) + ("\n" if lines else "")
