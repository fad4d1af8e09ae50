"""Exact arithmetic over a prime field: scalars, monomials, orders, polynomials.

Monomials are plain exponent tuples. A :class:`Polynomial` keeps its terms in a
dict keyed by exponent tuple; the sorted term list is derived on demand in the
ring's working order (degrevlex unless stated otherwise).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

DEFAULT_PRIME = 32003

Monomial = tuple  # tuple[int, ...] of exponents, one per ring variable


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldElem:
    """An element of F_p."""

    value: int
    p: int = DEFAULT_PRIME

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.p)

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElem):
            if other.p != self.p:
                raise ValueError(f"field mismatch: F_{self.p} vs F_{other.p}")
            return other.value
        if isinstance(other, int):
            return other % self.p
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FieldElem(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FieldElem(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FieldElem(o - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FieldElem(self.value * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElem(-self.value, self.p)

    def inverse(self) -> FieldElem:
        if self.value == 0:
            raise ZeroDivisionError("inverse of zero in a prime field")
        return FieldElem(pow(self.value, self.p - 2, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * FieldElem(o, self.p).inverse()

    def __int__(self):
        return self.value


def inv_mod(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroDivisionError("inverse of zero in a prime field")
    return pow(a, p - 2, p)


# --- monomials ---------------------------------------------------------------

def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True when a | b."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(b: Monomial, a: Monomial) -> Monomial:
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x if x > y else y for x, y in zip(a, b))


def mono_gcd(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x if x < y else y for x, y in zip(a, b))


def mono_coprime(a: Monomial, b: Monomial) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def monomials_of_degree(nvars: int, deg: int) -> Iterator[Monomial]:
    """All exponent vectors of total degree ``deg``, lexicographically descending."""
    if nvars == 0:
        if deg == 0:
            yield ()
        return
    if nvars == 1:
        yield (deg,)
        return
    for first in range(deg, -1, -1):
        for rest in monomials_of_degree(nvars - 1, deg - first):
            yield (first,) + rest


# --- orders ------------------------------------------------------------------

@dataclass(frozen=True)
class MonomialOrder:
    """``degrevlex`` or ``elim`` (block order eliminating the first ``k`` variables).

    ``key(m)`` maps a monomial to a tuple whose natural ordering is the
    monomial order; larger key means larger monomial.
    """

    kind: str = "degrevlex"
    k: int = 0

    def __post_init__(self):
        if self.kind not in ("degrevlex", "elim"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "elim" and self.k < 1:
            raise ValueError("elimination order needs k >= 1")

    @property
    def key(self):
        return _order_key(self.kind, self.k)

    def compare(self, m1: Monomial, m2: Monomial) -> int:
        if len(m1) != len(m2):
            raise ValueError("variable count mismatch")
        k1, k2 = self.key(m1), self.key(m2)
        return (k1 > k2) - (k1 < k2)

    def is_degree_compatible(self) -> bool:
        return self.kind == "degrevlex"


DEGREVLEX = MonomialOrder()


def elimination(k: int) -> MonomialOrder:
    return MonomialOrder("elim", k)


def _revlex(m):
    return (sum(m),) + tuple(-e for e in reversed(m))


@lru_cache(maxsize=None)
def _order_key(kind: str, k: int):
    if kind == "degrevlex":
        @lru_cache(maxsize=1 << 18)
        def key(m):
            return _revlex(m)
    else:
        @lru_cache(maxsize=1 << 18)
        def key(m):
            return _revlex(m[:k]) + _revlex(m[k:])
    return key


def compare(m1: Monomial, m2: Monomial, order: MonomialOrder = DEGREVLEX) -> int:
    """-1, 0 or 1 as ``m1`` is smaller than, equal to, or greater than ``m2``."""
    return order.compare(m1, m2)


# --- rings and polynomials ---------------------------------------------------

@dataclass(frozen=True)
class PolyRing:
    variables: tuple
    p: int = DEFAULT_PRIME

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variable names")

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    def one(self) -> Polynomial:
        return self.const(1)

    def const(self, c: int) -> Polynomial:
        return Polynomial(self, {(0,) * self.nvars: c})

    def var(self, name_or_index) -> Polynomial:
        i = name_or_index if isinstance(name_or_index, int) else self.variables.index(name_or_index)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): 1})

    def gens(self) -> list[Polynomial]:
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, exps, coeff: int = 1) -> Polynomial:
        exps = tuple(exps)
        if len(exps) != self.nvars:
            raise ValueError("exponent vector has wrong length")
        return Polynomial(self, {exps: coeff})

    def extend(self, names, front: bool = True) -> PolyRing:
        names = tuple(names)
        vs = names + self.variables if front else self.variables + names
        return PolyRing(vs, self.p)

    def __str__(self):
        return f"F({self.p})[{','.join(self.variables)}]"


class Polynomial:
    """A polynomial over F_p in canonical form (no zero coefficients)."""

    __slots__ = ("ring", "_d", "_hash")

    def __init__(self, ring: PolyRing, terms: Mapping[Monomial, int] | Iterable = ()):
        self.ring = ring
        p = ring.p
        items = terms.items() if isinstance(terms, Mapping) else terms
        d = {}
        n = ring.nvars
        for m, c in items:
            m = tuple(m)
            if len(m) != n:
                raise ValueError("exponent vector has wrong length")
            c = (d.get(m, 0) + int(c)) % p
            if c:
                d[m] = c
            else:
                d.pop(m, None)
        self._d = d
        self._hash = None

    @classmethod
    def _raw(cls, ring: PolyRing, d: dict) -> Polynomial:
        """Wrap an already-canonical dict without copying."""
        obj = cls.__new__(cls)
        obj.ring = ring
        obj._d = d
        obj._hash = None
        return obj

    # -- inspection --
    @property
    def coeffs(self) -> dict:
        return dict(self._d)

    def terms(self, order: MonomialOrder = DEGREVLEX) -> list:
        """``(monomial, coefficient)`` pairs in descending order."""
        return sorted(self._d.items(), key=lambda t: order.key(t[0]), reverse=True)

    def is_zero(self) -> bool:
        return not self._d

    def __bool__(self):
        return bool(self._d)

    def __len__(self):
        return len(self._d)

    def lm(self, order: MonomialOrder = DEGREVLEX) -> Monomial:
        if not self._d:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self._d, key=order.key)

    def lc(self, order: MonomialOrder = DEGREVLEX) -> int:
        return self._d[self.lm(order)]

    def degree(self) -> int:
        return max((sum(m) for m in self._d), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self._d}) <= 1

    def is_monomial(self) -> bool:
        return len(self._d) == 1

    def is_constant(self) -> bool:
        return all(not any(m) for m in self._d)

    def monic(self, order: MonomialOrder = DEGREVLEX) -> Polynomial:
        if not self._d:
            return self
        return self.scale(inv_mod(self.lc(order), self.ring.p))

    def homogeneous_parts(self) -> dict:
        parts: dict = {}
        for m, c in self._d.items():
            parts.setdefault(sum(m), {})[m] = c
        return {k: Polynomial._raw(self.ring, v) for k, v in parts.items()}

    # -- arithmetic --
    def _check(self, other):
        if isinstance(other, int):
            return self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        if other.ring != self.ring:
            raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return Polynomial._raw(self.ring, _add(self._d, other._d, 1, self.ring.p))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return Polynomial._raw(self.ring, _add(self._d, other._d, -1, self.ring.p))

    def __rsub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        p = self.ring.p
        return Polynomial._raw(self.ring, {m: p - c for m, c in self._d.items()})

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return Polynomial._raw(self.ring, _mul(self._d, other._d, self.ring.p))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c: int) -> Polynomial:
        p = self.ring.p
        c %= p
        if c == 0:
            return self.ring.zero()
        return Polynomial._raw(self.ring, {m: v * c % p for m, v in self._d.items()})

    def mul_term(self, mono: Monomial, c: int) -> Polynomial:
        p = self.ring.p
        return Polynomial._raw(
            self.ring, {mono_mul(m, mono): v * c % p for m, v in self._d.items()}
        )

    # -- ring changes --
    def embed(self, ring: PolyRing, positions) -> Polynomial:
        """Send variable i to variable ``positions[i]`` of ``ring``."""
        n = ring.nvars
        out = {}
        for m, c in self._d.items():
            e = [0] * n
            for i, k in enumerate(m):
                e[positions[i]] += k
            out[tuple(e)] = c
        return Polynomial(ring, out)

    def substitute(self, values: Mapping[int, Polynomial]) -> Polynomial:
        """Replace variable index ``i`` by ``values[i]`` (others kept)."""
        ring = self.ring
        result = ring.zero()
        for m, c in self._d.items():
            term = ring.const(c)
            keep = list(m)
            for i, v in values.items():
                if m[i]:
                    term = term * v ** m[i]
                    keep[i] = 0
            result = result + term.mul_term(tuple(keep), 1)
        return result

    # -- identity --
    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self._d == other._d

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._d.items())))
        return self._hash

    def __repr__(self):
        return f"Polynomial({self})"

    def __str__(self):
        return format_poly(self)


def _add(a: dict, b: dict, sign: int, p: int) -> dict:
    out = dict(a)
    for m, c in b.items():
        v = (out.get(m, 0) + sign * c) % p
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def _mul(a: dict, b: dict, p: int) -> dict:
    out: dict = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = tuple(x + y for x, y in zip(m1, m2))
            out[m] = (out.get(m, 0) + c1 * c2) % p
    return {m: c for m, c in out.items() if c}


def poly_arith(f: Polynomial, g: Polynomial, op: str) -> Polynomial:
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown operation {op!r}")


def format_monomial(m: Monomial, names) -> str:
    parts = []
    for name, e in zip(names, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_poly(f: Polynomial, order: MonomialOrder = DEGREVLEX) -> str:
    """Canonical text: descending terms, explicit coefficients in ``[0, p)``.

    A coefficient of 1 is omitted in front of non-constant monomials, so
    ``x^2 + 32002*y`` rather than ``1*x^2 + ...``.
    """
    if f.is_zero():
        return "0"
    names = f.ring.variables
    out = []
    for m, c in f.terms(order):
        mon = format_monomial(m, names)
        if not mon:
            out.append(str(c))
        elif c == 1:
            out.append(mon)
        else:
            out.append(f"{c}*{mon}")
    return " + ".join(out)
