"""Graded quotient rings A = P/J, treated as local rings at the irrelevant ideal.

For homogeneous data the colength of an m-primary ideal in the graded ring is
the same as its length after localizing at m, so every length here is a
standard-monomial count.  Inhomogeneous ideals are accepted only when they are
m-primary in P/J, which is checked by nilpotency of the variables.
"""

from __future__ import annotations

import threading
from functools import cached_property

from .groebner import (
    GroebnerError,
    Ideal,
    NotArtinianError,
    artinian_length,
    hilbert_function_value,
    ideal_contains,
    ideal_equals,
    ideal_saturation,
    krull_dimension,
)
from .kernel import PolyRing, Polynomial


class QuotientError(ValueError):
    pass


class NotPrimaryError(QuotientError):
    """The ideal is not primary to the maximal ideal."""


class QuotientRing:
    """A = ambient / defining, with the defining ideal homogeneous."""

    def __init__(self, ambient: PolyRing, defining=(), require_positive_dim: bool = True):
        if isinstance(defining, Ideal):
            defining = defining.gens
        self.ambient = ambient
        self.defining = Ideal(ambient, defining)
        if not self.defining.is_homogeneous():
            raise QuotientError("defining ideal must be homogeneous")
        if self.defining.is_unit():
            raise QuotientError("defining ideal is the unit ideal")
        if require_positive_dim and self.dim <= 0:
            raise QuotientError(f"ring has dimension {self.dim}; need d > 0")
        self._lock = threading.Lock()

    @cached_property
    def dim(self) -> int:
        return krull_dimension(self.defining)

    @property
    def p(self) -> int:
        return self.ambient.p

    @cached_property
    def maximal_ideal(self) -> IdealHandle:
        return IdealHandle(self, self.ambient.gens())

    def unit_ideal(self) -> IdealHandle:
        return IdealHandle(self, [self.ambient.one()])

    def ideal(self, gens) -> IdealHandle:
        return IdealHandle(self, gens)

    def reduce(self, f: Polynomial) -> Polynomial:
        return self.defining.groebner().reduce(f)

    def quotient(self, extra, require_positive_dim: bool = False) -> QuotientRing:
        """The ring A/(extra)."""
        return QuotientRing(
            self.ambient, self.defining.gens + tuple(extra), require_positive_dim
        )

    def describe(self) -> dict:
        return {
            "prime": self.p,
            "variables": list(self.ambient.variables),
            "relations": [str(g) for g in self.defining.gens],
        }

    def __eq__(self, other):
        if not isinstance(other, QuotientRing):
            return NotImplemented
        return self.ambient == other.ambient and ideal_equals(self.defining, other.defining)

    def __hash__(self):
        return hash((self.ambient, self.defining.groebner().generators))

    def __repr__(self):
        rel = ", ".join(map(str, self.defining.gens))
        return f"{self.ambient}/({rel})" if rel else str(self.ambient)


class IdealHandle:
    """An ideal of A given by preimage generators in P; J is adjoined on use."""

    __slots__ = ("ring", "preimage", "_full")

    def __init__(self, ring: QuotientRing, gens=()):
        self.ring = ring
        if isinstance(gens, Ideal):
            gens = gens.gens
        gb = ring.defining.groebner()
        reduced = [gb.reduce(g) for g in gens]
        self.preimage = Ideal(ring.ambient, [g for g in reduced if g])
        self._full = None

    @property
    def gens(self) -> tuple:
        return self.preimage.gens

    @property
    def full(self) -> Ideal:
        """preimage + J as an ideal of P."""
        if self._full is None:
            self._full = Ideal(self.ring.ambient, self.preimage.gens + self.ring.defining.gens)
        return self._full

    def is_unit(self) -> bool:
        return self.full.is_unit()

    def is_zero(self) -> bool:
        return not self.preimage.gens

    def is_homogeneous(self) -> bool:
        return self.preimage.is_homogeneous()

    def contains(self, f: Polynomial) -> bool:
        return self.full.contains(f)

    def contains_ideal(self, other: IdealHandle) -> bool:
        return ideal_contains(self.full, other.preimage)

    def __add__(self, other: IdealHandle) -> IdealHandle:
        self._same_ring(other)
        return IdealHandle(self.ring, self.gens + other.gens)

    def __mul__(self, other: IdealHandle) -> IdealHandle:
        self._same_ring(other)
        return IdealHandle(self.ring, [f * g for f in self.gens for g in other.gens])

    def power(self, n: int) -> IdealHandle:
        result = self.ring.unit_ideal()
        for _ in range(n):
            result = result * self
        return result

    def _same_ring(self, other):
        if other.ring is not self.ring and other.ring != self.ring:
            raise QuotientError("ideals live in different rings")

    def __eq__(self, other):
        if not isinstance(other, IdealHandle):
            return NotImplemented
        return self.ring == other.ring and ideal_equals(self.full, other.full)

    def __hash__(self):
        return hash(self.full.groebner().generators)

    def __repr__(self):
        return f"({', '.join(map(str, self.gens))})"


def length(R: QuotientRing, I: IdealHandle) -> int:
    """ell_A(A/I) for an m-primary ideal I."""
    full = I.full
    try:
        n = artinian_length(full)
    except NotArtinianError:
        raise NotPrimaryError(f"{I!r} is not m-primary in {R!r}") from None
    if n and not I.is_homogeneous():
        gb = full.groebner()
        for v in R.ambient.gens():
            if not gb.contains(v ** n):
                raise NotPrimaryError(f"{I!r} has components away from the origin")
    return n


def _graded_length_difference(big: Ideal, small: Ideal, floor_degree: int) -> int:
    """sum_t dim (big/small)_t for homogeneous small <= big with big/small of finite length.

    Summation stops at the first degree >= floor_degree where the two
    Hilbert functions agree; past the generator degrees of ``big`` the
    quotient is generated in lower degrees, so it vanishes from there on.
    """
    gb_big, gb_small = big.groebner(), small.groebner()
    total = 0
    t = 0
    while True:
        diff = hilbert_function_value(gb_small, t) - hilbert_function_value(gb_big, t)
        if diff < 0:
            raise QuotientError("containment violated in degree %d" % t)
        total += diff
        if diff == 0 and t >= floor_degree:
            return total
        t += 1
        if t > 400:
            raise QuotientError("graded length did not terminate")


def h0_length(R: QuotientRing) -> tuple[int, IdealHandle]:
    """ell(U) and U = H^0_m(A) = (J : m^inf)/J."""
    J = R.defining
    sat, _ = ideal_saturation(J, Ideal(R.ambient, R.ambient.gens()))
    top = max((g.degree() for g in sat.groebner().generators), default=0)
    n = _graded_length_difference(sat, J, top)
    return n, IdealHandle(R, sat.gens)


def is_parameter_ideal(R: QuotientRing, gens) -> bool:
    gens = list(gens)
    if len(gens) != R.dim:
        return False
    if any(R.reduce(g).is_zero() or _constant_term(g) for g in gens):
        return False
    try:
        length(R, IdealHandle(R, gens))
    except NotPrimaryError:
        return False
    return True


def _constant_term(f: Polynomial) -> int:
    return f.coeffs.get((0,) * f.ring.nvars, 0)


def minimal_generator_count(R: QuotientRing, I: IdealHandle) -> int:
    """mu(I) = dim_k I/mI."""
    if any(_constant_term(g) for g in I.gens):
        raise QuotientError("ideal is not contained in the maximal ideal")
    if I.is_zero():
        return 0
    mI = R.maximal_ideal * I
    if I.is_homogeneous():
        top = max(g.degree() for g in I.gens)
        return _graded_length_difference(I.full, mI.full, top)
    try:
        return length(R, mI) - length(R, I)
    except NotPrimaryError:
        raise QuotientError("inhomogeneous ideal must be m-primary to count generators") from None


def depth_positive(R: QuotientRing) -> bool:
    return h0_length(R)[0] == 0


__all__ = [
    "GroebnerError",
    "IdealHandle",
    "NotPrimaryError",
    "QuotientError",
    "QuotientRing",
    "depth_positive",
    "h0_length",
    "is_parameter_ideal",
    "length",
    "minimal_generator_count",
]
