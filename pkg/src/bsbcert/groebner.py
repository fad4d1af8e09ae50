"""Buchberger's algorithm and ideal arithmetic in a free polynomial ring.

Pair handling follows Gebauer-Moeller (product and chain criteria); pairs are
selected by sugar degree, ties broken by the lcm in the working order and then
by basis index, so results never depend on hash ordering.  Reduced bases are
unique, which makes every derived quantity reproducible.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass
from functools import lru_cache

from .kernel import (
    DEGREVLEX,
    MonomialOrder,
    PolyRing,
    Polynomial,
    elimination,
    inv_mod,
    mono_coprime,
    mono_div,
    mono_divides,
    mono_lcm,
    monomials_of_degree,
)

SATURATION_CAP = 50


class GroebnerError(ArithmeticError):
    pass


class NotArtinianError(GroebnerError):
    """Raised when a colength is requested for a positive-dimensional ideal."""


# --- core algorithm on dict polynomials ----------------------------------------

def _reduce(f: dict, basis: list, key, p: int, full: bool = True) -> dict:
    """Normal form of ``f`` modulo monic ``basis`` entries ``(lm, poly_dict)``."""
    f = dict(f)
    rem = {}
    while f:
        m = max(f, key=key)
        c = f[m]
        for lmg, g in basis:
            if all(a <= b for a, b in zip(lmg, m)):
                q = tuple(b - a for a, b in zip(lmg, m))
                for gm, gc in g.items():
                    t = tuple(x + y for x, y in zip(gm, q))
                    v = (f.get(t, 0) - c * gc) % p
                    if v:
                        f[t] = v
                    else:
                        f.pop(t, None)
                break
        else:
            if not full:
                rem.update(f)
                return rem
            rem[m] = c
            del f[m]
    return rem


def _monic(f: dict, key, p: int):
    lm = max(f, key=key)
    c = inv_mod(f[lm], p)
    if c != 1:
        f = {m: v * c % p for m, v in f.items()}
    return lm, f


def _spoly(a, b, p):
    (la, fa), (lb, fb) = a, b
    lcm = mono_lcm(la, lb)
    qa, qb = mono_div(lcm, la), mono_div(lcm, lb)
    out = {}
    for m, c in fa.items():
        out[tuple(x + y for x, y in zip(m, qa))] = c
    for m, c in fb.items():
        t = tuple(x + y for x, y in zip(m, qb))
        v = (out.get(t, 0) - c) % p
        if v:
            out[t] = v
        else:
            out.pop(t, None)
    return out


def buchberger(polys: list, order: MonomialOrder, p: int) -> list:
    """Reduced Groebner basis of dict polynomials; returns ``[(lm, dict)]`` descending."""
    key = order.key
    entries = []  # (lm, dict)
    sugar = []
    active: list[int] = []
    pairs: list = []  # (sugar, lcm key, i, j, lcm)

    def update(h: int):
        nonlocal pairs, active
        lh = entries[h][0]
        cands = [(g, mono_lcm(lh, entries[g][0])) for g in active]
        kept = []
        for idx, (g1, l1) in enumerate(cands):
            if mono_coprime(lh, entries[g1][0]):
                kept.append((g1, l1))
                continue
            rest = cands[idx + 1:]
            if any(mono_divides(l2, l1) for _, l2 in rest) or any(
                mono_divides(l2, l1) for _, l2 in kept
            ):
                continue
            kept.append((g1, l1))
        new_pairs = []
        for pr in pairs:
            _, _, i, j, l12 = pr
            if (
                not mono_divides(lh, l12)
                or mono_lcm(entries[i][0], lh) == l12
                or mono_lcm(entries[j][0], lh) == l12
            ):
                new_pairs.append(pr)
        for g, l in kept:
            if mono_coprime(lh, entries[g][0]):
                continue
            sg = max(
                sugar[g] + sum(l) - sum(entries[g][0]),
                sugar[h] + sum(l) - sum(lh),
            )
            new_pairs.append((sg, key(l), g, h, l))
        pairs = new_pairs
        active = [g for g in active if not mono_divides(lh, entries[g][0])] + [h]

    def add(lm_f, s):
        entries.append(lm_f)
        sugar.append(s)
        update(len(entries) - 1)

    def basis():
        return [entries[g] for g in active]

    # inputs: reduce against what we have, in ascending order for fewer steps
    inputs = [f for f in polys if f]
    inputs.sort(key=lambda f: key(max(f, key=key)))
    for f in inputs:
        r = _reduce(f, basis(), key, p)
        if not r:
            continue
        lm, r = _monic(r, key, p)
        if not any(lm):
            return [(lm, {lm: 1})]
        add((lm, r), max(sum(m) for m in f))

    while pairs:
        best = min(range(len(pairs)), key=lambda i: pairs[i][:4])
        s, _, i, j, _ = pairs.pop(best)
        h = _spoly(entries[i], entries[j], p)
        h = _reduce(h, basis(), key, p)
        if not h:
            continue
        lm, h = _monic(h, key, p)
        if not any(lm):
            return [(lm, {lm: 1})]
        add((lm, h), s)

    G = basis()
    G.sort(key=lambda e: key(e[0]), reverse=True)
    reduced = []
    for idx, (lm, g) in enumerate(G):
        others = G[:idx] + G[idx + 1:]
        tail = {m: c for m, c in g.items() if m != lm}
        tail = _reduce(tail, others, key, p)
        tail[lm] = 1
        reduced.append((lm, tail))
    return reduced


# --- public types ----------------------------------------------------------------

@dataclass(frozen=True)
class GroebnerBasis:
    """A reduced Groebner basis; ``generators`` sorted by descending leading monomial."""

    ring: PolyRing
    order: MonomialOrder
    generators: tuple
    leading_monomials: tuple

    @property
    def is_unit(self) -> bool:
        return len(self.leading_monomials) == 1 and not any(self.leading_monomials[0])

    @property
    def is_zero(self) -> bool:
        return not self.generators

    def _pairs(self):
        return [(lm, g._d) for lm, g in zip(self.leading_monomials, self.generators)]

    def reduce(self, f: Polynomial) -> Polynomial:
        if f.ring != self.ring:
            raise ValueError("ring mismatch")
        return Polynomial._raw(self.ring, _reduce(f._d, self._pairs(), self.order.key, self.ring.p))

    def contains(self, f: Polynomial) -> bool:
        return self.reduce(f).is_zero()

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)


def _canon_gens(ring, gens) -> tuple:
    seen = {}
    for g in gens:
        if g.ring != ring:
            raise ValueError(f"ring mismatch: {g.ring} vs {ring}")
        if g:
            g = g.monic()
            seen.setdefault(g, None)
    return tuple(seen)


@lru_cache(maxsize=4096)
def _cached_gb(ring: PolyRing, gens: frozenset, order: MonomialOrder) -> GroebnerBasis:
    raw = buchberger([g._d for g in sorted(gens, key=str)], order, ring.p)
    polys = tuple(Polynomial._raw(ring, d) for _, d in raw)
    return GroebnerBasis(ring, order, polys, tuple(lm for lm, _ in raw))


class Ideal:
    """An ideal of a free polynomial ring, given by generators.

    Groebner bases are cached per order; the cache is filled atomically so the
    object can be shared between threads.
    """

    __slots__ = ("ring", "gens", "_gb", "_lock")

    def __init__(self, ring: PolyRing, gens=()):
        self.ring = ring
        self.gens = _canon_gens(ring, gens)
        self._gb = {}
        self._lock = threading.Lock()

    def groebner(self, order: MonomialOrder = DEGREVLEX) -> GroebnerBasis:
        gb = self._gb.get(order)
        if gb is None:
            gb = _cached_gb(self.ring, frozenset(self.gens), order)
            with self._lock:
                self._gb.setdefault(order, gb)
        return gb

    def contains(self, f: Polynomial) -> bool:
        return self.groebner().contains(f)

    def is_unit(self) -> bool:
        return self.groebner().is_unit

    def is_zero(self) -> bool:
        return not self.gens

    def is_monomial(self) -> bool:
        return all(g.is_monomial() for g in self.gens)

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.gens)

    def __add__(self, other: Ideal) -> Ideal:
        return ideal_combine(self, other, "sum")

    def __mul__(self, other: Ideal) -> Ideal:
        return ideal_combine(self, other, "product")

    def power(self, n: int) -> Ideal:
        if n < 0:
            raise ValueError("negative power")
        result = Ideal(self.ring, [self.ring.one()])
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return ideal_equals(self, other)

    def __hash__(self):
        return hash((self.ring, self.groebner().generators))

    def __repr__(self):
        return f"Ideal({', '.join(map(str, self.gens))})"


FreeIdeal = Ideal


def groebner_basis(I: Ideal, order: MonomialOrder = DEGREVLEX) -> GroebnerBasis:
    return I.groebner(order)


def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    return G.reduce(f)


def ideal_combine(I: Ideal, J: Ideal, op: str) -> Ideal:
    if I.ring != J.ring:
        raise ValueError("ring mismatch")
    if op == "sum":
        return Ideal(I.ring, I.gens + J.gens)
    if op == "product":
        return Ideal(I.ring, [f * g for f in I.gens for g in J.gens])
    raise ValueError(f"unknown ideal operation {op!r}")


def _minimal_monomials(monos) -> list:
    out = []
    for m in sorted(set(monos), key=sum):
        if not any(mono_divides(a, m) for a in out):
            out.append(m)
    return out


def _monomial_ideal(ring, monos) -> Ideal:
    return Ideal(ring, [ring.monomial(m) for m in _minimal_monomials(monos)])


def ideal_intersection(I: Ideal, J: Ideal) -> Ideal:
    """I cap J by eliminating t from t*I + (1-t)*J."""
    ring = I.ring
    if ring != J.ring:
        raise ValueError("ring mismatch")
    if I.is_zero() or J.is_zero():
        return Ideal(ring)
    if I.is_unit():
        return J
    if J.is_unit():
        return I
    if I.is_monomial() and J.is_monomial():
        lms = [mono_lcm(f.lm(), g.lm()) for f in I.gens for g in J.gens]
        return _monomial_ideal(ring, lms)
    big = ring.extend(("_t",))
    pos = list(range(1, ring.nvars + 1))
    t = big.var(0)
    gens = [t * f.embed(big, pos) for f in I.gens]
    gens += [(1 - t) * g.embed(big, pos) for g in J.gens]
    gb = Ideal(big, gens).groebner(elimination(1))
    keep = [
        Polynomial._raw(ring, {m[1:]: c for m, c in g._d.items()})
        for lm, g in zip(gb.leading_monomials, gb.generators)
        if lm[0] == 0
    ]
    return Ideal(ring, keep)


def exact_divide(f: Polynomial, g: Polynomial) -> Polynomial:
    """f / g, raising when g does not divide f."""
    key = DEGREVLEX.key
    ring = f.ring
    p = ring.p
    lg = g.lm()
    inv = inv_mod(g._d[lg], p)
    rem = dict(f._d)
    quot = {}
    while rem:
        m = max(rem, key=key)
        if not mono_divides(lg, m):
            raise GroebnerError("inexact division")
        q = mono_div(m, lg)
        c = rem[m] * inv % p
        quot[q] = c
        for gm, gc in g._d.items():
            t = tuple(x + y for x, y in zip(gm, q))
            v = (rem.get(t, 0) - c * gc) % p
            if v:
                rem[t] = v
            else:
                rem.pop(t, None)
    return Polynomial._raw(ring, quot)


def colon_element(I: Ideal, f: Polynomial) -> Ideal:
    ring = I.ring
    if f.is_zero():
        return Ideal(ring, [ring.one()])
    if f.is_constant() or I.is_zero():
        return I
    if I.contains(f):
        return Ideal(ring, [ring.one()])
    if f.is_monomial() and I.is_monomial():
        m = f.lm()
        return _monomial_ideal(ring, [tuple(max(a - b, 0) for a, b in zip(g.lm(), m)) for g in I.gens])
    inter = ideal_intersection(I, Ideal(ring, [f]))
    return Ideal(ring, [exact_divide(h, f) for h in inter.gens])


def ideal_colon(I: Ideal, J: Ideal) -> Ideal:
    """(I : J) as the intersection of (I : f) over generators f of J."""
    if I.ring != J.ring:
        raise ValueError("ring mismatch")
    if J.is_zero():
        raise GroebnerError("colon by the zero ideal")
    result = None
    # cheap colons first keep intermediate intersections small
    for f in sorted(J.gens, key=lambda g: (len(g), g.degree(), str(g))):
        part = colon_element(I, f)
        if part.is_unit():
            continue
        result = part if result is None else ideal_intersection(result, part)
    return result if result is not None else Ideal(I.ring, [I.ring.one()])


def ideal_saturation(I: Ideal, J: Ideal, cap: int = SATURATION_CAP) -> tuple[Ideal, int]:
    """(I : J^inf) and the first k with (I : J^(k+1)) = (I : J^k)."""
    current = I
    for k in range(cap + 1):
        nxt = ideal_colon(current, J)
        if ideal_equals(nxt, current):
            return current, k
        current = nxt
    raise GroebnerError(f"saturation did not stabilise within {cap} steps")


def ideal_equals(I: Ideal, J: Ideal) -> bool:
    if I.ring != J.ring:
        raise ValueError("ring mismatch")
    gi, gj = I.groebner(), J.groebner()
    return gi.generators == gj.generators


def ideal_contains(I: Ideal, J: Ideal) -> bool:
    """J subset of I."""
    gb = I.groebner()
    return all(gb.contains(f) for f in J.gens)


def krull_dimension(I: Ideal) -> int:
    """dim P/I from the leading-monomial ideal; the unit ideal gives -1."""
    gb = I.groebner()
    if gb.is_unit:
        return -1
    n = I.ring.nvars
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in gb.leading_monomials]
    for size in range(n, -1, -1):
        for S in itertools.combinations(range(n), size):
            s = frozenset(S)
            if not any(sup <= s for sup in supports):
                return size
    return 0


def standard_monomials(gb: GroebnerBasis) -> list:
    """Monomials outside the leading-term ideal; requires a zero-dimensional ideal."""
    n = gb.ring.nvars
    lms = gb.leading_monomials
    if gb.is_unit:
        return []
    for i in range(n):
        if not any(m[i] > 0 and sum(m) == m[i] for m in lms):
            raise NotArtinianError("ideal is not zero-dimensional")
    seen = {(0,) * n}
    frontier = [(0,) * n]
    while frontier:
        nxt = []
        for m in frontier:
            for i in range(n):
                e = list(m)
                e[i] += 1
                e = tuple(e)
                if e in seen or any(mono_divides(l, e) for l in lms):
                    continue
                seen.add(e)
                nxt.append(e)
        frontier = nxt
    return sorted(seen, key=DEGREVLEX.key)


def artinian_length(I: Ideal) -> int:
    """dim_k P/I for a zero-dimensional ideal I."""
    return len(standard_monomials(I.groebner()))


def hilbert_function_value(gb: GroebnerBasis, t: int) -> int:
    """dim_k (P/I)_t; valid for homogeneous I with a degree-compatible order."""
    if t < 0:
        return 0
    lms = gb.leading_monomials
    return sum(
        1
        for m in monomials_of_degree(gb.ring.nvars, t)
        if not any(mono_divides(l, m) for l in lms)
    )
