"""Hilbert-Samuel functions, coefficient fits, multiplicities and graded colengths.

Lengths over the associated graded ring are never computed from a
presentation of G; each graded piece I_k / (stuff + I_(k+1)) is a difference
of two colengths in A.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, prod

from .filtration import Filtration, adic
from .quotient import IdealHandle, QuotientRing, length

MULTIPLICITY_HORIZON = 40


class HilbertError(ArithmeticError):
    pass


@dataclass(frozen=True)
class HSFunction:
    """values[n] = ell(A/I_n) for n = 0..N."""

    values: tuple
    filtration: Filtration
    N: int

    def __getitem__(self, n):
        return self.values[n]


@dataclass(frozen=True)
class HilbertCoefficients:
    e: tuple
    fit_window: tuple
    verified: bool

    def polynomial(self, n: int) -> Fraction:
        return hilbert_polynomial(self.e, n)


def binom(x: int, k: int) -> Fraction:
    """Binomial coefficient as a polynomial in x (valid for negative x)."""
    if k < 0:
        return Fraction(0)
    num = 1
    for j in range(k):
        num *= x - j
    return Fraction(num, prod(range(1, k + 1)) if k else 1)


def hilbert_polynomial(e, n: int) -> Fraction:
    d = len(e) - 1
    return sum(((-1) ** i) * e[i] * binom(n + d - 1 - i, d - i) for i in range(d + 1))


def hs_function(F: Filtration, N: int, start: int = 0) -> HSFunction:
    """ell(A/I_n) for start <= n <= N; entries below ``start`` are None."""
    R = F.ring
    values = [None] * start + [length(R, F.ideal(n)) for n in range(start, N + 1)]
    return HSFunction(tuple(values), F, N)


def _solve(rows, rhs) -> list:
    """Exact Gaussian elimination over the rationals."""
    n = len(rows)
    M = [list(map(Fraction, r)) + [Fraction(b)] for r, b in zip(rows, rhs)]
    for col in range(n):
        piv = next((i for i in range(col, n) if M[i][col] != 0), None)
        if piv is None:
            raise HilbertError("singular fit system")
        M[col], M[piv] = M[piv], M[col]
        pv = M[col][col]
        M[col] = [v / pv for v in M[col]]
        for i in range(n):
            if i != col and M[i][col] != 0:
                f = M[i][col]
                M[i] = [a - f * b for a, b in zip(M[i], M[col])]
    return [M[i][n] for i in range(n)]


def hilbert_coefficients(H: HSFunction, d: int) -> HilbertCoefficients:
    """Fit e_0..e_d on the last d+1 values; the two values before them are held out."""
    N = H.N
    lo = N - d
    if lo - 2 < 1 or any(H.values[n] is None for n in range(lo - 2, N + 1)):
        raise HilbertError("horizon too short for a verified fit")
    window = range(lo, N + 1)
    rows = [[((-1) ** i) * binom(n + d - 1 - i, d - i) for i in range(d + 1)] for n in window]
    sol = _solve(rows, [H.values[n] for n in window])
    if any(s.denominator != 1 for s in sol):
        raise HilbertError("non-integral Hilbert coefficients; horizon too short")
    e = tuple(int(s) for s in sol)
    for n in (lo - 1, lo - 2):
        if hilbert_polynomial(e, n) != H.values[n]:
            raise HilbertError(f"fit fails at held-out n={n}; horizon too short")
    return HilbertCoefficients(e, (lo, N), True)


def default_horizon(d: int, r: int) -> int:
    return d * (r + 4) + 10


def fit_coefficients(F: Filtration, d: int, r: int = 0, N: int | None = None,
                     retries: int = 2) -> HilbertCoefficients:
    """Coefficients with horizon doubling on failure."""
    N = default_horizon(d, r) if N is None else N
    last = None
    for _ in range(retries + 1):
        try:
            return hilbert_coefficients(hs_function(F, N, start=max(0, N - d - 2)), d)
        except HilbertError as exc:
            last = exc
            N *= 2
    raise HilbertError(f"no verified fit up to horizon {N // 2}: {last}")


def _forward_difference(values, n: int, d: int) -> int:
    return sum(((-1) ** (d - j)) * comb(d, j) * values[n + j] for j in range(d + 1))


def multiplicity_parameter(R: QuotientRing, Q, horizon: int = MULTIPLICITY_HORIZON) -> int:
    """e(Q;A) as the stable d-th difference of n -> ell(A/Q^(n+1))."""
    gens = Q.gens if isinstance(Q, IdealHandle) else tuple(Q)
    d = len(gens)
    QI = IdealHandle(R, gens)
    power = QI
    values = []
    diffs = []
    for n in range(horizon + 1):
        values.append(length(R, power))
        power = power * QI
        k = len(values) - 1 - d
        if k >= 0:
            diffs.append(_forward_difference(values, k, d))
            if len(diffs) >= 3 and diffs[-1] == diffs[-2] == diffs[-3]:
                return diffs[-1]
    raise HilbertError(f"multiplicity did not stabilise within horizon {horizon}")


def _summand(F: Filtration, k: int, pieces) -> int:
    """ell(I_k / (sum_i b_i I_(k - s_i) + I_(k+1))) for pieces (b_i, s_i)."""
    R = F.ring
    Ik1 = F.ideal(k + 1)
    gens = list(Ik1.gens)
    for b, shift in pieces:
        if k - shift <= 0:
            gens.append(b)
        else:
            gens.extend(b * g for g in F.ideal(k - shift).gens)
    return length(R, IdealHandle(R, gens)) - length(R, F.ideal(k))


def _sum_graded(F: Filtration, pieces, d: int, forced: int | None, cap: int) -> int:
    total = 0
    zeros = 0
    k = 0
    while True:
        s = _summand(F, k, pieces)
        if s < 0:
            raise HilbertError("negative graded length; inputs are not nested")
        total += s
        zeros = zeros + 1 if s == 0 else 0
        if zeros >= max(d, 1) and (forced is None or k >= forced + d - 1):
            return total
        k += 1
        if k > cap:
            raise HilbertError("graded colength did not vanish within horizon")


def graded_colength(F: Filtration, gens, p: int, exps, r: int | None = None,
                    cap: int = 200) -> int:
    """ell(G / ((a_1 t^p)^(n_1), ..., (a_d t^p)^(n_d)) G).

    With a reduction number r for Q = (a_i) and p = 1 every summand with
    k >= r + d(max n - 1) + 1 vanishes; the sum runs past that point and
    then demands d consecutive zero summands.
    """
    gens = tuple(gens)
    exps = tuple(exps)
    if len(gens) != len(exps):
        raise HilbertError("one exponent per generator")
    pieces = [(a ** n, p * n) for a, n in zip(gens, exps)]
    forced = None
    if r is not None and p == 1:
        forced = r + len(gens) * (max(exps) - 1) + 1
    return _sum_graded(F, pieces, len(gens), forced, cap)


def graded_power_colength(F: Filtration, gens, p: int, n: int, r: int | None = None,
                          cap: int = 200) -> int:
    """ell(G / (a_1 t^p, ..., a_d t^p)^n G) = sum_k ell(I_k/(Q^n I_(k-np) + I_(k+1)))."""
    R = F.ring
    Qn = IdealHandle(R, gens).power(n)
    pieces = [(b, n * p) for b in Qn.gens]
    forced = r + n * p if r is not None and p == 1 else None
    return _sum_graded(F, pieces, len(gens), forced, cap)


def multiplicity_on_G(F: Filtration, gens, p: int = 1, r: int | None = None,
                      horizon: int = 12) -> int:
    """e((a_i t^p); G) by finite differences of graded_power_colength."""
    d = len(gens)
    values = []
    diffs = []
    for n in range(1, horizon + 1):
        values.append(graded_power_colength(F, gens, p, n, r))
        k = len(values) - 1 - d
        if k >= 0:
            diffs.append(_forward_difference(values, k, d))
            if len(diffs) >= 3 and diffs[-1] == diffs[-2] == diffs[-3]:
                return diffs[-1]
    raise HilbertError("G-side multiplicity did not stabilise")


def adic_coefficients(R: QuotientRing, I: IdealHandle, r: int = 0) -> HilbertCoefficients:
    return fit_coefficients(adic(R, I), R.dim, r)


def power_product_multiplicity(e_Q: int, exps) -> int:
    """e(a_1^n_1, ..., a_d^n_d) = n_1 ... n_d e(a_1, ..., a_d)."""
    return prod(exps) * e_Q
