"""Hilbert functions, series and polynomials of S/M for monomial ideals M."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb

from .groebner import MonomialIdeal, minimalize
from .poly import divides, monomials_of_degree


def count_standard_monomials(M: MonomialIdeal, d: int) -> int:
    """dim_K (S/M)_d by direct enumeration."""
    gens = M.generators
    return sum(1 for m in monomials_of_degree(M.nvars, d)
               if not any(divides(g, m) for g in gens))


def _poly_sub(a, b):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _shift(a, k):
    return [0] * k + list(a)


@lru_cache(maxsize=4096)
def _numerator(gens: tuple) -> tuple:
    """K-polynomial numerator of S/(gens) over (1-t)^nvars (gens minimal)."""
    if not gens:
        return (1,)
    # pairwise coprime generators: product of (1 - t^deg)
    supports = [frozenset(i for i, e in enumerate(g) if e) for g in gens]
    union = set()
    coprime = True
    for s in supports:
        if union & s:
            coprime = False
            break
        union |= s
    if coprime:
        out = [1]
        for g in gens:
            out = _poly_mul(out, _poly_sub([1], _shift([1], sum(g))))
        return tuple(out)
    # N(M' + (m)) = N(M') - t^deg(m) N(M' : m)
    m = gens[-1]
    rest = gens[:-1]
    colon = tuple(minimalize(tuple(max(a - b, 0) for a, b in zip(g, m)) for g in rest))
    return tuple(_poly_sub(list(_numerator(rest)), _shift(_numerator(colon), sum(m))))


def hilbert_numerator(M: MonomialIdeal) -> list:
    """Coefficients of K(t) with HS(S/M) = K(t) / (1-t)^nvars."""
    gens = tuple(sorted(M.generators, key=lambda g: (sum(g), g)))
    return list(_numerator(gens))


def hilbert_series(M: MonomialIdeal):
    """Reduced form ``(h, d)`` with HS(S/M) = h(t) / (1-t)^d and h(1) != 0.

    ``d`` is the Krull dimension of S/M.
    """
    num = hilbert_numerator(M)
    d = M.nvars
    while d > 0 and sum(num) == 0:
        # synthetic division by (1 - t): h_k = sum_{i<=k} num_i
        h, acc = [], 0
        for c in num[:-1]:
            acc += c
            h.append(acc)
        num = h or [0]
        d -= 1
    return num, d


def binomial_poly(shift: int, r: int) -> list:
    """Coefficients (in t) of C(t + shift, r) as a polynomial with Fraction coefficients."""
    out = [Fraction(1)]
    for i in range(r):
        # multiply by (t + shift - i)
        c0 = shift - i
        new = [Fraction(0)] * (len(out) + 1)
        for k, a in enumerate(out):
            new[k] += a * c0
            new[k + 1] += a
        out = new
    f = Fraction(1, 1)
    for i in range(1, r + 1):
        f *= i
    return [a / f for a in out]


def hilbert_polynomial_from_series(h: list, d: int) -> list:
    """Coefficients [c0, c1, ...] of the Hilbert polynomial of h(t)/(1-t)^d."""
    if d == 0:
        return [Fraction(0)]
    out = [Fraction(0)] * d
    for j, hj in enumerate(h):
        if hj:
            for k, a in enumerate(binomial_poly(d - 1 - j, d - 1)):
                out[k] += hj * a
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def hilbert_polynomial(M: MonomialIdeal) -> list:
    h, d = hilbert_series(M)
    return hilbert_polynomial_from_series(h, d)


def evaluate_poly(coeffs: list, t) -> Fraction:
    return sum(Fraction(c) * Fraction(t) ** k for k, c in enumerate(coeffs))


def hilbert_function(M: MonomialIdeal, d: int) -> int:
    """dim_K (S/M)_d from the series (cross-checked against enumeration in the tests)."""
    num = hilbert_numerator(M)
    n = M.nvars
    # coefficient of t^d in num(t) * sum_k C(k+n-1, n-1) t^k
    return sum(c * comb(d - j + n - 1, n - 1) for j, c in enumerate(num) if j <= d)


def krull_dimension(M: MonomialIdeal) -> int:
    return hilbert_series(M)[1]


def is_artinian(M: MonomialIdeal) -> bool:
    """S/M is finite-dimensional iff every variable has a pure power among the generators."""
    pure = set()
    for g in M.generators:
        nz = [i for i, e in enumerate(g) if e]
        if len(nz) == 1:
            pure.add(nz[0])
    return len(pure) == M.nvars


def variables_without_pure_power(M: MonomialIdeal) -> list:
    pure = set()
    for g in M.generators:
        nz = [i for i, e in enumerate(g) if e]
        if len(nz) == 1:
            pure.add(nz[0])
    return [i for i in range(M.nvars) if i not in pure]


def monomial_count(nvars: int, d: int) -> int:
    return comb(d + nvars - 1, nvars - 1) if d >= 0 else 0
