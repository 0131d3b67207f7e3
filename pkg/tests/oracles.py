"""Reference computations that share no code with the package.

They work on plain data (dicts from exponent tuples to Fractions, or ints
mod p) and rely on brute force, linear algebra over gmpy2 rationals,
networkx or sympy.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import networkx as nx
from gmpy2 import mpq
import sympy


def plain_terms(poly) -> dict:
    """{exponents: Fraction or int} from a package polynomial."""
    p = poly.ring.field.p
    out = {}
    for m, c in poly.terms.items():
        out[tuple(m)] = int(c) % p if p else Fraction(int(c.numerator), int(c.denominator))
    return out


def monomials(nvars: int, d: int) -> list:
    out = []
    for combo in itertools.combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


def _inverse(c, p):
    return pow(c, p - 2, p) if p else 1 / c


def sparse_rank(rows, p: int) -> int:
    """Rank of sparse row vectors (dicts) over QQ (p = 0) or GF(p)."""
    pivots = {}
    for row in rows:
        if p:
            row = {k: v % p for k, v in row.items() if v % p}
        else:
            row = {k: mpq(v.numerator, v.denominator) for k, v in row.items() if v}
        while row:
            lead = max(row)
            if lead not in pivots:
                inv = _inverse(row[lead], p)
                pivots[lead] = {k: (v * inv) % p if p else v * inv for k, v in row.items()}
                break
            c = row[lead]
            for k, v in pivots[lead].items():
                nv = row.get(k, 0) - c * v
                if p:
                    nv %= p
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
    return len(pivots)


def graded_dimension(gens: list, nvars: int, p: int, t: int) -> int:
    """dim_K (S/I)_t from the Macaulay matrix of the homogeneous generators ``gens`` (plain term dicts)."""
    cols = monomials(nvars, t)
    rows = []
    for f in gens:
        deg = sum(next(iter(f)))
        if deg > t:
            continue
        for m in monomials(nvars, t - deg):
            rows.append({tuple(a + b for a, b in zip(m, e)): c for e, c in f.items()})
    return len(cols) - sparse_rank(rows, p)


def standard_count(minimal_gens: list, nvars: int, t: int) -> int:
    """Monomials of degree t divisible by none of ``minimal_gens`` (brute force)."""
    return sum(1 for m in monomials(nvars, t)
               if not any(all(a <= b for a, b in zip(g, m)) for g in minimal_gens))


def hilbert_polynomial_by_counting(gens: list, nvars: int, p: int, start: int = 6, span: int = 4):
    """(c0, c1) with dim (S/I)_t = c1*t + c0 for t in [start, start+span); None if not linear there."""
    vals = [graded_dimension(gens, nvars, p, t) for t in range(start, start + span)]
    c1 = vals[1] - vals[0]
    c0 = vals[0] - c1 * start
    if any(v != c1 * (start + i) + c0 for i, v in enumerate(vals)):
        return None
    return c0, c1


def graph_homology(nvertices: int, edges) -> dict:
    """Reduced homology ranks of a graph seen as a 1-complex, from components and the Euler characteristic."""
    G = nx.Graph()
    G.add_nodes_from(range(nvertices))
    G.add_edges_from(edges)
    k = nx.number_connected_components(G)
    return {-1: 0, 0: k - 1, 1: len(G.edges) - nvertices + k}


def is_tree_oracle(nvertices: int, edges) -> bool:
    G = nx.Graph()
    G.add_nodes_from(range(nvertices))
    G.add_edges_from(edges)
    return nx.is_tree(G)


def sympy_reduced_basis(polys, order: str, p: int = 0) -> set:
    """Reduced Groebner basis via sympy, as a set of frozen term dicts (monic)."""
    nvars = polys[0].ring.nvars
    xs = sympy.symbols(f"X0:{nvars}")
    exprs = []
    for f in polys:
        expr = 0
        for m, c in plain_terms(f).items():
            term = sympy.Rational(c.numerator, c.denominator) if not p else sympy.Integer(c)
            for x, e in zip(xs, m):
                term *= x ** e
            expr += term
        exprs.append(expr)
    kw = {"modulus": p} if p else {"domain": "QQ"}
    G = sympy.groebner(exprs, *xs, order=order, **kw)
    out = set()
    for g in G.exprs:
        P = sympy.Poly(g, *xs, **kw)
        terms = {}
        for m, c in P.terms():
            c = int(c) % p if p else Fraction(int(sympy.numer(c)), int(sympy.denom(c)))
            terms[tuple(m)] = c
        out.add(_normalised(terms, p))
    return out


def _normalised(terms: dict, p: int) -> frozenset:
    # scale so the tuple-largest exponent carries coefficient 1; any fixed rule works for comparisons
    inv = _inverse(terms[max(terms)], p)
    return frozenset((m, (c * inv) % p if p else c * inv) for m, c in terms.items())


def package_basis_as_set(G) -> set:
    p = G.ring.field.p
    return {_normalised(plain_terms(g), p) for g in G}
