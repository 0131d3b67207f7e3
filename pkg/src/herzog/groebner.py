"""S-polynomials, division, Buchberger's algorithm, reduced and 0-reduced bases,
initial ideals, elimination and order-preserving linear substitution."""

from __future__ import annotations

import heapq
import os
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    DegreeCeilingExceeded,
    DimensionError,
    EmptyPolynomialError,
    FieldMismatchError,
    HypothesisNotMetError,
    InternalConsistencyError,
    OrderViolationError,
    PreconditionError,
    UnsupportedEliminationError,
)
from .poly import (
    LEX,
    Monomial,
    MonomialOrder,
    PolyRing,
    Polynomial,
    divides,
    elimination_order,
    format_monomial,
    is_squarefree_monomial,
    mono_div,
    mono_lcm,
)

DEFAULT_DEGREE_CEILING = 12

# Set HERZOG_VERIFY=0 to skip the S-pair self-check after every Buchberger run.
VERIFY_BASES = os.environ.get("HERZOG_VERIFY", "1") != "0"


# --------------------------------------------------------------------------
# data types


class Ideal:
    """A finitely generated ideal; zero generators are dropped."""

    __slots__ = ("ring", "generators", "homogeneous")

    def __init__(self, ring: PolyRing, generators: Iterable[Polynomial]):
        gens = []
        for g in generators:
            if g.ring != ring:
                if g.ring.field != ring.field:
                    raise FieldMismatchError(f"generator over {g.ring.field.name}, ideal over {ring.field.name}")
                raise DimensionError(f"generator has {g.ring.nvars} variables, ideal ring has {ring.nvars}")
            if g:
                gens.append(g)
        self.ring = ring
        self.generators = tuple(gens)
        self.homogeneous = all(g.is_homogeneous() for g in gens)

    @classmethod
    def parse(cls, ring: PolyRing, lines: Iterable[str]) -> "Ideal":
        return cls(ring, [ring.parse(s) for s in lines])

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def __repr__(self):
        return f"Ideal({[str(g) for g in self.generators]})"


@dataclass(frozen=True)
class MonomialIdeal:
    """A monomial ideal stored by its minimal generators (sorted lex-descending)."""

    nvars: int
    generators: tuple

    @classmethod
    def from_monomials(cls, nvars: int, monomials: Iterable[Monomial]) -> "MonomialIdeal":
        return cls(nvars, tuple(minimalize(monomials)))

    def contains(self, m: Monomial) -> bool:
        return any(divides(g, m) for g in self.generators)

    def is_squarefree(self) -> bool:
        return all(is_squarefree_monomial(g) for g in self.generators)

    def __contains__(self, m):
        return self.contains(m)

    def __str__(self):
        return "(" + ", ".join(format_monomial(g) for g in self.generators) + ")"


def minimalize(monomials: Iterable[Monomial]) -> list:
    """Minimal generators of the monomial ideal generated by ``monomials``."""
    ms = sorted(set(map(tuple, monomials)), key=lambda m: (sum(m), m))
    out = []
    for m in ms:
        if not any(divides(g, m) for g in out):
            out.append(m)
    return sorted(out, reverse=True)


class GroebnerBasis:
    """A Groebner basis together with its order and cached leading terms."""

    __slots__ = ("ring", "order", "elements", "leading_monomials", "_flags")

    def __init__(self, elements: Sequence[Polynomial], order: MonomialOrder, ring: PolyRing | None = None):
        elements = tuple(g for g in elements if g)
        if ring is None:
            if not elements:
                raise ValueError("need a ring for an empty basis")
            ring = elements[0].ring
        self.ring = ring
        self.order = order
        self.elements = elements
        self.leading_monomials = tuple(g.leading_monomial(order) for g in elements)
        self._flags = {}

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    @property
    def is_reduced(self) -> bool:
        if "reduced" not in self._flags:
            self._flags["reduced"] = _is_reduced(self)
        return self._flags["reduced"]

    @property
    def is_zero_reduced(self) -> bool:
        if "zero" not in self._flags:
            self._flags["zero"] = _is_zero_reduced(self)
        return self._flags["zero"]

    def ideal(self) -> Ideal:
        return Ideal(self.ring, self.elements)

    def initial_ideal(self) -> MonomialIdeal:
        return initial_ideal(self)

    def normal_form(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self.elements, self.order)

    def contains(self, f: Polynomial) -> bool:
        return not self.normal_form(f)

    def element_with_leading(self, m: Monomial) -> Polynomial | None:
        for g, lm in zip(self.elements, self.leading_monomials):
            if lm == tuple(m):
                return g
        return None

    def __repr__(self):
        return f"GroebnerBasis({[g.to_str(self.order) for g in self.elements]}, {self.order.name})"


# --------------------------------------------------------------------------
# division


class _Divisors:
    """Leading data of a divisor list, sorted so the first match has the largest leading monomial."""

    def __init__(self, polys: Sequence[Polynomial], order: MonomialOrder):
        key = order.key
        items = []
        for idx, g in enumerate(polys):
            if not g:
                raise EmptyPolynomialError("cannot divide by the zero polynomial")
            lm, lc = g.leading_term(order)
            items.append((key(lm), idx, lm, lc, g))
        items.sort(key=lambda t: t[0], reverse=True)
        self.items = [(lm, lc, g, idx) for _, idx, lm, lc, g in items]
        self.field = polys[0].ring.field if polys else None

    def find(self, m: Monomial):
        for item in self.items:
            lm = item[0]
            for a, b in zip(lm, m):
                if a > b:
                    break
            else:
                return item
        return None


def _reduce_terms(terms: dict, divisors: _Divisors, order: MonomialOrder, p: int,
                  quotients: list | None = None, top_only: bool = False) -> dict:
    """Full (or top-) reduction of a term dict. Returns the remainder terms.

    ``terms`` is consumed.
    """
    key = order.key
    remainder = {}
    heap = [tuple(-x for x in key(m)) + (m,) for m in terms]
    heapq.heapify(heap)
    inv = divisors.field.inv if divisors.field else None
    while heap:
        m = heapq.heappop(heap)[-1]
        c = terms.pop(m, 0)
        if not c:
            continue
        item = divisors.find(m)
        if item is None:
            remainder[m] = c
            if top_only:
                for mm, cc in terms.items():
                    if cc:
                        remainder[mm] = cc
                return remainder
            continue
        lm, lc, g, idx = item
        factor = c * inv(lc)
        if p:
            factor %= p
        shift = tuple(a - b for a, b in zip(m, lm))
        if quotients is not None:
            q = quotients[idx]
            q[shift] = (q.get(shift, 0) + factor) % p if p else q.get(shift, 0) + factor
        for gm, gc in g.terms.items():
            if gm == lm:
                continue
            nm = tuple(a + b for a, b in zip(gm, shift))
            old = terms.get(nm)
            v = (old or 0) - factor * gc
            if p:
                v %= p
            if old is None:
                heapq.heappush(heap, tuple(-x for x in key(nm)) + (nm,))
            terms[nm] = v
    return remainder


def reduce(f: Polynomial, G: Sequence[Polynomial], order: MonomialOrder):
    """Multivariate division of ``f`` by ``G``.

    Returns ``(normal_form, quotients)`` with ``f = sum(q_i * G_i) + normal_form``
    and no monomial of the normal form divisible by any leading monomial of ``G``.
    When several divisors apply, the one with the largest leading monomial is used.
    """
    for g in G:
        f._check(g)
    ring = f.ring
    if not G:
        return f, []
    divisors = _Divisors(G, order)
    qs = [dict() for _ in G]
    rem = _reduce_terms(dict(f.terms), divisors, order, ring.field.p, quotients=qs)
    p = ring.field.p
    quotients = [Polynomial(ring, {m: c for m, c in q.items() if (c % p if p else c)}) for q in qs]
    return Polynomial(ring, rem), quotients


def normal_form(f: Polynomial, G: Sequence[Polynomial], order: MonomialOrder) -> Polynomial:
    if not G or not f:
        return f
    return Polynomial(f.ring, _reduce_terms(dict(f.terms), _Divisors(G, order), order, f.ring.field.p))


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    """``(L/in f) * f * lc(g) - (L/in g) * g * lc(f)`` with ``L = lcm(in f, in g)``."""
    if not f or not g:
        raise EmptyPolynomialError("S-polynomial of the zero polynomial")
    f._check(g)
    mf, cf = f.leading_term(order)
    mg, cg = g.leading_term(order)
    L = mono_lcm(mf, mg)
    return f.mul_term(mono_div(L, mf), cg) - g.mul_term(mono_div(L, mg), cf)


# --------------------------------------------------------------------------
# Buchberger


def _check_ceiling(m: Monomial, ceiling: int | None):
    if ceiling is not None and sum(m) > ceiling:
        raise DegreeCeilingExceeded(f"S-pair of degree {sum(m)} exceeds the ceiling {ceiling}")


def buchberger(I: Ideal | Sequence[Polynomial], order: MonomialOrder,
               degree_ceiling: int | None = DEFAULT_DEGREE_CEILING,
               verify: bool | None = None) -> GroebnerBasis:
    """Groebner basis of ``I`` by Buchberger's algorithm.

    The input generators are kept (monic) and followed by the nonzero
    remainders that were added.  Pairs are taken smallest lcm first and
    discarded by the coprimality and chain criteria.
    """
    gens = list(I.generators if isinstance(I, Ideal) else I)
    gens = [g for g in gens if g]
    if not gens:
        ring = I.ring if isinstance(I, Ideal) else None
        return GroebnerBasis([], order, ring=ring)
    ring = gens[0].ring
    p = ring.field.p
    key = order.key

    basis = []
    lms = []
    seen = set()
    for g in gens:
        g = g.monic(order)
        if g in seen:
            continue
        seen.add(g)
        basis.append(g)
        lms.append(g.leading_monomial(order))

    pairs = []  # heap of (deg, key, i, j)
    live = set()

    def push(i, j):
        L = mono_lcm(lms[i], lms[j])
        heapq.heappush(pairs, (sum(L), key(L), i, j))
        live.add((i, j))

    for j in range(len(basis)):
        for i in range(j):
            push(i, j)

    while pairs:
        _, _, i, j = heapq.heappop(pairs)
        live.discard((i, j))
        a, b = lms[i], lms[j]
        L = mono_lcm(a, b)
        if all(x == 0 or y == 0 for x, y in zip(a, b)):
            continue
        if _chain_criterion(i, j, L, lms, live):
            continue
        _check_ceiling(L, degree_ceiling)
        s = s_polynomial(basis[i], basis[j], order)
        if not s:
            continue
        r = Polynomial(ring, _reduce_terms(dict(s.terms), _Divisors(basis, order), order, p))
        if not r:
            continue
        r = r.monic(order)
        _check_ceiling(r.leading_monomial(order), degree_ceiling)
        basis.append(r)
        lms.append(r.leading_monomial(order))
        k = len(basis) - 1
        for i2 in range(k):
            push(i2, k)

    G = GroebnerBasis(basis, order, ring=ring)
    if VERIFY_BASES if verify is None else verify:
        if not is_groebner_basis(G.elements, order):
            raise InternalConsistencyError("Buchberger output failed the S-pair check")
    return G


def _chain_criterion(i, j, L, lms, live) -> bool:
    for k, lk in enumerate(lms):
        if k == i or k == j:
            continue
        if (min(i, k), max(i, k)) in live or (min(j, k), max(j, k)) in live:
            continue
        if divides(lk, L):
            return True
    return False


def is_groebner_basis(G: Sequence[Polynomial], order: MonomialOrder) -> bool:
    """True iff every S-pair of ``G`` reduces to zero modulo ``G``.

    Pairs with coprime leading monomials are skipped (Buchberger's first criterion).
    """
    G = [g for g in G if g]
    if not G:
        return True
    p = G[0].ring.field.p
    divisors = _Divisors(G, order)
    lms = [g.leading_monomial(order) for g in G]
    for j in range(len(G)):
        for i in range(j):
            a, b = lms[i], lms[j]
            if all(x == 0 or y == 0 for x, y in zip(a, b)):
                continue
            s = s_polynomial(G[i], G[j], order)
            if s and _reduce_terms(dict(s.terms), divisors, order, p, top_only=True):
                return False
    return True


# --------------------------------------------------------------------------
# reduced and 0-reduced bases


def minimal_basis(G: GroebnerBasis) -> GroebnerBasis:
    """Drop elements whose leading monomial is divisible by another's; make monic."""
    order = G.order
    items = sorted(zip(G.leading_monomials, G.elements), key=lambda t: order.key(t[0]))
    kept = []
    for lm, g in items:
        if any(divides(k_lm, lm) for k_lm, _ in kept):
            continue
        kept.append((lm, g.monic(order)))
    kept.sort(key=lambda t: order.key(t[0]), reverse=True)
    return GroebnerBasis([g for _, g in kept], order, ring=G.ring)


def reduced_basis(G: GroebnerBasis) -> GroebnerBasis:
    """The unique reduced Groebner basis (monic, fully interreduced), sorted by leading monomial."""
    M = minimal_basis(G)
    elems = list(M.elements)
    out = []
    for idx, g in enumerate(elems):
        others = elems[:idx] + elems[idx + 1:]
        lm, lc = g.leading_term(M.order)
        tail = Polynomial(g.ring, {m: c for m, c in g.terms.items() if m != lm})
        tail = normal_form(tail, others, M.order) if others else tail
        out.append(tail + g.ring.monomial(lm, lc))
    R = GroebnerBasis(out, M.order, ring=G.ring)
    R._flags["reduced"] = True
    return R


def _is_reduced(G: GroebnerBasis) -> bool:
    lms = G.leading_monomials
    for i, g in enumerate(G.elements):
        if g.terms[lms[i]] != 1:
            return False
        for j, lm in enumerate(lms):
            if i != j and any(divides(lm, m) for m in g.terms):
                return False
    return True


def _is_zero_reduced(G: GroebnerBasis) -> bool:
    lms = G.leading_monomials
    for i, lm in enumerate(lms):
        if lm[0] == 0:
            continue
        for j, g in enumerate(G.elements):
            if i != j and lm in g.terms:
                return False
    return True


def zero_reduce(G: GroebnerBasis) -> GroebnerBasis:
    """Remove every X0-divisible leading monomial from the supports of the other elements.

    Only exact occurrences are cancelled (by subtracting a scalar multiple of
    the owning element), so the ideal and the leading monomials are unchanged.
    """
    order = G.order
    ring = G.ring
    p = ring.field.p
    inv = ring.field.inv
    lms = G.leading_monomials
    owners = {lm: (g, g.terms[lm]) for lm, g in zip(lms, G.elements) if lm[0] > 0}
    if len(owners) != sum(1 for lm in lms if lm[0] > 0):
        raise PreconditionError("0-reduction needs distinct X0-divisible leading monomials")
    key = order.key
    out = []
    for j, g in enumerate(G.elements):
        terms = dict(g.terms)
        own = lms[j]
        while True:
            hits = [m for m in terms if m != own and m in owners]
            if not hits:
                break
            m = max(hits, key=key)
            h, hc = owners[m]
            factor = terms[m] * inv(hc)
            if p:
                factor %= p
            for hm, c in h.terms.items():
                v = terms.get(hm, 0) - factor * c
                if p:
                    v %= p
                if v:
                    terms[hm] = v
                else:
                    terms.pop(hm, None)
        out.append(Polynomial(ring, terms))
    Z = GroebnerBasis(out, order, ring=ring)
    Z._flags["zero"] = True
    return Z


# --------------------------------------------------------------------------
# initial ideals


def initial_ideal(G: GroebnerBasis) -> MonomialIdeal:
    return MonomialIdeal.from_monomials(G.ring.nvars, G.leading_monomials)


def is_squarefree(M: MonomialIdeal) -> bool:
    return M.is_squarefree()


# --------------------------------------------------------------------------
# ideal comparison


def ideal_contains(G: GroebnerBasis, polys: Iterable[Polynomial]) -> bool:
    return all(not G.normal_form(f) for f in polys)


def same_ideal(A: Sequence[Polynomial], B: Sequence[Polynomial], order: MonomialOrder = LEX) -> bool:
    """Equality of ideals by mutual normal-form membership."""
    A = [f for f in A if f]
    B = [f for f in B if f]
    if not A or not B:
        return not A and not B
    GA = buchberger(A, order, degree_ceiling=None)
    GB = buchberger(B, order, degree_ceiling=None)
    return ideal_contains(GA, B) and ideal_contains(GB, A)


# --------------------------------------------------------------------------
# elimination


def _drop_count(ring: PolyRing, drop_vars) -> int:
    drop = sorted(set(drop_vars))
    if drop != list(range(len(drop))):
        raise UnsupportedEliminationError(
            f"can only eliminate a prefix X0..Xk of the variables, got {['X%d' % i for i in drop]}")
    if len(drop) >= ring.nvars:
        raise UnsupportedEliminationError("cannot eliminate every variable")
    return len(drop)


def restrict_ring(polys: Iterable[Polynomial], k: int, ring: PolyRing | None = None) -> list:
    """Move polynomials free of X0..X{k-1} into K[X_k..X_n], renumbered from X0."""
    polys = list(polys)
    if ring is None:
        ring = polys[0].ring
    small = PolyRing(ring.nvars - k, ring.field)
    var_map = [-1] * k + list(range(ring.nvars - k))
    return [f.to_ring(small, var_map) for f in polys]


def extend_ring(polys: Iterable[Polynomial], k: int, ring: PolyRing) -> list:
    """Inverse of :func:`restrict_ring`: move back into ``ring`` (shift indices by ``k``)."""
    polys = list(polys)
    if not polys:
        return []
    var_map = [i + k for i in range(polys[0].ring.nvars)]
    return [f.to_ring(ring, var_map) for f in polys]


def eliminate_block(I: Ideal | Sequence[Polynomial], drop_vars, order: MonomialOrder = LEX,
                    degree_ceiling: int | None = DEFAULT_DEGREE_CEILING) -> list:
    """I ∩ K[remaining variables] through a block order (lex on the dropped block).

    The result stays in the original ring; it is a Groebner basis of the
    elimination ideal for the restriction of the block order.
    """
    gens = list(I.generators if isinstance(I, Ideal) else I)
    ring = gens[0].ring
    k = _drop_count(ring, drop_vars)
    block = elimination_order(k, order)
    G = buchberger(gens, block, degree_ceiling=degree_ceiling)
    G = reduced_basis(G)
    return [g for g in G.elements if all(m[i] == 0 for m in g.terms for i in range(k))]


def extract_projection_basis(G: GroebnerBasis) -> list:
    """G' = the elements of ``G`` whose leading monomial avoids X0.

    Valid as a Groebner basis of I ∩ K[X1..Xn] when vertex 0 is free in the
    complex of ``in(G)`` and ``G`` is 0-reduced; see :func:`eliminate`.
    """
    return [g for g, lm in zip(G.elements, G.leading_monomials) if lm[0] == 0]


def check_projection_hypotheses(G: GroebnerBasis):
    """Raise unless ``G`` is a 0-reduced basis {g_σ} whose squarefree initial ideal has 0 free."""
    from .collapse import Graph
    from .simplicial import complex_of

    M = initial_ideal(G)
    if not M.is_squarefree():
        raise HypothesisNotMetError(f"initial ideal {M} is not squarefree")
    if len(M.generators) != len(G.elements):
        raise HypothesisNotMetError("basis is not minimal (one element per minimal non-face expected)")
    delta = complex_of(M, G.ring.nvars)
    if delta.dimension > 1:
        raise HypothesisNotMetError("complex of the initial ideal is not a graph")
    if not Graph.from_complex(delta).is_free(0):
        raise HypothesisNotMetError("vertex 0 is not free; use the block elimination route")
    if not G.is_zero_reduced:
        raise HypothesisNotMetError("basis is not 0-reduced; call zero_reduce first")


def eliminate(I: Ideal, drop_vars, route: str = "block", basis: GroebnerBasis | None = None,
              order: MonomialOrder = LEX, degree_ceiling: int | None = DEFAULT_DEGREE_CEILING) -> Ideal:
    """I ∩ K[remaining variables], kept in the original ring.

    ``route="block"`` computes a Groebner basis for a block order.
    ``route="extract"`` drops X0 only and returns G' from a 0-reduced ``basis``
    whose initial ideal has vertex 0 free.
    """
    ring = I.ring
    if route == "block":
        return Ideal(ring, eliminate_block(I, drop_vars, order, degree_ceiling))
    if route == "extract":
        k = _drop_count(ring, drop_vars)
        if k != 1:
            raise UnsupportedEliminationError("the extraction route only drops X0")
        if basis is None:
            raise PreconditionError("the extraction route needs a Groebner basis")
        check_projection_hypotheses(basis)
        return Ideal(ring, extract_projection_basis(basis))
    raise ValueError(f"unknown elimination route {route!r}")


# --------------------------------------------------------------------------
# linear substitution


def substitute_linear(G: GroebnerBasis, v: int, coeffs: dict) -> GroebnerBasis:
    """Quotient by ``ℓ = X_v + Σ λ_i X_i`` (all ``i > v``), returning a basis over the smaller ring.

    ``X_v`` is replaced by ``-Σ λ_i X_i`` in every element; zero results are
    dropped and the survivors are renumbered into ``nvars - 1`` variables.
    The output is checked to be a Groebner basis whose initial ideal is
    ``in(G)`` with the generator ``X_v`` removed.  The reduced basis is
    used, so ``X_v`` occurs in no element other than the linear form.
    """
    if not G.is_reduced:
        G = reduced_basis(G)
    ring = G.ring
    field = ring.field
    for i in coeffs:
        if not 0 <= i < ring.nvars:
            raise DimensionError(f"X{i} is not a variable")
        if i <= v:
            raise OrderViolationError(
                f"coefficient on X{i} is not on a variable smaller than X{v}; substitution would break the order")
    lam = {i: field(c) for i, c in coeffs.items()}
    ell = ring.var(v)
    for i, c in lam.items():
        ell = ell + ring.var(i).scale(c)
    if G.normal_form(ell):
        raise PreconditionError(f"{ell} is not in the ideal")
    replacement = ring.zero
    for i, c in lam.items():
        replacement = replacement - ring.var(i).scale(c)

    small = PolyRing(ring.nvars - 1, field)
    var_map = [j if j < v else j - 1 for j in range(ring.nvars)]
    var_map[v] = -1
    out = []
    for g in G.elements:
        h = g.substitute(v, replacement)
        if h:
            out.append(h.to_ring(small, var_map))

    order = G.order
    if order.kind == "weighted":
        order = MonomialOrder("weighted", weights=[w for j, w in enumerate(order.weights) if j != v])
    elif order.kind == "block":
        raise OrderViolationError("substitution under a block order is not supported")
    if not out:
        H = GroebnerBasis([], order, ring=small)
    else:
        H = GroebnerBasis(out, order, ring=small)
        if not is_groebner_basis(H.elements, order):
            raise InternalConsistencyError("substituted basis is no longer a Groebner basis")
    xv = tuple(1 if j == v else 0 for j in range(ring.nvars))
    expected = [tuple(e for j, e in enumerate(m) if j != v)
                for m in initial_ideal(G).generators if m != xv]
    got = initial_ideal(H).generators if out else ()
    if tuple(minimalize(expected)) != tuple(got):
        raise InternalConsistencyError("initial ideal changed under the linear substitution")
    return H
