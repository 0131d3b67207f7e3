"""Simplicial complexes on [n]_0, Stanley-Reisner ideals and reduced homology."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb

from .errors import PreconditionError
from .groebner import MonomialIdeal
from .hilbert import binomial_poly
from .poly import QQ, Field, monomials_of_degree, squarefree_monomial

Face = frozenset


@dataclass(frozen=True)
class SimplicialComplex:
    """A complex on the vertex set {0, ..., nvertices-1}, stored by its facets.

    With ``full_vertex_set`` every vertex must be a face; the candidate search
    relies on this.  The void complex has no facets; the
    irrelevant complex {∅} has the single facet ∅.
    """

    nvertices: int
    facets: frozenset
    full_vertex_set: bool = field(default=False, compare=False)
    _faces: tuple = field(default=None, compare=False, repr=False, hash=False)

    def __init__(self, nvertices: int, facets, full_vertex_set: bool = False):
        fs = {frozenset(f) for f in facets}
        for f in fs:
            if any(not 0 <= v < nvertices for v in f):
                raise ValueError(f"face {sorted(f)} uses a vertex outside 0..{nvertices - 1}")
        maximal = frozenset(f for f in fs if not any(f < g for g in fs))
        object.__setattr__(self, "nvertices", nvertices)
        object.__setattr__(self, "facets", maximal)
        object.__setattr__(self, "full_vertex_set", full_vertex_set)
        object.__setattr__(self, "_faces", None)
        if full_vertex_set:
            covered = set().union(*maximal) if maximal else set()
            missing = set(range(nvertices)) - covered
            if missing:
                raise PreconditionError(f"vertices {sorted(missing)} are not faces")

    @classmethod
    def from_edges(cls, nvertices: int, edges, full_vertex_set: bool = True) -> "SimplicialComplex":
        """The graph with the given edges; every vertex is a face."""
        facets = [frozenset(e) for e in edges] + [frozenset([v]) for v in range(nvertices)]
        return cls(nvertices, facets, full_vertex_set=full_vertex_set)

    @classmethod
    def simplex(cls, nvertices: int) -> "SimplicialComplex":
        return cls(nvertices, [range(nvertices)], full_vertex_set=True)

    @property
    def dimension(self) -> int:
        if not self.facets:
            return -2  # void complex
        return max(len(f) for f in self.facets) - 1

    def faces(self) -> tuple:
        """All faces including ∅, sorted by size then lexicographically."""
        if self._faces is None:
            out = set()
            for f in self.facets:
                for k in range(len(f) + 1):
                    out.update(frozenset(c) for c in combinations(sorted(f), k))
            object.__setattr__(self, "_faces", tuple(sorted(out, key=lambda s: (len(s), sorted(s)))))
        return self._faces

    def faces_of_dimension(self, d: int) -> list:
        return [f for f in self.faces() if len(f) == d + 1]

    def __contains__(self, face) -> bool:
        face = frozenset(face)
        return any(face <= f for f in self.facets)

    def f_vector(self) -> list:
        """[f_{-1}, f_0, ..., f_dim]."""
        if not self.facets:
            return []
        out = [0] * (self.dimension + 2)
        for f in self.faces():
            out[len(f)] += 1
        return out

    def vertices(self) -> frozenset:
        return frozenset().union(*self.facets) if self.facets else frozenset()

    def link(self, sigma) -> "SimplicialComplex":
        sigma = frozenset(sigma)
        fs = [f - sigma for f in self.facets if sigma <= f]
        return SimplicialComplex(self.nvertices, fs)

    def induced(self, W) -> "SimplicialComplex":
        W = frozenset(W)
        return SimplicialComplex(self.nvertices, [f & W for f in self.facets])

    def edges(self) -> list:
        return sorted(tuple(sorted(f)) for f in self.faces_of_dimension(1))


# --------------------------------------------------------------------------
# Stanley-Reisner correspondence


def minimal_nonfaces(delta: SimplicialComplex) -> list:
    """Subsets not in Δ whose proper subsets all are, sorted by size then lexicographically."""
    faces = set(delta.faces())
    out = set()
    if not faces:
        return [frozenset()]
    for f in faces:
        for v in range(delta.nvertices):
            if v in f:
                continue
            s = f | {v}
            if s in faces or s in out:
                continue
            if all(s - {u} in faces for u in s):
                out.add(s)
    return sorted(out, key=lambda s: (len(s), sorted(s)))


def stanley_reisner(delta: SimplicialComplex) -> MonomialIdeal:
    n = delta.nvertices
    return MonomialIdeal.from_monomials(n, [squarefree_monomial(n, s) for s in minimal_nonfaces(delta)])


def complex_of(M: MonomialIdeal, nvertices: int | None = None) -> SimplicialComplex:
    """The complex whose Stanley-Reisner ideal is the squarefree ideal ``M``."""
    if not M.is_squarefree():
        raise ValueError(f"{M} is not squarefree")
    n = M.nvars if nvertices is None else nvertices
    gens = [frozenset(i for i, e in enumerate(g) if e) for g in M.generators]
    # grow faces vertex by vertex; a set is a face iff it contains no generator support
    faces = [frozenset()] if not any(not g for g in gens) else []
    frontier = list(faces)
    seen = set(faces)
    while frontier:
        nxt = []
        for f in frontier:
            start = max(f) + 1 if f else 0
            for v in range(start, n):
                s = f | {v}
                if s not in seen and not any(g <= s for g in gens):
                    seen.add(s)
                    nxt.append(s)
        frontier = nxt
    maximal = [f for f in seen if not any(f < g for g in seen)]
    full = all(frozenset([v]) in seen for v in range(n))
    return SimplicialComplex(n, maximal, full_vertex_set=full)


# --------------------------------------------------------------------------
# homology


@dataclass(frozen=True)
class HomologyProfile:
    """Ranks of reduced homology H̃_i(Δ; K) for i = -1..dim Δ."""

    ranks: dict
    field: Field

    def __getitem__(self, i: int) -> int:
        return self.ranks.get(i, 0)

    def as_list(self) -> list:
        return [self.ranks[i] for i in sorted(self.ranks)]


def _rank_mod_p(rows: list, p: int) -> int:
    rows = [dict(r) for r in rows if r]
    rank = 0
    while rows:
        pivot_row = rows.pop()
        pivot_row = {k: v % p for k, v in pivot_row.items() if v % p}
        if not pivot_row:
            continue
        col = min(pivot_row)
        inv = pow(pivot_row[col], -1, p)
        rank += 1
        new_rows = []
        for r in rows:
            c = r.get(col)
            if c:
                f = c * inv % p
                for k, v in pivot_row.items():
                    r[k] = (r.get(k, 0) - f * v) % p
                r = {k: v for k, v in r.items() if v}
            if r:
                new_rows.append(r)
        rows = new_rows
    return rank


def _rank_bareiss(matrix: list) -> int:
    """Rank over QQ of an integer matrix by fraction-free (Bareiss) elimination."""
    A = [list(r) for r in matrix]
    if not A:
        return 0
    m, n = len(A), len(A[0])
    rank = 0
    prev = 1
    for c in range(n):
        piv = next((r for r in range(rank, m) if A[r][c] != 0), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        for r in range(rank + 1, m):
            for k in range(c + 1, n):
                A[r][k] = (A[r][k] * A[rank][c] - A[rank][k] * A[r][c]) // prev
            A[r][c] = 0
        prev = A[rank][c]
        rank += 1
        if rank == m:
            break
    return rank


def matrix_rank(matrix: list, field: Field) -> int:
    """Exact rank of an integer matrix over ``field``."""
    if not matrix or not matrix[0]:
        return 0
    if field.p:
        return _rank_mod_p([{j: v for j, v in enumerate(r) if v} for r in matrix], field.p)
    if all(isinstance(v, int) for r in matrix for v in r):
        return _rank_bareiss(matrix)
    # rational entries: clear denominators row by row
    rows = []
    for r in matrix:
        fr = [Fraction(v) for v in r]
        lcm = 1
        for v in fr:
            lcm = lcm * v.denominator // _gcd(lcm, v.denominator)
        rows.append([int(v * lcm) for v in fr])
    return _rank_bareiss(rows)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def boundary_matrix(delta: SimplicialComplex, k: int) -> list:
    """Integer matrix of the augmented boundary ∂_k : C_k -> C_{k-1}; rows index (k-1)-faces."""
    src = delta.faces_of_dimension(k)
    dst = delta.faces_of_dimension(k - 1)
    index = {f: i for i, f in enumerate(dst)}
    M = [[0] * len(src) for _ in dst]
    for j, f in enumerate(src):
        verts = sorted(f)
        for pos, v in enumerate(verts):
            M[index[f - {v}]][j] = -1 if pos % 2 else 1
    return M


def reduced_homology(delta: SimplicialComplex, field: Field = QQ) -> HomologyProfile:
    """Reduced homology ranks over ``field`` for i = -1..dim Δ (over a field these equal the cohomology ranks)."""
    if not delta.facets:
        raise PreconditionError("the void complex has no reduced homology")
    d = delta.dimension
    fv = delta.f_vector()  # fv[k+1] = number of k-faces
    ranks_bd = {}
    for k in range(0, d + 1):
        M = boundary_matrix(delta, k)
        ranks_bd[k] = matrix_rank(M, field) if M and M[0] else 0
    ranks_bd[d + 1] = 0
    out = {}
    for i in range(-1, d + 1):
        dim_c = fv[i + 1]
        out[i] = dim_c - ranks_bd.get(i, 0) - ranks_bd[i + 1]
    return HomologyProfile(out, field)


def is_acyclic(delta: SimplicialComplex, field: Field = QQ, d: int | None = None) -> bool:
    """H̃_i(Δ; K) = 0 for 0 <= i <= d (d defaults to dim Δ)."""
    h = reduced_homology(delta, field)
    top = delta.dimension if d is None else d
    return all(h[i] == 0 for i in range(0, top + 1))


def is_cohen_macaulay(delta: SimplicialComplex, field: Field = QQ) -> bool:
    """Reisner: H̃_i(lk σ; K) = 0 for every face σ and every i < dim lk σ."""
    for sigma in delta.faces():
        lk = delta.link(sigma)
        h = reduced_homology(lk, field)
        if any(h[i] for i in range(-1, lk.dimension)):
            return False
    return True


def a_invariant_negative(delta: SimplicialComplex, field: Field = QQ) -> bool:
    """The degree-0 part of the top local cohomology vanishes: H̃_{dim Δ}(Δ; K) = 0."""
    return reduced_homology(delta, field)[delta.dimension] == 0


def hochster_degree_zero(delta: SimplicialComplex, field: Field = QQ) -> dict:
    """{j: dim_K H^j_m(S/I_Δ)_0} for j = i + 1 >= 1, read off as dim H̃_i(Δ; K)."""
    h = reduced_homology(delta, field)
    return {i + 1: h[i] for i in range(0, delta.dimension + 1)}


# --------------------------------------------------------------------------
# Hilbert series of K[Δ]


@dataclass(frozen=True)
class StanleyReisnerSeries:
    """HS(K[Δ]) = Σ h_i t^i / (1 - t)^d and the Hilbert polynomial Σ c_k t^k."""

    h_vector: tuple
    d: int
    hilbert_polynomial: tuple


def hilbert_series(delta: SimplicialComplex) -> StanleyReisnerSeries:
    fv = delta.f_vector()
    d = delta.dimension + 1
    h = [0] * (d + 1)
    # Σ_i f_{i-1} t^i (1 - t)^{d-i}
    for i in range(d + 1):
        fi = fv[i]
        for k in range(d - i + 1):
            h[i + k] += fi * comb(d - i, k) * (-1) ** k
    while len(h) > 1 and h[-1] == 0:
        h.pop()
    # HP(t) = Σ_{i>=1} f_{i-1} C(t-1, i-1)
    hp = [Fraction(0)] * max(d, 1)
    for i in range(1, d + 1):
        for k, a in enumerate(binomial_poly(-1, i - 1)):
            hp[k] += fv[i] * a
    while len(hp) > 1 and hp[-1] == 0:
        hp.pop()
    return StanleyReisnerSeries(tuple(h), d, tuple(hp))


def standard_monomial_count(delta: SimplicialComplex, degree: int) -> int:
    """dim_K K[Δ]_degree: monomials whose support is a face."""
    return sum(1 for m in monomials_of_degree(delta.nvertices, degree)
               if frozenset(i for i, e in enumerate(m) if e) in delta)
