"""Built-in examples: rational normal curves, the star example, a family of
small graphs, and seeded generators of valid candidates."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .collapse import Graph, cycle_graph, path_graph, star_graph
from .errors import HypothesisNotMetError, PreconditionError
from .geometry import fiber_over_coordinate_point, point_on_variety, ProjectivePoint, project_from_p0
from .groebner import GroebnerBasis, Ideal, minimal_basis, zero_reduce
from .poly import DEGREVLEX, LEX, QQ, Field, GF, MonomialOrder, PolyRing
from .search import Candidate, CandidateFamily, enumerate_candidates


def two_minors(rows: list) -> list:
    """All 2x2 minors of a 2 x k matrix of polynomials, columns taken in order."""
    top, bottom = rows
    out = []
    for i in range(len(top)):
        for j in range(i + 1, len(top)):
            out.append(top[i] * bottom[j] - top[j] * bottom[i])
    return out


def rational_normal_curve(n: int, field: Field = QQ) -> Ideal:
    """2-minors of [[X0 .. X_{n-1}], [X1 .. Xn]] in K[X0..Xn]."""
    ring = PolyRing(n + 1, field)
    X = ring.gens
    return Ideal(ring, two_minors([X[:n], X[1:]]))


def star_example(field: Field = QQ) -> Ideal:
    """2-minors of the 2x3 matrix whose initial ideal is (X0X1, X0X2, X1X2) for every order with X0>..>X3."""
    ring = PolyRing(4, field)
    X0, X1, X2, X3 = ring.gens
    return Ideal(ring, two_minors([[X1 + X2 + X3, X1 + X3, X1], [X1 + X3, X1, X0 + X1]]))


STAR = star_graph(4, 3)
TRIANGLE = cycle_graph(3)
SQUARE = cycle_graph(4)
# a triangle on {1,2,3} with a pendant edge at vertex 0; vertex 0 is free
PENDANT_TRIANGLE = Graph(4, [(0, 3), (1, 2), (1, 3), (2, 3)])


def small_graphs() -> dict:
    """Named graphs bundled with the command-line examples."""
    out = {f"path{k}": path_graph(k) for k in range(2, 7)}
    out.update({f"cycle{k}": cycle_graph(k) for k in range(3, 6)})
    out["star4"] = STAR
    out["star5"] = star_graph(5, 4)
    out["pendant_triangle"] = PENDANT_TRIANGLE
    return out


@dataclass
class CorpusEntry:
    name: str
    ideal: Ideal
    order: MonomialOrder
    graph: Graph


def example_corpus(fields=(QQ, GF(2), GF(3), GF(5)), rnc_degrees=range(3, 7)) -> list:
    """Rational normal curves over QQ (lex) and the star example over every field and both orders."""
    out = [CorpusEntry(f"rnc{n}", rational_normal_curve(n), LEX, path_graph(n + 1)) for n in rnc_degrees]
    for f in fields:
        for o in (LEX, DEGREVLEX):
            out.append(CorpusEntry(f"star/{f.name}/{o.name}", star_example(f), o, STAR))
    return out


def tree_candidates(count: int, seed: int = 0, field: Field = QQ, order: MonomialOrder = LEX) -> list:
    """``count`` valid candidates for trees, obtained by random order-preserving
    coordinate changes of the path and star witnesses."""
    plans = [
        (path_graph(4), [rational_normal_curve(3, field)]),
        (path_graph(5), [rational_normal_curve(4, field)]),
        (STAR, [star_example(field)]),
    ]
    per = [count // len(plans) + (1 if i < count % len(plans) else 0) for i in range(len(plans))]
    grid = (-1, 0, 1) if field.p == 0 else tuple(range(field.p))
    out = []
    for k, ((graph, seeds), m) in enumerate(zip(plans, per)):
        fam = CandidateFamily(graph, order, field, mode="orbit", coeff_grid=grid, seed=seed * 1000 + k,
                              count=m, seeds=tuple(tuple(s.generators) for s in seeds))
        out.extend((graph, c) for c in enumerate_candidates(fam))
    return out


def zero_reduced(c: Candidate) -> GroebnerBasis:
    return zero_reduce(minimal_basis(c.basis))


@dataclass
class FiberInstance:
    graph: Graph
    basis: GroebnerBasis
    a: int


def fiber_instances(count: int, seed: int = 0, field: Field = QQ, order: MonomialOrder = LEX,
                    max_tries: int = 20_000) -> list:
    """Seeded (basis, a) pairs where the fibre over P'_a can be located.

    Candidates come from tree witnesses and from random sparse candidates for
    the pendant triangle; a pair is kept when vertex 0 is free, P'_a lies on
    the projection, and some g_0j contains X0*Xa.
    """
    rng = random.Random(seed)
    pool = [(g, c.basis) for g, c in tree_candidates(max(count, 30), seed, field, order)]
    fam = CandidateFamily(PENDANT_TRIANGLE, order, field, mode="random", seed=seed,
                          coeff_grid=(-2, -1, 0, 1, 2) if field.p == 0 else tuple(range(field.p)),
                          count=max_tries, density=0.35)
    for c in enumerate_candidates(fam):
        pool.append((PENDANT_TRIANGLE, c.basis))
        if len(pool) >= 4 * count:
            break
    rng.shuffle(pool)
    out = []
    for graph, G in pool:
        Gz = zero_reduce(minimal_basis(G))
        try:
            proj = project_from_p0(None, Gz, cross_check=False)
        except PreconditionError:
            continue
        for a in range(1, G.ring.nvars):
            Pa = ProjectivePoint.coordinate(proj.ring.nvars, a - 1, field)
            if not point_on_variety(proj, Pa):
                continue
            try:
                fiber_over_coordinate_point(None, Gz, a, projected=proj)
            except HypothesisNotMetError:
                continue
            out.append(FiberInstance(graph, Gz, a))
            break
        if len(out) >= count:
            break
    return out
